#!/usr/bin/env python3
"""Independent oracle for the level-431 / p = 2 local factor data.

Deliberately shares no code with the Rust crate and uses different routes:

* Hecke operators via Manin's continued-fraction trick applied to the
  double-coset representatives {[[l,0],[0,1]], [[1,j],[0,l]]} (the crate uses
  Heilbronn matrices);
* F_2 linear algebra on Python-int bitsets;
* local factors via splitting into F_2-rational joint generalized
  eigenspaces only (the crate splits by irreducible factors of minimal
  polynomials and tests locality separately);
* cusp classes for prime level: a/c ~ oo iff N | c, else ~ 0.

Writes a JSON fixture describing every local factor with residue field F_2.

    python3 tools/oracle/kilford_431.py > crates/core/tests/fixtures/kilford_431_oracle.json
"""

import json
import math
import sys

N = 431
P = 2


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


# ---------------------------------------------------------------- P^1(Z/N)
# N is prime: P^1 = {(0:1)} u {(1:d)}.
def p1_index(c, d):
    c %= N
    d %= N
    if c == 0:
        assert d != 0
        return N  # (0:1)
    return (d * pow(c, -1, N)) % N  # (1 : d/c)


def p1_rep(i):
    return (0, 1) if i == N else (1, i)


NSYM = N + 1


# ---------------------------------------------------------------- F_2 bitsets
def rank_and_echelon(rows, ncols):
    """Row-reduce list of int bitsets; returns list of (pivot, row) fully reduced."""
    piv = {}
    for r in rows:
        for pc, pr in piv.items():
            if (r >> pc) & 1:
                r ^= pr
        if r == 0:
            continue
        pc = (r & -r).bit_length() - 1
        for k in list(piv):
            if (piv[k] >> pc) & 1:
                piv[k] ^= r
        piv[pc] = r
    return piv


def reduce_vec(v, piv):
    for pc, pr in piv.items():
        if (v >> pc) & 1:
            v ^= pr
    return v


def kernel(rows, ncols):
    """Right kernel {x : rows . x = 0} as list of bitsets of length ncols."""
    piv = rank_and_echelon(rows, ncols)
    pivots = set(piv)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        x = 1 << f
        for pc, pr in piv.items():
            if (pr >> f) & 1:
                x |= 1 << pc
        out.append(x)
    return out


# ---------------------------------------------------------------- presentation
sigma = lambda c, d: (d, -c)
tau = lambda c, d: (d, -c - d)

relations = []
for i in range(NSYM):
    c, d = p1_rep(i)
    j = p1_index(*sigma(c, d))
    relations.append((1 << i) ^ (1 << j) if i != j else (1 << i))
    j1 = p1_index(*tau(c, d))
    c1, d1 = p1_rep(j1)
    j2 = p1_index(*tau(c1, d1))
    r = 0
    for k in (i, j1, j2):
        r ^= 1 << k
    if i == j1 == j2:
        r = 1 << i
    relations.append(r)

rel_piv = rank_and_echelon(relations, NSYM)
free_syms = [j for j in range(NSYM) if j not in rel_piv]
AMB = len(free_syms)
free_pos = {s: k for k, s in enumerate(free_syms)}


def symbol_to_ambient(i):
    """Coordinates (bitset over free symbols) of Manin symbol i in the quotient."""
    if i in free_pos:
        return 1 << free_pos[i]
    row = rel_piv[i]  # x_i + sum(row other bits) = 0 -> x_i = sum of others
    out = 0
    r = row ^ (1 << i)
    while r:
        b = r & -r
        k = b.bit_length() - 1
        out ^= 1 << free_pos[k]
        r ^= b
    return out


SYM_AMB = [symbol_to_ambient(i) for i in range(NSYM)]


# ---------------------------------------------------------------- boundary
def xgcd(a, b):
    if b == 0:
        return (a, 1, 0)
    g, x, y = xgcd(b, a % b)
    return (g, y, x - (a // b) * y)


def lift(i):
    c, d = p1_rep(i)
    if c == 0:
        c = N
    while math.gcd(c, d) != 1:
        d += N
    g, x, y = xgcd(d, c)  # x d + y c = 1  -> a = x, b = -y
    a, b = x, -y
    assert a * d - b * c == 1
    return (a, b, c, d)


def cusp_class(num, den):
    """0 for the cusp class of oo, 1 for the class of 0."""
    return 0 if den % N == 0 else 1


boundary_cols = []
for k, s in enumerate(free_syms):
    a, b, c, d = lift(s)
    v = (1 << cusp_class(a, c)) ^ (1 << cusp_class(b, d))
    boundary_cols.append(v)
# boundary map rows: 2 cusps; row r has bit k if column k has bit r
brows = [sum(((col >> r) & 1) << k for k, col in enumerate(boundary_cols)) for r in range(2)]
CUSP = kernel(brows, AMB)
G2 = len(CUSP)


# ---------------------------------------------------------------- Hecke via continued fractions
def manin_zero_to(a, b):
    """Manin-symbol expansion of {0, a/b} (b may be 0 for oo); returns ambient bitset."""
    if b < 0:
        a, b = -a, -b
    out = SYM_AMB[p1_index(0, 1)]  # {0, oo}
    if b == 0:
        return out
    # convergents of a/b
    pm2, qm2, pm1, qm1 = 0, 1, 1, 0
    x, y = a, b
    k = 0
    while y != 0:
        q = x // y
        x, y = y, x - q * y
        pk, qk = q * pm1 + pm2, q * qm1 + qm2
        sgn = 1 if (k - 1) % 2 == 0 else -1
        out ^= SYM_AMB[p1_index(sgn * qk, qm1)]
        pm2, qm2, pm1, qm1 = pm1, qm1, pk, qk
        k += 1
    return out


def modsym(x_num, x_den, y_num, y_den):
    return manin_zero_to(y_num, y_den) ^ manin_zero_to(x_num, x_den)


def hecke_on_symbol(sym, l):
    a, b, c, d = lift(sym)
    reps = [] if N % l == 0 else [(l, 0, 0, 1)]
    reps += [(1, j, 0, l) for j in range(l)]
    out = 0
    for (A, B, C, D) in reps:
        m = (A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d)
        # (delta g){0, oo} = {m(0), m(oo)} = {mb/md, ma/mc}
        out ^= modsym(m[1], m[3], m[0], m[2])
    return out


def hecke_ambient(l):
    return [hecke_on_symbol(s, l) for s in free_syms]  # column images


def restrict(cols, basis):
    """Matrix (list of column bitsets in basis coords) of an ambient operator on span(basis)."""
    # solve for coordinates: build echelon of basis with tracking
    piv = {}
    track = {}
    for k, v in enumerate(basis):
        t = 1 << k
        for pc in piv:
            if (v >> pc) & 1:
                v ^= piv[pc]
                t ^= track[pc]
        assert v
        pc = (v & -v).bit_length() - 1
        for q in list(piv):
            if (piv[q] >> pc) & 1:
                piv[q] ^= v
                track[q] ^= t
        piv[pc] = v
        track[pc] = t

    def coords(w):
        t = 0
        for pc in piv:
            if (w >> pc) & 1:
                w ^= piv[pc]
                t ^= track[pc]
        assert w == 0, "subspace not invariant"
        return t

    out = []
    for v in basis:
        img = 0
        r = v
        while r:
            bit = r & -r
            img ^= cols[bit.bit_length() - 1]
            r ^= bit
        out.append(coords(img))
    return out


def mat_mul(A, B, n):
    """Columns representation: (AB) e_k = A (B e_k)."""
    out = []
    for col in B:
        img = 0
        r = col
        while r:
            bit = r & -r
            img ^= A[bit.bit_length() - 1]
            r ^= bit
        out.append(img)
    return out


def mat_add(A, B):
    return [x ^ y for x, y in zip(A, B)]


def ident(n):
    return [1 << k for k in range(n)]


def mat_pow(A, e, n):
    R = ident(n)
    while e:
        if e & 1:
            R = mat_mul(R, A, n)
        A = mat_mul(A, A, n)
        e >>= 1
    return R


def kernel_of_cols(M, n):
    rows = [sum(((M[k] >> r) & 1) << k for k in range(n)) for r in range(n)]
    return kernel(rows, n)


def flatten(M, n):
    v = 0
    for k, col in enumerate(M):
        v |= col << (k * n)
    return v


def unflatten(v, n):
    mask = (1 << n) - 1
    return [(v >> (k * n)) & mask for k in range(n)]


def algebra_span(gens, n):
    """F_2 basis (flattened) of the unital algebra generated by gens."""
    basis = []
    piv = {}

    def add(M):
        v = reduce_vec(flatten(M, n), piv)
        if v == 0:
            return False
        pc = (v & -v).bit_length() - 1
        for k in list(piv):
            if (piv[k] >> pc) & 1:
                piv[k] ^= v
        piv[pc] = v
        basis.append(M)
        return True

    add(ident(n))
    queue = [ident(n)]
    while queue:
        b = queue.pop()
        for g in gens:
            P_ = mat_mul(g, b, n)
            if add(P_):
                queue.append(P_)
    return basis, piv


def span_dim(mats, n):
    return len(rank_and_echelon([flatten(M, n) for M in mats], n * n))


def main():
    sturm = math.ceil((N + 1) / 6)
    gen_primes = [l for l in primes_upto(sturm)]
    level_np2 = N * P * P
    idx = level_np2
    for q in (2, 431):
        idx = idx * (q + 1) // q
    away_bound = math.ceil(idx / 6)
    away_primes = [l for l in primes_upto(away_bound) if l != P]

    print(f"ambient {AMB}, cuspidal {G2}, sturm {sturm}, away bound {away_bound}", file=sys.stderr)

    all_primes = sorted(set(gen_primes) | set(away_primes))
    T = {}
    for l in all_primes:
        amb = hecke_ambient(l)
        T[l] = restrict(amb, CUSP)
    n = G2
    # commutativity sanity check
    for l in gen_primes[:5]:
        for m in gen_primes[:5]:
            assert mat_mul(T[l], T[m], n) == mat_mul(T[m], T[l], n)

    # split into F_2-rational joint generalized eigenspaces (in cusp coords)
    leaves = [(ident(n), [])]  # (basis columns in cusp coords as bitsets, eigen system)
    for l in gen_primes:
        new = []
        for basis, sys_ in leaves:
            k = len(basis)
            Tl = restrict(T[l], basis)
            for lam in (0, 1):
                M = Tl if lam == 0 else mat_add(Tl, ident(k))
                ker = kernel_of_cols(mat_pow(M, k, k), k)
                if not ker:
                    continue
                # express kernel vectors in cusp coords
                sub = []
                for v in ker:
                    w = 0
                    r = v
                    while r:
                        bit = r & -r
                        w ^= basis[bit.bit_length() - 1]
                        r ^= bit
                    sub.append(w)
                new.append((sub, sys_ + [(l, lam)]))
        leaves = new

    out = []
    for basis, eig in leaves:
        k = len(basis)
        gens = [restrict(T[l], basis) for l in gen_primes]
        alg, _ = algebra_span(gens, k)
        dimT = len(alg)
        lam = dict(eig)
        # maximal ideal: span of (g - lam) * b
        mgen = [mat_add(g, ident(k)) if lam[l] else g for g, l in zip(gens, gen_primes)]
        mspan = []
        for x in mgen:
            for b in alg:
                mspan.append(mat_mul(x, b, k))
        mpiv = rank_and_echelon([flatten(M, k) for M in mspan], k * k)
        m_basis = [unflatten(v, k) for v in mpiv.values()]

        def socle(ideal):
            # t in T with x t = 0 for all x in ideal; t = sum c_i alg_i
            rows = []
            for x in ideal:
                prods = [flatten(mat_mul(x, b, k), k) for b in alg]
                for bitpos in range(k * k):
                    row = 0
                    for i, pv in enumerate(prods):
                        if (pv >> bitpos) & 1:
                            row |= 1 << i
                    if row:
                        rows.append(row)
            return len(kernel(rows, len(alg)))

        soc = socle(m_basis)
        # T^(2): generated by T_l, l odd, l <= away bound
        away_gens = [restrict(T[l], basis) for l in away_primes]
        alg_p, _ = algebra_span(away_gens, k)
        # maximal ideal of T^(2) on the factor = T^(2) cap m
        # elements of alg_p in m: alg_p element minus its residue (residue field F_2)
        mp = []
        for b in alg_p:
            # b acts on the factor with single eigenvalue e in F_2; b - e in m
            e = 0 if not kernel_of_cols(b, k) == [] else 1
            # if b is invertible its eigenvalue is 1, else 0
            mp.append(mat_add(b, ident(k)) if e == 1 else b)
        soc_p = socle(mp)
        # ideal generated by m^(p) inside T_m: span of x*b, x in m^(p), b in T_m
        prods = [flatten(mat_mul(x, b, k), k) for x in mp for b in alg]
        dim_mpT = len(rank_and_echelon(prods, k * k))
        # T_2 scalar on T[m^(p)]: (T_2 - lam_2) kills the annihilator of m^(p)
        t2 = mat_add(gens[0], ident(k)) if lam[2] else gens[0]
        rows = []
        for x in mp:
            prods_x = [flatten(mat_mul(x, b, k), k) for b in alg]
            for bitpos in range(k * k):
                row = 0
                for i, pv in enumerate(prods_x):
                    if (pv >> bitpos) & 1:
                        row |= 1 << i
                if row:
                    rows.append(row)
        ann = kernel(rows, len(alg))
        t2_scalar = True
        for c in ann:
            t = [0] * k
            for i in range(len(alg)):
                if (c >> i) & 1:
                    t = mat_add(t, alg[i])
            if any(mat_mul(t2, t, k)):
                t2_scalar = False
        ordinary = lam[2] == 1 if 2 in lam else None
        out.append(
            {
                "eigen_F2": {str(l): v for l, v in eig[:12]},
                "dim_cuspidal_subspace": k,
                "dimT": dimT,
                "dim_m": len(m_basis),
                "dim_T_p_subalgebra": len(alg_p),
                "dimF_socle": soc,
                "dimF_socle_p": soc_p,
                "dim_mp_T": dim_mpT,
                "dim_T_mod_mp_T": dimT - dim_mpT,
                "tp_scalar_on_socle_p": t2_scalar,
                "ordinary": ordinary,
            }
        )

    doc = {
        "level": N,
        "p": P,
        "group": "gamma0",
        "method": "manin continued fractions, F2 bitsets, rational joint eigenspaces",
        "ambient_dim": AMB,
        "cuspidal_dim": G2,
        "sturm_bound": sturm,
        "away_bound": away_bound,
        "factors_with_residue_field_F2": out,
    }
    json.dump(doc, sys.stdout, indent=2)
    print()


if __name__ == "__main__":
    main()
