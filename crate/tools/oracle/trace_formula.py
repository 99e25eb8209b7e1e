#!/usr/bin/env python3
"""Traces of T_n on S_2(Gamma0(N)) for prime N via the Eichler-Selberg
trace formula, with Hurwitz class numbers counted from reduced forms.

Valid for prime N and n coprime to N with 4n < N^2 (so every conductor
f in the elliptic term is prime to N). Shares no code with the crate.

    python3 tools/oracle/trace_formula.py > crates/core/tests/fixtures/trace_formula_oracle.json
"""

import json
import math
from fractions import Fraction


def primes_upto(n):
    return [q for q in range(2, n + 1) if all(q % d for d in range(2, int(q ** 0.5) + 1))]


def hurwitz(m):
    """H(m): forms of discriminant -m (primitive or not), weighted."""
    total = Fraction(0)
    a = 1
    while 3 * a * a <= m:
        for b in range(-a + 1, a + 1):
            if (b * b + m) % (4 * a):
                continue
            c = (b * b + m) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


def trace(N, n):
    assert math.gcd(N, n) == 1 and 4 * n < N * N
    psi = N + 1
    a1 = Fraction(psi, 12) if math.isqrt(n) ** 2 == n else 0
    a2 = Fraction(0)
    t = 0
    while t * t < 4 * n:
        for s in ({t, -t} if t else {0}):
            sols = sum(1 for x in range(N) if (x * x - s * x + n) % N == 0)
            a2 += hurwitz(4 * n - s * s) * sols
        t += 1
    a2 = -a2 / 2
    divs = [d for d in range(1, n + 1) if n % d == 0]
    a3 = -sum(min(d, n // d) for d in divs)
    a4 = sum(divs)
    tr = a1 + a2 + a3 + a4
    assert tr.denominator == 1
    return int(tr)


def main():
    out = {"method": "Eichler-Selberg trace formula, Hurwitz class numbers from reduced forms", "levels": {}}
    for N in (11, 23, 37):
        out["levels"][str(N)] = {
            "dim": trace(N, 1),
            "trace_T": {str(l): trace(N, l) for l in primes_upto(20) if l != N},
        }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
