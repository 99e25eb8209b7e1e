fn main() {
    std::process::exit(modp_hecke::cli::main());
}
