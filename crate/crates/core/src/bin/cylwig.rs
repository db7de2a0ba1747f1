fn main() {
    std::process::exit(cylinder_wigner::cli::main_with_args(std::env::args_os()));
}
