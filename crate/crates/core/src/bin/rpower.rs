fn main() {
    std::process::exit(restricted_powers::cli::main_from_args(std::env::args_os()));
}
