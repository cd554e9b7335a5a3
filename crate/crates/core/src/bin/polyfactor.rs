fn main() {
    std::process::exit(polyfactor::cli::main_with_args(std::env::args_os()));
}
