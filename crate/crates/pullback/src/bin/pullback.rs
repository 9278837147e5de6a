fn main() {
    std::process::exit(pullback::cli::main_with_args(std::env::args_os()));
}
