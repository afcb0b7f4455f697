fn main() {
    std::process::exit(whframe::cli::main_with_args(std::env::args_os()));
}
