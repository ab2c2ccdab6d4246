fn main() {
    std::process::exit(contra_core::cli::main_with_args(std::env::args_os()));
}
