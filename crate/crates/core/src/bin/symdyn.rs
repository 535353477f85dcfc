fn main() {
    std::process::exit(symdyn::cli::main_with_args(std::env::args_os()));
}
