fn main() {
    std::process::exit(hnstrata::cli::main_with_args(std::env::args_os()));
}
