fn main() {
    std::process::exit(qclocksync::cli::main_with_args(std::env::args_os()));
}
