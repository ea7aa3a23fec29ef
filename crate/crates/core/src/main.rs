fn main() {
    std::process::exit(graphflow::cli::main_with_args(std::env::args_os()));
}
