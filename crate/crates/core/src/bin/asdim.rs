fn main() {
    std::process::exit(asdim::cli::main_with_args(std::env::args_os()));
}
