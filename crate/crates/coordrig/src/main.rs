fn main() {
    std::process::exit(coordrig::cli::main_with_args(std::env::args_os()));
}
