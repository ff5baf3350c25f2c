fn main() {
    std::process::exit(superfock_cli::main_with_args(std::env::args_os()));
}
