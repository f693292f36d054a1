fn main() {
    std::process::exit(qfcodes::cli::main_with_args(std::env::args_os()));
}
