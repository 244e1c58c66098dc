fn main() {
    std::process::exit(square_ice::cli::main_with_args(std::env::args_os()));
}
