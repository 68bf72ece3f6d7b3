fn main() {
    std::process::exit(algoprob::cli::main_with(std::env::args_os()));
}
