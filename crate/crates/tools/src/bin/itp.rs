fn main() {
    std::process::exit(itp_tools::cli::main_with_args(std::env::args().collect()));
}
