fn main() {
    std::process::exit(lbcft_cli::run(std::env::args_os()));
}
