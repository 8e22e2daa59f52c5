fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(dsforge::cli::run(&argv).code());
}
