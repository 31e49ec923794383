fn main() {
    std::process::exit(innerforge::cli::run(std::env::args()));
}
