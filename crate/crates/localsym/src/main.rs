fn main() {
    std::process::exit(localsym::cli::run(std::env::args()));
}
