fn main() {
    std::process::exit(nilpo::cli::run());
}
