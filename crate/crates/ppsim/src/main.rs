fn main() {
    std::process::exit(ppsim::cli::run());
}
