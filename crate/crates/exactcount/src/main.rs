fn main() {
    std::process::exit(exactcount::cli::run());
}
