fn main() {
    std::process::exit(fracpois::cli::run());
}
