fn main() {
    std::process::exit(linloop::cli::run());
}
