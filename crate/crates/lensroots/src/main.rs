fn main() {
    std::process::exit(lensroots::cli::run());
}
