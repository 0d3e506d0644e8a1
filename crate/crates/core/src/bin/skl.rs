fn main() {
    std::process::exit(skewlat::cli::run());
}
