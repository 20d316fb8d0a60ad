fn main() {
    std::process::exit(aoi_cli::run());
}
