fn main() {
    env_logger::init();
    std::process::exit(starlit::cli::run());
}
