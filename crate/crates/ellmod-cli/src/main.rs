fn main() {
    std::process::exit(ellmod_cli::run(std::env::args()));
}
