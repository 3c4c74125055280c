fn main() {
    std::process::exit(orbifold_cli::run(std::env::args_os()));
}
