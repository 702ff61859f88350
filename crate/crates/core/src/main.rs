fn main() {
    std::process::exit(veechlab::cli::run(std::env::args_os()));
}
