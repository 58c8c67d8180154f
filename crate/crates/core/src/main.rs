fn main() {
    std::process::exit(twlab::cli::run(std::env::args_os()));
}
