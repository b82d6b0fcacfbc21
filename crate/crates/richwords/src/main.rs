fn main() {
    std::process::exit(richwords::cli::run(std::env::args_os()));
}
