fn main() {
    std::process::exit(omtope::cli::run(std::env::args_os()));
}
