fn main() {
    std::process::exit(ftkit::cli::run_from_env());
}
