fn main() {
    std::process::exit(rcag::cli::run_from_env());
}
