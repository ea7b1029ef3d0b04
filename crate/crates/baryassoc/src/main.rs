fn main() {
    std::process::exit(baryassoc::cli::run_from_env());
}
