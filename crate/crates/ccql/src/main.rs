fn main() {
    std::process::exit(ccql::cli::run());
}
