fn main() {
    std::process::exit(copperscope_core::cli::run());
}
