fn main() {
    std::process::exit(sparrow_forest::cli::main());
}
