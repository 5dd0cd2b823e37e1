fn main() {
    std::process::exit(anomaly_scheme::cli::main_with_std());
}
