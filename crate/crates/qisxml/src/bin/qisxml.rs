fn main() {
    std::process::exit(qisxml::cli::run(std::env::args_os()));
}
