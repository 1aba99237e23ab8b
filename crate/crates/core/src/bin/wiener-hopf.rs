fn main() {
    wiener_hopf::cli::init_logging();
    std::process::exit(wiener_hopf::cli::main_with_args(std::env::args_os()));
}
