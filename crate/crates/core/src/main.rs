fn main() {
    std::process::exit(nls_thermo::cli::run(std::env::args_os()));
}
