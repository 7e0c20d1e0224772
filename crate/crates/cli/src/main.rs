fn main() {
    std::process::exit(picorr_cli::run(std::env::args_os()));
}
