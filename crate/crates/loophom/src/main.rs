fn main() {
    loophom::par::configure_from_env();
    std::process::exit(loophom::cli::run(std::env::args_os()));
}
