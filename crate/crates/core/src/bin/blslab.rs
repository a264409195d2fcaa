fn main() {
    std::process::exit(blslab::cli::dispatch(std::env::args_os()));
}
