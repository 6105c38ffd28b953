fn main() {
    std::process::exit(stoplight::scan::run_cli(std::env::args_os()));
}
