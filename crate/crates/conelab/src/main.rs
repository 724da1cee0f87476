use std::process::exit;

fn main() {
    exit(conelab::cli::run());
}
