use std::io::Write;

fn main() {
    let (code, out, err) = hurwitz_cli::run(std::env::args_os());
    print!("{out}");
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(code);
}
