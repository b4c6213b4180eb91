use std::io;

fn main() {
    let stdin = io::stdin();
    let code = lexdepth::app::run(std::env::args_os(), &mut stdin.lock(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code.code());
}
