use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = einstein_flag::cli::run(std::env::args_os(), &mut out, &mut err);
    out.flush().ok();
    std::process::exit(code);
}
