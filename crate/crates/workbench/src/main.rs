use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = mirrorbench::run(std::env::args_os());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
