use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = caterpack_cli::init_threads().and_then(|()| caterpack_cli::run_args(std::env::args_os()));
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("caterpack: {}", e.message.trim_end());
            ExitCode::from(e.code as u8)
        }
    }
}
