use std::io::Write;

fn main() {
    let (out, err, code) = vcoalg_cli::main_with(std::env::args().collect());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
