use std::io::{Read, Write};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut input = Vec::new();
    let needs_stdin = !argv.iter().any(|a| a == "--input" || a.starts_with("--input=") || a == "-h" || a == "--help" || a == "-V" || a == "--version");
    if needs_stdin {
        if let Err(e) = std::io::stdin().read_to_end(&mut input) {
            eprintln!("error: cannot read stdin: {e}");
            std::process::exit(weyl_cli::EXIT_PARSE);
        }
    }
    let out = weyl_cli::run_args(argv, &input);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
