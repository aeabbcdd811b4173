use std::io::Read;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    // Stdin is consulted only when a command asks for it via `--in -`.
    let stdin = if argv.iter().any(|a| a == "-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).ok();
        Some(buf)
    } else {
        None
    };
    let out = bgmu_cli::run(&argv, stdin.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
