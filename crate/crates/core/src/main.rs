fn main() {
    let code = prcode::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
