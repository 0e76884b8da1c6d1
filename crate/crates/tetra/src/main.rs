fn main() {
    let (code, out) = tetra::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
