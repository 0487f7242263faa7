fn main() {
    let (code, report) = dfa_decompose::cli::run(std::env::args_os());
    println!("{report}");
    std::process::exit(code);
}
