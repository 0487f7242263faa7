// Drive the command-line front end in-process.

use dfa_decompose::cli::run;

pub fn run_example() {
    let dir = std::env::temp_dir().join(format!("dfa-decompose-tour-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("grid.json");
    let grid_s = grid.to_str().unwrap();

    let steps: Vec<Vec<&str>> = vec![
        vec!["generate", "gridmod", "--n", "5", "--m", "2", "--out", grid_s],
        vec!["check", grid_s],
        vec!["width", grid_s],
        vec!["bounded", "--k", "3", grid_s],
    ];
    for args in steps {
        let (code, report) = run(std::iter::once("dfa-decompose").chain(args.iter().copied()));
        println!("$ dfa-decompose {}\n{report}", args.join(" "));
        assert_eq!(code, 0);
    }
    std::fs::remove_dir_all(&dir).ok();
}

fn main() {
    run_example();
}
