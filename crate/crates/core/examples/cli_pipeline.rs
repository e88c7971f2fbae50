// Drives the command-line interface in process: construct a structure, pipe
// the document into classify, and classify a document from disk.

use sublorentz::cli::run_command;

fn run(args: &[&str], input: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sublorentz").chain(args.iter().copied());
    let code = run_command(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn main() {
    let (_, doc) = run(&["construct", "--case", "det-pos", "--solution", "1", "--kappa", "0", "--chi", "-1"], "");
    println!("{doc}");
    let (code, report) = run(&["classify", "-"], &doc);
    println!("{report}exit {code}\n");

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/heisenberg.toml");
    let (code, report) = run(&["--json", "classify", path], "");
    println!("{report}exit {code}");
}
