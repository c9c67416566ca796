//! Reading a system file, running both algorithms and emitting the JSON
//! report, as the command-line tool does.

use std::error::Error;

use algebroid::cli::{self, MethodArg, SystemFile};
use algebroid::linearizer::Options;

const SOURCE: &str = "\
# x1' = x2, x2' = x1^2 + u
vars: x1, x2
f:
  x2
  x1^2
g:
  0
  1
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sf = SystemFile::parse(SOURCE)?;
    assert_eq!(SystemFile::parse(&sf.to_text())?, sf);
    print!("{}", sf.to_text());

    let (report, _) = cli::linearize(SOURCE, MethodArg::Both, &Options::default(), true);
    println!("{}", report.to_json());
    assert_eq!(report.exit_code, cli::EXIT_SUCCESS);

    // x1' = x2 + x2^2: the first method finds y = x1, while the second
    // method's scaled form dx1 / (1 + 2 x2) is not closed
    let awkward = SOURCE.replace("  x2\n  x1^2", "  x2 + x2^2\n  0");
    for method in [MethodArg::Algebroid1, MethodArg::Algebroid2] {
        let (r, _) = cli::linearize(&awkward, method, &Options::default(), true);
        println!("{method:?}: exit {}", r.exit_code);
    }

    let bad = cli::check("vars: x1\nf:\n  x1 +\ng:\n  1\n", 0);
    println!("exit {}: {}", bad.exit_code, bad.error.map(|e| e.message).unwrap_or_default());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
