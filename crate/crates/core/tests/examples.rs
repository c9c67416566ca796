// every example doubles as a smoke test

#[allow(dead_code)]
#[path = "../examples/polynomials.rs"]
mod polynomials;

#[allow(dead_code)]
#[path = "../examples/forms_and_brackets.rs"]
mod forms_and_brackets;

#[allow(dead_code)]
#[path = "../examples/invert_map.rs"]
mod invert_map;

#[allow(dead_code)]
#[path = "../examples/algebroid_axioms.rs"]
mod algebroid_axioms;

#[allow(dead_code)]
#[path = "../examples/classical_check.rs"]
mod classical_check;

#[allow(dead_code)]
#[path = "../examples/algorithm_ii.rs"]
mod algorithm_ii;

#[allow(dead_code)]
#[path = "../examples/algorithm_i.rs"]
mod algorithm_i;

#[allow(dead_code)]
#[path = "../examples/system_files.rs"]
mod system_files;

#[allow(dead_code)]
#[path = "../examples/worked_example.rs"]
mod worked_example;


#[test]
fn polynomials_runs() {
    polynomials::run_example().unwrap();
}

#[test]
fn forms_and_brackets_runs() {
    forms_and_brackets::run_example().unwrap();
}

#[test]
fn invert_map_runs() {
    invert_map::run_example().unwrap();
}

#[test]
fn algebroid_axioms_runs() {
    algebroid_axioms::run_example().unwrap();
}

#[test]
fn classical_check_runs() {
    classical_check::run_example().unwrap();
}

#[test]
fn algorithm_ii_runs() {
    algorithm_ii::run_example().unwrap();
}

#[test]
fn algorithm_i_runs() {
    algorithm_i::run_example().unwrap();
}

#[test]
fn system_files_runs() {
    system_files::run_example().unwrap();
}

#[test]
fn worked_example_runs() {
    worked_example::run_example().unwrap();
}
