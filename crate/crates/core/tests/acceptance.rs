//! One test per acceptance criterion, each running its corpus battery.
//! Run with `--nocapture` to see the report lines.

use topogame::suite::{run_criterion, SuiteConfig};

fn check(id: usize) {
    let r = run_criterion(id, SuiteConfig::default()).expect("known criterion");
    println!("{}", r.line());
    for v in r.violations.iter().take(10) {
        println!("       violation: {v}");
    }
    for n in r.notes.iter().take(3) {
        println!("       note: {n}");
    }
    assert!(r.pass(), "{}", r.line());
}

macro_rules! criteria {
    ($($name:ident = $id:expr;)*) => {
        $(
            #[test]
            fn $name() {
                check($id);
            }
        )*
    };
}

criteria! {
    criterion_01_duality = 1;
    criterion_02_translation_soundness = 2;
    criterion_03_menger_equivalence = 3;
    criterion_04_diagonal_selection = 4;
    criterion_05_menger_extraction = 5;
    criterion_06_pointopen_extraction = 6;
    criterion_07_cantor_witness = 7;
    criterion_08_fortissimo_grid = 8;
    criterion_09_refinement = 9;
    criterion_10_scattered_spaces = 10;
    criterion_11_self_consistency = 11;
    criterion_12_classifier_laws = 12;
}
