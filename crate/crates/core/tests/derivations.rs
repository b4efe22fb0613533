use orthokit_core::lattice::stock;
use orthokit_core::logic::{parse_script, soundness_check, verify_derivation, Wff};

const QL: &str = include_str!("../../../samples/ql_symmetry.drv");
const CL: &str = include_str!("../../../samples/cl_mp.drv");

#[test]
fn samples_verify() {
    for s in [QL, CL] {
        let d = parse_script(s).unwrap();
        verify_derivation(&d).unwrap_or_else(|r| panic!("{r}"));
    }
}

#[test]
fn derived_lines_are_sound_in_o6() {
    // Every derived line of the premise-free prefix of the QL sample is
    // true in O6 under all valuations.
    let d = parse_script(QL).unwrap();
    let o6 = stock("O6").unwrap();
    let lines: Vec<Wff> = d.lines[..14].iter().map(|l| l.formula.clone()).collect();
    for r in soundness_check(&lines, &o6).unwrap() {
        assert!(r.holds(), "{r}");
    }
}
