//! Transfer structures on the divisor lattice of 12: the classical
//! fixed-point data validates as weak Mackey with a quasi-unit over Q, the
//! same data over Z keeps the structure but loses the quasi-unit, and the
//! full triple data validates over the meet-semilattice.

use poslim::abgrp::Ring;
use poslim::checks::Verdict;
use poslim::derived::{is_acyclic, Side};
use poslim::mackey::{
    check_monic, fixed_point_fixture, fixed_point_fixture_contra, fixed_point_full_fixture,
    validate_full_mackey, validate_weak_mackey, validate_weak_mackey_contra,
};

fn show(label: &str, weak: Verdict, quasi: Verdict) {
    println!("{label}: weak = {weak:?}, quasi-unit = {quasi:?}");
}

fn main() {
    let over_q = fixed_point_fixture(Ring::Q);
    let rep = validate_weak_mackey(&over_q).unwrap();
    show("fixed points over Q", rep.weak, rep.quasi_unit);
    println!(
        "  acyclic on the colimit side: {}",
        is_acyclic(&over_q.base, Side::Colim).is_ok()
    );
    println!("  monic: {}", check_monic(&over_q.base).is_true());

    let over_z = fixed_point_fixture(Ring::Z);
    let rep = validate_weak_mackey(&over_z).unwrap();
    show("fixed points over Z", rep.weak, rep.quasi_unit);
    println!("  (no acyclicity conclusion is drawn without the quasi-unit)");

    let contra = fixed_point_fixture_contra(Ring::Q);
    let rep = validate_weak_mackey_contra(&contra).unwrap();
    show("contravariant dual over Q", rep.weak, rep.quasi_unit);
    println!(
        "  acyclic on the limit side: {}",
        is_acyclic(&contra.base, Side::Lim).is_ok()
    );

    let full = fixed_point_full_fixture();
    let report = validate_full_mackey(&full).unwrap();
    show(
        "full triple data over Q",
        report.report.weak,
        report.report.quasi_unit,
    );
    let cov = validate_weak_mackey(&report.derived_covariant).unwrap();
    let con = validate_weak_mackey_contra(&report.derived_contravariant).unwrap();
    println!(
        "  derived weak witnesses validate: covariant = {:?}, contravariant = {:?}",
        cov.weak, con.weak
    );
}
