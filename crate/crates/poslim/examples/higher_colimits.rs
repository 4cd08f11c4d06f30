//! Derived colimits of small diagrams: a span whose legs vanish (nontrivial
//! first derived colimit), a constant diagram on a cone-shaped poset
//! (acyclic), and the degreewise chain complex behind both.

use poslim::abgrp::{FgAbGroup, Ring};
use poslim::derived::{build_complex, higher_colim, is_acyclic, Side};
use poslim::diagram::{Diagram, Variance};
use poslim::matrix::IntMat;
use poslim::poset::FinPoset;
use std::collections::BTreeMap;

fn main() {
    // p1 <- p0 -> p2 with zero objects on the legs
    let poset = FinPoset::from_covers(
        vec!["p0".into(), "p1".into(), "p2".into()],
        &[("p0".into(), "p1".into()), ("p0".into(), "p2".into())],
    )
    .unwrap();
    let z = FgAbGroup::free(Ring::Z, 1);
    let zero = FgAbGroup::zero(Ring::Z);
    let mut edges = BTreeMap::new();
    edges.insert((0, 1), IntMat::zeros(0, 1));
    edges.insert((0, 2), IntMat::zeros(0, 1));
    let span = Diagram::new(
        poset,
        Variance::Covariant,
        vec![z.clone(), zero.clone(), zero],
        edges,
    )
    .unwrap();

    println!("span with zero legs:");
    for n in 0..=2 {
        println!("  derived colimit {n}: {}", higher_colim(&span, n));
    }
    match is_acyclic(&span, Side::Colim) {
        Ok(()) => println!("  acyclic"),
        Err((deg, h)) => println!("  not acyclic: first nonzero degree {deg} = {h}"),
    }

    let cx = build_complex(&span);
    println!("  chain groups:");
    for (p, deg) in cx.degrees.iter().enumerate() {
        println!("    C_{p} = {} ({} chains)", deg.group, deg.chains.len());
    }

    // a constant diagram over a poset with a minimum is acyclic
    let cone = poslim::groups::bianchi_poset();
    let constant = Diagram::constant(cone, Variance::Covariant, z);
    println!("constant diagram on the ten-element cone poset:");
    for n in 0..=2 {
        println!("  derived colimit {n}: {}", higher_colim(&constant, n));
    }
}
