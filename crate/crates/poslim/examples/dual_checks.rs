//! The contravariant decision procedures: surjectivity onto ray limits
//! ("fibrant") and tuple realization over antichains ("pseudo-injective"),
//! plus derived limits.

use poslim::abgrp::{FgAbGroup, Ring};
use poslim::checks::{is_fibrant_at, is_pseudo_injective_at};
use poslim::derived::higher_lim;
use poslim::diagram::{Diagram, Variance};
use poslim::matrix::IntMat;
use poslim::poset::FinPoset;
use std::collections::BTreeMap;

fn main() {
    // reduction onto Z/2 below: epi onto the limit
    let poset =
        FinPoset::from_covers(vec!["j".into(), "i".into()], &[("j".into(), "i".into())]).unwrap();
    let z = FgAbGroup::free(Ring::Z, 1);
    let z2 = FgAbGroup::cyclic(Ring::Z, 2);
    let mut edges = BTreeMap::new();
    edges.insert((0, 1), IntMat::from_rows(&[vec![1]]));
    let reduction = Diagram::new(
        poset.clone(),
        Variance::Contravariant,
        vec![z2, z.clone()],
        edges,
    )
    .unwrap();
    println!(
        "mod-2 reduction downward: fibrant at top = {}",
        is_fibrant_at(&reduction, 1).is_true()
    );

    // multiplication by 2 downward misses half the limit
    let mut edges = BTreeMap::new();
    edges.insert((0, 1), IntMat::from_rows(&[vec![2]]));
    let doubling = Diagram::new(
        poset,
        Variance::Contravariant,
        vec![z.clone(), z.clone()],
        edges,
    )
    .unwrap();
    let fib = is_fibrant_at(&doubling, 1);
    println!("doubling downward: fibrant at top = {}", fib.is_true());
    if let Some(w) = fib.witness {
        println!("  witness: {w:?}");
    }

    // tuple realization over an antichain: diagonal from Z fails, the two
    // projections from Z^2 succeed
    let vee = FinPoset::from_covers(
        vec!["j1".into(), "j2".into(), "i".into()],
        &[("j1".into(), "i".into()), ("j2".into(), "i".into())],
    )
    .unwrap();
    let mut diag_edges = BTreeMap::new();
    diag_edges.insert((0, 2), IntMat::from_rows(&[vec![1]]));
    diag_edges.insert((1, 2), IntMat::from_rows(&[vec![1]]));
    let diagonal = Diagram::new(
        vee.clone(),
        Variance::Contravariant,
        vec![z.clone(), z.clone(), z.clone()],
        diag_edges,
    )
    .unwrap();
    println!(
        "diagonal from Z over two incomparable points: realization at top = {}",
        is_pseudo_injective_at(&diagonal, 2).is_true()
    );

    let zz = FgAbGroup::free(Ring::Z, 2);
    let mut proj_edges = BTreeMap::new();
    proj_edges.insert((0, 2), IntMat::from_rows(&[vec![1, 0]]));
    proj_edges.insert((1, 2), IntMat::from_rows(&[vec![0, 1]]));
    let projections = Diagram::new(
        vee,
        Variance::Contravariant,
        vec![z.clone(), z.clone(), zz],
        proj_edges,
    )
    .unwrap();
    println!(
        "projections from Z^2: realization at top = {}",
        is_pseudo_injective_at(&projections, 2).is_true()
    );

    // derived limits of a constant contravariant diagram on two points
    let two = FinPoset::from_covers(vec!["x".into(), "y".into()], &[]).unwrap();
    let constant = Diagram::constant(two, Variance::Contravariant, z);
    println!(
        "constant on two incomparable points: lim0 = {}, lim1 = {}",
        higher_lim(&constant, 0),
        higher_lim(&constant, 1)
    );
}
