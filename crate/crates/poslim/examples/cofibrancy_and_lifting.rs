//! The two covariant decision procedures side by side: injective comparison
//! maps from ray colimits ("cofibrant") and relation lifting over
//! antichains ("pseudo-projective"), with a failure witness.

use poslim::abgrp::{FgAbGroup, Ring};
use poslim::checks::{
    is_cofibrant, is_cofibrant_at, is_pseudo_projective, is_pseudo_projective_at,
};
use poslim::diagram::{Diagram, Variance};
use poslim::matrix::IntMat;
use poslim::poset::FinPoset;
use std::collections::BTreeMap;

fn two_chain(map: i64) -> Diagram {
    let poset =
        FinPoset::from_covers(vec!["j".into(), "i".into()], &[("j".into(), "i".into())]).unwrap();
    let z = FgAbGroup::free(Ring::Z, 1);
    let mut edges = BTreeMap::new();
    edges.insert((0, 1), IntMat::from_rows(&[vec![map]]));
    Diagram::new(poset, Variance::Covariant, vec![z.clone(), z], edges).unwrap()
}

fn main() {
    let injective = two_chain(2);
    println!(
        "multiplication by 2 on a two-chain: cofibrant = {}, lifting = {}",
        is_cofibrant(&injective).is_true(),
        is_pseudo_projective(&injective).is_true()
    );

    let zero_edge = two_chain(0);
    let cof = is_cofibrant_at(&zero_edge, 1);
    let pp = is_pseudo_projective_at(&zero_edge, 1);
    println!(
        "zero map on a two-chain at the top: cofibrant = {}, lifting = {}",
        cof.is_true(),
        pp.is_true()
    );
    if let Some(w) = pp.witness {
        println!("lifting failure witness: {w:?}");
    }

    // the pointwise implication runs one way only: here the comparison map
    // at the top is injective (the colimit below is zero) while lifting
    // fails there
    let poset = FinPoset::from_covers(
        vec!["e0".into(), "e1".into(), "e2".into()],
        &[("e0".into(), "e1".into()), ("e1".into(), "e2".into())],
    )
    .unwrap();
    let z = FgAbGroup::free(Ring::Z, 1);
    let zero = FgAbGroup::zero(Ring::Z);
    let mut edges = BTreeMap::new();
    edges.insert((0, 1), IntMat::zeros(0, 1));
    edges.insert((1, 2), IntMat::zeros(1, 0));
    let d = Diagram::new(poset, Variance::Covariant, vec![z.clone(), zero, z], edges).unwrap();
    println!(
        "chain with a zero middle object at the top: cofibrant = {}, lifting = {}",
        is_cofibrant_at(&d, 2).is_true(),
        is_pseudo_projective_at(&d, 2).is_true()
    );
}
