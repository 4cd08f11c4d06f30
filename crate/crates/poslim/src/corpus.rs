//! Seeded random instances for the cross-check harness and the acceptance
//! corpus.
//!
//! A random functor is built as the cokernel of a map between sums of
//! "atomic" functors (value V above a base element, zero elsewhere, with
//! identity arrows). Cokernels of such maps are computed pointwise, the
//! connecting arrows are block inclusions, and functoriality holds by
//! construction — while the quotients reach arbitrary finitely presented
//! functors, acyclic and non-acyclic alike.

use crate::abgrp::{FgAbGroup, Ring};
use crate::checks::CrosscheckParams;
use crate::diagram::{Diagram, Variance};
use crate::matrix::IntMat;
use crate::poset::FinPoset;
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Random poset on at most `max_poset` elements: forward edges over a fixed
/// element order, transitively closed.
pub fn random_poset(rng: &mut SplitMix64, max_poset: usize) -> FinPoset {
    let n = 1 + rng.below(max_poset);
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(2, 5) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    FinPoset::from_covers(ids, &covers).expect("forward edges close to a partial order")
}

/// Random canonical group with at most `max_rank` generators, each free or
/// of torsion order up to `max_torsion`.
pub fn random_group(rng: &mut SplitMix64, max_rank: usize, max_torsion: u64) -> FgAbGroup {
    let ngens = rng.below(max_rank + 1);
    let mut free = 0;
    let mut torsion = Vec::new();
    for _ in 0..ngens {
        if rng.chance(1, 2) {
            free += 1;
        } else {
            torsion.push(2 + rng.below((max_torsion - 1) as usize) as u64);
        }
    }
    FgAbGroup::from_invariants(Ring::Z, free, &torsion)
}

struct Atom {
    base: usize,
    value: FgAbGroup,
}

/// Deterministic random diagram for (seed, index, variance).
pub fn random_diagram(params: &CrosscheckParams, index: u64, variance: Variance) -> Diagram {
    let mut rng = SplitMix64::new(
        params
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index)
            .wrapping_add(match variance {
                Variance::Covariant => 0,
                Variance::Contravariant => 0x5555_5555_5555_5555,
            }),
    );
    let poset = random_poset(&mut rng, params.max_poset);
    let n = poset.len();

    // "above" in the sense of the effective ordering: atoms contribute at
    // every element the base maps to
    let reaches = |base: usize, i: usize| match variance {
        Variance::Covariant => poset.leq(base, i),
        Variance::Contravariant => poset.leq(i, base),
    };

    let gens: Vec<Atom> = (0..1 + rng.below(n + 1))
        .map(|_| Atom {
            base: rng.below(n),
            value: random_group(&mut rng, params.max_rank, params.max_torsion),
        })
        .collect();
    let rels: Vec<Atom> = (0..rng.below(n + 1))
        .map(|_| Atom {
            base: rng.below(n),
            value: random_group(&mut rng, params.max_rank, params.max_torsion),
        })
        .collect();
    // component maps of the presentation: a block from relation atom t into
    // generator atom s is allowed when atom s already lives at the base of t
    let mut blocks: BTreeMap<(usize, usize), IntMat> = BTreeMap::new();
    for (t, rel) in rels.iter().enumerate() {
        for (s, g) in gens.iter().enumerate() {
            if reaches(g.base, rel.base) {
                let m = IntMat::from_fn(g.value.ngens(), rel.value.ngens(), |_, _| {
                    BigInt::from(rng.range_i64(-params.max_entry, params.max_entry))
                });
                blocks.insert((s, t), m);
            }
        }
    }

    // pointwise cokernel presentation
    let present = |i: usize| -> Vec<usize> {
        (0..gens.len())
            .filter(|&s| reaches(gens[s].base, i))
            .collect()
    };
    let objects: Vec<FgAbGroup> = (0..n)
        .map(|i| {
            let here = present(i);
            let mut offsets = Vec::with_capacity(here.len());
            let mut total = 0;
            for &s in &here {
                offsets.push(total);
                total += gens[s].value.ngens();
            }
            let own: Vec<&IntMat> = here.iter().map(|&s| gens[s].value.rels()).collect();
            let mut rel_mat = IntMat::block_diag(&own);
            // ambient relation columns from every relation atom visible here
            for (t, rel) in rels.iter().enumerate() {
                if !reaches(rel.base, i) {
                    continue;
                }
                let cols = rel.value.ngens();
                let mut block = IntMat::zeros(total, cols);
                for (slot, &s) in here.iter().enumerate() {
                    if let Some(m) = blocks.get(&(s, t)) {
                        for r in 0..m.rows() {
                            for c in 0..cols {
                                block[(offsets[slot] + r, c)] = m[(r, c)].clone();
                            }
                        }
                    }
                }
                rel_mat = rel_mat.hstack(&block);
            }
            FgAbGroup::presented(Ring::Z, total, rel_mat)
        })
        .collect();

    // arrows are block inclusions of the shared atoms
    let mut edges: BTreeMap<(usize, usize), IntMat> = BTreeMap::new();
    for (lo, hi) in poset.covers() {
        let (src_elem, dst_elem) = match variance {
            Variance::Covariant => (lo, hi),
            Variance::Contravariant => (hi, lo),
        };
        let src = present(src_elem);
        let dst = present(dst_elem);
        let src_n = objects[src_elem].ngens();
        let dst_n = objects[dst_elem].ngens();
        let mut mat = IntMat::zeros(dst_n, src_n);
        let mut src_off = 0;
        for &s in &src {
            let width = gens[s].value.ngens();
            let mut dst_off = 0;
            for &sd in &dst {
                if sd == s {
                    for r in 0..width {
                        mat[(dst_off + r, src_off + r)] = BigInt::from(1);
                    }
                    break;
                }
                dst_off += gens[sd].value.ngens();
            }
            src_off += width;
        }
        edges.insert((lo, hi), mat);
    }

    Diagram::new(poset, variance, objects, edges).expect("block inclusions are functorial")
}
