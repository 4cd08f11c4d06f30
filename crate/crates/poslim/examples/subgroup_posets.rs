//! Finite groups and their subgroup posets: build the augmentation-kernel
//! diagram of the full subgroup lattice and inspect its structure.

use poslim::checks::is_pseudo_projective_at;
use poslim::derived::higher_colim;
use poslim::groups::{kernel_functor, subgroup_poset, FiniteGroup};

fn main() {
    let g = FiniteGroup::symmetric3();
    println!("symmetric group on three letters, order {}", g.order());

    let subs: Vec<(String, Vec<usize>)> = g
        .all_subgroups()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (format!("u{i}"), s.into_iter().collect()))
        .collect();
    let (poset, specs) = subgroup_poset(&g, &subs).unwrap();
    println!("{} subgroups; poset height {}", poset.len(), poset.height());

    let d = kernel_functor(&g, &poset, &specs).unwrap();
    for (i, spec) in specs.iter().enumerate() {
        println!(
            "  {} (order {:2}): kernel rank {} = |G| - [G:U]",
            poset.id(i),
            spec.elements.len(),
            d.object(i).ngens()
        );
    }

    for lo in 0..poset.len() {
        for hi in 0..poset.len() {
            if poset.lt(lo, hi) {
                assert!(d.arrow(lo, hi).is_injective());
            }
        }
    }
    println!("all kernel inclusions verified injective");

    for n in 0..=poset.height() {
        println!("derived colimit {n}: {}", higher_colim(&d, n));
    }
    let top = poset.maximal_elements()[0];
    println!(
        "relation lifting at the whole group: {}",
        is_pseudo_projective_at(&d, top).is_true()
    );
}
