//! The JSON interchange format: load the shipped fixtures, round-trip a
//! diagram, and show the graded form.

use poslim::io::{diagram_to_file, graded_to_file, DiagramFile};

fn main() {
    let text = include_str!("data/zero_span.json");
    let file = DiagramFile::from_json(text).unwrap();
    let d = file.diagram().unwrap();
    println!(
        "loaded {} elements, objects: {}",
        d.poset().len(),
        d.objects()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );

    let back = diagram_to_file(&d);
    let reloaded = DiagramFile::from_json(&back.to_json())
        .unwrap()
        .diagram()
        .unwrap();
    for (lo, hi) in d.poset().covers() {
        assert!(d.arrow(lo, hi).eq_as_homs(&reloaded.arrow(lo, hi)));
    }
    println!("round trip preserved every arrow");

    let fx = poslim::groups::bianchi_fixtures();
    let graded = graded_to_file(&fx.graded);
    println!(
        "graded case-study file: {} layers, {} bytes of JSON",
        graded.layers.as_ref().map_or(0, |l| l.len()),
        graded.to_json().len()
    );
}
