//! The JSON interchange format: posets, diagrams, witness sections, graded
//! layers, finite groups, and the element files consumed by the
//! certificate command. One format, human-auditable, no binary encodings.

use crate::abgrp::{FgAbGroup, Hom, Ring};
use crate::diagram::{Diagram, FormalSum, Variance};
use crate::groups::FiniteGroup;
use crate::mackey::{MackeyWitness, TripleMaps};
use crate::matrix::IntMat;
use crate::poset::FinPoset;
use crate::spectral::GradedDiagram;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Invalid(msg.into()))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PosetSection {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum RingSpec {
    Named(String),
    Modular { modulus: u64 },
}

impl Default for RingSpec {
    fn default() -> Self {
        RingSpec::Named("Z".to_string())
    }
}

impl RingSpec {
    pub fn to_ring(&self) -> Result<Ring, IoError> {
        match self {
            RingSpec::Named(s) if s == "Z" => Ok(Ring::Z),
            RingSpec::Named(s) if s == "Q" => Ok(Ring::Q),
            RingSpec::Named(s) => invalid(format!(
                "unknown ring {s:?} (use \"Z\", \"Q\", or {{\"modulus\": m}})"
            )),
            RingSpec::Modular { modulus } => {
                if *modulus < 2 {
                    invalid("modulus must be at least 2")
                } else {
                    Ok(Ring::Zmod(*modulus))
                }
            }
        }
    }

    pub fn from_ring(r: &Ring) -> RingSpec {
        match r {
            Ring::Z => RingSpec::Named("Z".into()),
            Ring::Q => RingSpec::Named("Q".into()),
            Ring::Zmod(m) => RingSpec::Modular { modulus: *m },
        }
    }
}

/// Either canonical invariants or raw generators-and-relations.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum GroupSpec {
    Canonical {
        free_rank: usize,
        #[serde(default)]
        torsion: Vec<u64>,
    },
    Presented {
        gens: usize,
        rels: Vec<Vec<i64>>,
    },
}

impl GroupSpec {
    pub fn to_group(&self, ring: &Ring) -> Result<FgAbGroup, IoError> {
        match self {
            GroupSpec::Canonical { free_rank, torsion } => Ok(FgAbGroup::from_invariants(
                ring.clone(),
                *free_rank,
                torsion,
            )),
            GroupSpec::Presented { gens, rels } => {
                for row in rels {
                    if rels.len() != *gens && row.len() != rels.first().map_or(0, |r| r.len()) {
                        return invalid("ragged relation matrix");
                    }
                }
                if rels.len() != *gens && !rels.is_empty() {
                    return invalid(format!(
                        "relation matrix must have one row per generator ({} rows for {gens} gens)",
                        rels.len()
                    ));
                }
                let cols = rels.first().map_or(0, |r| r.len());
                let mat = IntMat::from_fn(*gens, cols, |i, j| BigInt::from(rels[i][j]));
                Ok(FgAbGroup::presented(ring.clone(), *gens, mat))
            }
        }
    }

    pub fn from_group(g: &FgAbGroup) -> GroupSpec {
        let rels = g.rels();
        let rows = (0..rels.rows())
            .map(|i| {
                (0..rels.cols())
                    .map(|j| i64::try_from(&rels[(i, j)]).expect("file-scale entries"))
                    .collect()
            })
            .collect();
        GroupSpec::Presented {
            gens: g.ngens(),
            rels: rows,
        }
    }
}

/// A map between the values at two elements. Matrices are row-major with
/// one column per source generator; `den` divides every application
/// (allowed only over Q).
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MapSpec {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<u64>,
}

impl MapSpec {
    fn matrix_as_intmat(&self, rows: usize, cols: usize) -> Result<IntMat, IoError> {
        if self.matrix.len() != rows || self.matrix.iter().any(|r| r.len() != cols) {
            return invalid(format!(
                "map {} -> {}: expected a {}x{} matrix",
                self.from, self.to, rows, cols
            ));
        }
        Ok(IntMat::from_fn(rows, cols, |i, j| {
            BigInt::from(self.matrix[i][j])
        }))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct WitnessSection {
    #[serde(default)]
    pub transfers: Vec<MapSpec>,
    #[serde(default)]
    pub units: Vec<MapSpec>,
    /// Companion witnesses: `at` names the unit pair (lower element of the
    /// transfer), `under` the element the companion acts on.
    #[serde(default)]
    pub betas: Vec<BetaSpec>,
    #[serde(default)]
    pub triples: Vec<TripleSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BetaSpec {
    pub lower: String,
    pub upper: String,
    pub under: String,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TripleSpec {
    pub i: String,
    pub j: String,
    pub k: String,
    pub alpha: Vec<Vec<i64>>,
    pub beta: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LayerSection {
    pub objects: BTreeMap<String, GroupSpec>,
    pub maps: Vec<MapSpec>,
}

/// The top-level file.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DiagramFile {
    pub format_version: u32,
    pub poset: PosetSection,
    #[serde(default)]
    pub ring: RingSpec,
    #[serde(default = "default_variance")]
    pub variance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<BTreeMap<String, GroupSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<BTreeMap<usize, LayerSection>>,
}

fn default_variance() -> String {
    "covariant".to_string()
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let f: DiagramFile = serde_json::from_str(text)?;
        if f.format_version != FORMAT_VERSION {
            return Err(IoError::Version(f.format_version));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn variance(&self) -> Result<Variance, IoError> {
        match self.variance.as_str() {
            "covariant" => Ok(Variance::Covariant),
            "contravariant" => Ok(Variance::Contravariant),
            v => invalid(format!("unknown variance {v:?}")),
        }
    }

    pub fn poset(&self) -> Result<FinPoset, IoError> {
        FinPoset::from_covers(self.poset.elements.clone(), &self.poset.covers)
            .map_err(|e| IoError::Invalid(e.to_string()))
    }

    /// Build the single diagram from the top-level objects and maps.
    pub fn diagram(&self) -> Result<Diagram, IoError> {
        let poset = self.poset()?;
        let ring = self.ring.to_ring()?;
        let variance = self.variance()?;
        let objects_spec = self
            .objects
            .as_ref()
            .ok_or_else(|| IoError::Invalid("missing objects section".into()))?;
        let (objects, edges) = section_to_parts(&poset, &ring, variance, objects_spec, &self.maps)?;
        Diagram::new(poset, variance, objects, edges).map_err(|e| IoError::Invalid(e.to_string()))
    }

    /// Build the graded diagram from the layers section.
    pub fn graded(&self) -> Result<GradedDiagram, IoError> {
        let poset = self.poset()?;
        let ring = self.ring.to_ring()?;
        let layers_spec = self
            .layers
            .as_ref()
            .ok_or_else(|| IoError::Invalid("missing layers section".into()))?;
        let mut layers = BTreeMap::new();
        for (&q, layer) in layers_spec {
            let (objects, edges) = section_to_parts(
                &poset,
                &ring,
                Variance::Covariant,
                &layer.objects,
                &layer.maps,
            )?;
            let d = Diagram::new(poset.clone(), Variance::Covariant, objects, edges)
                .map_err(|e| IoError::Invalid(format!("layer {q}: {e}")))?;
            layers.insert(q, d);
        }
        GradedDiagram::new(poset, layers).map_err(|e| IoError::Invalid(e.to_string()))
    }

    /// Attach the witness section to the diagram.
    pub fn mackey_witness(&self) -> Result<MackeyWitness, IoError> {
        let base = self.diagram()?;
        let section = self
            .witness
            .as_ref()
            .ok_or_else(|| IoError::Invalid("missing witness section".into()))?;
        let poset = base.poset().clone();
        let look = |name: &str| -> Result<usize, IoError> {
            poset
                .index_of(name)
                .map_err(|e| IoError::Invalid(e.to_string()))
        };
        let den_of = |d: &Option<u64>| BigInt::from(d.unwrap_or(1));

        let mut transfers = BTreeMap::new();
        for m in &section.transfers {
            let lo = look(&m.from)?;
            let hi = look(&m.to)?;
            // covariant base: transfer descends, matrix value(hi) -> value(lo)
            let (src, dst) = match base.variance() {
                Variance::Covariant => (base.object(hi), base.object(lo)),
                Variance::Contravariant => (base.object(lo), base.object(hi)),
            };
            let mat = m.matrix_as_intmat(dst.ngens(), src.ngens())?;
            let hom = Hom::new(src.clone(), dst.clone(), mat, den_of(&m.den))
                .map_err(|e| IoError::Invalid(format!("transfer {} < {}: {e}", m.from, m.to)))?;
            transfers.insert((lo.min(hi), lo.max(hi)), hom);
        }
        let mut units = BTreeMap::new();
        for m in &section.units {
            let lo = look(&m.from)?;
            let hi = look(&m.to)?;
            let at = base.object(lo);
            let mat = m.matrix_as_intmat(at.ngens(), at.ngens())?;
            let hom = Hom::new(at.clone(), at.clone(), mat, den_of(&m.den))
                .map_err(|e| IoError::Invalid(format!("unit {} < {}: {e}", m.from, m.to)))?;
            units.insert((lo, hi), hom);
        }
        let mut betas = BTreeMap::new();
        for bspec in &section.betas {
            let lo = look(&bspec.lower)?;
            let hi = look(&bspec.upper)?;
            let k = look(&bspec.under)?;
            let at = base.object(k);
            let mat = MapSpec {
                from: bspec.under.clone(),
                to: bspec.under.clone(),
                matrix: bspec.matrix.clone(),
                den: bspec.den,
            }
            .matrix_as_intmat(at.ngens(), at.ngens())?;
            let hom = Hom::new(at.clone(), at.clone(), mat, den_of(&bspec.den))
                .map_err(|e| IoError::Invalid(format!("beta witness at {}: {e}", bspec.under)))?;
            betas.insert((lo, hi, k), hom);
        }
        let mut triples = BTreeMap::new();
        for t in &section.triples {
            let i = look(&t.i)?;
            let j = look(&t.j)?;
            let k = look(&t.k)?;
            let m = poset
                .meet(j, k)
                .ok_or_else(|| IoError::Invalid("triple on a pair without a meet".into()))?;
            let den = den_of(&t.den);
            let mk = |mat: &Vec<Vec<i64>>, at: usize, label: &str| -> Result<Hom, IoError> {
                let g = base.object(at);
                let spec = MapSpec {
                    from: String::new(),
                    to: String::new(),
                    matrix: mat.clone(),
                    den: t.den,
                };
                let m = spec.matrix_as_intmat(g.ngens(), g.ngens())?;
                Hom::new(g.clone(), g.clone(), m, den.clone())
                    .map_err(|e| IoError::Invalid(format!("triple map {label}: {e}")))
            };
            triples.insert(
                (i, j, k),
                TripleMaps {
                    alpha: mk(&t.alpha, j, "alpha")?,
                    beta: mk(&t.beta, m, "beta")?,
                    gamma: mk(&t.gamma, k, "gamma")?,
                },
            );
        }
        Ok(MackeyWitness {
            base,
            transfers,
            units,
            betas,
            triples,
        })
    }
}

type DiagramParts = (Vec<FgAbGroup>, BTreeMap<(usize, usize), IntMat>);

fn section_to_parts(
    poset: &FinPoset,
    ring: &Ring,
    variance: Variance,
    objects_spec: &BTreeMap<String, GroupSpec>,
    maps: &[MapSpec],
) -> Result<DiagramParts, IoError> {
    let mut objects = Vec::with_capacity(poset.len());
    for id in poset.ids() {
        let spec = objects_spec
            .get(id)
            .ok_or_else(|| IoError::Invalid(format!("missing object at {id}")))?;
        objects.push(spec.to_group(ring)?);
    }
    let mut edges = BTreeMap::new();
    for m in maps {
        let lo = poset
            .index_of(&m.from)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        let hi = poset
            .index_of(&m.to)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        let (src, dst) = match variance {
            Variance::Covariant => (&objects[lo], &objects[hi]),
            Variance::Contravariant => (&objects[hi], &objects[lo]),
        };
        if m.den.is_some_and(|d| d != 1) {
            return invalid("edge maps of a diagram may not carry denominators");
        }
        let mat = m.matrix_as_intmat(dst.ngens(), src.ngens())?;
        edges.insert((lo, hi), mat);
    }
    Ok((objects, edges))
}

fn mat_to_rows(m: &IntMat) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| i64::try_from(&m[(i, j)]).expect("file-scale entries"))
                .collect()
        })
        .collect()
}

/// Serialize a diagram back to the file structure.
pub fn diagram_to_file(d: &Diagram) -> DiagramFile {
    let poset = d.poset();
    let covers: Vec<(String, String)> = poset
        .covers()
        .into_iter()
        .map(|(lo, hi)| (poset.id(lo).to_string(), poset.id(hi).to_string()))
        .collect();
    let mut objects = BTreeMap::new();
    for i in 0..poset.len() {
        objects.insert(poset.id(i).to_string(), GroupSpec::from_group(d.object(i)));
    }
    let maps: Vec<MapSpec> = poset
        .covers()
        .into_iter()
        .map(|(lo, hi)| MapSpec {
            from: poset.id(lo).to_string(),
            to: poset.id(hi).to_string(),
            matrix: mat_to_rows(d.arrow(lo, hi).matrix()),
            den: None,
        })
        .collect();
    DiagramFile {
        format_version: FORMAT_VERSION,
        poset: PosetSection {
            elements: poset.ids().to_vec(),
            covers,
        },
        ring: RingSpec::from_ring(d.ring()),
        variance: match d.variance() {
            Variance::Covariant => "covariant".into(),
            Variance::Contravariant => "contravariant".into(),
        },
        objects: Some(objects),
        maps,
        witness: None,
        layers: None,
    }
}

pub fn diagram_to_json(d: &Diagram) -> String {
    diagram_to_file(d).to_json()
}

pub fn graded_to_file(g: &GradedDiagram) -> DiagramFile {
    let poset = g.poset();
    let covers: Vec<(String, String)> = poset
        .covers()
        .into_iter()
        .map(|(lo, hi)| (poset.id(lo).to_string(), poset.id(hi).to_string()))
        .collect();
    let ring = g
        .layers()
        .values()
        .next()
        .map(|d| d.ring().clone())
        .unwrap_or(Ring::Z);
    let mut layers = BTreeMap::new();
    for (&q, d) in g.layers() {
        let mut objects = BTreeMap::new();
        for i in 0..poset.len() {
            objects.insert(poset.id(i).to_string(), GroupSpec::from_group(d.object(i)));
        }
        let maps: Vec<MapSpec> = poset
            .covers()
            .into_iter()
            .map(|(lo, hi)| MapSpec {
                from: poset.id(lo).to_string(),
                to: poset.id(hi).to_string(),
                matrix: mat_to_rows(d.arrow(lo, hi).matrix()),
                den: None,
            })
            .collect();
        layers.insert(q, LayerSection { objects, maps });
    }
    DiagramFile {
        format_version: FORMAT_VERSION,
        poset: PosetSection {
            elements: poset.ids().to_vec(),
            covers,
        },
        ring: RingSpec::from_ring(&ring),
        variance: "covariant".into(),
        objects: None,
        maps: Vec::new(),
        witness: None,
        layers: Some(layers),
    }
}

/// A formal-sum element file for the certificate command.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ElementFile {
    pub at: String,
    pub components: BTreeMap<String, Vec<i64>>,
}

impl ElementFile {
    pub fn to_formal_sum(&self, d: &Diagram) -> Result<(usize, FormalSum), IoError> {
        let at = d
            .poset()
            .index_of(&self.at)
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        let mut sum = FormalSum::zero();
        for (name, coords) in &self.components {
            let j = d
                .poset()
                .index_of(name)
                .map_err(|e| IoError::Invalid(e.to_string()))?;
            if coords.len() != d.object(j).ngens() {
                return invalid(format!(
                    "component at {name} has {} coordinates, value has {} generators",
                    coords.len(),
                    d.object(j).ngens()
                ));
            }
            let v = IntMat::from_fn(coords.len(), 1, |r, _| BigInt::from(coords[r]));
            sum.add_at(j, &v);
        }
        Ok((at, sum))
    }
}

/// Finite groups: either a multiplication table or permutation generators.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        table: Vec<Vec<usize>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupFile {
    pub fn to_group(&self) -> Result<FiniteGroup, IoError> {
        match self {
            GroupFile::Table { table } => {
                FiniteGroup::from_table(table.clone()).map_err(|e| IoError::Invalid(e.to_string()))
            }
            GroupFile::Permutations { degree, generators } => {
                FiniteGroup::from_permutations(*degree, generators)
                    .map_err(|e| IoError::Invalid(e.to_string()))
            }
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubgroupsFile {
    pub subgroups: Vec<SubgroupEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SubgroupEntry {
    pub name: String,
    pub generators: Vec<usize>,
}

/// A hom with denominator 1 fits the plain map schema.
pub fn hom_to_mapspec(poset: &FinPoset, lo: usize, hi: usize, h: &Hom) -> MapSpec {
    MapSpec {
        from: poset.id(lo).to_string(),
        to: poset.id(hi).to_string(),
        matrix: mat_to_rows(h.matrix()),
        den: hom_den(h),
    }
}

fn hom_den(h: &Hom) -> Option<u64> {
    if h.den().is_one() {
        None
    } else {
        Some(u64::try_from(h.den()).expect("file-scale denominator"))
    }
}

/// Serialize a witness (transfers, units, companions, triples) back into
/// the file schema, ready to attach to the diagram file of its base.
pub fn witness_to_section(w: &MackeyWitness) -> WitnessSection {
    let poset = w.base.poset();
    let mut section = WitnessSection::default();
    for (&(lo, hi), h) in &w.transfers {
        section.transfers.push(hom_to_mapspec(poset, lo, hi, h));
    }
    for (&(lo, hi), h) in &w.units {
        section.units.push(hom_to_mapspec(poset, lo, hi, h));
    }
    for (&(lo, hi, k), h) in &w.betas {
        section.betas.push(BetaSpec {
            lower: poset.id(lo).to_string(),
            upper: poset.id(hi).to_string(),
            under: poset.id(k).to_string(),
            matrix: mat_to_rows(h.matrix()),
            den: hom_den(h),
        });
    }
    for (&(i, j, k), t) in &w.triples {
        // the schema shares one denominator across the three maps
        let dens: std::collections::BTreeSet<Option<u64>> =
            [hom_den(&t.alpha), hom_den(&t.beta), hom_den(&t.gamma)]
                .into_iter()
                .collect();
        assert_eq!(dens.len(), 1, "triple maps must share a denominator for the file schema");
        section.triples.push(TripleSpec {
            i: poset.id(i).to_string(),
            j: poset.id(j).to_string(),
            k: poset.id(k).to_string(),
            alpha: mat_to_rows(t.alpha.matrix()),
            beta: mat_to_rows(t.beta.matrix()),
            gamma: mat_to_rows(t.gamma.matrix()),
            den: hom_den(&t.alpha),
        });
    }
    section
}
