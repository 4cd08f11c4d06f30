//! Command-line front end. Exit codes: 0 = verdict true / success,
//! 1 = verdict false (witness on stdout), 2 = malformed input.

use crate::checks::{self, CrosscheckParams, FailureWitness, Verdict};
use crate::derived::{higher_colim, higher_lim};
use crate::diagram::{Diagram, Variance};
use crate::groups::{bianchi_fixtures, kernel_functor, subgroup_poset};
use crate::io::{self, DiagramFile, ElementFile, GroupFile, SubgroupsFile};
use crate::mackey::{validate_full_mackey, validate_weak_mackey, validate_weak_mackey_contra};
use crate::spectral::{assemble_homology, collapse_report, e2_page};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "poslim",
    version,
    about = "Exact higher (co)limits and acyclicity checks for diagrams of abelian groups over finite posets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a diagram file (poset axioms, shapes, functoriality).
    Validate { file: PathBuf },
    /// Compute a derived colimit of a covariant diagram.
    Colim {
        #[arg(long, default_value_t = 0)]
        degree: usize,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute a derived limit of a contravariant diagram.
    Lim {
        #[arg(long, default_value_t = 0)]
        degree: usize,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decision procedures.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Certify that a relation class dies in the colimit below an element.
    Certify {
        #[arg(long)]
        at: String,
        #[arg(long)]
        element: PathBuf,
        file: PathBuf,
    },
    /// Cross-check the theorem suite on a seeded random corpus.
    Crosscheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_poset: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        max_entry: i64,
        #[arg(long, default_value_t = 6)]
        max_torsion: u64,
    },
    /// Assemble the E2 page of a graded diagram.
    BkE2 {
        #[arg(long)]
        graded: PathBuf,
        #[arg(long)]
        pmax: usize,
        #[arg(long)]
        qmax: usize,
        #[arg(long)]
        assemble: bool,
        #[arg(long)]
        json: bool,
    },
    /// Finite-group utilities.
    Grouph {
        #[command(subcommand)]
        sub: GrouphCmd,
    },
    /// Run the shipped case-study reproduction and print the verdicts.
    Bianchi {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Injective comparison maps from ray colimits.
    Cofibrant {
        #[arg(long)]
        at: Option<String>,
        file: PathBuf,
    },
    /// Relation lifting over antichains.
    PseudoProjective {
        #[arg(long)]
        at: Option<String>,
        file: PathBuf,
    },
    /// Surjective comparison maps onto ray limits.
    Fibrant {
        #[arg(long)]
        at: Option<String>,
        file: PathBuf,
    },
    /// Tuple realization over antichains.
    PseudoInjective {
        #[arg(long)]
        at: Option<String>,
        file: PathBuf,
    },
    /// Weak or full Mackey structure with optional quasi-unit demand.
    Mackey {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        quasi_unit: bool,
    },
}

#[derive(Subcommand)]
enum GrouphCmd {
    /// Build the augmentation-kernel diagram of a subgroup poset.
    Build {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroups: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<DiagramFile, String> {
    DiagramFile::from_json(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn witness_text(d: &Diagram, w: &FailureWitness) -> String {
    let name = |i: usize| d.poset().id(i).to_string();
    let sum_text = |f: &crate::diagram::FormalSum| -> String {
        f.components
            .iter()
            .map(|(&j, v)| {
                let coords: Vec<String> = (0..v.rows()).map(|r| v[(r, 0)].to_string()).collect();
                format!("{}:({})", name(j), coords.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    match w {
        FailureWitness::EpsKernelClass { at, class } => format!(
            "nonzero class below {} killed by the comparison map: {}",
            name(*at),
            sum_text(class)
        ),
        FailureWitness::EscapedComponent {
            at,
            antichain,
            component,
            relation,
        } => format!(
            "at {}: relation {} over the antichain {{{}}} has its {} component outside the boundary image",
            name(*at),
            sum_text(relation),
            antichain.iter().map(|&a| name(a)).collect::<Vec<_>>().join(", "),
            name(*component)
        ),
        FailureWitness::NotEpi { at, tuple } => format!(
            "at {}: compatible tuple {} is not hit from the object",
            name(*at),
            sum_text(tuple)
        ),
        FailureWitness::UnreachableTuple { at, antichain, tuple } => format!(
            "at {}: kernel tuple {} over the antichain {{{}}} has no simultaneous preimage",
            name(*at),
            sum_text(tuple),
            antichain.iter().map(|&a| name(a)).collect::<Vec<_>>().join(", ")
        ),
        FailureWitness::MackeyClause { clause, i, j, k } => format!(
            "clause {clause} fails at i={}, j={}{}",
            name(*i),
            name(*j),
            k.map(|k| format!(", k={}", name(k))).unwrap_or_default()
        ),
        FailureWitness::NotMonic { lo, hi } => {
            format!("arrow {} -> {} is not injective", name(*lo), name(*hi))
        }
    }
}

fn report_outcome(d: &Diagram, what: &str, r: checks::CheckReport) -> i32 {
    match r.verdict {
        Verdict::Holds => {
            println!("{what}: true");
            0
        }
        Verdict::Fails => {
            println!("{what}: false");
            if let Some(w) = &r.witness {
                println!("witness: {}", witness_text(d, w));
            }
            1
        }
        Verdict::Undetermined => {
            println!("{what}: undetermined");
            1
        }
    }
}

fn group_json(g: &crate::abgrp::FgAbGroup) -> serde_json::Value {
    let c = g.canon();
    serde_json::json!({
        "free_rank": c.free_rank,
        "torsion": c.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "pretty": g.to_string(),
    })
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let f = load(&file)?;
            if f.layers.is_some() {
                match f.graded() {
                    Ok(g) => {
                        println!(
                            "valid graded diagram: {} layers over {} elements",
                            g.layers().len(),
                            g.poset().len()
                        );
                        Ok(0)
                    }
                    Err(e) => {
                        println!("invalid: {e}");
                        Ok(1)
                    }
                }
            } else {
                match f.diagram() {
                    Ok(d) => {
                        println!(
                            "valid {} diagram over {} elements",
                            match d.variance() {
                                Variance::Covariant => "covariant",
                                Variance::Contravariant => "contravariant",
                            },
                            d.poset().len()
                        );
                        Ok(0)
                    }
                    Err(e) => {
                        println!("invalid: {e}");
                        Ok(1)
                    }
                }
            }
        }
        Cmd::Colim { degree, file, json } => {
            let d = load(&file)?.diagram().map_err(|e| e.to_string())?;
            if d.variance() != Variance::Covariant {
                return Err("colim needs a covariant diagram".into());
            }
            let h = higher_colim(&d, degree);
            if json {
                println!("{}", group_json(&h));
            } else {
                println!("{h}");
            }
            Ok(0)
        }
        Cmd::Lim { degree, file, json } => {
            let d = load(&file)?.diagram().map_err(|e| e.to_string())?;
            if d.variance() != Variance::Contravariant {
                return Err("lim needs a contravariant diagram".into());
            }
            let h = higher_lim(&d, degree);
            if json {
                println!("{}", group_json(&h));
            } else {
                println!("{h}");
            }
            Ok(0)
        }
        Cmd::Check { what } => check_dispatch(what),
        Cmd::Certify { at, element, file } => {
            let d = load(&file)?.diagram().map_err(|e| e.to_string())?;
            let elem: ElementFile =
                serde_json::from_str(&read_file(&element)?).map_err(|e| e.to_string())?;
            if elem.at != at {
                return Err(format!(
                    "element file targets {} but --at names {}",
                    elem.at, at
                ));
            }
            let (target, sum) = elem.to_formal_sum(&d).map_err(|e| e.to_string())?;
            match checks::certify_zero_class(&d, target, &sum) {
                Ok(trace) => {
                    trace.verify(&d, &sum).map_err(|e| e.to_string())?;
                    println!(
                        "certified: class vanishes after {} rewrite steps (scale {})",
                        trace.steps.len(),
                        trace.scale
                    );
                    Ok(0)
                }
                Err(checks::CertifyError::NoDecomposition(j)) => {
                    println!(
                        "not certifiable: component at {} escapes its boundary image",
                        d.poset().id(j)
                    );
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Crosscheck {
            seed,
            count,
            max_poset,
            max_rank,
            max_entry,
            max_torsion,
        } => {
            let params = CrosscheckParams {
                seed,
                count,
                max_poset,
                max_rank,
                max_torsion,
                max_entry,
            };
            let report = checks::crosscheck_theorems(&params);
            println!(
                "checked {} instances (covariant and contravariant)",
                report.instances
            );
            if report.violations.is_empty() {
                println!("no violations");
                Ok(0)
            } else {
                for v in &report.violations {
                    println!("violation at instance {}: {}", v.index, v.law);
                    println!("{}", v.instance);
                }
                Ok(1)
            }
        }
        Cmd::BkE2 {
            graded,
            pmax,
            qmax,
            assemble,
            json,
        } => {
            let g = load(&graded)?.graded().map_err(|e| e.to_string())?;
            let page = e2_page(&g, pmax, qmax).map_err(|e| e.to_string())?;
            if json {
                let mut entries = serde_json::Map::new();
                for (&(p, q), grp) in &page.entries {
                    entries.insert(format!("{p},{q}"), group_json(grp));
                }
                let rep = collapse_report(&page);
                let mut doc = serde_json::json!({
                    "entries": entries,
                    "collapse": rep.collapse,
                    "nonzero": rep.nonzero,
                });
                if assemble {
                    let mut homology = serde_json::Map::new();
                    for n in 0..=qmax {
                        match assemble_homology(&page, n) {
                            Ok(h) => {
                                homology.insert(n.to_string(), group_json(&h));
                            }
                            Err(e) => {
                                homology.insert(n.to_string(), serde_json::json!(e.to_string()));
                            }
                        }
                    }
                    doc["homology"] = serde_json::Value::Object(homology);
                }
                println!("{doc}");
            } else {
                print!("q\\p");
                for p in 0..=pmax {
                    print!("\t{p}");
                }
                println!();
                for q in (0..=qmax).rev() {
                    print!("{q}");
                    for p in 0..=pmax {
                        let text = page
                            .entry(p, q)
                            .map(|g| g.to_string())
                            .unwrap_or_else(|| "·".into());
                        print!("\t{text}");
                    }
                    println!();
                }
                let rep = collapse_report(&page);
                println!("collapse: {}", rep.collapse);
                if assemble {
                    for n in 0..=qmax {
                        match assemble_homology(&page, n) {
                            Ok(h) => println!("H_{n} = {h}"),
                            Err(e) => println!("H_{n}: {e}"),
                        }
                    }
                }
            }
            Ok(0)
        }
        Cmd::Grouph { sub } => match sub {
            GrouphCmd::Build {
                group,
                subgroups,
                out,
            } => {
                let gf: GroupFile =
                    serde_json::from_str(&read_file(&group)?).map_err(|e| e.to_string())?;
                let g = gf.to_group().map_err(|e| e.to_string())?;
                let sf: SubgroupsFile =
                    serde_json::from_str(&read_file(&subgroups)?).map_err(|e| e.to_string())?;
                let named: Vec<(String, Vec<usize>)> = sf
                    .subgroups
                    .iter()
                    .map(|s| {
                        (
                            s.name.clone(),
                            g.closure(&s.generators).into_iter().collect::<Vec<usize>>(),
                        )
                    })
                    .collect();
                let (poset, specs) = subgroup_poset(&g, &named).map_err(|e| e.to_string())?;
                let diagram = kernel_functor(&g, &poset, &specs).map_err(|e| e.to_string())?;
                let text = io::diagram_to_json(&diagram);
                match out {
                    Some(path) => std::fs::write(&path, text).map_err(|e| e.to_string())?,
                    None => println!("{text}"),
                }
                Ok(0)
            }
        },
        Cmd::Bianchi { json } => bianchi_command(json),
    }
}

fn check_dispatch(what: CheckCmd) -> Result<i32, String> {
    let run_at = |file: &Path,
                  at: &Option<String>,
                  variance: Variance,
                  single: &dyn Fn(&Diagram, usize) -> checks::CheckReport,
                  global: &dyn Fn(&Diagram) -> checks::CheckReport,
                  label: &str|
     -> Result<i32, String> {
        let d = load(file)?.diagram().map_err(|e| e.to_string())?;
        if d.variance() != variance {
            return Err(format!(
                "{label} needs a {} diagram",
                match variance {
                    Variance::Covariant => "covariant",
                    Variance::Contravariant => "contravariant",
                }
            ));
        }
        let r = match at {
            Some(name) => {
                let i = d.poset().index_of(name).map_err(|e| e.to_string())?;
                single(&d, i)
            }
            None => global(&d),
        };
        Ok(report_outcome(&d, label, r))
    };
    match what {
        CheckCmd::Cofibrant { at, file } => run_at(
            &file,
            &at,
            Variance::Covariant,
            &checks::is_cofibrant_at,
            &checks::is_cofibrant,
            "cofibrant",
        ),
        CheckCmd::PseudoProjective { at, file } => run_at(
            &file,
            &at,
            Variance::Covariant,
            &checks::is_pseudo_projective_at,
            &checks::is_pseudo_projective,
            "pseudo-projective",
        ),
        CheckCmd::Fibrant { at, file } => run_at(
            &file,
            &at,
            Variance::Contravariant,
            &checks::is_fibrant_at,
            &checks::is_fibrant,
            "fibrant",
        ),
        CheckCmd::PseudoInjective { at, file } => run_at(
            &file,
            &at,
            Variance::Contravariant,
            &checks::is_pseudo_injective_at,
            &checks::is_pseudo_injective,
            "pseudo-injective",
        ),
        CheckCmd::Mackey {
            witness,
            full,
            quasi_unit,
        } => {
            let f = load(&witness)?;
            let w = f.mackey_witness().map_err(|e| e.to_string())?;
            let report = if full {
                validate_full_mackey(&w).map_err(|e| e.to_string())?.report
            } else {
                match w.base.variance() {
                    Variance::Covariant => validate_weak_mackey(&w).map_err(|e| e.to_string())?,
                    Variance::Contravariant => {
                        validate_weak_mackey_contra(&w).map_err(|e| e.to_string())?
                    }
                }
            };
            let kind = if full { "full mackey" } else { "weak mackey" };
            println!(
                "{kind}: {}",
                match report.weak {
                    Verdict::Holds => "true",
                    Verdict::Fails => "false",
                    Verdict::Undetermined => "undetermined",
                }
            );
            println!(
                "quasi-unit: {}",
                match report.quasi_unit {
                    Verdict::Holds => "true",
                    Verdict::Fails => "false",
                    Verdict::Undetermined => "undetermined",
                }
            );
            for fw in &report.failures {
                println!("witness: {}", witness_text(&w.base, fw));
            }
            let ok = report.weak == Verdict::Holds
                && (!quasi_unit || report.quasi_unit == Verdict::Holds);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn bianchi_command(json: bool) -> Result<i32, String> {
    let fx = bianchi_fixtures();
    let poset = &fx.poset;
    let page = e2_page(&fx.graded, 2, 5).map_err(|e| e.to_string())?;
    let rep = collapse_report(&page);

    let mut verdicts: Vec<(String, bool)> = Vec::new();
    let zero_at = |p: usize, q: usize| page.entry(p, q).is_none_or(|g| g.is_zero_group());
    let e00 = page.entry(0, 0).map(|g| g.to_string()).unwrap_or_default();
    verdicts.push((
        "row q=0 is the ground ring in column 0 only".into(),
        e00 == "Z" && zero_at(1, 0) && zero_at(2, 0),
    ));
    let elementary_two = |g: &crate::abgrp::FgAbGroup| {
        let c = g.canon();
        c.free_rank == 0 && c.torsion.iter().all(|d| *d == 2.into())
    };
    for q in [2usize, 4] {
        let head = page.entry(0, q).map(elementary_two).unwrap_or(false);
        verdicts.push((
            format!("row q={q}: elementary abelian 2 at p=0, zero beyond"),
            head && zero_at(1, q) && zero_at(2, q),
        ));
    }
    for q in [1usize, 5] {
        let layer = fx.graded.layer(q).expect("layer present");
        let cd = poset.index_of("cd").map_err(|e| e.to_string())?;
        let bd = poset.index_of("bd").map_err(|e| e.to_string())?;
        let pp = checks::is_pseudo_projective_at(layer, cd).is_true()
            && checks::is_pseudo_projective_at(layer, bd).is_true();
        let colim1 = higher_colim(layer, 1);
        let torsion_ok = crate::spectral::is_p_torsion_only(&colim1, 3)
            && crate::spectral::has_no_p_torsion(&colim1, 2);
        verdicts.push((
            format!("layer q={q}: lifting at cd and bd; first derived colimit is 3-torsion"),
            pp && torsion_ok,
        ));
    }
    {
        let layer = fx.graded.layer(3).expect("layer present");
        let pp_all = ["ad", "cd", "bc", "bd"].iter().all(|n| {
            let i = poset.index_of(n).expect("fixture id");
            checks::is_pseudo_projective_at(layer, i).is_true()
        });
        verdicts.push(("layer q=3: lifting at ad, cd, bc, bd".into(), pp_all));
    }
    {
        let positions_ok = rep
            .nonzero
            .iter()
            .all(|&(p, q)| p == 0 || (p == 1 && q % 2 == 1));
        let mut assembled = true;
        for n in 0..=5 {
            assembled &= assemble_homology(&page, n).is_ok();
        }
        verdicts.push((
            "nonzero positions confined to column 0 and odd rows of column 1; homology assembles for n <= 5"
                .into(),
            positions_ok && rep.collapse && assembled,
        ));
    }

    let all = verdicts.iter().all(|(_, v)| *v);
    if json {
        let mut entries = serde_json::Map::new();
        for (&(p, q), grp) in &page.entries {
            entries.insert(format!("{p},{q}"), group_json(grp));
        }
        let doc = serde_json::json!({
            "entries": entries,
            "collapse": rep.collapse,
            "verdicts": verdicts.iter().map(|(k, v)| serde_json::json!({"check": k, "pass": v})).collect::<Vec<_>>(),
            "pass": all,
        });
        println!("{doc}");
        return Ok(if all { 0 } else { 1 });
    }
    {
        println!("E2 page of the shipped case study (rows q, columns p):");
        print!("q\\p");
        for p in 0..=2 {
            print!("\t{p}");
        }
        println!();
        for q in (0..=5).rev() {
            print!("{q}");
            for p in 0..=2 {
                print!(
                    "\t{}",
                    page.entry(p, q).map(|g| g.to_string()).unwrap_or_default()
                );
            }
            println!();
        }
        println!();
        for n in 0..=5 {
            match assemble_homology(&page, n) {
                Ok(h) => println!("H_{n} = {h}"),
                Err(e) => println!("H_{n}: {e}"),
            }
        }
        println!();
        for (check, pass) in &verdicts {
            println!("{}: {}", if *pass { "PASS" } else { "FAIL" }, check);
        }
    }
    println!("verdict: {}", if all { "PASS" } else { "FAIL" });
    Ok(if all { 0 } else { 1 })
}
