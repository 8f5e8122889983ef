//! The report schema shared by every subcommand, and certificate checking.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kaleido_core::factorization::{
    is_factorization, verify_match, ClassifierMatch, FactorizationCertificate, HajosProperty,
    HajosWitness,
};
use kaleido_core::metric::{
    epsilon_chain, rigidity_check, ultrametric_space, verify_witness, PlanarPointSet, SplitEntry,
    UltrametricSpec, Witness,
};
use kaleido_core::partition::Partition;
use kaleido_core::quasigroup::{
    verify_quasi_kaleidoscopic, LatinSquare, PartialRectangle, QuasiFlags,
};
use kaleido_core::rainbow::Coloring;
use kaleido_core::space::{GSpace, GSpaceFile};
use kaleido_core::splitting::{relative_position, Position, SplittingChain};
use kaleido_core::transversal::verify_kaleidoscopic;
use kaleido_core::{AbelianGroupSpec, Configuration};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Success,
    Absent,
    Holds,
    Fails,
    Unknown,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Success | Verdict::Holds => 0,
            Verdict::Absent | Verdict::Fails => 1,
            Verdict::Error => 2,
            Verdict::Unknown => 3,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Success => "success",
            Verdict::Absent => "absent",
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    pub elapsed_us: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
}

/// A configuration together with the chain that splits it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCase {
    pub set: Configuration,
    pub chain: SplittingChain,
}

/// Self-contained evidence for a verdict. Every variant carries the inputs it
/// needs to be re-checked without the original files.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Coloring {
        space: GSpaceFile,
        set: Configuration,
        coloring: Coloring,
    },
    Factorization(FactorizationCertificate),
    Period {
        group: AbelianGroupSpec,
        set: Configuration,
        period: usize,
    },
    Doubly {
        group: AbelianGroupSpec,
        a: Configuration,
        b: Configuration,
        c: Configuration,
    },
    HajosWitnesses {
        group: AbelianGroupSpec,
        property: HajosProperty,
        witnesses: Vec<HajosWitness>,
    },
    HajosCounterexample {
        property: HajosProperty,
        factorization: FactorizationCertificate,
    },
    Classification {
        group: AbelianGroupSpec,
        matched: ClassifierMatch,
    },
    Chain {
        space: GSpaceFile,
        set: Configuration,
        chain: SplittingChain,
    },
    Splittable {
        space: GSpaceFile,
        cases: Vec<SplitCase>,
    },
    Ultrametric {
        branching: Vec<usize>,
        entries: Vec<SplitEntry>,
        violations: Vec<SplitEntry>,
    },
    EpsilonChain {
        branching: Vec<usize>,
        chain: Vec<Partition>,
    },
    RigidityWitness {
        points: PlanarPointSet,
        witness: Witness,
    },
    Rigid {
        points: PlanarPointSet,
        squared_distances: Vec<String>,
    },
    Completion {
        rectangle: PartialRectangle,
        square: LatinSquare,
    },
    LatinSquare {
        square: LatinSquare,
    },
    QuasiSubset {
        square: LatinSquare,
        /// 0-based symbols.
        set: Configuration,
        flags: QuasiFlags,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coloring: Option<Coloring>,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coloring { .. } => "coloring",
            Certificate::Factorization(_) => "factorization",
            Certificate::Period { .. } => "period",
            Certificate::Doubly { .. } => "doubly",
            Certificate::HajosWitnesses { .. } => "hajos_witnesses",
            Certificate::HajosCounterexample { .. } => "hajos_counterexample",
            Certificate::Classification { .. } => "classification",
            Certificate::Chain { .. } => "chain",
            Certificate::Splittable { .. } => "splittable",
            Certificate::Ultrametric { .. } => "ultrametric",
            Certificate::EpsilonChain { .. } => "epsilon_chain",
            Certificate::RigidityWitness { .. } => "rigidity_witness",
            Certificate::Rigid { .. } => "rigid",
            Certificate::Completion { .. } => "completion",
            Certificate::LatinSquare { .. } => "latin_square",
            Certificate::QuasiSubset { .. } => "quasi_subset",
        }
    }

    /// Re-runs the matching verifier. Malformed embedded inputs are errors.
    pub fn verify(&self) -> Result<bool, CliError> {
        Ok(match self {
            Certificate::Coloring {
                space,
                set,
                coloring,
            } => verify_kaleidoscopic(&GSpace::try_from(space.clone())?, set, coloring),
            Certificate::Factorization(f) => f.verify(),
            Certificate::Period { group, set, period } => {
                *period != 0
                    && *period < group.order()
                    && set.validate_nonempty(group.order()).is_ok()
                    && shift(group, set, *period) == *set
            }
            Certificate::Doubly { group, a, b, c } => {
                is_factorization(group, a, b) && is_factorization(group, b, c)
            }
            Certificate::HajosWitnesses {
                group,
                property,
                witnesses,
            } => {
                !witnesses.is_empty()
                    && witnesses
                        .iter()
                        .all(|w| w.fits(*property) && w.verify(group))
            }
            Certificate::HajosCounterexample {
                property,
                factorization,
            } => {
                let g = &factorization.group;
                let periodic = |s: &Configuration| (1..g.order()).any(|t| shift(g, s, t) == *s);
                let full = factorization.a.len() == g.order();
                factorization.verify()
                    && match property {
                        HajosProperty::Semi => !full && !periodic(&factorization.a),
                        _ => !periodic(&factorization.a) && !periodic(&factorization.b),
                    }
            }
            Certificate::Classification { group, matched } => verify_match(group, matched),
            Certificate::Chain { space, set, chain } => {
                chain.verify(&GSpace::try_from(space.clone())?, set)
            }
            Certificate::Splittable { space, cases } => {
                let space = GSpace::try_from(space.clone())?;
                cases.iter().all(|c| c.chain.verify(&space, &c.set))
            }
            Certificate::Ultrametric {
                branching,
                entries,
                violations,
            } => {
                let spec = UltrametricSpec::new(branching.clone())?;
                let space = ultrametric_space(&spec);
                let chain = epsilon_chain(&spec);
                let positions = |k: &Configuration| -> Result<Vec<Position>, CliError> {
                    Ok(chain
                        .windows(2)
                        .map(|w| relative_position(k, &w[0], &w[1]))
                        .collect::<kaleido_core::Result<Vec<_>>>()?)
                };
                let mut ok = true;
                for e in entries.iter().chain(violations) {
                    ok &= verify_kaleidoscopic(&space, &e.subset, &e.coloring)
                        && positions(&e.subset)? == e.steps;
                }
                ok && entries
                    .iter()
                    .all(|e| !e.steps.contains(&Position::Neither))
                    && violations
                        .iter()
                        .all(|e| e.steps.contains(&Position::Neither))
            }
            Certificate::EpsilonChain { branching, chain } => {
                let spec = UltrametricSpec::new(branching.clone())?;
                let space = ultrametric_space(&spec);
                *chain == epsilon_chain(&spec)
                    && chain.iter().all(|p| space.preserves(p))
                    && chain.first().is_some_and(Partition::is_discrete)
                    && chain.last().is_some_and(Partition::is_full)
                    && chain
                        .windows(2)
                        .all(|w| w[0].refines(&w[1]) && w[0] != w[1])
            }
            Certificate::RigidityWitness { points, witness } => verify_witness(points, witness),
            Certificate::Rigid {
                points,
                squared_distances,
            } => {
                let listed: Vec<String> = points
                    .squared_distances()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                listed == *squared_distances && rigidity_check(points)?.rigid
            }
            Certificate::Completion { rectangle, square } => {
                PartialRectangle::new(rectangle.symbols(), rectangle.table().to_vec()).is_ok()
                    && square.extends(rectangle)
            }
            // deserialization already validated the square
            Certificate::LatinSquare { .. } => true,
            Certificate::QuasiSubset {
                square,
                set,
                flags,
                coloring,
            } => {
                flags.verify(square, set)
                    && coloring
                        .as_ref()
                        .is_none_or(|chi| verify_quasi_kaleidoscopic(square, set, chi))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub query: Query,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Line-oriented `key: value` form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "query: {}", self.query.command);
        for (k, v) in &self.query.params {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        if let Some(d) = &self.diagnostic {
            let _ = writeln!(out, "diagnostic: {d}");
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(out, "certificate: {}", c.kind());
            for line in summary(c) {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(n) = self.stats.nodes {
            let _ = writeln!(out, "nodes: {n}");
        }
        for (k, v) in &self.stats.counts {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "elapsed_us: {}", self.stats.elapsed_us);
        out
    }
}

fn shift(group: &AbelianGroupSpec, set: &Configuration, t: usize) -> Configuration {
    set.iter().map(|x| group.add(x, t)).collect()
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn classes(chi: &Coloring) -> String {
    chi.classes()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn one_based(c: &Configuration) -> String {
    let v: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn summary(c: &Certificate) -> Vec<String> {
    match c {
        Certificate::Coloring { set, coloring, .. } => {
            vec![
                format!("set: {set}"),
                format!("classes: {}", classes(coloring)),
            ]
        }
        Certificate::Factorization(f) => {
            vec![
                format!("group: {}", f.group),
                format!("a: {}", f.a),
                format!("b: {}", f.b),
            ]
        }
        Certificate::Period { group, set, period } => vec![
            format!("set: {set}"),
            format!("period: {} {:?}", period, group.decode(*period).residues),
        ],
        Certificate::Doubly { a, b, c, .. } => {
            vec![format!("a: {a}"), format!("b: {b}"), format!("c: {c}")]
        }
        Certificate::HajosWitnesses {
            property,
            witnesses,
            ..
        } => vec![format!("{} witnesses for {:?}", witnesses.len(), property)],
        Certificate::HajosCounterexample { factorization, .. } => vec![
            format!("a: {}", factorization.a),
            format!("b: {}", factorization.b),
        ],
        Certificate::Classification { matched, .. } => {
            let mut v = vec![format!("family: {}", matched.family)];
            for (var, p) in &matched.assignment {
                v.push(format!("{var} = {p}"));
            }
            if let Some(n) = matched.n {
                v.push(format!("n = {n}"));
            }
            v
        }
        Certificate::Chain { chain, .. } => chain
            .chain
            .iter()
            .enumerate()
            .map(|(i, p)| match i.checked_sub(1).map(|j| chain.steps[j]) {
                Some(s) => format!(
                    "{:?} {}",
                    p.blocks_as_lists(),
                    format!("{s:?}").to_lowercase()
                ),
                None => format!("{:?}", p.blocks_as_lists()),
            })
            .collect(),
        Certificate::Splittable { cases, .. } => cases.iter().map(|c| c.set.to_string()).collect(),
        Certificate::Ultrametric {
            entries,
            violations,
            ..
        } => vec![
            format!("kaleidoscopic: {}", entries.len()),
            format!("violations: {}", violations.len()),
        ],
        Certificate::EpsilonChain { chain, .. } => chain
            .iter()
            .map(|p| format!("{:?}", p.blocks_as_lists()))
            .collect(),
        Certificate::RigidityWitness { witness, .. } => vec![
            format!("centers: {:?}", witness.triple),
            format!(
                "squared radii: {}",
                witness
                    .squared_radii
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            format!("point: {}", witness.point),
        ],
        Certificate::Rigid {
            squared_distances, ..
        } => vec![format!(
            "squared distances: {}",
            squared_distances.join(" ")
        )],
        Certificate::Completion { square, .. } | Certificate::LatinSquare { square } => {
            square.to_string().lines().map(str::to_owned).collect()
        }
        Certificate::QuasiSubset {
            set,
            flags,
            coloring,
            ..
        } => {
            let mut v = vec![format!("set: {}", one_based(set))];
            v.push(match &flags.complemented {
                Some(b) => format!("complemented: {}", one_based(b)),
                None => "complemented: no".into(),
            });
            v.push(match &flags.doubly {
                Some((b, c)) => format!("doubly complemented: {} {}", one_based(b), one_based(c)),
                None => "doubly complemented: no".into(),
            });
            v.push(format!("self-complemented: {}", flags.self_complemented));
            if let Some(chi) = coloring {
                v.push(format!("classes: {}", classes(chi)));
            }
            v
        }
    }
}
