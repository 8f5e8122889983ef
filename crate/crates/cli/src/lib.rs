//! `kscope`: command-line front end for `kaleido-core`.
//!
//! Every invocation produces one [`Report`]. Positive verdicts carry a
//! certificate that [`verify`] can re-check from the saved JSON alone.
//!
//! Exit codes: 0 positive, 1 negative or absent, 2 usage or cap error,
//! 3 unknown (node budget exhausted).

pub mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kaleido_core::factorization::{
    find_complement, hajos_check, hajos_classify, is_doubly_complemented, is_factorization,
    period_index, CoincidencePolicy, FactorizationCertificate, HajosOptions, HajosProperty,
    DEFAULT_HAJOS_CAP,
};
use kaleido_core::metric::{
    epsilon_chain, parse_planar_points, rigidity_check, verify_ultrametric_splittability,
    UltrametricSpec, DEFAULT_LEAF_CAP,
};
use kaleido_core::quasigroup::{
    complete_rectangle, complete_rectangle_with_rng, order9_rectangle, parse_latin_square,
    parse_partial_rectangle, quasi_classify_subset, quasi_kaleidoscopic_search, LatinSquare,
    PartialRectangle,
};
use kaleido_core::rainbow::{Coloring, Search};
use kaleido_core::space::{cayley_space, GSpace};
use kaleido_core::splitting::{generate_splittable, is_splittable, DEFAULT_LATTICE_CAP};
use kaleido_core::transversal::{check_kaleidoscopic, search_kaleidoscopic_coloring};
use kaleido_core::{parse_group_spec, AbelianGroupSpec, Configuration, Exec};
use rand::SeedableRng;
use serde_json::{json, Value};

pub use report::{Certificate, Query, Report, SplitCase, Stats, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kaleido_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {reason}")]
    Json { path: PathBuf, reason: String },
    #[error("report has verdict `{0}` and no certificate; nothing to verify")]
    NoCertificate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "kscope",
    version,
    about = "Kaleidoscopical configurations with checkable certificates"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node budget for coloring searches; exhausting it gives verdict unknown
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// G-space file (JSON: {"points": n, "generators": [[...], ...]})
    #[arg(long, global = true)]
    space: Option<PathBuf>,
    /// Abelian group, e.g. C4xC2 or 8,3
    #[arg(long, global = true, value_parser = parse_group_arg)]
    group: Option<AbelianGroupSpec>,
    /// Subset as comma-separated points (1-based symbols for latin commands)
    #[arg(long, global = true, value_parser = parse_set_arg)]
    set: Option<Points>,
    /// Run sweeps on one thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kaleidoscopic colorings in a G-space
    Kaleido {
        #[command(subcommand)]
        op: KaleidoOp,
    },
    /// Factorizations G = A + B of an abelian group
    Factorize {
        #[command(subcommand)]
        op: FactorizeOp,
    },
    /// Hajós-type properties by enumeration or by classification
    Hajos {
        #[command(subcommand)]
        op: HajosOp,
    },
    /// Splitting chains of invariant equivalences
    Split {
        #[command(subcommand)]
        op: SplitOp,
    },
    /// Homogeneous ultrametric spaces given by a branching vector
    Ultra {
        #[command(subcommand)]
        op: UltraOp,
    },
    /// Rigidity of planar point sets
    Rigid {
        #[command(subcommand)]
        op: RigidOp,
    },
    /// Latin squares and quasigroup subsets
    Latin {
        #[command(subcommand)]
        op: LatinOp,
    },
    /// Re-check the certificate in a saved JSON report
    Verify { report: PathBuf },
}

#[derive(Subcommand, Debug)]
enum KaleidoOp {
    /// Least kaleidoscopic coloring for --set
    Find,
    /// Check a given coloring for --set
    Check {
        /// Colors of points 0..n, comma-separated
        #[arg(long, value_parser = parse_set_arg)]
        coloring: Points,
    },
}

#[derive(Subcommand, Debug)]
enum FactorizeOp {
    /// Whether --set and --with factor the group
    Check {
        #[arg(long = "with", value_parser = parse_set_arg)]
        with: Points,
    },
    /// Least complement of --set containing 0
    Complement,
    /// A non-zero period of --set
    Periodic,
    /// B, C with G = A + B = B + C
    Doubly,
}

#[derive(Args, Debug)]
struct HajosArgs {
    /// Group type such as 8,3 or C4xC2 (or use --group)
    group_type: Option<String>,
    /// Largest group order to enumerate
    #[arg(long, default_value_t = DEFAULT_HAJOS_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum HajosOp {
    /// Every factorization has a periodic factor
    Brute(HajosArgs),
    /// Every complemented subset is periodic or has a periodic complement
    Semi(HajosArgs),
    /// Every factorization has a factor that is periodic or has a periodic complement
    Demi(HajosArgs),
    /// Match against the Hajós-Sands family list
    Classify {
        group_type: Option<String>,
        /// Prime variables avoid the fixed primes of their family
        #[arg(long)]
        distinct: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SplitOp {
    /// A splitting chain for --set
    Check,
    /// Every splittable configuration
    Generate {
        /// Largest lattice of invariant equivalences to walk
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum UltraOp {
    /// Every kaleidoscopic subset is split by the ball chain
    Verify {
        /// Branching vector, e.g. 2,3
        #[arg(value_parser = parse_set_arg)]
        branching: Points,
        #[arg(long, default_value_t = DEFAULT_LEAF_CAP)]
        cap: usize,
    },
    /// The chain of ball partitions
    Chain {
        #[arg(value_parser = parse_set_arg)]
        branching: Points,
    },
}

#[derive(Subcommand, Debug)]
enum RigidOp {
    /// Search for three spheres meeting outside the set
    Check {
        /// File with one `x y` pair per line
        file: Option<PathBuf>,
        /// Inline points, e.g. "0,0;2,0;1,1"
        #[arg(long)]
        points: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LatinOp {
    /// Complete a rectangle file (`n r s` then rows)
    Complete {
        file: PathBuf,
        /// Shuffle matching candidates with this seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Validate a square file (`n` then rows); with --set, classify the subset
    Check {
        file: PathBuf,
        /// Verdict is whether --set is kaleidoscopic
        #[arg(long)]
        check_kaleido: bool,
    },
    /// Complete the fixed 9x3 rectangle
    Example9 {
        #[arg(long)]
        check_kaleido: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_group_arg(text: &str) -> Result<AbelianGroupSpec, String> {
    let t = text.trim();
    if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == ',') {
        let orders = parse_list(t)?;
        return AbelianGroupSpec::new(orders).map_err(|e| e.to_string());
    }
    parse_group_spec(t).map_err(|e| e.to_string())
}

/// A comma-separated list of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Points(Vec<usize>);

fn parse_set_arg(text: &str) -> Result<Points, String> {
    parse_list(text).map(Points)
}

fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{}` is not a non-negative integer", tok.trim()))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn exec(g: &Global) -> Exec {
    if g.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_set(g: &Global) -> Result<Configuration, CliError> {
    g.set
        .as_ref()
        .map(|s| Configuration::new(s.0.iter().copied()))
        .ok_or_else(|| usage("missing --set"))
}

fn need_group(g: &Global) -> Result<AbelianGroupSpec, CliError> {
    g.group.clone().ok_or_else(|| usage("missing --group"))
}

fn load_space(g: &Global) -> Result<GSpace, CliError> {
    match (&g.space, &g.group) {
        (Some(path), None) => serde_json::from_str(&read(path)?).map_err(|e| CliError::Json {
            path: path.clone(),
            reason: e.to_string(),
        }),
        (None, Some(spec)) => Ok(cayley_space(spec)),
        (Some(_), Some(_)) => Err(usage("give either --space or --group, not both")),
        (None, None) => Err(usage("missing --space or --group")),
    }
}

/// Converts 1-based symbols from --set to 0-based.
fn latin_set(g: &Global, n: usize) -> Result<Option<Configuration>, CliError> {
    let Some(raw) = &g.set else { return Ok(None) };
    raw.0
        .iter()
        .map(|&v| {
            if (1..=n).contains(&v) {
                Ok(v - 1)
            } else {
                Err(usage(format!("symbol `{v}` in --set is outside 1..={n}")))
            }
        })
        .collect::<Result<Configuration, _>>()
        .map(Some)
}

fn hajos_group(g: &Global, positional: &Option<String>) -> Result<AbelianGroupSpec, CliError> {
    match (positional, &g.group) {
        (Some(t), None) => parse_group_arg(t).map_err(|e| usage(format!("group type `{t}`: {e}"))),
        (None, Some(spec)) => Ok(spec.clone()),
        (Some(_), Some(_)) => Err(usage("give the group type once")),
        (None, None) => Err(usage("missing group type")),
    }
}

/// What a subcommand hands back before timing is attached.
struct Outcome {
    verdict: Verdict,
    certificate: Option<Certificate>,
    nodes: Option<u64>,
    counts: Vec<(&'static str, u64)>,
    params: Vec<(&'static str, Value)>,
}

impl Outcome {
    fn new(verdict: Verdict, certificate: Option<Certificate>) -> Self {
        Self {
            verdict,
            certificate,
            nodes: None,
            counts: Vec::new(),
            params: Vec::new(),
        }
    }

    fn param(mut self, k: &'static str, v: impl Into<Value>) -> Self {
        self.params.push((k, v.into()));
        self
    }

    fn count(mut self, k: &'static str, v: usize) -> Self {
        self.counts.push((k, v as u64));
        self
    }
}

fn coloring_outcome(
    search: Search<Coloring>,
    nodes: u64,
    found: impl FnOnce(Coloring) -> Certificate,
) -> Outcome {
    let mut o = match search {
        Search::Found(chi) => Outcome::new(Verdict::Success, Some(found(chi))),
        Search::Absent => Outcome::new(Verdict::Absent, None),
        Search::Unknown => Outcome::new(Verdict::Unknown, None),
    };
    o.nodes = Some(nodes);
    o
}

fn kaleido(g: &Global, op: &KaleidoOp) -> Result<Outcome, CliError> {
    let space = load_space(g)?;
    let set = need_set(g)?;
    match op {
        KaleidoOp::Find => {
            let r = search_kaleidoscopic_coloring(&space, &set, g.budget)?;
            Ok(coloring_outcome(r.outcome, r.nodes, |coloring| {
                Certificate::Coloring {
                    space: space.to_file(),
                    set: set.clone(),
                    coloring,
                }
            }))
        }
        KaleidoOp::Check { coloring } => {
            let chi = Coloring {
                palette: set.len(),
                colors: coloring.0.clone(),
            };
            Ok(match check_kaleidoscopic(&space, &set, &chi) {
                Ok(()) => Outcome::new(
                    Verdict::Holds,
                    Some(Certificate::Coloring {
                        space: space.to_file(),
                        set,
                        coloring: chi,
                    }),
                ),
                Err(defect) => {
                    Outcome::new(Verdict::Fails, None).param("defect", defect.to_string())
                }
            })
        }
    }
}

fn factorize(g: &Global, op: &FactorizeOp) -> Result<Outcome, CliError> {
    let group = need_group(g)?;
    let a = need_set(g)?;
    a.validate_nonempty(group.order())?;
    Ok(match op {
        FactorizeOp::Check { with } => {
            let b = Configuration::new(with.0.iter().copied());
            b.validate_nonempty(group.order())?;
            let o = if is_factorization(&group, &a, &b) {
                Outcome::new(
                    Verdict::Holds,
                    Some(Certificate::Factorization(FactorizationCertificate {
                        group,
                        a,
                        b: b.clone(),
                    })),
                )
            } else {
                Outcome::new(Verdict::Fails, None)
            };
            o.param("with", b.to_string())
        }
        FactorizeOp::Complement => match find_complement(&group, &a)? {
            Some(b) => Outcome::new(
                Verdict::Success,
                Some(Certificate::Factorization(FactorizationCertificate {
                    group,
                    a,
                    b,
                })),
            ),
            None => Outcome::new(Verdict::Absent, None),
        },
        FactorizeOp::Periodic => match period_index(&group, &a)? {
            Some(period) => Outcome::new(
                Verdict::Success,
                Some(Certificate::Period {
                    group,
                    set: a,
                    period,
                }),
            ),
            None => Outcome::new(Verdict::Absent, None),
        },
        FactorizeOp::Doubly => match is_doubly_complemented(&group, &a)? {
            Some((b, c)) => Outcome::new(
                Verdict::Success,
                Some(Certificate::Doubly { group, a, b, c }),
            ),
            None => Outcome::new(Verdict::Absent, None),
        },
    })
}

fn hajos(g: &Global, op: &HajosOp) -> Result<Outcome, CliError> {
    let (args, property) = match op {
        HajosOp::Classify {
            group_type,
            distinct,
        } => {
            let group = hajos_group(g, group_type)?;
            let policy = if *distinct {
                CoincidencePolicy::Distinct
            } else {
                CoincidencePolicy::Allowed
            };
            let o = match hajos_classify(&group, policy) {
                Some(matched) => Outcome::new(
                    Verdict::Holds,
                    Some(Certificate::Classification {
                        group: group.clone(),
                        matched,
                    }),
                ),
                None => Outcome::new(Verdict::Fails, None),
            };
            return Ok(o
                .param("group", group.to_string())
                .param("distinct", *distinct));
        }
        HajosOp::Brute(a) => (a, HajosProperty::Hajos),
        HajosOp::Semi(a) => (a, HajosProperty::Semi),
        HajosOp::Demi(a) => (a, HajosProperty::Demi),
    };
    let group = hajos_group(g, &args.group_type)?;
    let opts = HajosOptions {
        cap: args.cap,
        exec: exec(g),
        witnesses: true,
    };
    let v = hajos_check(&group, property, &opts)?;
    let o = match v.counterexample {
        None => Outcome::new(
            Verdict::Holds,
            Some(Certificate::HajosWitnesses {
                group: group.clone(),
                property,
                witnesses: v.witnesses,
            }),
        ),
        Some(factorization) => Outcome::new(
            Verdict::Fails,
            Some(Certificate::HajosCounterexample {
                property,
                factorization,
            }),
        ),
    };
    Ok(o.param("group", group.to_string())
        .param("cap", args.cap)
        .count("factorizations", v.factorizations))
}

fn split(g: &Global, op: &SplitOp) -> Result<Outcome, CliError> {
    let space = load_space(g)?;
    match op {
        SplitOp::Check => {
            let set = need_set(g)?;
            Ok(match is_splittable(&space, &set)? {
                Some(chain) => Outcome::new(
                    Verdict::Success,
                    Some(Certificate::Chain {
                        space: space.to_file(),
                        set,
                        chain,
                    }),
                ),
                None => Outcome::new(Verdict::Absent, None),
            })
        }
        SplitOp::Generate { cap } => {
            let sets = generate_splittable(&space, *cap, exec(g))?;
            let cases = sets
                .into_iter()
                .map(|set| {
                    let chain =
                        is_splittable(&space, &set)?.expect("generated configurations split");
                    Ok(SplitCase { set, chain })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let n = cases.len();
            Ok(Outcome::new(
                Verdict::Success,
                Some(Certificate::Splittable {
                    space: space.to_file(),
                    cases,
                }),
            )
            .param("cap", *cap)
            .count("configurations", n))
        }
    }
}

fn ultra(g: &Global, op: &UltraOp) -> Result<Outcome, CliError> {
    match op {
        UltraOp::Verify { branching, cap } => {
            let branching = &branching.0;
            let spec = UltrametricSpec::new(branching.clone())?;
            let r = verify_ultrametric_splittability(&spec, *cap, exec(g))?;
            let verdict = if r.passed() {
                Verdict::Holds
            } else {
                Verdict::Fails
            };
            Ok(Outcome::new(
                verdict,
                Some(Certificate::Ultrametric {
                    branching: branching.clone(),
                    entries: r.kaleidoscopic,
                    violations: r.violations,
                }),
            )
            .param("branching", json!(branching))
            .param("cap", *cap)
            .count("leaves", r.leaves)
            .count("checked", r.checked))
        }
        UltraOp::Chain { branching } => {
            let branching = &branching.0;
            let spec = UltrametricSpec::new(branching.clone())?;
            Ok(Outcome::new(
                Verdict::Success,
                Some(Certificate::EpsilonChain {
                    branching: branching.clone(),
                    chain: epsilon_chain(&spec),
                }),
            )
            .param("branching", json!(branching)))
        }
    }
}

fn rigid(op: &RigidOp) -> Result<Outcome, CliError> {
    let RigidOp::Check { file, points } = op;
    let text = match (file, points) {
        (Some(path), None) => read(path)?,
        (None, Some(inline)) => inline
            .split(';')
            .map(|p| p.replace(',', " "))
            .collect::<Vec<_>>()
            .join("\n"),
        _ => return Err(usage("give a points file or --points, not both")),
    };
    let k = parse_planar_points(&text)?;
    let v = rigidity_check(&k)?;
    let o = match v.witness {
        Some(witness) => Outcome::new(
            Verdict::Fails,
            Some(Certificate::RigidityWitness {
                points: k.clone(),
                witness,
            }),
        ),
        None => Outcome::new(
            Verdict::Holds,
            Some(Certificate::Rigid {
                squared_distances: k
                    .squared_distances()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                points: k.clone(),
            }),
        ),
    };
    Ok(o.count("points", k.len()))
}

fn complete(rect: &PartialRectangle, seed: Option<u64>) -> Option<LatinSquare> {
    match seed {
        Some(s) => complete_rectangle_with_rng(rect, &mut rand::rngs::StdRng::seed_from_u64(s)),
        None => complete_rectangle(rect),
    }
}

/// Classifies --set in `square`, or reports the square alone.
fn latin_subset(
    g: &Global,
    square: LatinSquare,
    check_kaleido: bool,
    fallback: Certificate,
) -> Result<Outcome, CliError> {
    let Some(set) = latin_set(g, square.order())? else {
        if check_kaleido {
            return Err(usage("--check-kaleido needs --set"));
        }
        return Ok(Outcome::new(Verdict::Success, Some(fallback)));
    };
    set.validate_nonempty(square.order())?;
    let flags = quasi_classify_subset(&square, &set)?;
    if check_kaleido {
        let r = quasi_kaleidoscopic_search(&square, &set, g.budget)?;
        let verdict = match &r.outcome {
            Search::Found(_) => Verdict::Success,
            Search::Absent => Verdict::Absent,
            Search::Unknown => Verdict::Unknown,
        };
        let mut o = Outcome::new(
            verdict,
            Some(Certificate::QuasiSubset {
                square,
                set,
                flags,
                coloring: r.outcome.found(),
            }),
        );
        o.nodes = Some(r.nodes);
        return Ok(o);
    }
    let verdict = if flags.complemented.is_some() {
        Verdict::Success
    } else {
        Verdict::Absent
    };
    Ok(Outcome::new(
        verdict,
        Some(Certificate::QuasiSubset {
            square,
            set,
            flags,
            coloring: None,
        }),
    ))
}

fn latin(g: &Global, op: &LatinOp) -> Result<Outcome, CliError> {
    match op {
        LatinOp::Complete { file, seed } => {
            let rect = parse_partial_rectangle(&read(file)?)?;
            let o = match complete(&rect, *seed) {
                Some(square) => Outcome::new(
                    Verdict::Success,
                    Some(Certificate::Completion {
                        rectangle: rect,
                        square,
                    }),
                ),
                None => Outcome::new(Verdict::Absent, None),
            };
            Ok(o.param("file", file.display().to_string())
                .param("seed", json!(seed)))
        }
        LatinOp::Check {
            file,
            check_kaleido,
        } => {
            let square = parse_latin_square(&read(file)?)?;
            let fallback = Certificate::LatinSquare {
                square: square.clone(),
            };
            Ok(latin_subset(g, square, *check_kaleido, fallback)?
                .param("file", file.display().to_string())
                .param("check_kaleido", *check_kaleido))
        }
        LatinOp::Example9 {
            check_kaleido,
            seed,
        } => {
            let rect = order9_rectangle();
            let square = complete(&rect, *seed).expect("the order-9 rectangle completes");
            let fallback = Certificate::Completion {
                rectangle: rect,
                square: square.clone(),
            };
            Ok(latin_subset(g, square, *check_kaleido, fallback)?
                .param("check_kaleido", *check_kaleido)
                .param("seed", json!(seed)))
        }
    }
}

fn verify_command(path: &Path) -> Result<Outcome, CliError> {
    let ok = verify(path)?;
    let verdict = if ok { Verdict::Holds } else { Verdict::Fails };
    Ok(Outcome::new(verdict, None).param("report", path.display().to_string()))
}

/// Re-checks the certificate in a saved JSON report. Never re-runs a search.
pub fn verify(report_file: &Path) -> Result<bool, CliError> {
    let report: Report = serde_json::from_str(&read(report_file)?).map_err(|e| CliError::Json {
        path: report_file.to_owned(),
        reason: e.to_string(),
    })?;
    verify_report(&report)
}

pub fn verify_report(report: &Report) -> Result<bool, CliError> {
    match &report.certificate {
        Some(c) => c.verify(),
        None => Err(CliError::NoCertificate(
            serde_json::to_value(report.verdict)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
        )),
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Kaleido { op } => format!(
            "kaleido {}",
            match op {
                KaleidoOp::Find => "find",
                KaleidoOp::Check { .. } => "check",
            }
        ),
        Command::Factorize { op } => format!(
            "factorize {}",
            match op {
                FactorizeOp::Check { .. } => "check",
                FactorizeOp::Complement => "complement",
                FactorizeOp::Periodic => "periodic",
                FactorizeOp::Doubly => "doubly",
            }
        ),
        Command::Hajos { op } => format!(
            "hajos {}",
            match op {
                HajosOp::Brute(_) => "brute",
                HajosOp::Semi(_) => "semi",
                HajosOp::Demi(_) => "demi",
                HajosOp::Classify { .. } => "classify",
            }
        ),
        Command::Split { op } => format!(
            "split {}",
            match op {
                SplitOp::Check => "check",
                SplitOp::Generate { .. } => "generate",
            }
        ),
        Command::Ultra { op } => format!(
            "ultra {}",
            match op {
                UltraOp::Verify { .. } => "verify",
                UltraOp::Chain { .. } => "chain",
            }
        ),
        Command::Rigid { .. } => "rigid check".into(),
        Command::Latin { op } => format!(
            "latin {}",
            match op {
                LatinOp::Complete { .. } => "complete",
                LatinOp::Check { .. } => "check",
                LatinOp::Example9 { .. } => "example9",
            }
        ),
        Command::Verify { .. } => "verify".into(),
    }
}

fn error_report(command: String, err: impl ToString, start: Instant) -> Report {
    Report {
        query: Query {
            command,
            params: Default::default(),
        },
        verdict: Verdict::Error,
        certificate: None,
        stats: Stats {
            elapsed_us: start.elapsed().as_micros() as u64,
            ..Default::default()
        },
        diagnostic: Some(err.to_string()),
    }
}

/// Parses `argv` (program name first) and runs one request.
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_format(argv).0
}

/// Like [`run`], also returning the requested output format. Help and
/// version requests come back as an error report with exit code 0.
pub fn run_with_format<I, T>(argv: I) -> ((i32, Report), Format)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let mut r = error_report(String::new(), e.render().to_string(), start);
            if code == 0 {
                r.verdict = Verdict::Success;
            }
            return ((code, r), Format::Text);
        }
    };
    let g = &cli.global;
    let name = command_name(&cli.command);
    let result = match &cli.command {
        Command::Kaleido { op } => kaleido(g, op),
        Command::Factorize { op } => factorize(g, op),
        Command::Hajos { op } => hajos(g, op),
        Command::Split { op } => split(g, op),
        Command::Ultra { op } => ultra(g, op),
        Command::Rigid { op } => rigid(op),
        Command::Latin { op } => latin(g, op),
        Command::Verify { report } => verify_command(report),
    };
    let report = match result {
        Ok(o) => {
            let mut params: std::collections::BTreeMap<String, Value> = Default::default();
            if let Some(spec) = &g.group {
                params.insert("group".into(), json!(spec.to_string()));
            }
            if let Some(path) = &g.space {
                params.insert("space".into(), json!(path.display().to_string()));
            }
            if let Some(set) = &g.set {
                params.insert("set".into(), json!(set.0));
            }
            if let Some(b) = g.budget {
                params.insert("budget".into(), json!(b));
            }
            for (k, v) in o.params {
                params.insert(k.into(), v);
            }
            Report {
                query: Query {
                    command: name,
                    params,
                },
                verdict: o.verdict,
                certificate: o.certificate,
                stats: Stats {
                    nodes: o.nodes,
                    elapsed_us: start.elapsed().as_micros() as u64,
                    counts: o
                        .counts
                        .into_iter()
                        .map(|(k, v)| (k.to_owned(), v))
                        .collect(),
                },
                diagnostic: None,
            }
        }
        Err(e) => error_report(name, e, start),
    };
    ((report.exit_code(), report), g.format)
}
