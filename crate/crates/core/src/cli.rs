//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification finds a counterexample,
//! 2 on argument errors, 3 when a resource bound refuses the request. Data
//! goes to `out`, diagnostics to `err`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bmcycles::{self, RepLabel, VirtualRep};
use crate::error::Error;
use crate::limits;
use crate::moduli;
use crate::partitions::{partitions_of, Partition};
use crate::quasibanal::{self, DistinguishedPoint, LocalBmReport, QuasiBanalParams, TypeSequence};
use crate::symrep::{self, json_int, PartitionMatrix};
use crate::types::InertialType;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Sweep grid points evaluated per parallel batch before their lines are written.
const SWEEP_BATCH: usize = 512;

#[derive(Debug, Parser)]
#[command(
    name = "bmkit",
    version,
    about = "Exact Kostka, cycle-map and bipartition computations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest degree any enumeration may reach (overrides BMKIT_MAX_DEGREE).
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kostka number m(shape, content); with --sweep, compare against the character oracle.
    Kostka(KostkaArgs),
    /// Kostka matrix of degree n.
    KostkaMatrix(DegreeArgs),
    /// Inverse Kostka matrix of degree n.
    InverseKostka(DegreeArgs),
    /// Character value χ^shape(content), or the full table with --n.
    Char(CharArgs),
    /// Multiplicity of σ°_shape in the induction of ⊗ σ°_factor.
    Lr(LrArgs),
    /// Multiplicity matrix m(σ(τ), τ') on one supercuspidal-support block.
    MultMatrix(TypeArgs),
    /// cyc(σ(τ)).
    Cyc(TypeArgs),
    /// r(τ), the inverse-Kostka combination of K-types with cyc(r(τ)) = Z(τ).
    RTau(RTauArgs),
    /// (P,Q)-bipartitions, or Bip(weights, Q) with --type.
    Bip(BipArgs),
    /// Mackey decomposition of Res_{S_P} Ind_{S_Q} sgn.
    Mackey(MackeyArgs),
    /// Cycle of a type sequence at a distinguished point.
    CycleDistinguished(PointArgs),
    /// red(σ_τ) in the residual unipotent basis.
    Red(RedArgs),
    /// Both sides of the local Breuil-Mézard identity.
    VerifyLocalBm(VerifyArgs),
    /// Principal-series reduction and distinguished-point cycle identities.
    Ihara(IharaArgs),
    /// Irreducible components of M(n, q).
    Components(ComponentsArgs),
    /// Frobenius orbits of x ↦ q·x on ℤ/m.
    Orbits(OrbitsArgs),
}

#[derive(Debug, Args)]
pub struct KostkaArgs {
    #[arg(long, required_unless_present = "sweep")]
    pub shape: Option<Partition>,
    #[arg(long, required_unless_present = "sweep")]
    pub content: Option<Partition>,
    /// Check every pair of equal degree up to --n against the character oracle.
    #[arg(long, requires = "n")]
    pub sweep: bool,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long, requires = "content")]
    pub shape: Option<Partition>,
    /// Cycle type.
    #[arg(long)]
    pub content: Option<Partition>,
    /// Print the whole character table of S_n.
    #[arg(long, conflicts_with_all = ["shape", "content"], required_unless_present = "shape")]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LrArgs {
    #[arg(long)]
    pub shape: Partition,
    /// Factors, `1;1;1` or indexed `1:1;2:1`.
    #[arg(long = "type")]
    pub factors: String,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Inertial type: `2,1` (unipotent) or `label[@dim][~dual]:parts;...`.
    #[arg(long = "type", required_unless_present = "n")]
    pub tau: Option<InertialType>,
    /// Degree; checked against --type, or alone selects the unipotent block.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RTauArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    /// Name unipotent K-types σ(τ_k) by monodromy rank k.
    #[arg(long)]
    pub rank_names: bool,
}

#[derive(Debug, Args)]
pub struct BipArgs {
    #[arg(long, required_unless_present = "weights")]
    pub shape: Option<Partition>,
    #[arg(long = "Q")]
    pub q: Partition,
    /// Weight sequence, `2,1;1` or `1:2,1;2:1`.
    #[arg(long = "type")]
    pub weights: Option<String>,
}

#[derive(Debug, Args)]
pub struct MackeyArgs {
    #[arg(long)]
    pub shape: Partition,
    #[arg(long = "Q")]
    pub q: Partition,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Residue characteristic ℓ (default: smallest odd prime > n).
    #[arg(long)]
    pub l: Option<u64>,
    /// Residue field size q (default: smallest prime ≡ 1 mod ℓ).
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long = "type")]
    pub tau: TypeSequence,
    #[arg(long = "Q")]
    pub point: Partition,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct RedArgs {
    #[arg(long = "type")]
    pub tau: TypeSequence,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(
        long = "type",
        required_unless_present = "sweep",
        conflicts_with = "sweep"
    )]
    pub tau: Option<TypeSequence>,
    #[arg(
        long = "Q",
        required_unless_present = "sweep",
        conflicts_with = "sweep"
    )]
    pub point: Option<Partition>,
    /// Every type sequence on at most n character indices, against every Q ⊢ n.
    #[arg(long, requires = "n")]
    pub sweep: bool,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct IharaArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct ComponentsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    /// Work in residue characteristic ℓ.
    #[arg(long)]
    pub l: Option<u64>,
    /// Also run the brute-force count and fail on disagreement.
    #[arg(long)]
    pub oracle: bool,
    /// Allow n above the default moduli bound.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub q: u64,
    /// Modulus m; defaults to q^(n!) − 1 with --n (orbits of size ≤ n only).
    #[arg(long, required_unless_present = "n")]
    pub modulus: Option<String>,
    #[arg(long, conflicts_with = "modulus")]
    pub n: Option<usize>,
}

/// Data produced by one subcommand, renderable in every output format.
struct Report {
    json: Value,
    text: String,
    csv: Vec<Vec<String>>,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>, csv: Vec<Vec<String>>) -> Self {
        Report {
            json,
            text: text.into(),
            csv,
            ok: true,
        }
    }

    fn failing_if(mut self, bad: bool) -> Self {
        self.ok = !bad;
        self
    }
}

enum Outcome {
    Report(Report),
    /// Already streamed; `true` when every case passed.
    Streamed(bool),
}

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = configure(&cli).and_then(|pool| execute(&cli, &pool, out));
    match result {
        Ok(Outcome::Report(report)) => {
            if let Err(e) = write_report(&report, cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if report.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_COUNTEREXAMPLE
            }
        }
        Ok(Outcome::Streamed(true)) => EXIT_OK,
        Ok(Outcome::Streamed(false)) => {
            let _ = writeln!(err, "verification failed: counterexample found");
            EXIT_COUNTEREXAMPLE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Argument(_) => EXIT_USAGE,
                Error::ResourceBound(_) => EXIT_RESOURCE,
            }
        }
    }
}

fn configure(cli: &Cli) -> Result<rayon::ThreadPool, Error> {
    let bound = match cli.max_degree {
        Some(n) => Some(n),
        None => limits::max_degree_from_env()?,
    };
    limits::set_max_degree(bound.unwrap_or(limits::DEFAULT_MAX_DEGREE))?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::Argument("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    builder
        .build()
        .map_err(|e| Error::Argument(format!("cannot start worker pool: {e}")))
}

fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report.json)?),
        Format::Text => writeln!(out, "{}", report.text.trim_end()),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            for row in &report.csv {
                w.write_record(row)?;
            }
            out.write_all(&w.into_inner().map_err(|e| e.into_error())?)
        }
    }
}

fn execute(cli: &Cli, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Result<Outcome, Error> {
    use Command::*;
    let report = match &cli.command {
        Kostka(a) if a.sweep => {
            return kostka_sweep(a.n.expect("clap requires --n"), cli.format, pool, out);
        }
        Kostka(a) => {
            let (shape, content) = (
                a.shape.as_ref().expect("clap"),
                a.content.as_ref().expect("clap"),
            );
            let k = BigInt::from(symrep::kostka(shape, content));
            Report::new(
                json!({"shape": shape, "content": content, "kostka": json_int(&k)}),
                k.to_string(),
                vec![
                    vec!["shape".into(), "content".into(), "kostka".into()],
                    vec![shape.comma_list(), content.comma_list(), k.to_string()],
                ],
            )
        }
        KostkaMatrix(a) => matrix_report(&symrep::kostka_matrix(a.n)?),
        InverseKostka(a) => matrix_report(&symrep::inverse_kostka_matrix(a.n)?),
        Char(a) => match (&a.shape, &a.content, a.n) {
            (Some(shape), Some(mu), _) => {
                let v = symrep::character(shape, mu)?;
                Report::new(
                    json!({"shape": shape, "cycle_type": mu, "value": json_int(&v)}),
                    v.to_string(),
                    vec![
                        vec!["shape".into(), "cycle_type".into(), "value".into()],
                        vec![shape.comma_list(), mu.comma_list(), v.to_string()],
                    ],
                )
            }
            (_, _, Some(n)) => {
                let table = symrep::character_table(n)?;
                let entries = (0..table.partitions().len())
                    .map(|i| table.row(i).to_vec())
                    .collect();
                matrix_report(&PartitionMatrix {
                    order: table.partitions().to_vec(),
                    entries,
                })
            }
            _ => {
                return Err(Error::Argument(
                    "char needs --shape and --content, or --n".into(),
                ))
            }
        },
        Lr(a) => {
            let factors = parse_weights(&a.factors)?;
            let m = BigInt::from(symrep::lr_mult(&a.shape, &factors)?);
            Report::new(
                json!({"target": a.shape, "factors": factors, "multiplicity": json_int(&m)}),
                m.to_string(),
                vec![
                    vec!["target".into(), "factors".into(), "multiplicity".into()],
                    vec![a.shape.comma_list(), join_weights(&factors), m.to_string()],
                ],
            )
        }
        MultMatrix(a) => {
            let tau = type_or_unipotent(a)?;
            let m = bmcycles::mult_matrix(&tau.scs())?;
            let json = serde_json::to_value(&m).expect("serializable");
            let order: Vec<String> = m.order.iter().map(ToString::to_string).collect();
            let mut csv = vec![std::iter::once(String::new())
                .chain(order.iter().cloned())
                .collect()];
            let mut text = format!("order: {}\n", order.join(" "));
            for (label, row) in order.iter().zip(&m.entries) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                text += &format!("{}\n", cells.join(" "));
                csv.push(std::iter::once(label.clone()).chain(cells).collect());
            }
            Report::new(json, text, csv)
        }
        Cyc(a) => {
            let tau = type_or_unipotent(a)?;
            sum_report(&bmcycles::cyc(&VirtualRep::basis(RepLabel::KType(tau)))?)
        }
        RTau(a) => {
            let r = bmcycles::r_tau(&type_or_unipotent(&a.ty)?)?;
            let mut report = sum_report(&r);
            if a.rank_names {
                report.text = r.render_with(bmcycles::monodromy_rank_name);
            }
            report
        }
        Bip(a) => match &a.weights {
            Some(w) => {
                let weights = parse_weights(w)?;
                let c = BigInt::from(quasibanal::bip_count(&weights, &a.q)?);
                Report::new(
                    json!({"weights": weights, "Q": a.q, "count": json_int(&c)}),
                    c.to_string(),
                    vec![
                        vec!["weights".into(), "Q".into(), "count".into()],
                        vec![join_weights(&weights), a.q.comma_list(), c.to_string()],
                    ],
                )
            }
            None => {
                let p = a.shape.as_ref().expect("clap");
                let all = quasibanal::bipartitions(p, &a.q)?;
                let text = all
                    .iter()
                    .map(|m| {
                        m.iter()
                            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                            .collect::<Vec<_>>()
                            .join(" | ")
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                let csv = std::iter::once(vec!["index".into(), "row".into(), "entries".into()])
                    .chain(all.iter().enumerate().flat_map(|(i, m)| {
                        m.iter().enumerate().map(move |(r, row)| {
                            vec![
                                i.to_string(),
                                r.to_string(),
                                row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                            ]
                        })
                    }))
                    .collect();
                Report::new(
                    json!({"P": p, "Q": a.q, "matrices": all, "count": all.len()}),
                    format!("{text}\ncount: {}", all.len()),
                    csv,
                )
            }
        },
        Mackey(a) => {
            let decomposition = quasibanal::mackey_decomposition(&a.shape, &a.q)?;
            let (lhs, rhs) = quasibanal::mackey_dimensions(&a.shape, &a.q)?;
            let terms: Vec<Value> = decomposition
                .iter()
                .map(|(w, c)| json!({"weights": w, "count": json_int(&BigInt::from(c.clone()))}))
                .collect();
            let mut text: String = decomposition
                .iter()
                .map(|(w, c)| format!("{c} × {}\n", join_weights(w)))
                .collect();
            text += &format!("dimension: {lhs} = {rhs}");
            let csv = std::iter::once(vec!["weights".into(), "count".into()])
                .chain(
                    decomposition
                        .iter()
                        .map(|(w, c)| vec![join_weights(w), c.to_string()]),
                )
                .collect();
            Report::new(
                json!({
                    "P": a.shape, "Q": a.q, "terms": terms,
                    "dimension": json_int(&BigInt::from(lhs.clone())),
                    "index": json_int(&BigInt::from(rhs.clone())),
                    "ok": lhs == rhs,
                }),
                text,
                csv,
            )
            .failing_if(lhs != rhs)
        }
        CycleDistinguished(a) => {
            let params = resolve_params(&a.params, a.tau.degree())?;
            let point = DistinguishedPoint::new(a.point.clone());
            sum_report(&quasibanal::cycle_at_distinguished(
                &a.tau, &point, &params,
            )?)
        }
        Red(a) => sum_report(&quasibanal::red_rep(&a.tau)?),
        VerifyLocalBm(a) if a.sweep => {
            let n = a.n.expect("clap requires --n");
            let params = resolve_params(&a.params, n)?;
            return local_bm_sweep(&params, cli.format, pool, out);
        }
        VerifyLocalBm(a) => {
            let tau = a.tau.as_ref().expect("clap");
            let n = a.n.unwrap_or(tau.degree());
            let params = resolve_params(&a.params, n)?;
            let r = quasibanal::verify_local_bm(
                tau,
                &DistinguishedPoint::new(a.point.clone().expect("clap")),
                &params,
            )?;
            Report::new(
                serde_json::to_value(&r).expect("serializable"),
                format!("lhs = {}, rhs = {}, ok = {}", r.lhs, r.rhs, r.ok),
                vec![local_bm_csv_header(), local_bm_csv_row(&r)],
            )
            .failing_if(!r.ok)
        }
        Ihara(a) => {
            let params = resolve_params(&a.params, a.n)?;
            let r = quasibanal::ihara_report(&params)?;
            let mut text = String::from("red(σ(τ_ps)):\n");
            let mut csv = vec![vec![
                "kind".into(),
                "partition".into(),
                "lhs".into(),
                "rhs".into(),
                "ok".into(),
            ]];
            for c in &r.coefficients {
                text += &format!(
                    "  {} coefficient {} kostka {} hook-length {} {}\n",
                    c.partition,
                    c.coefficient,
                    c.kostka,
                    c.hook_length,
                    ok_str(c.ok)
                );
                csv.push(vec![
                    "red".into(),
                    c.partition.comma_list(),
                    c.coefficient.to_string(),
                    c.kostka.to_string(),
                    c.ok.to_string(),
                ]);
            }
            text += "cycles at distinguished points:\n";
            for c in &r.cycle_checks {
                text += &format!(
                    "  Q = {}: {} = {} (multinomial {}) {}\n",
                    c.q,
                    c.lhs,
                    c.rhs,
                    c.multinomial,
                    ok_str(c.ok)
                );
                csv.push(vec![
                    "cycle".into(),
                    c.q.comma_list(),
                    c.lhs.to_string(),
                    c.rhs.to_string(),
                    c.ok.to_string(),
                ]);
            }
            let ok = r.ok;
            Report::new(serde_json::to_value(&r).expect("serializable"), text, csv).failing_if(!ok)
        }
        Components(a) => {
            let max = if a.allow_large {
                usize::MAX
            } else {
                moduli::DEFAULT_MAX_MODULI_DEGREE
            };
            let list = moduli::enumerate_components_bounded(a.n, a.q, a.l, max)?;
            let mut json = serde_json::to_value(&list).expect("serializable");
            let mut bad = false;
            if a.oracle {
                let count = moduli::count_components_oracle(a.n, a.q)?;
                bad = count != list.components.len() as u64;
                json["oracle_count"] = json!(count);
            }
            let mut text = format!("modulus {}\n", list.modulus);
            let mut csv = vec![vec![
                "component".into(),
                "min_rep".into(),
                "size".into(),
                "partition".into(),
            ]];
            for (i, c) in list.components.iter().enumerate() {
                let cells: Vec<String> = c
                    .assignment
                    .iter()
                    .map(|(o, p)| {
                        csv.push(vec![
                            i.to_string(),
                            o.min_rep.to_string(),
                            o.size.to_string(),
                            p.comma_list(),
                        ]);
                        format!("{} (size {}) ↦ {}", o.min_rep, o.size, p)
                    })
                    .collect();
                text += &format!("{}\n", cells.join(", "));
            }
            text += &format!("count: {}", list.components.len());
            if let Some(c) = json.get("oracle_count") {
                text += &format!("\noracle count: {c}");
            }
            Report::new(json, text, csv).failing_if(bad)
        }
        Orbits(a) => {
            let (modulus, orbits) = match (&a.modulus, a.n) {
                (Some(m), _) => {
                    let m: num_bigint::BigUint = m
                        .parse()
                        .map_err(|_| Error::Argument(format!("bad modulus {m:?}")))?;
                    let o = moduli::frobenius_orbits(a.q, &m)?;
                    (m, o)
                }
                (None, Some(n)) => {
                    if n > moduli::DEFAULT_MAX_MODULI_DEGREE {
                        return Err(Error::ResourceBound(format!(
                            "n = {n} exceeds the moduli bound"
                        )));
                    }
                    let m = moduli::root_modulus(n, a.q);
                    let o = moduli::small_orbits(a.q, &m, n.max(1))?;
                    (m, o)
                }
                _ => return Err(Error::Argument("orbits needs --modulus or --n".into())),
            };
            let json_orbits: Vec<Value> = orbits
                .iter()
                .map(|o| json!({"min_rep": o.min_rep.to_string(), "size": o.size}))
                .collect();
            let text = orbits
                .iter()
                .map(|o| format!("{} (size {})", o.min_rep, o.size))
                .collect::<Vec<_>>()
                .join("\n");
            let csv = std::iter::once(vec!["min_rep".into(), "size".into()])
                .chain(
                    orbits
                        .iter()
                        .map(|o| vec![o.min_rep.to_string(), o.size.to_string()]),
                )
                .collect();
            Report::new(
                json!({"q": a.q, "modulus": modulus.to_string(), "orbits": json_orbits, "count": orbits.len()}),
                format!("{text}\ncount: {}", orbits.len()),
                csv,
            )
        }
    };
    Ok(Outcome::Report(report))
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn matrix_report(m: &PartitionMatrix) -> Report {
    let json = serde_json::to_value(m).expect("serializable");
    let labels: Vec<String> = m.order.iter().map(ToString::to_string).collect();
    let mut text = format!("order: {}\n", labels.join(" "));
    let mut csv = vec![std::iter::once(String::new())
        .chain(labels.iter().cloned())
        .collect()];
    for (label, row) in labels.iter().zip(&m.entries) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        text += &format!("{}\n", cells.join(" "));
        csv.push(std::iter::once(label.clone()).chain(cells).collect());
    }
    Report::new(json, text, csv)
}

fn sum_report<L: Ord + Clone + std::fmt::Display>(s: &bmcycles::FormalSum<L>) -> Report {
    let csv = std::iter::once(vec!["label".into(), "coefficient".into()])
        .chain(s.terms().map(|(l, c)| vec![l.to_string(), c.to_string()]))
        .collect();
    Report::new(
        serde_json::to_value(s).expect("serializable"),
        s.to_string(),
        csv,
    )
}

fn type_or_unipotent(a: &TypeArgs) -> Result<InertialType, Error> {
    match (&a.tau, a.n) {
        (Some(t), Some(n)) if t.degree() != n => Err(Error::Argument(format!(
            "type {t} has degree {}, not {n}",
            t.degree()
        ))),
        (Some(t), _) => Ok(t.clone()),
        (None, Some(n)) => {
            limits::check_degree(n, "unipotent block")?;
            Ok(InertialType::unipotent(Partition::row(n as u32)))
        }
        (None, None) => Err(Error::Argument("need --type or --n".into())),
    }
}

/// `2,1;1` (positional) or `1:2,1;2:1` (indexed, order by index).
fn parse_weights(s: &str) -> Result<Vec<Partition>, Error> {
    if s.contains(':') {
        return Ok(s.parse::<TypeSequence>()?.weights());
    }
    s.split(';').map(str::parse).collect()
}

fn join_weights(w: &[Partition]) -> String {
    w.iter()
        .map(Partition::comma_list)
        .collect::<Vec<_>>()
        .join(";")
}

fn resolve_params(p: &ParamArgs, n: usize) -> Result<QuasiBanalParams, Error> {
    match (p.l, p.q) {
        (Some(l), Some(q)) => QuasiBanalParams::new(l, q, n),
        (None, None) => QuasiBanalParams::smallest_for(n),
        (Some(l), None) => {
            let q = (1..)
                .map(|k| k * l + 1)
                .find(|&q| quasibanal::is_prime(q))
                .expect("Dirichlet");
            QuasiBanalParams::new(l, q, n)
        }
        (None, Some(_)) => Err(Error::Argument("--q needs --l".into())),
    }
}

fn local_bm_csv_header() -> Vec<String> {
    ["n", "Q", "tau", "lhs", "rhs", "ok"]
        .map(String::from)
        .to_vec()
}

fn local_bm_csv_row(r: &LocalBmReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.q.comma_list(),
        r.tau.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.ok.to_string(),
    ]
}

/// Evaluates `grid` in parallel batches and writes one line per case, in
/// grid order.
fn stream<G: Sync, R: Send>(
    pool: &rayon::ThreadPool,
    grid: &[G],
    eval: impl Fn(&G) -> Result<R, Error> + Sync,
    mut emit: impl FnMut(&R, &mut dyn Write) -> std::io::Result<bool>,
    out: &mut dyn Write,
) -> Result<bool, Error> {
    let mut all_ok = true;
    for batch in grid.chunks(SWEEP_BATCH) {
        let results = pool.install(|| {
            batch
                .par_iter()
                .map(&eval)
                .collect::<Result<Vec<R>, Error>>()
        })?;
        for r in &results {
            all_ok &= emit(r, out).map_err(|e| Error::Argument(format!("write failed: {e}")))?;
        }
        out.flush()
            .map_err(|e| Error::Argument(format!("write failed: {e}")))?;
    }
    Ok(all_ok)
}

fn local_bm_sweep(
    params: &QuasiBanalParams,
    format: Format,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<Outcome, Error> {
    let taus = quasibanal::type_sequences(params.n, params.usable_indices() as usize)?;
    let qs = partitions_of(params.n)?;
    let grid: Vec<(TypeSequence, Partition)> = taus
        .iter()
        .flat_map(|t| qs.iter().map(move |q| (t.clone(), q.clone())))
        .collect();
    if format == Format::Csv {
        write_csv_line(out, &local_bm_csv_header())?;
    }
    let ok = stream(
        pool,
        &grid,
        |(t, q)| quasibanal::verify_local_bm(t, &DistinguishedPoint::new(q.clone()), params),
        |r: &LocalBmReport, out| {
            match format {
                Format::Csv => {
                    write_csv_line(out, &local_bm_csv_row(r)).map_err(std::io::Error::other)?
                }
                _ => writeln!(out, "{}", serde_json::to_string(r)?)?,
            }
            Ok(r.ok)
        },
        out,
    )?;
    Ok(Outcome::Streamed(ok))
}

#[derive(Serialize)]
struct KostkaCase {
    n: usize,
    shape: Partition,
    content: Partition,
    #[serde(serialize_with = "ser_big")]
    kostka: BigInt,
    #[serde(serialize_with = "ser_big")]
    oracle: BigInt,
    ok: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    json_int(x).serialize(s)
}

fn kostka_sweep(
    max_n: usize,
    format: Format,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<Outcome, Error> {
    let mut grid = Vec::new();
    for n in 0..=max_n {
        let ps = partitions_of(n)?;
        for p in &ps {
            for q in &ps {
                grid.push((n, p.clone(), q.clone()));
            }
        }
    }
    if format == Format::Csv {
        write_csv_line(
            out,
            &["n", "shape", "content", "kostka", "oracle", "ok"].map(String::from),
        )?;
    }
    let ok = stream(
        pool,
        &grid,
        |(n, p, q)| {
            let kostka = BigInt::from(symrep::kostka(p, q));
            let oracle = BigInt::from(symrep::kostka_oracle(p, q)?);
            Ok(KostkaCase {
                n: *n,
                shape: p.clone(),
                content: q.clone(),
                ok: kostka == oracle,
                kostka,
                oracle,
            })
        },
        |c: &KostkaCase, out| {
            match format {
                Format::Csv => write_csv_line(
                    out,
                    &[
                        c.n.to_string(),
                        c.shape.comma_list(),
                        c.content.comma_list(),
                        c.kostka.to_string(),
                        c.oracle.to_string(),
                        c.ok.to_string(),
                    ],
                )
                .map_err(std::io::Error::other)?,
                _ => writeln!(out, "{}", serde_json::to_string(c)?)?,
            }
            Ok(c.ok)
        },
        out,
    )?;
    Ok(Outcome::Streamed(ok))
}

fn write_csv_line(out: &mut dyn Write, row: &[String]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(row)
        .map_err(|e| Error::Argument(format!("csv: {e}")))?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Argument(format!("csv: {e}")))?;
    out.write_all(&bytes)
        .map_err(|e| Error::Argument(format!("write failed: {e}")))
}

/// Subcommand names paired with the library operations each one reaches.
pub const OPERATION_COVERAGE: &[(&str, &[&str])] = &[
    ("kostka", &["partitions_of", "kostka", "kostka_oracle"]),
    ("kostka-matrix", &["kostka_matrix"]),
    ("inverse-kostka", &["inverse_kostka_matrix"]),
    ("char", &["character", "character_table"]),
    ("lr", &["lr_mult"]),
    (
        "mult-matrix",
        &[
            "mult",
            "types_with_scs",
            "type_dominates",
            "scs",
            "type_degree",
        ],
    ),
    ("cyc", &["cyc"]),
    ("r-tau", &["r_tau"]),
    ("bip", &["bipartitions", "bip_count"]),
    ("mackey", &["mackey_decomposition", "multinomial"]),
    ("cycle-distinguished", &["cycle_at_distinguished"]),
    ("red", &["red_rep"]),
    ("verify-local-bm", &["verify_local_bm", "bar_cyc_at"]),
    ("ihara", &["ihara_report", "conjugate"]),
    (
        "components",
        &["enumerate_components", "count_components_oracle"],
    ),
    ("orbits", &["frobenius_orbits"]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn every_subcommand_is_covered() {
        let names: Vec<String> = Cli::command()
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        let covered: Vec<String> = OPERATION_COVERAGE
            .iter()
            .map(|(n, _)| n.to_string())
            .collect();
        assert_eq!(names, covered);
    }

    #[test]
    fn weights_parse_both_ways() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(parse_weights("2,1;1").unwrap(), vec![p("2,1"), p("1")]);
        assert_eq!(parse_weights("2:1;1:2,1").unwrap(), vec![p("2,1"), p("1")]);
    }
}
