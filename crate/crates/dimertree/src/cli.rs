//! The `dimertree` command line. [`run`] returns the exit status: 0 when every requested check
//! passes, 1 when a check fails, 2 for unusable input, 3 when an internal invariant breaks.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checkerboard::{build_from_seed, render, validate_checkerboard, CheckerboardPolygon, Format};
use crate::diag::{ar_quiver, enumerate_diagonals, TwoDiagonal};
use crate::io::{doc_dot, load_quiver, quiver_dot, weights_text};
use crate::mutation::{reduce_to_cycle, MutationError, ReductionTrace};
use crate::oracle::{run_oracle, Check, FieldSpec, OracleError};
use crate::quiver::{validate_dimer_tree, Quiver};
use crate::syzygy::{all_resolutions, radical_consistency_check, resolution};
use crate::weights::{path_string, weight_report};

pub const FIELD_ENV: &str = "DIMERTREE_FIELD";

#[derive(Parser, Debug)]
#[command(name = "dimertree", version, about = "Dimer tree quivers, their polygons and their reductions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolygonOutput {
    Text,
    #[value(alias = "json")]
    Structured,
    Svg,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagOutput {
    Text,
    #[value(alias = "json")]
    Structured,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the dimer tree axioms.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Cycle paths, weights and the total weight.
    Weights {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Build, validate and render the checkerboard polygon.
    Polygon {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PolygonOutput::Text)]
        format: PolygonOutput,
        /// Boundary arrow id to start the construction from; the output does not depend on it.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// 2-diagonals of a 2N-gon and their translation quiver.
    Diag {
        /// Polygon size 2N.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        size: Option<u32>,
        /// Take the size from this quiver's polygon.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DiagOutput::Text)]
        format: DiagOutput,
    },
    /// Presentations along the resolution of a 2-diagonal.
    Resolve {
        file: PathBuf,
        /// Tail and head, like `3,10`.
        #[arg(long, value_parser = parse_pair)]
        diagonal: (u32, u32),
        /// Defaults to 2N.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Reduce to a single cycle by derived and singular equivalences.
    Reduce {
        file: PathBuf,
        /// Write the full trace as JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write one DOT file per intermediate quiver into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Brute-force checks on the Jacobian algebra.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        check: String,
        /// A prime or `Q`; defaults to $DIMERTREE_FIELD, then 32003.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        format: Output,
    },
    /// Every stage on one quiver, with the model/oracle consistency checks.
    All {
        file: PathBuf,
        #[arg(long)]
        field: Option<String>,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected two labels like 3,10")?;
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

/// A failed command: exit status and message.
struct Fail(i32, String);

type Res = Result<i32, Fail>;

fn input(e: impl std::fmt::Display) -> Fail {
    Fail(2, e.to_string())
}

fn load(p: &Path) -> Result<Quiver, Fail> {
    load_quiver(p).map_err(input)
}

fn dimer(p: &Path) -> Result<Quiver, Fail> {
    let q = load(p)?;
    let r = validate_dimer_tree(&q);
    if !r.pass {
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(Fail(1, format!("{} is not a dimer tree quiver: {}", q.name, failed.join(", "))));
    }
    Ok(q)
}

fn polygon(q: &Quiver, seed: Option<&str>) -> Result<CheckerboardPolygon, Fail> {
    build_from_seed(q, seed).map_err(|e| Fail(3, e.to_string()))
}

fn field_spec(flag: Option<&str>) -> Result<FieldSpec, Fail> {
    let env = std::env::var(FIELD_ENV).ok();
    match flag.or(env.as_deref()) {
        Some(s) => s.parse::<FieldSpec>().map_err(|e| input(format!("field {s:?}: {e}"))),
        None => Ok(FieldSpec::default()),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn status(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Res {
    let io = |e: std::io::Error| Fail(2, e.to_string());
    match cmd {
        Command::Validate { file, format } => {
            let q = load(&file)?;
            let r = validate_dimer_tree(&q);
            match format {
                Output::Structured => out.write_all(pretty(&r).as_bytes()).map_err(io)?,
                Output::Text => {
                    writeln!(out, "{}: {}", q.name, mark(r.pass)).map_err(io)?;
                    for c in &r.checks {
                        let detail = if c.detail.is_empty() { String::new() } else { format!("  {}", c.detail) };
                        writeln!(out, "  {} {}{detail}", mark(c.pass), c.name).map_err(io)?;
                    }
                }
            }
            Ok(status(r.pass))
        }
        Command::Weights { file, format } => {
            let q = dimer(&file)?;
            let wr = weight_report(&q).map_err(|e| Fail(3, e.to_string()))?;
            let text = match format {
                Output::Text => weights_text(&q, &wr),
                Output::Structured => {
                    let rows: Vec<_> = wr
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "arrow": q.arrows[r.arrow].id,
                                "cycle_path": path_string(&q, &r.cycle_path.arrows),
                                "weight": r.weight,
                                "cocycle_path": path_string(&q, &r.cocycle_path.arrows),
                                "coweight": r.coweight,
                            })
                        })
                        .collect();
                    pretty(&json!({"quiver": q.name, "rows": rows, "total": wr.total}))
                }
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(0)
        }
        Command::Polygon { file, format, seed, output } => {
            let q = dimer(&file)?;
            let cp = polygon(&q, seed.as_deref())?;
            let report = validate_checkerboard(&cp, &q);
            let fmt = match format {
                PolygonOutput::Text => Format::Text,
                PolygonOutput::Structured => Format::Structured,
                PolygonOutput::Svg => Format::Svg,
                PolygonOutput::Dot => Format::Dot,
            };
            let text = render(&cp, fmt);
            match output {
                Some(p) => std::fs::write(&p, text).map_err(io)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            for c in report.failures() {
                writeln!(err, "FAIL {} {}", c.name, c.detail).map_err(io)?;
            }
            Ok(status(report.pass))
        }
        Command::Diag { size, file, format } => {
            let n = match (size, file) {
                (Some(s), _) if s % 2 == 0 && s >= 6 => s / 2,
                (Some(s), _) => return Err(input(format!("--size {s}: needs an even size of at least 6"))),
                (None, Some(f)) => polygon(&dimer(&f)?, None)?.n,
                (None, None) => return Err(input("give --size or a quiver file")),
            };
            let diagonals = enumerate_diagonals(n).map_err(input)?;
            let tq = ar_quiver(n).map_err(input)?;
            let orbits = tq.tau_orbits();
            let ok = diagonals.len() == (n * (n - 2)) as usize && tq.translation_axiom_holds();
            let text = match format {
                DiagOutput::Dot => tq.to_dot(),
                DiagOutput::Structured => pretty(&json!({
                    "size": 2 * n,
                    "diagonals": diagonals,
                    "arrows": tq.arrows,
                    "tau_orbits": orbits,
                    "translation_axiom": tq.translation_axiom_holds(),
                })),
                DiagOutput::Text => {
                    let list: Vec<String> = diagonals.iter().map(|d| d.to_string()).collect();
                    let sizes: Vec<String> = orbits.iter().map(|o| o.len().to_string()).collect();
                    format!(
                        "{}-gon: {} 2-diagonals, {} pivot arrows, tau-orbit sizes {}\n{}\n",
                        2 * n,
                        diagonals.len(),
                        tq.arrows.len(),
                        sizes.join(" "),
                        list.join(" ")
                    )
                }
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(status(ok))
        }
        Command::Resolve { file, diagonal, steps, format } => {
            let q = dimer(&file)?;
            let cp = polygon(&q, None)?;
            let g = TwoDiagonal::new(diagonal.0, diagonal.1, cp.n).map_err(input)?;
            let t = resolution(&cp, g, steps.unwrap_or(2 * cp.n as usize)).map_err(input)?;
            let text = match format {
                Output::Structured => pretty(&t),
                Output::Text => {
                    let ids = |v: &[crate::quiver::VertexId]| {
                        let s: Vec<String> = v.iter().map(|x| format!("P({x})")).collect();
                        if s.is_empty() {
                            "0".to_string()
                        } else {
                            s.join("+")
                        }
                    };
                    let mut s = String::new();
                    for (i, o) in t.steps.iter().enumerate() {
                        s.push_str(&format!("R^{i} {}: {} -> {}\n", o.diagonal, ids(&o.p1), ids(&o.p0)));
                    }
                    let glued = t.gluing.iter().all(|&b| b);
                    s.push_str(&format!("minimal period {}, gluing {}\n", t.minimal_period, mark(glued)));
                    s
                }
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(status(t.pass))
        }
        Command::Reduce { file, trace, dot_dir, format } => {
            let q = dimer(&file)?;
            let (t, failure) = match reduce_to_cycle(&q) {
                Ok(t) => (t, None),
                Err(MutationError::Aborted { error, trace }) => (*trace, Some(error.to_string())),
                Err(e @ MutationError::NotDimerTree(_)) => return Err(Fail(1, e.to_string())),
                Err(e) => return Err(Fail(3, e.to_string())),
            };
            if let Some(p) = &trace {
                std::fs::write(p, pretty(&t)).map_err(io)?;
            }
            if let Some(dir) = &dot_dir {
                write_dots(dir, &t).map_err(io)?;
            }
            let text = match format {
                Output::Structured => pretty(&t),
                Output::Text => reduce_text(&t),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            match failure {
                Some(msg) => Err(Fail(3, msg)),
                None => Ok(0),
            }
        }
        Command::Oracle { file, check, field, format } => {
            let q = dimer(&file)?;
            let check: Check = check.parse().map_err(input)?;
            let field = field_spec(field.as_deref())?;
            let r = run_oracle(&q, field, check).map_err(|e| match e {
                OracleError::Input(_) | OracleError::UnknownCheck(_) => input(e),
                e => Fail(1, e.to_string()),
            })?;
            let text = match format {
                Output::Structured => pretty(&r),
                Output::Text => oracle_text(&r),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(status(r.pass))
        }
        Command::All { file, field } => {
            let field = field_spec(field.as_deref())?;
            let q = load(&file)?;
            let mut lines: Vec<(bool, String)> = Vec::new();
            let v = validate_dimer_tree(&q);
            lines.push((v.pass, "dimer tree axioms".into()));
            if v.pass {
                lines.extend(pipeline(&q, field)?);
            }
            for (pass, what) in &lines {
                writeln!(out, "{} {what}", mark(*pass)).map_err(io)?;
            }
            Ok(status(lines.iter().all(|l| l.0)))
        }
    }
}

fn pipeline(q: &Quiver, field: FieldSpec) -> Result<Vec<(bool, String)>, Fail> {
    let mut lines = Vec::new();
    let wr = weight_report(q).map_err(|e| Fail(3, e.to_string()))?;
    lines.push((true, format!("total weight {}", wr.total)));
    let cp = polygon(q, None)?;
    let report = validate_checkerboard(&cp, q);
    lines.push((report.pass, format!("checkerboard {}-gon, {} checks", cp.size(), report.checks.len())));
    lines.push((cp.boundary_edge_count() as usize == wr.total, "boundary edges equal total weight".into()));
    let res = all_resolutions(&cp);
    lines.push((
        res.pass,
        format!("resolutions: {} diagonals, {} of period N, {} of period 2N", res.diagonals, res.period_n, res.period_2n),
    ));
    match run_oracle(q, field, Check::All) {
        Ok(or) => {
            lines.push((or.pass, format!("oracle over {}: dim {}", or.field, or.dim)));
            let c = radical_consistency_check(q, &cp, &or);
            lines.push((c.pass, format!("model/oracle consistency, {} distinct radicals", c.distinct_radicals)));
        }
        Err(e) => lines.push((false, format!("oracle: {e}"))),
    }
    match reduce_to_cycle(q) {
        Ok(t) => lines.push((t.pass, format!("reduction: {} moves to a {}-cycle", t.moves.len(), t.final_cycle_length))),
        Err(e) => lines.push((false, format!("reduction: {e}"))),
    }
    Ok(lines)
}

fn reduce_text(t: &ReductionTrace) -> String {
    let mut s = format!("{}: total weight {}, {} moves\n", t.quiver, t.total_weight, t.moves.len());
    for (i, m) in t.moves.iter().enumerate() {
        let site: Vec<String> = m.site.iter().map(|v| v.to_string()).collect();
        let dual = if m.dual { " (opposite)" } else { "" };
        s.push_str(&format!(
            "{:>3} {} at {}{dual}: {}, weight {} -> {}\n",
            i + 1,
            m.kind,
            site.join(","),
            match m.equivalence {
                crate::mutation::Equivalence::Derived => "derived",
                crate::mutation::Equivalence::Singular => "singular",
            },
            m.total_weight_before,
            m.total_weight_after
        ));
    }
    let cycle: Vec<String> = t.final_qp.potential.iter().map(|(_, w)| w.clone()).collect();
    s.push_str(&format!("final: {}-cycle {}\n", t.final_cycle_length, cycle.join(" ")));
    s
}

fn oracle_text(r: &crate::oracle::OracleReport) -> String {
    let mut s = format!("{} over {}: dim {}, paths vanish from length {}\n", r.quiver, r.field, r.dim, r.stabilization);
    if let Some(x) = &r.schurian {
        s.push_str(&format!("{} schurian\n", mark(x.pass)));
    }
    if !r.lemma.is_empty() {
        let ok = r.lemma.iter().filter(|l| l.holds).count();
        s.push_str(&format!("{} extension lemma {ok}/{}\n", mark(ok == r.lemma.len()), r.lemma.len()));
    }
    if !r.radicals.is_empty() {
        let ok = r.radicals.iter().filter(|l| l.pass).count();
        s.push_str(&format!("{} radical presentations {ok}/{}\n", mark(ok == r.radicals.len()), r.radicals.len()));
        let ok = r.ext_arrows.iter().filter(|l| l.pass).count();
        s.push_str(&format!("{} Ext1 between radicals iff arrow {ok}/{}\n", mark(ok == r.ext_arrows.len()), r.ext_arrows.len()));
    }
    if let Some(v) = &r.vanishing {
        s.push_str(&format!(
            "{} vanishing: {}/{} arrows, {} boundary\n",
            mark(v.pass),
            v.arrows_pass,
            v.rows.len(),
            v.boundary_pass
        ));
    }
    for f in r.failures() {
        s.push_str(&format!("  failed: {f}\n"));
    }
    s
}

fn write_dots(dir: &Path, t: &ReductionTrace) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let q0 = crate::mutation::Qp::from_doc(&t.quiver, &t.initial).map(|qp| quiver_dot(&qp.quiver));
    std::fs::write(dir.join("step-000.dot"), q0.unwrap_or_else(|_| doc_dot(&t.quiver, &t.initial)))?;
    for (i, m) in t.moves.iter().enumerate() {
        std::fs::write(dir.join(format!("step-{:03}.dot", i + 1)), doc_dot(&format!("{} {}", m.kind, i + 1), &m.quiver_after))?;
    }
    Ok(())
}
