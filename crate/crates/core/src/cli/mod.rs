//! Command-line front end.

mod report;

pub use report::{analyze, AnalysisReport, Check, Verdict};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dsf::{dsf, dsf_to_json, signal_structure_graph};
use crate::error::Result;
use crate::gds::{dependency_graph, parse_graph, parse_state};
use crate::polyrat::{fmt_q, QMatrix, RationalMatrix};
use crate::realization::{
    minimize_intricacy, output_normal_form, read_realization, realization_to_json, transfer_function,
    GeneralizedRealization,
};
use crate::sparsity::sparsity;
use crate::structure::{comp_structure, subsystem_structure, to_lft, ComponentKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ltistruct", version, about = "Exact structural analysis of linear time-invariant systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Report per-stage wall-clock times (check only).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eliminate auxiliary variables and print the resulting realization.
    Minimize { file: PathBuf },
    /// Print the transfer matrix.
    Tf { file: PathBuf },
    /// Print the subsystem partition, its routing matrices and block transfer matrices.
    Subsystems {
        file: PathBuf,
        /// Write C.dot and S.dot here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the dynamical structure function (Q, P).
    Dsf {
        file: PathBuf,
        /// Write W.dot here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the nonzero pattern of the transfer matrix.
    Sparsity {
        file: PathBuf,
        /// Write Z.dot here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare every route to the transfer matrix; exit status 1 if any check fails.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Simulate a sequential graph dynamical system and print the trajectory as CSV.
    Gds {
        /// Edge list, one `a b` pair per line.
        graph: PathBuf,
        /// Initial state such as 0000 (default: all zeros).
        #[arg(long)]
        x0: Option<String>,
        /// Comma-separated node sequence, e.g. 1,2,3,4.
        #[arg(long, value_delimiter = ',')]
        inputs: Vec<usize>,
        /// Repeat the input sequence as often as needed (default sequence: 1..n).
        #[arg(long)]
        cycle: bool,
        /// Number of steps (default: number of inputs).
        #[arg(long)]
        steps: Option<usize>,
        /// Print the dependency graph instead of the trajectory.
        #[arg(long)]
        deps: bool,
        /// Write deps.dot here (with --deps).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn q_rows(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

fn text_q(m: &QMatrix) -> String {
    q_rows(m).iter().map(|r| format!("[{}]\n", r.join(", "))).collect()
}

fn section(out: &mut String, name: &str, body: &str) {
    out.push_str(name);
    out.push_str(" =\n");
    out.push_str(body);
}

fn write_dot(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialize");
    s.push('\n');
    s
}

fn cmd_minimize(g: &GeneralizedRealization, format: Format) -> Result<String> {
    let r = minimize_intricacy(g)?;
    let flat = GeneralizedRealization::from(&r);
    if format == Format::Json {
        return Ok(realization_to_json(&flat));
    }
    let mut out = format!("n = {}, m = {}, p = {}\n", r.n(), r.m(), r.p());
    for (name, m) in [("A", r.a()), ("B", r.b()), ("C", r.c()), ("D", r.d())] {
        section(&mut out, name, &text_q(m));
    }
    Ok(out)
}

fn cmd_tf(g: &GeneralizedRealization, format: Format) -> Result<String> {
    let tf = transfer_function(&minimize_intricacy(g)?);
    Ok(match format {
        Format::Json => json_text(&json!({ "rows": tf.rows(), "cols": tf.cols(), "G": tf.to_string_rows() })),
        Format::Text => tf.to_string(),
    })
}

fn cmd_subsystems(g: &GeneralizedRealization, format: Format, dot: Option<&Path>) -> Result<String> {
    let c = comp_structure(g)?;
    let ss = subsystem_structure(&c).with_transfer_functions(&c, g)?;
    let lft = to_lft(&ss)?;
    if let Some(dir) = dot {
        write_dot(dir, "C.dot", &c.to_dot(Some(&ss)))?;
        write_dot(dir, "S.dot", &ss.to_dot())?;
    }
    let labels = g.labels();
    let names = |vars: &[crate::structure::Var]| vars.iter().map(|v| v.label(labels).to_string()).collect::<Vec<_>>();
    let kind = |k: ComponentKind| match k {
        ComponentKind::Input => "input",
        ComponentKind::Passthrough => "passthrough",
        ComponentKind::Block => "block",
    };

    if format == Format::Json {
        let comps: Vec<Value> = ss
            .components()
            .iter()
            .enumerate()
            .map(|(k, comp)| {
                json!({
                    "name": ss.component_name(k),
                    "kind": kind(comp.kind),
                    "vertices": comp.vertices.iter().map(|&v| c.vertex_label(c.vertex(v))).collect::<Vec<_>>(),
                    "inputs": names(&comp.inputs),
                    "outputs": names(&comp.outputs),
                })
            })
            .collect();
        let edges: Vec<Value> = ss
            .edges()
            .iter()
            .map(|&(a, b, var)| json!({ "from": ss.component_name(a), "to": ss.component_name(b), "variable": var.label(labels) }))
            .collect();
        return Ok(json_text(&json!({
            "components": comps,
            "edges": edges,
            "pi": names(&lft.pi),
            "v": names(&lft.v),
            "L": q_rows(&lft.l),
            "K": q_rows(&lft.k),
            "Ly": q_rows(&lft.ly),
            "Ky": q_rows(&lft.ky),
            "S": lft.s_blocks.iter().map(RationalMatrix::to_string_rows).collect::<Vec<_>>(),
        })));
    }

    let mut out = String::from("components:\n");
    for (k, comp) in ss.components().iter().enumerate() {
        let members: Vec<String> = comp.vertices.iter().map(|&v| c.vertex_label(c.vertex(v))).collect();
        out.push_str(&format!("  {} {} {{{}}}", ss.component_name(k), kind(comp.kind), members.join(", ")));
        if comp.kind == ComponentKind::Block {
            out.push_str(&format!(
                " in ({}) out ({})",
                names(&comp.inputs).join(", "),
                names(&comp.outputs).join(", ")
            ));
        }
        out.push('\n');
    }
    out.push_str("edges:\n");
    for &(a, b, var) in ss.edges() {
        out.push_str(&format!("  {} -> {} [{}]\n", ss.component_name(a), ss.component_name(b), var.label(labels)));
    }
    out.push_str(&format!("pi = ({})\nv = ({})\n", names(&lft.pi).join(", "), names(&lft.v).join(", ")));
    for (name, m) in [("L", &lft.l), ("K", &lft.k), ("Ly", &lft.ly), ("Ky", &lft.ky)] {
        section(&mut out, name, &text_q(m));
    }
    for (k, s) in ss.blocks().into_iter().zip(&lft.s_blocks) {
        section(&mut out, &ss.component_name(k), &s.to_string());
    }
    Ok(out)
}

fn cmd_dsf(g: &GeneralizedRealization, format: Format, dot: Option<&Path>) -> Result<String> {
    let d = dsf(&output_normal_form(&minimize_intricacy(g)?)?)?;
    if let Some(dir) = dot {
        let w = signal_structure_graph(&d).with_names(&g.labels().u, &g.labels().y);
        write_dot(dir, "W.dot", &w.to_dot())?;
    }
    if format == Format::Json {
        return Ok(dsf_to_json(&d));
    }
    let order: Vec<String> = d.output_perm.iter().map(|&k| g.labels().y[k].clone()).collect();
    let mut out = format!("p1 = {}\noutput order = ({})\n", d.p1(), order.join(", "));
    section(&mut out, "Q", &d.q.to_string());
    section(&mut out, "P", &d.p.to_string());
    if d.p1() < d.outputs() {
        section(&mut out, "C2", &text_q(&d.c2));
        section(&mut out, "D2", &text_q(&d.d2));
    }
    if !d.d1.is_zero() {
        section(&mut out, "D1", &text_q(&d.d1));
    }
    Ok(out)
}

fn cmd_sparsity(g: &GeneralizedRealization, format: Format, dot: Option<&Path>) -> Result<String> {
    let z = sparsity(&transfer_function(&minimize_intricacy(g)?)).with_names(&g.labels().u, &g.labels().y);
    if let Some(dir) = dot {
        write_dot(dir, "Z.dot", &z.to_dot())?;
    }
    if format == Format::Json {
        let edges: Vec<Value> = z
            .edges
            .iter()
            .map(|e| json!({ "from": z.inputs[e.input], "to": z.outputs[e.output], "label": e.label.to_string() }))
            .collect();
        return Ok(json_text(&json!({ "inputs": z.inputs, "outputs": z.outputs, "edges": edges })));
    }
    let mut out = format!("{} edges\n", z.edges.len());
    for e in &z.edges {
        out.push_str(&format!("  {} -> {} [{}]\n", z.inputs[e.input], z.outputs[e.output], e.label));
    }
    Ok(out)
}

fn cmd_check(files: &[PathBuf], format: Format, timing: bool) -> Result<(String, bool)> {
    let mut reports = Vec::new();
    for f in files {
        let g = read_realization(f)?;
        reports.push((f.display().to_string(), analyze(&g, timing)?));
    }
    let ok = reports.iter().all(|(_, r)| r.passed());
    if format == Format::Json {
        let list: Vec<Value> = reports
            .iter()
            .map(|(f, r)| {
                let mut v = serde_json::to_value(r).expect("report serialize");
                v["file"] = Value::String(f.clone());
                v
            })
            .collect();
        return Ok((json_text(&Value::Array(list)), ok));
    }
    let mut out = String::new();
    for (f, r) in &reports {
        let p1 = r.p1.map_or("-".to_string(), |p| p.to_string());
        out.push_str(&format!("{f}: n={} l={} m={} p={} blocks={} p1={p1}\n", r.n, r.l, r.m, r.p, r.blocks));
        for c in &r.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            out.push_str(&format!("  {tag} {}\n", c.name));
            for line in &c.detail {
                out.push_str(&format!("       {line}\n"));
            }
        }
        if let Some(t) = &r.timing_ms {
            let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v:.3}ms")).collect();
            out.push_str(&format!("  timing {}\n", parts.join(" ")));
        }
    }
    Ok((out, ok))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gds(
    graph: &Path,
    x0: Option<&str>,
    inputs: &[usize],
    cycle: bool,
    steps: Option<usize>,
    deps: bool,
    dot: Option<&Path>,
    format: Format,
) -> Result<String> {
    let g = parse_graph(&fs::read_to_string(graph)?)?;
    if deps {
        let dg = dependency_graph(&g);
        if let Some(dir) = dot {
            write_dot(dir, "deps.dot", &dg.to_dot())?;
        }
        let pairs: Vec<(String, String)> = dg.edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        return Ok(match format {
            Format::Json => json_text(&json!({
                "edges": pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            })),
            Format::Text => pairs.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect(),
        });
    }
    let x0 = match x0 {
        Some(s) => parse_state(s)?,
        None => vec![false; g.n()],
    };
    let sweep: Vec<usize> = (1..=g.n()).collect();
    let inputs = if cycle && inputs.is_empty() { &sweep[..] } else { inputs };
    let steps = steps.unwrap_or(inputs.len());
    let seq: Vec<usize> = if cycle { inputs.iter().copied().cycle().take(steps).collect() } else { inputs.to_vec() };
    let tr = g.simulate(&x0, &seq, steps)?;
    Ok(match format {
        Format::Text => tr.to_csv(),
        Format::Json => {
            let bits = |x: &Vec<bool>| x.iter().map(|&b| u8::from(b)).collect::<Vec<_>>();
            json_text(&json!({
                "x": tr.states.iter().map(bits).collect::<Vec<_>>(),
                "u": tr.inputs,
                "y": tr.outputs.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            }))
        }
    })
}

/// Runs one command, writing its output to `out`. Returns whether every
/// requested check passed.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<bool> {
    let (text, ok) = match &cli.command {
        Command::Minimize { file } => (cmd_minimize(&read_realization(file)?, cli.format)?, true),
        Command::Tf { file } => (cmd_tf(&read_realization(file)?, cli.format)?, true),
        Command::Subsystems { file, dot } => {
            (cmd_subsystems(&read_realization(file)?, cli.format, dot.as_deref())?, true)
        }
        Command::Dsf { file, dot } => (cmd_dsf(&read_realization(file)?, cli.format, dot.as_deref())?, true),
        Command::Sparsity { file, dot } => (cmd_sparsity(&read_realization(file)?, cli.format, dot.as_deref())?, true),
        Command::Check { files } => cmd_check(files, cli.format, cli.timing)?,
        Command::Gds { graph, x0, inputs, cycle, steps, deps, dot } => {
            (cmd_gds(graph, x0.as_deref(), inputs, *cycle, *steps, *deps, dot.as_deref(), cli.format)?, true)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(ok)
}
