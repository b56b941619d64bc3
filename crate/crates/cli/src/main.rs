use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stabkit::algebra::envelope::{
    injective_envelope, is_injective, is_projective, projective_cover, radical_series, socle_multiplicities,
    top_multiplicities,
};
use stabkit::algebra::{Module, Ring};
use stabkit::functor::{apply_da, apply_dl, apply_dr, evaluate, functor_file, functor_from_file, Form, FunctorFile};
use stabkit::harness::{cotorsion_section, reverify, run_suite, Check, Counterexample, InstanceSpec};
use stabkit::io::{load_relations, load_ring, map_file, module_from_file, rows_of, ModuleFile};
use stabkit::linalg::Matrix;
use stabkit::stab::{classify, one_torsion_t, q_chain, reject, s_chain, StabContext};
use stabkit::zgroup::{classical_torsion, snf_decompose, z_one_torsion, ZPresentation};
use stabkit::Error;

#[derive(Parser)]
#[command(name = "stabkit", version, about = "Exact torsion, cotorsion and AGJ transforms")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChainKind {
    S,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Da,
    Dr,
    Dl,
}

#[derive(clap::Args)]
struct Inputs {
    /// Algebra file, or a catalog name such as `@kA2`.
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    module: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Parse and validate the given files.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        functor: Option<PathBuf>,
        #[arg(long)]
        relations: Option<PathBuf>,
    },
    /// s(A) with the 1-torsion and reject cross-checks.
    Torsion {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// q(C) and the trace of injectives.
    Cotorsion {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Iterated s- or q-chain.
    Chain {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "s")]
        kind: ChainKind,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Torsion, torsion-free, cotorsion and cotorsion-free flags.
    Classify {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Apply D_A, D_R or D_L to a functor presentation.
    Dualize {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        functor: PathBuf,
        /// Defaults to D_A for hom-cokernel and D_R for tensor-kernel presentations.
        #[arg(long, value_enum)]
        transform: Option<Transform>,
    },
    /// Injective envelope, projective cover and Loewy data.
    Envelope {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Run the named-invariant suite.
    Suite {
        /// `all` or a comma separated list of check names.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, env = "STABKIT_SEED", default_value_t = 1)]
        seed: u64,
        /// Comma separated catalog names, or `all`.
        #[arg(long, default_value = "all")]
        algebras: String,
        #[arg(long, default_value_t = stabkit::harness::DEFAULT_DIM_BOUND)]
        dim_bound: usize,
        /// Random modules per side (presentations for Z).
        #[arg(long, default_value_t = stabkit::harness::DEFAULT_COUNT)]
        count: usize,
        /// Re-run a serialized counterexample instead of the suite.
        #[arg(long)]
        reverify: Option<PathBuf>,
    },
    /// Invariant factors and torsion of a finitely generated abelian group.
    Zdecompose {
        #[arg(long)]
        relations: PathBuf,
    },
}

/// Input problems exit with 2, computation failures with 1.
enum Failure {
    Input(String),
    Computation(String, Option<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e.to_string(), None)
    }
}

fn input<T>(r: stabkit::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.to_string()))
}

struct Output {
    value: Value,
    table: Option<String>,
    ok: bool,
}

impl Output {
    fn new(value: Value) -> Self {
        Output { value, table: None, ok: true }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn ring_arg(spec: &Option<String>) -> Result<Option<Arc<Ring>>, Failure> {
    spec.as_ref().map(|s| input(load_ring(s, None))).transpose()
}

fn load_module(inputs: &Inputs) -> Result<Module, Failure> {
    let ring = ring_arg(&inputs.algebra)?;
    let path = inputs.module.as_ref().ok_or_else(|| Failure::Input("--module is required".into()))?;
    let f: ModuleFile = read_json(path)?;
    input(module_from_file(&f, ring.as_ref(), path.parent()))
}

fn context(m: &Module) -> Result<StabContext, Failure> {
    Ok(StabContext::new(m.ring())?)
}

fn basis_rows(m: &Matrix) -> Value {
    json!(rows_of(&m.transpose()))
}

fn torsion(inputs: &Inputs) -> Result<Output, Failure> {
    let a = load_module(inputs)?;
    let ctx = context(&a)?;
    let s = ctx.torsion(&a)?;
    let t = one_torsion_t(&a)?;
    let r = reject(&a)?;
    let value = json!({
        "dim_module": a.dim(),
        "dim_s": s.dim(),
        "generators": basis_rows(&s.subspace().basis()),
        "inclusion": rows_of(s.submodule.inclusion.matrix()),
        "dim_t": t.subspace.dim(),
        "t_equal": &t.subspace == s.subspace(),
        "reject_equal": &r.subspace == s.subspace(),
    });
    let ok = value["t_equal"] == json!(true) && value["reject_equal"] == json!(true);
    Ok(Output { ok, ..Output::new(value) })
}

fn cotorsion(inputs: &Inputs) -> Result<Output, Failure> {
    let c = load_module(inputs)?;
    let ctx = context(&c)?;
    let q = ctx.cotorsion(&c)?;
    let section = cotorsion_section(&c, &ctx)?;
    let value = json!({
        "dim_module": c.dim(),
        "dim_q": q.dim(),
        "dim_trace": q.trace.subspace.dim(),
        "trace_generators": basis_rows(&q.trace.subspace.basis()),
        "projection": rows_of(q.quotient.projection.matrix()),
        "hom_image_equal": q.agrees(),
        "split": section.is_some(),
        "section": section.map(|s| rows_of(s.matrix())),
    });
    Ok(Output { ok: q.agrees(), ..Output::new(value) })
}

fn chain(inputs: &Inputs, kind: ChainKind, cap: Option<usize>) -> Result<Output, Failure> {
    let a = load_module(inputs)?;
    let ctx = context(&a)?;
    let cap = cap.unwrap_or(a.dim() + 1).max(1);
    let rep = match kind {
        ChainKind::S => s_chain(&a, ctx.cosyzygy(a.side().flip()), cap)?.0,
        ChainKind::Q => q_chain(&a, ctx.cosyzygy(a.side()), cap)?.0,
    };
    let name = match kind {
        ChainKind::S => "s",
        ChainKind::Q => "q",
    };
    Ok(Output::new(json!({
        "kind": name,
        "dims": rep.dims,
        "stabilized_at": rep.stabilized_at,
        "length": rep.length(),
    })))
}

fn envelope(inputs: &Inputs) -> Result<Output, Failure> {
    let m = load_module(inputs)?;
    let env = injective_envelope(&m)?;
    let cover = projective_cover(&m)?;
    Ok(Output::new(json!({
        "dim_module": m.dim(),
        "injective_envelope": {
            "dim": env.module().dim(),
            "summands": env.summands,
            "map": map_file(&env.map),
        },
        "projective_cover": {
            "dim": cover.sum.module.dim(),
            "summands": cover.sum.summands,
            "map": map_file(&cover.map),
        },
        "socle": socle_multiplicities(&m)?,
        "top": top_multiplicities(&m)?,
        "radical_series": radical_series(&m)?,
        "is_injective": is_injective(&m)?,
        "is_projective": is_projective(&m)?,
    })))
}

fn dualize(inputs: &Inputs, path: &Path, transform: Option<Transform>) -> Result<Output, Failure> {
    let ring = ring_arg(&inputs.algebra)?;
    let file: FunctorFile = read_json(path)?;
    let f = input(functor_from_file(&file, ring.as_ref(), path.parent()))?;
    let at = match &inputs.module {
        Some(p) => {
            let mf: ModuleFile = read_json(p)?;
            Some(input(module_from_file(&mf, Some(f.ring()), p.parent()))?)
        }
        None => None,
    };
    let transform = transform.unwrap_or(match f.form {
        Form::HomCoker => Transform::Da,
        Form::TensorKer => Transform::Dr,
    });
    let g = match transform {
        Transform::Da => apply_da(&f)?,
        Transform::Dr => apply_dr(&f)?,
        Transform::Dl => apply_dl(&f)?,
    };
    let mut value = json!({ "functor": functor_file(&g) });
    if let Some(m) = at {
        let ev = evaluate(&g, &m)?;
        value["value_dim"] = json!(ev.dim());
        value["exact"] = json!(ev.is_exact());
    }
    Ok(Output::new(value))
}

fn validate(inputs: &Inputs, functor: &Option<PathBuf>, relations: &Option<PathBuf>) -> Result<Output, Failure> {
    let ring = ring_arg(&inputs.algebra)?;
    let mut value = json!({});
    if let Some(r) = &ring {
        value["algebra"] = json!({ "dim": r.dim(), "name": r.name(), "simples": r.num_simples()? });
    }
    if inputs.module.is_some() {
        let m = load_module(inputs)?;
        value["module"] = json!({ "dim": m.dim(), "side": m.side() });
    }
    if let Some(p) = functor {
        let file: FunctorFile = read_json(p)?;
        let f = input(functor_from_file(&file, ring.as_ref(), p.parent()))?;
        value["functor"] = json!({ "form": f.form, "side": f.side });
    }
    if let Some(p) = relations {
        let r = input(load_relations(p))?;
        value["relations"] = json!({ "generators": r.rows(), "relations": r.cols() });
    }
    value["valid"] = json!(true);
    Ok(Output::new(value))
}

fn zdecompose(path: &Path) -> Result<Output, Failure> {
    let p = ZPresentation::new(input(load_relations(path))?);
    let dec = snf_decompose(&p);
    let classical = classical_torsion(&p)?;
    let one = z_one_torsion(&p)?;
    let value = json!({
        "group": dec.to_string(),
        "invariant_factors": dec.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "free_rank": dec.free_rank,
        "torsion": classical.decomposition().to_string(),
        "one_torsion_equal": classical.same_submodule(&one),
    });
    Ok(Output { table: Some(format!("{dec}\n")), ok: classical.same_submodule(&one), ..Output::new(value) })
}

fn suite(
    checks: &str,
    seed: u64,
    algebras: &str,
    dim_bound: usize,
    count: usize,
    reverify_path: &Option<PathBuf>,
) -> Result<Output, Failure> {
    if let Some(path) = reverify_path {
        let cx: Counterexample = read_json(path)?;
        let still_fails = reverify(&cx)?;
        let value = json!({ "check": cx.check, "algebra": cx.algebra, "still_fails": still_fails });
        return Ok(Output { ok: !still_fails, ..Output::new(value) });
    }
    let checks = input(Check::parse_list(checks))?;
    let ids: Vec<String> = if algebras.trim() == "all" {
        stabkit::algebra::catalog::CATALOG_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        algebras.split(',').map(|s| s.trim().to_string()).collect()
    };
    for id in &ids {
        if !stabkit::algebra::catalog::CATALOG_IDS.contains(&id.as_str()) {
            return Err(Failure::Input(format!("unknown catalog algebra {id:?}")));
        }
    }
    let specs: Vec<InstanceSpec> =
        ids.iter().map(|id| InstanceSpec::new(id, seed).with_dim_bound(dim_bound).with_count(count)).collect();
    let report = run_suite(&specs, &checks)?;
    let table = report.table();
    let ok = report.passed;
    let value = serde_json::to_value(&report).map_err(|e| Failure::Computation(e.to_string(), None))?;
    if !ok {
        return Err(Failure::Computation("suite failed".into(), Some(value)));
    }
    Ok(Output { value, table: Some(table), ok })
}

fn table_of(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Computation(format!("{}: {e}", p.display()), None)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.value).expect("JSON values serialize")),
        Format::Table => out.table.clone().unwrap_or_else(|| table_of(&out.value)),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.verb {
        Verb::Validate { inputs, functor, relations } => validate(inputs, functor, relations),
        Verb::Torsion { inputs } => torsion(inputs),
        Verb::Cotorsion { inputs } => cotorsion(inputs),
        Verb::Chain { inputs, kind, cap } => chain(inputs, *kind, *cap),
        Verb::Classify { inputs } => {
            let m = load_module(inputs)?;
            let c = classify(&m, &context(&m)?)?;
            Ok(Output::new(serde_json::to_value(c).expect("flags serialize")))
        }
        Verb::Dualize { inputs, functor, transform } => dualize(inputs, functor, *transform),
        Verb::Envelope { inputs } => envelope(inputs),
        Verb::Suite { checks, seed, algebras, dim_bound, count, reverify } => {
            suite(checks, *seed, algebras, *dim_bound, *count, reverify)
        }
        Verb::Zdecompose { relations } => zdecompose(relations),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            if let Err(Failure::Computation(msg, _) | Failure::Input(msg)) = emit(&render(&out, cli.format), &cli.output) {
                eprintln!("error: {msg}");
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: cross-check failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg, payload)) => {
            eprintln!("error: {msg}");
            if let Some(v) = payload {
                let out = Output { value: v, table: None, ok: false };
                let _ = emit(&render(&out, cli.format), &cli.output);
            }
            ExitCode::from(1)
        }
    }
}
