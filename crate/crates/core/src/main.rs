use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use tsgreen::classify::{dress_verdict, galois_index_set};
use tsgreen::field::FieldSpec;
use tsgreen::green::TSBasis;
use tsgreen::group::{GroupSpec, PermGroup};
use tsgreen::linalg::{GaloisField, IntMatrix};
use tsgreen::modrep::{decompose, perm_module, vertex};
use tsgreen::primordial::{
    is_primordial, parse_catalog, membership_certificate, reference_catalog, verify_theorem, EngineConfig, TheoremReport,
};
use tsgreen::{Error, Result};

#[derive(Parser)]
#[command(name = "tsgreen", version, about = "Trivial-source Green rings and primordial groups")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = tsgreen::group::DEFAULT_ORDER_CAP, value_parser = positive)]
    order_cap: usize,
    /// Largest module dimension built explicitly.
    #[arg(long, global = true, default_value_t = tsgreen::modrep::DEFAULT_DIM_CAP, value_parser = positive)]
    dim_cap: usize,
    /// Seed for the randomized splitting search.
    #[arg(long, global = true, default_value_t = tsgreen::modrep::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for catalog runs (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Field modulus coefficients, constant term first, e.g. `1,1,1` for x^2+x+1.
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Dress-hierarchy verdict for a group.
    Classify { group: String, #[arg(long)] field: String },
    /// The Galois index set I_m(k).
    Imset { #[arg(long)] field: String, #[arg(long)] m: u64 },
    /// Trivial-source basis of a group.
    TsBasis {
        group: String,
        #[arg(long)]
        field: String,
        /// Also print induction and restriction matrices for every subgroup class.
        #[arg(long)]
        emit_matrices: bool,
    },
    /// Decomposes the permutation module on the cosets of a subgroup class
    /// representative (default: the trivial subgroup, i.e. the regular module).
    Decompose {
        group: String,
        #[arg(long)]
        field: String,
        /// Index into the subgroup class representatives.
        #[arg(long, default_value_t = 0)]
        subgroup: usize,
    },
    /// Primordiality verdict with witness.
    Primordial { group: String, #[arg(long)] field: String },
    /// Membership certificate for C_r ⋊ C_(q^n), written `<r>:<q^n>@<a>`.
    Certificate { shape: String, #[arg(long)] field: String },
    /// Compares the k-Dress classifier with primordiality over a catalog.
    VerifyTheorem {
        /// Catalog file; the built-in reference catalog when omitted.
        #[arg(long)]
        catalog: Option<std::path::PathBuf>,
    },
}

struct Ctx {
    cfg: EngineConfig,
    format: Format,
    modulus: Option<Vec<u64>>,
}

impl Ctx {
    fn field(&self, text: &str) -> Result<FieldSpec> {
        let spec = FieldSpec::parse(text)?;
        match &self.modulus {
            None => Ok(spec),
            Some(m) => {
                let custom = FieldSpec::with_modulus(spec.p, m.clone())?;
                if custom.d != spec.d {
                    return Err(Error::Parse {
                        token: format!("{m:?}"),
                        reason: format!("modulus degree {} does not match {text}", custom.d),
                    });
                }
                Ok(custom)
            }
        }
    }

    fn group(&self, text: &str) -> Result<Arc<PermGroup>> {
        let spec = GroupSpec::parse(text)?;
        Ok(Arc::new(spec.build(self.cfg.order_cap)?.with_name(spec.to_string())))
    }

    fn envelope(&self, field: Option<&FieldSpec>, result: Value) -> Value {
        json!({
            "tool": "tsgreen",
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.cfg.seed,
            "order_cap": self.cfg.order_cap,
            "dim_cap": self.cfg.dim_cap,
            "field": field.map(|f| f.to_string()),
            "modulus": field.map(|f| f.modulus.clone()),
            "result": result,
        })
    }

    fn header(&self, field: Option<&FieldSpec>) -> String {
        let mut h = format!(
            "tsgreen {} seed={} order_cap={} dim_cap={}",
            env!("CARGO_PKG_VERSION"),
            self.cfg.seed,
            self.cfg.order_cap,
            self.cfg.dim_cap
        );
        if let Some(f) = field {
            let _ = write!(h, " field={f} modulus={:?}", f.modulus);
        }
        h
    }

    /// Renders a result; `table` supplies CSV rows (header first) when the
    /// command has a tabular form.
    fn render(&self, field: Option<&FieldSpec>, result: &impl Serialize, table: Option<Vec<Vec<String>>>) -> Result<String> {
        let value = serde_json::to_value(result).map_err(|e| Error::Io(e.to_string()))?;
        match self.format {
            Format::Json => Ok(self.envelope(field, value).to_string()),
            Format::Pretty => match table {
                Some(rows) => Ok(format!("# {}\n{}", self.header(field), aligned(&rows))),
                None => Ok(serde_json::to_string_pretty(&self.envelope(field, value)).unwrap()),
            },
            Format::Csv => {
                let rows = table.ok_or_else(|| Error::Parse {
                    token: "csv".into(),
                    reason: "this command has no tabular output; use json or pretty".into(),
                })?;
                let body: Vec<String> = rows.iter().map(|r| r.join(",")).collect();
                Ok(format!("# {}\n{}", self.header(field), body.join("\n")))
            }
        }
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap()).collect()).collect()
}

fn subgroup_gens(g: &PermGroup, s: &tsgreen::group::Subgroup) -> Vec<String> {
    s.generators(g).iter().map(|&x| g.element(x).to_string()).collect()
}

/// `<r>:<q^n>@<a>` or `<r>:<q^n as a number>@<a>`.
fn parse_shape(text: &str) -> Result<GroupSpec> {
    let bad = |reason: &str| Error::Parse { token: text.to_string(), reason: reason.to_string() };
    let (r, rest) = text.split_once(':').ok_or_else(|| bad("expected <r>:<q^n>@<a>"))?;
    let (qn, a) = rest.split_once('@').ok_or_else(|| bad("missing @<a>"))?;
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let n = match qn.split_once('^') {
        Some((q, e)) => num(q)?.checked_pow(num(e)? as u32).ok_or_else(|| bad("q^n overflows"))?,
        None => num(qn)?,
    };
    Ok(GroupSpec::SemidirectCyclic { m: num(r)?, n, a: num(a)? })
}

enum Outcome {
    Ok(String),
    Violation(String, Error),
}

fn run(cli: Cli) -> Result<Outcome> {
    let r = cli.run;
    let ctx = Ctx { cfg: EngineConfig { order_cap: r.order_cap, dim_cap: r.dim_cap, seed: r.seed }, format: r.format, modulus: r.modulus };
    if r.threads > 0 {
        // only fails if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(r.threads).build_global();
    }
    let out = match cli.command {
        Command::Classify { group, field } => {
            let k = ctx.field(&field)?;
            let g = ctx.group(&group)?;
            ctx.render(Some(&k), &dress_verdict(&g, &k)?, None)?
        }
        Command::Imset { field, m } => {
            let k = ctx.field(&field)?;
            let set = galois_index_set(&k, m)?;
            let rows = vec![vec!["m".into(), "member".into()]]
                .into_iter()
                .chain(set.members.iter().map(|a| vec![m.to_string(), a.to_string()]))
                .collect();
            ctx.render(Some(&k), &set, Some(rows))?
        }
        Command::TsBasis { group, field, emit_matrices } => {
            let k = ctx.field(&field)?;
            let g = ctx.group(&group)?;
            let b = TSBasis::build(&g, &GaloisField::new(&k), ctx.cfg.seed, ctx.cfg.dim_cap)?;
            let elements: Vec<Value> = b
                .elements()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "index": i,
                        "dim": e.dim(),
                        "vertex_order": e.vertex.vertex_order,
                        "vertex_generators": subgroup_gens(&g, &e.vertex.vertex_subgroup(&g)),
                        "trivial_source": e.vertex.trivial_source,
                        "fixed_point_dims": e.fixed_dims,
                        "endomorphisms": e.module.certificate(),
                    })
                })
                .collect();
            let mut result = json!({ "group": g.name(), "order": g.order(), "size": b.len(), "dims": b.dims(), "elements": elements });
            if emit_matrices {
                let mut mats = Vec::new();
                for s in g.lattice()?.representatives() {
                    let sg = Arc::new(g.subgroup_as_group(&s));
                    let sb = TSBasis::build(&sg, b.field(), ctx.cfg.seed, ctx.cfg.dim_cap)?;
                    mats.push(json!({
                        "subgroup_order": s.order(),
                        "subgroup_generators": subgroup_gens(&g, &s),
                        "subgroup_dims": sb.dims(),
                        "induction": int_rows(&b.induction_matrix(&sb)?),
                        "restriction": int_rows(&b.restriction_matrix(&sb)?),
                    }));
                }
                result["matrices"] = Value::Array(mats);
            }
            let mut rows = vec![vec!["index".into(), "dim".into(), "vertex_order".into(), "trivial_source".into()]];
            for (i, e) in b.elements().iter().enumerate() {
                rows.push(vec![i.to_string(), e.dim().to_string(), e.vertex.vertex_order.to_string(), e.vertex.trivial_source.to_string()]);
            }
            ctx.render(Some(&k), &result, Some(rows))?
        }
        Command::Decompose { group, field, subgroup } => {
            let k = ctx.field(&field)?;
            let g = ctx.group(&group)?;
            let reps = g.lattice()?.representatives();
            let s = reps.get(subgroup).ok_or_else(|| Error::Parse {
                token: subgroup.to_string(),
                reason: format!("there are {} subgroup class representatives", reps.len()),
            })?;
            let m = perm_module(&g, s, &GaloisField::new(&k));
            let d = decompose(&m, ctx.cfg.seed)?;
            let mut summands = Vec::new();
            let mut rows = vec![vec!["dim".into(), "multiplicity".into(), "vertex_order".into(), "trivial_source".into()]];
            for (u, &mult) in d.class_representatives().zip(&d.multiplicities) {
                let v = vertex(u)?;
                rows.push(vec![u.dim().to_string(), mult.to_string(), v.vertex_order.to_string(), v.trivial_source.to_string()]);
                summands.push(json!({ "dim": u.dim(), "multiplicity": mult, "vertex": v, "endomorphisms": u.certificate() }));
            }
            let result = json!({
                "group": g.name(),
                "subgroup_order": s.order(),
                "subgroup_generators": subgroup_gens(&g, s),
                "module_dim": m.dim(),
                "summands": summands,
            });
            ctx.render(Some(&k), &result, Some(rows))?
        }
        Command::Primordial { group, field } => {
            let k = ctx.field(&field)?;
            let g = ctx.group(&group)?;
            ctx.render(Some(&k), &is_primordial(&g, &GaloisField::new(&k), &ctx.cfg)?, None)?
        }
        Command::Certificate { shape, field } => {
            let k = ctx.field(&field)?;
            let spec = parse_shape(&shape)?;
            let g = Arc::new(spec.build(ctx.cfg.order_cap)?.with_name(spec.to_string()));
            ctx.render(Some(&k), &membership_certificate(&g, &GaloisField::new(&k), &ctx.cfg)?, None)?
        }
        Command::VerifyTheorem { catalog } => {
            let entries = match catalog {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    parse_catalog(&text)?
                }
                None => reference_catalog(),
            };
            let report = verify_theorem(&entries, &ctx.cfg)?;
            let text = ctx.render(None, &report, Some(theorem_table(&report)))?;
            if let Err(e) = report.check() {
                return Ok(Outcome::Violation(text, e));
            }
            text
        }
    };
    Ok(Outcome::Ok(out))
}

fn theorem_table(r: &TheoremReport) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> =
        vec![["group", "order", "p", "field", "k_dress", "primordial", "agreement"].map(String::from).to_vec()];
    for row in &r.rows {
        rows.push(vec![
            row.group.clone(),
            row.order.to_string(),
            row.p.to_string(),
            row.field.clone(),
            row.k_dress.to_string(),
            row.primordial.to_string(),
            row.agreement.to_string(),
        ]);
    }
    rows
}

fn error_json(e: &Error) -> String {
    json!({ "error": e.kind(), "message": e.to_string() }).to_string()
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok(text)) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violation(text, e)) => {
            emit(&text);
            eprintln!("{}", error_json(&e));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(1)
        }
    }
}
