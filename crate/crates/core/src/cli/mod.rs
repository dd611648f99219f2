//! The `twistinv` command line: argument parsing into a [`JobSpec`], dispatch, and JSON output.

use crate::chevalley::{cayley_hamilton_check, char_polynomial, chevalley_w0_invariance};
use crate::error::{Error, Result};
use crate::filtration::{nu_h, profile, twisted_graded_dims};
use crate::invariants::{pairing_matrix_with, predicted_determinant, determinant_report};
use crate::repn::{build_irreducible, bundle, freudenthal_character, r_v, sigma_module, weyl_character, zeta_all, Module};
use crate::rootdata::{RootDatum, Weight};
use crate::twist::{fold, sigma_orbits, PinnedAutomorphism};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    Fold,
    Mult,
    Filpoly,
    Zeta,
    Nuh,
    Pairing,
    Chcheck,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Fold => "fold",
            CommandKind::Mult => "mult",
            CommandKind::Filpoly => "filpoly",
            CommandKind::Zeta => "zeta",
            CommandKind::Nuh => "nuh",
            CommandKind::Pairing => "pairing",
            CommandKind::Chcheck => "chcheck",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "twistinv", version, about = "Exact twisted-conjugation invariant theory computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fold the root datum by σ and list σ-orbits of roots.
    Fold(CommonArgs),
    /// Weight multiplicities of an irreducible module.
    Mult(CommonArgs),
    /// Filtration profile and graded-dimension polynomial at one weight.
    Filpoly(CommonArgs),
    /// `r_V` and `ζ_O(V)` for every σ-orbit.
    Zeta(CommonArgs),
    /// The minimal weight `ν^h` with `σν - ν = ξ`.
    Nuh(CommonArgs),
    /// Pairing matrix and its determinant.
    Pairing(CommonArgs),
    /// Twisted Cayley–Hamilton check.
    Chcheck(CommonArgs),
}

#[derive(Debug, clap::Args)]
struct CommonArgs {
    #[arg(long)]
    group: String,
    /// Cycle notation over 1-based node labels.
    #[arg(long, default_value = "()")]
    sigma: String,
    /// Highest weight in fundamental-weight coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    rep: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Lower bound `ν0` for `nuh`.
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A fully validated command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: CommandKind,
    pub group: String,
    pub sigma: String,
    pub rep: Option<Weight>,
    pub weight: Option<Weight>,
    pub base: Option<Weight>,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn parse_weight(s: &str, rank: usize, what: &str) -> Result<Weight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::input(format!("malformed {what} {s:?}"))))
        .collect::<Result<_>>()?;
    if coords.len() != rank {
        return Err(Error::input(format!("{what} needs {rank} coordinates, got {}", coords.len())));
    }
    Ok(Weight(coords))
}

fn weight_arg(w: &Weight) -> String {
    w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl JobSpec {
    fn from_common(command: CommandKind, a: CommonArgs) -> Result<Self> {
        let datum = RootDatum::from_spec(&a.group)?;
        let sigma = PinnedAutomorphism::from_cycles(&datum, &a.sigma)?;
        let r = datum.rank();
        let rep = a.rep.as_deref().map(|s| parse_weight(s, r, "highest weight")).transpose()?;
        if let Some(l) = &rep {
            if !l.is_dominant() {
                return Err(Error::input(format!("highest weight {l} is not dominant")));
            }
        }
        let job = JobSpec {
            command,
            group: datum.spec_string(),
            sigma: sigma.cycle_string(),
            rep,
            weight: a.weight.as_deref().map(|s| parse_weight(s, r, "weight")).transpose()?,
            base: a.base.as_deref().map(|s| parse_weight(s, r, "base weight")).transpose()?,
            cache_dir: a.cache_dir,
            format: a.format,
            output: a.output,
        };
        let needs_rep = !matches!(command, CommandKind::Fold | CommandKind::Nuh);
        if needs_rep && job.rep.is_none() {
            return Err(Error::input(format!("{} needs --rep", command.name())));
        }
        if matches!(command, CommandKind::Filpoly | CommandKind::Nuh) && job.weight.is_none() {
            return Err(Error::input(format!("{} needs --weight", command.name())));
        }
        Ok(job)
    }

    /// The canonical argument list; parsing it yields the same job.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![self.command.name().to_string(), "--group".into(), self.group.clone()];
        out.extend(["--sigma".into(), self.sigma.clone()]);
        for (flag, w) in [("--rep", &self.rep), ("--weight", &self.weight), ("--base", &self.base)] {
            if let Some(w) = w {
                out.extend([flag.to_string(), weight_arg(w)]);
            }
        }
        if let Some(d) = &self.cache_dir {
            out.extend(["--cache-dir".into(), d.display().to_string()]);
        }
        if self.format == Format::Text {
            out.extend(["--format".into(), "text".into()]);
        }
        if let Some(o) = &self.output {
            out.extend(["--output".into(), o.display().to_string()]);
        }
        out
    }

    /// The canonical command line as a shell string.
    pub fn canonical(&self) -> String {
        self.to_args()
            .iter()
            .map(|a| if a.chars().any(|c| c.is_whitespace() || "()\"'".contains(c)) { format!("\"{a}\"") } else { a.clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses arguments after the program name.
pub fn parse_args<I, T>(args: I) -> std::result::Result<JobSpec, ParseFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("twistinv")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(ParseFailure::Clap)?;
    let (kind, a) = match cli.command {
        Command::Fold(a) => (CommandKind::Fold, a),
        Command::Mult(a) => (CommandKind::Mult, a),
        Command::Filpoly(a) => (CommandKind::Filpoly, a),
        Command::Zeta(a) => (CommandKind::Zeta, a),
        Command::Nuh(a) => (CommandKind::Nuh, a),
        Command::Pairing(a) => (CommandKind::Pairing, a),
        Command::Chcheck(a) => (CommandKind::Chcheck, a),
    };
    JobSpec::from_common(kind, a).map_err(ParseFailure::Invalid)
}

#[derive(Debug)]
pub enum ParseFailure {
    Clap(clap::Error),
    Invalid(Error),
}

/// Result document plus whether every checked identity held.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub doc: Value,
    pub consistent: bool,
}

/// Loads the irreducible module from the cache directory or builds and stores it.
pub fn load_module(datum: &RootDatum, group: &str, lambda: &Weight, cache_dir: Option<&Path>) -> Result<Module> {
    let Some(dir) = cache_dir else {
        return build_irreducible(datum, lambda);
    };
    let path = bundle::cache_path(dir, group, lambda);
    if path.exists() {
        let (g, m) = bundle::load(&path)?;
        if g == group && m.highest() == Some(lambda) {
            return Ok(m);
        }
    }
    let m = build_irreducible(datum, lambda)?;
    bundle::save(&path, group, &m)?;
    Ok(m)
}

pub fn run(job: &JobSpec) -> Result<Outcome> {
    let datum = RootDatum::from_spec(&job.group)?;
    let sigma = PinnedAutomorphism::from_cycles(&datum, &job.sigma)?;
    let module = |lambda: &Weight| load_module(&datum, &job.group, lambda, job.cache_dir.as_deref());
    let ok = |doc: Value| Ok(Outcome { doc, consistent: true });
    match job.command {
        CommandKind::Fold => {
            let folded = fold(&datum, &sigma)?;
            let mut doc = folded.to_json();
            doc["group"] = json!(job.group);
            doc["orbits"] = Value::Array(sigma_orbits(&datum, &sigma).iter().map(|o| o.to_json()).collect());
            doc["w0_order"] = json!(folded.w0_order(&datum));
            ok(doc)
        }
        CommandKind::Mult => {
            let lambda = job.rep.as_ref().unwrap();
            let v = module(lambda)?;
            let ch = v.character();
            let agree = ch == freudenthal_character(&datum, lambda)? && ch == weyl_character(&datum, lambda)?;
            let mut doc = json!({ "highest": lambda.0, "dim": v.dim(), "oracles_agree": agree });
            match &job.weight {
                Some(nu) => doc["mult"] = json!(v.mult(nu)),
                None => {
                    doc["weights"] = Value::Array(
                        v.weight_spaces().map(|(w, b)| json!({"weight": w.0, "mult": b.len()})).collect(),
                    )
                }
            }
            Ok(Outcome { doc, consistent: agree })
        }
        CommandKind::Filpoly => {
            let v = module(job.rep.as_ref().unwrap())?;
            let nu = job.weight.as_ref().unwrap();
            let p = profile(&datum, &v, nu)?;
            let consistent = p.gr.eval_at_one() == p.mult as u64;
            Ok(Outcome {
                doc: json!({
                    "weight": nu.0,
                    "mult": p.mult,
                    "bounds": p.bounds,
                    "fil_dims": p.fil_dims,
                    "P": p.gr.to_json(),
                }),
                consistent,
            })
        }
        CommandKind::Zeta => {
            let v = module(job.rep.as_ref().unwrap())?;
            let orbits: Vec<Value> = zeta_all(&datum, &v, &sigma)?
                .into_iter()
                .map(|(o, z)| {
                    let mut j = o.to_json();
                    j["zeta"] = json!(z);
                    j
                })
                .collect();
            ok(json!({ "r_V": r_v(&v, &sigma), "orbits": orbits }))
        }
        CommandKind::Nuh => {
            let xi = job.weight.as_ref().unwrap();
            let base = job.base.clone().unwrap_or_else(|| Weight::zero(datum.rank()));
            let nu = nu_h(&sigma, &base, xi)?;
            let mut doc = json!({ "xi": xi.0, "base": base.0, "nu_h": nu.0 });
            if let Some(lambda) = &job.rep {
                let v = module(lambda)?;
                let dims = twisted_graded_dims(&datum, &v, &sigma, xi)?;
                doc["layers"] = Value::Array(dims.iter().map(|(n, d)| json!({"nu": n.0, "dim": d})).collect());
                doc["mult"] = json!(v.mult(xi));
            }
            ok(doc)
        }
        CommandKind::Pairing => {
            let v = module(job.rep.as_ref().unwrap())?;
            let folded = fold(&datum, &sigma)?;
            let m = pairing_matrix_with(&datum, &folded, &v)?;
            let predicted = predicted_determinant(&datum, &sigma, &v)?;
            let report = determinant_report(&m.determinant, &predicted);
            let doc = json!({
                "size": m.size(),
                "entries": m.entries.iter().map(|row| row.iter().map(|x| x.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "det": m.determinant.to_json(),
                "predicted": predicted.to_json(),
                "unit_ratio": report.unit.as_ref().map(|u| u.to_string()),
            });
            Ok(Outcome { doc, consistent: report.matches })
        }
        CommandKind::Chcheck => {
            let v = sigma_module(&module(job.rep.as_ref().unwrap())?, &sigma)?;
            let folded = fold(&datum, &sigma)?;
            let ch = cayley_hamilton_check(&v, &sigma)?;
            let f = char_polynomial(&v, &sigma)?;
            let w0 = f.coeffs.iter().all(|c| chevalley_w0_invariance(&datum, &folded, c));
            Ok(Outcome {
                doc: json!({ "cayley_hamilton": ch, "char_poly": f.to_json(), "w0_invariant": w0 }),
                consistent: ch && w0,
            })
        }
    }
}

/// Renders a document as `key: value` lines with compact JSON values.
pub fn render_text(doc: &Value) -> String {
    match doc {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        other => format!("{other}\n"),
    }
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(doc).expect("JSON serializes")),
        Format::Text => render_text(doc),
    }
}

/// Full front end: parse, run, write output. Returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match parse_args(args) {
        Ok(job) => job,
        Err(ParseFailure::Clap(e)) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
        Err(ParseFailure::Invalid(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let outcome = match run(&job) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let text = render(&outcome.doc, job.format);
    let written = match &job.output {
        Some(path) => std::fs::write(path, &text).map_err(Error::from),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return e.exit_code();
    }
    if outcome.consistent {
        0
    } else {
        let _ = writeln!(stderr, "error: a checked identity failed");
        1
    }
}
