use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::{json, Map, Value};

use spectral_walls::classify::{
    admissibility_lint, classify_many, directional_eigenvalues, directions_from_json,
    directions_to_json, eigenvalues, nonergodic_concise, nonwm_concise, realize, ConciseSet,
    DirectionVerdict,
};
use spectral_walls::fourier::{
    ft_lattice, rajchman_probe, representative_wall_mass, wiener_mass, decay_table_json,
};
use spectral_walls::linalg::lattice::LatticeSubgroup;
use spectral_walls::linalg::{zero_vector, Subspace};
use spectral_walls::measure::codec::{measure_from_json, measure_to_json};
use spectral_walls::measure::SymbolicMeasure;
use spectral_walls::oracle::{
    bundled_models, crosscheck, gram_check, lattice_box, model_from_json, model_to_json,
    ActionModel,
};
use spectral_walls::scalar::{Field, FieldSpec};
use spectral_walls::{Error, Result};

use crate::config::{Config, PUSHFORWARD_TOLERANCE};

/// Radii of the decay table emitted by `fourier-check`.
const DECAY_RADII: [f64; 4] = [1.0, 10.0, 100.0, 1000.0];
/// Gram matrices in `oracle` use lags `‖n‖∞ ≤ GRAM_BOUND`.
const GRAM_BOUND: usize = 2;
const GRAM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verdicts (ergodic, weak mixing, strong mixing) for each direction.
    Classify {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        directions: PathBuf,
    },
    /// Concise sets of non-ergodic and non-weak-mixing directions, and eigenvalues.
    Directions {
        #[arg(long)]
        measure: PathBuf,
    },
    /// A measure whose non-ergodic and non-weak-mixing directions are exactly the input.
    Realize {
        #[arg(long)]
        directions: PathBuf,
    },
    /// The exponential closure of a measure.
    Exp {
        #[arg(long)]
        measure: PathBuf,
    },
    /// Convolution of two measures.
    Convolve {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        with: PathBuf,
    },
    /// Restriction to Z^d (Euclidean input) and optionally to a subgroup of Z^d.
    Restrict {
        #[arg(long)]
        measure: PathBuf,
        /// JSON file `{"generators": [[int, …], …]}`.
        #[arg(long)]
        subgroup: Option<PathBuf>,
    },
    /// Suspension of a torus measure to a periodized Euclidean one.
    Suspend {
        #[arg(long)]
        measure: PathBuf,
    },
    /// Parts of a measure by carrier dimension.
    Decompose {
        #[arg(long)]
        measure: PathBuf,
    },
    /// Numerical checks of the symbolic answers through the Fourier transform.
    FourierCheck {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        directions: Option<PathBuf>,
    },
    /// Cross-check expected measures of action models against correlations.
    Oracle {
        /// Model file; without it every bundled model is checked.
        #[arg(long, conflicts_with = "bundled")]
        model: Option<PathBuf>,
        /// Name of a bundled model.
        #[arg(long)]
        bundled: Option<String>,
    },
    /// Admissibility warnings; never rejects a measure.
    Lint {
        #[arg(long)]
        measure: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Directions { .. } => "directions",
            Command::Realize { .. } => "realize",
            Command::Exp { .. } => "exp",
            Command::Convolve { .. } => "convolve",
            Command::Restrict { .. } => "restrict",
            Command::Suspend { .. } => "suspend",
            Command::Decompose { .. } => "decompose",
            Command::FourierCheck { .. } => "fourier-check",
            Command::Oracle { .. } => "oracle",
            Command::Lint { .. } => "lint",
        }
    }
}

/// A finished command: canonical inputs, the result document, a text
/// rendering, and the first failed numerical check if any.
pub struct Outcome {
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub text: Vec<String>,
    pub failed_check: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            inputs: Map::new(),
            result: Value::Null,
            text: Vec::new(),
            failed_check: None,
        }
    }

    fn input(&mut self, key: &str, v: Value) {
        self.inputs.insert(key.into(), v);
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_measure(path: &Path) -> Result<SymbolicMeasure> {
    measure_from_json(&read_json(path)?)
}

/// The smallest field containing both.
fn join(a: &Field, b: &Field) -> Result<Field> {
    let mut roots = a.roots().to_vec();
    roots.extend_from_slice(b.roots());
    FieldSpec::covering(&roots)
}

fn embed_all(ls: &[Subspace], f: &Field) -> Result<Vec<Subspace>> {
    ls.iter().map(|l| l.embed(f)).collect()
}

fn read_directions(path: &Path, m: &SymbolicMeasure) -> Result<(SymbolicMeasure, Vec<Subspace>)> {
    let (g, ls) = directions_from_json(&read_json(path)?)?;
    for l in &ls {
        if l.ambient() != m.dim() {
            return Err(Error::DimensionMismatch {
                expected: m.dim(),
                got: l.ambient(),
            });
        }
    }
    let f = join(m.field(), &g)?;
    Ok((m.embed(&f)?, embed_all(&ls, &f)?))
}

fn measure_text(m: &SymbolicMeasure) -> Vec<String> {
    let mut out = vec![format!(
        "{} measure on {}{} over Q{}, {} component(s)",
        if m.periodized() { "periodized" } else { "symbolic" },
        m.space().label(),
        m.dim(),
        field_label(m.field()),
        m.components().len()
    )];
    for (i, c) in m.components().iter().enumerate() {
        out.push(format!("  [{i}] {:?}", c.kind()));
    }
    out
}

fn field_label(f: &Field) -> String {
    if f.roots().is_empty() {
        String::new()
    } else {
        let roots: Vec<String> = f.roots().iter().map(|r| format!("√{r}")).collect();
        format!("({})", roots.join(", "))
    }
}

fn verdict_line(v: &DirectionVerdict) -> String {
    let label = if v.strong_mixing {
        "strong mixing"
    } else if v.weak_mixing {
        "weak mixing, not strong mixing"
    } else if v.ergodic {
        "ergodic, not weak mixing"
    } else {
        "non-ergodic"
    };
    format!("{:?}: {label}", v.direction)
}

fn concise_text(name: &str, set: &ConciseSet) -> Vec<String> {
    let mut out = vec![format!(
        "{name}: {} subspace(s), {} famil{}",
        set.subspaces.len(),
        set.families.len(),
        if set.families.len() == 1 { "y" } else { "ies" }
    )];
    out.extend(set.subspaces.iter().map(|s| format!("  {s:?}")));
    for f in &set.families {
        out.push(format!("  family {:?} ({} listed member(s))", f.family, f.members.len()));
    }
    out
}

pub fn run(cmd: &Command, cfg: &Config) -> Result<Outcome> {
    let mut o = Outcome::new();
    match cmd {
        Command::Classify { measure, directions } => {
            let (m, ls) = read_directions(directions, &read_measure(measure)?)?;
            let mut verdicts = classify_many(&m, &ls, cfg.execution())
                .into_iter()
                .collect::<Result<Vec<_>>>()?;
            verdicts.sort_by(|a, b| a.direction.cmp(&b.direction));
            o.input("measure", measure_to_json(&m));
            o.input("directions", directions_to_json(m.field(), &ls));
            o.text = verdicts.iter().map(verdict_line).collect();
            o.result = json!({"verdicts": verdicts.iter().map(DirectionVerdict::to_json).collect::<Vec<_>>()});
        }
        Command::Directions { measure } => {
            let m = read_measure(measure)?;
            let ne = nonergodic_concise(&m, cfg.enumeration_bound)?;
            let nw = nonwm_concise(&m)?;
            let eig: Vec<Value> = eigenvalues(&m)
                .into_iter()
                .map(|(i, k)| json!({"component": i, "kind": k.label()}))
                .collect();
            o.input("measure", measure_to_json(&m));
            o.text = concise_text("non-ergodic directions", &ne);
            o.text.extend(concise_text("non-weak-mixing directions", &nw));
            o.text.push(format!("eigenvalue components: {}", eig.len()));
            o.result = json!({"nonergodic": ne.to_json(), "nonwm": nw.to_json(), "eigenvalue_components": eig});
        }
        Command::Realize { directions } => {
            let (f, ls) = directions_from_json(&read_json(directions)?)?;
            o.input("directions", directions_to_json(&f, &ls));
            let r = realize(&ls, cfg.closure_cap)?;
            o.text = measure_text(&r.measure);
            o.text.extend(r.warnings.iter().map(|w| format!("warning: {w}")));
            o.text.push(format!("N_E = N_W = input: {}", r.verified));
            o.text.push(format!("torus image: N_E = N_W = input: {}", r.torus_verified));
            if !r.verified {
                o.failed_check = Some("realized measure does not reproduce the input".into());
            }
            let mut result = r.to_json();
            result["verification"] = json!(format!("N_E = N_W = input: {}", r.verified));
            o.result = result;
        }
        Command::Exp { measure } => {
            let m = read_measure(measure)?;
            o.input("measure", measure_to_json(&m));
            let e = m.exp(cfg.closure_cap)?;
            o.text = measure_text(&e);
            o.result = json!({"measure": measure_to_json(&e)});
        }
        Command::Convolve { measure, with } => {
            let a = read_measure(measure)?;
            let b = read_measure(with)?;
            let f = join(a.field(), b.field())?;
            let (a, b) = (a.embed(&f)?, b.embed(&f)?);
            o.input("measure", measure_to_json(&a));
            o.input("with", measure_to_json(&b));
            let c = a.convolve(&b)?;
            o.text = measure_text(&c);
            o.result = json!({"measure": measure_to_json(&c)});
        }
        Command::Restrict { measure, subgroup } => {
            let m = read_measure(measure)?;
            o.input("measure", measure_to_json(&m));
            let mut t = if m.is_torus() { m.clone() } else { m.pushforward_quotient()? };
            let mut result = Map::new();
            if let Some(path) = subgroup {
                let h = read_subgroup(path, m.dim())?;
                o.input("subgroup", json!({"generators": int_rows(h.generators())}));
                let (image, ident) = t.pushforward_subgroup(&h)?;
                result.insert("identification".into(), json!(int_rows(&ident)));
                t = image;
            }
            o.text = measure_text(&t);
            result.insert("measure".into(), measure_to_json(&t));
            o.result = Value::Object(result);
        }
        Command::Suspend { measure } => {
            let m = read_measure(measure)?;
            o.input("measure", measure_to_json(&m));
            let s = m.suspend()?;
            o.text = measure_text(&s);
            o.result = json!({"measure": measure_to_json(&s)});
        }
        Command::Decompose { measure } => {
            let m = read_measure(measure)?;
            o.input("measure", measure_to_json(&m));
            let parts = m.decompose();
            for (e, p) in parts.iter().enumerate() {
                o.text.push(format!("dimension {e}: {} component(s)", p.components().len()));
            }
            o.result = json!({
                "parts": parts.iter().enumerate()
                    .map(|(e, p)| json!({"dimension": e, "measure": measure_to_json(p)}))
                    .collect::<Vec<_>>(),
            });
        }
        Command::FourierCheck { measure, directions } => {
            let m = read_measure(measure)?;
            let (m, ls) = match directions {
                Some(p) => read_directions(p, &m)?,
                None => (m, Vec::new()),
            };
            o.input("measure", measure_to_json(&m));
            if !ls.is_empty() {
                o.input("directions", directions_to_json(m.field(), &ls));
            }
            fourier_check(&m, &ls, cfg, &mut o)?;
        }
        Command::Oracle { model, bundled } => {
            let models: Vec<(String, ActionModel)> = match (model, bundled) {
                (Some(p), _) => {
                    let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
                    vec![(name, model_from_json(&read_json(p)?)?)]
                }
                (None, Some(name)) => {
                    let found = bundled_models().into_iter().find(|(n, _)| n == name).ok_or_else(|| {
                        let names: Vec<&str> = bundled_models().iter().map(|(n, _)| *n).collect();
                        Error::InvalidInput(format!("no bundled model {name:?}; known: {}", names.join(", ")))
                    })?;
                    vec![(found.0.to_string(), found.1)]
                }
                (None, None) => bundled_models().into_iter().map(|(n, m)| (n.to_string(), m)).collect(),
            };
            oracle(&models, cfg, &mut o)?;
        }
        Command::Lint { measure } => {
            let m = read_measure(measure)?;
            o.input("measure", measure_to_json(&m));
            let warnings = admissibility_lint(&m)?;
            o.text = if warnings.is_empty() {
                vec!["no warnings".into()]
            } else {
                warnings
                    .iter()
                    .map(|w| format!("warning ({}) components {:?}: {}", w.code, w.components, w.message))
                    .collect()
            };
            o.result = json!({"warnings": warnings.iter().map(|w| w.to_json()).collect::<Vec<_>>()});
        }
    }
    Ok(o)
}

fn int_rows<T: ToString>(rows: &[Vec<T>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn read_subgroup(path: &Path, d: usize) -> Result<LatticeSubgroup> {
    let doc = read_json(path)?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(
        doc.get("generators")
            .cloned()
            .ok_or_else(|| Error::Parse("subgroup file needs \"generators\"".into()))?,
    )?;
    if let Some(r) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: r.len(),
        });
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(LatticeSubgroup::from_ints(d, &refs))
}

fn fourier_check(m: &SymbolicMeasure, ls: &[Subspace], cfg: &Config, o: &mut Outcome) -> Result<()> {
    let est = &cfg.estimator;
    let mut checks = Vec::new();
    if !m.is_modular() {
        // Transform at lattice points equals the transform of the Z^d image.
        let image = m.pushforward_quotient()?;
        let mut worst = 0.0f64;
        for n in lattice_box(m.dim(), cfg.grid.min(4)) {
            let a = ft_lattice(m, &n, &est.ft)?;
            let b = ft_lattice(&image, &n, &est.ft)?;
            worst = worst.max((a - b).norm());
        }
        let passed = worst < PUSHFORWARD_TOLERANCE;
        o.text.push(format!(
            "push-forward identity: max deviation {worst:.3e} ({})",
            if passed { "pass" } else { "FAIL" }
        ));
        if !passed && o.failed_check.is_none() {
            o.failed_check = Some(format!("push-forward identity deviates by {worst:e}"));
        }
        checks.push(json!({"check": "pushforward_identity", "tolerance": PUSHFORWARD_TOLERANCE, "max_deviation": worst, "passed": passed}));
    }
    for l in ls {
        let zero = zero_vector(m.field(), m.dim());
        let w = wiener_mass(m, l, &zero, est)?;
        let mass = representative_wall_mass(m, l, &zero, &est.ft)?;
        let passed = (w.estimate - mass).abs() <= est.tolerance;
        o.text.push(format!(
            "{l:?}: Wiener estimate {:.4} vs wall mass {mass:.4} ({})",
            w.estimate,
            if passed { "pass" } else { "FAIL" }
        ));
        if !passed && o.failed_check.is_none() {
            o.failed_check = Some(format!("Wiener estimate off along {l:?}"));
        }
        let rows = rajchman_probe(m, l, &DECAY_RADII, est)?;
        for r in &rows {
            o.text.push(format!("  r = {:>6}: sup |σ̂| = {:.3e}", r.radius, r.sup));
        }
        let families: Vec<Value> = directional_eigenvalues(m, l)?.iter().map(|e| e.to_json()).collect();
        checks.push(json!({
            "check": "wiener_mass",
            "direction": l.to_json(),
            "tolerance": est.tolerance,
            "estimate": w.to_json(),
            "wall_mass": mass,
            "passed": passed,
            "decay": decay_table_json(&rows),
            "eigenvalue_families": families,
        }));
    }
    if checks.is_empty() {
        o.text.push("nothing to check: pass --directions for wall estimates".into());
    }
    o.result = json!({"checks": checks, "estimator": est.to_json()});
    Ok(())
}

fn oracle(models: &[(String, ActionModel)], cfg: &Config, o: &mut Outcome) -> Result<()> {
    let tol = cfg.oracle_tolerance();
    let mut reports = Vec::new();
    for (name, model) in models {
        let r = crosscheck(model, cfg.grid, tol, cfg.execution())?;
        let grams = gram_check(model, GRAM_BOUND)?;
        let gram_ok = grams.iter().all(|g| g.min_eigenvalue >= -GRAM_TOLERANCE);
        o.text.push(format!(
            "{name}: {} points, max error {:.3e}, {} mismatch(es), Gram {}",
            r.points,
            r.max_error,
            r.failure_count,
            if gram_ok { "PSD" } else { "NOT PSD" }
        ));
        if (!r.passed() || !gram_ok) && o.failed_check.is_none() {
            o.failed_check = Some(format!("{name}: cross-check failed"));
        }
        let mut doc = r.to_json();
        doc["name"] = json!(name);
        doc["model"] = model_to_json(model);
        doc["gram"] = Value::Array(
            grams
                .iter()
                .map(|g| json!({"observable": g.observable, "size": g.size, "min_eigenvalue": g.min_eigenvalue}))
                .collect(),
        );
        reports.push(doc);
    }
    o.input("models", Value::Array(models.iter().map(|(_, m)| model_to_json(m)).collect()));
    o.result = json!({"reports": reports, "tolerance": tol, "grid": cfg.grid});
    Ok(())
}
