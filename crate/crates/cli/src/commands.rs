use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::{json, Value};

use realtrace::algebra::{Field, HMatrix, Quaternion};
use realtrace::groups::{group_membership, Family, GeneratorSet};
use realtrace::invariants::{detect, synthesize as synth, SynthesisRecipe, TargetKind};
use realtrace::isometry::{classify, nonelementary_heuristic, Elementarity, IsometryKind};
use realtrace::traces::{criterion_i, criterion_ii, realness_report, word_ball, RealnessReport, Verdict};

use crate::document::{family_name, input_json, matrix_json, parse_input, Generators, InputDocument, ParamOverrides};
use crate::error::CliError;
use crate::format::num;
use crate::{DEFAULT_SEED, DEFAULT_TOL, DEFAULT_WORDS, VERSION};

/// A command's result: the structured report, its text rendering and any
/// warnings worth repeating on stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub report: Value,
    pub text: String,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AnalyzeOptions {
    pub words: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub skip_detect: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Params {
    words: usize,
    tol: f64,
    seed: u64,
}

impl Params {
    fn resolve(opts: &AnalyzeOptions, doc: &ParamOverrides) -> Self {
        Params {
            words: opts.words.or(doc.words).unwrap_or(DEFAULT_WORDS),
            tol: opts.tol.or(doc.tol).unwrap_or(DEFAULT_TOL),
            seed: opts.seed.or(doc.seed).unwrap_or(DEFAULT_SEED),
        }
    }

    fn json(&self) -> Value {
        json!({"words": self.words, "tol": num(self.tol), "seed": self.seed})
    }
}

fn read_input(path: &Path, tol: Option<f64>) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: cannot read: {e}", path.display())))?;
    parse_input(&text, tol)
}

fn write_file(path: &Path, value: &Value) -> Result<(), CliError> {
    std::fs::write(path, crate::format::to_canonical(value))
        .map_err(|e| CliError::Validation(format!("{}: cannot write: {e}", path.display())))
}

fn kind_name(k: IsometryKind) -> &'static str {
    match k {
        IsometryKind::Loxodromic => "loxodromic",
        IsometryKind::Parabolic => "parabolic",
        IsometryKind::Elliptic => "elliptic",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Real => "real",
        Verdict::NonReal => "non_real",
    }
}

fn realness_json(r: &RealnessReport, labels: &[String]) -> Value {
    json!({
        "verdict": verdict_name(r.verdict),
        "max_im": num(r.max_im),
        "max_ratio": num(r.max_ratio),
        "offender": r.offender.as_ref().map(|w| w.render(labels)),
        "words_checked": r.words_checked,
        "truncated": r.truncated,
        "max_len": r.max_len,
        "tol": num(r.tol),
    })
}

fn header(command: &str, doc: &InputDocument, p: &Params) -> Value {
    json!({
        "tool": "realtrace",
        "version": VERSION,
        "command": command,
        "group": format!("{}", doc.generators.group()),
        "family": family_name(doc.family),
        "n": doc.n,
        "params": p.json(),
    })
}

fn analyze_set<T: Field>(
    set: &GeneratorSet<T>,
    p: &Params,
    skip_detect: bool,
    report: &mut serde_json::Map<String, Value>,
    text: &mut String,
    warnings: &mut Vec<String>,
) -> Result<(), CliError> {
    let labels = set.labels();
    let group = set.group();

    let mut members = Vec::new();
    let mut classes = Vec::new();
    for (g, label) in set.gens().iter().zip(labels) {
        let m = group_membership(g, group, p.tol)?;
        members.push(json!({
            "label": label,
            "member": m.member,
            "residual": num(m.residual),
            "form": num(m.form),
            "det": num(m.det),
        }));
        let c = classify(g, group, p.tol)?;
        classes.push(json!({
            "label": label,
            "kind": kind_name(c.kind),
            "margin": num(c.margin),
            "spectral_radius": num(c.spectral_radius),
        }));
        let _ = writeln!(
            text,
            "generator {label}: {} (membership residual {:.3e}, spectral radius {:.6})",
            kind_name(c.kind),
            m.residual,
            c.spectral_radius
        );
    }
    report.insert("membership".into(), Value::Array(members));
    report.insert("isometry".into(), Value::Array(classes));

    let elem = match nonelementary_heuristic(set, p.words, p.tol) {
        Elementarity::Nonelementary {
            first,
            second,
            separation,
        } => {
            let _ = writeln!(
                text,
                "nonelementary: yes ({} and {} have disjoint fixed points, separation {:.3e})",
                first.render(labels),
                second.render(labels),
                separation
            );
            json!({
                "verdict": "nonelementary",
                "first": first.render(labels),
                "second": second.render(labels),
                "separation": num(separation),
            })
        }
        Elementarity::Inconclusive => {
            let _ = writeln!(text, "nonelementary: inconclusive within word length {}", p.words);
            json!({"verdict": "inconclusive"})
        }
    };
    report.insert("nonelementarity".into(), elem);

    let real = realness_report(set, p.words, p.tol);
    let _ = writeln!(
        text,
        "traces: {} over {} words up to length {} (max |Im tr| {:.3e}{})",
        verdict_name(real.verdict),
        real.words_checked,
        real.max_len,
        real.max_im,
        real.offender
            .as_ref()
            .filter(|_| real.verdict == Verdict::NonReal)
            .map(|w| format!(", at {}", w.render(labels)))
            .unwrap_or_default()
    );
    report.insert("realness".into(), realness_json(&real, labels));

    let skip_reason = if real.verdict == Verdict::NonReal {
        Some("traces are not real on the word ball; detection skipped")
    } else if skip_detect {
        Some("detection skipped on request")
    } else {
        None
    };
    let detection = match skip_reason {
        Some(reason) => {
            warnings.push(reason.to_string());
            let _ = writeln!(text, "detection: skipped");
            json!({"skipped": true, "reason": reason})
        }
        None => {
            let d = detect(set, p.words, p.tol)?;
            warnings.extend(d.warnings.iter().cloned());
            let _ = writeln!(
                text,
                "detection: {} (block residual {:.3e}, conjugator residual {:.3e})",
                d.kind, d.residual, d.conjugator_residual
            );
            json!({
                "skipped": false,
                "kind": d.kind.to_string(),
                "conjugator": matrix_json(&d.conjugator),
                "residual": num(d.residual),
                "conjugator_residual": num(d.conjugator_residual),
                "schur_types": d.schur_types.iter().map(|s| s.name()).collect::<Vec<_>>(),
                "blocks": d.blocks.iter().map(|b| json!({
                    "dim": b.dim,
                    "positive": b.positive,
                    "negative": b.negative,
                    "schur_type": b.schur_type.name(),
                })).collect::<Vec<_>>(),
                "warnings": d.warnings,
                "diagnostics": d.diagnostics,
            })
        }
    };
    report.insert("detection".into(), detection);
    Ok(())
}

/// Norms of the criterion I and II witnesses of `g`; the second is absent
/// for `n = 1`.
fn witnesses(g: &HMatrix, n: usize, tol: f64) -> Result<(f64, Option<f64>), CliError> {
    let w1 = criterion_i(g, tol)?.norm();
    let w2 = if n >= 2 {
        Some(criterion_ii(g, tol)?.iter().map(|q| q.norm()).fold(0.0, f64::max))
    } else {
        None
    };
    Ok((w1, w2))
}

fn witness_rows(set: &GeneratorSet<Quaternion>, n: usize, tol: f64) -> Result<Vec<Value>, CliError> {
    set.gens()
        .iter()
        .zip(set.labels())
        .map(|(g, label)| {
            let (w1, w2) = witnesses(g, n, tol)?;
            Ok(json!({"label": label, "criterion_i": num(w1), "criterion_ii": w2.map(num)}))
        })
        .collect()
}

/// Membership → classification → nonelementarity → trace realness →
/// block detection, plus criterion witnesses for `Sp(n,1)` inputs.
pub fn analyze(path: &Path, opts: &AnalyzeOptions) -> Result<Output, CliError> {
    let doc = read_input(path, opts.tol)?;
    let p = Params::resolve(opts, &doc.params);
    let mut report = match header("analyze", &doc, &p) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    let mut text = format!("{} with {} generators\n", doc.generators.group(), generator_count(&doc));
    let mut warnings = Vec::new();
    match &doc.generators {
        Generators::Complex(set) => analyze_set(set, &p, opts.skip_detect, &mut report, &mut text, &mut warnings)?,
        Generators::Quaternion(set) => {
            analyze_set(set, &p, opts.skip_detect, &mut report, &mut text, &mut warnings)?;
            let rows = witness_rows(set, doc.n, p.tol)?;
            for r in &rows {
                let _ = writeln!(
                    text,
                    "criteria {}: I {:.6e}{}",
                    r["label"].as_str().unwrap_or(""),
                    r["criterion_i"].as_f64().unwrap_or(f64::NAN),
                    r["criterion_ii"]
                        .as_f64()
                        .map(|x| format!(", II {x:.6e}"))
                        .unwrap_or_default()
                );
            }
            report.insert("criteria".into(), Value::Array(rows));
        }
    }
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    report.insert("warnings".into(), json!(warnings));
    Ok(Output {
        report: Value::Object(report),
        text,
        warnings,
    })
}

fn generator_count(doc: &InputDocument) -> usize {
    match &doc.generators {
        Generators::Complex(s) => s.len(),
        Generators::Quaternion(s) => s.len(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesizeOptions {
    /// `SU` or `Sp`.
    pub family: String,
    pub n: usize,
    /// `real_form` or `complex_line`.
    pub kind: String,
    pub m: Option<usize>,
    pub seed: u64,
    pub generators: usize,
    pub out: PathBuf,
}

/// `out.json` → `out.hidden.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.hidden.json"))
}

fn recipe_from(opts: &SynthesizeOptions) -> Result<SynthesisRecipe, CliError> {
    let family = match opts.family.as_str() {
        "SU" => Family::SU,
        "Sp" => Family::Sp,
        f => {
            return Err(CliError::Validation(format!(
                "invalid recipe: family must be SU or Sp, got `{f}`"
            )))
        }
    };
    let target = match (opts.kind.as_str(), opts.m) {
        ("real_form", Some(m)) => TargetKind::RealForm(m),
        ("real_form", None) => return Err(CliError::Validation("invalid recipe: real_form needs --m".into())),
        ("complex_line", None) => TargetKind::ComplexLine,
        ("complex_line", Some(_)) => {
            return Err(CliError::Validation("invalid recipe: complex_line takes no --m".into()))
        }
        (k, _) => {
            return Err(CliError::Validation(format!(
                "invalid recipe: kind must be real_form or complex_line, got `{k}`"
            )))
        }
    };
    let mut r = SynthesisRecipe::new(family, opts.n, target, opts.seed);
    r.generators = opts.generators;
    r.validate()?;
    Ok(r)
}

fn recipe_json(r: &SynthesisRecipe, seed: u64) -> Value {
    let (kind, m) = match r.target {
        TargetKind::RealForm(m) => ("real_form", Some(m)),
        TargetKind::ComplexLine => ("complex_line", None),
    };
    json!({
        "family": family_name(r.family),
        "n": r.n,
        "kind": kind,
        "m": m,
        "seed": seed,
        "block_seed": r.block_seed,
        "hide_seed": r.hide_seed,
        "generators": r.generators,
    })
}

fn write_synthesis<T: Field>(r: &SynthesisRecipe, opts: &SynthesizeOptions) -> Result<Value, CliError> {
    let s = synth::<T>(r)?;
    let params = ParamOverrides {
        seed: Some(opts.seed),
        ..Default::default()
    };
    write_file(&opts.out, &input_json(r.family, r.n, &s.gens, &params))?;
    let sidecar = json!({
        "schema": "realtrace/hidden/1",
        "recipe": recipe_json(r, opts.seed),
        "expected_kind": match r.target {
            TargetKind::RealForm(m) => format!("real_form({m})"),
            TargetKind::ComplexLine => "complex_line".to_string(),
        },
        "hidden": matrix_json(&s.hidden),
        "block_group": format!("{}", s.block_group),
        "block_generators": s.block_gens.iter().map(matrix_json).collect::<Vec<_>>(),
    });
    write_file(&sidecar_path(&opts.out), &sidecar)?;
    Ok(sidecar)
}

/// Writes a seeded hidden-block instance to `opts.out` and its hidden
/// conjugator to the `.hidden.json` sidecar.
pub fn synthesize(opts: &SynthesizeOptions) -> Result<Output, CliError> {
    let r = recipe_from(opts)?;
    let sidecar = match r.family {
        Family::Sp => write_synthesis::<Quaternion>(&r, opts)?,
        _ => write_synthesis::<Complex64>(&r, opts)?,
    };
    let side = sidecar_path(&opts.out);
    let report = json!({
        "tool": "realtrace",
        "version": VERSION,
        "command": "synthesize",
        "recipe": sidecar["recipe"],
        "expected_kind": sidecar["expected_kind"],
        "block_group": sidecar["block_group"],
        "document": opts.out.display().to_string(),
        "sidecar": side.display().to_string(),
    });
    let text = format!(
        "wrote {} ({} in {}, expected {})\nwrote {}\n",
        opts.out.display(),
        sidecar["block_group"].as_str().unwrap_or(""),
        r.ambient(),
        sidecar["expected_kind"].as_str().unwrap_or(""),
        side.display()
    );
    Ok(Output {
        report,
        text,
        warnings: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Minimum {
    value: f64,
    word: usize,
}

impl Minimum {
    fn new() -> Self {
        Minimum {
            value: f64::INFINITY,
            word: 0,
        }
    }

    fn update(&mut self, value: f64, word: usize) {
        if value < self.value {
            *self = Minimum { value, word };
        }
    }
}

/// Criterion I and II witness norms over the word ball of an `Sp(n,1)`
/// input. A witness below `tol` is reported as a warning.
pub fn criteria(path: &Path, opts: &AnalyzeOptions) -> Result<Output, CliError> {
    let doc = read_input(path, opts.tol)?;
    let p = Params::resolve(opts, &doc.params);
    let Generators::Quaternion(set) = &doc.generators else {
        return Err(CliError::Validation(format!(
            "group: criteria needs an Sp(n,1) input, got {}",
            doc.generators.group()
        )));
    };
    let labels = set.labels();
    // words accumulate rounding, so their membership is checked loosely
    let word_tol = p.tol.max(1e-6);
    let rows = witness_rows(set, doc.n, word_tol)?;
    let (mut min1, mut min2) = (Minimum::new(), Minimum::new());
    let mut words = Vec::new();
    for (w, g) in word_ball(set, p.words) {
        let (w1, w2) = witnesses(&g, doc.n, word_tol)?;
        min1.update(w1, words.len());
        if let Some(w2) = w2 {
            min2.update(w2, words.len());
        }
        words.push(w);
    }
    let mut warnings = Vec::new();
    let mut text = format!(
        "{} criteria over {} words up to length {}\n",
        set.group(),
        words.len(),
        p.words
    );
    for r in &rows {
        let _ = writeln!(
            text,
            "{}: I {:.6e}{}",
            r["label"].as_str().unwrap_or(""),
            r["criterion_i"].as_f64().unwrap_or(f64::NAN),
            r["criterion_ii"]
                .as_f64()
                .map(|x| format!(", II {x:.6e}"))
                .unwrap_or_default()
        );
    }
    let mut minimum = |name: &str, m: Minimum| -> Value {
        if words.is_empty() || !m.value.is_finite() {
            return Value::Null;
        }
        let word = words[m.word].render(labels);
        let flagged = m.value < p.tol;
        let _ = writeln!(
            text,
            "min {name}: {:.6e} at {word}{}",
            m.value,
            if flagged { " BELOW TOL" } else { "" }
        );
        if flagged {
            warnings.push(format!(
                "criterion {name} witness {:.3e} at {word} is below tol {:.3e}; this should never vanish",
                m.value, p.tol
            ));
        }
        json!({"value": num(m.value), "word": word, "flagged": flagged})
    };
    let min_i = minimum("I", min1);
    let min_ii = minimum("II", min2);
    for w in &warnings {
        let _ = writeln!(text, "WARNING: {w}");
    }
    let mut report = match header("criteria", &doc, &p) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    report.insert("generators".into(), Value::Array(rows));
    report.insert("words_checked".into(), json!(words.len()));
    report.insert("min_criterion_i".into(), min_i);
    report.insert("min_criterion_ii".into(), min_ii);
    report.insert("flagged".into(), json!(!warnings.is_empty()));
    report.insert("warnings".into(), json!(warnings));
    Ok(Output {
        report: Value::Object(report),
        text,
        warnings,
    })
}
