//! Input documents: a group, its generators and optional analysis parameters.
//!
//! ```json
//! {
//!   "schema": "realtrace/1",
//!   "group": {"family": "SU", "n": 2},
//!   "generators": [[[[1, 0], [0, 0], [0, 0]], ...], ...],
//!   "labels": ["a", "b"],
//!   "params": {"words": 6, "tol": 1e-9, "seed": 0}
//! }
//! ```
//!
//! Complex entries are `[re, im]`, quaternion entries `[a, b, c, d]`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use realtrace::algebra::{Field, FieldKind, Matrix, Quaternion};
use realtrace::groups::{group_membership, Family, GeneratorSet, GroupSpec};

use crate::error::CliError;
use crate::format::num;

pub const SCHEMA: &str = "realtrace/1";

/// Analysis parameters; every field may be absent from the document.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParamOverrides {
    pub words: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generators {
    Complex(GeneratorSet<Complex64>),
    Quaternion(GeneratorSet<Quaternion>),
}

impl Generators {
    pub fn group(&self) -> &GroupSpec {
        match self {
            Generators::Complex(s) => s.group(),
            Generators::Quaternion(s) => s.group(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub family: Family,
    pub n: usize,
    pub generators: Generators,
    pub params: ParamOverrides,
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{path}: {msg}"))
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::SU => "SU",
        Family::U => "U",
        Family::Sp => "Sp",
        Family::SO => "SO",
        Family::O => "O",
        Family::Identity => "I",
    }
}

fn parse_family(s: &str) -> Option<Family> {
    Some(match s {
        "SU" => Family::SU,
        "U" => Family::U,
        "Sp" => Family::Sp,
        "SO" => Family::SO,
        "O" => Family::O,
        _ => return None,
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| invalid(path, format!("missing field `{key}`")))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| invalid(path, "expected an array"))
}

fn parse_entry<T: Field>(v: &Value, path: &str) -> Result<T, CliError> {
    let parts = as_array(v, path)?;
    let want = 2 * T::CDIM;
    if parts.len() != want {
        return Err(invalid(path, format!("expected {want} numbers, got {}", parts.len())));
    }
    let mut xs = [0.0; 4];
    for (i, p) in parts.iter().enumerate() {
        xs[i] = p
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| invalid(&format!("{path}[{i}]"), "expected a finite number"))?;
    }
    let q = Quaternion::new(xs[0], xs[1], xs[2], xs[3]);
    Ok(T::from_cvec(Field::to_cvec(q)))
}

fn parse_matrix<T: Field>(v: &Value, size: usize, path: &str) -> Result<Matrix<T>, CliError> {
    let rows = as_array(v, path)?;
    if rows.len() != size {
        return Err(invalid(path, format!("expected {size} rows, got {}", rows.len())));
    }
    let mut data = Vec::with_capacity(size * size);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = as_array(row, &rp)?;
        if row.len() != size {
            return Err(invalid(&rp, format!("expected {size} entries, got {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            data.push(parse_entry::<T>(e, &format!("{rp}[{j}]"))?);
        }
    }
    Ok(Matrix::new(size, size, data)?)
}

fn parse_set<T: Field>(
    group: GroupSpec,
    raw: &[Value],
    labels: Option<Vec<String>>,
    tol: f64,
) -> Result<GeneratorSet<T>, CliError> {
    if raw.is_empty() {
        return Err(invalid("generators", "empty generator list"));
    }
    let size = group.size();
    let mut gens = Vec::with_capacity(raw.len());
    for (k, v) in raw.iter().enumerate() {
        let path = format!("generators[{k}]");
        let g = parse_matrix::<T>(v, size, &path)?;
        let r = group_membership(&g, &group, tol)?;
        if !r.member {
            return Err(invalid(
                &path,
                format!("not in {group}: membership residual {:.3e} > tol {tol:.3e}", r.residual),
            ));
        }
        gens.push(g);
    }
    GeneratorSet::new_unchecked(group, gens, labels).map_err(|e| invalid("labels", e))
}

fn parse_params(v: Option<&Value>) -> Result<ParamOverrides, CliError> {
    let Some(v) = v else {
        return Ok(ParamOverrides::default());
    };
    let obj = v.as_object().ok_or_else(|| invalid("params", "expected an object"))?;
    let mut p = ParamOverrides::default();
    for (key, val) in obj {
        let path = format!("params.{key}");
        match key.as_str() {
            "words" => {
                p.words = Some(
                    val.as_u64()
                        .ok_or_else(|| invalid(&path, "expected a non-negative integer"))? as usize,
                )
            }
            "tol" => {
                let t = val.as_f64().filter(|t| *t > 0.0 && t.is_finite());
                p.tol = Some(t.ok_or_else(|| invalid(&path, "expected a positive number"))?);
            }
            "seed" => {
                p.seed = Some(
                    val.as_u64()
                        .ok_or_else(|| invalid(&path, "expected a non-negative integer"))?,
                )
            }
            _ => return Err(invalid(&path, "unknown parameter")),
        }
    }
    Ok(p)
}

/// Parses and validates a document. Membership is checked with
/// `tol_override` if given, else the document's `params.tol`, else `1e-9`.
pub fn parse_input(text: &str, tol_override: Option<f64>) -> Result<InputDocument, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| invalid("document", e))?;
    let obj = root
        .as_object()
        .ok_or_else(|| invalid("document", "expected an object"))?;
    let schema = field(obj, "schema", "document")?;
    if schema.as_str() != Some(SCHEMA) {
        return Err(invalid("schema", format!("expected \"{SCHEMA}\", got {schema}")));
    }
    let group = field(obj, "group", "document")?
        .as_object()
        .ok_or_else(|| invalid("group", "expected an object"))?;
    let fam = field(group, "family", "group")?;
    let family = fam.as_str().and_then(parse_family).ok_or_else(|| {
        invalid(
            "group.family",
            format!("unknown family {fam}; expected SU, U, Sp, SO or O"),
        )
    })?;
    let n = field(group, "n", "group")?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| invalid("group.n", "expected an integer >= 1"))? as usize;
    let params = parse_params(obj.get("params"))?;
    let labels = match obj.get("labels") {
        None => None,
        Some(v) => Some(
            as_array(v, "labels")?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| invalid(&format!("labels[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let raw = as_array(field(obj, "generators", "document")?, "generators")?;
    let tol = tol_override.or(params.tol).unwrap_or(crate::DEFAULT_TOL);
    let spec = GroupSpec::classical(family, n, 1);
    let generators = match spec.field() {
        FieldKind::Complex => Generators::Complex(parse_set(spec, raw, labels, tol)?),
        FieldKind::Quaternion => Generators::Quaternion(parse_set(spec, raw, labels, tol)?),
    };
    Ok(InputDocument {
        family,
        n,
        generators,
        params,
    })
}

/// An entry as `[re, im]` or `[a, b, c, d]`.
pub fn entry_json<T: Field>(x: T) -> Value {
    let [z, w] = x.to_cvec();
    match T::KIND {
        FieldKind::Complex => json!([num(z.re), num(z.im)]),
        FieldKind::Quaternion => {
            let q: Quaternion = Field::from_cvec([z, w]);
            Value::Array(q.to_array().into_iter().map(num).collect())
        }
    }
}

pub fn matrix_json<T: Field>(m: &Matrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&x| entry_json(x)).collect()))
            .collect(),
    )
}

/// Serializes a generator set as an input document.
pub fn input_json<T: Field>(family: Family, n: usize, set: &GeneratorSet<T>, params: &ParamOverrides) -> Value {
    let mut p = Map::new();
    if let Some(w) = params.words {
        p.insert("words".into(), json!(w));
    }
    if let Some(t) = params.tol {
        p.insert("tol".into(), num(t));
    }
    if let Some(s) = params.seed {
        p.insert("seed".into(), json!(s));
    }
    json!({
        "schema": SCHEMA,
        "group": {"family": family_name(family), "n": n},
        "generators": set.gens().iter().map(matrix_json).collect::<Vec<_>>(),
        "labels": set.labels(),
        "params": p,
    })
}
