//! JSON manifests: raw serde shapes plus validation into engine types.
//! Every validation failure carries the path of the offending field.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use specialherm::deformation::{DeformationFamily, MetricFamily};
use specialherm::form::MAX_DIM;
use specialherm::metrics::MetricForm;
use specialherm::{BiForm, Error, Factor, HoloMap, Monomial, Point, Poly, Scalar, Var, VecForm};

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

type Res<T> = std::result::Result<T, InputError>;

/// `[[re_num, re_den], [im_num, im_den]]`.
type RawScalar = [[i64; 2]; 2];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default)]
    holo: Vec<i64>,
    #[serde(default)]
    anti: Vec<i64>,
    coeff: RawScalar,
    #[serde(default)]
    monomial: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVecTerm {
    target: i64,
    #[serde(default)]
    holo: Vec<i64>,
    #[serde(default)]
    anti: Vec<i64>,
    coeff: RawScalar,
    #[serde(default)]
    monomial: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeformation {
    phi: Vec<RawVecTerm>,
    omega_t: Option<Vec<RawTerm>>,
    k: Option<Vec<usize>>,
    #[serde(default)]
    functions: Vec<Vec<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    #[serde(default)]
    center_dim: usize,
    /// One-based index of the nonvanishing line coordinate.
    index: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlowup {
    omega: Vec<RawTerm>,
    k: usize,
    chart: Option<RawChart>,
    points: Vec<Vec<RawScalar>>,
    cap: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    format: u32,
    dim: usize,
    truncation_order: Option<u32>,
    #[serde(default)]
    seed: u64,
    metric: Vec<RawTerm>,
    #[serde(default)]
    sample_points: Vec<Vec<RawScalar>>,
    deformation: Option<RawDeformation>,
    blowup: Option<RawBlowup>,
}

pub const DEFAULT_CAP: u32 = 64;

pub struct Deformation {
    pub family: DeformationFamily,
    pub metric_family: MetricFamily,
    pub powers: Vec<usize>,
    pub functions: Vec<Poly>,
}

pub struct Blowup {
    pub omega: BiForm,
    pub k: usize,
    pub chart: Option<HoloMap>,
    pub points: Vec<Point>,
    pub cap: u32,
}

pub struct Manifest {
    pub dim: usize,
    pub truncation_order: u32,
    pub seed: u64,
    pub metric: MetricForm,
    pub deformation: Option<Deformation>,
    pub blowup: Option<Blowup>,
}

/// Which polynomial variables a field may use besides `z`, `zb`.
#[derive(Clone, Copy)]
struct Allowed {
    t: bool,
}

fn scalar(raw: &RawScalar, path: &str) -> Res<Scalar> {
    for (part, [_, den]) in ["re", "im"].iter().zip(raw) {
        if *den == 0 {
            return Err(InputError::new(format!("{path}.{part}"), "zero denominator"));
        }
    }
    Ok(Scalar::from_parts((raw[0][0], raw[0][1]), (raw[1][0], raw[1][1])))
}

fn index(i: i64, dim: usize, path: &str) -> Res<u8> {
    if i < 1 || i as usize > dim {
        return Err(InputError::new(path, format!("index {i} outside 1..={dim}")));
    }
    Ok((i - 1) as u8)
}

fn monomial(raw: &BTreeMap<String, u32>, dim: usize, allowed: Allowed, path: &str) -> Res<Monomial> {
    let mut pairs = Vec::new();
    for (name, &e) in raw {
        let p = format!("{path}.monomial.{name}");
        let v = Var::parse(name).ok_or_else(|| InputError::new(&p, "unknown variable"))?;
        match v {
            Var::Z(i) | Var::Zb(i) if i as usize >= dim => {
                return Err(InputError::new(&p, format!("index {} outside 1..={dim}", i as usize + 1)))
            }
            Var::T if !allowed.t => return Err(InputError::new(&p, "t is not allowed here")),
            Var::N => return Err(InputError::new(&p, "N is reserved for the blow-up parameter")),
            _ => {}
        }
        if e > 0 {
            pairs.push((v, e));
        }
    }
    Ok(Monomial::from_pairs(pairs))
}

fn term(
    holo: &[i64],
    anti: &[i64],
    coeff: &RawScalar,
    mono: &BTreeMap<String, u32>,
    dim: usize,
    allowed: Allowed,
    path: &str,
) -> Res<BiForm> {
    let mut factors = Vec::new();
    for (k, &i) in holo.iter().enumerate() {
        factors.push(Factor::Dz(index(i, dim, &format!("{path}.holo[{k}]"))?));
    }
    for (k, &i) in anti.iter().enumerate() {
        factors.push(Factor::Dzb(index(i, dim, &format!("{path}.anti[{k}]"))?));
    }
    let mut seen = factors.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != factors.len() {
        return Err(InputError::new(path, "repeated differential"));
    }
    let c = Poly::term(scalar(coeff, &format!("{path}.coeff"))?, monomial(mono, dim, allowed, path)?);
    Ok(BiForm::from_factors(dim, &factors, c))
}

fn form(raw: &[RawTerm], dim: usize, allowed: Allowed, path: &str) -> Res<BiForm> {
    let mut out = BiForm::zero(dim);
    for (k, t) in raw.iter().enumerate() {
        out.add_assign_ref(&term(&t.holo, &t.anti, &t.coeff, &t.monomial, dim, allowed, &format!("{path}[{k}]"))?);
    }
    Ok(out)
}

fn point(raw: &[RawScalar], dim: usize, path: &str) -> Res<Point> {
    if raw.len() != dim {
        return Err(InputError::new(path, format!("expected {dim} coordinates, found {}", raw.len())));
    }
    let coords =
        raw.iter().enumerate().map(|(k, s)| scalar(s, &format!("{path}[{k}]"))).collect::<Res<Vec<_>>>()?;
    Ok(Point::new(coords))
}

fn points(raw: &[Vec<RawScalar>], dim: usize, path: &str) -> Res<Vec<Point>> {
    raw.iter().enumerate().map(|(k, p)| point(p, dim, &format!("{path}[{k}]"))).collect()
}

fn engine_error(path: &str, e: Error) -> InputError {
    InputError::new(path, e.to_string())
}

fn metric(raw: &RawManifest, dim: usize) -> Res<MetricForm> {
    let omega = form(&raw.metric, dim, Allowed { t: false }, "metric")?;
    let pts = if raw.sample_points.is_empty() {
        vec![Point::origin(dim)]
    } else {
        points(&raw.sample_points, dim, "sample_points")?
    };
    MetricForm::new(omega, pts).map_err(|e| match e {
        Error::NotPositive { index } if !raw.sample_points.is_empty() => {
            InputError::new(format!("sample_points[{index}]"), "metric is not positive definite at this point")
        }
        Error::NotPositive { .. } => InputError::new("metric", "not positive definite at the origin"),
        other => engine_error("metric", other),
    })
}

fn deformation(raw: &RawDeformation, dim: usize, trunc: u32, base: &MetricForm) -> Res<Deformation> {
    let allowed = Allowed { t: true };
    let mut components = vec![BiForm::zero(dim); dim];
    for (k, t) in raw.phi.iter().enumerate() {
        let path = format!("deformation.phi[{k}]");
        let target = index(t.target, dim, &format!("{path}.target"))? as usize;
        let f = term(&t.holo, &t.anti, &t.coeff, &t.monomial, dim, allowed, &path)?;
        components[target].add_assign_ref(&f);
    }
    let phi = VecForm::new(dim, 1, components).map_err(|e| engine_error("deformation.phi", e))?;
    let family = DeformationFamily::new(phi, trunc).map_err(|e| engine_error("deformation.phi", e))?;
    let omega_t = match &raw.omega_t {
        Some(f) => form(f, dim, allowed, "deformation.omega_t")?,
        None => base.omega().clone(),
    };
    let metric_family =
        MetricFamily::new(omega_t, base.clone()).map_err(|e| engine_error("deformation.omega_t", e))?;
    let powers = match &raw.k {
        Some(ks) => {
            for (i, &k) in ks.iter().enumerate() {
                if k < 1 || k + 1 > dim {
                    return Err(InputError::new(format!("deformation.k[{i}]"), format!("power {k} outside 1..={}", dim - 1)));
                }
            }
            ks.clone()
        }
        None => (1..dim).collect(),
    };
    let mut functions = Vec::new();
    for (i, f) in raw.functions.iter().enumerate() {
        let path = format!("deformation.functions[{i}]");
        let g = form(f, dim, allowed, &path)?;
        if !g.is_pure(0, 0) {
            return Err(InputError::new(path, "functions take no differentials"));
        }
        functions.push(g.coefficient(&specialherm::Basis::empty()));
    }
    Ok(Deformation { family, metric_family, powers, functions })
}

fn blowup(raw: &RawBlowup, dim: usize) -> Res<Blowup> {
    let omega = form(&raw.omega, dim, Allowed { t: false }, "blowup.omega")?;
    if raw.k < 1 || raw.k + 1 > dim {
        return Err(InputError::new("blowup.k", format!("power {} outside 1..={}", raw.k, dim.saturating_sub(1))));
    }
    let chart = match &raw.chart {
        Some(c) => Some(
            HoloMap::blowup_chart(dim, c.center_dim, c.index.wrapping_sub(1))
                .map_err(|e| engine_error("blowup.chart", e))?,
        ),
        None => None,
    };
    if raw.points.is_empty() {
        return Err(InputError::new("blowup.points", "at least one point is required"));
    }
    let points = points(&raw.points, dim, "blowup.points")?;
    Ok(Blowup { omega, k: raw.k, chart, points, cap: raw.cap.unwrap_or(DEFAULT_CAP) })
}

impl Manifest {
    pub fn parse(text: &str) -> Res<Manifest> {
        let raw: RawManifest = serde_json::from_str(text)
            .map_err(|e| InputError::new(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        if raw.format != FORMAT {
            return Err(InputError::new("format", format!("unsupported format {} (expected {FORMAT})", raw.format)));
        }
        let dim = raw.dim;
        if dim == 0 || dim > MAX_DIM {
            return Err(InputError::new("dim", format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        let truncation_order = raw.truncation_order.unwrap_or(2);
        let metric = metric(&raw, dim)?;
        let deformation = match &raw.deformation {
            Some(d) => Some(deformation(d, dim, truncation_order, &metric)?),
            None => None,
        };
        let blowup = match &raw.blowup {
            Some(b) => Some(blowup(b, dim)?),
            None => None,
        };
        Ok(Manifest { dim, truncation_order, seed: raw.seed, metric, deformation, blowup })
    }
}
