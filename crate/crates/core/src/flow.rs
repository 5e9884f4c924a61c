//! Vector fields on the unit torus and their time-T integration with lift tracking.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::homology::MAX_DIM;

pub type Point = [f64; MAX_DIM];

#[derive(Clone, Debug, PartialEq)]
pub enum FlowError {
    UnknownBuiltin(String),
    UnknownParameter { builtin: &'static str, name: String },
    ParameterOutOfRange { name: &'static str, value: f64, min: f64, max: f64 },
    /// A point or table with the wrong number of components.
    DimensionMismatch { expected: usize, got: usize },
    NonFiniteField,
    NonFinitePoint,
    InvalidIntegration { t: f64, steps: usize },
    SampledShape { expected: usize, got: usize },
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::UnknownBuiltin(name) => write!(f, "unknown builtin flow `{name}`"),
            FlowError::UnknownParameter { builtin, name } => {
                write!(f, "builtin `{builtin}` has no parameter `{name}`")
            }
            FlowError::ParameterOutOfRange { name, value, min, max } => {
                write!(f, "parameter `{name}` = {value} outside [{min}, {max}]")
            }
            FlowError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            FlowError::NonFiniteField => write!(f, "non-finite field value encountered"),
            FlowError::NonFinitePoint => write!(f, "non-finite point"),
            FlowError::InvalidIntegration { t, steps } => {
                write!(f, "integration needs T > 0 and steps >= 1 (got T = {t}, steps = {steps})")
            }
            FlowError::SampledShape { expected, got } => {
                write!(f, "sampled field needs {expected} values, got {got}")
            }
        }
    }
}

/// Documented parameter of a builtin field.
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub min: f64,
    pub max: f64,
    pub doc: &'static str,
}

/// Catalog entry for a builtin field.
#[derive(Clone, Copy, Debug)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub dim: usize,
    pub formula: &'static str,
    pub params: &'static [ParamSpec],
}

const fn p(name: &'static str, default: f64, min: f64, max: f64, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default, min, max, doc }
}

const VANISH: [ParamSpec; 2] = [
    p("scale", 12.0, 1.0, 1.0e3, "inverse radius of the slow region around each zero"),
    p("exponent", 2.0, 1.0, 16.0, "vanishing order at each zero"),
];

pub static BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "constant",
        dim: 2,
        formula: "v = (a, b) or (a, b, c) when c is given",
        params: &[
            p("a", 0.0, -10.0, 10.0, "x component"),
            p("b", 1.0, -10.0, 10.0, "y component"),
            p("c", 0.0, -10.0, 10.0, "z component; giving it makes the flow three-dimensional"),
        ],
    },
    BuiltinInfo {
        name: "reeb2d",
        dim: 2,
        formula: "v = (k sin 2πx, 1)",
        params: &[p("k", 0.25, -1.0, 1.0, "horizontal amplitude")],
    },
    BuiltinInfo {
        name: "slowed-vertical",
        dim: 2,
        formula: "v = (0, λ), λ vanishing at (0,0) and (1/2,0)",
        params: &VANISH,
    },
    BuiltinInfo {
        name: "psi1",
        dim: 2,
        formula: "v = (a, b) λ, λ vanishing at p0 = (0,0)",
        params: &[
            p("a", -1.0, -10.0, 10.0, "x drift"),
            p("b", core::f64::consts::SQRT_2, -10.0, 10.0, "y drift"),
            p("scale", 8.0, 1.0, 1.0e3, "inverse radius of the slow region around p0"),
            p("exponent", 4.0, 1.0, 16.0, "vanishing order at p0"),
        ],
    },
    BuiltinInfo {
        name: "psi2",
        dim: 3,
        formula: "layers z=0 (psi1 with drift (a,b)), z=1/2 (psi1 with drift (1,0)), z=1/4,3/4 (linear (1,0)); vz = κ sin 4πz",
        params: &[
            p("a", -1.0, -10.0, 10.0, "x drift of the z=0 layer"),
            p("b", core::f64::consts::SQRT_2, -10.0, 10.0, "y drift of the z=0 layer"),
            p("scale", 8.0, 1.0, 1.0e3, "inverse radius of the slow regions"),
            p("exponent", 4.0, 1.0, 16.0, "vanishing order at the two fixed points"),
            p("kappa", 0.25, 0.001, 10.0, "vertical attraction rate toward z=1/4,3/4"),
        ],
    },
    BuiltinInfo {
        name: "figure1-phi1",
        dim: 2,
        formula: "v = (-k sin 2πx, 1): circle x=0 attracts from both sides",
        params: &[p("k", 0.25, 0.0, 1.0, "horizontal amplitude")],
    },
    BuiltinInfo {
        name: "figure1-phi2",
        dim: 2,
        formula: "v = (k |sin πx|, 1): one invariant circle x=0, drift +x elsewhere",
        params: &[p("k", 0.5, 0.0, 1.0, "horizontal amplitude")],
    },
];

pub fn builtin_info(name: &str) -> Option<&'static BuiltinInfo> {
    BUILTINS.iter().find(|b| b.name == name)
}

/// Grid-sampled field with periodic multilinear interpolation.
///
/// Node `(i, j[, k])` sits at `(i/n_x, j/n_y[, k/n_z])`; nodes are stored with
/// x varying fastest and each node holds `dim` components.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    dim: usize,
    resolution: [usize; MAX_DIM],
    values: Vec<f64>,
}

impl SampledField {
    pub fn new(resolution: &[usize], values: Vec<f64>) -> Result<Self, FlowError> {
        let dim = resolution.len();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(FlowError::DimensionMismatch { expected: 2, got: dim });
        }
        let mut res = [1; MAX_DIM];
        res[..dim].copy_from_slice(resolution);
        if res.contains(&0) {
            return Err(FlowError::SampledShape { expected: 1, got: 0 });
        }
        let expected = res.iter().product::<usize>() * dim;
        if values.len() != expected {
            return Err(FlowError::SampledShape { expected, got: values.len() });
        }
        Ok(SampledField { dim, resolution: res, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution[..self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn eval(&self, x: &Point) -> Point {
        let mut base = [0usize; MAX_DIM];
        let mut frac = [0.0; MAX_DIM];
        for a in 0..self.dim {
            let n = self.resolution[a];
            let s = x[a] * n as f64;
            let fl = libm::floor(s);
            frac[a] = s - fl;
            base[a] = (fl as i64).rem_euclid(n as i64) as usize;
        }
        let mut out = [0.0; MAX_DIM];
        let corners = 1usize << self.dim;
        for corner in 0..corners {
            let mut weight = 1.0;
            let mut idx = 0usize;
            let mut stride = 1usize;
            for a in 0..self.dim {
                let up = (corner >> a) & 1 == 1;
                let n = self.resolution[a];
                let i = if up { (base[a] + 1) % n } else { base[a] };
                weight *= if up { frac[a] } else { 1.0 - frac[a] };
                idx += i * stride;
                stride *= n;
            }
            if weight == 0.0 {
                continue;
            }
            for c in 0..self.dim {
                out[c] += weight * self.values[idx * self.dim + c];
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Field {
    Constant(Point),
    Reeb { k: f64 },
    SlowedVertical { scale: f64, exponent: f64 },
    Psi1 { a: f64, b: f64, scale: f64, exponent: f64 },
    Psi2 { a: f64, b: f64, scale: f64, exponent: f64, kappa: f64 },
    Phi1 { k: f64 },
    Phi2 { k: f64 },
    Sampled(SampledField),
}

/// A flow on the d-torus with the unit integer period lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowSpec {
    dim: usize,
    name: String,
    params: Vec<(&'static str, f64)>,
    field: Field,
    shift: Point,
    time_sign: f64,
}

/// Result of integrating one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trajectory {
    /// Time-T image reduced to `[0, 1)^d`.
    pub endpoint: Point,
    /// Un-wrapped displacement in the universal cover.
    pub lift: Point,
}

impl FlowSpec {
    /// Builds a builtin field; unspecified parameters take their defaults.
    pub fn builtin(name: &str, params: &[(&str, f64)]) -> Result<FlowSpec, FlowError> {
        let info = builtin_info(name).ok_or_else(|| FlowError::UnknownBuiltin(name.to_string()))?;
        let mut resolved: Vec<(&'static str, f64)> = info.params.iter().map(|s| (s.name, s.default)).collect();
        let mut given_c = false;
        for (key, value) in params {
            let spec = info.params.iter().find(|s| s.name == *key).ok_or_else(|| {
                FlowError::UnknownParameter { builtin: info.name, name: key.to_string() }
            })?;
            if !value.is_finite() || *value < spec.min || *value > spec.max {
                return Err(FlowError::ParameterOutOfRange {
                    name: spec.name,
                    value: *value,
                    min: spec.min,
                    max: spec.max,
                });
            }
            if info.name == "constant" && *key == "c" {
                given_c = true;
            }
            for slot in resolved.iter_mut() {
                if slot.0 == spec.name {
                    slot.1 = *value;
                }
            }
        }
        let lookup = resolved.clone();
        let get = |n: &str| lookup.iter().find(|(k, _)| *k == n).map(|(_, v)| *v).unwrap_or(0.0);
        let mut dim = info.dim;
        let field = match info.name {
            "constant" => {
                if given_c {
                    dim = 3;
                } else {
                    resolved.retain(|(k, _)| *k != "c");
                }
                Field::Constant([get("a"), get("b"), get("c")])
            }
            "reeb2d" => Field::Reeb { k: get("k") },
            "slowed-vertical" => Field::SlowedVertical { scale: get("scale"), exponent: get("exponent") },
            "psi1" => Field::Psi1 { a: get("a"), b: get("b"), scale: get("scale"), exponent: get("exponent") },
            "psi2" => Field::Psi2 {
                a: get("a"),
                b: get("b"),
                scale: get("scale"),
                exponent: get("exponent"),
                kappa: get("kappa"),
            },
            "figure1-phi1" => Field::Phi1 { k: get("k") },
            "figure1-phi2" => Field::Phi2 { k: get("k") },
            _ => return Err(FlowError::UnknownBuiltin(name.to_string())),
        };
        Ok(FlowSpec { dim, name: info.name.to_string(), params: resolved, field, shift: [0.0; MAX_DIM], time_sign: 1.0 })
    }

    pub fn sampled(field: SampledField) -> FlowSpec {
        FlowSpec {
            dim: field.dim,
            name: "sampled".to_string(),
            params: Vec::new(),
            field: Field::Sampled(field),
            shift: [0.0; MAX_DIM],
            time_sign: 1.0,
        }
    }

    /// The same field with its velocity negated.
    pub fn reversed(&self) -> FlowSpec {
        let mut s = self.clone();
        s.time_sign = -s.time_sign;
        s
    }

    /// The field translated by `offset`: `v'(x) = v(x - offset)`.
    pub fn translated(&self, offset: &[f64]) -> FlowSpec {
        let mut s = self.clone();
        for (slot, o) in s.shift.iter_mut().zip(offset) {
            *slot = wrap_unit(*slot + o);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Resolved parameters in catalog order.
    pub fn params(&self) -> &[(&'static str, f64)] {
        &self.params
    }

    pub fn sampled_field(&self) -> Option<&SampledField> {
        match &self.field {
            Field::Sampled(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_reversed(&self) -> bool {
        self.time_sign < 0.0
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift[..self.dim]
    }

    /// Stable 64-bit FNV-1a digest of the full field description.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.bytes(self.name.as_bytes());
        h.bytes(&[self.dim as u8]);
        for (k, v) in &self.params {
            h.bytes(k.as_bytes());
            h.bytes(&v.to_bits().to_le_bytes());
        }
        for v in &self.shift {
            h.bytes(&v.to_bits().to_le_bytes());
        }
        h.bytes(&self.time_sign.to_bits().to_le_bytes());
        if let Field::Sampled(s) = &self.field {
            for r in &s.resolution {
                h.bytes(&(*r as u64).to_le_bytes());
            }
            for v in &s.values {
                h.bytes(&v.to_bits().to_le_bytes());
            }
        }
        h.finish()
    }

    /// Field value at `point`; the point is read modulo 1.
    pub fn evaluate(&self, point: &[f64]) -> Result<Point, FlowError> {
        if point.len() != self.dim {
            return Err(FlowError::DimensionMismatch { expected: self.dim, got: point.len() });
        }
        let mut x = [0.0; MAX_DIM];
        for a in 0..self.dim {
            if !point[a].is_finite() {
                return Err(FlowError::NonFinitePoint);
            }
            x[a] = point[a];
        }
        self.eval(&x)
    }

    fn eval(&self, lifted: &Point) -> Result<Point, FlowError> {
        let mut x = [0.0; MAX_DIM];
        for a in 0..self.dim {
            x[a] = wrap_unit(lifted[a] - self.shift[a]);
        }
        let mut v = self.raw(&x);
        for c in v.iter_mut().take(self.dim) {
            *c *= self.time_sign;
            if !c.is_finite() {
                return Err(FlowError::NonFiniteField);
            }
        }
        for c in v.iter_mut().skip(self.dim) {
            *c = 0.0;
        }
        Ok(v)
    }

    fn raw(&self, x: &Point) -> Point {
        match &self.field {
            Field::Constant(v) => *v,
            Field::Reeb { k } => [k * libm::sin(2.0 * PI * x[0]), 1.0, 0.0],
            Field::SlowedVertical { scale, exponent } => {
                let l = vanishing(x, &[0.0, 0.0], *scale, *exponent)
                    * vanishing(x, &[0.5, 0.0], *scale, *exponent);
                [0.0, l, 0.0]
            }
            Field::Psi1 { a, b, scale, exponent } => {
                let l = vanishing(x, &[0.0, 0.0], *scale, *exponent);
                [a * l, b * l, 0.0]
            }
            Field::Psi2 { a, b, scale, exponent, kappa } => {
                let c = libm::cos(2.0 * PI * x[2]);
                let s = libm::sin(2.0 * PI * x[2]);
                let w_low = if c > 0.0 { c * c } else { 0.0 };
                let w_mid = if c < 0.0 { c * c } else { 0.0 };
                let w_lin = s * s;
                let l0 = vanishing(x, &[0.0, 0.0], *scale, *exponent);
                let l1 = vanishing(x, &[0.5, 0.5], *scale, *exponent);
                [
                    w_low * a * l0 + w_mid * l1 + w_lin,
                    w_low * b * l0,
                    kappa * libm::sin(4.0 * PI * x[2]),
                ]
            }
            Field::Phi1 { k } => [-k * libm::sin(2.0 * PI * x[0]), 1.0, 0.0],
            Field::Phi2 { k } => [k * libm::fabs(libm::sin(PI * x[0])), 1.0, 0.0],
            Field::Sampled(f) => f.eval(x),
        }
    }

    /// Classical RK4 over `steps` equal steps of total time `t`, in lifted coordinates.
    pub fn integrate(&self, point: &[f64], t: f64, steps: usize) -> Result<Trajectory, FlowError> {
        if !(t > 0.0) || !t.is_finite() || steps == 0 {
            return Err(FlowError::InvalidIntegration { t, steps });
        }
        if point.len() != self.dim {
            return Err(FlowError::DimensionMismatch { expected: self.dim, got: point.len() });
        }
        let d = self.dim;
        let mut x = [0.0; MAX_DIM];
        for a in 0..d {
            if !point[a].is_finite() {
                return Err(FlowError::NonFinitePoint);
            }
            x[a] = point[a];
        }
        let start = x;
        let h = t / steps as f64;
        for _ in 0..steps {
            let k1 = self.eval(&x)?;
            let k2 = self.eval(&axpy(&x, 0.5 * h, &k1))?;
            let k3 = self.eval(&axpy(&x, 0.5 * h, &k2))?;
            let k4 = self.eval(&axpy(&x, h, &k3))?;
            for a in 0..d {
                x[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
            }
        }
        let mut endpoint = [0.0; MAX_DIM];
        let mut lift = [0.0; MAX_DIM];
        for a in 0..d {
            endpoint[a] = wrap_unit(x[a]);
            lift[a] = x[a] - start[a];
        }
        Ok(Trajectory { endpoint, lift })
    }
}

fn axpy(x: &Point, s: f64, v: &Point) -> Point {
    [x[0] + s * v[0], x[1] + s * v[1], x[2] + s * v[2]]
}

/// Reduces a coordinate to `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x - libm::floor(x);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Torus distance between the first two coordinates of `x` and `zero`.
fn planar_distance(x: &Point, zero: &[f64; 2]) -> f64 {
    let mut s = 0.0;
    for a in 0..2 {
        let d = libm::fabs(x[a] - zero[a]);
        let d = if d > 0.5 { 1.0 - d } else { d };
        s += d * d;
    }
    libm::sqrt(s)
}

/// `min(1, (scale * dist)^exponent)`: zero exactly at `zero`, one away from it.
fn vanishing(x: &Point, zero: &[f64; 2], scale: f64, exponent: f64) -> f64 {
    let s = scale * planar_distance(x, zero);
    if s >= 1.0 {
        1.0
    } else {
        libm::pow(s, exponent)
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
    fn bytes(&mut self, b: &[u8]) {
        for byte in b {
            self.0 ^= *byte as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    fn finish(&self) -> u64 {
        self.0
    }
}
