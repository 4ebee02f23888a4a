//! Named, reproducible instances of the worked examples, each with the
//! values it is expected to produce.
//!
//! An entry's expected values are a list of keyed items. Checking an
//! entry recomputes a superset of keys from its system and compares the
//! expected subset: exact rationals by equality, surds `a + b√k` within
//! `1e-12` after evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::{rat, ratio, rational_to_f64, Jet1D, Rational};
use crate::periodic::{
    construct_1d_triple, construct_2d_pair, detect_parrondo_1d, detect_parrondo_2d,
    linear_spectrum_2x2, CompositionJet, MapVerdict, Mat2, ParrondoReport, PeriodicSystem1D,
    PeriodicSystem2D, StabilityClass,
};
use crate::planar::{PlanarPolyMap, DEFAULT_ZERO_TOL};
use crate::simulate::{solve_a0, unbounded_demo, y_n, NumericSystem};
use crate::stability1d::{stability_constants, Rule1D};

/// Tolerance for floating comparisons against exact expected values.
pub const FLOAT_TOL: f64 = 1e-12;

pub const ENTRY_NAMES: [&str; 9] = [
    "e-f1f2f3",
    "e-F1F2F3",
    "g-123-reversed",
    "glue-semi-as",
    "unbounded",
    "lin1",
    "lin2",
    "ex-dim2-1",
    "ex-dim2-2",
];

/// `a + b√k` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    pub k: u32,
}

impl Surd {
    pub fn new(a: Rational, b: Rational, k: u32) -> Self {
        Self { a, b, k }
    }

    pub fn rational(a: Rational) -> Self {
        Self::new(a, Rational::zero(), 1)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * f64::from(self.k).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {sign} {}*sqrt{}", self.a, self.b.abs(), self.k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpectedValue {
    Exact(Rational),
    Jet(Vec<Rational>),
    Surd(Surd),
    /// Bit-for-bit floating equality.
    ExactFloat(f64),
    Approx {
        value: f64,
        tol: f64,
    },
    AtMost(f64),
    /// Strict sign: -1 or +1.
    Sign(i8),
    Label(String),
}

impl fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedValue::Exact(r) => write!(f, "{r}"),
            ExpectedValue::Jet(c) => write!(f, "{}", fmt_coeffs(c)),
            ExpectedValue::Surd(s) => write!(f, "{s}"),
            ExpectedValue::ExactFloat(x) => write!(f, "{x}"),
            ExpectedValue::Approx { value, tol } => write!(f, "{value} ± {tol:e}"),
            ExpectedValue::AtMost(x) => write!(f, "<= {x:e}"),
            ExpectedValue::Sign(s) => write!(f, "{}", if *s < 0 { "< 0" } else { "> 0" }),
            ExpectedValue::Label(l) => f.write_str(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComputedValue {
    Exact(Rational),
    Jet(Vec<Rational>),
    Real(f64),
    Label(String),
}

impl fmt::Display for ComputedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComputedValue::Exact(r) => write!(f, "{r}"),
            ComputedValue::Jet(c) => write!(f, "{}", fmt_coeffs(c)),
            ComputedValue::Real(x) => write!(f, "{x}"),
            ComputedValue::Label(l) => f.write_str(l),
        }
    }
}

fn fmt_coeffs(c: &[Rational]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl ExpectedValue {
    pub fn matches(&self, computed: &ComputedValue) -> bool {
        use ComputedValue as C;
        use ExpectedValue as E;
        match (self, computed) {
            (E::Exact(e), C::Exact(c)) => e == c,
            (E::Jet(e), C::Jet(c)) => e == c,
            (E::Surd(e), C::Real(c)) => (e.to_f64() - c).abs() <= FLOAT_TOL,
            (E::Surd(e), C::Exact(c)) => e.b.is_zero() && &e.a == c,
            (E::ExactFloat(e), C::Real(c)) => {
                e.to_bits() == c.to_bits() || (*e == 0.0 && *c == 0.0)
            }
            (E::Approx { value, tol }, C::Real(c)) => (value - c).abs() <= *tol,
            (E::AtMost(bound), C::Real(c)) => c <= bound,
            (E::Sign(s), C::Real(c)) => (*s < 0 && *c < 0.0) || (*s > 0 && *c > 0.0),
            (E::Label(e), C::Label(c)) => e == c,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedItem {
    pub key: String,
    pub value: ExpectedValue,
    /// Where the value comes from.
    pub note: &'static str,
}

fn item(key: &str, value: ExpectedValue, note: &'static str) -> ExpectedItem {
    ExpectedItem {
        key: key.to_string(),
        value,
        note,
    }
}

/// Parameterized builders the construction-vs-literal check reruns.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Construction {
    Triple {
        a22: Rational,
        a1_sq: Rational,
        a2_sq: Rational,
        a3_sq: Rational,
        a23: Rational,
        a4: Rational,
    },
    /// Degree-5 truncated local inverses of another 1-D entry, in
    /// reversed order.
    InverseOf(&'static str),
    Pair {
        t: f64,
        s: f64,
        u: f64,
    },
}

/// One-parameter families of linear periodic sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearFamily {
    /// [`lin2_matrices`].
    ScaledShears,
}

impl LinearFamily {
    pub fn matrices(self, alpha: f64) -> Vec<Mat2> {
        match self {
            LinearFamily::ScaledShears => lin2_matrices(alpha),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GallerySystem {
    OneD(PeriodicSystem1D),
    Planar(PeriodicSystem2D),
    /// Linear maps `x ↦ A x`; `family` rebuilds the matrices for another
    /// parameter value, evaluated at each `probes` entry.
    Linear {
        matrices: Vec<Mat2>,
        family: Option<LinearFamily>,
        probes: Vec<f64>,
    },
    Unbounded {
        n_max: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub system: GallerySystem,
    pub construction: Option<Construction>,
    pub expected: Vec<ExpectedItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub key: String,
    pub expected: String,
    pub computed: Option<String>,
    pub note: &'static str,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub name: String,
    pub passed: bool,
    pub rows: Vec<CheckRow>,
    /// Failed rows, one line each.
    pub diffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GalleryReport {
    pub entries: Vec<EntryReport>,
}

impl GalleryReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

fn jet(c: &[i64]) -> Jet1D {
    Jet1D::from_ints(c).expect("nonempty literal")
}

fn system_1d(maps: Vec<Jet1D>) -> PeriodicSystem1D {
    PeriodicSystem1D::new(maps).expect("literal maps share one order")
}

fn planar(p: &[(u8, u8, f64)], q: &[(u8, u8, f64)]) -> PlanarPolyMap {
    PlanarPolyMap::new(p, q).expect("literal planar map")
}

fn system_2d(maps: Vec<PlanarPolyMap>) -> PeriodicSystem2D {
    PeriodicSystem2D::new(maps).expect("literal maps are in rotation form")
}

fn r(n: i64) -> ExpectedValue {
    ExpectedValue::Exact(rat(n))
}

fn label(s: &str) -> ExpectedValue {
    ExpectedValue::Label(s.to_string())
}

fn surd(a: (i64, i64), b: (i64, i64), k: u32) -> ExpectedValue {
    ExpectedValue::Surd(Surd::new(ratio(a.0, a.1), ratio(b.0, b.1), k))
}

fn ints(c: &[i64]) -> ExpectedValue {
    ExpectedValue::Jet(c.iter().map(|&x| rat(x)).collect())
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

pub fn f_maps() -> Vec<Jet1D> {
    vec![
        jet(&[-1, 3, -9, 0, 164]),
        jet(&[-1, 5, -25, 0, 1259]),
        jet(&[-1, 2, -4, 0, 33]),
    ]
}

pub fn g_maps() -> Vec<Jet1D> {
    vec![
        jet(&[-1, 2, -4, 0, 31]),
        jet(&[-1, 5, -25, 0, 1241]),
        jet(&[-1, 3, -9, 0, 160]),
    ]
}

/// The two matrices of the second linear example at parameter `alpha`.
pub fn lin2_matrices(alpha: f64) -> Vec<Mat2> {
    vec![
        [[alpha, alpha], [0.0, alpha]],
        [[alpha, 0.0], [alpha, alpha]],
    ]
}

fn entry_f1f2f3() -> GalleryEntry {
    let oracle = "f∘f expansion in the test oracle";
    let source = "reference value";
    GalleryEntry {
        name: "e-f1f2f3",
        description: "Three maps with a LAS origin whose composition has a repeller.",
        system: GallerySystem::OneD(system_1d(f_maps())),
        construction: Some(Construction::Triple {
            a22: rat(5),
            a1_sq: rat(2),
            a2_sq: rat(9),
            a3_sq: rat(1),
            a23: rat(2),
            a4: rat(0),
        }),
        expected: vec![
            item("W3(map1)", r(0), source),
            item("W3(map2)", r(0), source),
            item("W3(map3)", r(0), source),
            item("V5(map1)", r(-4), oracle),
            item("V5(map2)", r(-18), oracle),
            item("V5(map3)", r(-2), oracle),
            item("verdict(map1)", label("LAS"), source),
            item("verdict(map2)", label("LAS"), source),
            item("verdict(map3)", label("LAS"), source),
            item("composition", ints(&[-1, 0, 0, 90, -48]), source),
            item("W3(composition)", r(0), source),
            item("V5(composition)", r(96), source),
            item("verdict(composition)", label("Repeller"), source),
            item("paradox", label("LASToRepeller"), source),
            item(
                "construction",
                label("identical"),
                "rebuilt from the parametric construction",
            ),
        ],
    }
}

fn entry_big_f1f2f3() -> GalleryEntry {
    let oracle = "f∘f expansion in the test oracle";
    let source = "reference value";
    GalleryEntry {
        name: "e-F1F2F3",
        description: "Degree-5 truncated inverses: three repellers whose composition is LAS.",
        system: GallerySystem::OneD(system_1d(g_maps())),
        construction: Some(Construction::InverseOf("e-f1f2f3")),
        expected: vec![
            item("V5(map1)", r(2), oracle),
            item("V5(map2)", r(18), oracle),
            item("V5(map3)", r(4), oracle),
            item("verdict(map1)", label("Repeller"), source),
            item("verdict(map2)", label("Repeller"), source),
            item("verdict(map3)", label("Repeller"), source),
            item("composition", ints(&[-1, 0, 0, 90, 48]), source),
            item("W3(composition)", r(0), oracle),
            item(
                "V5(composition)",
                r(-96),
                "negated constant of the inverse composition",
            ),
            item("verdict(composition)", label("LAS"), source),
            item("paradox", label("RepellersToLAS"), source),
            item(
                "construction",
                label("identical"),
                "inverses of e-f1f2f3 truncated at degree 5",
            ),
        ],
    }
}

fn entry_reversed() -> GalleryEntry {
    let source = "reference value for the reversed order";
    let mut maps = g_maps();
    maps.reverse();
    GalleryEntry {
        name: "g-123-reversed",
        description: "The e-F1F2F3 maps applied in the opposite order: the composition repels.",
        system: GallerySystem::OneD(system_1d(maps)),
        construction: None,
        expected: vec![
            item("verdict(map1)", label("Repeller"), "same maps as e-F1F2F3"),
            item("verdict(map2)", label("Repeller"), "same maps as e-F1F2F3"),
            item("verdict(map3)", label("Repeller"), "same maps as e-F1F2F3"),
            item("composition", ints(&[-1, 0, 0, 90, -72]), source),
            item("W3(composition)", r(0), "f∘f expansion in the test oracle"),
            item("verdict(composition)", label("Repeller"), source),
            item(
                "paradox",
                label("None"),
                "every map and the composition repel",
            ),
        ],
    }
}

fn entry_glue() -> GalleryEntry {
    let source = "middle branch of the glued composition";
    GalleryEntry {
        name: "glue-semi-as",
        description: "Middle-branch jet of a composition of two GAS piecewise maps. The outer \
                      branches and the second fixed point at 1 - sqrt2/2 lie outside the jet.",
        system: GallerySystem::OneD(system_1d(vec![jet(&[1, 1, -4, 2])])),
        construction: None,
        expected: vec![
            item("a2(map1)", r(1), source),
            item(
                "verdict(map1)",
                label("SemiASLeft"),
                "leading even term with positive sign",
            ),
            item("paradox", label("None"), "singleton system"),
        ],
    }
}

fn entry_unbounded() -> GalleryEntry {
    GalleryEntry {
        name: "unbounded",
        description: "Conjugates of one GAS map driving the orbit y_n = (-1)^n (n+1).",
        system: GallerySystem::Unbounded { n_max: 200 },
        construction: None,
        expected: vec![
            item(
                "a0",
                ExpectedValue::Approx {
                    value: -0.7959,
                    tol: 1e-4,
                },
                "reference value of the Lambert-W expression",
            ),
            item(
                "f0(1)",
                ExpectedValue::Approx {
                    value: -2.0,
                    tol: 1e-10,
                },
                "defining equation of a0",
            ),
            item(
                "max residual",
                ExpectedValue::AtMost(1e-8),
                "f_n(y_n) = y_(n+1)",
            ),
            item(
                "max ||y_n| - (n+1)|",
                ExpectedValue::ExactFloat(0.0),
                "the orbit grows linearly",
            ),
        ],
    }
}

fn entry_lin1() -> GalleryEntry {
    let source = "reference spectra";
    GalleryEntry {
        name: "lin1",
        description: "Two super-attracting linear maps whose composition has a saddle.",
        system: GallerySystem::Linear {
            matrices: vec![[[0.0, 2.0], [0.0, 0.5]], [[0.5, 0.0], [2.0, 0.0]]],
            family: None,
            probes: vec![],
        },
        construction: None,
        expected: vec![
            item("lambda1(map1)", ExpectedValue::ExactFloat(0.0), source),
            item("lambda2(map1)", ExpectedValue::ExactFloat(0.5), source),
            item("lambda1(map2)", ExpectedValue::ExactFloat(0.0), source),
            item("lambda2(map2)", ExpectedValue::ExactFloat(0.5), source),
            item("product[0][0]", ExpectedValue::ExactFloat(0.0), source),
            item("product[0][1]", ExpectedValue::ExactFloat(1.0), source),
            item("product[1][0]", ExpectedValue::ExactFloat(0.0), source),
            item("product[1][1]", ExpectedValue::ExactFloat(4.0), source),
            item("lambda1(product)", ExpectedValue::ExactFloat(0.0), source),
            item("lambda2(product)", ExpectedValue::ExactFloat(4.0), source),
        ],
    }
}

fn entry_lin2() -> GalleryEntry {
    let source = "spectrum (3 ± sqrt5) alpha^2 / 2 at alpha = 1/2";
    GalleryEntry {
        name: "lin2",
        description: "Two shears scaled by alpha = 1/2; GAS until |alpha| = (sqrt5 - 1)/2.",
        system: GallerySystem::Linear {
            matrices: lin2_matrices(0.5),
            family: Some(LinearFamily::ScaledShears),
            probes: vec![0.61, 0.63],
        },
        construction: None,
        expected: vec![
            item(
                "lambda1(map1)",
                surd((1, 2), (0, 1), 1),
                "triangular matrix",
            ),
            item(
                "lambda2(map1)",
                surd((1, 2), (0, 1), 1),
                "triangular matrix",
            ),
            item("lambda1(product)", surd((3, 8), (-1, 8), 5), source),
            item("lambda2(product)", surd((3, 8), (1, 8), 5), source),
            item(
                "max|lambda|-1 at alpha=0.61",
                ExpectedValue::Sign(-1),
                "below the threshold (sqrt5 - 1)/2",
            ),
            item(
                "max|lambda|-1 at alpha=0.63",
                ExpectedValue::Sign(1),
                "above the threshold (sqrt5 - 1)/2",
            ),
        ],
    }
}

pub fn ex_dim2_1_maps() -> Vec<PlanarPolyMap> {
    vec![
        planar(
            &[(0, 1, -1.0), (2, 0, 2.0), (1, 1, 6.0)],
            &[(1, 0, 1.0), (2, 0, -3.0), (1, 1, 2.0), (0, 2, 3.0)],
        ),
        planar(
            &[(1, 0, 0.5), (0, 1, -SQRT3_2), (3, 0, -1.0), (1, 2, -1.0)],
            &[(1, 0, SQRT3_2), (0, 1, 0.5), (2, 1, -1.0), (0, 3, -1.0)],
        ),
    ]
}

pub fn ex_dim2_2_maps() -> Vec<PlanarPolyMap> {
    vec![
        planar(
            &[
                (0, 1, -1.0),
                (2, 0, 1.0 / 3.0),
                (1, 1, -8.0),
                (0, 2, 5.0 / 3.0),
            ],
            &[(1, 0, 1.0), (2, 0, 4.0), (1, 1, -4.0 / 3.0), (0, 2, -4.0)],
        ),
        planar(
            &[(1, 0, 0.5), (0, 1, -SQRT3_2), (3, 0, 1.0), (1, 2, 1.0)],
            &[(1, 0, SQRT3_2), (0, 1, 0.5), (2, 1, 1.0), (0, 3, 1.0)],
        ),
    ]
}

fn entry_dim2_1() -> GalleryEntry {
    let source = "reference Birkhoff constants";
    GalleryEntry {
        name: "ex-dim2-1",
        description: "Two planar maps with a LAS origin whose composition repels.",
        system: GallerySystem::Planar(system_2d(ex_dim2_1_maps())),
        construction: Some(Construction::Pair {
            t: 1.0,
            s: -3.0,
            u: -1.0,
        }),
        expected: vec![
            item("ReB1(map1)", surd((-1, 2), (0, 1), 1), source),
            item(
                "ImB1(map1)",
                surd((-11, 2), (0, 1), 1),
                "closed form of B1 for the first map",
            ),
            item("ReB1(map2)", surd((-1, 2), (0, 1), 1), source),
            item(
                "ImB1(map2)",
                surd((0, 1), (1, 2), 3),
                "closed form of B1 for the second map",
            ),
            item("ReB1(composition)", surd((-5, 2), (3, 2), 3), source),
            item("ImB1(composition)", surd((-13, 2), (3, 2), 3), source),
            item("verdict(map1)", label("LAS"), source),
            item("verdict(map2)", label("LAS"), source),
            item("verdict(composition)", label("Repeller"), source),
            item("paradox", label("LASToRepeller"), source),
            item(
                "construction",
                ExpectedValue::AtMost(FLOAT_TOL),
                "largest coefficient gap to the (t, s, u) construction",
            ),
        ],
    }
}

fn entry_dim2_2() -> GalleryEntry {
    let source = "reference Birkhoff constants";
    GalleryEntry {
        name: "ex-dim2-2",
        description: "Two planar repellers whose composition is LAS.",
        system: GallerySystem::Planar(system_2d(ex_dim2_2_maps())),
        construction: Some(Construction::Pair {
            t: -2.0 / 3.0,
            s: 4.0,
            u: 1.0,
        }),
        expected: vec![
            item("V1(map1)", surd((1, 2), (0, 1), 1), source),
            item("V1(map2)", surd((1, 2), (0, 1), 1), source),
            item("V1(composition)", surd((3, 1), (-2, 1), 3), source),
            item("verdict(map1)", label("Repeller"), source),
            item("verdict(map2)", label("Repeller"), source),
            item("verdict(composition)", label("LAS"), source),
            item("paradox", label("RepellersToLAS"), source),
            item(
                "construction",
                ExpectedValue::AtMost(FLOAT_TOL),
                "largest coefficient gap to the (t, s, u) construction",
            ),
        ],
    }
}

/// Looks up an entry by its stable name.
pub fn gallery_get(name: &str) -> Result<GalleryEntry> {
    let entry = match name {
        "e-f1f2f3" => entry_f1f2f3(),
        "e-F1F2F3" => entry_big_f1f2f3(),
        "g-123-reversed" => entry_reversed(),
        "glue-semi-as" => entry_glue(),
        "unbounded" => entry_unbounded(),
        "lin1" => entry_lin1(),
        "lin2" => entry_lin2(),
        "ex-dim2-1" => entry_dim2_1(),
        "ex-dim2-2" => entry_dim2_2(),
        _ => return Err(Error::UnknownGalleryEntry(name.to_string())),
    };
    Ok(entry)
}

pub fn all_entries() -> Vec<GalleryEntry> {
    ENTRY_NAMES
        .iter()
        .map(|n| gallery_get(n).expect("registered name"))
        .collect()
}

type Computed = BTreeMap<String, ComputedValue>;

fn push_jet_values(out: &mut Computed, name: &str, f: &Jet1D, verdict: &MapVerdict) {
    if let MapVerdict::OneD(c) = verdict {
        if let (Some(v), Rule1D::OrientationPreserving) = (&c.deciding_value, c.rule) {
            out.insert(
                format!("a{}({name})", c.order),
                ComputedValue::Exact(v.clone()),
            );
        }
    }
    if let Ok(k) = stability_constants(f) {
        for (j, w) in &k.w_values {
            out.insert(format!("W{j}({name})"), ComputedValue::Exact(w.clone()));
        }
        if let Some((l, v)) = &k.v_first {
            out.insert(format!("V{l}({name})"), ComputedValue::Exact(v.clone()));
        }
    }
    out.insert(
        format!("verdict({name})"),
        ComputedValue::Label(verdict.label().into()),
    );
}

fn push_planar_values(out: &mut Computed, name: &str, verdict: &MapVerdict) {
    if let MapVerdict::Planar(b) = verdict {
        out.insert(format!("ReB1({name})"), ComputedValue::Real(b.b1.re));
        out.insert(format!("ImB1({name})"), ComputedValue::Real(b.b1.im));
        out.insert(format!("V1({name})"), ComputedValue::Real(b.v1));
    }
    out.insert(
        format!("verdict({name})"),
        ComputedValue::Label(verdict.label().into()),
    );
}

fn push_report(out: &mut Computed, report: &ParrondoReport, maps: Option<&[Jet1D]>) {
    for (i, v) in report.per_map_verdicts.iter().enumerate() {
        let name = format!("map{}", i + 1);
        match maps {
            Some(maps) => push_jet_values(out, &name, &maps[i], v),
            None => push_planar_values(out, &name, v),
        }
    }
    match &report.composition {
        CompositionJet::OneD(c) => {
            out.insert(
                "composition".into(),
                ComputedValue::Jet(c.coeffs().to_vec()),
            );
            push_jet_values(out, "composition", c, &report.composition_verdict);
        }
        CompositionJet::Planar(_) => {
            push_planar_values(out, "composition", &report.composition_verdict)
        }
    }
    out.insert(
        "paradox".into(),
        ComputedValue::Label(report.paradox.as_str().into()),
    );
}

fn construction_value(c: &Construction, system: &GallerySystem) -> Result<ComputedValue> {
    let identical =
        |same: bool| ComputedValue::Label(if same { "identical" } else { "differs" }.into());
    match (c, system) {
        (
            Construction::Triple {
                a22,
                a1_sq,
                a2_sq,
                a3_sq,
                a23,
                a4,
            },
            GallerySystem::OneD(sys),
        ) => Ok(identical(
            &construct_1d_triple(a22, a1_sq, a2_sq, a3_sq, a23, a4) == sys,
        )),
        (Construction::InverseOf(base), GallerySystem::OneD(sys)) => {
            let base = match gallery_get(base)?.system {
                GallerySystem::OneD(b) => b,
                _ => return Ok(identical(false)),
            };
            let rebuilt = base.reversed().inverted()?;
            let same = rebuilt.len() == sys.len()
                && rebuilt
                    .maps()
                    .iter()
                    .zip(sys.maps())
                    .all(|(g, lit)| &g.truncated(5) == lit);
            Ok(identical(same))
        }
        (Construction::Pair { t, s, u }, GallerySystem::Planar(sys)) => {
            let rebuilt = construct_2d_pair(*t, *s, *u);
            let gap = rebuilt
                .maps()
                .iter()
                .zip(sys.maps())
                .map(|(a, b)| a.max_coeff_diff(b))
                .fold(0.0, f64::max);
            Ok(ComputedValue::Real(if rebuilt.len() == sys.len() {
                gap
            } else {
                f64::INFINITY
            }))
        }
        _ => Ok(identical(false)),
    }
}

fn sorted_eigenvalues(m: &Mat2) -> Result<[num_complex::Complex64; 2]> {
    let (_, mut eig) = linear_spectrum_2x2(std::slice::from_ref(m))?;
    eig.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eig)
}

fn push_spectrum(out: &mut Computed, name: &str, m: &Mat2) -> Result<()> {
    let eig = sorted_eigenvalues(m)?;
    for (i, l) in eig.iter().enumerate() {
        out.insert(
            format!("lambda{}({name})", i + 1),
            ComputedValue::Real(l.re),
        );
        out.insert(
            format!("Im lambda{}({name})", i + 1),
            ComputedValue::Real(l.im),
        );
    }
    Ok(())
}

/// Recomputes every value the entry's system supports.
pub fn compute_values(entry: &GalleryEntry, tol: f64) -> Result<Computed> {
    let mut out = Computed::new();
    match &entry.system {
        GallerySystem::OneD(sys) => {
            push_report(&mut out, &detect_parrondo_1d(sys)?, Some(sys.maps()))
        }
        GallerySystem::Planar(sys) => push_report(&mut out, &detect_parrondo_2d(sys, tol)?, None),
        GallerySystem::Linear {
            matrices,
            family,
            probes,
        } => {
            for (i, m) in matrices.iter().enumerate() {
                push_spectrum(&mut out, &format!("map{}", i + 1), m)?;
            }
            let (product, _) = linear_spectrum_2x2(matrices)?;
            for (i, row) in product.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    out.insert(format!("product[{i}][{j}]"), ComputedValue::Real(*v));
                }
            }
            push_spectrum(&mut out, "product", &product)?;
            if let Some(family) = family {
                for &alpha in probes {
                    let (_, eig) = linear_spectrum_2x2(&family.matrices(alpha))?;
                    let rho = eig[0].norm().max(eig[1].norm());
                    out.insert(
                        format!("max|lambda|-1 at alpha={alpha}"),
                        ComputedValue::Real(rho - 1.0),
                    );
                }
            }
        }
        GallerySystem::Unbounded { n_max } => {
            let report = unbounded_demo(*n_max)?;
            out.insert("a0".into(), ComputedValue::Real(solve_a0()?));
            out.insert("f0(1)".into(), ComputedValue::Real(report.f0_at_1));
            out.insert(
                "max residual".into(),
                ComputedValue::Real(report.max_residual()),
            );
            let growth = (0..=*n_max)
                .map(|n| (y_n(n).abs() - (n as f64 + 1.0)).abs())
                .fold(0.0, f64::max);
            out.insert("max ||y_n| - (n+1)|".into(), ComputedValue::Real(growth));
        }
    }
    if let Some(c) = &entry.construction {
        out.insert("construction".into(), construction_value(c, &entry.system)?);
    }
    Ok(out)
}

/// Compares an entry against its expected values. Computation errors are
/// reported as a failed row rather than propagated.
pub fn check_entry_with_tol(entry: &GalleryEntry, tol: f64) -> EntryReport {
    let computed = match compute_values(entry, tol) {
        Ok(c) => c,
        Err(e) => {
            let diff = format!("computation failed: {e}");
            return EntryReport {
                name: entry.name.to_string(),
                passed: false,
                rows: vec![],
                diffs: vec![diff],
            };
        }
    };
    let rows: Vec<CheckRow> = entry
        .expected
        .iter()
        .map(|it| {
            let got = computed.get(&it.key);
            CheckRow {
                key: it.key.clone(),
                expected: it.value.to_string(),
                computed: got.map(ToString::to_string),
                note: it.note,
                ok: got.is_some_and(|c| it.value.matches(c)),
            }
        })
        .collect();
    let diffs: Vec<String> = rows
        .iter()
        .filter(|r| !r.ok)
        .map(|r| {
            format!(
                "{}: expected {}, computed {}",
                r.key,
                r.expected,
                r.computed.as_deref().unwrap_or("nothing")
            )
        })
        .collect();
    EntryReport {
        name: entry.name.to_string(),
        passed: diffs.is_empty(),
        rows,
        diffs,
    }
}

pub fn check_entry(entry: &GalleryEntry) -> EntryReport {
    check_entry_with_tol(entry, DEFAULT_ZERO_TOL)
}

/// Checks the named entries in the order given; an empty list gives an
/// empty report.
pub fn run_selected(names: &[&str], tol: f64) -> Result<GalleryReport> {
    let entries = names
        .iter()
        .map(|n| gallery_get(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GalleryReport {
        entries: entries
            .par_iter()
            .map(|e| check_entry_with_tol(e, tol))
            .collect(),
    })
}

pub fn gallery_run_all() -> GalleryReport {
    run_selected(&ENTRY_NAMES, DEFAULT_ZERO_TOL).expect("registered names")
}

impl GalleryEntry {
    /// Analytic class of the system's origin, when the entry is a periodic
    /// system with a verdict in the attracting/repelling/semi vocabulary.
    pub fn analytic_class(&self, tol: f64) -> Result<Option<StabilityClass>> {
        let class = match &self.system {
            GallerySystem::OneD(sys) => detect_parrondo_1d(sys)?.composition_verdict.class(),
            GallerySystem::Planar(sys) => detect_parrondo_2d(sys, tol)?.composition_verdict.class(),
            GallerySystem::Linear { matrices, .. } => {
                let (_, eig) = linear_spectrum_2x2(matrices)?;
                let (lo, hi) = (
                    eig[0].norm().min(eig[1].norm()),
                    eig[0].norm().max(eig[1].norm()),
                );
                if hi < 1.0 {
                    StabilityClass::Attracting
                } else if lo > 1.0 {
                    StabilityClass::Repelling
                } else {
                    // saddles and unit moduli fall outside the vocabulary
                    StabilityClass::Undetermined
                }
            }
            GallerySystem::Unbounded { .. } => StabilityClass::Undetermined,
        };
        Ok(Some(class).filter(|c| *c != StabilityClass::Undetermined))
    }

    /// The system in floating point, for the orbit simulator.
    pub fn numeric_system(&self) -> Option<NumericSystem> {
        match &self.system {
            GallerySystem::OneD(sys) => Some(NumericSystem::from_1d(sys)),
            GallerySystem::Planar(sys) => Some(NumericSystem::from_2d(sys)),
            GallerySystem::Linear { matrices, .. } => {
                let maps = matrices
                    .iter()
                    .map(|a| {
                        PlanarPolyMap::new(
                            &[(1, 0, a[0][0]), (0, 1, a[0][1])],
                            &[(1, 0, a[1][0]), (0, 1, a[1][1])],
                        )
                        .expect("finite linear map")
                    })
                    .collect();
                Some(NumericSystem::Planar(maps))
            }
            GallerySystem::Unbounded { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        let report = gallery_run_all();
        assert_eq!(report.entries.len(), ENTRY_NAMES.len());
        for e in &report.entries {
            assert!(e.passed, "{}: {:?}", e.name, e.diffs);
        }
    }

    #[test]
    fn unknown_name_and_empty_filter() {
        assert_eq!(
            gallery_get("bogus-name"),
            Err(Error::UnknownGalleryEntry("bogus-name".into()))
        );
        assert_eq!(
            run_selected(&[], DEFAULT_ZERO_TOL).unwrap(),
            GalleryReport::default()
        );
    }

    #[test]
    fn corrupted_coefficient_fails_with_a_diff() {
        let mut entry = gallery_get("e-f1f2f3").unwrap();
        let mut maps = f_maps();
        maps[1] = jet(&[-1, 5, -25, 0, 1258]);
        entry.system = GallerySystem::OneD(system_1d(maps));
        let report = check_entry(&entry);
        assert!(!report.passed);
        assert!(report.diffs.iter().any(|d| d.starts_with("V5(map2)")));
        assert!(report.diffs.iter().any(|d| d.starts_with("construction")));
    }

    #[test]
    fn surd_evaluation() {
        let s = Surd::new(ratio(-5, 2), ratio(3, 2), 3);
        assert!((s.to_f64() - (3.0 * 3f64.sqrt() - 5.0) / 2.0).abs() < 1e-15);
        assert_eq!(s.to_string(), "-5/2 + 3/2*sqrt3");
        assert_eq!(Surd::rational(rat(4)).to_string(), "4");
    }

    #[test]
    fn sqrt3_half_token_is_correctly_rounded() {
        assert_eq!(SQRT3_2, 3f64.sqrt() / 2.0);
    }

    #[test]
    fn analytic_classes() {
        let class = |n| {
            gallery_get(n)
                .unwrap()
                .analytic_class(DEFAULT_ZERO_TOL)
                .unwrap()
        };
        assert_eq!(class("e-f1f2f3"), Some(StabilityClass::Repelling));
        assert_eq!(class("e-F1F2F3"), Some(StabilityClass::Attracting));
        assert_eq!(class("glue-semi-as"), Some(StabilityClass::SemiStable));
        assert_eq!(class("lin1"), None);
        assert_eq!(class("lin2"), Some(StabilityClass::Attracting));
        assert_eq!(class("unbounded"), None);
    }
}
