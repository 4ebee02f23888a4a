//! Periodic sets, their composition maps and stability reversals.
//!
//! Every API takes the periodic set in application order: `maps[0]` acts
//! first, so the composition is `f_k ∘ ... ∘ f_1`.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::{rat, Jet1D, Rational};
use crate::planar::{
    birkhoff_b1, complex_to_real, compose_complex, real_to_complex, BirkhoffResult, ComplexJet2,
    PlanarPolyMap, PlanarVerdict, DEFAULT_ZERO_TOL,
};
use crate::stability1d::{classify_1d, Classification1D, Verdict1D};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSystem1D {
    maps: Vec<Jet1D>,
}

impl PeriodicSystem1D {
    /// All jets must share one order.
    pub fn new(maps: Vec<Jet1D>) -> Result<Self> {
        let first = maps.first().ok_or(Error::EmptySystem)?.order();
        if let Some(bad) = maps.iter().find(|m| m.order() != first) {
            return Err(Error::MixedOrders(first, bad.order()));
        }
        Ok(Self { maps })
    }

    /// Pads every jet with zeros to the largest order present. Only
    /// meaningful when the jets are exact polynomials.
    pub fn padded(maps: Vec<Jet1D>) -> Result<Self> {
        let order = maps
            .iter()
            .map(Jet1D::order)
            .max()
            .ok_or(Error::EmptySystem)?;
        Self::new(maps.into_iter().map(|m| m.padded(order)).collect())
    }

    pub fn maps(&self) -> &[Jet1D] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn order(&self) -> usize {
        self.maps[0].order()
    }

    /// `f_k ∘ ... ∘ f_1`.
    pub fn composition_map(&self) -> Jet1D {
        let mut acc = self.maps[0].clone();
        for f in &self.maps[1..] {
            acc = f.compose(&acc);
        }
        acc
    }

    /// The same set with every jet replaced by its local inverse.
    pub fn inverted(&self) -> Result<Self> {
        Self::new(
            self.maps
                .iter()
                .map(Jet1D::inverse)
                .collect::<Result<_>>()?,
        )
    }

    pub fn reversed(&self) -> Self {
        Self {
            maps: self.maps.iter().rev().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSystem2D {
    maps: Vec<PlanarPolyMap>,
}

impl PeriodicSystem2D {
    /// Every map must have an elliptic rotation-form linear part.
    pub fn new(maps: Vec<PlanarPolyMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::EmptySystem);
        }
        for m in &maps {
            real_to_complex(m, DEFAULT_ZERO_TOL)?;
        }
        Ok(Self { maps })
    }

    pub fn maps(&self) -> &[PlanarPolyMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn complex_jets(&self, tol: f64) -> Result<Vec<ComplexJet2>> {
        self.maps.iter().map(|m| real_to_complex(m, tol)).collect()
    }

    /// Degree-3 jet of `g_k ∘ ... ∘ g_1`.
    pub fn composition_jet(&self, tol: f64) -> Result<ComplexJet2> {
        let jets = self.complex_jets(tol)?;
        let mut acc = jets[0];
        for g in &jets[1..] {
            acc = compose_complex(g, &acc);
        }
        Ok(acc)
    }
}

/// Coarse stability class shared by the 1-D and planar verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    Attracting,
    Repelling,
    SemiStable,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapVerdict {
    OneD(Classification1D),
    Planar(BirkhoffResult),
}

impl MapVerdict {
    pub fn class(&self) -> StabilityClass {
        match self {
            MapVerdict::OneD(c) => match c.verdict {
                Verdict1D::Las | Verdict1D::HyperbolicAttracting => StabilityClass::Attracting,
                Verdict1D::Repeller | Verdict1D::HyperbolicRepelling => StabilityClass::Repelling,
                Verdict1D::SemiAsLeft | Verdict1D::SemiAsRight => StabilityClass::SemiStable,
                Verdict1D::InvolutionUpToOrder | Verdict1D::UndeterminedAtOrder => {
                    StabilityClass::Undetermined
                }
            },
            MapVerdict::Planar(b) => match b.verdict {
                PlanarVerdict::Las => StabilityClass::Attracting,
                PlanarVerdict::Repeller => StabilityClass::Repelling,
                PlanarVerdict::UndeterminedByB1 => StabilityClass::Undetermined,
            },
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MapVerdict::OneD(c) => c.verdict.as_str(),
            MapVerdict::Planar(b) => b.verdict.as_str(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Paradox {
    RepellersToLas,
    LasToRepeller,
    None,
    Indeterminate,
}

impl Paradox {
    pub fn as_str(self) -> &'static str {
        match self {
            Paradox::RepellersToLas => "RepellersToLAS",
            Paradox::LasToRepeller => "LASToRepeller",
            Paradox::None => "None",
            Paradox::Indeterminate => "Indeterminate",
        }
    }

    /// The paradox of the inverse system.
    pub fn dual(self) -> Paradox {
        match self {
            Paradox::RepellersToLas => Paradox::LasToRepeller,
            Paradox::LasToRepeller => Paradox::RepellersToLas,
            other => other,
        }
    }

    fn judge(per_map: &[MapVerdict], composition: &MapVerdict) -> Paradox {
        let classes: Vec<_> = per_map.iter().map(MapVerdict::class).collect();
        let comp = composition.class();
        if comp == StabilityClass::Undetermined || classes.contains(&StabilityClass::Undetermined) {
            return Paradox::Indeterminate;
        }
        let all = |c| classes.iter().all(|&x| x == c);
        match comp {
            StabilityClass::Attracting if all(StabilityClass::Repelling) => Paradox::RepellersToLas,
            StabilityClass::Repelling if all(StabilityClass::Attracting) => Paradox::LasToRepeller,
            _ => Paradox::None,
        }
    }
}

impl fmt::Display for Paradox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompositionJet {
    OneD(Jet1D),
    Planar(ComplexJet2),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParrondoReport {
    pub per_map_verdicts: Vec<MapVerdict>,
    pub composition: CompositionJet,
    pub composition_verdict: MapVerdict,
    pub paradox: Paradox,
}

pub fn detect_parrondo_1d(sys: &PeriodicSystem1D) -> Result<ParrondoReport> {
    let per_map_verdicts = sys
        .maps()
        .par_iter()
        .map(|f| classify_1d(f).map(MapVerdict::OneD))
        .collect::<Result<Vec<_>>>()?;
    let comp = sys.composition_map();
    let composition_verdict = MapVerdict::OneD(classify_1d(&comp)?);
    let paradox = Paradox::judge(&per_map_verdicts, &composition_verdict);
    Ok(ParrondoReport {
        per_map_verdicts,
        composition: CompositionJet::OneD(comp),
        composition_verdict,
        paradox,
    })
}

/// `B_1`, or the resonant placeholder when `λ` is a root of unity of
/// order <= 3.
pub fn birkhoff_or_resonant(g: &ComplexJet2, tol: f64) -> Result<BirkhoffResult> {
    match birkhoff_b1(g, tol) {
        Err(Error::ResonantEigenvalue(_)) => Ok(BirkhoffResult::resonant()),
        other => other,
    }
}

pub fn detect_parrondo_2d(sys: &PeriodicSystem2D, tol: f64) -> Result<ParrondoReport> {
    let jets = sys.complex_jets(tol)?;
    let per_map_verdicts = jets
        .par_iter()
        .map(|g| birkhoff_or_resonant(g, tol).map(MapVerdict::Planar))
        .collect::<Result<Vec<_>>>()?;
    let comp = sys.composition_jet(tol)?;
    let composition_verdict = MapVerdict::Planar(birkhoff_or_resonant(&comp, tol)?);
    let paradox = Paradox::judge(&per_map_verdicts, &composition_verdict);
    Ok(ParrondoReport {
        per_map_verdicts,
        composition: CompositionJet::Planar(comp),
        composition_verdict,
        paradox,
    })
}

/// Three jets `-x + a_2 x^2 + a_3 x^3 + a_4 x^4 + a_5 x^5` with
/// `a_3 = -a_2^2` (so `V_3 = 0`) and `a_5 = 2a_2^4 - 3a_2 a_4 + A^2` (so
/// `V_5 = -2A^2`). The quadratic coefficients are `a_{2,2}`, `a_{2,3}` and
/// `a_{2,1} = a_{2,2} - a_{2,3}`, which makes the `x^2` and `x^3`
/// coefficients of the composition vanish.
pub fn construct_1d_triple(
    a22: &Rational,
    a1_sq: &Rational,
    a2_sq: &Rational,
    a3_sq: &Rational,
    a23: &Rational,
    a4: &Rational,
) -> PeriodicSystem1D {
    let a21 = a22 - a23;
    let make = |a2: &Rational, a_sq: &Rational| {
        let a2_sq = a2 * a2;
        let a3 = -a2_sq.clone();
        let a5 = rat(2) * &a2_sq * &a2_sq - rat(3) * a2 * a4 + a_sq;
        Jet1D::from_coeffs(vec![rat(-1), a2.clone(), a3, a4.clone(), a5])
            .expect("five coefficients")
    };
    PeriodicSystem1D::new(vec![make(&a21, a1_sq), make(a22, a2_sq), make(a23, a3_sq)])
        .expect("equal orders")
}

/// `g_1 = iz + (t + si)z^2 + z z̄` and `g_2 = βz + u z^2 z̄` with
/// `β = (1 + √3 i)/2`, returned as real maps.
pub fn construct_2d_pair(t: f64, s: f64, u: f64) -> PeriodicSystem2D {
    let (g1, g2) = construct_2d_jets(t, s, u);
    PeriodicSystem2D::new(vec![complex_to_real(&g1), complex_to_real(&g2)])
        .expect("rotation-form linear parts")
}

pub fn construct_2d_jets(t: f64, s: f64, u: f64) -> (ComplexJet2, ComplexJet2) {
    let g1 = ComplexJet2::new(
        Complex64::new(0.0, 1.0),
        &[
            ((2, 0), Complex64::new(t, s)),
            ((1, 1), Complex64::new(1.0, 0.0)),
        ],
    )
    .expect("unit multiplier");
    let beta = Complex64::new(0.5, 3f64.sqrt() / 2.0);
    let g2 = ComplexJet2::new(beta, &[((2, 1), Complex64::new(u, 0.0))]).expect("unit multiplier");
    (g1, g2)
}

/// Appends `x ∓ x^7` copies up to period `k`: `x - x^7` (LAS) when every
/// map is LAS, `x + x^7` (repeller) when every map is a repeller. The
/// composition keeps its coefficients through `x^5`.
pub fn extend_with_padding_1d(sys: &PeriodicSystem1D, k: usize) -> Result<PeriodicSystem1D> {
    if k < sys.len() {
        return Err(Error::InvalidPaddingTarget {
            current: sys.len(),
            target: k,
        });
    }
    if k == sys.len() {
        return Ok(sys.clone());
    }
    if sys.order() < 5 {
        return Err(Error::PaddingOrderTooLow(sys.order()));
    }
    let verdicts = sys
        .maps()
        .iter()
        .map(|f| classify_1d(f).map(|c| c.verdict))
        .collect::<Result<Vec<_>>>()?;
    let sign = if verdicts.iter().all(|&v| v == Verdict1D::Las) {
        -1
    } else if verdicts.iter().all(|&v| v == Verdict1D::Repeller) {
        1
    } else {
        return Err(Error::AmbiguousPaddingSign);
    };
    let order = sys.order().max(7);
    let mut pad = vec![Rational::zero(); order];
    pad[0] = rat(1);
    pad[6] = rat(sign);
    let pad = Jet1D::from_coeffs(pad)?;
    let mut maps: Vec<Jet1D> = sys.maps().iter().map(|f| f.padded(order)).collect();
    maps.extend(std::iter::repeat_n(pad, k - sys.len()));
    PeriodicSystem1D::new(maps)
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseSystem {
    OneD(PeriodicSystem1D),
    Planar(PeriodicSystem2D),
}

impl BaseSystem {
    pub fn report(&self, tol: f64) -> Result<ParrondoReport> {
        match self {
            BaseSystem::OneD(s) => detect_parrondo_1d(s),
            BaseSystem::Planar(s) => detect_parrondo_2d(s, tol),
        }
    }

    pub fn block_dim(&self) -> usize {
        match self {
            BaseSystem::OneD(_) => 1,
            BaseSystem::Planar(_) => 2,
        }
    }
}

/// `F_j(x_1, ..., x_n) = (f_j(x_1), ..., f_j(x_n))` with the blocks
/// uncoupled, so every block shares the base system's fate.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSystem {
    pub base: BaseSystem,
    pub copies: usize,
}

impl LiftedSystem {
    pub fn dimension(&self) -> usize {
        self.copies * self.base.block_dim()
    }

    pub fn report(&self, tol: f64) -> Result<ParrondoReport> {
        self.base.report(tol)
    }
}

pub fn lift_product(base: BaseSystem, copies: usize) -> Result<LiftedSystem> {
    if copies == 0 {
        return Err(Error::InvalidProductCopies);
    }
    Ok(LiftedSystem { base, copies })
}

pub type Mat2 = [[f64; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Product `A_k ⋯ A_1` and its eigenvalues from the characteristic
/// quadratic, larger real part first.
pub fn linear_spectrum_2x2(matrices: &[Mat2]) -> Result<(Mat2, [Complex64; 2])> {
    let (first, rest) = matrices.split_first().ok_or(Error::EmptySystem)?;
    let product = rest.iter().fold(*first, |acc, a| mat2_mul(a, &acc));
    let tr = product[0][0] + product[1][1];
    let det = product[0][0] * product[1][1] - product[0][1] * product[1][0];
    let disc = Complex64::new(tr * tr / 4.0 - det, 0.0).sqrt();
    let half = Complex64::new(tr / 2.0, 0.0);
    Ok((product, [half + disc, half - disc]))
}
