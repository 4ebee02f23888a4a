//! Planar maps with an elliptic fixed point at the origin.
//!
//! A real map `(P, Q)` whose linear part is a rotation by `θ` is written
//! in complex form `g(z, z̄) = λz + Σ a_{mj} z^m z̄^j` with `λ = e^{iθ}`;
//! the first Birkhoff constant of `g` decides LAS versus repeller when
//! its real part is nonzero.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Zero test used for resonance, rotation form and the sign of `Re B_1`.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Monomials `z^m z̄^j` with `2 <= m + j <= 3`, in storage order.
pub const NONLINEAR_MONOMIALS: [(usize, usize); 7] =
    [(2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];

fn monomial_slot(m: usize, j: usize) -> Option<usize> {
    NONLINEAR_MONOMIALS.iter().position(|&mj| mj == (m, j))
}

/// Bivariate polynomial of total degree <= 3 without constant term.
/// Used both for `(z, z̄)` and for `(x, y)` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Cubic([[Complex64; 4]; 4]);

impl Cubic {
    fn zero() -> Self {
        Cubic([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    fn linear(a: Complex64, b: Complex64) -> Self {
        let mut p = Self::zero();
        p.0[1][0] = a;
        p.0[0][1] = b;
        p
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..4).flat_map(move |m| {
            (0..4 - m)
                .filter(move |&j| m + j >= 1)
                .map(move |j| (m, j, self.0[m][j]))
        })
    }

    fn add_scaled(&mut self, other: &Cubic, s: Complex64) {
        for (m, j, c) in other.terms() {
            self.0[m][j] += s * c;
        }
    }

    fn mul(&self, other: &Cubic) -> Cubic {
        let mut out = Cubic::zero();
        for (m1, j1, c1) in self.terms() {
            for (m2, j2, c2) in other.terms() {
                if m1 + j1 + m2 + j2 <= 3 {
                    out.0[m1 + m2][j1 + j2] += c1 * c2;
                }
            }
        }
        out
    }

    /// The conjugate series: conjugated coefficients with swapped exponents.
    fn conj_swap(&self) -> Cubic {
        let mut out = Cubic::zero();
        for (m, j, c) in self.terms() {
            out.0[j][m] = c.conj();
        }
        out
    }

    fn powers(base: &Cubic) -> [Cubic; 4] {
        let mut unit = Cubic::zero();
        // stands in for the constant 1; only multiplied, never stored
        unit.0[0][0] = Complex64::new(1.0, 0.0);
        let p1 = *base;
        let p2 = p1.mul(&p1);
        let p3 = p2.mul(&p1);
        [unit, p1, p2, p3]
    }

    fn mul_with_unit(a: &Cubic, b: &Cubic) -> Cubic {
        // like `mul`, but lets the (0,0) slot act as the constant term
        let mut out = Cubic::zero();
        for m1 in 0..4 {
            for j1 in 0..4 - m1 {
                for m2 in 0..4 - m1 - j1 {
                    for j2 in 0..4 - m1 - j1 - m2 {
                        out.0[m1 + m2][j1 + j2] += a.0[m1][j1] * b.0[m2][j2];
                    }
                }
            }
        }
        out
    }
}

/// Real polynomial map `(x, y) -> (P(x, y), Q(x, y))` of degree <= 3 with
/// no constant terms. Terms are keyed by `(x exponent, y exponent)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPolyMap {
    p: BTreeMap<(u8, u8), f64>,
    q: BTreeMap<(u8, u8), f64>,
}

impl PlanarPolyMap {
    /// Builds a map from `(i, j, coeff)` terms; repeated monomials add up.
    pub fn new(p: &[(u8, u8, f64)], q: &[(u8, u8, f64)]) -> Result<Self> {
        Ok(Self {
            p: Self::collect(p, "P")?,
            q: Self::collect(q, "Q")?,
        })
    }

    fn collect(terms: &[(u8, u8, f64)], name: &str) -> Result<BTreeMap<(u8, u8), f64>> {
        let mut out = BTreeMap::new();
        for &(i, j, c) in terms {
            let deg = i as usize + j as usize;
            if !(1..=3).contains(&deg) {
                return Err(Error::NotEllipticRotationForm(format!(
                    "{name} has monomial x^{i} y^{j} of degree {deg}; allowed degrees are 1..=3"
                )));
            }
            if !c.is_finite() {
                return Err(Error::NotEllipticRotationForm(format!(
                    "{name} has non-finite coefficient at x^{i} y^{j}"
                )));
            }
            *out.entry((i, j)).or_insert(0.0) += c;
        }
        out.retain(|_, c| *c != 0.0);
        Ok(out)
    }

    pub fn p_terms(&self) -> impl Iterator<Item = (u8, u8, f64)> + '_ {
        self.p.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn q_terms(&self) -> impl Iterator<Item = (u8, u8, f64)> + '_ {
        self.q.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn p_coeff(&self, i: u8, j: u8) -> f64 {
        self.p.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn q_coeff(&self, i: u8, j: u8) -> f64 {
        self.q.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        let ev = |terms: &BTreeMap<(u8, u8), f64>| {
            terms
                .iter()
                .map(|(&(i, j), &c)| c * x.powi(i as i32) * y.powi(j as i32))
                .sum::<f64>()
        };
        (ev(&self.p), ev(&self.q))
    }

    /// Largest coefficient difference over the union of monomials.
    pub fn max_coeff_diff(&self, other: &PlanarPolyMap) -> f64 {
        let diff = |a: &BTreeMap<(u8, u8), f64>, b: &BTreeMap<(u8, u8), f64>| {
            a.keys()
                .chain(b.keys())
                .map(|k| {
                    (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs()
                })
                .fold(0.0, f64::max)
        };
        diff(&self.p, &other.p).max(diff(&self.q, &other.q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexJet2 {
    lambda: Complex64,
    coeffs: [Complex64; 7],
}

impl ComplexJet2 {
    /// `λz + Σ a_{mj} z^m z̄^j`. `λ` must lie on the unit circle within
    /// `DEFAULT_ZERO_TOL`; `(m, j)` must satisfy `2 <= m + j <= 3`.
    pub fn new(lambda: Complex64, terms: &[((usize, usize), Complex64)]) -> Result<Self> {
        if !lambda.re.is_finite()
            || !lambda.im.is_finite()
            || (lambda.norm() - 1.0).abs() > DEFAULT_ZERO_TOL
        {
            return Err(Error::NotOnUnitCircle(fmt_complex(lambda)));
        }
        let mut coeffs = [Complex64::new(0.0, 0.0); 7];
        for &((m, j), c) in terms {
            let slot = monomial_slot(m, j).ok_or_else(|| {
                Error::InvalidNormalForm(format!(
                    "monomial z^{m} zbar^{j} is outside degrees 2..=3"
                ))
            })?;
            coeffs[slot] += c;
        }
        Ok(Self { lambda, coeffs })
    }

    /// Rotation by `theta` with no nonlinear terms.
    pub fn rotation(theta: f64) -> Self {
        Self {
            lambda: Complex64::from_polar(1.0, theta),
            coeffs: [Complex64::new(0.0, 0.0); 7],
        }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn coeff(&self, m: usize, j: usize) -> Complex64 {
        monomial_slot(m, j)
            .map(|s| self.coeffs[s])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn nonlinear_terms(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        NONLINEAR_MONOMIALS
            .iter()
            .copied()
            .zip(self.coeffs.iter().copied())
    }

    /// Applies `a_{mj} -> f(m, j, a_{mj})` to every nonlinear coefficient.
    pub fn map_coeffs(&self, f: impl Fn(usize, usize, Complex64) -> Complex64) -> Self {
        let mut out = *self;
        for (slot, &(m, j)) in NONLINEAR_MONOMIALS.iter().enumerate() {
            out.coeffs[slot] = f(m, j, self.coeffs[slot]);
        }
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zc = z.conj();
        self.lambda * z
            + self
                .nonlinear_terms()
                .map(|((m, j), a)| a * z.powu(m as u32) * zc.powu(j as u32))
                .sum::<Complex64>()
    }

    fn as_cubic(&self) -> Cubic {
        let mut p = Cubic::zero();
        p.0[1][0] = self.lambda;
        for ((m, j), a) in self.nonlinear_terms() {
            p.0[m][j] = a;
        }
        p
    }

    pub fn max_coeff_diff(&self, other: &ComplexJet2) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold((self.lambda - other.lambda).norm(), f64::max)
    }
}

impl fmt::Display for ComplexJet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})z", fmt_complex(self.lambda))?;
        for ((m, j), a) in self.nonlinear_terms() {
            if a.norm() > 0.0 {
                write!(f, " + ({})z^{m}zbar^{j}", fmt_complex(a))?;
            }
        }
        Ok(())
    }
}

pub fn fmt_complex(c: Complex64) -> String {
    if c.im < 0.0 {
        format!("{} - {}i", c.re, -c.im)
    } else {
        format!("{} + {}i", c.re, c.im)
    }
}

/// Substitutes `x = (z + z̄)/2`, `y = (z - z̄)/(2i)` into `P + iQ`.
pub fn real_to_complex(f: &PlanarPolyMap, tol: f64) -> Result<ComplexJet2> {
    let (c, s) = (f.p_coeff(1, 0), f.q_coeff(1, 0));
    let (pb, qb) = (f.p_coeff(0, 1), f.q_coeff(0, 1));
    if (c - qb).abs() > tol || (pb + s).abs() > tol {
        return Err(Error::NotEllipticRotationForm(format!(
            "linear part [[{c}, {pb}], [{s}, {qb}]] is not of the form [[cos, -sin], [sin, cos]]"
        )));
    }
    if (c * c + s * s - 1.0).abs() > tol {
        return Err(Error::NotEllipticRotationForm(format!(
            "linear part has determinant {} instead of 1",
            c * c + s * s
        )));
    }
    if s.abs() <= tol {
        return Err(Error::NotEllipticRotationForm(format!(
            "eigenvalue {c} is parabolic (±1), which is excluded"
        )));
    }
    let half = Complex64::new(0.5, 0.0);
    let x = Cubic::linear(half, half);
    let y = Cubic::linear(Complex64::new(0.0, -0.5), Complex64::new(0.0, 0.5));
    let xp = Cubic::powers(&x);
    let yp = Cubic::powers(&y);
    let mut g = Cubic::zero();
    let mut add = |i: u8, j: u8, coeff: Complex64| {
        let mono = Cubic::mul_with_unit(&xp[i as usize], &yp[j as usize]);
        g.add_scaled(&mono, coeff);
    };
    for (i, j, a) in f.p_terms() {
        add(i, j, Complex64::new(a, 0.0));
    }
    for (i, j, b) in f.q_terms() {
        add(i, j, Complex64::new(0.0, b));
    }
    let lambda = g.0[1][0];
    let terms: Vec<_> = NONLINEAR_MONOMIALS
        .iter()
        .map(|&(m, j)| ((m, j), g.0[m][j]))
        .collect();
    ComplexJet2::new(lambda, &terms)
}

/// `f(x, y) = (Re g(x+iy, x-iy), Im g(x+iy, x-iy))`.
pub fn complex_to_real(g: &ComplexJet2) -> PlanarPolyMap {
    let z = Cubic::linear(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
    let zc = z.conj_swap_xy();
    let zp = Cubic::powers(&z);
    let zcp = Cubic::powers(&zc);
    let mut acc = Cubic::zero();
    acc.add_scaled(&z, g.lambda);
    for ((m, j), a) in g.nonlinear_terms() {
        if a.norm() == 0.0 {
            continue;
        }
        acc.add_scaled(&Cubic::mul_with_unit(&zp[m], &zcp[j]), a);
    }
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (i, j, c) in acc.terms() {
        if c.re.abs() > PRUNE {
            p.push((i as u8, j as u8, c.re));
        }
        if c.im.abs() > PRUNE {
            q.push((i as u8, j as u8, c.im));
        }
    }
    PlanarPolyMap::new(&p, &q).expect("degrees are within 1..=3 by construction")
}

const PRUNE: f64 = 1e-15;

impl Cubic {
    /// For a polynomial in `(x, y)`: `x - iy` from `x + iy`, i.e. conjugate
    /// the coefficients without touching the variables.
    fn conj_swap_xy(&self) -> Cubic {
        let mut out = Cubic::zero();
        for (m, j, c) in self.terms() {
            out.0[m][j] = c.conj();
        }
        out
    }
}

/// `outer ∘ inner`, truncated at degree 3. The `z̄` slots take the
/// conjugate series of `inner`.
pub fn compose_complex(outer: &ComplexJet2, inner: &ComplexJet2) -> ComplexJet2 {
    let w = inner.as_cubic();
    let wc = w.conj_swap();
    let wp = Cubic::powers(&w);
    let wcp = Cubic::powers(&wc);
    let mut acc = Cubic::zero();
    acc.add_scaled(&w, outer.lambda);
    for ((m, j), b) in outer.nonlinear_terms() {
        if b.norm() == 0.0 {
            continue;
        }
        acc.add_scaled(&Cubic::mul_with_unit(&wp[m], &wcp[j]), b);
    }
    let mut coeffs = [Complex64::new(0.0, 0.0); 7];
    for (slot, &(m, j)) in NONLINEAR_MONOMIALS.iter().enumerate() {
        coeffs[slot] = acc.0[m][j];
    }
    ComplexJet2 {
        lambda: outer.lambda * inner.lambda,
        coeffs,
    }
}

/// True iff `λ^ℓ` is within `tol` of 1 for some `1 <= ℓ <= max_order`.
pub fn resonance_check(lambda: Complex64, max_order: u32, tol: f64) -> Result<bool> {
    if (lambda.norm() - 1.0).abs() > tol.max(DEFAULT_ZERO_TOL) {
        return Err(Error::NotOnUnitCircle(fmt_complex(lambda)));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((1..=max_order).any(|l| (lambda.powu(l) - one).norm() <= tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanarVerdict {
    Las,
    Repeller,
    UndeterminedByB1,
}

impl PlanarVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanarVerdict::Las => "LAS",
            PlanarVerdict::Repeller => "Repeller",
            PlanarVerdict::UndeterminedByB1 => "UndeterminedByB1",
        }
    }
}

impl fmt::Display for PlanarVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirkhoffResult {
    pub b1: Complex64,
    /// `Re B_1`.
    pub v1: f64,
    pub resonant: bool,
    pub verdict: PlanarVerdict,
}

impl BirkhoffResult {
    /// Placeholder for a jet whose eigenvalue is a root of unity of order <= 3.
    pub fn resonant() -> Self {
        Self {
            b1: Complex64::new(0.0, 0.0),
            v1: 0.0,
            resonant: true,
            verdict: PlanarVerdict::UndeterminedByB1,
        }
    }
}

/// The numerator polynomial `P(g)` of the first Birkhoff constant.
fn birkhoff_numerator(g: &ComplexJet2) -> Complex64 {
    let l = g.lambda;
    let a20 = g.coeff(2, 0);
    let a11 = g.coeff(1, 1);
    let a02 = g.coeff(0, 2);
    let a21 = g.coeff(2, 1);
    let n11 = a11.norm_sqr();
    let n02 = a02.norm_sqr();
    (n11 + a21) * l.powu(4) - a11 * (2.0 * a20 - a11.conj()) * l.powu(3)
        + (2.0 * n02 - a11 * a20 + n11) * l.powu(2)
        - (a11 * a20 + a21) * l
        + a11 * a20
}

/// First Birkhoff constant `B_1 = P(g) / (λ²(λ-1)(λ²+λ+1))` and the verdict
/// from the sign of `Re B_1`.
pub fn birkhoff_b1(g: &ComplexJet2, tol: f64) -> Result<BirkhoffResult> {
    let l = g.lambda;
    if resonance_check(l, 3, tol)? {
        return Err(Error::ResonantEigenvalue(fmt_complex(l)));
    }
    let one = Complex64::new(1.0, 0.0);
    let denom = l * l * (l - one) * (l * l + l + one);
    let b1 = birkhoff_numerator(g) / denom;
    let v1 = b1.re;
    let verdict = if v1 < -tol {
        PlanarVerdict::Las
    } else if v1 > tol {
        PlanarVerdict::Repeller
    } else {
        PlanarVerdict::UndeterminedByB1
    };
    Ok(BirkhoffResult {
        b1,
        v1,
        resonant: false,
        verdict,
    })
}

pub fn classify_planar(f: &PlanarPolyMap, tol: f64) -> Result<BirkhoffResult> {
    birkhoff_b1(&real_to_complex(f, tol)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: f64 = 1.732_050_807_568_877_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g1() -> ComplexJet2 {
        ComplexJet2::new(
            c(0.0, 1.0),
            &[((2, 0), c(1.0, -3.0)), ((1, 1), c(1.0, 0.0))],
        )
        .unwrap()
    }

    fn g2() -> ComplexJet2 {
        ComplexJet2::new(c(0.5, S3 / 2.0), &[((2, 1), c(-1.0, 0.0))]).unwrap()
    }

    fn f1() -> PlanarPolyMap {
        PlanarPolyMap::new(
            &[(0, 1, -1.0), (2, 0, 2.0), (1, 1, 6.0)],
            &[(1, 0, 1.0), (2, 0, -3.0), (1, 1, 2.0), (0, 2, 3.0)],
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol
    }

    #[test]
    fn real_to_complex_first_example() {
        let g = real_to_complex(&f1(), DEFAULT_ZERO_TOL).unwrap();
        assert!(g.max_coeff_diff(&g1()) < 1e-14, "{g}");
    }

    #[test]
    fn real_to_complex_rotation_part() {
        let f = PlanarPolyMap::new(
            &[(1, 0, 0.5), (0, 1, -S3 / 2.0), (3, 0, -1.0), (1, 2, -1.0)],
            &[(1, 0, S3 / 2.0), (0, 1, 0.5), (2, 1, -1.0), (0, 3, -1.0)],
        )
        .unwrap();
        let g = real_to_complex(&f, DEFAULT_ZERO_TOL).unwrap();
        assert!(g.max_coeff_diff(&g2()) < 1e-14, "{g}");
    }

    #[test]
    fn pure_rotation_has_no_nonlinear_terms() {
        let f = PlanarPolyMap::new(&[(1, 0, 0.0), (0, 1, -1.0)], &[(1, 0, 1.0)]).unwrap();
        let g = real_to_complex(&f, DEFAULT_ZERO_TOL).unwrap();
        assert!(close(g.lambda(), c(0.0, 1.0), 1e-15));
        assert!(g.nonlinear_terms().all(|(_, a)| a.norm() < 1e-15));
        let back = complex_to_real(&g);
        assert!(back.max_coeff_diff(&f) < 1e-15);
    }

    #[test]
    fn non_rotation_and_parabolic_are_rejected() {
        let shear = PlanarPolyMap::new(&[(1, 0, 1.0), (0, 1, 1.0)], &[(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            real_to_complex(&shear, DEFAULT_ZERO_TOL),
            Err(Error::NotEllipticRotationForm(_))
        ));
        let ident = PlanarPolyMap::new(&[(1, 0, 1.0), (2, 0, 1.0)], &[(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            real_to_complex(&ident, DEFAULT_ZERO_TOL),
            Err(Error::NotEllipticRotationForm(_))
        ));
        let flip = PlanarPolyMap::new(&[(1, 0, -1.0)], &[(0, 1, -1.0)]).unwrap();
        assert!(real_to_complex(&flip, DEFAULT_ZERO_TOL).is_err());
        let scaled = PlanarPolyMap::new(&[(1, 0, 0.0), (0, 1, -2.0)], &[(1, 0, 2.0)]).unwrap();
        assert!(real_to_complex(&scaled, DEFAULT_ZERO_TOL).is_err());
    }

    #[test]
    fn complex_to_real_first_example() {
        assert!(complex_to_real(&g1()).max_coeff_diff(&f1()) < 1e-14);
    }

    #[test]
    fn monomials_outside_range_are_rejected() {
        assert!(PlanarPolyMap::new(&[(4, 0, 1.0)], &[]).is_err());
        assert!(PlanarPolyMap::new(&[(0, 0, 1.0)], &[]).is_err());
        assert!(ComplexJet2::new(c(0.0, 1.0), &[((1, 0), c(1.0, 0.0))]).is_err());
        assert!(ComplexJet2::new(c(0.0, 2.0), &[]).is_err());
    }

    #[test]
    fn composition_of_first_example() {
        let g21 = compose_complex(&g2(), &g1());
        let beta = c(0.5, S3 / 2.0);
        assert!(close(g21.lambda(), c(0.0, 1.0) * beta, 1e-15));
        let one_plus = c(1.0, S3);
        assert!(close(g21.coeff(2, 0), 0.5 * c(1.0, -3.0) * one_plus, 1e-14));
        assert!(close(g21.coeff(1, 1), 0.5 * one_plus, 1e-14));
        assert!(close(g21.coeff(2, 1), c(0.0, -1.0), 1e-14));
        for (m, j) in [(0, 2), (3, 0), (1, 2), (0, 3)] {
            assert!(g21.coeff(m, j).norm() < 1e-14, "({m},{j})");
        }
    }

    #[test]
    fn composition_with_identity_and_rotations() {
        let id = ComplexJet2::rotation(0.0);
        assert!(compose_complex(&id, &g1()).max_coeff_diff(&g1()) < 1e-15);
        assert!(compose_complex(&g1(), &id).max_coeff_diff(&g1()) < 1e-15);
        let r = compose_complex(&ComplexJet2::rotation(0.3), &ComplexJet2::rotation(1.1));
        assert!(close(r.lambda(), Complex64::from_polar(1.0, 1.4), 1e-15));
    }

    #[test]
    fn resonance_examples() {
        let tol = DEFAULT_ZERO_TOL;
        assert!(!resonance_check(c(0.0, 1.0), 3, tol).unwrap());
        assert!(resonance_check(c(0.0, 1.0), 4, tol).unwrap());
        let sixth = c(0.5, S3 / 2.0);
        assert!(!resonance_check(sixth, 3, tol).unwrap());
        assert!(resonance_check(sixth, 6, tol).unwrap());
        assert!(resonance_check(c(-1.0, 0.0), 3, tol).unwrap());
        assert!(matches!(
            resonance_check(c(0.9, 0.0), 3, tol),
            Err(Error::NotOnUnitCircle(_))
        ));
    }

    #[test]
    fn birkhoff_examples() {
        let tol = DEFAULT_ZERO_TOL;
        let r = birkhoff_b1(&g1(), tol).unwrap();
        assert!(close(r.b1, c(-0.5, -5.5), 1e-12), "{}", r.b1);
        assert_eq!(r.verdict, PlanarVerdict::Las);
        let r = birkhoff_b1(&g2(), tol).unwrap();
        assert!(close(r.b1, c(-0.5, S3 / 2.0), 1e-12));
        assert_eq!(r.verdict, PlanarVerdict::Las);
        let r = birkhoff_b1(&compose_complex(&g2(), &g1()), tol).unwrap();
        assert!(close(
            r.b1,
            c((3.0 * S3 - 5.0) / 2.0, (3.0 * S3 - 13.0) / 2.0),
            1e-12
        ));
        assert_eq!(r.verdict, PlanarVerdict::Repeller);
    }

    #[test]
    fn resonant_jets_are_rejected() {
        let third = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let g = ComplexJet2::new(third, &[((2, 1), c(1.0, 0.0))]).unwrap();
        assert!(matches!(
            birkhoff_b1(&g, DEFAULT_ZERO_TOL),
            Err(Error::ResonantEigenvalue(_))
        ));
    }

    #[test]
    fn pure_rotation_is_undetermined() {
        let r = birkhoff_b1(&ComplexJet2::rotation(1.0), DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(r.b1, c(0.0, 0.0));
        assert_eq!(r.verdict, PlanarVerdict::UndeterminedByB1);
    }
}
