//! Independent oracles: plain polynomial arithmetic with no truncation
//! until the very end, Lagrange inversion for local inverses, and the
//! property bodies shared by the property suite and the acceptance run.

#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::{One, Zero};
use parrondo_lab::jet::{rat, Jet1D, Rational};
use parrondo_lab::planar::{birkhoff_b1, complex_to_real, real_to_complex, ComplexJet2};
use parrondo_lab::stability1d::{classify_1d, stability_constants, Verdict1D};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Dense polynomial, index = power, constant term included.
pub type Poly = Vec<Rational>;

pub fn poly_of(f: &Jet1D) -> Poly {
    let mut p = vec![Rational::zero()];
    p.extend(f.coeffs().iter().cloned());
    p
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// Full composition `f(g(x))`, no truncation.
pub fn poly_compose(f: &Poly, g: &Poly) -> Poly {
    let mut acc: Poly = vec![Rational::zero()];
    for c in f.iter().rev() {
        acc = poly_add(&poly_mul(&acc, g), &vec![c.clone()]);
    }
    acc
}

/// Coefficients `1..=n` of a polynomial, as a jet of order `n`.
pub fn truncate(p: &Poly, n: usize) -> Jet1D {
    let coeffs = (1..=n)
        .map(|k| p.get(k).cloned().unwrap_or_else(Rational::zero))
        .collect();
    Jet1D::from_coeffs(coeffs).unwrap()
}

pub fn oracle_compose(outer: &Jet1D, inner: &Jet1D) -> Jet1D {
    let n = outer.order().min(inner.order());
    truncate(&poly_compose(&poly_of(outer), &poly_of(inner)), n)
}

/// `f(g(x))` through degree `n` only; higher terms cannot feed back
/// into lower ones, so dropping them early changes nothing below `n`.
pub fn poly_compose_upto(f: &Poly, g: &Poly, n: usize) -> Poly {
    let cut = |mut p: Poly| {
        p.truncate(n + 1);
        p
    };
    let mut acc: Poly = vec![Rational::zero()];
    for c in f.iter().rev() {
        acc = cut(poly_add(&poly_mul(&acc, g), &vec![c.clone()]));
    }
    acc
}

/// `W_j`, the coefficient of `x^j` in `f(f(x)) - x`, for `j = 3..=N`.
pub fn oracle_w(f: &Jet1D) -> Vec<(usize, Rational)> {
    let p = poly_of(f);
    let sq = poly_compose_upto(&p, &p, f.order());
    (3..=f.order())
        .map(|j| (j, sq.get(j).cloned().unwrap_or_else(Rational::zero)))
        .collect()
}

pub fn oracle_first_v(f: &Jet1D) -> Option<(usize, Rational)> {
    oracle_w(f).into_iter().find(|(_, w)| !w.is_zero())
}

/// Power series `1/h` to `n` terms; `h[0]` must be nonzero.
fn series_recip(h: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    out[0] = h[0].recip();
    for k in 1..n {
        let mut s = Rational::zero();
        for j in 1..=k {
            if let Some(hj) = h.get(j) {
                s += hj * &out[k - j];
            }
        }
        out[k] = -s / &h[0];
    }
    out
}

fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Local inverse by Lagrange inversion:
/// `g_k = (1/k) [w^{k-1}] (w / f(w))^k`.
pub fn oracle_inverse(f: &Jet1D) -> Jet1D {
    let n = f.order();
    let h: Vec<Rational> = f.coeffs().to_vec();
    let q = series_recip(&h, n);
    let mut pow = vec![Rational::zero(); n];
    pow[0] = Rational::one();
    let mut g = Vec::with_capacity(n);
    for k in 1..=n {
        pow = series_mul(&pow, &q, n);
        g.push(pow[k - 1].clone() / rat(k as i64));
    }
    Jet1D::from_coeffs(g).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn jet_strategy(order: usize) -> impl Strategy<Value = Jet1D> {
    prop::collection::vec(small_rational(), order).prop_map(|c| Jet1D::from_coeffs(c).unwrap())
}

pub fn invertible_jet(order: usize) -> impl Strategy<Value = Jet1D> {
    (
        prop_oneof![
            Just(rat(1)),
            Just(rat(-1)),
            Just(rat(2)),
            Just(Rational::new(1.into(), 3.into())),
            Just(rat(-3))
        ],
        prop::collection::vec(small_rational(), order - 1),
    )
        .prop_map(|(a1, rest)| {
            let mut c = vec![a1];
            c.extend(rest);
            Jet1D::from_coeffs(c).unwrap()
        })
}

/// Non-hyperbolic jets: multiplier `±1`, quadratic term sometimes zeroed
/// so that orientation-preserving jets can be LAS or repellers.
pub fn nonhyperbolic_jet(order: usize) -> impl Strategy<Value = Jet1D> {
    (
        prop::bool::ANY,
        prop::bool::ANY,
        prop::collection::vec(small_rational(), order - 1),
    )
        .prop_map(|(reversing, zero_a2, mut rest)| {
            if zero_a2 {
                rest[0] = Rational::zero();
            }
            let mut c = vec![if reversing { rat(-1) } else { rat(1) }];
            c.extend(rest);
            Jet1D::from_coeffs(c).unwrap()
        })
}

pub fn associativity(f: &Jet1D, g: &Jet1D, h: &Jet1D) -> Result<(), TestCaseError> {
    let left = f.compose(g).compose(h);
    let right = f.compose(&g.compose(h));
    prop_assert_eq!(&left, &right);
    prop_assert_eq!(f.compose(g), oracle_compose(f, g));
    Ok(())
}

pub fn identity_law(f: &Jet1D) -> Result<(), TestCaseError> {
    let id = Jet1D::identity(f.order());
    prop_assert_eq!(&id.compose(f), f);
    prop_assert_eq!(&f.compose(&id), f);
    Ok(())
}

pub fn inversion_round_trip(f: &Jet1D) -> Result<(), TestCaseError> {
    let g = f.inverse().unwrap();
    let id = Jet1D::identity(f.order());
    prop_assert_eq!(&f.compose(&g), &id);
    prop_assert_eq!(&g.compose(f), &id);
    prop_assert_eq!(&g, &oracle_inverse(f));
    Ok(())
}

/// The first nonzero constant of an orientation-reversing jet has odd
/// index and agrees with the oracle.
pub fn odd_first_constant(f: &Jet1D) -> Result<(), TestCaseError> {
    let k = stability_constants(f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&k.w_values, &oracle_w(f));
    let first = oracle_first_v(f);
    prop_assert_eq!(&k.v_first, &first);
    if let Some((l, _)) = first {
        prop_assert_eq!(l % 2, 1, "first nonzero constant at even index {}", l);
    }
    Ok(())
}

/// Odd-only jets `-x + a_3 x^3 + a_5 x^5 + ...`: if every `V` through the
/// order vanished, every odd coefficient would vanish too. Equivalently,
/// the first nonzero constant sits at the first nonzero odd coefficient
/// and equals `-2` times it.
pub fn odd_only_lemma(odd: &[Rational]) -> Result<(), TestCaseError> {
    let order = 2 * odd.len() + 1;
    let mut c = vec![Rational::zero(); order];
    c[0] = rat(-1);
    for (i, a) in odd.iter().enumerate() {
        c[2 * i + 2] = a.clone();
    }
    let f = Jet1D::from_coeffs(c).unwrap();
    let k = stability_constants(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let first_odd = odd.iter().position(|a| !a.is_zero());
    match (first_odd, &k.v_first) {
        (None, None) => {}
        (Some(i), Some((l, v))) => {
            prop_assert_eq!(*l, 2 * i + 3);
            prop_assert_eq!(v, &(rat(-2) * &odd[i]));
        }
        (a, b) => {
            return Err(TestCaseError::fail(format!(
                "odd coefficient {a:?} against constant {b:?}"
            )))
        }
    }
    Ok(())
}

/// Returns `Ok(false)` when the pair is not a determinate LAS/LAS or
/// repeller/repeller pair, so callers can discard it.
pub fn composition_closure(f1: &Jet1D, f2: &Jet1D) -> Result<bool, TestCaseError> {
    let v1 = classify_1d(f1).unwrap().verdict;
    let v2 = classify_1d(f2).unwrap().verdict;
    let both = |v| v1 == v && v2 == v;
    if !(both(Verdict1D::Las) || both(Verdict1D::Repeller)) {
        return Ok(false);
    }
    let comp = classify_1d(&f2.compose(f1)).unwrap().verdict;
    if both(Verdict1D::Las) {
        prop_assert_ne!(comp, Verdict1D::Repeller, "{} then {}", f1, f2);
    } else {
        prop_assert_ne!(comp, Verdict1D::Las, "{} then {}", f1, f2);
    }
    Ok(true)
}

pub fn complex_coeff() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| Complex64::new(a, b))
}

/// Rotation angles away from `0`, `π` and the cube roots of unity.
pub fn planar_jet() -> impl Strategy<Value = ComplexJet2> {
    (
        prop_oneof![0.3f64..1.8, 2.4f64..2.9, -1.8f64..-0.3],
        prop::collection::vec(complex_coeff(), 7),
    )
        .prop_map(|(theta, c)| {
            let monomials = [(2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
            let terms: Vec<_> = monomials.iter().cloned().zip(c).collect();
            ComplexJet2::new(Complex64::from_polar(1.0, theta), &terms).unwrap()
        })
}

pub fn planar_round_trip(g: &ComplexJet2) -> Result<(), TestCaseError> {
    let back = real_to_complex(&complex_to_real(g), 1e-9).unwrap();
    prop_assert!(
        back.max_coeff_diff(g) <= 1e-10,
        "gap {}",
        back.max_coeff_diff(g)
    );
    Ok(())
}

/// Under `z = c w` the coefficient of `z^m z̄^j` becomes
/// `a c^{m-1} c̄^j` and `B_1` scales by `|c|^2`.
pub fn scaling_conjugacy(g: &ComplexJet2, c: Complex64) -> Result<(), TestCaseError> {
    let h = g.map_coeffs(|m, j, a| a * c.powi(m as i32 - 1) * c.conj().powi(j as i32));
    let bg = birkhoff_b1(g, 1e-9).unwrap().b1;
    let bh = birkhoff_b1(&h, 1e-9).unwrap().b1;
    let want = bg * c.norm_sqr();
    let scale = 1.0f64.max(want.norm());
    prop_assert!((bh - want).norm() <= 1e-10 * scale, "{} vs {}", bh, want);
    Ok(())
}

pub fn scaling_factor() -> impl Strategy<Value = Complex64> {
    (0.5f64..2.0, -3.1f64..3.1).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Makes `V_3, ..., V_{l-2}` vanish by solving each for its (linear)
/// odd coefficient, using the oracle's `W_j`: the coefficient `a_j`
/// enters `W_j` as `-2 a_j`.
pub fn kill_constants_below(f: &Jet1D, l: usize) -> Jet1D {
    let mut c = f.coeffs().to_vec();
    for j in (3..l).step_by(2) {
        c[j - 1] = Rational::zero();
        let g = Jet1D::from_coeffs(c.clone()).unwrap();
        let w = oracle_w(&g)
            .into_iter()
            .find(|(k, _)| *k == j)
            .map(|(_, w)| w)
            .unwrap();
        c[j - 1] = w / rat(2);
    }
    Jet1D::from_coeffs(c).unwrap()
}

/// Every printed constant whose predecessors all vanish equals the
/// oracle's `W`. Returns how many constants were compared.
pub fn closed_forms_agree(f: &Jet1D) -> Result<usize, TestCaseError> {
    let w = oracle_w(f);
    let printed = parrondo_lab::stability1d::closed_form_constants(f).unwrap();
    let mut compared = 0;
    for (l, v) in printed {
        if w.iter().filter(|(j, _)| *j < l).all(|(_, x)| x.is_zero()) {
            let wl = &w.iter().find(|(j, _)| *j == l).unwrap().1;
            prop_assert_eq!(&v, wl, "V{} of {}", l, f);
            compared += 1;
        }
    }
    Ok(compared)
}

pub fn reversing_jet_order_11() -> impl Strategy<Value = Jet1D> {
    prop::collection::vec(small_rational(), 10).prop_map(|rest| {
        let mut c = vec![rat(-1)];
        c.extend(rest);
        Jet1D::from_coeffs(c).unwrap()
    })
}
