//! Local stability of the origin for one-dimensional jets.
//!
//! Orientation-preserving jets (`a_1 = 1`) are decided by their first
//! nonlinear term. Orientation-reversing jets (`a_1 = -1`) are decided by
//! the first nonzero coefficient `W_j` of `f∘f - x`; that index is always
//! odd and its sign picks LAS (negative) or repeller (positive).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jet::{rat, Jet1D, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConstants1D {
    /// `(j, W_j)` for `3 <= j <= order`.
    pub w_values: Vec<(usize, Rational)>,
    /// First nonzero `W`, i.e. the stability constant `V_l`.
    pub v_first: Option<(usize, Rational)>,
    pub involution_up_to_order: bool,
}

impl StabilityConstants1D {
    pub fn w(&self, j: usize) -> Option<&Rational> {
        self.w_values.iter().find(|(i, _)| *i == j).map(|(_, w)| w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict1D {
    HyperbolicAttracting,
    HyperbolicRepelling,
    Las,
    Repeller,
    SemiAsLeft,
    SemiAsRight,
    InvolutionUpToOrder,
    UndeterminedAtOrder,
}

impl Verdict1D {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict1D::HyperbolicAttracting => "HyperbolicAttracting",
            Verdict1D::HyperbolicRepelling => "HyperbolicRepelling",
            Verdict1D::Las => "LAS",
            Verdict1D::Repeller => "Repeller",
            Verdict1D::SemiAsLeft => "SemiASLeft",
            Verdict1D::SemiAsRight => "SemiASRight",
            Verdict1D::InvolutionUpToOrder => "InvolutionUpToOrder",
            Verdict1D::UndeterminedAtOrder => "UndeterminedAtOrder",
        }
    }

    pub fn is_determinate(self) -> bool {
        !matches!(
            self,
            Verdict1D::InvolutionUpToOrder | Verdict1D::UndeterminedAtOrder
        )
    }
}

impl fmt::Display for Verdict1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule1D {
    /// `|f'(0)| != 1`.
    Linearization,
    /// `f'(0) = 1`: sign and parity of the first nonlinear coefficient.
    OrientationPreserving,
    /// `f'(0) = -1`: sign of the first nonzero stability constant.
    OrientationReversing,
}

impl Rule1D {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule1D::Linearization => "hyperbolic linearization",
            Rule1D::OrientationPreserving => "orientation preserving: first nonlinear term",
            Rule1D::OrientationReversing => "orientation reversing: first stability constant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification1D {
    pub verdict: Verdict1D,
    pub rule: Rule1D,
    /// Order of the deciding term, or the jet order when nothing decided.
    pub order: usize,
    /// The deciding coefficient (`a_m` or `V_l`), if any.
    pub deciding_value: Option<Rational>,
}

fn require_reversing(f: &Jet1D) -> Result<()> {
    if *f.multiplier() != rat(-1) {
        return Err(Error::WrongMultiplier(f.multiplier().to_string()));
    }
    Ok(())
}

/// Reads `W_j` off `f∘f` for `3 <= j <= order`.
pub fn stability_constants(f: &Jet1D) -> Result<StabilityConstants1D> {
    require_reversing(f)?;
    let sq = f.square();
    let w_values: Vec<(usize, Rational)> = (3..=f.order()).map(|j| (j, sq.coeff(j))).collect();
    let v_first = w_values.iter().find(|(_, w)| !w.is_zero()).cloned();
    if let Some((l, _)) = &v_first {
        if l % 2 == 0 {
            return Err(Error::InvariantBreach(format!(
                "first nonzero stability constant has even index {l}"
            )));
        }
    }
    Ok(StabilityConstants1D {
        involution_up_to_order: v_first.is_none(),
        w_values,
        v_first,
    })
}

/// Printed closed forms for `V_3, V_5, ..., V_11`, as far as the jet's
/// order allows. Each `V_{2m+1}` matches the true constant only when all
/// earlier constants vanish.
pub fn closed_form_constants(f: &Jet1D) -> Result<Vec<(usize, Rational)>> {
    require_reversing(f)?;
    let a = |k: usize| f.coeff(k);
    let c = |n: i64| rat(n);
    let (a2, a4, a6, a8, a10) = (a(2), a(4), a(6), a(8), a(10));
    let p = |x: &Rational, e: i32| num_traits::pow(x.clone(), e as usize);
    let two = c(2);
    let mut out = Vec::new();
    if f.order() >= 3 {
        let v3 = &two * (-p(&a2, 2) - a(3));
        out.push((3, v3));
    }
    if f.order() >= 5 {
        let v5 = &two * (c(2) * p(&a2, 4) - c(3) * &a2 * &a4 - a(5));
        out.push((5, v5));
    }
    if f.order() >= 7 {
        let v7 = &two
            * (c(-13) * p(&a2, 6) + c(18) * p(&a2, 3) * &a4
                - c(4) * &a6 * &a2
                - c(2) * p(&a4, 2)
                - a(7));
        out.push((7, v7));
    }
    if f.order() >= 9 {
        let v9 = &two
            * (c(145) * p(&a2, 8) - c(221) * p(&a2, 5) * &a4
                + c(35) * p(&a2, 3) * &a6
                + c(50) * p(&a2, 2) * p(&a4, 2)
                - c(5) * &a2 * &a8
                - c(5) * &a6 * &a4
                - a(9));
        out.push((9, v9));
    }
    if f.order() >= 11 {
        let v11 = &two
            * (c(-2328) * p(&a2, 10) + c(3879) * p(&a2, 7) * &a4
                - c(561) * p(&a2, 5) * &a6
                - c(1263) * p(&a2, 4) * p(&a4, 2)
                + c(61) * p(&a2, 3) * &a8
                + c(171) * p(&a2, 2) * &a4 * &a6
                + c(55) * &a2 * p(&a4, 3)
                - c(6) * &a2 * &a10
                - c(6) * &a4 * &a8
                - c(3) * p(&a6, 2)
                - a(11));
        out.push((11, v11));
    }
    Ok(out)
}

pub fn classify_1d(f: &Jet1D) -> Result<Classification1D> {
    let a1 = f.multiplier().clone();
    let one = Rational::one();
    if a1.abs() != one {
        let verdict = if a1.abs() < one {
            Verdict1D::HyperbolicAttracting
        } else {
            Verdict1D::HyperbolicRepelling
        };
        return Ok(Classification1D {
            verdict,
            rule: Rule1D::Linearization,
            order: 1,
            deciding_value: Some(a1),
        });
    }
    if a1 == one {
        let Some(m) = f.first_nonzero_from(2) else {
            return Ok(Classification1D {
                verdict: Verdict1D::UndeterminedAtOrder,
                rule: Rule1D::OrientationPreserving,
                order: f.order(),
                deciding_value: None,
            });
        };
        let am = f.coeff(m);
        let positive = am.is_positive();
        let verdict = match (m % 2 == 0, positive) {
            (true, true) => Verdict1D::SemiAsLeft,
            (true, false) => Verdict1D::SemiAsRight,
            (false, true) => Verdict1D::Repeller,
            (false, false) => Verdict1D::Las,
        };
        return Ok(Classification1D {
            verdict,
            rule: Rule1D::OrientationPreserving,
            order: m,
            deciding_value: Some(am),
        });
    }
    let constants = stability_constants(f)?;
    Ok(match constants.v_first {
        Some((l, v)) => Classification1D {
            verdict: if v.is_negative() {
                Verdict1D::Las
            } else {
                Verdict1D::Repeller
            },
            rule: Rule1D::OrientationReversing,
            order: l,
            deciding_value: Some(v),
        },
        None => Classification1D {
            verdict: Verdict1D::InvolutionUpToOrder,
            rule: Rule1D::OrientationReversing,
            order: f.order(),
            deciding_value: None,
        },
    })
}

/// `±x ± x^{m+1} + c x^{2m+1}` padded (or truncated) to `order`.
pub fn normal_form_jet(
    sign_linear: i32,
    sign_nonlinear: i32,
    m: usize,
    c: Rational,
    order: usize,
) -> Result<Jet1D> {
    let unit = |s: i32, what: &str| match s {
        1 => Ok(rat(1)),
        -1 => Ok(rat(-1)),
        _ => Err(Error::InvalidNormalForm(format!(
            "{what} must be +1 or -1, got {s}"
        ))),
    };
    let lin = unit(sign_linear, "linear sign")?;
    let nonlin = unit(sign_nonlinear, "nonlinear sign")?;
    if m == 0 {
        return Err(Error::InvalidNormalForm("m must be positive".into()));
    }
    if sign_linear == -1 && !m.is_multiple_of(2) {
        return Err(Error::InvalidNormalForm(format!(
            "orientation-reversing normal forms need even m, got {m}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidNormalForm("order must be positive".into()));
    }
    let mut coeffs = vec![Rational::zero(); order];
    coeffs[0] = lin;
    if m < order {
        coeffs[m] = nonlin;
    }
    if 2 * m < order {
        coeffs[2 * m] += c;
    }
    Jet1D::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(c: &[i64]) -> Jet1D {
        Jet1D::from_ints(c).unwrap()
    }

    fn verdict(c: &[i64]) -> Verdict1D {
        classify_1d(&jet(c)).unwrap().verdict
    }

    #[test]
    fn constants_of_composed_example() {
        let k = stability_constants(&jet(&[-1, 0, 0, 90, -48])).unwrap();
        assert_eq!(k.w(3), Some(&rat(0)));
        assert_eq!(k.w(4), Some(&rat(0)));
        assert_eq!(k.v_first, Some((5, rat(96))));
        assert!(!k.involution_up_to_order);
    }

    #[test]
    fn wrong_multiplier_is_rejected() {
        assert!(matches!(
            stability_constants(&jet(&[1, 1])),
            Err(Error::WrongMultiplier(_))
        ));
        assert!(matches!(
            closed_form_constants(&jet(&[2, 1, 1])),
            Err(Error::WrongMultiplier(_))
        ));
    }

    #[test]
    fn closed_form_spot_checks() {
        let v = closed_form_constants(&jet(&[-1, 1, -1])).unwrap();
        assert_eq!(v, vec![(3, rat(0))]);
        let v = closed_form_constants(&jet(&[-1, 0, 0, 90, 48])).unwrap();
        assert_eq!(v, vec![(3, rat(0)), (5, rat(-96))]);
        let v = closed_form_constants(&jet(&[-1]).padded(3)).unwrap();
        assert_eq!(v, vec![(3, rat(0))]);
        // only a2 set
        let v = closed_form_constants(&jet(&[-1, 3, 0])).unwrap();
        assert_eq!(v[0], (3, rat(-18)));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(verdict(&[-1, 0, 0, 90, 48]), Verdict1D::Las);
        assert_eq!(verdict(&[-1, 0, 0, 90, -72]), Verdict1D::Repeller);
        assert_eq!(verdict(&[1, 1, -4, 2]), Verdict1D::SemiAsLeft);
        assert_eq!(verdict(&[1, -1]), Verdict1D::SemiAsRight);
        assert_eq!(verdict(&[1, 0, 0, 0, 0, 0, -1]), Verdict1D::Las);
        assert_eq!(verdict(&[1, 0, 0, 0, 0, 0, 1]), Verdict1D::Repeller);
    }

    #[test]
    fn hyperbolic_and_degenerate_cases() {
        let half = Jet1D::from_coeffs(vec![crate::jet::ratio(1, 2), rat(5)]).unwrap();
        assert_eq!(
            classify_1d(&half).unwrap().verdict,
            Verdict1D::HyperbolicAttracting
        );
        assert_eq!(verdict(&[-3, 1]), Verdict1D::HyperbolicRepelling);
        let id = classify_1d(&Jet1D::identity(4)).unwrap();
        assert_eq!(id.verdict, Verdict1D::UndeterminedAtOrder);
        assert_eq!(id.order, 4);
        let inv = classify_1d(&jet(&[-1, 0, 0])).unwrap();
        assert_eq!(inv.verdict, Verdict1D::InvolutionUpToOrder);
        // jet of the involution x -> -x/(1+x)
        let inv = classify_1d(&jet(&[-1, 1, -1, 1, -1, 1, -1])).unwrap();
        assert_eq!(inv.verdict, Verdict1D::InvolutionUpToOrder);
    }

    #[test]
    fn decided_order_is_reported() {
        let c = classify_1d(&jet(&[-1, 0, 0, 90, -48])).unwrap();
        assert_eq!((c.order, c.rule), (5, Rule1D::OrientationReversing));
        let c = classify_1d(&jet(&[1, 0, 0, 0, 0, 0, -1])).unwrap();
        assert_eq!((c.order, c.rule), (7, Rule1D::OrientationPreserving));
    }

    #[test]
    fn normal_forms() {
        let f = normal_form_jet(1, 1, 2, rat(0), 5).unwrap();
        assert_eq!(f, jet(&[1, 0, 1, 0, 0]));
        assert_eq!(classify_1d(&f).unwrap().verdict, Verdict1D::Repeller);
        let f = normal_form_jet(-1, 1, 2, rat(0), 5).unwrap();
        assert_eq!(f, jet(&[-1, 0, 1, 0, 0]));
        assert_eq!(classify_1d(&f).unwrap().verdict, Verdict1D::Las);
        let f = normal_form_jet(-1, -1, 2, rat(0), 5).unwrap();
        assert_eq!(classify_1d(&f).unwrap().verdict, Verdict1D::Repeller);
        let f = normal_form_jet(1, 1, 1, rat(3), 3).unwrap();
        assert_eq!(f, jet(&[1, 1, 3]));
        assert_eq!(classify_1d(&f).unwrap().verdict, Verdict1D::SemiAsLeft);
        let f = normal_form_jet(1, -1, 1, rat(0), 3).unwrap();
        assert_eq!(classify_1d(&f).unwrap().verdict, Verdict1D::SemiAsRight);
    }

    #[test]
    fn normal_form_parity_precondition() {
        assert!(matches!(
            normal_form_jet(-1, 1, 1, rat(0), 5),
            Err(Error::InvalidNormalForm(_))
        ));
        assert!(matches!(
            normal_form_jet(2, 1, 2, rat(0), 5),
            Err(Error::InvalidNormalForm(_))
        ));
    }

    #[test]
    fn lemma2_small_case() {
        // a2 = 0 and V3 = 0 force a3 = 0
        for a3 in -3..=3 {
            let f = jet(&[-1, 0, a3]);
            let v3 = stability_constants(&f).unwrap().w(3).cloned().unwrap();
            assert_eq!(v3.is_zero(), a3 == 0);
        }
    }
}
