//! Truncated Taylor jets of one-dimensional maps fixing the origin.
//!
//! A [`Jet1D`] of order `N` stores the exact rational coefficients
//! `a_1, ..., a_N` of `f(x) = a_1 x + a_2 x^2 + ... + a_N x^N + O(N+1)`.
//! All arithmetic is exact; nothing in this module rounds.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or an integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jet1D {
    coeffs: Vec<Rational>,
}

impl Jet1D {
    /// Builds a jet from `[a_1, a_2, ..., a_N]`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `x + O(order+1)`.
    pub fn identity(order: usize) -> Self {
        let order = order.max(1);
        let mut coeffs = vec![Rational::zero(); order];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero for `k == 0` and for `k` beyond the order.
    pub fn coeff(&self, k: usize) -> Rational {
        if k == 0 || k > self.order() {
            Rational::zero()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    /// The multiplier `f'(0)`.
    pub fn multiplier(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Extends with zero coefficients, treating the jet as a polynomial.
    /// Never shortens.
    pub fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if order > coeffs.len() {
            coeffs.resize(order, Rational::zero());
        }
        Self { coeffs }
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order.max(1));
        Self { coeffs }
    }

    /// Exact polynomial evaluation `sum a_k x^k`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc + c) * x;
        }
        acc
    }

    /// `self ∘ inner`, truncated to the smaller of the two orders.
    pub fn compose(&self, inner: &Jet1D) -> Jet1D {
        let n = self.order().min(inner.order());
        let base: Vec<Rational> = inner.coeffs[..n].to_vec();
        let mut result = vec![Rational::zero(); n];
        let mut power = base.clone();
        for k in 1..=n {
            let a = &self.coeffs[k - 1];
            if !a.is_zero() {
                for (r, p) in result.iter_mut().zip(&power) {
                    *r += a * p;
                }
            }
            if k < n {
                power = mul_truncated(&power, &base, n);
            }
        }
        Jet1D { coeffs: result }
    }

    /// `self ∘ self`.
    pub fn square(&self) -> Jet1D {
        self.compose(self)
    }

    /// Local inverse at the origin, solved coefficient by coefficient:
    /// the `x^k` coefficient of `f ∘ g` is `a_1 g_k` plus terms in
    /// `g_1..g_{k-1}` only.
    pub fn inverse(&self) -> Result<Jet1D> {
        let a1 = self.multiplier().clone();
        if a1.is_zero() {
            return Err(Error::NonInvertibleJet);
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n];
        g[0] = a1.recip();
        for k in 2..=n {
            let partial = Jet1D {
                coeffs: g[..k].to_vec(),
            };
            let head = self.truncated(k).compose(&partial);
            g[k - 1] = -head.coeffs[k - 1].clone() / &a1;
        }
        Ok(Jet1D { coeffs: g })
    }

    /// Index of the first nonzero coefficient at or above `from`.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        (from.max(1)..=self.order()).find(|&k| !self.coeffs[k - 1].is_zero())
    }
}

/// Product of two series without constant term, both stored from `x^1`,
/// truncated at `x^n`.
fn mul_truncated(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let p = i + j + 2;
            if p > n {
                break;
            }
            if !bj.is_zero() {
                out[p - 1] += ai * bj;
            }
        }
    }
    out
}

impl fmt::Display for Jet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = i + 1;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", self.order() + 1)
    }
}
