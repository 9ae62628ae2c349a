//! Integer polynomials in the commuting variables `y` and `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial in `y` with integer coefficients, stored densely by exponent.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct YPoly {
    coeffs: Vec<BigInt>,
}

impl YPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The monomial `c * y^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `y` itself.
    pub fn y() -> Self {
        Self::monomial(1, 1)
    }

    /// `1 + y`.
    pub fn one_plus_y() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `y^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    }

    pub fn eval_i64(&self, y: i64) -> BigInt {
        self.eval(&BigInt::from(y))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl From<i64> for YPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &YPoly {
    type Output = YPoly;
    fn add(self, rhs: &YPoly) -> YPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        YPoly::from_coeffs(coeffs)
    }
}

impl Add for YPoly {
    type Output = YPoly;
    fn add(self, rhs: YPoly) -> YPoly {
        &self + &rhs
    }
}

impl AddAssign<&YPoly> for YPoly {
    fn add_assign(&mut self, rhs: &YPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &YPoly {
    type Output = YPoly;
    fn sub(self, rhs: &YPoly) -> YPoly {
        self + &(-rhs)
    }
}

impl Mul for &YPoly {
    type Output = YPoly;
    fn mul(self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        YPoly::from_coeffs(coeffs)
    }
}

impl Mul for YPoly {
    type Output = YPoly;
    fn mul(self, rhs: YPoly) -> YPoly {
        &self * &rhs
    }
}

/// Writes `c * var^k` terms in ascending order joined by ` + ` / ` - `.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, var: &str, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}*{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}*{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "y", &self.coeffs)
    }
}

/// A polynomial in the commuting variables `y` and `t`, keyed by
/// `(y exponent, t exponent)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YTPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl YTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, y_exp: usize, t_exp: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((y_exp, t_exp)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(y_exp, t_exp));
        }
    }

    /// Adds `p(y) * t^t_exp`.
    pub fn add_ypoly(&mut self, p: &YPoly, t_exp: usize) {
        for (k, c) in p.coeffs().iter().enumerate() {
            self.add_term(k, t_exp, c);
        }
    }

    /// `p(y) * t^k * (1 - t)^m`, expanded.
    pub fn ypoly_times_t_binomial(p: &YPoly, k: usize, m: usize) -> Self {
        let mut out = Self::zero();
        let mut binom = BigInt::one();
        for j in 0..=m {
            let sign_binom = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            out.add_ypoly(&p.scale(&sign_binom), k + j);
            binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
        }
        out
    }

    pub fn coeff(&self, y_exp: usize, t_exp: usize) -> BigInt {
        self.terms.get(&(y_exp, t_exp)).cloned().unwrap_or_default()
    }

    /// The coefficient of `t^k`, as a polynomial in `y`.
    pub fn t_coeff(&self, k: usize) -> YPoly {
        let deg = self.terms.keys().filter(|(_, t)| *t == k).map(|(y, _)| *y).max();
        match deg {
            None => YPoly::zero(),
            Some(d) => YPoly::from_coeffs((0..=d).map(|y| self.coeff(y, k)).collect()),
        }
    }

    /// Degree in `t`; `None` for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, t)| *t).max()
    }

    /// Substitutes an integer for `y`, leaving a polynomial in `t` (returned
    /// as dense coefficients of `t^0, t^1, ...`).
    pub fn eval_y(&self, y: i64) -> Vec<BigInt> {
        let Some(deg) = self.t_degree() else {
            return Vec::new();
        };
        (0..=deg).map(|k| self.t_coeff(k).eval_i64(y)).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl Add for &YTPoly {
    type Output = YTPoly;
    fn add(self, rhs: &YTPoly) -> YTPoly {
        let mut out = self.clone();
        for (&(y, t), c) in &rhs.terms {
            out.add_term(y, t, c);
        }
        out
    }
}

impl fmt::Display for YTPoly {
    /// Grouped by ascending power of `t`: `1 + 3*y + 2*y^2 + (2 + 3*y + y^2)*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.t_degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for k in 0..=deg {
            let c = self.t_coeff(k);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let tpow = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{tpow}")?;
            } else {
                write!(f, "({c})*{tpow}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_trims_trailing_zeros() {
        let p = YPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(YPoly::from_i64s(&[0, 0]), YPoly::zero());
    }

    #[test]
    fn product_and_render() {
        let p = &YPoly::one_plus_y() * &YPoly::one_plus_y();
        assert_eq!(p, YPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(p.to_string(), "1 + 2*y + y^2");
        assert_eq!(YPoly::from_i64s(&[0, -3, 1]).to_string(), "-3*y + y^2");
        assert_eq!(YPoly::from_i64s(&[2, -1]).to_string(), "2 - y");
        assert_eq!(YPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_one_sums_coefficients() {
        assert_eq!(YPoly::from_i64s(&[1, 3, 2]).eval_i64(1), BigInt::from(6));
        assert_eq!(YPoly::from_i64s(&[1, 3, 2]).eval_i64(0), BigInt::from(1));
    }

    #[test]
    fn t_binomial_expansion() {
        // (1 + 3y + 2y^2)(1 - t) + 3(1 + y)^2 t
        let mut num = YTPoly::ypoly_times_t_binomial(&YPoly::from_i64s(&[1, 3, 2]), 0, 1);
        let sq = YPoly::from_i64s(&[1, 2, 1]).scale(&BigInt::from(3));
        num = &num + &YTPoly::ypoly_times_t_binomial(&sq, 1, 0);
        assert_eq!(num.to_string(), "1 + 3*y + 2*y^2 + (2 + 3*y + y^2)*t");
        assert_eq!(num.t_coeff(0), YPoly::from_i64s(&[1, 3, 2]));
        assert_eq!(num.eval_y(1), vec![BigInt::from(6), BigInt::from(6)]);
    }

    #[test]
    fn render_unit_t_coefficient() {
        let mut p = YTPoly::zero();
        p.add_term(0, 1, &BigInt::one());
        p.add_term(0, 2, &BigInt::from(4));
        assert_eq!(p.to_string(), "t + (4)*t^2");
    }
}
