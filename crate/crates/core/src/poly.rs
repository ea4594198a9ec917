//! Sparse univariate polynomials over an exact scalar.
//!
//! The canonical rendering is descending in the exponent, e.g.
//! `q^2 + q + 1`; the variable name defaults to `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::Integer;
use num::traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{FieldScalar, Scalar};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact (nonzero remainder)")]
    NonExactDivision,
}

/// Sparse polynomial: exponent → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C: Scalar> {
    terms: BTreeMap<u32, C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The monomial `c·x^e`.
    pub fn monomial(e: u32, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// The variable `x`.
    pub fn var() -> Self {
        Self::monomial(1, C::one())
    }

    /// Builds from ascending coefficients `[c0, c1, ...]`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(e as u32, c);
            }
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, e: u32) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &C)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates by Horner-free sparse summation.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut p = C::one();
            for _ in 0..*e {
                p = p * x.clone();
            }
            acc = acc + c.clone() * p;
        }
        acc
    }

    /// Renders with the given variable name, descending exponents.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_one = abs.is_one();
            match (*e, coeff_is_one) {
                (0, _) => out.push_str(&format!("{}", abs)),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{}*{}", abs, var)),
                (_, true) => out.push_str(&format!("{}^{}", var, e)),
                (_, false) => out.push_str(&format!("{}*{}^{}", abs, var, e)),
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("q"))
    }
}

impl<C: Scalar> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: FieldScalar> Poly<C> {
    /// Long division: `self = q·g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly<C>) -> Result<(Poly<C>, Poly<C>), PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let gdeg = g.degree().unwrap();
        let glc = g.leading_coeff().unwrap().clone();
        let mut quot = Poly::zero();
        let mut rem = self.clone();
        while let Some(rdeg) = rem.degree() {
            if rdeg < gdeg {
                break;
            }
            let rlc = rem.leading_coeff().unwrap().clone();
            let factor = Poly::monomial(rdeg - gdeg, rlc / glc.clone());
            rem = &rem - &(&factor * g);
            quot = &quot + &factor;
        }
        Ok((quot, rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly<C>) -> Poly<C> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if let Some(lc) = a.leading_coeff().cloned() {
            let inv = C::one() / lc;
            a = &a * &Poly::constant(inv);
        }
        a
    }
}

impl Poly<Int> {
    /// Gcd of the coefficients (positive), 0 for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    pub fn to_rational(&self) -> Poly<Rat> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, Rat::from_integer(c.clone())))
                .collect(),
        }
    }

    /// Exact division in ℤ[x]; errors when the quotient is not integral.
    pub fn exact_div(&self, g: &Poly<Int>) -> Result<Poly<Int>, PolyError> {
        let (q, r) = self.to_rational().divrem(&g.to_rational())?;
        if !r.is_zero() {
            return Err(PolyError::NonExactDivision);
        }
        Poly::<Rat>::to_integer(&q).ok_or(PolyError::NonExactDivision)
    }
}

impl Poly<Rat> {
    /// Back to ℤ[x] when every coefficient is integral.
    pub fn to_integer(p: &Poly<Rat>) -> Option<Poly<Int>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &p.terms {
            if !c.is_integer() {
                return None;
            }
            terms.insert(*e, c.to_integer());
        }
        Some(Poly { terms })
    }
}

/// Division with remainder over ℚ, on integer-coefficient inputs.
pub fn poly_divrem(
    f: &Poly<Int>,
    g: &Poly<Int>,
) -> Result<(Poly<Rat>, Poly<Rat>), PolyError> {
    f.to_rational().divrem(&g.to_rational())
}

/// The n-th cyclotomic polynomial, by exact division of `x^n − 1`.
pub fn cyclotomic_polynomial(n: u32) -> Poly<Int> {
    assert!(n >= 1);
    let mut num = &Poly::monomial(n, Int::one()) - &Poly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = num.exact_div(&phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn qp(coeffs: &[i64]) -> Poly<Int> {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn divrem_by_linear() {
        // q^2 + q + 1 = (q + 2)(q - 1) + 3
        let f = qp(&[1, 1, 1]);
        let g = qp(&[-1, 1]);
        let (q, r) = poly_divrem(&f, &g).unwrap();
        assert_eq!(Poly::to_integer(&q).unwrap(), qp(&[2, 1]));
        assert_eq!(Poly::to_integer(&r).unwrap(), qp(&[3]));
    }

    #[test]
    fn divrem_zero_dividend() {
        let (q, r) = poly_divrem(&Poly::zero(), &qp(&[0, 1])).unwrap();
        assert!(q.is_zero() && r.is_zero());
    }

    #[test]
    fn divrem_by_zero_is_an_error() {
        assert_eq!(
            poly_divrem(&qp(&[1]), &Poly::zero()).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn gl3_order_divided_by_torus_factor() {
        // (q-1)^3 q^3 [3]_q! divided by (q-1)^3 leaves q^3 (q+1)(q^2+q+1).
        let qm1 = qp(&[-1, 1]);
        let torus = qm1.pow(3);
        let unipotent = Poly::monomial(3, int(1));
        let fact = &(&qp(&[1]) * &qp(&[1, 1])) * &qp(&[1, 1, 1]);
        let f = &(&torus * &unipotent) * &fact;
        let (quot, rem) = poly_divrem(&f, &torus).unwrap();
        assert!(rem.is_zero());
        assert_eq!(
            Poly::to_integer(&quot).unwrap(),
            &unipotent * &fact
        );
    }

    #[test]
    fn rendering_is_descending_graded() {
        assert_eq!(qp(&[1, 1, 1]).render("q"), "q^2 + q + 1");
        assert_eq!(qp(&[1, -1, 2]).render("q"), "2*q^2 - q + 1");
        assert_eq!(Poly::<Int>::zero().render("q"), "0");
        assert_eq!(qp(&[-3]).render("q"), "-3");
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_polynomial(1), qp(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), qp(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), qp(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), qp(&[1, -1, 1]));
    }
}
