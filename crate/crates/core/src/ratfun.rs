//! Rational functions in one variable, stored as reduced integer-polynomial
//! quotients with a positive denominator leading coefficient.

use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFunError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at the evaluation point")]
    Pole,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly<Int>,
    den: Poly<Int>,
}

impl RationalFunction {
    /// Builds `num/den` and reduces: common polynomial factor and integer
    /// content are divided out, the denominator gets a positive leading
    /// coefficient.
    pub fn new(num: Poly<Int>, den: Poly<Int>) -> Result<Self, RatFunError> {
        if den.is_zero() {
            return Err(RatFunError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: Poly<Int>) -> Self {
        Self::reduced(p, Poly::one())
    }

    fn reduced(num: Poly<Int>, den: Poly<Int>) -> Self {
        if num.is_zero() {
            return RationalFunction { num: Poly::zero(), den: Poly::one() };
        }
        // Monic gcd over Q, rescaled to a primitive integer polynomial.
        let g = num.to_rational().gcd(&den.to_rational());
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            let gi = rat_to_primitive_int(&g);
            (num.exact_div(&gi).unwrap(), den.exact_div(&gi).unwrap())
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            let cp = Poly::constant(c);
            num = num.exact_div(&cp).unwrap();
            den = den.exact_div(&cp).unwrap();
        }
        if den.leading_coeff().is_some_and(|lc| lc.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &Poly<Int> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Int> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    /// Evaluates at a rational point; common factors were already cancelled
    /// by the reduction invariant, so a vanishing denominator is a true pole.
    pub fn eval(&self, at: &Rat) -> Result<Rat, RatFunError> {
        let d = self.den.to_rational().eval(at);
        if d.is_zero() {
            return Err(RatFunError::Pole);
        }
        Ok(self.num.to_rational().eval(at) / d)
    }

    /// Ascending power-series coefficients `c_0..=c_n`; requires the
    /// denominator to have a unit constant term.
    pub fn series_coefficients(&self, n: u32) -> Option<Vec<Rat>> {
        let d0 = Rat::from_integer(self.den.coeff(0));
        if d0.is_zero() {
            return None;
        }
        let mut out: Vec<Rat> = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            let mut acc = Rat::from_integer(self.num.coeff(k));
            for i in 1..=k {
                acc -= Rat::from_integer(self.den.coeff(i)) * out[(k - i) as usize].clone();
            }
            out.push(acc / d0.clone());
        }
        Some(out)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("({}) / ({})", self.num.render(var), self.den.render(var))
        }
    }
}

impl Poly<Int> {
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

fn rat_to_primitive_int(p: &Poly<Rat>) -> Poly<Int> {
    // Clear denominators, then strip the content.
    let mut lcm = Int::one();
    for (_, c) in p.iter() {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    let scaled = &p.clone() * &Poly::constant(Rat::from_integer(lcm));
    let z = Poly::<Rat>::to_integer(&scaled).unwrap();
    let c = z.content();
    z.exact_div(&Poly::constant(c)).unwrap()
}

/// Value of the reduced rational function at a point.
pub fn rational_limit(f: &RationalFunction, at: &Rat) -> Result<Rat, RatFunError> {
    f.eval(at)
}
