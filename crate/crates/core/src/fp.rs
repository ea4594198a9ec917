//! Arithmetic over prime fields F_p and the polynomial ring F_p[T].
//!
//! Only prime moduli are supported; prime-power counts are handled
//! symbolically elsewhere through polynomial identities in q.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by zero polynomial")]
    DivisionByZero,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a ≠ 0.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Dense polynomial over F_p, ascending coefficients without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn var(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn neg(&self) -> FpPoly {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        FpPoly::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, coeffs)
    }

    pub fn divrem(&self, divisor: &FpPoly) -> Result<(FpPoly, FpPoly), FpError> {
        assert_eq!(self.p, divisor.p);
        if divisor.is_zero() {
            return Err(FpError::DivisionByZero);
        }
        let p = self.p;
        let dlead = *divisor.coeffs.last().unwrap();
        let dinv = inv_mod(dlead, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(divisor.coeffs.len() - 1)];
        while rem.len() >= divisor.coeffs.len() && !rem.is_empty() {
            let shift = rem.len() - divisor.coeffs.len();
            let factor = rem.last().unwrap() * dinv % p;
            if factor != 0 {
                quot[shift] = factor;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    let sub = factor * d % p;
                    rem[shift + i] = (rem[shift + i] + p - sub) % p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() < divisor.coeffs.len() {
                break;
            }
        }
        Ok((FpPoly::new(p, quot), FpPoly::new(p, rem)))
    }

    pub fn divides(&self, other: &FpPoly) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Multiplicity of `f` in `self` and the remaining cofactor.
    pub fn multiplicity_of(&self, f: &FpPoly) -> (i64, FpPoly) {
        assert!(!self.is_zero() && !f.is_zero());
        let mut m = 0i64;
        let mut g = self.clone();
        loop {
            let (q, r) = g.divrem(f).unwrap();
            if r.is_zero() {
                m += 1;
                g = q;
            } else {
                return (m, g);
            }
        }
    }

    /// Trial division against monic polynomials of lower degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        for e in 1..=(d / 2) {
            for f in monic_polys(self.p, e) {
                if f.divides(self) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            match (i, c) {
                (0, _) => parts.push(format!("{}", c)),
                (1, 1) => parts.push("T".to_string()),
                (1, _) => parts.push(format!("{}*T", c)),
                (_, 1) => parts.push(format!("T^{}", i)),
                (_, _) => parts.push(format!("{}*T^{}", c, i)),
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// All monic polynomials of exact degree d over F_p, in lexicographic
/// order of their coefficient vectors.
pub fn monic_polys(p: u64, d: usize) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let total = (p as u128).pow(d as u32);
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut c = code;
        for _ in 0..d {
            coeffs.push((c % p as u128) as u64);
            c /= p as u128;
        }
        coeffs.push(1);
        out.push(FpPoly::new(p, coeffs));
    }
    out
}

/// Monic irreducibles of exact degree d, by trial division.
pub fn monic_irreducibles(p: u64, d: usize) -> Vec<FpPoly> {
    monic_polys(p, d).into_iter().filter(|f| f.is_irreducible()).collect()
}
