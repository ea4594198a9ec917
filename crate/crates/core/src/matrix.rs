//! Integer matrices and the Smith normal form.
//!
//! The normal form drives unit-group rank detection: the unit lattice of a
//! presented monoid is ℤⁿ modulo a relation lattice, and its free rank and
//! torsion are read off the invariant factors.

use num::traits::{Signed, Zero};

use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntegerMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::from(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows.into_iter().flatten().map(Int::from).collect();
        IntegerMatrix::new(r, c, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &Int) {
        for j in 0..self.cols {
            let v = self[(b, j)].clone() * k;
            self[(a, j)] = self[(a, j)].clone() + v;
        }
    }

    fn add_col(&mut self, a: usize, b: usize, k: &Int) {
        for i in 0..self.rows {
            let v = self[(i, b)].clone() * k;
            self[(i, a)] = self[(i, a)].clone() + v;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self[(a, j)] = -self[(a, j)].clone();
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `U·M·V = D` with unimodular transforms.
pub struct SmithForm {
    /// Nonzero invariant factors d₁ | d₂ | …, all positive.
    pub invariant_factors: Vec<Int>,
    /// Row transform (rows × rows).
    pub row_transform: IntegerMatrix,
    /// Column transform (cols × cols).
    pub col_transform: IntegerMatrix,
    /// Inverse of the column transform; its rows express the normal-form
    /// coordinates in the original basis.
    pub col_transform_inv: IntegerMatrix,
}

/// Computes the Smith normal form, tracking both transforms.
pub fn smith_form(m: &IntegerMatrix) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let mut v_inv = IntegerMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    let mut t = 0;
    while t < n {
        // Find a pivot: the nonzero entry of smallest absolute value in the
        // remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }

        // Clear row and column t; restart whenever a remainder reduces the
        // pivot, which terminates since |pivot| strictly decreases.
        let mut clean = true;
        for i in (t + 1)..d.rows {
            if !d[(i, t)].is_zero() {
                let q = div_round(&d[(i, t)], &d[(t, t)]);
                let k = -q;
                d.add_row(i, t, &k);
                u.add_row(i, t, &k);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..d.cols {
            if !d[(t, j)].is_zero() {
                let q = div_round(&d[(t, j)], &d[(t, t)]);
                let k = -q;
                d.add_col(j, t, &k);
                v.add_col(j, t, &k);
                v_inv.add_row(t, j, &(-k.clone()));
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }

        // Divisibility fix-up: the pivot must divide every later entry.
        let mut fixed = true;
        'scan: for i in (t + 1)..d.rows {
            for j in (t + 1)..d.cols {
                if !(d[(i, j)].clone() % d[(t, t)].clone()).is_zero() {
                    let one = Int::from(1);
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let mut factors = Vec::new();
    for i in 0..n {
        if !d[(i, i)].is_zero() {
            factors.push(d[(i, i)].clone());
        }
    }
    SmithForm {
        invariant_factors: factors,
        row_transform: u,
        col_transform: v,
        col_transform_inv: v_inv,
    }
}

/// Rounded division, keeping remainders in (-|b|/2, |b|/2].
fn div_round(a: &Int, b: &Int) -> Int {
    let (mut q, r) = num::integer::Integer::div_rem(a, b);
    let two_r = r.abs() * Int::from(2);
    if two_r > b.abs() {
        if (r < Int::zero()) == (b < &Int::zero()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Rank and invariant factors of an integer matrix.
pub fn smith_rank(m: &IntegerMatrix) -> (usize, Vec<Int>) {
    let form = smith_form(m);
    (form.invariant_factors.len(), form.invariant_factors)
}
