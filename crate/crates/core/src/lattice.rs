//! Integer row lattices in Hermite normal form.
//!
//! Every lattice is stored in a single canonical shape: row-style upper
//! echelon form, pivot columns strictly increasing, pivots positive, and
//! every entry above a pivot reduced into `[0, pivot)`. Equality of lattices
//! is therefore plain equality of bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coordinate vector with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "crate::serde_int::vec")] pub Vec<BigInt>);

impl IntVector {
    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn leading(&self, from: usize) -> Option<usize> {
        (from..self.0.len()).find(|&i| !self.0[i].is_zero())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Group index of a sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

/// A sublattice of `Z^dim` held in canonical Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBasis {
    dim: usize,
    rows: Vec<IntVector>,
}

impl LatticeBasis {
    /// The rank-0 lattice.
    pub fn zero(dim: usize) -> Self {
        LatticeBasis { dim, rows: Vec::new() }
    }

    /// All of `Z^dim`.
    pub fn full(dim: usize) -> Self {
        LatticeBasis { dim, rows: (0..dim).map(|i| IntVector::unit(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// Pivot column of each row, in row order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading(0).expect("HNF rows are nonzero")).collect()
    }

    /// Checks the canonical-shape conditions. Used to validate deserialized bases.
    pub fn is_canonical(&self) -> bool {
        let mut last: Option<usize> = None;
        let pivots: Vec<Option<usize>> = self.rows.iter().map(|r| r.leading(0)).collect();
        for (i, row) in self.rows.iter().enumerate() {
            if row.dim() != self.dim {
                return false;
            }
            let Some(p) = pivots[i] else { return false };
            if last.is_some_and(|l| l >= p) || !row.0[p].is_positive() {
                return false;
            }
            last = Some(p);
        }
        for (i, p) in pivots.iter().enumerate() {
            let p = p.unwrap();
            let piv = &self.rows[i].0[p];
            for above in &self.rows[..i] {
                let x = &above.0[p];
                if x.is_negative() || x >= piv {
                    return false;
                }
            }
        }
        true
    }

    /// One row per line, entries separated by single spaces.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    fn check_dim(&self, v: &IntVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(())
    }

    fn check_same_dim(&self, other: &LatticeBasis) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Membership by back-substitution through the pivots.
    pub fn contains(&self, v: &IntVector) -> Result<bool> {
        self.check_dim(v)?;
        let mut w = v.0.clone();
        let mut rows = self.rows.iter().peekable();
        for col in 0..self.dim {
            let pivot_row = rows.next_if(|r| !r.0[col].is_zero() && r.leading(0) == Some(col));
            if w[col].is_zero() {
                continue;
            }
            let Some(row) = pivot_row else { return Ok(false) };
            let (q, rem) = w[col].div_rem(&row.0[col]);
            if !rem.is_zero() {
                return Ok(false);
            }
            for (x, r) in w[col..].iter_mut().zip(&row.0[col..]) {
                *x -= &q * r;
            }
        }
        Ok(true)
    }

    /// Syntactic equality of the canonical bases.
    pub fn equal(&self, other: &LatticeBasis) -> Result<bool> {
        self.check_same_dim(other)?;
        Ok(self.rows == other.rows)
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> Result<bool> {
        self.check_same_dim(other)?;
        for r in &other.rows {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        self.check_same_dim(other)?;
        let mut b = HnfBuilder::from_basis(self);
        for r in &other.rows {
            b.insert(r.0.clone());
        }
        Ok(b.finish())
    }

    /// Index `[self : sub]`; `sub` must lie inside `self`.
    pub fn index(&self, sub: &LatticeBasis) -> Result<LatticeIndex> {
        if !self.contains_lattice(sub)? {
            return Err(Error::NotContained);
        }
        if sub.rank() < self.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        // Equal rank and containment force identical pivot columns, so the
        // index is the ratio of the pivot products.
        let prod = |l: &LatticeBasis| -> BigInt {
            l.rows.iter().zip(l.pivots()).map(|(r, p)| r.0[p].clone()).product()
        };
        Ok(LatticeIndex::Finite(prod(sub) / prod(self)))
    }
}

/// HNF of the integer row span of `rows`.
pub fn hnf(rows: &[IntVector], dim: usize) -> Result<LatticeBasis> {
    let mut b = HnfBuilder::new(dim);
    for r in rows {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
        b.insert(r.0.clone());
    }
    Ok(b.finish())
}

/// Basis of the integer kernel `{x in Z^n : sum_i x_i rows_i = 0}`.
pub fn integer_kernel(rows: &[IntVector], dim: usize) -> Result<LatticeBasis> {
    let n = rows.len();
    let mut b = HnfBuilder::new(dim + n);
    for (i, r) in rows.iter().enumerate() {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
        let mut aug = r.0.clone();
        aug.resize(dim + n, BigInt::zero());
        aug[dim + i] = BigInt::one();
        b.insert(aug);
    }
    let full = b.finish();
    let kernel: Vec<IntVector> = full
        .rows
        .into_iter()
        .filter(|r| r.0[..dim].iter().all(Zero::is_zero))
        .map(|r| IntVector(r.0[dim..].to_vec()))
        .collect();
    // The kernel rows already form a canonical HNF of their own span.
    Ok(LatticeBasis { dim: n, rows: kernel })
}

/// Incremental Hermite normal form.
///
/// Rows are inserted one at a time and eliminated against the current
/// pivot rows with extended-gcd row operations. Reduction above the
/// pivots happens in [`HnfBuilder::finish`].
#[derive(Debug, Clone)]
pub struct HnfBuilder {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivot_at: Vec<Option<usize>>,
}

impl HnfBuilder {
    pub fn new(dim: usize) -> Self {
        HnfBuilder { dim, rows: Vec::new(), pivot_at: vec![None; dim] }
    }

    pub fn from_basis(l: &LatticeBasis) -> Self {
        let mut b = Self::new(l.dim);
        for (r, p) in l.rows.iter().zip(l.pivots()) {
            b.pivot_at[p] = Some(b.rows.len());
            b.rows.push(r.0.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a row; returns `true` if the span grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut grew = false;
        let mut col = (0..self.dim).find(|&i| !v[i].is_zero());
        while let Some(c) = col {
            match self.pivot_at[c] {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.reduce_below(&mut v, c);
                    self.pivot_at[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
                Some(ri) => {
                    grew |= self.eliminate(ri, &mut v, c);
                    col = (c + 1..self.dim).find(|&i| !v[i].is_zero());
                }
            }
        }
        grew
    }

    /// Clears `v[c]` against the pivot row `ri`. Returns `true` when the pivot
    /// row itself changed (strictly smaller pivot).
    fn eliminate(&mut self, ri: usize, v: &mut [BigInt], c: usize) -> bool {
        let a = self.rows[ri][c].clone();
        let b = v[c].clone();
        let (q, r) = b.div_rem(&a);
        if r.is_zero() {
            let p = &self.rows[ri];
            for k in c..self.dim {
                if !p[k].is_zero() {
                    v[k] -= &q * &p[k];
                }
            }
            return false;
        }
        let eg = a.extended_gcd(&b);
        let (g, s, t) = (eg.gcd, eg.x, eg.y);
        let a_g = &a / &g;
        let b_g = &b / &g;
        let mut newp = vec![BigInt::zero(); self.dim];
        {
            let p = &self.rows[ri];
            for k in c..self.dim {
                let pk = &p[k];
                let vk = &v[k];
                newp[k] = &s * pk + &t * vk;
                v[k] = &a_g * vk - &b_g * pk;
            }
        }
        if newp[c].is_negative() {
            newp.iter_mut().for_each(|x| *x = -&*x);
        }
        self.reduce_below(&mut newp, c);
        self.rows[ri] = newp;
        true
    }

    /// Reduces the entries of `v` at pivot columns greater than `c`.
    fn reduce_below(&self, v: &mut [BigInt], c: usize) {
        for col in c + 1..self.dim {
            if v[col].is_zero() {
                continue;
            }
            if let Some(ri) = self.pivot_at[col] {
                let p = &self.rows[ri];
                let q = v[col].div_floor(&p[col]);
                if !q.is_zero() {
                    for k in col..self.dim {
                        if !p[k].is_zero() {
                            v[k] -= &q * &p[k];
                        }
                    }
                }
            }
        }
    }

    pub fn finish(self) -> LatticeBasis {
        let HnfBuilder { dim, rows, pivot_at } = self;
        let mut ordered: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(rows.len());
        let mut rows: Vec<Option<Vec<BigInt>>> = rows.into_iter().map(Some).collect();
        for (col, slot) in pivot_at.iter().enumerate() {
            if let Some(ri) = slot {
                ordered.push((col, rows[*ri].take().unwrap()));
            }
        }
        for i in 0..ordered.len() {
            let (pc, _) = ordered[i];
            let (head, tail) = ordered.split_at_mut(i);
            let pivot_row = &tail[0].1;
            let piv = &pivot_row[pc];
            for (_, above) in head.iter_mut() {
                let q = above[pc].div_floor(piv);
                if !q.is_zero() {
                    for k in pc..dim {
                        if !pivot_row[k].is_zero() {
                            above[k] -= &q * &pivot_row[k];
                        }
                    }
                }
            }
        }
        LatticeBasis { dim, rows: ordered.into_iter().map(|(_, r)| IntVector(r)).collect() }
    }
}
