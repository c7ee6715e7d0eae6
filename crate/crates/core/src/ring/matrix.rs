use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{GroupDatum, RingElement};
use crate::scalar::Scalar;

/// A square matrix over a group ring.
#[derive(Debug, PartialEq, Eq)]
pub struct RingMatrix<G: GroupDatum, S: Scalar> {
    group: Arc<G>,
    n: usize,
    entries: Vec<RingElement<G, S>>,
}

impl<G: GroupDatum, S: Scalar> Clone for RingMatrix<G, S> {
    fn clone(&self) -> Self {
        RingMatrix { group: Arc::clone(&self.group), n: self.n, entries: self.entries.clone() }
    }
}

impl<G: GroupDatum, S: Scalar> RingMatrix<G, S> {
    pub fn zero(group: &Arc<G>, n: usize) -> Self {
        RingMatrix { group: Arc::clone(group), n, entries: vec![RingElement::zero(group); n * n] }
    }

    pub fn identity(group: &Arc<G>, n: usize) -> Self {
        Self::diagonal(group, &vec![RingElement::one(group); n])
    }

    pub fn diagonal(group: &Arc<G>, diag: &[RingElement<G, S>]) -> Self {
        let mut m = Self::zero(group, diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// `I + r e_{ij}` with `i != j`.
    pub fn elementary(group: &Arc<G>, n: usize, i: usize, j: usize, r: RingElement<G, S>) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::MatrixShape(format!("elementary matrix needs distinct indices below {n}")));
        }
        let mut m = Self::identity(group, n);
        m.set(i, j, r);
        Ok(m)
    }

    pub fn from_rows(group: &Arc<G>, rows: Vec<Vec<RingElement<G, S>>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::MatrixShape(format!("row of length {} in a {n}x{n} matrix", row.len())));
            }
            for e in row {
                if !(Arc::ptr_eq(e.group(), group) || **e.group() == **group) {
                    return Err(Error::GroupMismatch);
                }
                entries.push(e);
            }
        }
        Ok(RingMatrix { group: Arc::clone(group), n, entries })
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement<G, S> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement<G, S>) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &RingElement<G, S>> {
        self.entries.iter()
    }

    pub fn rows(&self) -> Vec<Vec<RingElement<G, S>>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::MatrixShape(format!("{0}x{0} vs {1}x{1}", self.n, other.n)));
        }
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(&self.group, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RingElement::zero(&self.group);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(RingMatrix { group: Arc::clone(&self.group), n: self.n, entries })
    }

    pub fn trace(&self) -> RingElement<G, S> {
        (0..self.n).fold(RingElement::zero(&self.group), |acc, i| acc.add(self.get(i, i)).expect("same group"))
    }

    /// Checks `E * E = E` exactly, reporting the first offending entry.
    pub fn check_idempotent(&self) -> Result<()> {
        let sq = self.mul(self)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if sq.get(i, j) != self.get(i, j) {
                    return Err(Error::NotIdempotent { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_idempotent(&self) -> bool {
        self.check_idempotent().is_ok()
    }

    /// Entrywise ring map.
    pub fn map<T: Scalar>(&self, f: impl Fn(&RingElement<G, S>) -> RingElement<G, T>) -> RingMatrix<G, T> {
        RingMatrix { group: Arc::clone(&self.group), n: self.n, entries: self.entries.iter().map(f).collect() }
    }
}
