//! Commutative checks over `Z[Z^k]`, the Laurent polynomial ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pc::PcPresentation;
use crate::ring::{RingElement, RingMatrix};

/// Largest power of the augmentation ideal containing an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    Finite(u32),
    /// Every Taylor coefficient up to the requested precision vanished.
    AboveBound,
}

fn require_free_abelian(p: &PcPresentation) -> Result<()> {
    if p.is_free_abelian() {
        Ok(())
    } else {
        Err(Error::UnsupportedShape("operation needs a free abelian pc group".into()))
    }
}

fn exponent_ranges(r: &RingElement<PcPresentation, BigInt>) -> Vec<(i64, i64)> {
    let k = r.group().len();
    let mut ranges = vec![(i64::MAX, i64::MIN); k];
    for (w, _) in r.terms() {
        for (i, &e) in w.exponents().iter().enumerate() {
            ranges[i].0 = ranges[i].0.min(e);
            ranges[i].1 = ranges[i].1.max(e);
        }
    }
    ranges
}

/// `2 * (sum of per-coordinate exponent spans) + 4`.
pub fn default_precision(r: &RingElement<PcPresentation, BigInt>) -> u32 {
    let diameter: i64 = exponent_ranges(r).iter().map(|(lo, hi)| if lo <= hi { hi - lo } else { 0 }).sum();
    (2 * diameter + 4) as u32
}

fn binomial_row(n: u64, up_to: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(up_to as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=up_to as u64 {
        if k > n {
            row.push(BigInt::zero());
            continue;
        }
        row.push(c.clone());
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    row
}

/// Visits every `b` in `N^k` with `|b| = total`.
fn for_each_composition(k: usize, total: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    fn rec(parts: &mut Vec<u32>, k: usize, left: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
        if parts.len() + 1 == k {
            parts.push(left);
            let stop = f(parts);
            parts.pop();
            return stop;
        }
        for x in 0..=left {
            parts.push(x);
            let stop = rec(parts, k, left - x, f);
            parts.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if k == 0 {
        return total == 0 && f(&[]);
    }
    rec(&mut Vec::with_capacity(k), k, total, f)
}

/// Order of vanishing of `r` at the trivial character.
///
/// The support is shifted by a monomial so all exponents are non-negative
/// (a unit, so the valuation is unchanged); then `x_i = 1 + t_i` is
/// substituted and the lowest total degree with a nonzero coefficient is
/// found, searching degrees `0..=precision`.
pub fn aug_valuation(r: &RingElement<PcPresentation, BigInt>, precision: Option<u32>) -> Result<Valuation> {
    require_free_abelian(r.group())?;
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let precision = precision.unwrap_or_else(|| default_precision(r));
    let k = r.group().len();
    let ranges = exponent_ranges(r);
    // per term: coefficient and binomial rows (1 + t_i)^{a_i - min_i}
    let expanded: Vec<(BigInt, Vec<Vec<BigInt>>)> = r
        .terms()
        .map(|(w, c)| {
            let rows = w.exponents().iter().zip(&ranges).map(|(&e, &(lo, _))| binomial_row((e - lo) as u64, precision)).collect();
            (c.clone(), rows)
        })
        .collect();
    for degree in 0..=precision {
        let mut found = false;
        for_each_composition(k, degree, &mut |b| {
            let coeff: BigInt = expanded
                .iter()
                .map(|(c, rows)| b.iter().enumerate().fold(c.clone(), |acc, (i, &bi)| acc * &rows[i][bi as usize]))
                .sum();
            found = !coeff.is_zero();
            found
        });
        if found {
            return Ok(Valuation::Finite(degree));
        }
    }
    Ok(Valuation::AboveBound)
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn integer_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

const MAX_DET_SIZE: usize = 6;

/// Laplace expansion over a commutative group ring.
fn ring_determinant(m: &RingMatrix<PcPresentation, BigInt>) -> Result<RingElement<PcPresentation, BigInt>> {
    fn minor(
        m: &RingMatrix<PcPresentation, BigInt>,
        row: usize,
        cols: &mut Vec<usize>,
    ) -> Result<RingElement<PcPresentation, BigInt>> {
        if cols.is_empty() {
            return Ok(RingElement::one(m.group()));
        }
        let mut acc = RingElement::zero(m.group());
        for pos in 0..cols.len() {
            let c = cols[pos];
            let entry = m.get(row, c);
            if entry.is_zero() {
                continue;
            }
            cols.remove(pos);
            let sub = minor(m, row + 1, cols)?;
            cols.insert(pos, c);
            let term = entry.mul(&sub)?;
            acc = if pos % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }
    if m.size() > MAX_DET_SIZE {
        return Err(Error::MatrixShape(format!("determinant limited to size {MAX_DET_SIZE}")));
    }
    minor(m, 0, &mut (0..m.size()).collect())
}

/// Injectivity report for a square matrix over `Z[Z^k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonoReport {
    /// The augmented integer matrix is injective.
    pub mono_mod_delta: bool,
    /// The matrix itself is injective (nonzero determinant in a domain).
    pub mono: bool,
}

pub fn det_mono_check(a: &RingMatrix<PcPresentation, BigInt>) -> Result<MonoReport> {
    require_free_abelian(a.group())?;
    let aug: Vec<Vec<BigInt>> = a.rows().iter().map(|row| row.iter().map(RingElement::augmentation).collect()).collect();
    let mono_mod_delta = !integer_determinant(&aug).is_zero();
    let mono = !ring_determinant(a)?.is_zero();
    Ok(MonoReport { mono_mod_delta, mono })
}

/// Determinant over `Z[Z^k]`, exposed for cross-checks.
pub fn laurent_determinant(a: &RingMatrix<PcPresentation, BigInt>) -> Result<RingElement<PcPresentation, BigInt>> {
    require_free_abelian(a.group())?;
    ring_determinant(a)
}
