//! Oracles shared by the integration tests. Nothing here calls the code paths
//! it is used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use grwb_core::group::{FiniteGroup, Subgroup};
use grwb_core::ideal::IdealLattice;
use grwb_core::lattice::hnf;
use grwb_core::{IntVector, PcPresentation, PcWord, RingElement, RingMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub type Laurent = RingElement<PcPresentation, BigInt>;

/// `C(a, k)` for any integer `a`, the coefficient of `t^k` in `(1 + t)^a`.
pub fn gen_binomial(a: i64, k: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(a - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den)
}

/// Coefficient of `t^b` in the power-series image of a Laurent polynomial
/// under `x_i -> 1 + t_i`.
pub fn taylor_coefficient(r: &Laurent, b: &[u32]) -> BigRational {
    r.terms()
        .map(|(w, c)| {
            w.exponents().iter().zip(b).fold(BigRational::from_integer(c.clone()), |acc, (&a, &k)| acc * gen_binomial(a, k))
        })
        .sum()
}

/// All `b` in `N^k` with `|b| = total`.
pub fn compositions(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Lowest total degree with a nonzero Taylor coefficient, searching up to `limit`.
pub fn oracle_valuation(r: &Laurent, limit: u32) -> Option<u32> {
    let k = r.group().len();
    (0..=limit).find(|&d| compositions(k, d).iter().any(|b| !taylor_coefficient(r, b).is_zero()))
}

/// Rewrites `r` as `x^{-m} * sum_b c_b prod (x_i - 1)^{b_i}` and returns the
/// terms `(b, c_b)`, after checking that the expression expands back to `r`.
pub fn reconstruct_in_delta_powers(r: &Laurent) -> Vec<(Vec<u32>, BigInt)> {
    let g = r.group();
    let k = g.len();
    let mut lo = vec![i64::MAX; k];
    let mut hi = vec![i64::MIN; k];
    for (w, _) in r.terms() {
        for (i, &e) in w.exponents().iter().enumerate() {
            lo[i] = lo[i].min(e);
            hi[i] = hi[i].max(e);
        }
    }
    // shifted polynomial p = x^{-lo} r has non-negative exponents
    let mut shifted = RingElement::zero(g);
    for (w, c) in r.terms() {
        let e: Vec<i64> = w.exponents().iter().zip(&lo).map(|(a, l)| a - l).collect();
        shifted = shifted.add(&RingElement::monomial(g, PcWord(e), c.clone())).unwrap();
    }
    let mut terms = Vec::new();
    let max_deg: u32 = hi.iter().zip(&lo).map(|(h, l)| (h - l) as u32).sum();
    for d in 0..=max_deg {
        for b in compositions(k, d) {
            if b.iter().zip(hi.iter().zip(&lo)).any(|(&bi, (h, l))| bi as i64 > h - l) {
                continue;
            }
            let c = taylor_coefficient(&shifted, &b);
            if !c.is_zero() {
                assert!(c.is_integer());
                terms.push((b, c.to_integer()));
            }
        }
    }
    let mut rebuilt = RingElement::zero(g);
    let unit = RingElement::monomial(g, PcWord(lo.clone()), BigInt::one());
    for (b, c) in &terms {
        let mut prod = unit.scale(c);
        for (i, &bi) in b.iter().enumerate() {
            let xi_minus_one = RingElement::monomial(g, PcWord::generator(k, i, 1), BigInt::one()).sub(&RingElement::one(g)).unwrap();
            prod = prod.mul(&xi_minus_one.pow(bi).unwrap()).unwrap();
        }
        rebuilt = rebuilt.add(&prod).unwrap();
    }
    assert_eq!(&rebuilt, r, "reconstruction must expand back to the element");
    terms
}

pub fn random_laurent(rng: &mut impl Rng, g: &Arc<PcPresentation>, diameter: i64, max_terms: usize) -> Laurent {
    let k = g.len();
    let base: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
    loop {
        let n = rng.gen_range(1..=max_terms);
        let r = RingElement::from_terms(
            g,
            (0..n).map(|_| {
                let e: Vec<i64> = base.iter().map(|b| b + rng.gen_range(0..=diameter)).collect();
                (PcWord(e), BigInt::from(rng.gen_range(-4..=4)))
            }),
        );
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_element(rng: &mut impl Rng, g: &Arc<FiniteGroup>, max_terms: usize) -> RingElement<FiniteGroup, BigInt> {
    let n = rng.gen_range(0..=max_terms);
    RingElement::from_terms(g, (0..n).map(|_| (rng.gen_range(0..g.order()), BigInt::from(rng.gen_range(-3..=3)))))
}

/// `ω(H)` as the span of all `g (h - 1) g'` before any reduction.
pub fn omega_by_all_multiples(h: &Subgroup) -> IdealLattice {
    let g = h.parent();
    let n = g.order();
    let mut rows = Vec::new();
    for &x in h.members() {
        if x == 0 {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                let mut v = IntVector::zeros(n);
                v.0[g.mul(g.mul(a, x), b)] += 1;
                v.0[g.mul(a, b)] -= 1;
                rows.push(v);
            }
        }
    }
    IdealLattice::from_lattice(g, hnf(&rows, n).unwrap()).unwrap()
}

/// Kernel of `ZG -> Z(G/H)` from coset representatives: `g - rep(gH)`.
pub fn kernel_by_cosets(h: &Subgroup) -> IdealLattice {
    let g = h.parent();
    let n = g.order();
    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for x in 0..n {
        let coset_min = h.members().iter().map(|&y| g.mul(x, y)).min().unwrap();
        let r = *rep.entry(coset_min).or_insert(x);
        if r != x {
            let mut v = IntVector::zeros(n);
            v.0[x] += 1;
            v.0[r] -= 1;
            rows.push(v);
        }
    }
    IdealLattice::from_lattice(g, hnf(&rows, n).unwrap()).unwrap()
}

/// `U = E_1 E_2 ... E_k` and its inverse, from random elementary matrices.
pub fn random_elementary_product<S: grwb_core::Scalar>(
    rng: &mut impl Rng,
    g: &Arc<FiniteGroup>,
    n: usize,
    steps: usize,
    entry: impl Fn(&mut dyn rand::RngCore) -> RingElement<FiniteGroup, S>,
) -> (RingMatrix<FiniteGroup, S>, RingMatrix<FiniteGroup, S>) {
    let mut u = RingMatrix::identity(g, n);
    let mut u_inv = RingMatrix::identity(g, n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let r = entry(rng);
        u = u.mul(&RingMatrix::elementary(g, n, i, j, r.clone()).unwrap()).unwrap();
        u_inv = RingMatrix::elementary(g, n, i, j, r.neg()).unwrap().mul(&u_inv).unwrap();
    }
    (u, u_inv)
}

/// 3x3 unipotent matrix of `x^a y^b z^c` in the Heisenberg group, with
/// `x = 1 + E12`, `y = 1 + E23`, `z = 1 + E13`.
pub fn heisenberg_matrix(w: &[i64]) -> [[i64; 3]; 3] {
    let (a, b, c) = (w[0], w[1], w[2]);
    // x^a y^b = [[1, a, ab], [0, 1, b], [0, 0, 1]], then times z^c
    [[1, a, a * b + c], [0, 1, b], [0, 0, 1]]
}

pub fn mat3_mul(p: &[[i64; 3]; 3], q: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| p[i][k] * q[k][j]).sum();
        }
    }
    out
}

/// Affine map `v -> s v + n` of `a^e t^n` in the infinite dihedral group.
pub fn dinf_affine(w: &[i64]) -> (i64, i64) {
    let s = if w[0].rem_euclid(2) == 0 { 1 } else { -1 };
    (s, s * w[1])
}

/// Composition matching word multiplication: `(p * q)(v) = p(q(v))`.
pub fn affine_mul(p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
    (p.0 * q.0, p.0 * q.1 + p.1)
}
