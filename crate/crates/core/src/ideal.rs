//! Two-sided ideals of `ZG` for finite `G`, held as HNF lattices in `Z^|G|`.
//!
//! Coordinates are coefficients in element-index order, so a lattice row is
//! the dense coefficient vector of a group-ring element.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{commutator_factorization, FiniteGroup, Subgroup};
use crate::lattice::{integer_kernel, HnfBuilder, IntVector, LatticeBasis, LatticeIndex};
use crate::ring::{GroupDatum, QuotientMap, RingElement, RingMatrix};

/// An element of `ZG` for a finite group.
pub type ZElement = RingElement<FiniteGroup, BigInt>;

/// Default number of powers computed by [`kappa_chain`].
pub const DEFAULT_KAPPA_BUDGET: usize = 12;

pub fn element_vector(r: &ZElement) -> IntVector {
    IntVector(r.dense())
}

pub fn vector_element(group: &Arc<FiniteGroup>, v: &IntVector) -> ZElement {
    RingElement::from_dense(group, v.entries())
}

/// Product of two coefficient vectors in `ZG`.
fn convolve(g: &FiniteGroup, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let n = g.order();
    let mut out = vec![BigInt::zero(); n];
    let ys: Vec<(usize, &BigInt)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for &(b, yb) in &ys {
            out[g.mul(a, b)] += xa * yb;
        }
    }
    out
}

fn left_translate(g: &FiniteGroup, s: usize, x: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); x.len()];
    for (a, xa) in x.iter().enumerate() {
        if !xa.is_zero() {
            out[g.mul(s, a)] = xa.clone();
        }
    }
    out
}

fn right_translate(g: &FiniteGroup, s: usize, x: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); x.len()];
    for (a, xa) in x.iter().enumerate() {
        if !xa.is_zero() {
            out[g.mul(a, s)] = xa.clone();
        }
    }
    out
}

/// A two-sided ideal of `ZG`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    group: Arc<FiniteGroup>,
    lattice: LatticeBasis,
}

impl IdealLattice {
    /// Smallest two-sided ideal containing `gens`.
    ///
    /// Vectors are fed into an incremental HNF; every vector that enlarges
    /// the span has its left and right translates by the group generators
    /// queued, so the result is closed under the `G × G` action.
    pub fn from_generators(group: &Arc<FiniteGroup>, gens: &[ZElement]) -> Result<Self> {
        for x in gens {
            if !(Arc::ptr_eq(x.group(), group) || **x.group() == **group) {
                return Err(Error::GroupMismatch);
            }
        }
        let seeds = gens.iter().map(|x| x.dense()).collect();
        Ok(Self::close(group, HnfBuilder::new(group.order()), seeds))
    }

    fn close(group: &Arc<FiniteGroup>, mut builder: HnfBuilder, mut queue: Vec<Vec<BigInt>>) -> Self {
        let g = group.as_ref();
        let gens = g.generator_indices();
        while let Some(v) = queue.pop() {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if builder.insert(v.clone()) {
                for &s in gens {
                    queue.push(left_translate(g, s, &v));
                    queue.push(right_translate(g, s, &v));
                }
            }
        }
        IdealLattice { group: Arc::clone(group), lattice: builder.finish() }
    }

    /// Wraps a lattice after checking that it is a two-sided ideal.
    pub fn from_lattice(group: &Arc<FiniteGroup>, lattice: LatticeBasis) -> Result<Self> {
        if lattice.dim() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: lattice.dim() });
        }
        let ideal = IdealLattice { group: Arc::clone(group), lattice };
        if !ideal.is_two_sided() {
            return Err(Error::DanglingReference("lattice is not a two-sided ideal".into()));
        }
        Ok(ideal)
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        IdealLattice { group: Arc::clone(group), lattice: LatticeBasis::zero(group.order()) }
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        IdealLattice { group: Arc::clone(group), lattice: LatticeBasis::full(group.order()) }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.lattice.rank() == 0
    }

    pub fn contains(&self, r: &ZElement) -> Result<bool> {
        self.lattice.contains(&element_vector(r))
    }

    pub fn basis_elements(&self) -> Vec<ZElement> {
        self.lattice.rows().iter().map(|v| vector_element(&self.group, v)).collect()
    }

    /// Audit: every basis row stays inside under left and right
    /// multiplication by each group generator.
    pub fn is_two_sided(&self) -> bool {
        let g = self.group.as_ref();
        self.lattice.rows().iter().all(|row| {
            g.generator_indices().iter().all(|&s| {
                self.lattice.contains(&IntVector(left_translate(g, s, row.entries()))).unwrap_or(false)
                    && self.lattice.contains(&IntVector(right_translate(g, s, row.entries()))).unwrap_or(false)
            })
        })
    }

    fn check_same_group(&self, other: &IdealLattice) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn equal(&self, other: &IdealLattice) -> Result<bool> {
        self.check_same_group(other)?;
        self.lattice.equal(&other.lattice)
    }

    pub fn contains_ideal(&self, other: &IdealLattice) -> Result<bool> {
        self.check_same_group(other)?;
        self.lattice.contains_lattice(&other.lattice)
    }

    pub fn sum(&self, other: &IdealLattice) -> Result<IdealLattice> {
        self.check_same_group(other)?;
        Ok(IdealLattice { group: Arc::clone(&self.group), lattice: self.lattice.sum(&other.lattice)? })
    }

    /// `I · J`, spanned by products of basis rows.
    pub fn product(&self, other: &IdealLattice) -> Result<IdealLattice> {
        self.check_same_group(other)?;
        let g = self.group.as_ref();
        let mut builder = HnfBuilder::new(g.order());
        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        for x in self.lattice.rows() {
            for y in other.lattice.rows() {
                let p = convolve(g, x.entries(), y.entries());
                if p.iter().all(Zero::is_zero) || !seen.insert(p.clone()) {
                    continue;
                }
                builder.insert(p);
            }
        }
        Ok(IdealLattice { group: Arc::clone(&self.group), lattice: builder.finish() })
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        self.product(self)?.equal(self)
    }

    /// `[self : sub]` as abelian groups.
    pub fn index(&self, sub: &IdealLattice) -> Result<LatticeIndex> {
        self.check_same_group(sub)?;
        self.lattice.index(&sub.lattice)
    }

    /// Plain-text dump: dimension, group name, then HNF rows.
    pub fn dump(&self) -> String {
        format!("dim {}\ngroup {}\n{}", self.lattice.dim(), self.group.name(), self.lattice.dump())
    }
}

impl fmt::Display for IdealLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// The augmentation ideal, with basis `{g - e : g != e}`.
pub fn augmentation_ideal(group: &Arc<FiniteGroup>) -> IdealLattice {
    let n = group.order();
    let rows: Vec<IntVector> = (1..n)
        .map(|g| {
            let mut v = IntVector::unit(n, g);
            v.0[0] = -BigInt::one();
            v
        })
        .collect();
    let lattice = crate::lattice::hnf(&rows, n).expect("consistent dimensions");
    IdealLattice { group: Arc::clone(group), lattice }
}

/// `ω(H)`: the two-sided ideal generated by `{h - e : h in H}`.
pub fn omega(h: &Subgroup) -> Result<IdealLattice> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let group = h.parent();
    let gens: Vec<ZElement> = h.members().iter().filter(|&&x| x != 0).map(|&x| RingElement::minus_one(group, x)).collect();
    IdealLattice::from_generators(group, &gens)
}

/// Kernel of the coefficient pushforward `ZG -> Z(G/H)`, computed as an
/// integer kernel.
pub fn pushforward_kernel(h: &Subgroup) -> Result<IdealLattice> {
    let q = QuotientMap::new(h)?;
    let m = q.target().order();
    let rows: Vec<IntVector> = q.element_map().iter().map(|&c| IntVector::unit(m, c)).collect();
    let lattice = integer_kernel(&rows, m)?;
    Ok(IdealLattice { group: Arc::clone(h.parent()), lattice })
}

/// Lattice equality of `ω(H)` with the kernel of `ZG -> Z(G/H)`.
pub fn kernel_equals_omega(h: &Subgroup) -> Result<bool> {
    pushforward_kernel(h)?.equal(&omega(h)?)
}

/// Successive powers of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaOutcome {
    /// `I^γ = I^{γ+1}`; the zero ideal reports γ = 0.
    Stabilized(usize),
    /// Ranks stopped dropping but lattice indices still exceed one.
    QSpanStableOnly,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct KappaChain {
    /// `powers[k]` is `I^{k+1}`.
    pub powers: Vec<IdealLattice>,
    /// `[I^{k+1} : I^{k+2}]`.
    pub indices: Vec<LatticeIndex>,
    /// Rank of each power (dimension of its rational span).
    pub q_dims: Vec<usize>,
    pub outcome: KappaOutcome,
}

impl KappaChain {
    /// The stable term `I^γ` when the chain stabilized.
    pub fn stable_term(&self) -> Option<&IdealLattice> {
        match self.outcome {
            KappaOutcome::Stabilized(0) => self.powers.first(),
            KappaOutcome::Stabilized(g) => self.powers.get(g - 1),
            _ => None,
        }
    }
}

/// Computes `I, I^2, ...` until two consecutive powers agree or `budget`
/// powers have been formed.
pub fn kappa_chain(ideal: &IdealLattice, budget: usize) -> Result<KappaChain> {
    let budget = budget.max(1);
    let mut chain = KappaChain { powers: vec![ideal.clone()], indices: Vec::new(), q_dims: vec![ideal.rank()], outcome: KappaOutcome::BudgetExhausted };
    if ideal.is_zero() {
        chain.outcome = KappaOutcome::Stabilized(0);
        return Ok(chain);
    }
    while chain.powers.len() < budget {
        let last = chain.powers.last().unwrap();
        let next = last.product(ideal)?;
        let idx = last.index(&next)?;
        let stable = next.equal(last)?;
        chain.q_dims.push(next.rank());
        chain.indices.push(idx);
        chain.powers.push(next);
        if stable {
            chain.outcome = KappaOutcome::Stabilized(chain.powers.len() - 1);
            return Ok(chain);
        }
    }
    let n = chain.q_dims.len();
    if n >= 2 && chain.q_dims[n - 1] == chain.q_dims[n - 2] {
        chain.outcome = KappaOutcome::QSpanStableOnly;
    }
    Ok(chain)
}

/// Trace ideal of the projective module given by an idempotent matrix over `ZG`.
pub fn trace_ideal(e: &RingMatrix<FiniteGroup, BigInt>) -> Result<IdealLattice> {
    e.check_idempotent()?;
    let gens: Vec<ZElement> = e.entries().cloned().collect();
    IdealLattice::from_generators(e.group(), &gens)
}

/// Rational span of the trace ideal of an idempotent over `QG`, represented
/// by the integral ideal generated by the denominator-cleared entries.
pub fn rational_trace_span(e: &RingMatrix<FiniteGroup, BigRational>) -> Result<IdealLattice> {
    e.check_idempotent()?;
    let gens: Vec<ZElement> = e
        .entries()
        .map(|x| {
            let l = x.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            x.map_scalars(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        })
        .collect();
    IdealLattice::from_generators(e.group(), &gens)
}

/// A `Δ(H)^2` witness: pairs `(u, v)` with `sum u v = h - 1`.
pub type Witness<G> = Vec<(RingElement<G, BigInt>, RingElement<G, BigInt>)>;

/// `[a, b] - 1 = ab(c-1)(d-1) - ab(d-1)(c-1)` with `c = a^-1`, `d = b^-1`.
fn commutator_witness(g: &Arc<FiniteGroup>, a: usize, b: usize) -> Witness<FiniteGroup> {
    let ab = g.mul(a, b);
    let c = g.inv(a);
    let d = g.inv(b);
    let ab_elem = RingElement::monomial(g, ab, BigInt::one());
    let cm1 = RingElement::minus_one(g, c);
    let dm1 = RingElement::minus_one(g, d);
    let u1 = ab_elem.mul(&cm1).expect("same group");
    let u2 = ab_elem.mul(&dm1).expect("same group").neg();
    vec![(u1, dm1), (u2, cm1)]
}

/// Writes `h - 1` as a sum of products of two elements of `Δ(H)`.
///
/// `h` is first factored into commutators of `H`. A single commutator uses
/// the identity in [`commutator_witness`]; a product `h = h_1 h'` uses
/// `h - 1 = (h_1 - 1)(h' - 1) + (h_1 - 1) + (h' - 1)` and recurses.
pub fn delta_square_witness(h_sub: &Subgroup, h: usize) -> Result<Witness<FiniteGroup>> {
    let pairs = commutator_factorization(h_sub, h)?;
    let g = h_sub.parent();
    Ok(witness_from_factorization(g, &pairs))
}

fn witness_from_factorization(g: &Arc<FiniteGroup>, pairs: &[(usize, usize)]) -> Witness<FiniteGroup> {
    match pairs {
        [] => Vec::new(),
        [(a, b)] => commutator_witness(g, *a, *b),
        [(a, b), rest @ ..] => {
            let h1 = g.commutator(*a, *b);
            let tail = rest.iter().fold(0, |acc, &(x, y)| g.mul(acc, g.commutator(x, y)));
            let mut out = vec![(RingElement::minus_one(g, h1), RingElement::minus_one(g, tail))];
            out.extend(commutator_witness(g, *a, *b));
            out.extend(witness_from_factorization(g, rest));
            out
        }
    }
}

/// Checks a witness: every factor has augmentation zero and support inside
/// `H`, and the products sum to `target - 1`.
pub fn check_witness<G: GroupDatum>(
    group: &Arc<G>,
    target: &G::Elem,
    witness: &Witness<G>,
    in_h: impl Fn(&G::Elem) -> bool,
) -> Result<bool> {
    let in_delta = |x: &RingElement<G, BigInt>| x.augmentation().is_zero() && x.terms().all(|(g, _)| in_h(g));
    let mut sum = RingElement::zero(group);
    for (u, v) in witness {
        if !in_delta(u) || !in_delta(v) {
            return Ok(false);
        }
        sum = sum.add(&u.mul(v)?)?;
    }
    let expected = if *target == group.identity() { RingElement::zero(group) } else { RingElement::minus_one(group, target.clone()) };
    Ok(sum == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::{derived_series, normal_subgroups, Permutation, DEFAULT_ORDER_CAP};

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn generator_examples() {
        let s3 = corpus::finite("S3").unwrap();
        let one = IdealLattice::from_generators(&s3, &[RingElement::one(&s3)]).unwrap();
        assert_eq!(one, IdealLattice::whole(&s3));
        assert!(IdealLattice::from_generators(&s3, &[]).unwrap().is_zero());
        let c = s3.index_of(&Permutation::from_cycles(&[vec![0, 1, 2]], 3).unwrap()).unwrap();
        let i = IdealLattice::from_generators(&s3, &[RingElement::minus_one(&s3, c)]).unwrap();
        assert_eq!(i.rank(), 4);
        assert!(i.is_two_sided());
    }

    #[test]
    fn augmentation_ideal_ranks() {
        for (name, rank) in [("C2", 1), ("S3", 5), ("A5", 59)] {
            let g = corpus::finite(name).unwrap();
            let d = augmentation_ideal(&g);
            assert_eq!(d.rank(), rank);
            assert!(d.is_two_sided());
        }
        let c2 = corpus::finite("C2").unwrap();
        assert_eq!(augmentation_ideal(&c2).basis_elements(), vec![RingElement::minus_one(&c2, 1).neg()]);
    }

    #[test]
    fn omega_examples() {
        let s3 = corpus::finite("S3").unwrap();
        assert!(omega(&Subgroup::trivial(&s3)).unwrap().is_zero());
        assert_eq!(omega(&Subgroup::whole(&s3)).unwrap(), augmentation_ideal(&s3));
        let a3 = derived_series(&s3)[1].clone();
        assert_eq!(omega(&a3).unwrap().rank(), 4);
        let t = Subgroup::generated(&s3, &[s3.index_of(&Permutation::from_cycles(&[vec![0, 1]], 3).unwrap()).unwrap()]);
        assert_eq!(omega(&t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn product_examples() {
        let c2 = corpus::finite("C2").unwrap();
        let d = augmentation_ideal(&c2);
        let d2 = d.product(&d).unwrap();
        let twice = IdealLattice::from_generators(&c2, &[RingElement::minus_one(&c2, 1).scale(&z(2))]).unwrap();
        assert_eq!(d2, twice);
        assert_eq!(d.index(&d2).unwrap(), LatticeIndex::Finite(z(2)));
        assert!(d.product(&IdealLattice::zero(&c2)).unwrap().is_zero());
    }

    #[test]
    fn idempotency_examples() {
        assert!(!augmentation_ideal(&corpus::finite("C2").unwrap()).is_idempotent().unwrap());
        assert!(IdealLattice::zero(&corpus::finite("S3").unwrap()).is_idempotent().unwrap());
        assert!(IdealLattice::whole(&corpus::finite("S3").unwrap()).is_idempotent().unwrap());
    }

    #[test]
    fn kappa_examples() {
        let c2 = corpus::finite("C2").unwrap();
        let chain = kappa_chain(&augmentation_ideal(&c2), 10).unwrap();
        assert_eq!(chain.indices, vec![LatticeIndex::Finite(z(2)); 9]);
        assert_eq!(chain.q_dims, vec![1; 10]);
        assert_eq!(chain.outcome, KappaOutcome::QSpanStableOnly);

        let zero = kappa_chain(&IdealLattice::zero(&c2), 5).unwrap();
        assert_eq!(zero.outcome, KappaOutcome::Stabilized(0));
        assert!(zero.stable_term().unwrap().is_zero());

        let whole = kappa_chain(&IdealLattice::whole(&c2), 5).unwrap();
        assert_eq!(whole.outcome, KappaOutcome::Stabilized(1));
        assert_eq!(kappa_chain(&augmentation_ideal(&c2), 1).unwrap().outcome, KappaOutcome::BudgetExhausted);
    }

    #[test]
    fn trace_ideal_examples() {
        let s3 = corpus::finite("S3").unwrap();
        let one = RingElement::<_, BigInt>::one(&s3);
        let zero = RingElement::zero(&s3);
        assert_eq!(trace_ideal(&RingMatrix::identity(&s3, 1)).unwrap(), IdealLattice::whole(&s3));
        let e = RingMatrix::from_rows(&s3, vec![vec![one.clone(), one.clone()], vec![zero.clone(), zero]]).unwrap();
        assert_eq!(trace_ideal(&e).unwrap(), IdealLattice::whole(&s3));
        let bad = RingMatrix::diagonal(&s3, &[RingElement::minus_one(&s3, 1)]);
        assert!(matches!(trace_ideal(&bad).unwrap_err(), Error::NotIdempotent { .. }));
    }

    #[test]
    fn rational_trace_of_a3_averaging_idempotent() {
        let s3 = corpus::finite("S3").unwrap();
        let c = s3.index_of(&Permutation::from_cycles(&[vec![0, 1, 2]], 3).unwrap()).unwrap();
        let third = BigRational::new(z(1), z(3));
        let e = RingElement::from_terms(&s3, [(0, third.clone()), (c, third.clone()), (s3.mul(c, c), third)]);
        let span = rational_trace_span(&RingMatrix::diagonal(&s3, &[e])).unwrap();
        // QS3 e QS3 is the sum of the two one-dimensional blocks killed by A3
        assert_eq!(span.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let s3 = corpus::finite("S3").unwrap();
        assert!(kernel_equals_omega(&derived_series(&s3)[1]).unwrap());
        let s4 = corpus::finite("S4").unwrap();
        let v4 = normal_subgroups(&s4, DEFAULT_ORDER_CAP).unwrap().into_iter().find(|h| h.order() == 4).unwrap();
        assert!(kernel_equals_omega(&v4).unwrap());
        let t = Subgroup::generated(&s3, &[s3.index_of(&Permutation::from_cycles(&[vec![0, 1]], 3).unwrap()).unwrap()]);
        assert_eq!(kernel_equals_omega(&t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn witness_examples() {
        let a5 = corpus::finite("A5").unwrap();
        let h = Subgroup::whole(&a5);
        assert!(delta_square_witness(&h, 0).unwrap().is_empty());
        assert!(check_witness(&a5, &0, &Vec::new(), |&x| h.contains(x)).unwrap());
        let five = a5.index_of(&Permutation::from_cycles(&[vec![0, 1, 2, 3, 4]], 5).unwrap()).unwrap();
        let w = delta_square_witness(&h, five).unwrap();
        assert_eq!(w.len(), 2);
        assert!(check_witness(&a5, &five, &w, |&x| h.contains(x)).unwrap());
    }

    #[test]
    fn witness_for_two_commutators() {
        let a5 = corpus::finite("A5").unwrap();
        let h = Subgroup::whole(&a5);
        let x = a5.commutator(3, 7);
        let y = a5.commutator(11, 20);
        let pairs = [(3, 7), (11, 20)];
        let w = witness_from_factorization(&a5, &pairs);
        assert_eq!(w.len(), 5);
        assert!(check_witness(&a5, &a5.mul(x, y), &w, |&g| h.contains(g)).unwrap());
    }

    #[test]
    fn tampered_witness_fails() {
        let a5 = corpus::finite("A5").unwrap();
        let h = Subgroup::whole(&a5);
        let mut w = delta_square_witness(&h, 5).unwrap();
        w[0].0 = w[0].0.add(&RingElement::minus_one(&a5, 1)).unwrap();
        assert!(!check_witness(&a5, &5, &w, |&g| h.contains(g)).unwrap());
    }

    #[test]
    fn not_in_derived_subgroup_propagates() {
        let s3 = corpus::finite("S3").unwrap();
        let a3 = derived_series(&s3)[1].clone();
        let c = a3.members()[1];
        assert_eq!(delta_square_witness(&a3, c).unwrap_err(), Error::NotInDerivedSubgroup(c));
    }

    #[test]
    fn dump_layout() {
        let c2 = corpus::finite("C2").unwrap();
        assert_eq!(augmentation_ideal(&c2).dump(), "dim 2\ngroup C2\n1 -1\n");
    }
}
