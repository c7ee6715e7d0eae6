//! Sparse group-ring arithmetic.

mod laurent;
mod matrix;
mod trace;

pub use laurent::{aug_valuation, default_precision, det_mono_check, integer_determinant, laurent_determinant, MonoReport, Valuation};
pub use matrix::RingMatrix;
pub use trace::{hs_of_idempotent_matrix, ClassVector};

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;



use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Quotient, Subgroup};
use crate::pc::{PcPresentation, PcWord, ProductDatum, ProductElement};
use crate::scalar::Scalar;

/// A group whose elements can index group-ring terms.
pub trait GroupDatum: Debug + PartialEq + Send + Sync {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inverse(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
}

impl GroupDatum for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn multiply(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.mul(*a, *b))
    }

    fn inverse(&self, a: &usize) -> Result<usize> {
        Ok(self.inv(*a))
    }

    fn format_elem(&self, a: &usize) -> String {
        format!("g{a}")
    }
}

impl GroupDatum for PcPresentation {
    type Elem = PcWord;

    fn identity(&self) -> PcWord {
        PcPresentation::identity(self)
    }

    fn multiply(&self, a: &PcWord, b: &PcWord) -> Result<PcWord> {
        PcPresentation::multiply(self, a, b)
    }

    fn inverse(&self, a: &PcWord) -> Result<PcWord> {
        PcPresentation::inverse(self, a)
    }

    fn format_elem(&self, a: &PcWord) -> String {
        self.word_to_string(a)
    }
}

impl PartialEq for ProductDatum {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.finite, &other.finite) || self.finite == other.finite)
            && (Arc::ptr_eq(&self.pc, &other.pc) || self.pc == other.pc)
    }
}

impl GroupDatum for ProductDatum {
    type Elem = ProductElement;

    fn identity(&self) -> ProductElement {
        ProductDatum::identity(self)
    }

    fn multiply(&self, a: &ProductElement, b: &ProductElement) -> Result<ProductElement> {
        ProductDatum::multiply(self, a, b)
    }

    fn inverse(&self, a: &ProductElement) -> Result<ProductElement> {
        ProductDatum::inverse(self, a)
    }

    fn format_elem(&self, a: &ProductElement) -> String {
        match (a.0, a.1.is_identity()) {
            (0, true) => "1".into(),
            (g, true) => format!("g{g}"),
            (0, false) => self.pc.word_to_string(&a.1),
            (g, false) => format!("g{g}*{}", self.pc.word_to_string(&a.1)),
        }
    }
}

/// A finitely supported element `sum n_g g` of the group ring `S[G]`.
///
/// Zero coefficients are never stored; terms are ordered by the element
/// order of the datum.
pub struct RingElement<G: GroupDatum, S: Scalar> {
    group: Arc<G>,
    terms: BTreeMap<G::Elem, S>,
}

impl<G: GroupDatum, S: Scalar> Clone for RingElement<G, S> {
    fn clone(&self) -> Self {
        RingElement { group: Arc::clone(&self.group), terms: self.terms.clone() }
    }
}

impl<G: GroupDatum, S: Scalar> PartialEq for RingElement<G, S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.terms == other.terms
    }
}

impl<G: GroupDatum, S: Scalar> Eq for RingElement<G, S> {}

impl<G: GroupDatum, S: Scalar> Debug for RingElement<G, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

impl<G: GroupDatum, S: Scalar> RingElement<G, S> {
    pub fn zero(group: &Arc<G>) -> Self {
        RingElement { group: Arc::clone(group), terms: BTreeMap::new() }
    }

    pub fn one(group: &Arc<G>) -> Self {
        Self::monomial(group, group.identity(), S::one())
    }

    pub fn monomial(group: &Arc<G>, g: G::Elem, coeff: S) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(g, coeff);
        }
        RingElement { group: Arc::clone(group), terms }
    }

    /// Sums the given terms, merging repeated elements.
    pub fn from_terms(group: &Arc<G>, terms: impl IntoIterator<Item = (G::Elem, S)>) -> Self {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    /// `g - 1`
    pub fn minus_one(group: &Arc<G>, g: G::Elem) -> Self {
        Self::from_terms(group, [(g, S::one()), (group.identity(), -S::one())])
    }

    fn add_term(&mut self, g: G::Elem, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn group(&self) -> &Arc<G> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G::Elem, &S)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &G::Elem) -> S {
        self.terms.get(g).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group == other.group
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement { group: Arc::clone(&self.group), terms: self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(&self.group);
        }
        RingElement { group: Arc::clone(&self.group), terms: self.terms.iter().map(|(g, c)| (g.clone(), c.clone() * s.clone())).collect() }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.group);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(self.group.multiply(a, b)?, x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// Left multiplication by a group element.
    pub fn left_shift(&self, g: &G::Elem) -> Result<Self> {
        let mut out = Self::zero(&self.group);
        for (a, x) in &self.terms {
            out.add_term(self.group.multiply(g, a)?, x.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.group);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The augmentation: sum of coefficients.
    pub fn augmentation(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, c| acc + c.clone())
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RingElement<G, T> {
        RingElement::from_terms(&self.group, self.terms.iter().map(|(g, c)| (g.clone(), f(c))))
    }

    /// Coefficientwise pushforward along a map of groups.
    pub fn push_forward<H: GroupDatum>(&self, target: &Arc<H>, f: impl Fn(&G::Elem) -> H::Elem) -> RingElement<H, S> {
        RingElement::from_terms(target, self.terms.iter().map(|(g, c)| (f(g), c.clone())))
    }

    pub fn to_rational(&self) -> RingElement<G, num_rational::BigRational> {
        self.map_scalars(Scalar::to_rational)
    }
}

impl<G: GroupDatum, S: Scalar> fmt::Display for RingElement<G, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let id = self.group.identity();
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *g == id {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&self.group.format_elem(g))?;
            } else {
                write!(f, "{abs}*{}", self.group.format_elem(g))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> RingElement<FiniteGroup, S> {
    /// Dense coefficient vector in element-index order.
    pub fn dense(&self) -> Vec<S> {
        let mut v = vec![S::zero(); self.group.order()];
        for (&g, c) in &self.terms {
            v[g] = c.clone();
        }
        v
    }

    pub fn from_dense(group: &Arc<FiniteGroup>, coeffs: &[S]) -> Self {
        Self::from_terms(group, coeffs.iter().cloned().enumerate())
    }

    /// All coefficients supported on `h`.
    pub fn supported_in(&self, h: &Subgroup) -> bool {
        self.terms.keys().all(|&g| h.contains(g))
    }
}

/// The ring map `S[G] -> S[G/N]` induced by the quotient.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    quotient: Quotient,
}

impl QuotientMap {
    pub fn new(n: &Subgroup) -> Result<Self> {
        Ok(QuotientMap { quotient: quotient(n)? })
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.quotient.group
    }

    pub fn element_map(&self) -> &[usize] {
        &self.quotient.map
    }

    pub fn apply<S: Scalar>(&self, r: &RingElement<FiniteGroup, S>) -> RingElement<FiniteGroup, S> {
        r.push_forward(&self.quotient.group, |&g| self.quotient.map[g])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::{derived_series, Permutation};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type Z = BigInt;

    fn z(n: i64) -> Z {
        BigInt::from(n)
    }

    #[test]
    fn c2_square_of_augmentation_generator() {
        let c2 = corpus::finite("C2").unwrap();
        let x = RingElement::<_, Z>::minus_one(&c2, 1);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq, x.scale(&z(-2)));
        assert_eq!(sq, RingElement::from_terms(&c2, [(0, z(2)), (1, z(-2))]));
    }

    #[test]
    fn multiplication_by_one() {
        let s3 = corpus::finite("S3").unwrap();
        let r = RingElement::from_terms(&s3, [(1, z(2)), (4, z(-3)), (0, z(1))]);
        assert_eq!(r.mul(&RingElement::one(&s3)).unwrap(), r);
        assert_eq!(RingElement::one(&s3).mul(&r).unwrap(), r);
    }

    #[test]
    fn laurent_polynomial_identity() {
        let zg = Arc::new(corpus::pc("Z").unwrap());
        let x = RingElement::<_, Z>::monomial(&zg, PcWord(vec![1]), z(1));
        let one = RingElement::one(&zg);
        let lhs = x.sub(&one).unwrap().mul(&x.add(&one).unwrap()).unwrap();
        let x2 = RingElement::monomial(&zg, PcWord(vec![2]), z(1));
        assert_eq!(lhs, x2.sub(&one).unwrap());
    }

    #[test]
    fn augmentation_examples() {
        let s3 = corpus::finite("S3").unwrap();
        let r = RingElement::from_terms(&s3, [(1, z(2)), (2, z(-3)), (0, z(1))]);
        assert_eq!(r.augmentation(), z(0));
        assert_eq!(RingElement::monomial(&s3, 3, z(1)).augmentation(), z(1));
        let p = RingElement::<_, Z>::minus_one(&s3, 1).mul(&RingElement::minus_one(&s3, 2)).unwrap();
        assert_eq!(p.augmentation(), z(0));
    }

    #[test]
    fn group_mismatch() {
        let a = RingElement::<_, Z>::one(&corpus::finite("S3").unwrap());
        let b = RingElement::<_, Z>::one(&corpus::finite("C6").unwrap());
        assert_eq!(a.mul(&b).unwrap_err(), Error::GroupMismatch);
        assert_eq!(a.add(&b).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn quotient_map_examples() {
        let s3 = corpus::finite("S3").unwrap();
        let a3 = derived_series(&s3)[1].clone();
        let q = QuotientMap::new(&a3).unwrap();
        let c = s3.index_of(&Permutation::from_cycles(&[vec![0, 1, 2]], 3).unwrap()).unwrap();
        let img = q.apply(&RingElement::<_, Z>::monomial(&s3, c, z(1)));
        assert_eq!(img, RingElement::one(q.target()));
        assert!(q.apply(&RingElement::<_, Z>::minus_one(&s3, c)).is_zero());

        // H = G: the pushforward is the augmentation
        let whole = QuotientMap::new(&Subgroup::whole(&s3)).unwrap();
        let r = RingElement::from_terms(&s3, [(1, z(5)), (3, z(-2)), (0, z(4))]);
        assert_eq!(whole.apply(&r), RingElement::monomial(whole.target(), 0, r.augmentation()));
    }

    #[test]
    fn display_literal() {
        let s3 = corpus::finite("S3").unwrap();
        let r = RingElement::from_terms(&s3, [(1, z(2)), (4, z(-3)), (0, z(1))]);
        assert_eq!(r.to_string(), "1 + 2*g1 - 3*g4");
        let q: RingElement<_, BigRational> = r.to_rational().scale(&BigRational::new(z(1), z(3)));
        assert_eq!(q.to_string(), "1/3 + 2/3*g1 - g4");
        assert_eq!(RingElement::<_, Z>::zero(&s3).to_string(), "0");
    }
}
