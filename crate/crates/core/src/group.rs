//! Finite permutation groups held as dense element tables.
//!
//! Elements are indices into [`FiniteGroup::elements`]; index 0 is the
//! identity. All arithmetic after construction is table lookup.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the order of groups built with a full Cayley table.
pub const DEFAULT_ORDER_CAP: usize = 200;

/// A permutation of `0..degree`. Products apply the left factor first:
/// `(p * q)(x) = q(p(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!("point {p} exceeds degree {degree}")));
                }
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated in cycles")));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A finite group with its full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    cayley: Vec<usize>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.generators == other.generators
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Breadth-first closure of the generators.
    pub fn close_generators(gens: &[Permutation], order_cap: usize) -> Result<FiniteGroup> {
        Self::close_named("", gens, order_cap)
    }

    pub fn close_named(name: &str, gens: &[Permutation], order_cap: usize) -> Result<FiniteGroup> {
        let degree = gens.first().map_or(1, Permutation::degree);
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for s in gens {
                let y = x.compose(s);
                if !lookup.contains_key(&y) {
                    if elements.len() >= order_cap {
                        return Err(Error::OrderCapExceeded { cap: order_cap });
                    }
                    lookup.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut cayley = vec![0usize; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                cayley[i * n + j] = lookup[&a.compose(b)];
            }
        }
        let inverse: Vec<usize> = elements.iter().map(|a| lookup[&a.inverse()]).collect();
        let generator_indices: Vec<usize> = gens.iter().map(|g| lookup[g]).collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            degree,
            generators: gens.to_vec(),
            generator_indices,
            elements,
            lookup,
            cayley,
            inverse,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut orbit = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                k += 1;
                for &s in &self.generator_indices {
                    let y = self.conjugate(x, s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.elements.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a^-1 b^-1`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Conjugacy classes ordered by their minimal element index.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Position of the class of `x` in [`FiniteGroup::conjugacy_classes`].
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Minimal element index of the class of `x`.
    pub fn class_tag(&self, x: usize) -> usize {
        self.classes[self.class_of[x]][0]
    }

    /// Exhaustive associativity check, used as an audit on small tables.
    pub fn check_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted index set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
    normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The subgroup generated by the given element indices.
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let g = parent.as_ref();
        let mut mask = vec![false; g.order()];
        let mut members = vec![0];
        mask[0] = true;
        let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &s in &gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        Self::from_mask(parent, mask)
    }

    fn from_mask(parent: &Arc<FiniteGroup>, mask: Vec<bool>) -> Subgroup {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let mut s = Subgroup { parent: Arc::clone(parent), members, mask, normal: false };
        s.normal = s.check_normal();
        s
    }

    /// Validates a member list, which must be closed under product and inverse.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[usize]) -> Result<Subgroup> {
        let g = parent.as_ref();
        let mut mask = vec![false; g.order()];
        for &m in members {
            if m >= g.order() {
                return Err(Error::DanglingReference(format!("element index {m}")));
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::DanglingReference("subgroup misses the identity".into()));
        }
        let idx: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        for &a in &idx {
            if !mask[g.inv(a)] || idx.iter().any(|&b| !mask[g.mul(a, b)]) {
                return Err(Error::DanglingReference("member list is not a subgroup".into()));
            }
        }
        Ok(Self::from_mask(parent, mask))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Self::from_mask(parent, mask)
    }

    fn check_normal(&self) -> bool {
        let g = self.parent.as_ref();
        self.members.iter().all(|&h| g.generator_indices().iter().all(|&s| self.mask[g.conjugate(h, s)]))
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Smallest subgroup containing both; for normal inputs this is `AB`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::ParentMismatch);
        }
        let gens: Vec<usize> = self.members.iter().chain(other.members.iter()).copied().collect();
        Ok(Subgroup::generated(&self.parent, &gens))
    }

    pub fn is_perfect(&self) -> bool {
        commutator_subgroup(self, self).map(|c| c.order() == self.order()).unwrap_or(false)
    }
}

/// The subgroup generated by all `[a, b]` with `a` in `a_sub` and `b` in `b_sub`.
pub fn commutator_subgroup(a_sub: &Subgroup, b_sub: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(&a_sub.parent, &b_sub.parent) {
        return Err(Error::ParentMismatch);
    }
    let g = a_sub.parent.as_ref();
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for &a in &a_sub.members {
        for &b in &b_sub.members {
            let c = g.commutator(a, b);
            if !std::mem::replace(&mut seen[c], true) {
                comms.push(c);
            }
        }
    }
    Ok(Subgroup::generated(&a_sub.parent, &comms))
}

/// `G ⊇ G' ⊇ G'' ⊇ ...` until it stops changing.
///
/// The series ends at the trivial group, or, when it stabilizes at a
/// nonidentity perfect subgroup, with that subgroup listed twice.
pub fn derived_series(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let cur = series.last().unwrap();
        if cur.is_trivial() {
            return series;
        }
        let next = commutator_subgroup(cur, cur).expect("same parent");
        let stable = next.order() == cur.order();
        series.push(next);
        if stable {
            return series;
        }
    }
}

pub fn is_soluble(g: &Arc<FiniteGroup>) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

pub fn is_perfect(g: &Arc<FiniteGroup>) -> bool {
    Subgroup::whole(g).is_perfect()
}

/// The terminal term of the derived series.
pub fn perfect_radical(g: &Arc<FiniteGroup>) -> Subgroup {
    derived_series(g).pop().unwrap()
}

/// Normal closure of a single element.
pub fn normal_closure(g: &Arc<FiniteGroup>, x: usize) -> Subgroup {
    let class = &g.conjugacy_classes()[g.class_of(x)];
    Subgroup::generated(g, class)
}

/// All normal subgroups, sorted by order then by member list.
pub fn normal_subgroups(g: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let mut found: Vec<Subgroup> = vec![Subgroup::trivial(g)];
    let push = |found: &mut Vec<Subgroup>, s: Subgroup| -> bool {
        if found.iter().any(|f| f.members == s.members) {
            false
        } else {
            found.push(s);
            true
        }
    };
    for class in g.conjugacy_classes() {
        push(&mut found, normal_closure(g, class[0]));
    }
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let joined = found[i].join(&found[j])?;
            push(&mut found, joined);
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(found)
}

/// Writes `h` as a product of commutators of elements of `h_sub`.
///
/// Breadth-first search over products of commutators, so the returned
/// factorization has the fewest factors. The result is re-multiplied and
/// checked before it is returned.
pub fn commutator_factorization(h_sub: &Subgroup, h: usize) -> Result<Vec<(usize, usize)>> {
    let g = h_sub.parent.as_ref();
    if h >= g.order() || !h_sub.contains(h) {
        return Err(Error::NotInDerivedSubgroup(h));
    }
    if h == 0 {
        return Ok(Vec::new());
    }
    let mut witness: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut comms = Vec::new();
    for &a in &h_sub.members {
        for &b in &h_sub.members {
            let c = g.commutator(a, b);
            if c != 0 && witness[c].is_none() {
                witness[c] = Some((a, b));
                comms.push(c);
            }
        }
    }
    // parent[x] = (previous product, commutator appended)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut depth = vec![usize::MAX; g.order()];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let cap = h_sub.order();
    while let Some(x) = queue.pop_front() {
        if x == h || depth[x] >= cap {
            break;
        }
        for &c in &comms {
            let y = g.mul(x, c);
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some((x, c));
                queue.push_back(y);
            }
        }
    }
    if depth[h] == usize::MAX {
        return Err(Error::NotInDerivedSubgroup(h));
    }
    let mut pairs = Vec::new();
    let mut x = h;
    while let Some((prev, c)) = parent[x] {
        pairs.push(witness[c].unwrap());
        x = prev;
    }
    pairs.reverse();
    let product = pairs.iter().fold(0, |acc, &(a, b)| g.mul(acc, g.commutator(a, b)));
    assert_eq!(product, h, "commutator factorization failed to re-multiply");
    Ok(pairs)
}

/// The quotient `G/N` realized as the permutation action of `G` on the cosets of `N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    /// Image of each element of `G` in the quotient.
    pub map: Vec<usize>,
}

pub fn quotient(n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = n.parent.as_ref();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &h in &n.members {
            coset[g.mul(x, h)] = reps.len();
        }
        reps.push(x);
    }
    let action = |x: usize| -> Permutation {
        Permutation { images: reps.iter().map(|&r| coset[g.mul(r, x)]).collect() }
    };
    let gens: Vec<Permutation> = g.generator_indices().iter().map(|&s| action(s)).collect();
    let gens = if gens.is_empty() { vec![Permutation::identity(reps.len())] } else { gens };
    let name = if g.name().is_empty() { String::new() } else { format!("{}/N", g.name()) };
    let qg = Arc::new(FiniteGroup::close_named(&name, &gens, usize::MAX)?);
    let map = (0..g.order()).map(|x| qg.index_of(&action(x)).expect("coset action lands in quotient")).collect();
    Ok(Quotient { group: qg, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn perm(cycles: &[&[usize]], degree: usize) -> Permutation {
        Permutation::from_cycles(&cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), degree).unwrap()
    }

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn closure_orders() {
        let a5 = FiniteGroup::close_generators(&[perm(&[&[0, 1, 2, 3, 4]], 5), perm(&[&[0, 1, 2]], 5)], 200).unwrap();
        assert_eq!(a5.order(), 60);
        let s3 = FiniteGroup::close_generators(&[perm(&[&[0, 1]], 3), perm(&[&[0, 1, 2]], 3)], 200).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.check_associative());
        let triv = FiniteGroup::close_generators(&[Permutation::identity(3)], 200).unwrap();
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn closure_errors() {
        let err = FiniteGroup::close_generators(&[perm(&[&[0, 1, 2, 3, 4]], 5), perm(&[&[0, 1]], 5)], 100).unwrap_err();
        assert_eq!(err, Error::OrderCapExceeded { cap: 100 });
        let err = FiniteGroup::close_generators(&[perm(&[&[0, 1]], 2), perm(&[&[0, 1, 2]], 3)], 100).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn identity_is_index_zero() {
        let g = corpus::finite("S4").unwrap();
        assert!(g.element(0).is_identity());
        for x in 0..g.order() {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_sizes(&corpus::finite("S3").unwrap()), vec![1, 2, 3]);
        assert_eq!(class_sizes(&corpus::finite("trivial").unwrap()), vec![1]);
        assert_eq!(class_sizes(&corpus::finite("A5").unwrap()), vec![1, 12, 12, 15, 20]);
        let a5 = corpus::finite("A5").unwrap();
        assert_eq!(a5.conjugacy_classes()[0], vec![0]);
        let tags: Vec<usize> = a5.conjugacy_classes().iter().map(|c| c[0]).collect();
        assert!(tags.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn commutator_examples() {
        let s3 = corpus::finite("S3").unwrap();
        let w = Subgroup::whole(&s3);
        let c = commutator_subgroup(&w, &w).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.is_normal());
        let c6 = corpus::finite("C6").unwrap();
        let w = Subgroup::whole(&c6);
        assert!(commutator_subgroup(&w, &w).unwrap().is_trivial());
        let a5 = corpus::finite("A5").unwrap();
        let w = Subgroup::whole(&a5);
        assert_eq!(commutator_subgroup(&w, &w).unwrap().order(), 60);
    }

    #[test]
    fn commutator_parent_mismatch() {
        let a = corpus::finite("S3").unwrap();
        let b = corpus::finite("S3").unwrap();
        let err = commutator_subgroup(&Subgroup::whole(&a), &Subgroup::whole(&b)).unwrap_err();
        assert_eq!(err, Error::ParentMismatch);
    }

    #[test]
    fn derived_series_examples() {
        let orders = |name: &str| -> Vec<usize> {
            derived_series(&corpus::finite(name).unwrap()).iter().map(Subgroup::order).collect()
        };
        assert_eq!(orders("S4"), vec![24, 12, 4, 1]);
        assert_eq!(orders("A5"), vec![60, 60]);
        assert_eq!(orders("S5"), vec![120, 60, 60]);
        assert_eq!(orders("C6"), vec![6, 1]);
        assert_eq!(orders("trivial"), vec![1]);
    }

    #[test]
    fn solubility_and_perfectness() {
        assert!(is_soluble(&corpus::finite("S4").unwrap()));
        assert!(!is_soluble(&corpus::finite("A5").unwrap()));
        assert!(is_perfect(&corpus::finite("A5").unwrap()));
        assert!(is_perfect(&corpus::finite("SL(2,5)").unwrap()));
        let t = corpus::finite("trivial").unwrap();
        assert!(is_soluble(&t) && is_perfect(&t));
    }

    #[test]
    fn perfect_radical_examples() {
        let s5 = corpus::finite("S5").unwrap();
        let r = perfect_radical(&s5);
        assert_eq!(r.order(), 60);
        assert!(r.is_normal() && r.is_perfect());
        assert!(r.members().iter().all(|&x| {
            // A5 inside S5 = even permutations
            s5.element(x).cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
        }));
        assert!(perfect_radical(&corpus::finite("S4").unwrap()).is_trivial());
        assert_eq!(perfect_radical(&corpus::finite("A5").unwrap()).order(), 60);
    }

    #[test]
    fn normal_subgroup_examples() {
        let orders = |name: &str| -> Vec<usize> {
            normal_subgroups(&corpus::finite(name).unwrap(), DEFAULT_ORDER_CAP).unwrap().iter().map(Subgroup::order).collect()
        };
        assert_eq!(orders("S4"), vec![1, 4, 12, 24]);
        assert_eq!(orders("A5"), vec![1, 60]);
        assert_eq!(orders("C2"), vec![1, 2]);
        let err = normal_subgroups(&corpus::finite("S5").unwrap(), 100).unwrap_err();
        assert_eq!(err, Error::OrderCapExceeded { cap: 100 });
    }

    #[test]
    fn factorization_examples() {
        let a5 = corpus::finite("A5").unwrap();
        let h = a5.index_of(&perm(&[&[0, 1, 2, 3, 4]], 5)).unwrap();
        let pairs = commutator_factorization(&Subgroup::whole(&a5), h).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(a5.commutator(pairs[0].0, pairs[0].1), h);
        assert!(commutator_factorization(&Subgroup::whole(&a5), 0).unwrap().is_empty());

        let s3 = corpus::finite("S3").unwrap();
        let a3 = Subgroup::generated(&s3, &[s3.index_of(&perm(&[&[0, 1, 2]], 3)).unwrap()]);
        let t = s3.index_of(&perm(&[&[0, 1]], 3)).unwrap();
        assert_eq!(commutator_factorization(&a3, t).unwrap_err(), Error::NotInDerivedSubgroup(t));
        // A3 is abelian, so even its own elements are not commutator products
        let c = a3.members()[1];
        assert_eq!(commutator_factorization(&a3, c).unwrap_err(), Error::NotInDerivedSubgroup(c));
    }

    #[test]
    fn quotient_by_a3() {
        let s3 = corpus::finite("S3").unwrap();
        let a3 = derived_series(&s3)[1].clone();
        let q = quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        for &x in a3.members() {
            assert_eq!(q.map[x], 0);
        }
        for a in 0..s3.order() {
            for b in 0..s3.order() {
                assert_eq!(q.map[s3.mul(a, b)], q.group.mul(q.map[a], q.map[b]));
            }
        }
        let t = Subgroup::generated(&s3, &[s3.index_of(&perm(&[&[0, 1]], 3)).unwrap()]);
        assert_eq!(quotient(&t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn display_cycles() {
        assert_eq!(perm(&[&[0, 1, 2], &[3, 4]], 5).to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
