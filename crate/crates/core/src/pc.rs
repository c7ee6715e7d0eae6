//! Power-conjugate presentations of polycyclic groups.
//!
//! Generators `x_0, ..., x_{n-1}` are ordered so that each
//! `G_i = <x_i, ..., x_{n-1}>` is normal in `G_{i-1}` with cyclic quotient.
//! Normal forms are exponent vectors `x_0^{e_0} ... x_{n-1}^{e_{n-1}}`, with
//! `0 <= e_i < m_i` whenever `x_i` has finite relative order `m_i`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};

/// Default number of elementary collection steps before collection gives up.
pub const DEFAULT_COLLECTION_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelativeOrder {
    Finite(u64),
    Infinite,
}

/// Exponent vector of a normal-form word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PcWord(pub Vec<i64>);

impl PcWord {
    pub fn identity(n: usize) -> Self {
        PcWord(vec![0; n])
    }

    pub fn generator(n: usize, i: usize, exp: i64) -> Self {
        let mut w = Self::identity(n);
        w.0[i] = exp;
        w
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    /// Letters `(generator, ±1)` spelling this word left to right.
    pub fn letters(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e.unsigned_abs() {
                out.push((i, e.signum()));
            }
        }
        out
    }
}

/// A power-conjugate presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    names: Vec<String>,
    orders: Vec<RelativeOrder>,
    /// `power[i]` is the normal form of `x_i^{m_i}` for finite `m_i`.
    power: Vec<Option<PcWord>>,
    /// `conj_by_inverse[j][i]` is `x_j^-1 x_i x_j` for `j < i`.
    conj_by_inverse: Vec<Vec<PcWord>>,
    /// `conj_by[j][i]` is `x_j x_i x_j^-1` for `j < i`.
    conj_by: Vec<Vec<PcWord>>,
    budget: u64,
}

/// Relations supplied to [`PcPresentation::new`]; missing entries default to
/// the trivial relation (`x_i^{m_i} = e`, generators commute).
#[derive(Debug, Clone, Default)]
pub struct PcRelations {
    pub power: Vec<(usize, PcWord)>,
    /// `(j, i, word)` meaning `x_j x_i x_j^-1 = word`.
    pub conj_by: Vec<(usize, usize, PcWord)>,
    /// `(j, i, word)` meaning `x_j^-1 x_i x_j = word`.
    pub conj_by_inverse: Vec<(usize, usize, PcWord)>,
}

impl PcPresentation {
    pub fn new(names: Vec<String>, orders: Vec<RelativeOrder>, rels: PcRelations) -> Result<Self> {
        let n = orders.len();
        if names.len() != n {
            return Err(Error::InvalidPresentation("one name per generator required".into()));
        }
        for (i, o) in orders.iter().enumerate() {
            if matches!(o, RelativeOrder::Finite(m) if *m < 2) {
                return Err(Error::InvalidPresentation(format!("relative order of {} must be >= 2", names[i])));
            }
        }
        let mut power: Vec<Option<PcWord>> = orders
            .iter()
            .map(|o| match o {
                RelativeOrder::Finite(_) => Some(PcWord::identity(n)),
                RelativeOrder::Infinite => None,
            })
            .collect();
        let mut conj_by: Vec<Vec<PcWord>> = (0..n).map(|_| (0..n).map(|i| PcWord::generator(n, i, 1)).collect()).collect();
        let mut conj_by_inverse = conj_by.clone();
        let mut conj_given = vec![vec![(false, false); n]; n];

        let check_word = |w: &PcWord, above: usize, what: &str| -> Result<()> {
            if w.0.len() != n {
                return Err(Error::InvalidPresentation(format!("{what}: word has wrong length")));
            }
            for (k, &e) in w.0.iter().enumerate() {
                if e != 0 && k <= above {
                    return Err(Error::InvalidPresentation(format!(
                        "{what}: right-hand side may only use generators after {}",
                        names[above]
                    )));
                }
                if let RelativeOrder::Finite(m) = orders[k] {
                    if e < 0 || e as u64 >= m {
                        return Err(Error::InvalidPresentation(format!("{what}: exponent of {} out of range", names[k])));
                    }
                }
            }
            Ok(())
        };

        for (i, w) in rels.power {
            if i >= n || power[i].is_none() {
                return Err(Error::InvalidPresentation(format!("power relation for generator {i} of infinite order")));
            }
            check_word(&w, i, "power relation")?;
            power[i] = Some(w);
        }
        for (j, i, w) in rels.conj_by {
            if !(j < i && i < n) {
                return Err(Error::InvalidPresentation("conjugate relation needs j < i".into()));
            }
            check_word(&w, j, "conjugate relation")?;
            conj_given[j][i].0 = true;
            conj_by[j][i] = w;
        }
        for (j, i, w) in rels.conj_by_inverse {
            if !(j < i && i < n) {
                return Err(Error::InvalidPresentation("conjugate relation needs j < i".into()));
            }
            check_word(&w, j, "conjugate relation")?;
            conj_given[j][i].1 = true;
            conj_by_inverse[j][i] = w;
        }
        for j in 0..n {
            for i in j + 1..n {
                let (fwd, back) = conj_given[j][i];
                let trivial = |w: &PcWord| *w == PcWord::generator(n, i, 1);
                if fwd != back && !(trivial(&conj_by[j][i]) && trivial(&conj_by_inverse[j][i])) {
                    return Err(Error::InvalidPresentation(format!(
                        "both conjugation directions of {} by {} must be given",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(PcPresentation { names, orders, power, conj_by_inverse, conj_by, budget: DEFAULT_COLLECTION_BUDGET })
    }

    /// Free abelian group of rank `k` on generators `x1..xk`.
    pub fn free_abelian(k: usize) -> Self {
        let names = (1..=k).map(|i| format!("x{i}")).collect();
        Self::new(names, vec![RelativeOrder::Infinite; k], PcRelations::default()).expect("valid")
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relative_orders(&self) -> &[RelativeOrder] {
        &self.orders
    }

    pub fn power_relation(&self, i: usize) -> Option<&PcWord> {
        self.power[i].as_ref()
    }

    /// `x_j x_i x_j^-1`, `j < i`.
    pub fn conjugate_relation(&self, j: usize, i: usize) -> &PcWord {
        &self.conj_by[j][i]
    }

    /// `x_j^-1 x_i x_j`, `j < i`.
    pub fn inverse_conjugate_relation(&self, j: usize, i: usize) -> &PcWord {
        &self.conj_by_inverse[j][i]
    }

    /// Number of infinite cyclic factors.
    pub fn hirsch_number(&self) -> usize {
        self.orders.iter().filter(|o| **o == RelativeOrder::Infinite).count()
    }

    /// All generators infinite and pairwise commuting.
    pub fn is_free_abelian(&self) -> bool {
        let n = self.len();
        self.hirsch_number() == n
            && (0..n).all(|j| {
                (j + 1..n).all(|i| {
                    self.conj_by[j][i] == PcWord::generator(n, i, 1) && self.conj_by_inverse[j][i] == PcWord::generator(n, i, 1)
                })
            })
    }

    fn collector(&self) -> Collector<'_> {
        Collector { p: self, steps: 0 }
    }

    /// Normal form of a word given as `(generator, exponent)` letters.
    pub fn collect(&self, letters: &[(usize, i64)]) -> Result<PcWord> {
        let mut c = self.collector();
        let mut w = vec![0; self.len()];
        for &(g, e) in letters {
            if g >= self.len() {
                return Err(Error::InvalidPresentation(format!("no generator {g}")));
            }
            c.mul_power(&mut w, g, e)?;
        }
        Ok(PcWord(w))
    }

    pub fn multiply(&self, a: &PcWord, b: &PcWord) -> Result<PcWord> {
        let mut c = self.collector();
        let mut w = a.0.clone();
        c.mul_word(&mut w, &b.0)?;
        Ok(PcWord(w))
    }

    pub fn inverse(&self, a: &PcWord) -> Result<PcWord> {
        Ok(PcWord(self.collector().inverse(&a.0)?))
    }

    pub fn identity(&self) -> PcWord {
        PcWord::identity(self.len())
    }

    /// Overlap test: every standard test word collects to the same normal
    /// form under both bracketings.
    pub fn consistency_check(&self) -> bool {
        self.check_overlaps().unwrap_or(false)
    }

    fn check_overlaps(&self) -> Result<bool> {
        let n = self.len();
        let gen = |i: usize, e: i64| PcWord::generator(n, i, e);
        let signs = |i: usize| -> Vec<i64> {
            match self.orders[i] {
                RelativeOrder::Finite(_) => vec![1],
                RelativeOrder::Infinite => vec![1, -1],
            }
        };
        let assoc = |a: &PcWord, b: &PcWord, c: &PcWord| -> Result<bool> {
            let left = self.multiply(&self.multiply(a, b)?, c)?;
            let right = self.multiply(a, &self.multiply(b, c)?)?;
            Ok(left == right)
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for &ek in &signs(k) {
                        for &ej in &signs(j) {
                            for &ei in &signs(i) {
                                if !assoc(&gen(k, ek), &gen(j, ej), &gen(i, ei))? {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if let RelativeOrder::Finite(m) = self.orders[i] {
                let m = m as i64;
                // x_i (x_i^m) = (x_i^m) x_i
                if !assoc(&gen(i, 1), &gen(i, m - 1), &gen(i, 1))? {
                    return Ok(false);
                }
                for j in i + 1..n {
                    for &ej in &signs(j) {
                        // x_j^e (x_i^m) = (x_j^e x_i) x_i^{m-1}
                        if !assoc(&gen(j, ej), &gen(i, 1), &gen(i, m - 1))? {
                            return Ok(false);
                        }
                    }
                }
            }
            for j in i + 1..n {
                if let RelativeOrder::Finite(mj) = self.orders[j] {
                    for &ei in &signs(i) {
                        // (x_j^{m_j}) x_i^e = x_j^{m_j - 1} (x_j x_i^e)
                        if !assoc(&gen(j, mj as i64 - 1), &gen(j, 1), &gen(i, ei))? {
                            return Ok(false);
                        }
                    }
                }
            }
            if self.orders[i] == RelativeOrder::Infinite {
                for j in i + 1..n {
                    for &ej in &signs(j) {
                        for ei in [1, -1] {
                            // x_j^e = (x_j^e x_i^d) x_i^-d
                            let left = self.multiply(&self.multiply(&gen(j, ej), &gen(i, ei))?, &gen(i, -ei))?;
                            if left != self.collect(&[(j, ej)])? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        // Power relations of finite generators are themselves collected words.
        for i in 0..n {
            if let Some(w) = &self.power[i] {
                if self.collect(&w.letters())? != *w {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn word_to_string(&self, w: &PcWord) -> String {
        let parts: Vec<String> = w
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Collection from the left with a step budget.
struct Collector<'a> {
    p: &'a PcPresentation,
    steps: u64,
}

impl Collector<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.p.budget {
            return Err(Error::CollectionBudget(self.p.budget));
        }
        Ok(())
    }

    fn mul_power(&mut self, w: &mut [i64], i: usize, e: i64) -> Result<()> {
        for _ in 0..e.unsigned_abs() {
            self.mul_gen(w, i, e.signum())?;
        }
        Ok(())
    }

    fn mul_word(&mut self, w: &mut [i64], v: &[i64]) -> Result<()> {
        for (i, &e) in v.iter().enumerate() {
            self.mul_power(w, i, e)?;
        }
        Ok(())
    }

    fn inverse(&mut self, v: &[i64]) -> Result<Vec<i64>> {
        let mut w = vec![0; v.len()];
        for i in (0..v.len()).rev() {
            self.mul_power(&mut w, i, -v[i])?;
        }
        Ok(w)
    }

    /// `w <- w * x_i^sign` for a normal-form `w`.
    ///
    /// The tail of `w` past position `i` is moved across `x_i^sign` by
    /// conjugating each of its letters, then the exponent of `x_i` is bumped
    /// and wrapped through the power relation when it leaves `[0, m_i)`.
    fn mul_gen(&mut self, w: &mut [i64], i: usize, sign: i64) -> Result<()> {
        self.tick()?;
        let n = w.len();
        let mut tail = vec![0i64; n];
        for (k, slot) in w.iter_mut().enumerate().skip(i + 1) {
            let b = std::mem::take(slot);
            if b == 0 {
                continue;
            }
            // x_i^{-sign} x_k x_i^{sign}
            let img = if sign > 0 { &self.p.conj_by_inverse[i][k] } else { &self.p.conj_by[i][k] };
            let img = if b > 0 { img.0.clone() } else { self.inverse(&img.0)? };
            for _ in 0..b.unsigned_abs() {
                self.mul_word(&mut tail, &img)?;
            }
        }
        let mut e = w[i] + sign;
        if let RelativeOrder::Finite(m) = self.p.orders[i] {
            let m = m as i64;
            let rel = self.p.power[i].as_ref().expect("finite generator has a power relation");
            if e == m {
                e = 0;
                let mut head = rel.0.clone();
                self.mul_word(&mut head, &tail)?;
                tail = head;
            } else if e == -1 {
                e = m - 1;
                let mut head = self.inverse(&rel.0)?;
                self.mul_word(&mut head, &tail)?;
                tail = head;
            }
        }
        w[i] = e;
        w[i + 1..].copy_from_slice(&tail[i + 1..]);
        Ok(())
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .names
            .iter()
            .zip(&self.orders)
            .map(|(name, o)| match o {
                RelativeOrder::Finite(m) => format!("{name}:{m}"),
                RelativeOrder::Infinite => format!("{name}:inf"),
            })
            .collect();
        write!(f, "generators: {}", gens.join(", "))
    }
}

/// A direct product `F × P` of a finite group and a pc-presented group.
#[derive(Debug, Clone)]
pub struct ProductDatum {
    pub finite: Arc<FiniteGroup>,
    pub pc: Arc<PcPresentation>,
}

/// An element of a [`ProductDatum`].
pub type ProductElement = (usize, PcWord);

impl ProductDatum {
    pub fn new(finite: Arc<FiniteGroup>, pc: Arc<PcPresentation>) -> Self {
        ProductDatum { finite, pc }
    }

    pub fn identity(&self) -> ProductElement {
        (0, self.pc.identity())
    }

    pub fn multiply(&self, a: &ProductElement, b: &ProductElement) -> Result<ProductElement> {
        Ok((self.finite.mul(a.0, b.0), self.pc.multiply(&a.1, &b.1)?))
    }

    pub fn inverse(&self, a: &ProductElement) -> Result<ProductElement> {
        Ok((self.finite.inv(a.0), self.pc.inverse(&a.1)?))
    }

    pub fn hirsch_number(&self) -> usize {
        self.pc.hirsch_number()
    }
}

/// A finite quotient `F × (Z/m)^k` that keeps a list of elements in
/// pairwise distinct conjugacy classes.
#[derive(Debug, Clone)]
pub struct Separation {
    pub modulus: u64,
    /// The quotient group, when its order is within the cap.
    pub quotient: Option<Arc<FiniteGroup>>,
    /// Images of the input elements in `quotient` (empty if not built).
    pub images: Vec<usize>,
    finite_degree: usize,
    rank: usize,
}

impl Separation {
    /// Image of an arbitrary element of the datum in the quotient group.
    pub fn image(&self, datum: &ProductDatum, x: &ProductElement) -> Option<usize> {
        let q = self.quotient.as_ref()?;
        q.index_of(&self.image_permutation(datum, x))
    }

    fn image_permutation(&self, datum: &ProductDatum, x: &ProductElement) -> Permutation {
        let m = self.modulus as usize;
        let mut images: Vec<usize> = datum.finite.element(x.0).images().to_vec();
        images.resize(self.finite_degree, 0);
        for (k, &e) in x.1 .0.iter().enumerate().take(self.rank) {
            let shift = e.rem_euclid(m as i64) as usize;
            let base = self.finite_degree + k * m;
            images.extend((0..m).map(|p| base + (p + shift) % m));
        }
        Permutation::from_images(images).expect("block permutation")
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Separates conjugacy classes of `F × Z^k` in a finite quotient.
///
/// The modulus is the smallest prime exceeding every absolute exponent among
/// the inputs for which the images stay pairwise non-conjugate.
pub fn separate_classes(datum: &ProductDatum, elements: &[ProductElement], order_cap: usize) -> Result<Separation> {
    if !datum.pc.is_free_abelian() {
        return Err(Error::UnsupportedShape("class separation needs a free abelian pc part".into()));
    }
    let f = datum.finite.as_ref();
    let k = datum.pc.len();
    for x in elements {
        if x.0 >= f.order() || x.1 .0.len() != k {
            return Err(Error::UnsupportedShape("element does not belong to the datum".into()));
        }
    }
    let conjugate = |a: &ProductElement, b: &ProductElement, m: Option<i64>| -> bool {
        f.class_of(a.0) == f.class_of(b.0)
            && a.1 .0.iter().zip(&b.1 .0).all(|(x, y)| match m {
                Some(m) => (x - y).rem_euclid(m) == 0,
                None => x == y,
            })
    };
    let pairs = || (0..elements.len()).flat_map(|i| (i + 1..elements.len()).map(move |j| (i, j)));
    if pairs().any(|(i, j)| conjugate(&elements[i], &elements[j], None)) {
        return Err(Error::NotSeparated);
    }
    let bound = elements.iter().flat_map(|x| x.1 .0.iter()).map(|e| e.unsigned_abs()).max().unwrap_or(0);
    let mut p = bound + 1;
    loop {
        if is_prime(p) && !pairs().any(|(i, j)| conjugate(&elements[i], &elements[j], Some(p as i64))) {
            break;
        }
        p += 1;
    }
    let mut sep = Separation { modulus: p, quotient: None, images: Vec::new(), finite_degree: f.degree(), rank: k };
    let qorder = (f.order() as u128) * (p as u128).pow(k as u32);
    if qorder <= order_cap as u128 {
        let mut gens: Vec<Permutation> = f
            .generator_indices()
            .iter()
            .map(|&g| sep.image_permutation(datum, &(g, PcWord::identity(k))))
            .collect();
        for i in 0..k {
            gens.push(sep.image_permutation(datum, &(0, PcWord::generator(k, i, 1))));
        }
        let q = Arc::new(FiniteGroup::close_generators(&gens, order_cap)?);
        sep.images = elements.iter().map(|x| q.index_of(&sep.image_permutation(datum, x)).expect("in quotient")).collect();
        sep.quotient = Some(q);
    }
    Ok(sep)
}

/// Convenience wrapper using the default order cap.
pub fn separate_classes_default(datum: &ProductDatum, elements: &[ProductElement]) -> Result<Separation> {
    separate_classes(datum, elements, DEFAULT_ORDER_CAP)
}
