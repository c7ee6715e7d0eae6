//! Solubility and idempotent-ideal certificates.
//!
//! A certificate carries the group description it was produced from plus
//! every piece of data needed to replay its claims with exact arithmetic:
//! derived-series orders, HNF bases, and `Δ(H)^2` witnesses. [`verify`]
//! rebuilds the group and re-checks each claim without searching.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::corpus::GroupData;
use crate::error::{Error, Result};
use crate::group::{derived_series, FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::ideal::{check_witness, delta_square_witness, omega, IdealLattice, Witness};
use crate::lattice::{LatticeBasis, LatticeIndex};
use crate::parse::{parse_finite_element, parse_permutation, parse_product_element};
use crate::pc::{PcPresentation, ProductDatum, RelativeOrder};
use crate::ring::{GroupDatum, RingElement};

const SOLUBLE_NOTE: &str = "Solubility is machine-checked. That the integral group ring then has no \
nontrivial idempotent two-sided ideal is theorem-backed (polycyclic-by-finite groups whose \
polycyclic part is soluble), not machine-verified.";

const POLYCYCLIC_NOTE: &str = "The presentation passed the overlap consistency check, so the group \
is polycyclic and hence soluble. Absence of nontrivial idempotent ideals is theorem-backed, \
not machine-verified.";

const IDEMPOTENT_NOTE: &str = "The ideal generated by the augmentation ideal of the perfect radical \
is a nonzero proper idempotent two-sided ideal. By the structure theory of projectives over \
such rings this yields a projective module with no finitely generated direct summand; that \
consequence is stated for context and is not machine-checked.";

/// Enough information to rebuild a group datum deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Finite { name: String, degree: usize, generators: Vec<String> },
    Pc { presentation: PcPresentation },
    Product { finite_name: String, degree: usize, generators: Vec<String>, presentation: PcPresentation },
}

impl GroupSpec {
    pub fn of_finite(g: &FiniteGroup) -> Self {
        GroupSpec::Finite {
            name: g.name().to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn of_product(d: &ProductDatum) -> Self {
        GroupSpec::Product {
            finite_name: d.finite.name().to_string(),
            degree: d.finite.degree(),
            generators: d.finite.generators().iter().map(ToString::to_string).collect(),
            presentation: (*d.pc).clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Finite { name, .. } => name.clone(),
            GroupSpec::Pc { presentation } => presentation.to_string(),
            GroupSpec::Product { finite_name, presentation, .. } => format!("{finite_name} x <{presentation}>"),
        }
    }

    /// Rebuilds the datum.
    pub fn resolve(&self, order_cap: usize) -> Result<GroupData> {
        let finite = |name: &str, degree: usize, gens: &[String]| -> Result<Arc<FiniteGroup>> {
            let perms = gens
                .iter()
                .map(|s| parse_permutation(s, degree))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::DanglingReference(e.to_string()))?;
            Ok(Arc::new(FiniteGroup::close_named(name, &perms, order_cap)?))
        };
        Ok(match self {
            GroupSpec::Finite { name, degree, generators } => GroupData::Finite(finite(name, *degree, generators)?),
            GroupSpec::Pc { presentation } => GroupData::Pc(Arc::new(presentation.clone())),
            GroupSpec::Product { finite_name, degree, generators, presentation } => GroupData::Product(ProductDatum::new(
                finite(finite_name, *degree, generators)?,
                Arc::new(presentation.clone()),
            )),
        })
    }
}

/// Polycyclic data attached to soluble certificates of pc and product groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolycyclicData {
    pub relative_orders: Vec<RelativeOrder>,
    pub hirsch_number: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolubleCertificate {
    pub group: GroupSpec,
    /// Orders along the derived series of the finite part, ending in 1.
    pub series: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polycyclic: Option<PolycyclicData>,
    pub verification: String,
    pub note: String,
}

/// One `Δ(H)^2` witness: `target - 1 = sum u_i v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub target: String,
    pub pairs: Vec<[String; 2]>,
}

/// Summary of `ω(H) ⊇ ω(H)^2` for the finite case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaSummary {
    pub q_dims: Vec<usize>,
    pub indices: Vec<String>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// `ω(H)^2 = ω(H)` as HNF lattices.
    LatticeEquality,
    /// Every generator `h - 1` of `ω(H)` has a checked `Δ(H)^2` witness.
    WitnessSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentIdealCertificate {
    pub group: GroupSpec,
    /// Perfect radical `H`: its order and a generating set in cycle notation.
    pub radical_order: usize,
    pub radical_generators: Vec<String>,
    /// HNF basis of `ω(H)`; absent for infinite groups.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ideal_basis: Option<LatticeBasis>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa: Option<KappaSummary>,
    pub witnesses: Vec<WitnessEntry>,
    pub verification: Verification,
    pub note: String,
}

/// Exactly one of the two dichotomy outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Certificate {
    Soluble(SolubleCertificate),
    IdempotentIdeal(IdempotentIdealCertificate),
}

impl Certificate {
    pub fn is_soluble(&self) -> bool {
        matches!(self, Certificate::Soluble(_))
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Certificate::Soluble(_) => "soluble",
            Certificate::IdempotentIdeal(_) => "idempotent_ideal",
        }
    }

    pub fn group(&self) -> &GroupSpec {
        match self {
            Certificate::Soluble(c) => &c.group,
            Certificate::IdempotentIdeal(c) => &c.group,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }
}

/// A generating set of `h`, chosen greedily in element-index order.
fn generating_set(h: &Subgroup) -> Vec<usize> {
    let parent = h.parent();
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(parent);
    for &x in h.members() {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(parent, &gens);
        }
    }
    gens
}

fn witness_entry<G: GroupDatum>(group: &G, target: &G::Elem, w: &Witness<G>) -> WitnessEntry {
    WitnessEntry {
        target: group.format_elem(target),
        pairs: w.iter().map(|(u, v)| [u.to_string(), v.to_string()]).collect(),
    }
}

fn series_orders(g: &Arc<FiniteGroup>) -> Vec<usize> {
    derived_series(g).iter().map(Subgroup::order).collect()
}

fn kappa_summary(omega_h: &IdealLattice, square: &IdealLattice) -> Result<KappaSummary> {
    let idx = match omega_h.index(square)? {
        LatticeIndex::Finite(n) => n.to_string(),
        LatticeIndex::Infinite => "infinite".into(),
    };
    Ok(KappaSummary { q_dims: vec![omega_h.rank(), square.rank()], indices: vec![idx], outcome: "stabilized(1)".into() })
}

/// Certificate for a finite group.
pub fn classify(g: &Arc<FiniteGroup>) -> Result<Certificate> {
    let series = series_orders(g);
    if *series.last().unwrap() == 1 {
        return Ok(Certificate::Soluble(SolubleCertificate {
            group: GroupSpec::of_finite(g),
            series,
            polycyclic: None,
            verification: "derived_series".into(),
            note: SOLUBLE_NOTE.into(),
        }));
    }
    let radical = derived_series(g).pop().unwrap();
    let omega_h = omega(&radical)?;
    let square = omega_h.product(&omega_h)?;
    if !square.equal(&omega_h)? {
        return Err(Error::ClaimFailed(format!("omega of the perfect radical of {} is not idempotent", g.name())));
    }
    let gens = generating_set(&radical);
    let witnesses = gens
        .iter()
        .map(|&h| Ok(witness_entry(g.as_ref(), &h, &delta_square_witness(&radical, h)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::IdempotentIdeal(IdempotentIdealCertificate {
        group: GroupSpec::of_finite(g),
        radical_order: radical.order(),
        radical_generators: gens.iter().map(|&h| g.element(h).to_string()).collect(),
        kappa: Some(kappa_summary(&omega_h, &square)?),
        ideal_basis: Some(omega_h.lattice().clone()),
        witnesses,
        verification: Verification::LatticeEquality,
        note: IDEMPOTENT_NOTE.into(),
    }))
}

fn polycyclic_data(p: &PcPresentation) -> PolycyclicData {
    PolycyclicData { relative_orders: p.relative_orders().to_vec(), hirsch_number: p.hirsch_number(), consistent: p.consistency_check() }
}

/// Certificate for a pc-presented group: always soluble.
pub fn classify_pc(p: &Arc<PcPresentation>) -> Result<Certificate> {
    let data = polycyclic_data(p);
    if !data.consistent {
        return Err(Error::InvalidPresentation("presentation fails the consistency check".into()));
    }
    Ok(Certificate::Soluble(SolubleCertificate {
        group: GroupSpec::Pc { presentation: (**p).clone() },
        series: Vec::new(),
        polycyclic: Some(data),
        verification: "consistent_presentation".into(),
        note: POLYCYCLIC_NOTE.into(),
    }))
}

/// Certificate for `F × P`, verified inside the product group ring.
pub fn classify_product(d: &ProductDatum) -> Result<Certificate> {
    let data = polycyclic_data(&d.pc);
    if !data.consistent {
        return Err(Error::UnsupportedShape("pc factor fails the consistency check".into()));
    }
    let f = &d.finite;
    let series = series_orders(f);
    if *series.last().unwrap() == 1 {
        return Ok(Certificate::Soluble(SolubleCertificate {
            group: GroupSpec::of_product(d),
            series,
            polycyclic: Some(data),
            verification: "derived_series_and_consistent_presentation".into(),
            note: POLYCYCLIC_NOTE.into(),
        }));
    }
    let radical = derived_series(f).pop().unwrap();
    let datum = Arc::new(d.clone());
    let lift = |x: &RingElement<FiniteGroup, BigInt>| x.push_forward(&datum, |&g| (g, d.pc.identity()));
    let in_h = |x: &(usize, crate::pc::PcWord)| x.1.is_identity() && radical.contains(x.0);
    let gens = generating_set(&radical);
    let mut witnesses = Vec::new();
    for &h in &gens {
        let w: Witness<ProductDatum> =
            delta_square_witness(&radical, h)?.iter().map(|(u, v)| (lift(u), lift(v))).collect();
        let target = (h, d.pc.identity());
        if !check_witness(&datum, &target, &w, in_h)? {
            return Err(Error::ClaimFailed(format!("witness for {} failed in the product ring", f.element(h))));
        }
        witnesses.push(witness_entry(datum.as_ref(), &target, &w));
    }
    Ok(Certificate::IdempotentIdeal(IdempotentIdealCertificate {
        group: GroupSpec::of_product(d),
        radical_order: radical.order(),
        radical_generators: gens.iter().map(|&h| f.element(h).to_string()).collect(),
        ideal_basis: None,
        kappa: None,
        witnesses,
        verification: Verification::WitnessSet,
        note: IDEMPOTENT_NOTE.into(),
    }))
}

/// Dispatches on the datum kind.
pub fn classify_data(data: &GroupData) -> Result<Certificate> {
    match data {
        GroupData::Finite(g) => classify(g),
        GroupData::Pc(p) => classify_pc(p),
        GroupData::Product(d) => classify_product(d),
    }
}

/// Replays every claim of a certificate; group orders up to the default cap.
pub fn verify(cert: &Certificate) -> Result<bool> {
    verify_with_cap(cert, DEFAULT_ORDER_CAP)
}

pub fn verify_with_cap(cert: &Certificate, order_cap: usize) -> Result<bool> {
    let data = cert.group().resolve(order_cap)?;
    match (cert, &data) {
        (Certificate::Soluble(c), GroupData::Finite(g)) => Ok(c.polycyclic.is_none() && series_orders(g) == c.series && c.series.last() == Some(&1)),
        (Certificate::Soluble(c), GroupData::Pc(p)) => Ok(c.series.is_empty() && c.polycyclic.as_ref() == Some(&polycyclic_data(p)) && p.consistency_check()),
        (Certificate::Soluble(c), GroupData::Product(d)) => Ok(series_orders(&d.finite) == c.series
            && c.series.last() == Some(&1)
            && c.polycyclic.as_ref() == Some(&polycyclic_data(&d.pc))
            && d.pc.consistency_check()),
        (Certificate::IdempotentIdeal(c), GroupData::Finite(g)) => verify_finite_ideal(c, g),
        (Certificate::IdempotentIdeal(c), GroupData::Product(d)) => verify_product_ideal(c, d),
        (Certificate::IdempotentIdeal(_), GroupData::Pc(_)) => Ok(false),
    }
}

/// Resolves the listed radical generators and checks that they generate the
/// perfect radical, which must be nontrivial, perfect and normal.
fn resolve_radical(c: &IdempotentIdealCertificate, f: &Arc<FiniteGroup>) -> Result<Option<(Subgroup, Vec<usize>)>> {
    let mut gens = Vec::new();
    for s in &c.radical_generators {
        let p = parse_permutation(s, f.degree()).map_err(|e| Error::DanglingReference(e.to_string()))?;
        match f.index_of(&p) {
            Some(i) => gens.push(i),
            None => return Ok(None),
        }
    }
    let h = Subgroup::generated(f, &gens);
    let radical = derived_series(f).pop().unwrap();
    let ok = h == radical && !h.is_trivial() && h.is_normal() && h.is_perfect() && h.order() == c.radical_order;
    Ok(ok.then_some((h, gens)))
}

fn verify_finite_ideal(c: &IdempotentIdealCertificate, g: &Arc<FiniteGroup>) -> Result<bool> {
    if c.verification != Verification::LatticeEquality {
        return Ok(false);
    }
    let Some((h, gens)) = resolve_radical(c, g)? else { return Ok(false) };
    let Some(basis) = &c.ideal_basis else { return Ok(false) };
    if !basis.is_canonical() || basis.dim() != g.order() {
        return Ok(false);
    }
    let ideal = IdealLattice::from_lattice(g, basis.clone()).map_err(|_| Error::ClaimFailed("basis is not an ideal".into()));
    let Ok(ideal) = ideal else { return Ok(false) };
    if !ideal.equal(&omega(&h)?)? || !ideal.product(&ideal)?.equal(&ideal)? {
        return Ok(false);
    }
    check_witness_entries(g, &c.witnesses, &gens, |&x| x, |s| parse_finite_element(g, s), |&x| h.contains(x))
}

fn verify_product_ideal(c: &IdempotentIdealCertificate, d: &ProductDatum) -> Result<bool> {
    if c.verification != Verification::WitnessSet || c.ideal_basis.is_some() {
        return Ok(false);
    }
    let Some((h, gens)) = resolve_radical(c, &d.finite)? else { return Ok(false) };
    let datum = Arc::new(d.clone());
    let id = d.pc.identity();
    check_witness_entries(
        &datum,
        &c.witnesses,
        &gens,
        |&x| (x, id.clone()),
        |s| parse_product_element(&datum, s),
        |x| x.1.is_identity() && h.contains(x.0),
    )
}

/// Each generator must have exactly one witness, in order, and each witness
/// must check.
fn check_witness_entries<G: GroupDatum>(
    group: &Arc<G>,
    entries: &[WitnessEntry],
    gens: &[usize],
    embed: impl Fn(&usize) -> G::Elem,
    parse: impl Fn(&str) -> Result<RingElement<G, BigInt>>,
    in_h: impl Fn(&G::Elem) -> bool + Copy,
) -> Result<bool> {
    if entries.len() != gens.len() {
        return Ok(false);
    }
    for (entry, h) in entries.iter().zip(gens) {
        let target = embed(h);
        if entry.target != group.format_elem(&target) {
            return Ok(false);
        }
        let mut w = Vec::with_capacity(entry.pairs.len());
        for [u, v] in &entry.pairs {
            match (parse(u), parse(v)) {
                (Ok(u), Ok(v)) => w.push((u, v)),
                _ => return Ok(false),
            }
        }
        if !check_witness(group, &target, &w, in_h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
