//! Text formats: numbers, permutations, group-ring literals, group files and
//! matrix files.
//!
//! Group files start with a kind line. Blank lines and `#` comments are
//! ignored.
//!
//! ```text
//! permutation
//! name A5
//! (0 1 2 3 4)
//! (0 1 2)
//! ```
//!
//! ```text
//! pc
//! generators: a:2, t:inf
//! a t a^-1 = t^-1
//! a^-1 t a = t^-1
//! ```
//!
//! A `product` file holds a `[finite]` section and a `[pc]` section, each
//! with the body of the corresponding file kind.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::corpus::GroupData;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation};
use crate::pc::{PcPresentation, PcRelations, PcWord, ProductDatum, RelativeOrder};
use crate::ring::{GroupDatum, RingElement, RingMatrix};
use crate::scalar::Scalar;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| perr(format!("bad number {s:?}")));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(perr(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

fn to_scalar<S: Scalar>(q: BigRational) -> Result<S> {
    let text = q.to_string();
    S::from_rational(q).ok_or_else(|| perr(format!("fraction {text} in an integral element")))
}

/// Cycle notation such as `(0 1 2)(3 4)`; `()` is the identity. Points may
/// be separated by spaces or commas.
pub fn parse_permutation(s: &str, degree: usize) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| perr(format!("expected '(' in {s:?}")))?;
        let close = body.find(')').ok_or_else(|| perr(format!("unclosed cycle in {s:?}")))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad point {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(points);
        rest = body[close + 1..].trim_start();
    }
    Permutation::from_cycles(&cycles, degree)
}

/// Splits a sum into signed terms at top-level `+`/`-`, leaving `^-` alone.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut cur = String::new();
    let mut prev = ' ';
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && prev != '^' {
            if !cur.trim().is_empty() {
                out.push((negative, cur.trim().to_string()));
            } else if !out.is_empty() || (ch == '-' && negative) {
                return Err(perr(format!("dangling sign in {s:?}")));
            }
            negative = ch == '-';
            cur.clear();
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if depth != 0 {
        return Err(perr(format!("unbalanced parentheses in {s:?}")));
    }
    if cur.trim().is_empty() {
        if s.trim().is_empty() {
            return Ok(out);
        }
        return Err(perr(format!("dangling sign in {s:?}")));
    }
    out.push((negative, cur.trim().to_string()));
    Ok(out)
}

/// Parses `coeff*atom`, `coeff`, or `atom` with the given atom reader.
fn parse_sum<G: GroupDatum, S: Scalar>(
    group: &Arc<G>,
    s: &str,
    atom: impl Fn(&str) -> Result<G::Elem>,
) -> Result<RingElement<G, S>> {
    let mut acc = RingElement::zero(group);
    for (negative, term) in split_terms(s)? {
        let digits = term.find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace())).unwrap_or(term.len());
        let (coeff_text, rest) = term.split_at(digits);
        let rest = rest.trim();
        let (coeff, elem) = if coeff_text.trim().is_empty() {
            (BigRational::one(), atom(rest)?)
        } else if rest.is_empty() {
            (parse_rational(coeff_text)?, group.identity())
        } else {
            let rest = rest.strip_prefix('*').ok_or_else(|| perr(format!("expected '*' after coefficient in {term:?}")))?;
            (parse_rational(coeff_text)?, atom(rest.trim())?)
        };
        let coeff = if negative { -coeff } else { coeff };
        acc = acc.add(&RingElement::monomial(group, elem, to_scalar::<S>(coeff)?))?;
    }
    Ok(acc)
}

/// Group-ring literal over a finite group. Atoms are `e`, `g<index>` or a
/// permutation in cycle notation: `2*g1 - 3*g4 + 1`, `1/3*(0 1 2)`.
pub fn parse_finite_element<S: Scalar>(group: &Arc<FiniteGroup>, s: &str) -> Result<RingElement<FiniteGroup, S>> {
    parse_sum(group, s, |a| finite_atom(group, a))
}

fn finite_atom(group: &FiniteGroup, a: &str) -> Result<usize> {
    if a == "e" {
        return Ok(0);
    }
    if let Some(idx) = a.strip_prefix('g') {
        let i: usize = idx.parse().map_err(|_| perr(format!("bad element {a:?}")))?;
        return if i < group.order() { Ok(i) } else { Err(perr(format!("element index {i} out of range"))) };
    }
    if a.starts_with('(') {
        let p = parse_permutation(a, group.degree())?;
        return group.index_of(&p).ok_or_else(|| perr(format!("{a} is not in {}", group.name())));
    }
    Err(perr(format!("bad element {a:?}")))
}

/// A word such as `x^2*y^-1` or `x y` (or `1`), collected to normal form.
pub fn parse_pc_word(p: &PcPresentation, s: &str) -> Result<PcWord> {
    p.collect(&parse_letters(p.names(), s)?)
}

fn parse_letters(names: &[String], s: &str) -> Result<Vec<(usize, i64)>> {
    let s = s.trim();
    if s == "1" || s == "e" {
        return Ok(Vec::new());
    }
    s.split(|c: char| c == '*' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| perr(format!("bad exponent in {tok:?}")))?),
                None => (tok, 1),
            };
            let idx = names.iter().position(|x| x == name).ok_or_else(|| perr(format!("unknown generator {name:?}")))?;
            Ok((idx, exp))
        })
        .collect()
}

/// Group-ring literal over a pc group: `t - 1`, `2*x*y^-1 + 3`.
pub fn parse_pc_element<S: Scalar>(p: &Arc<PcPresentation>, s: &str) -> Result<RingElement<PcPresentation, S>> {
    parse_sum(p, s, |a| parse_pc_word(p, a))
}

/// Group-ring literal over a product: atoms are `g<index>`, a permutation,
/// a pc word, or a finite atom and a pc word joined by `*`.
pub fn parse_product_element<S: Scalar>(d: &Arc<ProductDatum>, s: &str) -> Result<RingElement<ProductDatum, S>> {
    parse_sum(d, s, |a| {
        let (fin, pc_part) = if a.starts_with('g') && a[1..].starts_with(|c: char| c.is_ascii_digit()) || a.starts_with('(') {
            let end = if a.starts_with('(') { a.rfind(')').map(|i| i + 1).unwrap_or(a.len()) } else { a.find('*').unwrap_or(a.len()) };
            (finite_atom(&d.finite, &a[..end])?, a[end..].trim_start_matches(['*', ' ']))
        } else {
            (0, a)
        };
        let word = if pc_part.is_empty() { d.pc.identity() } else { parse_pc_word(&d.pc, pc_part)? };
        Ok((fin, word))
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

fn parse_permutation_body<'a>(lines: impl Iterator<Item = &'a str>, cap: usize) -> Result<FiniteGroup> {
    let mut name = "custom".to_string();
    let mut degree = None;
    let mut gens_text = Vec::new();
    for line in lines {
        if let Some(n) = line.strip_prefix("name") {
            name = n.trim_start_matches([':', ' ']).trim().to_string();
        } else if let Some(d) = line.strip_prefix("degree") {
            degree = Some(d.trim_start_matches([':', ' ']).trim().parse::<usize>().map_err(|_| perr("bad degree"))?);
        } else {
            gens_text.push(line);
        }
    }
    let max_point = gens_text
        .iter()
        .flat_map(|l| l.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .map_or(1, |m| m + 1);
    let degree = degree.unwrap_or(max_point);
    let gens = gens_text.iter().map(|l| parse_permutation(l, degree)).collect::<Result<Vec<_>>>()?;
    let gens = if gens.is_empty() { vec![Permutation::identity(degree)] } else { gens };
    FiniteGroup::close_named(&name, &gens, cap)
}

/// Right-hand side of a relation, which must already be in normal form.
fn normal_word(names: &[String], s: &str) -> Result<PcWord> {
    let mut exps = vec![0i64; names.len()];
    let mut last = None;
    for (i, e) in parse_letters(names, s)? {
        if last.is_some_and(|l| l > i) {
            return Err(Error::InvalidPresentation(format!("relation word {s:?} is not in normal form")));
        }
        last = Some(i);
        exps[i] += e;
    }
    Ok(PcWord(exps))
}

fn parse_pc_body<'a>(lines: impl Iterator<Item = &'a str>) -> Result<PcPresentation> {
    let mut names: Vec<String> = Vec::new();
    let mut orders = Vec::new();
    let mut rels = PcRelations::default();
    for line in lines {
        if let Some(g) = line.strip_prefix("generators") {
            for entry in g.trim_start_matches([':', ' ']).split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (n, o) = entry.split_once(':').unwrap_or((entry, "inf"));
                let o = o.trim();
                names.push(n.trim().to_string());
                orders.push(if o == "inf" || o == "infinity" {
                    RelativeOrder::Infinite
                } else {
                    RelativeOrder::Finite(o.parse().map_err(|_| perr(format!("bad relative order {o:?}")))?)
                });
            }
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| perr(format!("expected a relation, got {line:?}")))?;
        let rhs = normal_word(&names, rhs)?;
        let letters = parse_letters(&names, lhs)?;
        match letters.as_slice() {
            [(i, m)] => {
                let ok = matches!(orders[*i], RelativeOrder::Finite(o) if o as i64 == *m);
                if !ok {
                    return Err(Error::InvalidPresentation(format!("power relation {line:?} does not match the relative order")));
                }
                rels.power.push((*i, rhs));
            }
            [(j, 1), (i, 1), (j2, -1)] if j == j2 && j < i => rels.conj_by.push((*j, *i, rhs)),
            [(j, -1), (i, 1), (j2, 1)] if j == j2 && j < i => rels.conj_by_inverse.push((*j, *i, rhs)),
            _ => return Err(Error::InvalidPresentation(format!("unrecognised relation {line:?}"))),
        }
    }
    PcPresentation::new(names, orders, rels)
}

/// Parses a group file into a datum.
pub fn parse_group_file(text: &str, order_cap: usize) -> Result<GroupData> {
    let mut lines = content_lines(text);
    let kind = lines.next().ok_or_else(|| perr("empty group file"))?;
    match kind {
        "permutation" => Ok(GroupData::Finite(Arc::new(parse_permutation_body(lines, order_cap)?))),
        "pc" => Ok(GroupData::Pc(Arc::new(parse_pc_body(lines)?))),
        "product" => {
            let mut finite = Vec::new();
            let mut pc = Vec::new();
            let mut section = None;
            for line in lines {
                match line {
                    "[finite]" => section = Some(0),
                    "[pc]" => section = Some(1),
                    _ => match section {
                        Some(0) => finite.push(line),
                        Some(_) => pc.push(line),
                        None => return Err(perr("product file needs [finite] and [pc] sections")),
                    },
                }
            }
            let f = parse_permutation_body(finite.into_iter(), order_cap)?;
            let p = parse_pc_body(pc.into_iter())?;
            Ok(GroupData::Product(ProductDatum::new(Arc::new(f), Arc::new(p))))
        }
        other => Err(perr(format!("unknown group file kind {other:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Int(i64),
}

/// A square matrix given as a JSON array of rows of literal strings.
pub fn parse_matrix_json<G: GroupDatum, S: Scalar>(
    group: &Arc<G>,
    json: &str,
    element: impl Fn(&str) -> Result<RingElement<G, S>>,
) -> Result<RingMatrix<G, S>> {
    let cells: Vec<Vec<Cell>> = serde_json::from_str(json).map_err(|e| perr(format!("matrix file: {e}")))?;
    let rows = cells
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|c| match c {
                    Cell::Text(t) => element(&t),
                    Cell::Int(n) => element(&n.to_string()),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RingMatrix::from_rows(group, rows)
}
