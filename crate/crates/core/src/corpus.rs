//! Built-in group corpus.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};
use crate::pc::{PcPresentation, PcRelations, PcWord, ProductDatum, RelativeOrder};

/// Any group datum the workbench can analyze.
#[derive(Debug, Clone)]
pub enum GroupData {
    Finite(Arc<FiniteGroup>),
    Pc(Arc<PcPresentation>),
    Product(ProductDatum),
}

pub const FINITE_NAMES: &[&str] = &["trivial", "C2", "C6", "S3", "D4", "Q8", "A4", "S4", "A5", "S5", "SL(2,5)"];
pub const PC_NAMES: &[&str] = &["Z", "Z^2", "Dinf", "Heisenberg"];
pub const PRODUCT_NAMES: &[&str] = &["A5xZ", "S3xZ"];

/// Soluble finite members of the corpus.
pub const SOLUBLE_FINITE: &[&str] = &["trivial", "C2", "C6", "S3", "D4", "Q8", "A4", "S4"];

fn canonical(name: &str) -> &str {
    match name {
        "SL25" | "SL(2, 5)" => "SL(2,5)",
        "Z2" | "ZxZ" | "Z²" => "Z^2",
        "D_inf" | "D∞" => "Dinf",
        "A5×Z" => "A5xZ",
        "S3×Z" => "S3xZ",
        other => other,
    }
}

fn cycles(list: &[&[usize]], degree: usize) -> Permutation {
    Permutation::from_cycles(&list.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), degree).expect("corpus permutation")
}

/// SL(2,5) acting on the 24 nonzero vectors of F_5^2.
fn sl25_generators() -> Vec<Permutation> {
    let idx = |a: i64, b: i64| (5 * a.rem_euclid(5) + b.rem_euclid(5) - 1) as usize;
    let act = |m: [[i64; 2]; 2]| -> Permutation {
        let mut images = vec![0; 24];
        for a in 0..5 {
            for b in 0..5 {
                if a == 0 && b == 0 {
                    continue;
                }
                images[idx(a, b)] = idx(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b);
            }
        }
        Permutation::from_images(images).expect("invertible matrix")
    };
    vec![act([[1, 1], [0, 1]]), act([[0, 4], [1, 0]])]
}

/// Q8 in its regular representation; elements `±1, ±i, ±j, ±k` as indices `0..8`.
fn q8_generators() -> Vec<Permutation> {
    // unit products: table[u][v] = (sign, unit) for units 1, i, j, k
    const T: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let encode = |s: i8, u: usize| if s > 0 { u } else { u + 4 };
    let left = |u: usize| -> Permutation {
        let images = (0..8)
            .map(|x| {
                let (sx, ux) = if x < 4 { (1, x) } else { (-1, x - 4) };
                let (s, w) = T[u][ux];
                encode(s * sx, w)
            })
            .collect();
        Permutation::from_images(images).expect("regular action")
    };
    vec![left(1), left(2)]
}

fn finite_generators(name: &str) -> Option<Vec<Permutation>> {
    Some(match name {
        "trivial" => vec![Permutation::identity(1)],
        "C2" => vec![cycles(&[&[0, 1]], 2)],
        "C6" => vec![cycles(&[&[0, 1, 2, 3, 4, 5]], 6)],
        "S3" => vec![cycles(&[&[0, 1]], 3), cycles(&[&[0, 1, 2]], 3)],
        "D4" => vec![cycles(&[&[0, 1, 2, 3]], 4), cycles(&[&[1, 3]], 4)],
        "Q8" => q8_generators(),
        "A4" => vec![cycles(&[&[0, 1, 2]], 4), cycles(&[&[0, 1], &[2, 3]], 4)],
        "S4" => vec![cycles(&[&[0, 1, 2, 3]], 4), cycles(&[&[0, 1]], 4)],
        "A5" => vec![cycles(&[&[0, 1, 2, 3, 4]], 5), cycles(&[&[0, 1, 2]], 5)],
        "S5" => vec![cycles(&[&[0, 1, 2, 3, 4]], 5), cycles(&[&[0, 1]], 5)],
        "SL(2,5)" => sl25_generators(),
        _ => return None,
    })
}

pub fn finite_with_cap(name: &str, cap: usize) -> Result<Arc<FiniteGroup>> {
    let name = canonical(name);
    let gens = finite_generators(name).ok_or_else(|| Error::Parse(format!("unknown finite corpus group {name:?}")))?;
    Ok(Arc::new(FiniteGroup::close_named(name, &gens, cap)?))
}

pub fn finite(name: &str) -> Result<Arc<FiniteGroup>> {
    finite_with_cap(name, DEFAULT_ORDER_CAP)
}

pub fn pc(name: &str) -> Result<PcPresentation> {
    let w = |e: &[i64]| PcWord(e.to_vec());
    match canonical(name) {
        "Z" => PcPresentation::new(vec!["t".into()], vec![RelativeOrder::Infinite], PcRelations::default()),
        "Z^2" => Ok(PcPresentation::free_abelian(2)),
        "Dinf" => PcPresentation::new(
            vec!["a".into(), "t".into()],
            vec![RelativeOrder::Finite(2), RelativeOrder::Infinite],
            PcRelations {
                power: vec![],
                conj_by: vec![(0, 1, w(&[0, -1]))],
                conj_by_inverse: vec![(0, 1, w(&[0, -1]))],
            },
        ),
        // [x, y] = x y x^-1 y^-1 = z, z central
        "Heisenberg" => PcPresentation::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![RelativeOrder::Infinite; 3],
            PcRelations {
                power: vec![],
                conj_by: vec![(0, 1, w(&[0, 1, 1]))],
                conj_by_inverse: vec![(0, 1, w(&[0, 1, -1]))],
            },
        ),
        other => Err(Error::Parse(format!("unknown pc corpus group {other:?}"))),
    }
}

pub fn product_with_cap(name: &str, cap: usize) -> Result<ProductDatum> {
    let (f, p) = match canonical(name) {
        "A5xZ" => ("A5", "Z"),
        "S3xZ" => ("S3", "Z"),
        "Z" => ("trivial", "Z"),
        "Z^2" => ("trivial", "Z^2"),
        other => return Err(Error::Parse(format!("unknown product corpus group {other:?}"))),
    };
    Ok(ProductDatum::new(finite_with_cap(f, cap)?, Arc::new(pc(p)?)))
}

pub fn product(name: &str) -> Result<ProductDatum> {
    product_with_cap(name, DEFAULT_ORDER_CAP)
}

/// Resolves any corpus name to its natural datum kind.
pub fn lookup(name: &str, cap: usize) -> Result<GroupData> {
    let c = canonical(name);
    if finite_generators(c).is_some() {
        return Ok(GroupData::Finite(finite_with_cap(c, cap)?));
    }
    if PC_NAMES.contains(&c) {
        return Ok(GroupData::Pc(Arc::new(pc(c)?)));
    }
    if PRODUCT_NAMES.contains(&c) {
        return Ok(GroupData::Product(product_with_cap(c, cap)?));
    }
    Err(Error::Parse(format!("unknown corpus group {name:?}")))
}
