//! HNF checked against determinantal divisors computed by cofactor expansion.
//!
//! For a generating matrix of rank r, the gcd of its r×r minors is an
//! invariant of the lattice. That gives containment (`v ∈ L` iff adding `v`
//! changes neither rank nor divisor) and indices (ratio of divisors).

use grwb_core::lattice::{hnf, integer_kernel, HnfBuilder};
use grwb_core::{IntVector, LatticeBasis, LatticeIndex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 { term } else { -term }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// (rank, gcd of maximal minors).
fn divisor(rows: &[Vec<BigInt>], dim: usize) -> (usize, BigInt) {
    for r in (1..=rows.len().min(dim)).rev() {
        let mut g = BigInt::zero();
        for rs in subsets(rows.len(), r) {
            for cs in subsets(dim, r) {
                let m: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&m));
            }
        }
        if !g.is_zero() {
            return (r, g);
        }
    }
    (0, BigInt::from(1))
}

fn to_vecs(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn basis(rows: &[Vec<i64>], dim: usize) -> LatticeBasis {
    let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64(r)).collect();
    hnf(&vs, dim).unwrap()
}

fn basis_rows(l: &LatticeBasis) -> Vec<Vec<BigInt>> {
    l.rows().iter().map(|r| r.entries().to_vec()).collect()
}

fn oracle_contains(gens: &[Vec<BigInt>], v: &[BigInt], dim: usize) -> bool {
    let (r, d) = divisor(gens, dim);
    let mut ext = gens.to_vec();
    ext.push(v.to_vec());
    divisor(&ext, dim) == (r, d)
}

fn matrix(dim: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), 0..=max_rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn hnf_is_canonical_and_spans(rows in matrix(4, 5)) {
        let l = basis(&rows, 4);
        prop_assert!(l.is_canonical());
        let gens = to_vecs(&rows);
        let (r, d) = divisor(&gens, 4);
        prop_assert_eq!(divisor(&basis_rows(&l), 4), (r, d));
        prop_assert_eq!(l.rank(), r);
        for g in &rows {
            prop_assert!(l.contains(&IntVector::from_i64(g)).unwrap());
        }
    }

    #[test]
    fn containment_matches_oracle(rows in matrix(3, 4), v in prop::collection::vec(-8i64..=8, 3)) {
        let l = basis(&rows, 3);
        let gens = to_vecs(&rows);
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(l.contains(&IntVector(vb.clone())).unwrap(), oracle_contains(&gens, &vb, 3));
    }

    #[test]
    fn unimodular_change_of_generators(rows in matrix(3, 4), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)) {
        let mut moved = rows.clone();
        for (i, j, k) in ops {
            if i != j && i < moved.len() && j < moved.len() {
                let src = moved[j].clone();
                for (a, b) in moved[i].iter_mut().zip(src) {
                    *a += k * b;
                }
            }
        }
        moved.reverse();
        prop_assert_eq!(basis(&rows, 3), basis(&moved, 3));
    }

    #[test]
    fn index_matches_divisors(rows in matrix(3, 4), scale in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let outer = basis(&rows, 3);
        // inner: rows of a random integer combination of the outer basis
        let ob = basis_rows(&outer);
        let inner_rows: Vec<IntVector> = scale
            .iter()
            .take(ob.len())
            .map(|c| {
                let mut acc = vec![BigInt::zero(); 3];
                for (k, row) in ob.iter().enumerate() {
                    for (a, x) in acc.iter_mut().zip(row) {
                        *a += BigInt::from(c[k]) * x;
                    }
                }
                IntVector(acc)
            })
            .collect();
        let inner = hnf(&inner_rows, 3).unwrap();
        prop_assert!(outer.contains_lattice(&inner).unwrap());
        let (ro, dout) = divisor(&ob, 3);
        let (ri, din) = divisor(&basis_rows(&inner), 3);
        let expected = if ri < ro { LatticeIndex::Infinite } else { LatticeIndex::Finite(din / dout) };
        prop_assert_eq!(outer.index(&inner).unwrap(), expected);
    }

    #[test]
    fn index_is_multiplicative(a in prop::collection::vec(1i64..=4, 3), b in prop::collection::vec(1i64..=4, 3), shear in -5i64..=5) {
        let l1 = basis(&[vec![1, shear, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        let l2 = basis(&[vec![a[0], a[0] * shear, 0], vec![0, a[1], 0], vec![0, 0, a[2]]], 3);
        let l3 = basis(&[vec![a[0] * b[0], a[0] * b[0] * shear, 0], vec![0, a[1] * b[1], 0], vec![0, 0, a[2] * b[2]]], 3);
        let idx = |x: &LatticeBasis, y: &LatticeBasis| match x.index(y).unwrap() {
            LatticeIndex::Finite(n) => n,
            LatticeIndex::Infinite => panic!("full rank"),
        };
        prop_assert_eq!(idx(&l1, &l3), idx(&l1, &l2) * idx(&l2, &l3));
    }

    #[test]
    fn sum_contains_both(r1 in matrix(3, 3), r2 in matrix(3, 3)) {
        let a = basis(&r1, 3);
        let b = basis(&r2, 3);
        let s = a.sum(&b).unwrap();
        prop_assert!(s.contains_lattice(&a).unwrap() && s.contains_lattice(&b).unwrap());
        let mut all = r1.clone();
        all.extend(r2.clone());
        prop_assert_eq!(s, basis(&all, 3));
    }

    #[test]
    fn kernel_rows_are_killed(rows in matrix(3, 5)) {
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64(r)).collect();
        let k = integer_kernel(&vs, 3).unwrap();
        prop_assert_eq!(k.dim(), rows.len());
        for kr in k.rows() {
            for col in 0..3 {
                let s: BigInt = kr.entries().iter().zip(&rows).map(|(c, r)| c * BigInt::from(r[col])).sum();
                prop_assert!(s.is_zero());
            }
        }
        let (r, _) = divisor(&to_vecs(&rows), 3);
        prop_assert_eq!(k.rank() + r, rows.len());
        // the kernel is saturated: its maximal minors have gcd 1
        if k.rank() > 0 {
            prop_assert_eq!(divisor(&basis_rows(&k), rows.len()).1.abs(), BigInt::from(1));
        }
    }

    #[test]
    fn builder_reports_growth(rows in matrix(3, 5)) {
        let mut b = HnfBuilder::new(3);
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for r in &rows {
            let before = basis(&seen, 3);
            let grew = b.insert(r.iter().map(|&x| BigInt::from(x)).collect());
            prop_assert_eq!(grew, !before.contains(&IntVector::from_i64(r)).unwrap());
            seen.push(r.clone());
        }
        prop_assert_eq!(b.finish(), basis(&rows, 3));
    }
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::from(10).pow(30);
    let rows = vec![IntVector(vec![big.clone(), BigInt::from(1)]), IntVector(vec![BigInt::from(0), big.clone()])];
    let l = hnf(&rows, 2).unwrap();
    assert_eq!(l.index(&hnf(&[rows[0].clone(), IntVector(vec![BigInt::zero(), &big * 2])], 2).unwrap()).unwrap(), LatticeIndex::Finite(BigInt::from(2)));
}
