//! Hattori–Stallings ranks: images of traces in the free module on conjugacy classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::ring::{RingElement, RingMatrix};
use crate::scalar::Scalar;

/// A rational combination of conjugacy classes, keyed by each class's
/// minimal element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    group: Arc<FiniteGroup>,
    coefficients: BTreeMap<usize, BigRational>,
}

impl ClassVector {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        ClassVector { group: Arc::clone(group), coefficients: BTreeMap::new() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, BigRational> {
        &self.coefficients
    }

    pub fn coefficient(&self, class_tag: usize) -> BigRational {
        self.coefficients.get(&class_tag).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Report form: class representative in cycle notation (`e` for the
    /// identity) mapped to the coefficient as a string.
    pub fn to_report(&self) -> BTreeMap<String, String> {
        self.coefficients
            .iter()
            .map(|(&tag, c)| {
                let key = if tag == 0 { "e".to_string() } else { self.group.element(tag).to_string() };
                (key, c.to_string())
            })
            .collect()
    }
}

impl Serialize for ClassVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_report().serialize(s)
    }
}

impl<S: Scalar> RingElement<FiniteGroup, S> {
    /// Image in `R/[R,R]`: coefficients summed over each conjugacy class.
    pub fn hs_class_vector(&self) -> ClassVector {
        let g = self.group();
        let mut coefficients: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&x, c) in self.terms() {
            *coefficients.entry(g.class_tag(x)).or_insert_with(BigRational::zero) += c.to_rational();
        }
        coefficients.retain(|_, c| !c.is_zero());
        ClassVector { group: Arc::clone(g), coefficients }
    }
}

/// Class vector of the trace of an idempotent matrix.
pub fn hs_of_idempotent_matrix<S: Scalar>(e: &RingMatrix<FiniteGroup, S>) -> Result<ClassVector> {
    e.check_idempotent()?;
    Ok(e.trace().hs_class_vector())
}
