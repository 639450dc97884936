use alloc::vec::Vec;

use crate::cyclotomic::{self, CosetTable, ResidueSplit};
use crate::gf2m::{BinaryPolynomial, FieldContext};
use crate::Result;

/// Everything tied to one prime length `n`: the field holding `β`, the coset
/// table, the residue split and the minimal polynomial of every coset.
#[derive(Clone, Debug)]
pub struct PrimeContext {
    field: FieldContext,
    cosets: CosetTable,
    split: ResidueSplit,
    minimal: Vec<BinaryPolynomial>,
}

impl PrimeContext {
    pub fn new(n: u32) -> Result<Self> {
        let cosets = CosetTable::new(n)?;
        let field = FieldContext::new(n)?;
        let split = ResidueSplit::new(n)?;
        let minimal = cosets
            .leaders()
            .into_iter()
            .map(|leader| cyclotomic::minimal_polynomial(&cosets, &field, leader))
            .collect::<Result<_>>()?;
        Ok(Self {
            field,
            cosets,
            split,
            minimal,
        })
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn split(&self) -> &ResidueSplit {
        &self.split
    }

    /// Minimal polynomial of the coset with index `idx` (leader order).
    pub fn coset_polynomial(&self, idx: usize) -> &BinaryPolynomial {
        &self.minimal[idx]
    }

    /// `M_{β^i}(x)`.
    pub fn minimal_polynomial(&self, i: u32) -> Result<&BinaryPolynomial> {
        Ok(&self.minimal[self.cosets.coset_index(i)?])
    }
}
