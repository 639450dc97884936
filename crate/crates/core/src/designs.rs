//! Supports of fixed-weight codewords and exhaustive t-design verification.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::arith::binomial;
use crate::codes::{qr_codes, LinearCode};
use crate::{Error, PrimeContext, Result};

/// Largest `C(v, t)` that [`verify_design`] will enumerate.
pub const MAX_SUBSETS: u128 = 1_000_000;

/// Blocks are point sets stored as bitmasks over `0..v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDesign {
    v: usize,
    k: usize,
    blocks: Vec<u64>,
    verified: Option<(usize, u64)>,
}

impl BlockDesign {
    pub fn new(v: usize, k: usize, blocks: impl IntoIterator<Item = u64>) -> Result<Self> {
        if v > 64 {
            return Err(Error::LengthTooLarge(v));
        }
        if k > v {
            return Err(Error::InvalidDesign(format!("block size {k} exceeds {v} points")));
        }
        let mut set = BTreeSet::new();
        for b in blocks {
            if b & !crate::codes::mask(v) != 0 || b.count_ones() as usize != k {
                return Err(Error::InvalidDesign(format!(
                    "{b:#x} is not a {k}-subset of {v} points"
                )));
            }
            set.insert(b);
        }
        Ok(Self {
            v,
            k,
            blocks: set.into_iter().collect(),
            verified: None,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `(t, λ)` once [`BlockDesign::verify`] has succeeded.
    pub fn verified(&self) -> Option<(usize, u64)> {
        self.verified
    }

    /// Runs [`verify_design`] and records `(t, λ)` on success.
    pub fn verify(&mut self, t: usize) -> Result<DesignVerdict> {
        let verdict = verify_design(self, t)?;
        if let DesignVerdict::Design { t, lambda } = verdict {
            self.verified = Some((t, lambda));
        }
        Ok(verdict)
    }

    /// Blocks `P \ B`, a `(v-k)`-uniform design on the same points.
    pub fn complement(&self) -> Self {
        let full = crate::codes::mask(self.v);
        let mut blocks: Vec<u64> = self.blocks.iter().map(|b| full & !b).collect();
        blocks.sort_unstable();
        Self {
            v: self.v,
            k: self.v - self.k,
            blocks,
            verified: None,
        }
    }
}

/// Supports of the weight-`k` codewords. Empty when `A_k = 0` or `k = 0`.
pub fn blocks_of_weight(code: &LinearCode, k: usize, cap: usize) -> Result<BlockDesign> {
    let mut blocks = Vec::new();
    if k > 0 {
        code.for_each_codeword(cap, |w| {
            if w.count_ones() as usize == k {
                blocks.push(w);
            }
        })?;
    }
    BlockDesign::new(code.length(), k, blocks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignVerdict {
    Design {
        t: usize,
        lambda: u64,
    },
    /// The first `t`-subset (in increasing mask order) and the first later
    /// one lying in a different number of blocks.
    Counterexample {
        t: usize,
        first: (u64, u64),
        second: (u64, u64),
    },
}

impl DesignVerdict {
    pub fn is_design(&self) -> bool {
        matches!(self, Self::Design { .. })
    }
}

/// Next larger integer with the same popcount.
fn gosper(x: u64) -> Option<u64> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

fn subsets(v: usize, t: usize) -> impl Iterator<Item = u64> {
    let first = crate::codes::mask(t);
    let limit = 1u64.checked_shl(v as u32).unwrap_or(0);
    let mut next = Some(first);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if t == 0 || t == v {
            None
        } else {
            gosper(cur).filter(|&n| n < limit || v == 64)
        };
        Some(cur)
    })
}

fn containing(blocks: &[u64], subset: u64) -> u64 {
    blocks.iter().filter(|&&b| b & subset == subset).count() as u64
}

#[cfg(not(feature = "parallel"))]
fn counts(blocks: &[u64], v: usize, t: usize) -> Vec<(u64, u64)> {
    subsets(v, t).map(|s| (s, containing(blocks, s))).collect()
}

#[cfg(feature = "parallel")]
fn counts(blocks: &[u64], v: usize, t: usize) -> Vec<(u64, u64)> {
    use rayon::prelude::*;
    let all: Vec<u64> = subsets(v, t).collect();
    all.par_iter().map(|&s| (s, containing(blocks, s))).collect()
}

/// Counts the blocks through every `t`-subset of the points.
pub fn verify_design(design: &BlockDesign, t: usize) -> Result<DesignVerdict> {
    let (v, k) = (design.v, design.k);
    if t > k {
        return Err(Error::InvalidDesign(format!("t = {t} exceeds block size {k}")));
    }
    let total = binomial(v as u64, t as u64);
    if total > MAX_SUBSETS {
        return Err(Error::TooManySubsets {
            subsets: total,
            cap: MAX_SUBSETS,
        });
    }
    let counts = counts(&design.blocks, v, t);
    let first = counts[0];
    if let Some(&second) = counts.iter().find(|c| c.1 != first.1) {
        return Ok(DesignVerdict::Counterexample { t, first, second });
    }
    let lambda = first.1;
    let lhs = lambda as u128 * total;
    let rhs = design.blocks.len() as u128 * binomial(k as u64, t as u64);
    if lhs != rhs {
        return Err(Error::Falsified(format!(
            "lambda C(v,t) = {lhs} but b C(k,t) = {rhs} for a {t}-({v},{k},{lambda}) design"
        )));
    }
    Ok(DesignVerdict::Design { t, lambda })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerOutcome {
    Verified { t: usize, lambda: u64 },
    Failed(DesignVerdict),
    CapExceeded(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub k: usize,
    pub b: usize,
    pub outcome: LayerOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: u32,
    pub v: usize,
    /// 3 when `n ≡ 3 (mod 4)`, else 2.
    pub t: usize,
    pub layers: Vec<LayerReport>,
}

impl SweepReport {
    pub fn all_verified(&self) -> bool {
        self.layers
            .iter()
            .all(|l| matches!(l.outcome, LayerOutcome::Verified { .. }))
    }
}

/// Verifies every nonzero weight layer of the extended QR code `Q̄` of
/// length `n + 1`: a 2-design throughout, and a 3-design when
/// `n ≡ 3 (mod 4)`.
pub fn design_sweep(ctx: &PrimeContext, cap: usize) -> Result<SweepReport> {
    let n = ctx.n();
    let code = qr_codes(ctx)?.0.extend();
    let dist = code.weight_distribution(cap)?;
    let t_max = if n % 4 == 3 { 3 } else { 2 };
    let mut layers = Vec::new();
    for k in dist.nonzero_weights().filter(|&k| k > 0) {
        let design = blocks_of_weight(&code, k, cap)?;
        let mut outcome = LayerOutcome::Verified { t: 0, lambda: 0 };
        for t in 2..=t_max.min(k) {
            outcome = match verify_design(&design, t) {
                Ok(DesignVerdict::Design { t, lambda }) => LayerOutcome::Verified { t, lambda },
                Ok(bad) => LayerOutcome::Failed(bad),
                Err(e @ Error::TooManySubsets { .. }) => LayerOutcome::CapExceeded(e),
                Err(e) => return Err(e),
            };
            if !matches!(outcome, LayerOutcome::Verified { .. }) {
                break;
            }
        }
        layers.push(LayerReport {
            k,
            b: design.b(),
            outcome,
        });
    }
    Ok(SweepReport {
        n,
        v: code.length(),
        t: t_max,
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_MAX_DIMENSION as CAP;
    use proptest::prelude::*;

    fn extended_qr(n: u32) -> LinearCode {
        qr_codes(&PrimeContext::new(n).unwrap()).unwrap().0.extend()
    }

    #[test]
    fn gosper_enumerates_all_subsets() {
        assert_eq!(subsets(8, 3).count(), 56);
        assert_eq!(subsets(24, 3).count(), 2024);
        assert_eq!(subsets(5, 0).collect::<Vec<_>>(), [0]);
        assert_eq!(subsets(5, 5).collect::<Vec<_>>(), [0x1f]);
        assert_eq!(subsets(64, 1).count(), 64);
        assert!(subsets(10, 4).all(|s| s.count_ones() == 4 && s < 1 << 10));
    }

    #[test]
    fn steiner_system_from_hamming() {
        let mut d = blocks_of_weight(&extended_qr(7), 4, CAP).unwrap();
        assert_eq!((d.v(), d.b()), (8, 14));
        assert_eq!(d.verify(3).unwrap(), DesignVerdict::Design { t: 3, lambda: 1 });
        assert_eq!(d.verified(), Some((3, 1)));
        assert_eq!(verify_design(&d, 2).unwrap(), DesignVerdict::Design { t: 2, lambda: 3 });
        assert!(!verify_design(&d, 4).unwrap().is_design());
    }

    #[test]
    fn golay_octads() {
        let d = blocks_of_weight(&extended_qr(23), 8, CAP).unwrap();
        assert_eq!(d.b(), 759);
        assert_eq!(
            verify_design(&d, 3).unwrap(),
            DesignVerdict::Design { t: 3, lambda: 21 }
        );
        assert_eq!(verify_design(&d, 5).unwrap(), DesignVerdict::Design { t: 5, lambda: 1 });
    }

    #[test]
    fn seventeen_layers_are_two_designs() {
        let report = design_sweep(&PrimeContext::new(17).unwrap(), CAP).unwrap();
        assert_eq!(report.t, 2);
        assert!(report.all_verified());
        let ks: Vec<usize> = report.layers.iter().map(|l| l.k).collect();
        assert_eq!(ks, [6, 8, 10, 12, 18]);
        for layer in &report.layers {
            if let LayerOutcome::Verified { t, lambda } = layer.outcome {
                assert_eq!(t, 2);
                assert_eq!(
                    lambda as u128 * binomial(18, 2),
                    layer.b as u128 * binomial(layer.k as u64, 2)
                );
            }
        }
    }

    #[test]
    fn sweep_seven_and_twenty_three() {
        let r7 = design_sweep(&PrimeContext::new(7).unwrap(), CAP).unwrap();
        let rows: Vec<(usize, usize, LayerOutcome)> = r7.layers.iter().map(|l| (l.k, l.b, l.outcome.clone())).collect();
        assert_eq!(
            rows,
            [
                (4, 14, LayerOutcome::Verified { t: 3, lambda: 1 }),
                (8, 1, LayerOutcome::Verified { t: 3, lambda: 1 }),
            ]
        );
        let r23 = design_sweep(&PrimeContext::new(23).unwrap(), CAP).unwrap();
        assert!(r23.all_verified());
        let lambdas: Vec<(usize, LayerOutcome)> = r23.layers.iter().map(|l| (l.k, l.outcome.clone())).collect();
        assert_eq!(lambdas[0], (8, LayerOutcome::Verified { t: 3, lambda: 21 }));
        assert_eq!(lambdas[1], (12, LayerOutcome::Verified { t: 3, lambda: 280 }));
        assert_eq!(lambdas[2], (16, LayerOutcome::Verified { t: 3, lambda: 210 }));
    }

    #[test]
    fn sweep_needs_qr_codes() {
        assert_eq!(
            design_sweep(&PrimeContext::new(11).unwrap(), CAP),
            Err(Error::NoQuadraticResidueCode(11))
        );
    }

    #[test]
    fn complements_keep_t() {
        for (n, k, t) in [(7u32, 4usize, 3usize), (23, 8, 3), (23, 12, 3)] {
            let code = extended_qr(n);
            let d = blocks_of_weight(&code, k, CAP).unwrap();
            let c = d.complement();
            assert_eq!(c, blocks_of_weight(&code, code.length() - k, CAP).unwrap());
            assert!(verify_design(&c, t).unwrap().is_design());
        }
    }

    #[test]
    fn downward_identity() {
        for (n, k) in [(7u32, 4usize), (23, 8), (23, 12), (17, 6), (17, 8)] {
            let d = blocks_of_weight(&extended_qr(n), k, CAP).unwrap();
            let v = d.v() as u64;
            let top = if n % 4 == 3 { 3 } else { 2 };
            for t in (2..=top).rev() {
                let DesignVerdict::Design { lambda, .. } = verify_design(&d, t).unwrap() else {
                    panic!("not a {t}-design");
                };
                let DesignVerdict::Design { lambda: lower, .. } = verify_design(&d, t - 1).unwrap() else {
                    panic!("not a {}-design", t - 1);
                };
                let t = t as u64;
                assert_eq!(lower * (k as u64 - t + 1), lambda * (v - t + 1));
            }
        }
    }

    #[test]
    fn edge_cases() {
        let code = extended_qr(7);
        assert!(blocks_of_weight(&code, 0, CAP).unwrap().is_empty());
        assert!(blocks_of_weight(&code, 3, CAP).unwrap().is_empty());
        let empty = blocks_of_weight(&code, 2, CAP).unwrap();
        assert_eq!(
            verify_design(&empty, 2).unwrap(),
            DesignVerdict::Design { t: 2, lambda: 0 }
        );
        assert!(matches!(verify_design(&empty, 3), Err(Error::InvalidDesign(_))));
        let big = BlockDesign::new(62, 31, [crate::codes::mask(31)]).unwrap();
        assert!(matches!(verify_design(&big, 6), Err(Error::TooManySubsets { .. })));
        assert!(BlockDesign::new(8, 4, [0b111]).is_err());
        let dup = BlockDesign::new(8, 2, [0b11, 0b11, 0b101]).unwrap();
        assert_eq!(dup.b(), 2);
        match verify_design(&dup, 1).unwrap() {
            DesignVerdict::Counterexample { first, second, .. } => {
                assert_eq!(first, (0b1, 2));
                assert_eq!(second, (0b10, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn counting_identity_on_random_designs(blocks in proptest::collection::vec(0u64..(1 << 9), 1..20), t in 1usize..3) {
            let k = 3;
            let filtered: Vec<u64> = blocks.into_iter().filter(|b| b.count_ones() == 3).collect();
            let d = BlockDesign::new(9, k, filtered).unwrap();
            if let DesignVerdict::Design { lambda, .. } = verify_design(&d, t).unwrap() {
                prop_assert_eq!(lambda as u128 * binomial(9, t as u64), d.b() as u128 * binomial(3, t as u64));
            }
        }
    }
}
