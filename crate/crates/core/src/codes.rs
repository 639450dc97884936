//! Binary linear codes of length at most 64 on packed words, cyclic codes from
//! defining sets, and the quadratic-residue codes.
//!
//! A [`LinearCode`] is held as its canonical reduced row-echelon basis: the
//! pivot of a row is its lowest set coordinate, rows are sorted by pivot and
//! every pivot column is zero outside its own row. Two codes are equal exactly
//! when their bases are equal.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf2m::BinaryPolynomial;
use crate::{Error, PrimeContext, Result};

/// Mask of the low `length` bits.
pub fn mask(length: usize) -> u64 {
    if length >= 64 {
        u64::MAX
    } else {
        (1u64 << length) - 1
    }
}

/// Incremental echelon basis keyed by pivot (lowest set bit).
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    by_pivot: [u64; 64],
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Self { by_pivot: [0; 64] }
    }

    pub(crate) fn reduce(&self, mut w: u64) -> u64 {
        while w != 0 {
            let p = w.trailing_zeros() as usize;
            let row = self.by_pivot[p];
            if row == 0 {
                return w;
            }
            w ^= row;
        }
        0
    }

    /// Adds `w` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, w: u64) -> bool {
        let r = self.reduce(w);
        if r == 0 {
            return false;
        }
        self.by_pivot[r.trailing_zeros() as usize] = r;
        true
    }

    /// Canonical fully reduced basis sorted by pivot.
    pub(crate) fn into_rref(mut self) -> Vec<u64> {
        for p in (0..64).rev() {
            let row = self.by_pivot[p];
            if row == 0 {
                continue;
            }
            // clear bit p from rows with smaller pivots
            for q in 0..p {
                if (self.by_pivot[q] >> p) & 1 == 1 {
                    self.by_pivot[q] ^= row;
                }
            }
        }
        self.by_pivot.iter().copied().filter(|&r| r != 0).collect()
    }
}

/// Counts `A_0 ..= A_length` of a linear code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight present.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|i| i + 1)
    }

    /// Weights `k >= 1` with `A_k > 0`.
    pub fn nonzero_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(k, _)| k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearCode {
    length: usize,
    basis: Vec<u64>,
}

impl LinearCode {
    pub fn from_generators(length: usize, rows: impl IntoIterator<Item = u64>) -> Result<Self> {
        if length > 64 {
            return Err(Error::LengthTooLarge(length));
        }
        let mut ech = Echelon::new();
        for row in rows {
            if row & !mask(length) != 0 {
                return Err(Error::LengthMismatch { length });
            }
            ech.insert(row);
        }
        Ok(Self {
            length,
            basis: ech.into_rref(),
        })
    }

    pub(crate) fn from_echelon(length: usize, ech: Echelon) -> Self {
        Self {
            length,
            basis: ech.into_rref(),
        }
    }

    /// `{0}`.
    pub fn zero(length: usize) -> Self {
        Self {
            length,
            basis: Vec::new(),
        }
    }

    /// `GF(2)^length`.
    pub fn full(length: usize) -> Self {
        Self {
            length,
            basis: (0..length).map(|i| 1u64 << i).collect(),
        }
    }

    /// `{0, 1...1}`.
    pub fn repetition(length: usize) -> Self {
        if length == 0 {
            return Self::zero(0);
        }
        Self {
            length,
            basis: vec![mask(length)],
        }
    }

    /// All words of even weight.
    pub fn even_weight(length: usize) -> Self {
        Self::repetition(length).dual()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new();
        for &row in &self.basis {
            ech.by_pivot[row.trailing_zeros() as usize] = row;
        }
        ech
    }

    pub fn contains(&self, word: u64) -> bool {
        if word & !mask(self.length) != 0 {
            return false;
        }
        let mut w = word;
        for &row in &self.basis {
            if (w >> row.trailing_zeros()) & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.length == other.length && self.basis.iter().all(|&b| other.contains(b))
    }

    /// Span of `self ∪ other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.length != other.length {
            return Err(Error::LengthMismatch { length: self.length });
        }
        let mut ech = self.echelon();
        for &row in &other.basis {
            ech.insert(row);
        }
        Ok(Self::from_echelon(self.length, ech))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dual(&self) -> Self {
        let pivots: Vec<usize> = self.basis.iter().map(|r| r.trailing_zeros() as usize).collect();
        let mut rows = Vec::new();
        for free in (0..self.length).filter(|c| !pivots.contains(c)) {
            let mut v = 1u64 << free;
            for (row, &p) in self.basis.iter().zip(&pivots) {
                if (row >> free) & 1 == 1 {
                    v |= 1 << p;
                }
            }
            rows.push(v);
        }
        Self::from_generators(self.length, rows).expect("rows fit the length")
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length
            && self
                .basis
                .iter()
                .all(|&a| self.basis.iter().all(|&b| (a & b).count_ones() % 2 == 0))
    }

    /// Appends the overall parity coordinate at index `length`.
    pub fn extend(&self) -> Result<Self> {
        if self.length >= 64 {
            return Err(Error::LengthTooLarge(self.length + 1));
        }
        let rows = self
            .basis
            .iter()
            .map(|&r| r | (((r.count_ones() & 1) as u64) << self.length));
        Self::from_generators(self.length + 1, rows)
    }

    /// Deletes coordinate `pos` from every word.
    pub fn puncture(&self, pos: usize) -> Result<Self> {
        if pos >= self.length {
            return Err(Error::CoordinateOutOfRange {
                pos,
                length: self.length,
            });
        }
        let low = mask(pos);
        let rows = self.basis.iter().map(|&r| (r & low) | ((r >> (pos + 1)) << pos));
        Self::from_generators(self.length - 1, rows)
    }

    /// Calls `f` on all `2^dimension` codewords in Gray-code order, starting at 0.
    pub fn for_each_codeword(&self, cap: usize, mut f: impl FnMut(u64)) -> Result<()> {
        let k = self.dimension();
        if k > cap {
            return Err(Error::DimensionTooLarge { dimension: k, cap });
        }
        let mut w = 0u64;
        f(w);
        for i in 1u64..(1u64 << k) {
            w ^= self.basis[i.trailing_zeros() as usize];
            f(w);
        }
        Ok(())
    }

    pub fn weight_distribution(&self, cap: usize) -> Result<WeightDistribution> {
        let mut counts = vec![0u64; self.length + 1];
        self.for_each_codeword(cap, |w| counts[w.count_ones() as usize] += 1)?;
        Ok(WeightDistribution { counts })
    }

    pub fn min_distance(&self, cap: usize) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(self
            .weight_distribution(cap)?
            .min_distance()
            .expect("nonzero code has a nonzero word"))
    }
}

/// Outcome of the Type II extremality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type2Verdict {
    Extremal {
        length: usize,
        d: usize,
    },
    NotSelfDual,
    /// Some basis row has weight not divisible by 4.
    NotDoublyEven {
        weight: usize,
    },
    NotExtremal {
        d: usize,
        required: usize,
    },
}

impl Type2Verdict {
    pub fn is_extremal(&self) -> bool {
        matches!(self, Self::Extremal { .. })
    }
}

/// Self-dual, all weights divisible by 4, and `d = 4⌊N/24⌋ + 4`.
pub fn is_type2_extremal(code: &LinearCode, cap: usize) -> Result<Type2Verdict> {
    if !code.is_self_dual() {
        return Ok(Type2Verdict::NotSelfDual);
    }
    // self-orthogonal: weights of sums stay divisible by 4 iff the basis rows' do
    if let Some(&row) = code.basis().iter().find(|r| r.count_ones() % 4 != 0) {
        return Ok(Type2Verdict::NotDoublyEven {
            weight: row.count_ones() as usize,
        });
    }
    let length = code.length();
    let required = 4 * (length / 24) + 4;
    let d = code.min_distance(cap)?;
    if d == required {
        Ok(Type2Verdict::Extremal { length, d })
    } else {
        Ok(Type2Verdict::NotExtremal { d, required })
    }
}

/// A length-`n` binary cyclic code given by its defining set `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    n: u32,
    defining_set: Vec<u32>,
    generator: BinaryPolynomial,
}

impl CyclicCode {
    /// `g(x) = ∏ M_{β^i}(x)` over the cosets making up `T`.
    pub fn from_defining_set(ctx: &PrimeContext, defining_set: &[u32]) -> Result<Self> {
        let coset_mask = ctx.cosets().coset_mask(defining_set)?;
        Ok(Self::from_coset_mask(ctx, coset_mask))
    }

    pub(crate) fn from_coset_mask(ctx: &PrimeContext, coset_mask: u64) -> Self {
        let mut generator = BinaryPolynomial::one();
        for idx in (0..ctx.cosets().len()).filter(|i| (coset_mask >> i) & 1 == 1) {
            generator = &generator * ctx.coset_polynomial(idx);
        }
        Self {
            n: ctx.n(),
            defining_set: ctx.cosets().union_of(coset_mask),
            generator,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn defining_set(&self) -> &[u32] {
        &self.defining_set
    }

    pub fn generator(&self) -> &BinaryPolynomial {
        &self.generator
    }

    /// `h(x) = (x^n - 1)/g(x)`.
    pub fn check_polynomial(&self) -> BinaryPolynomial {
        let (q, r) = BinaryPolynomial::x_pow_minus_one(self.n as usize)
            .div_rem(&self.generator)
            .expect("generator is nonzero");
        debug_assert!(r.is_zero());
        q
    }

    pub fn dimension(&self) -> usize {
        self.n as usize - self.generator.degree() as usize
    }

    /// Whether the polynomial (read mod `x^n - 1`) lies in the code.
    pub fn contains_polynomial(&self, c: &BinaryPolynomial) -> bool {
        let reduced = c
            .rem(&BinaryPolynomial::x_pow_minus_one(self.n as usize))
            .expect("nonzero modulus");
        reduced.rem(&self.generator).expect("nonzero generator").is_zero()
    }

    /// Generator rows `x^i g(x)`, `0 <= i < k`.
    pub fn to_linear_code(&self) -> LinearCode {
        let g = self.generator.to_bits().expect("deg g <= n <= 61");
        let rows = (0..self.dimension()).map(|i| g << i);
        LinearCode::from_generators(self.n as usize, rows).expect("rows fit the length")
    }

    pub fn extend(&self) -> LinearCode {
        self.to_linear_code().extend().expect("n + 1 <= 64")
    }
}

/// The odd-like quadratic-residue codes with defining sets `Q` and `N`.
pub fn qr_codes(ctx: &PrimeContext) -> Result<(CyclicCode, CyclicCode)> {
    if !ctx.split().two_is_residue() {
        return Err(Error::NoQuadraticResidueCode(ctx.n()));
    }
    Ok((
        CyclicCode::from_defining_set(ctx, &ctx.split().residues())?,
        CyclicCode::from_defining_set(ctx, &ctx.split().nonresidues())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_MAX_DIMENSION as CAP;
    use alloc::vec;

    fn p(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps)
    }

    /// Brute-force weight counts from all `2^k` combinations of the rows.
    fn brute_weights(code: &LinearCode) -> Vec<u64> {
        let k = code.dimension();
        let mut counts = vec![0u64; code.length() + 1];
        for sel in 0u64..(1 << k) {
            let w = (0..k)
                .filter(|i| (sel >> i) & 1 == 1)
                .fold(0u64, |acc, i| acc ^ code.basis()[i]);
            counts[w.count_ones() as usize] += 1;
        }
        counts
    }

    #[test]
    fn cyclic_codes_length_seven() {
        let ctx = PrimeContext::new(7).unwrap();
        let c = CyclicCode::from_defining_set(&ctx, &[]).unwrap();
        assert_eq!((c.generator().clone(), c.dimension()), (p(&[0]), 7));
        let c = CyclicCode::from_defining_set(&ctx, &[1, 2, 4]).unwrap();
        assert_eq!((c.generator().clone(), c.dimension()), (p(&[3, 1, 0]), 4));
        let c = CyclicCode::from_defining_set(&ctx, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(c.generator(), &p(&[0, 1, 2, 3, 4, 5, 6]));
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.to_linear_code(), LinearCode::repetition(7));
        let zero = CyclicCode::from_defining_set(&ctx, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(zero.generator(), &BinaryPolynomial::x_pow_minus_one(7));
        assert_eq!(zero.dimension(), 0);
        assert_eq!(
            CyclicCode::from_defining_set(&ctx, &[1, 2]),
            Err(Error::NotCosetUnion { residue: 1, missing: 4 })
        );
    }

    #[test]
    fn dimension_matches_defining_set_size() {
        for n in [3u32, 5, 7, 17, 23, 31] {
            let ctx = PrimeContext::new(n).unwrap();
            for mask in 0..(1u64 << ctx.cosets().len()) {
                let c = CyclicCode::from_coset_mask(&ctx, mask);
                assert_eq!(c.dimension(), n as usize - c.defining_set().len());
                let prod = c.generator() * &c.check_polynomial();
                assert_eq!(prod, BinaryPolynomial::x_pow_minus_one(n as usize));
                let lin = c.to_linear_code();
                assert_eq!(lin.dimension(), c.dimension());
                // closed under cyclic shift
                for &row in lin.basis() {
                    let shifted = ((row << 1) | (row >> (n - 1))) & super::mask(n as usize);
                    assert!(lin.contains(shifted));
                }
            }
        }
    }

    #[test]
    fn qr_code_parameters() {
        let ctx = PrimeContext::new(7).unwrap();
        let (q, nq) = qr_codes(&ctx).unwrap();
        assert_eq!(q.generator(), &p(&[3, 1, 0]));
        assert_eq!(nq.generator(), &p(&[3, 2, 0]));
        assert_eq!((q.dimension(), nq.dimension()), (4, 4));
        let ext = q.extend();
        let wd = ext.weight_distribution(CAP).unwrap();
        assert_eq!(wd.counts().to_vec(), brute_weights(&ext));
        assert_eq!(wd.counts(), &[1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert_eq!(ext.min_distance(CAP).unwrap(), 4);
        assert_eq!(ext.dual(), ext);

        let ctx = PrimeContext::new(17).unwrap();
        let (q, nq) = qr_codes(&ctx).unwrap();
        assert_eq!((q.dimension(), nq.dimension()), (9, 9));

        let ctx = PrimeContext::new(5).unwrap();
        assert_eq!(qr_codes(&ctx), Err(Error::NoQuadraticResidueCode(5)));
    }

    #[test]
    fn golay_weight_distribution() {
        let ctx = PrimeContext::new(23).unwrap();
        let ext = qr_codes(&ctx).unwrap().0.extend();
        let wd = ext.weight_distribution(CAP).unwrap();
        assert_eq!(wd.counts().to_vec(), brute_weights(&ext));
        assert_eq!(wd.count(8), 759);
        assert_eq!(wd.count(12), 2576);
        assert_eq!(ext.min_distance(CAP).unwrap(), 8);
        assert_eq!(
            is_type2_extremal(&ext, CAP).unwrap(),
            Type2Verdict::Extremal { length: 24, d: 8 }
        );
    }

    #[test]
    fn trivial_codes() {
        let rep = LinearCode::repetition(8);
        assert_eq!(
            rep.weight_distribution(CAP).unwrap().counts(),
            &[1, 0, 0, 0, 0, 0, 0, 0, 1]
        );
        assert_eq!(rep.min_distance(CAP).unwrap(), 8);
        assert_eq!(LinearCode::zero(8).dual(), LinearCode::full(8));
        assert_eq!(rep.dual(), LinearCode::even_weight(8));
        assert_eq!(LinearCode::repetition(7).extend().unwrap(), LinearCode::repetition(8));
        assert_eq!(LinearCode::full(7).extend().unwrap(), LinearCode::even_weight(8));
        assert_eq!(LinearCode::zero(8).min_distance(CAP), Err(Error::ZeroCode));
        assert_eq!(
            is_type2_extremal(&LinearCode::even_weight(8), CAP).unwrap(),
            Type2Verdict::NotSelfDual
        );
        let ext7 = qr_codes(&PrimeContext::new(7).unwrap()).unwrap().0.extend();
        assert!(is_type2_extremal(&ext7, CAP).unwrap().is_extremal());
    }

    #[test]
    fn puncture_cases() {
        assert_eq!(
            LinearCode::repetition(8).puncture(0).unwrap(),
            LinearCode::repetition(7)
        );
        assert_eq!(LinearCode::zero(8).puncture(3).unwrap(), LinearCode::zero(7));
        assert_eq!(
            LinearCode::zero(8).puncture(8),
            Err(Error::CoordinateOutOfRange { pos: 8, length: 8 })
        );
        for n in [7u32, 17, 23] {
            let ctx = PrimeContext::new(n).unwrap();
            for mask in 0..(1u64 << ctx.cosets().len()) {
                let c = CyclicCode::from_coset_mask(&ctx, mask);
                let ext = c.extend();
                if ext.dimension() > 0 && ext.min_distance(CAP).unwrap() > 1 {
                    assert_eq!(ext.puncture(n as usize).unwrap(), c.to_linear_code());
                }
                // extensions sit inside the even-weight code
                assert!(ext.is_subcode_of(&LinearCode::even_weight(n as usize + 1)));
            }
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let big = LinearCode::full(30);
        assert_eq!(
            big.weight_distribution(CAP),
            Err(Error::DimensionTooLarge {
                dimension: 30,
                cap: CAP
            })
        );
    }

    /// MacWilliams: B_j = 2^-k Σ_i A_i K_j(i) with Krawtchouk K_j(i) = Σ_s (-1)^s C(i,s) C(N-i, j-s).
    fn macwilliams(a: &[u64], k: usize) -> Vec<i128> {
        let len = a.len() - 1;
        let c = |n: usize, r: usize| crate::arith::binomial(n as u64, r as u64) as i128;
        (0..=len)
            .map(|j| {
                let total: i128 = (0..=len)
                    .map(|i| {
                        let kraw: i128 = (0..=j)
                            .map(|s| {
                                let sign = if s % 2 == 0 { 1 } else { -1 };
                                if s > i || j - s > len - i {
                                    0
                                } else {
                                    sign * c(i, s) * c(len - i, j - s)
                                }
                            })
                            .sum();
                        a[i] as i128 * kraw
                    })
                    .sum();
                total >> k
            })
            .collect()
    }

    #[test]
    fn macwilliams_identity_holds_for_cyclic_codes() {
        for n in [7u32, 17, 23] {
            let ctx = PrimeContext::new(n).unwrap();
            for mask in 0..(1u64 << ctx.cosets().len()) {
                let c = CyclicCode::from_coset_mask(&ctx, mask).to_linear_code();
                if c.dimension() > 16 || c.length() - c.dimension() > 16 {
                    continue;
                }
                let a = c.weight_distribution(CAP).unwrap();
                let b = c.dual().weight_distribution(CAP).unwrap();
                let predicted = macwilliams(a.counts(), c.dimension());
                let direct: Vec<i128> = b.counts().iter().map(|&x| x as i128).collect();
                assert_eq!(predicted, direct, "n = {n}, mask = {mask:b}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn code() -> impl Strategy<Value = LinearCode> {
            (1usize..=40).prop_flat_map(|len| {
                proptest::collection::vec(0u64..=mask(len), 0..8)
                    .prop_map(move |rows| LinearCode::from_generators(len, rows).unwrap())
            })
        }

        proptest! {
            #[test]
            fn dual_is_an_involution(c in code()) {
                let d = c.dual();
                prop_assert_eq!(c.dimension() + d.dimension(), c.length());
                prop_assert_eq!(d.dual(), c.clone());
                for &a in c.basis() {
                    for &b in d.basis() {
                        prop_assert_eq!((a & b).count_ones() % 2, 0);
                    }
                }
            }

            #[test]
            fn rref_is_canonical(c in code(), seed in any::<u64>()) {
                // any other generating set of the same span gives the same basis
                let mut rows: Vec<u64> = c.basis().to_vec();
                let k = rows.len();
                for i in 1..k {
                    if (seed >> i) & 1 == 1 { rows[i - 1] ^= rows[i]; }
                }
                rows.reverse();
                prop_assert_eq!(LinearCode::from_generators(c.length(), rows).unwrap(), c);
            }

            #[test]
            fn weight_distribution_sums(c in code()) {
                let wd = c.weight_distribution(CAP).unwrap();
                prop_assert_eq!(wd.total(), 1u64 << c.dimension());
                prop_assert_eq!(wd.count(0), 1);
            }
        }
    }
}
