//! `PSL(2, n)` acting on the coordinates `{0, .., n-1, ∞}` of extended codes.
//!
//! The point `∞` is index `n`. A permutation `τ` acts on a word by
//! `τ(w)[p] = w[τ(p)]`. With composition `(σ∘τ)(x) = σ(τ(x))` this gives
//! `apply(σ∘τ, w) = apply(τ, apply(σ, w))`: the action is a right action.
//!
//! Invariance is always tested on the generators `S: y ↦ y + 1` and
//! `T: y ↦ -1/y` only.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{mask, CyclicCode, Echelon, LinearCode};
use crate::cyclotomic::check_odd_prime;
use crate::gf2m::BinaryPolynomial;
use crate::{arith, Error, PrimeContext, Result};

/// Default cap on the exhaustive spinning search.
pub const DEFAULT_MAX_SPIN_N: u32 = 13;
/// Default cap on the number of group elements a closure may produce.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000_000;
/// Default cap on the number of cosets enumerated by classification.
pub const DEFAULT_MAX_COSETS: usize = 20;

/// A permutation of `{0, .., n-1, ∞}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPermutation {
    n: u32,
    map: Vec<u32>,
    inverse: Vec<u32>,
    params: Option<[u32; 4]>,
}

impl ProjPermutation {
    pub fn identity(n: u32) -> Self {
        let map: Vec<u32> = (0..=n).collect();
        Self {
            n,
            inverse: map.clone(),
            map,
            params: Some([1, 0, 0, 1]),
        }
    }

    /// `x ↦ (a x + c)/(b x + d)` with `ad - bc = 1` in `GF(n)`, using
    /// `a/0 = ∞` and `(∞a + c)/(∞b + d) = a/b`.
    pub fn from_params(n: u32, a: u32, b: u32, c: u32, d: u32) -> Result<Self> {
        check_odd_prime(n)?;
        let n64 = n as u64;
        let [a, b, c, d] = [a, b, c, d].map(|v| v as u64 % n64);
        if (a * d + n64 * n64 - b * c) % n64 != 1 {
            return Err(Error::Falsified(alloc::format!(
                "({a},{b},{c},{d}) has determinant != 1 mod {n}"
            )));
        }
        let div = |num: u64, den: u64| -> u32 {
            if den == 0 {
                n
            } else {
                (num * arith::inv_mod_prime(den, n64) % n64) as u32
            }
        };
        let mut map: Vec<u32> = (0..n as u64)
            .map(|x| div((a * x + c) % n64, (b * x + d) % n64))
            .collect();
        map.push(div(a, b));
        let mut p = Self::from_map(n, map)?;
        p.params = Some([a as u32, b as u32, c as u32, d as u32]);
        Ok(p)
    }

    pub fn from_map(n: u32, map: Vec<u32>) -> Result<Self> {
        if map.len() != n as usize + 1 {
            return Err(Error::LengthMismatch { length: n as usize + 1 });
        }
        let mut inverse = vec![u32::MAX; map.len()];
        for (p, &q) in map.iter().enumerate() {
            if q > n || inverse[q as usize] != u32::MAX {
                return Err(Error::Falsified(alloc::format!("map is not a bijection at point {p}")));
            }
            inverse[q as usize] = p as u32;
        }
        Ok(Self {
            n,
            map,
            inverse,
            params: None,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Image of every point, `∞` at index `n`.
    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn params(&self) -> Option<[u32; 4]> {
        self.params
    }

    pub fn image(&self, point: u32) -> u32 {
        self.map[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(p, &q)| p as u32 == q)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let map = other.map.iter().map(|&x| self.map[x as usize]).collect();
        Self::from_map(self.n, map).expect("composition of bijections")
    }

    pub fn inverse(&self) -> Self {
        Self::from_map(self.n, self.inverse.clone()).expect("inverse of a bijection")
    }

    /// `τ(w)[p] = w[τ(p)]` on a word of length `n + 1`.
    pub fn apply(&self, word: u64) -> Result<u64> {
        let length = self.n as usize + 1;
        if word & !mask(length) != 0 {
            return Err(Error::LengthMismatch { length });
        }
        Ok(self.permute(word))
    }

    pub(crate) fn permute(&self, mut word: u64) -> u64 {
        let mut out = 0u64;
        while word != 0 {
            let q = word.trailing_zeros();
            out |= 1 << self.inverse[q as usize];
            word &= word - 1;
        }
        out
    }
}

/// `S: y ↦ y + 1` and `T: y ↦ -1/y`.
pub fn generators(n: u32) -> Result<(ProjPermutation, ProjPermutation)> {
    Ok((
        ProjPermutation::from_params(n, 1, 0, 1, 1)?,
        ProjPermutation::from_params(n, 0, 1, n - 1, 0)?,
    ))
}

/// All elements generated by `S` and `T`.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    n: u32,
    elements: BTreeSet<Vec<u32>>,
}

impl GroupClosure {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ProjPermutation> + '_ {
        self.elements
            .iter()
            .map(|m| ProjPermutation::from_map(self.n, m.clone()).expect("stored maps are bijections"))
    }

    pub fn contains(&self, p: &ProjPermutation) -> bool {
        self.elements.contains(p.map())
    }
}

/// Breadth-first closure of `{S, T}`, rejected once more than `cap` elements appear.
pub fn group_closure(n: u32, cap: usize) -> Result<GroupClosure> {
    let (s, t) = generators(n)?;
    let mut elements = BTreeSet::new();
    let id = ProjPermutation::identity(n);
    elements.insert(id.map.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for gen in [&s, &t] {
            let h = g.compose(gen);
            if elements.insert(h.map.clone()) {
                if elements.len() > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(GroupClosure { n, elements })
}

/// The generators of `PSL(2, n)` with the operations that only need them.
#[derive(Clone, Debug)]
pub struct Psl2 {
    n: u32,
    s: ProjPermutation,
    t: ProjPermutation,
}

impl Psl2 {
    pub fn new(n: u32) -> Result<Self> {
        let (s, t) = generators(n)?;
        Ok(Self { n, s, t })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> &ProjPermutation {
        &self.s
    }

    pub fn t(&self) -> &ProjPermutation {
        &self.t
    }

    fn check_length(&self, code: &LinearCode) -> Result<()> {
        if code.length() != self.n as usize + 1 {
            return Err(Error::LengthMismatch {
                length: self.n as usize + 1,
            });
        }
        Ok(())
    }

    /// Whether `S` and `T` map every basis vector back into the code.
    pub fn is_invariant(&self, code: &LinearCode) -> Result<bool> {
        self.check_length(code)?;
        Ok(code
            .basis()
            .iter()
            .all(|&b| code.contains(self.s.permute(b)) && code.contains(self.t.permute(b))))
    }

    /// Smallest invariant subspace containing `seed`.
    pub fn spin(&self, seed: u64) -> Result<LinearCode> {
        let length = self.n as usize + 1;
        if seed & !mask(length) != 0 {
            return Err(Error::LengthMismatch { length });
        }
        let mut ech = Echelon::new();
        let mut stack = vec![seed];
        while let Some(v) = stack.pop() {
            if ech.insert(v) {
                stack.push(self.s.permute(v));
                stack.push(self.t.permute(v));
            }
        }
        Ok(LinearCode::from_echelon(length, ech))
    }

    /// Every invariant subspace of `GF(2)^(n+1)`: spin all `2^(n+1)` vectors,
    /// then close under sums. Sorted by dimension, then basis.
    pub fn invariant_subspaces(&self, max_n: u32) -> Result<Vec<LinearCode>> {
        if self.n > max_n || self.n > 31 {
            return Err(Error::SpinTooLarge {
                n: self.n,
                max: max_n.min(31),
            });
        }
        let seeds = 1u64 << (self.n + 1);
        let mut found = self.spin_all(seeds);
        let mut lattice: Vec<LinearCode> = found.iter().cloned().collect();
        let mut frontier = 0;
        // pairwise sums until no new subspace appears
        while frontier < lattice.len() {
            let end = lattice.len();
            for i in frontier..end {
                for j in 0..end {
                    let s = lattice[i].sum(&lattice[j])?;
                    if found.insert(s.clone()) {
                        lattice.push(s);
                    }
                }
            }
            frontier = end;
        }
        let mut out: Vec<LinearCode> = found.into_iter().collect();
        out.sort_by(|a, b| (a.dimension(), a.basis()).cmp(&(b.dimension(), b.basis())));
        Ok(out)
    }

    #[cfg(not(feature = "parallel"))]
    fn spin_all(&self, seeds: u64) -> BTreeSet<LinearCode> {
        (0..seeds).map(|seed| self.spin(seed).expect("seed fits")).collect()
    }

    #[cfg(feature = "parallel")]
    fn spin_all(&self, seeds: u64) -> BTreeSet<LinearCode> {
        use rayon::prelude::*;
        (0..seeds)
            .into_par_iter()
            .fold(BTreeSet::new, |mut set, seed| {
                set.insert(self.spin(seed).expect("seed fits"));
                set
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    }
}

/// Names for the defining sets that can give invariant extended codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeLabel {
    /// `T = Z_n`: the zero code.
    Zero,
    /// `T = Z_n \ {0}`: extends to `{0, 1...1}`.
    Repetition,
    /// `T = ∅`: extends to the even-weight code.
    EvenWeightExt,
    QrQ,
    QrN,
    Other,
}

impl CodeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Zero => "ZERO",
            Self::Repetition => "REPETITION",
            Self::EvenWeightExt => "EVEN_WEIGHT_EXT",
            Self::QrQ => "QR_Q",
            Self::QrN => "QR_N",
            Self::Other => "OTHER",
        }
    }

    pub fn of(ctx: &PrimeContext, defining_set: &[u32]) -> Self {
        let n = ctx.n();
        if defining_set.len() == n as usize {
            Self::Zero
        } else if defining_set.len() == n as usize - 1 && !defining_set.contains(&0) {
            Self::Repetition
        } else if defining_set.is_empty() {
            Self::EvenWeightExt
        } else if defining_set == ctx.split().residues().as_slice() {
            Self::QrQ
        } else if defining_set == ctx.split().nonresidues().as_slice() {
            Self::QrN
        } else {
            Self::Other
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub defining_set: Vec<u32>,
    /// Dimension of the extended code.
    pub dimension: usize,
    pub invariant: bool,
    pub label: CodeLabel,
}

/// Tests every union of cyclotomic cosets as a defining set, in increasing
/// coset-bitmask order.
pub fn classify_extended_cyclic(ctx: &PrimeContext, max_cosets: usize) -> Result<Vec<Classification>> {
    let count = ctx.cosets().len();
    if count > max_cosets {
        return Err(Error::TooManyCosets { count, cap: max_cosets });
    }
    let group = Psl2::new(ctx.n())?;
    (0..1u64 << count)
        .map(|coset_mask| {
            let code = CyclicCode::from_coset_mask(ctx, coset_mask);
            let ext = code.extend();
            Ok(Classification {
                label: CodeLabel::of(ctx, code.defining_set()),
                invariant: group.is_invariant(&ext)?,
                dimension: ext.dimension(),
                defining_set: code.defining_set().to_vec(),
            })
        })
        .collect()
}

/// Defining sets whose extended codes are invariant: `∅`, `Z_n \ {0}`, `Z_n`,
/// plus `Q` and `N` when `n ≡ ±1 (mod 8)`. Sorted.
pub fn expected_invariant_defining_sets(ctx: &PrimeContext) -> Vec<Vec<u32>> {
    let n = ctx.n();
    let mut out = vec![Vec::new(), (1..n).collect(), (0..n).collect()];
    if ctx.split().two_is_residue() {
        out.push(ctx.split().residues());
        out.push(ctx.split().nonresidues());
    }
    out.sort();
    out
}

/// If `code` (length `n + 1`) is the extension of a cyclic code, returns that
/// code's defining set.
pub fn extended_cyclic_defining_set(ctx: &PrimeContext, code: &LinearCode) -> Result<Option<Vec<u32>>> {
    let n = ctx.n() as usize;
    if code.length() != n + 1 {
        return Err(Error::LengthMismatch { length: n + 1 });
    }
    let punctured = code.puncture(n)?;
    let shift = |w: u64| ((w << 1) | (w >> (n - 1))) & mask(n);
    if !punctured.basis().iter().all(|&b| punctured.contains(shift(b))) {
        return Ok(None);
    }
    let modulus = BinaryPolynomial::x_pow_minus_one(n);
    let generator = punctured
        .basis()
        .iter()
        .fold(modulus, |g, &row| g.gcd(&BinaryPolynomial::from_bits(row)));
    let field = ctx.field();
    let defining_set: Vec<u32> = (0..n as u32)
        .filter(|&j| generator.eval(field, field.beta_pow(j as i64)).is_zero())
        .collect();
    let cyclic = CyclicCode::from_defining_set(ctx, &defining_set)?;
    Ok((cyclic.extend() == *code).then_some(defining_set))
}
