//! Finite-field Fourier transform of binary words of prime length `n`, the
//! spectrum re-indexed by powers of `π`, and the relation between a word's
//! spectrum and that of its image under `T: y ↦ -1/y`.
//!
//! Two index conventions meet here:
//!
//! * [`PermutedSpectrum`] stores `C'_s = C_{π^-s}`. With it the transform reads
//!   `C'(x) = u(x) c'(x) + c_0 Σ x^i  (mod x^(n-1) - 1)`, where
//!   `c'_r = c_{π^r}` and `u(x) = Σ β^(π^-r) x^r` ([`check_forward_identity`]).
//! * The identity `D'(1/x) = u(x)^2 C'(x)  (mod x^(n-1) - 1)` for `d = T(c)`
//!   holds when `C'_t = C_{π^t}` and `D'_s = D_{π^s}` (ascending powers).
//!   [`check_blahut`] converts to that indexing before comparing.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{mask, CyclicCode};
use crate::cyclotomic::ResidueSplit;
use crate::gf2m::{BinaryPolynomial, FieldContext, FieldElement};
use crate::psl2::Psl2;
use crate::{Error, PrimeContext, Result};

/// `C_j = c(β^j)` for `0 <= j < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<FieldElement>,
}

impl Spectrum {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn get(&self, j: usize) -> FieldElement {
        self.values[j]
    }

    /// `C_{2j mod n} = C_j^2` for every `j`, as for any binary word.
    pub fn is_conjugacy_closed(&self, field: &FieldContext) -> bool {
        let n = self.values.len();
        (0..n).all(|j| self.values[2 * j % n] == field.square(self.values[j]))
    }
}

pub fn fourier(field: &FieldContext, word: u64) -> Result<Spectrum> {
    let n = field.n() as usize;
    if word & !mask(n) != 0 {
        return Err(Error::LengthMismatch { length: n });
    }
    let values = (0..n)
        .map(|j| {
            (0..n)
                .filter(|i| (word >> i) & 1 == 1)
                .fold(FieldElement::ZERO, |acc, i| {
                    field.add(acc, field.beta_pow((i * j) as i64))
                })
        })
        .collect();
    Ok(Spectrum { values })
}

/// `c_i = Σ_k β^(-ik) C_k` (`1/n = 1` in characteristic 2 for odd `n`).
pub fn inverse_fourier(field: &FieldContext, spectrum: &Spectrum) -> Result<u64> {
    let n = field.n() as usize;
    if spectrum.values.len() != n {
        return Err(Error::LengthMismatch { length: n });
    }
    let mut word = 0u64;
    for i in 0..n {
        let c = spectrum
            .values
            .iter()
            .enumerate()
            .fold(FieldElement::ZERO, |acc, (k, &ck)| {
                field.add(acc, field.mul(field.beta_pow(-((i * k) as i64)), ck))
            });
        match c.0 {
            0 => {}
            1 => word |= 1 << i,
            _ => return Err(Error::Falsified(format!("inverse transform gave {c} at position {i}"))),
        }
    }
    Ok(word)
}

/// `C'_s = C_{π^-s}` for `0 <= s < n - 1`, with the time-domain `c_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutedSpectrum {
    values: Vec<FieldElement>,
    c0: bool,
}

impl PermutedSpectrum {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn c0(&self) -> bool {
        self.c0
    }

    /// Back to `C_1, .., C_{n-1}`.
    pub fn unpermute(&self, split: &ResidueSplit) -> Vec<FieldElement> {
        let n = split.n();
        let mut out = vec![FieldElement::ZERO; n as usize - 1];
        for (s, &v) in self.values.iter().enumerate() {
            out[split.pi_pow(-(s as i64)) as usize - 1] = v;
        }
        out
    }
}

pub fn permuted_spectrum(spectrum: &Spectrum, split: &ResidueSplit, c0: bool) -> Result<PermutedSpectrum> {
    let n = split.n() as usize;
    if spectrum.values.len() != n {
        return Err(Error::LengthMismatch { length: n });
    }
    let values = (0..n - 1)
        .map(|s| spectrum.values[split.pi_pow(-(s as i64)) as usize])
        .collect();
    Ok(PermutedSpectrum { values, c0 })
}

/// Coefficients of `u(x) = Σ_{r=0}^{n-2} β^(π^-r) x^r`.
pub fn u_polynomial(split: &ResidueSplit, field: &FieldContext) -> Vec<FieldElement> {
    (0..split.n() as i64 - 1)
        .map(|r| field.beta_pow(split.pi_pow(-r) as i64))
        .collect()
}

/// Product of two polynomials over `GF(2^m)` reduced mod `x^len - 1`.
fn cyclic_mul(field: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let len = a.len();
    let mut out = vec![FieldElement::ZERO; len];
    for (i, &ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, &bj) in b.iter().enumerate() {
            let k = (i + j) % len;
            out[k] = field.add(out[k], field.mul(ai, bj));
        }
    }
    out
}

/// `C'(x) = u(x) c'(x) + c_0 Σ x^i (mod x^(n-1) - 1)` for a length-`n` word.
pub fn check_forward_identity(ctx: &PrimeContext, word: u64) -> Result<bool> {
    let (field, split) = (ctx.field(), ctx.split());
    let n = ctx.n() as usize;
    let spec = permuted_spectrum(&fourier(field, word)?, split, word & 1 == 1)?;
    let bit = |i: u32| {
        if (word >> i) & 1 == 1 {
            FieldElement::ONE
        } else {
            FieldElement::ZERO
        }
    };
    let time: Vec<FieldElement> = (0..n as i64 - 1).map(|r| bit(split.pi_pow(r))).collect();
    let mut rhs = cyclic_mul(field, &u_polynomial(split, field), &time);
    if spec.c0() {
        for v in &mut rhs {
            *v = field.add(*v, FieldElement::ONE);
        }
    }
    Ok(rhs == spec.values)
}

/// Indices `s` where the coefficients of `x^s` in `D'(1/x)` and
/// `u(x)^2 C'(x)` differ, for `d = T(word)` and `word = (c_0, .., c_{n-1}, c_∞)`.
pub fn blahut_mismatches(ctx: &PrimeContext, word: u64) -> Result<Vec<usize>> {
    let (field, split) = (ctx.field(), ctx.split());
    let n = ctx.n() as usize;
    let len = n - 1;
    let image = Psl2::new(ctx.n())?.t().apply(word)?;
    let c_perm = permuted_spectrum(&fourier(field, word & mask(n))?, split, word & 1 == 1)?;
    let d_perm = permuted_spectrum(&fourier(field, image & mask(n))?, split, image & 1 == 1)?;
    // ascending-power indexing: X'_t = X_{π^t} = (X_{π^-r} at r = -t)
    let ascending = |p: &PermutedSpectrum, t: usize| p.values[(len - t) % len];
    let c_asc: Vec<FieldElement> = (0..len).map(|t| ascending(&c_perm, t)).collect();
    let d_asc: Vec<FieldElement> = (0..len).map(|t| ascending(&d_perm, t)).collect();
    // D'(1/x): coefficient of x^s is D'_{(n-1-s) mod (n-1)}
    let lhs: Vec<FieldElement> = (0..len).map(|s| d_asc[(len - s) % len]).collect();
    let u = u_polynomial(split, field);
    let rhs = cyclic_mul(field, &cyclic_mul(field, &u, &u), &c_asc);
    Ok((0..len).filter(|&s| lhs[s] != rhs[s]).collect())
}

/// Whether `D'(1/x) = u(x)^2 C'(x) (mod x^(n-1) - 1)` holds for the word.
pub fn check_blahut(ctx: &PrimeContext, word: u64) -> Result<bool> {
    Ok(blahut_mismatches(ctx, word)?.is_empty())
}

/// `f` with `deg f < m` and `f(β^l) = a`, by solving in the basis `{β^(l j)}`.
pub fn basis_representation(field: &FieldContext, a: FieldElement, l: u32) -> Result<BinaryPolynomial> {
    let (n, m) = (field.n(), field.m() as usize);
    if l.is_multiple_of(n) {
        return Err(Error::ResidueOutOfRange(l));
    }
    let columns: Vec<u64> = (0..m).map(|j| field.beta_pow(l as i64 * j as i64).0).collect();
    // row i: bit j = bit i of column j; bit m = bit i of a
    let mut rows: Vec<u64> = (0..m)
        .map(|i| {
            let coeffs = columns
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &c)| acc | (((c >> i) & 1) << j));
            coeffs | (((a.0 >> i) & 1) << m)
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| (rows[r] >> col) & 1 == 1)
            .ok_or_else(|| Error::Falsified(format!("powers of beta^{l} are not a basis over GF(2)")))?;
        rows.swap(col, pivot);
        let prow = rows[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && (*row >> col) & 1 == 1 {
                *row ^= prow;
            }
        }
    }
    let bits = rows
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &r)| acc | (((r >> m) & 1) << j));
    Ok(BinaryPolynomial::from_bits(bits))
}

/// Which of the two cases of the nonvanishing argument applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `2 = π^h` with `h` even: every Frobenius power contributes.
    TwoIsResidue,
    /// `h` odd, `m` even: only even Frobenius powers reach the target parity.
    TwoIsNonresidue,
}

/// `L(x) = Σ_w coefficients[w] x^(2^w)`, a `GF(2)`-linear map of `GF(2^m)`
/// sending `C_l` to `D'_target` for every word supported on the coset of `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedMap {
    pub l: u32,
    pub s: u32,
    /// `2s` for `l ∈ Q`, `2s + 1` for `l ∈ N`.
    pub target: u32,
    pub branch: Branch,
    pub coefficients: Vec<FieldElement>,
}

impl LinearizedMap {
    /// With `l = π^(2u + ε)`, the coefficient of `x^(2^w)` is
    /// `β^(2π^-k) + β^(-2π^-k)` where `k = s - u - h'w` (`h' = h/2`) if `h`
    /// is even, and `k = s - u - h w/2` for even `w` (zero for odd `w`) if `h`
    /// is odd.
    pub fn new(ctx: &PrimeContext, l: u32, s: u32) -> Result<Self> {
        let (field, split) = (ctx.field(), ctx.split());
        let log = split.log(l)? as i64;
        let (u, parity) = (log / 2, (log % 2) as u32);
        let (h, m) = (split.h() as i64, field.m() as i64);
        let branch = if h % 2 == 0 {
            Branch::TwoIsResidue
        } else {
            Branch::TwoIsNonresidue
        };
        let pair = |k: i64| {
            let e = split.pi_pow(-k) as i64;
            field.add(field.beta_pow(2 * e), field.beta_pow(-2 * e))
        };
        let coefficients = (0..m)
            .map(|w| match branch {
                Branch::TwoIsResidue => pair(s as i64 - u - (h / 2) * w),
                Branch::TwoIsNonresidue if w % 2 == 0 => pair(s as i64 - u - h * (w / 2)),
                Branch::TwoIsNonresidue => FieldElement::ZERO,
            })
            .collect();
        Ok(Self {
            l,
            s,
            target: 2 * s + parity,
            branch,
            coefficients,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, field: &FieldContext, x: FieldElement) -> FieldElement {
        let mut frob = x;
        let mut acc = FieldElement::ZERO;
        for &c in &self.coefficients {
            acc = field.add(acc, field.mul(c, frob));
            frob = field.square(frob);
        }
        acc
    }
}

/// A codeword of the cyclic code whose image under `T` has a nonzero
/// permuted spectral value at `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub l: u32,
    pub s: u32,
    pub target: u32,
    pub branch: Branch,
    pub gamma: FieldElement,
    /// `deg a < m`, `a(β^l) = γ / M̄(β^l)`.
    pub a: BinaryPolynomial,
    /// `a(x) M̄_{β^l}(x)` as a length-`n` word.
    pub codeword: u64,
    /// `D'_target`, recomputed from `T(codeword extended)`.
    pub d_prime: FieldElement,
}

/// Permuted spectral value of `T(extend(word))` at `index`, computed from scratch.
pub fn image_spectrum_at(ctx: &PrimeContext, word: u64, index: u32) -> Result<FieldElement> {
    let n = ctx.n() as usize;
    if word & !mask(n) != 0 {
        return Err(Error::LengthMismatch { length: n });
    }
    let extended = word | (((word.count_ones() & 1) as u64) << n);
    let image = Psl2::new(ctx.n())?.t().apply(extended)?;
    let spec = fourier(ctx.field(), image & mask(n))?;
    let perm = permuted_spectrum(&spec, ctx.split(), image & 1 == 1)?;
    Ok(perm.values[index as usize])
}

/// Builds `c(x) = a(x) M̄_{β^l}(x)` in the code with defining set `T` so
/// that `T(c̄)` has `D'_target = L(γ) ≠ 0`.
pub fn spectral_witness(ctx: &PrimeContext, defining_set: &[u32], l: u32, s: u32) -> Result<WitnessReport> {
    let n = ctx.n();
    let field = ctx.field();
    ctx.cosets().coset_mask(defining_set)?;
    if l == 0 || l >= n {
        return Err(Error::InvalidWitness(format!("l = {l} must lie in 1..{n}")));
    }
    if defining_set.contains(&l) {
        return Err(Error::InvalidWitness(format!("l = {l} lies in the defining set")));
    }
    if s > (n - 3) / 2 {
        return Err(Error::InvalidWitness(format!(
            "s = {s} exceeds (n-3)/2 = {}",
            (n - 3) / 2
        )));
    }
    let map = LinearizedMap::new(ctx, l, s)?;
    if map.is_zero() {
        return Err(Error::Falsified(format!("L_{s} vanishes identically for l = {l}")));
    }
    let beta_l = field.beta_pow(l as i64);
    let basis_images = (0..field.m() as u64).map(|j| field.pow(beta_l, j));
    let gamma = basis_images
        .chain((1..=field.group_order()).map(FieldElement))
        .find(|&g| !map.eval(field, g).is_zero())
        .ok_or_else(|| Error::Falsified(format!("L_{s} has no nonzero value for l = {l}")))?;

    let (mbar, rem) = BinaryPolynomial::x_pow_minus_one(n as usize).div_rem(ctx.minimal_polynomial(l)?)?;
    debug_assert!(rem.is_zero());
    let mbar_at = mbar.eval(field, beta_l);
    let a = basis_representation(field, field.mul(gamma, field.inv(mbar_at)?), l)?;
    let c = &a * &mbar;
    let codeword = c
        .to_bits()
        .filter(|_| c.degree() < n as isize)
        .ok_or_else(|| Error::Falsified(format!("deg a(x) M(x) = {} is not below n", c.degree())))?;
    if c.eval(field, beta_l) != gamma {
        return Err(Error::Falsified(format!(
            "C_l of the witness differs from gamma = {gamma}"
        )));
    }
    if !CyclicCode::from_defining_set(ctx, defining_set)?.contains_polynomial(&c) {
        return Err(Error::Falsified("witness is not a codeword".into()));
    }
    let d_prime = image_spectrum_at(ctx, codeword, map.target)?;
    let predicted = map.eval(field, gamma);
    if d_prime != predicted || d_prime.is_zero() {
        return Err(Error::Falsified(format!(
            "D'_{} = {d_prime}, L(gamma) = {predicted}",
            map.target
        )));
    }
    Ok(WitnessReport {
        l,
        s,
        target: map.target,
        branch: map.branch,
        gamma,
        a,
        codeword,
        d_prime,
    })
}
