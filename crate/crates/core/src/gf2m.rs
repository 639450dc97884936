//! Arithmetic over `GF(2)[x]` and `GF(2^m)`.
//!
//! [`FieldContext::new`] builds `GF(2^m)` for `m = ord_n(2)` so that it holds
//! a primitive `n`-th root of unity `β = α^((2^m - 1)/n)`. The modulus is the
//! smallest (as an integer, bit `i` = coefficient of `x^i`) irreducible
//! polynomial of degree `m` whose root `x` generates the multiplicative group,
//! so `α` is always the class of `x`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use crate::arith;
use crate::{Error, Result, MAX_PRIME};

/// Log/antilog tables are built only up to this field size.
const TABLE_LIMIT_BITS: u32 = 24;

/// A polynomial over `GF(2)`, bit `i` of the packed words = coefficient of `x^i`.
///
/// Always normalized: no trailing zero words, so the zero polynomial has no
/// words at all.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_bits(1)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut words = vec![0u64; degree / 64 + 1];
        words[degree / 64] = 1 << (degree % 64);
        Self { words }
    }

    pub fn from_bits(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.normalize();
        p
    }

    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.flip(e);
        }
        p
    }

    /// `x^n - 1` (which is `x^n + 1` over `GF(2)`).
    pub fn x_pow_minus_one(n: usize) -> Self {
        Self::from_exponents(&[0, n])
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        match self.words.last() {
            None => -1,
            Some(&top) => ((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize) as isize,
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed coefficients when the degree is below 64.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| wi * 64 + b))
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    /// Quotient and remainder, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while rem.degree() >= dd {
            let shift = (rem.degree() - dd) as usize;
            rem.xor_shifted(divisor, shift);
            quot.flip(shift);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, field: &FieldContext, at: FieldElement) -> FieldElement {
        let deg = self.degree();
        if deg < 0 {
            return FieldElement::ZERO;
        }
        let mut acc = FieldElement::ZERO;
        for i in (0..=deg as usize).rev() {
            acc = field.mul(acc, at);
            if self.coeff(i) {
                acc = field.add(acc, FieldElement::ONE);
            }
        }
        acc
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        let mut out = BinaryPolynomial::zero();
        for e in self.exponents() {
            out.xor_shifted(rhs, e);
        }
        out
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (k, &e) in exps.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// An element of `GF(2^m)` in polynomial-basis coordinates.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    log: Vec<u32>,
    // doubled so that exp[log a + log b] needs no reduction
    exp: Vec<u64>,
}

/// `GF(2^m)` together with the `n`-th root of unity it was built for.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldContext {
    n: u32,
    m: u32,
    modulus: u64,
    alpha: FieldElement,
    beta: FieldElement,
    beta_powers: Vec<FieldElement>,
    tables: Option<LogTables>,
}

impl FieldContext {
    pub fn new(n: u32) -> Result<Self> {
        if n == 2 || !arith::is_prime(n as u64) {
            return Err(Error::NotOddPrime(n));
        }
        if n > MAX_PRIME {
            return Err(Error::PrimeTooLarge { n, max: MAX_PRIME });
        }
        let m = arith::multiplicative_order(2, n as u64) as u32;
        let modulus = find_primitive_modulus(m);
        let mut ctx = Self {
            n,
            m,
            modulus,
            alpha: FieldElement(2),
            beta: FieldElement::ONE,
            beta_powers: Vec::new(),
            tables: None,
        };
        if m <= TABLE_LIMIT_BITS {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.beta = ctx.pow(ctx.alpha, ctx.group_order() / n as u64);
        let mut acc = FieldElement::ONE;
        for _ in 0..n {
            ctx.beta_powers.push(acc);
            acc = ctx.mul(acc, ctx.beta);
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let q1 = self.group_order() as usize;
        let mut log = vec![0u32; q1 + 1];
        let mut exp = vec![0u64; 2 * q1];
        let mut acc = 1u64;
        for i in 0..q1 {
            exp[i] = acc;
            exp[i + q1] = acc;
            log[acc as usize] = i as u32;
            acc = clmul_reduce(acc, 2, self.modulus, self.m);
        }
        LogTables { log, exp }
    }

    /// The prime `n` the context was built for.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Extension degree `m = ord_n(2)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `2^m - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    pub fn modulus(&self) -> BinaryPolynomial {
        BinaryPolynomial::from_bits(self.modulus)
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// `β^e` for any integer exponent (reduced mod `n`).
    pub fn beta_pow(&self, e: i64) -> FieldElement {
        self.beta_powers[e.rem_euclid(self.n as i64) as usize]
    }

    /// Checks that `bits` is a valid element of this field.
    pub fn element(&self, bits: u64) -> Option<FieldElement> {
        (bits >> self.m == 0).then_some(FieldElement(bits))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(clmul_reduce(a.0, b.0, self.modulus, self.m)),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e`; the exponent is reduced modulo `2^m - 1` for nonzero `a`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let q1 = self.group_order();
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128 * (e % q1) as u128 % q1 as u128;
            return FieldElement(t.exp[l as usize]);
        }
        let mut e = e % q1;
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^k)`, the `k`-fold Frobenius image.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut a = a;
        for _ in 0..(k % self.m) {
            a = self.square(a);
        }
        a
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }
}

/// Carry-less product of two elements reduced by a degree-`m` modulus.
fn clmul_reduce(a: u64, b: u64, modulus: u64, m: u32) -> u64 {
    let mut prod = 0u128;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            prod ^= (a as u128) << i;
        }
        b >>= 1;
        i += 1;
    }
    for bit in (m..128 - prod.leading_zeros()).rev() {
        if (prod >> bit) & 1 == 1 {
            prod ^= (modulus as u128) << (bit - m);
        }
    }
    prod as u64
}

// x^(2^k) mod f, for m >= 2
fn polymod_pow_x(exp_of_two: u32, modulus: u64, m: u32) -> u64 {
    let mut v = 2u64;
    for _ in 0..exp_of_two {
        v = clmul_reduce(v, v, modulus, m);
    }
    v
}

fn is_irreducible(modulus: u64, m: u32) -> bool {
    let f = BinaryPolynomial::from_bits(modulus);
    // Rabin: x^(2^m) = x mod f and gcd(x^(2^(m/p)) - x, f) = 1 for primes p | m
    if polymod_pow_x(m, modulus, m) != polymod_pow_x(0, modulus, m) {
        return false;
    }
    arith::prime_factors(m as u64).into_iter().all(|p| {
        let h = polymod_pow_x(m / p as u32, modulus, m) ^ 2;
        BinaryPolynomial::from_bits(h).gcd(&f).degree() == 0
    })
}

fn is_primitive(modulus: u64, m: u32, order_factors: &[u64]) -> bool {
    let order = (1u64 << m) - 1;
    order_factors.iter().all(|&q| {
        let mut e = order / q;
        let (mut base, mut acc) = (2u64, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = clmul_reduce(acc, base, modulus, m);
            }
            base = clmul_reduce(base, base, modulus, m);
            e >>= 1;
        }
        acc != 1
    })
}

/// Smallest primitive polynomial of degree `m`, as packed bits.
pub fn find_primitive_modulus(m: u32) -> u64 {
    let factors = arith::prime_factors((1u64 << m) - 1);
    (0..1u64 << m)
        .filter(|low| low & 1 == 1)
        .map(|low| (1u64 << m) | low)
        .find(|&f| is_irreducible(f, m) && is_primitive(f, m, &factors))
        .expect("a primitive polynomial exists in every degree")
}
