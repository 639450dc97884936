//! 2-cyclotomic cosets modulo a prime `n`, minimal polynomials of powers of
//! `β`, and the quadratic residue split of `GF(n)^*` indexed by a primitive
//! root `π` with `π^h = 2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::gf2m::{BinaryPolynomial, FieldContext, FieldElement};
use crate::{Error, Result, MAX_PRIME};

pub(crate) fn check_odd_prime(n: u32) -> Result<()> {
    if n == 2 || !arith::is_prime(n as u64) {
        return Err(Error::NotOddPrime(n));
    }
    if n > MAX_PRIME {
        return Err(Error::PrimeTooLarge { n, max: MAX_PRIME });
    }
    Ok(())
}

/// Partition of `Z_n` into orbits of multiplication by 2.
///
/// Cosets are listed in increasing leader order; each coset lists its members
/// in generation order `i, 2i, 4i, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n: u32,
    m: u32,
    cosets: Vec<Vec<u32>>,
    coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn new(n: u32) -> Result<Self> {
        check_odd_prime(n)?;
        let m = arith::multiplicative_order(2, n as u64) as u32;
        let mut coset_of = vec![usize::MAX; n as usize];
        let mut cosets = Vec::new();
        for leader in 0..n {
            if coset_of[leader as usize] != usize::MAX {
                continue;
            }
            let mut coset = Vec::new();
            let mut r = leader;
            loop {
                coset_of[r as usize] = cosets.len();
                coset.push(r);
                r = r * 2 % n;
                if r == leader {
                    break;
                }
            }
            cosets.push(coset);
        }
        Ok(Self { n, m, cosets, coset_of })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `ord_n(2)`, the size of every nonzero coset.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    pub fn leaders(&self) -> Vec<u32> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn coset_index(&self, r: u32) -> Result<usize> {
        self.coset_of
            .get(r as usize)
            .copied()
            .ok_or(Error::ResidueOutOfRange(r))
    }

    pub fn coset_containing(&self, r: u32) -> Result<&[u32]> {
        Ok(&self.cosets[self.coset_index(r)?])
    }

    /// Validates that `set` is a union of cosets; returns the bitmask of coset indices.
    pub fn coset_mask(&self, set: &[u32]) -> Result<u64> {
        let mut present = vec![false; self.n as usize];
        for &r in set {
            if r >= self.n {
                return Err(Error::ResidueOutOfRange(r));
            }
            present[r as usize] = true;
        }
        let mut mask = 0u64;
        for &r in set {
            let idx = self.coset_of[r as usize];
            if let Some(&missing) = self.cosets[idx].iter().find(|&&x| !present[x as usize]) {
                return Err(Error::NotCosetUnion { residue: r, missing });
            }
            mask |= 1 << idx;
        }
        Ok(mask)
    }

    /// Sorted union of the cosets selected by `mask`.
    pub fn union_of(&self, mask: u64) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .cosets
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// `M_{β^i}(x) = ∏_{j ∈ C_i} (x - β^j)`, checked to have binary coefficients.
pub fn minimal_polynomial(table: &CosetTable, field: &FieldContext, i: u32) -> Result<BinaryPolynomial> {
    if table.n() != field.n() {
        return Err(Error::ContextMismatch {
            expected: table.n(),
            found: field.n(),
        });
    }
    let coset = table.coset_containing(i)?;
    // coefficients over GF(2^m), lowest first
    let mut coeffs = vec![FieldElement::ONE];
    for &j in coset {
        let root = field.beta_pow(j as i64);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] = field.add(next[k + 1], c);
            next[k] = field.add(next[k], field.mul(c, root));
        }
        coeffs = next;
    }
    let mut exps = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        match c.0 {
            0 => {}
            1 => exps.push(k),
            _ => {
                return Err(Error::Falsified(format!(
                    "minimal polynomial of beta^{i} has coefficient {c} outside GF(2)"
                )))
            }
        }
    }
    Ok(BinaryPolynomial::from_exponents(&exps))
}

/// Quadratic residues and nonresidues of `GF(n)^*` as even and odd powers of
/// a primitive root `π` chosen so that `π^h = 2` with `h = (n - 1)/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSplit {
    n: u32,
    m: u32,
    h: u32,
    pi: u32,
    // powers[k] = π^k mod n for 0 <= k < n-1
    powers: Vec<u32>,
    // log[r] = k with π^k = r, for r in 1..n
    log: Vec<u32>,
}

impl ResidueSplit {
    /// Uses the smallest primitive root `π` with `π^h ≡ 2 (mod n)`.
    pub fn new(n: u32) -> Result<Self> {
        check_odd_prime(n)?;
        let n64 = n as u64;
        let m = arith::multiplicative_order(2, n64) as u32;
        let h = (n - 1) / m;
        let pi = (2..n)
            .find(|&p| {
                arith::multiplicative_order(p as u64, n64) == n64 - 1 && arith::pow_mod(p as u64, h as u64, n64) == 2
            })
            .ok_or_else(|| Error::Falsified(format!("no primitive root pi of GF({n}) with pi^{h} = 2")))?;
        let mut powers = Vec::with_capacity(n as usize - 1);
        let mut log = vec![0u32; n as usize];
        let mut acc = 1u32;
        for k in 0..n - 1 {
            powers.push(acc);
            log[acc as usize] = k;
            acc = acc * pi % n;
        }
        Ok(Self {
            n,
            m,
            h,
            pi,
            powers,
            log,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `h = (n - 1)/m`.
    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn pi(&self) -> u32 {
        self.pi
    }

    /// `π^k mod n` for any integer `k`.
    pub fn pi_pow(&self, k: i64) -> u32 {
        self.powers[k.rem_euclid(self.n as i64 - 1) as usize]
    }

    /// Discrete log base `π` of a nonzero residue.
    pub fn log(&self, r: u32) -> Result<u32> {
        if r == 0 || r >= self.n {
            return Err(Error::ResidueOutOfRange(r));
        }
        Ok(self.log[r as usize])
    }

    pub fn is_residue(&self, r: u32) -> bool {
        r != 0 && r < self.n && self.log[r as usize].is_multiple_of(2)
    }

    pub fn two_is_residue(&self) -> bool {
        self.h.is_multiple_of(2)
    }

    /// `Q`, sorted.
    pub fn residues(&self) -> Vec<u32> {
        (1..self.n).filter(|&r| self.is_residue(r)).collect()
    }

    /// `N`, sorted.
    pub fn nonresidues(&self) -> Vec<u32> {
        (1..self.n).filter(|&r| !self.is_residue(r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cosets_small_primes() {
        let t = CosetTable::new(7).unwrap();
        assert_eq!(t.cosets(), &[vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(t.leaders(), vec![0, 1, 3]);
        let t = CosetTable::new(5).unwrap();
        assert_eq!(t.cosets(), &[vec![0], vec![1, 2, 4, 3]]);
        let t = CosetTable::new(3).unwrap();
        assert_eq!(t.cosets(), &[vec![0], vec![1, 2]]);
        assert_eq!(CosetTable::new(15).unwrap_err(), Error::NotOddPrime(15));
    }

    #[test]
    fn coset_invariants_all_primes() {
        for n in (3..=MAX_PRIME).filter(|&n| arith::is_prime(n as u64)) {
            let t = CosetTable::new(n).unwrap();
            let mut all: Vec<u32> = t.cosets().iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            assert_eq!(t.cosets()[0], vec![0]);
            for c in &t.cosets()[1..] {
                assert_eq!(c.len() as u32, t.m());
                assert!(c.iter().all(|&r| c.contains(&(r * 2 % n))));
                assert_eq!(c[0], *c.iter().min().unwrap());
            }
        }
    }

    #[test]
    fn coset_mask_rejects_partial_cosets() {
        let t = CosetTable::new(7).unwrap();
        assert_eq!(t.coset_mask(&[1, 2, 4]).unwrap(), 0b010);
        assert_eq!(
            t.coset_mask(&[1, 2]),
            Err(Error::NotCosetUnion { residue: 1, missing: 4 })
        );
        assert_eq!(t.coset_mask(&[9]), Err(Error::ResidueOutOfRange(9)));
        assert_eq!(t.union_of(0b101), vec![0, 3, 5, 6]);
    }

    #[test]
    fn minimal_polynomials_seven() {
        let t = CosetTable::new(7).unwrap();
        let f = FieldContext::new(7).unwrap();
        assert_eq!(
            minimal_polynomial(&t, &f, 0).unwrap(),
            BinaryPolynomial::from_exponents(&[1, 0])
        );
        assert_eq!(
            minimal_polynomial(&t, &f, 1).unwrap(),
            BinaryPolynomial::from_exponents(&[3, 1, 0])
        );
        assert_eq!(
            minimal_polynomial(&t, &f, 3).unwrap(),
            BinaryPolynomial::from_exponents(&[3, 2, 0])
        );
        let other = FieldContext::new(5).unwrap();
        assert!(matches!(
            minimal_polynomial(&t, &other, 1),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn minimal_polynomials_factor_x_n_minus_one() {
        for n in (3..=MAX_PRIME).filter(|&n| arith::is_prime(n as u64)) {
            let t = CosetTable::new(n).unwrap();
            let f = FieldContext::new(n).unwrap();
            let mut prod = BinaryPolynomial::one();
            let polys: Vec<_> = (0..n).map(|i| minimal_polynomial(&t, &f, i).unwrap()).collect();
            for leader in t.leaders() {
                let mp = &polys[leader as usize];
                assert_eq!(mp.degree() as usize, t.coset_containing(leader).unwrap().len());
                assert!(mp.eval(&f, f.beta_pow(leader as i64)).is_zero());
                prod = &prod * mp;
            }
            assert_eq!(prod, BinaryPolynomial::x_pow_minus_one(n as usize), "n = {n}");
            for i in 0..n {
                for j in 0..n {
                    let same = t.coset_index(i).unwrap() == t.coset_index(j).unwrap();
                    assert_eq!(polys[i as usize] == polys[j as usize], same);
                }
            }
        }
    }

    #[test]
    fn residue_split_examples() {
        let s = ResidueSplit::new(7).unwrap();
        assert_eq!(s.residues(), vec![1, 2, 4]);
        assert_eq!(s.nonresidues(), vec![3, 5, 6]);
        assert_eq!((s.h(), s.pi()), (2, 3));
        let s = ResidueSplit::new(5).unwrap();
        assert_eq!(s.residues(), vec![1, 4]);
        assert_eq!(s.nonresidues(), vec![2, 3]);
        assert!(!s.two_is_residue());
        assert!(ResidueSplit::new(17).unwrap().is_residue(2));
    }

    #[test]
    fn residue_split_invariants_all_primes() {
        for n in (3..=MAX_PRIME).filter(|&n| arith::is_prime(n as u64)) {
            let s = ResidueSplit::new(n).unwrap();
            let n64 = n as u64;
            assert_eq!(arith::pow_mod(s.pi() as u64, s.h() as u64, n64), 2);
            assert_eq!(arith::multiplicative_order(s.pi() as u64, n64), n64 - 1);
            // Q is exactly the set of squares
            let mut squares: Vec<u32> = (1..n).map(|x| x * x % n).collect();
            squares.sort_unstable();
            squares.dedup();
            assert_eq!(s.residues(), squares);
            assert_eq!(s.nonresidues().len() as u32, (n - 1) / 2);
            let q = s.residues();
            for &a in &q {
                for &b in &q {
                    assert!(s.is_residue(a * b % n));
                }
            }
            assert_eq!(s.two_is_residue(), n % 8 == 1 || n % 8 == 7, "n = {n}");
            assert_eq!(s.is_residue(2), s.two_is_residue());
        }
    }

    #[test]
    fn residues_are_coset_unions_iff_two_is_a_residue() {
        for n in (3..=MAX_PRIME).filter(|&n| arith::is_prime(n as u64)) {
            let s = ResidueSplit::new(n).unwrap();
            let t = CosetTable::new(n).unwrap();
            assert_eq!(t.coset_mask(&s.residues()).is_ok(), s.two_is_residue());
            assert_eq!(t.coset_mask(&s.nonresidues()).is_ok(), s.two_is_residue());
            if !s.two_is_residue() {
                // odd number of nonzero cosets: every coset meets both Q and N
                assert_eq!(((n - 1) / t.m()) % 2, 1);
                for c in &t.cosets()[1..] {
                    assert!(c.iter().any(|&r| s.is_residue(r)));
                    assert!(c.iter().any(|&r| !s.is_residue(r)));
                }
            }
        }
    }
}
