//! Integer number theory on `u64`: primality, multiplicative orders and
//! factorization of `2^m - 1`.

use alloc::vec::Vec;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiplicative order of `a` modulo `n`. Requires `gcd(a, n) = 1`, `n > 1`.
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut k = 1;
    let mut v = a % n;
    while v != 1 {
        v = mul_mod(v, a, n);
        k += 1;
    }
    k
}

/// Inverse of `a` modulo prime `p`.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut out = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    split(n, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Binomial coefficient, exact in `u128` for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_100() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        let sieve: Vec<u64> = (2..100u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        assert_eq!(primes, sieve);
    }

    #[test]
    fn orders_of_two() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 23), 11);
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(multiplicative_order(2, 61), 60);
    }

    #[test]
    fn factors_of_mersenne_numbers() {
        for m in 2..=60u32 {
            let n = (1u64 << m) - 1;
            let fs = prime_factors(n);
            let mut rest = n;
            for &p in &fs {
                assert!(is_prime(p));
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            assert_eq!(rest, 1, "2^{m}-1 not fully factored: {fs:?}");
        }
        assert_eq!(prime_factors(255), [3, 5, 17]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(24, 3), 2024);
        assert_eq!(binomial(18, 2), 153);
        assert_eq!(binomial(3, 5), 0);
    }
}
