//! Exact integer helpers shared by the design, catalog and engine modules.
//!
//! Everything here works on [`BigUint`] unless a quantity is provably small
//! (exponents, subset sizes, trial-division primes).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Binomial coefficient `C(n, k)` by the multiplicative running product.
///
/// Each step multiplies by `n - k + i` and divides by `i` after cancelling
/// their common factor against the accumulator, so the division is always
/// exact and intermediates never exceed `C(n, k) * (n - k + i)`.
pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    let k_big = BigUint::from(k);
    if k_big > *n {
        return BigUint::zero();
    }
    // Symmetry only helps when n - k is the smaller side.
    let rest = n - &k_big;
    let k = match rest.to_u64() {
        Some(r) if r < k => r,
        _ => k,
    };
    let base = n - BigUint::from(k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        let i_big = BigUint::from(i);
        let g = acc.gcd(&i_big);
        let factor = &base + &i_big;
        acc = (&acc / &g) * (&factor / (&i_big / &g));
    }
    acc
}

/// Convenience wrapper for small arguments.
pub fn binomial_u64(n: u64, k: u64) -> BigUint {
    binomial(&BigUint::from(n), k)
}

/// Falling factorial `x (x-1) ... (x-len+1)`; zero when `x < len`.
pub fn falling_product(x: &BigUint, len: u64) -> BigUint {
    if *x < BigUint::from(len) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut term = x.clone();
    for _ in 0..len {
        acc *= &term;
        term -= 1u32;
    }
    acc
}

/// `k(k-1)(k-2)(k-3)(k-4)(k-5)`, the right-hand side shared by every
/// orbit equation in the engine.
pub fn six_product(k: &BigUint) -> BigUint {
    falling_product(k, 6)
}

/// `(q-2)(q-3)(q-4)`; zero for `q < 4`.
pub fn shifted_cubic(q: &BigUint) -> BigUint {
    if *q < BigUint::from(4u32) {
        return BigUint::zero();
    }
    falling_product(&(q - 2u32), 3)
}

/// `⌊√n⌋`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// `⌊n^(1/k)⌋`.
pub fn iroot(n: &BigUint, k: u32) -> BigUint {
    n.nth_root(k)
}

/// p-adic valuation; `None` for zero.
pub fn valuation(n: &BigUint, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    if p == 2 {
        return n.trailing_zeros();
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut count = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(count);
        }
        n = quot;
        count += 1;
    }
}

pub fn two_adic_valuation(n: &BigUint) -> Option<u64> {
    valuation(n, 2)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    'witness: for &a in &BASES {
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

/// All primes `<= limit`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Prime factorization of a `u64` by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest `d = l^(v_l(order)+1)` over primes `l` with `v_l(b) > v_l(order)`,
/// preferring primes that do not divide `order` at all.
///
/// Such a `d` divides `b` but not `order`, which certifies `b ∤ order`.
/// Returns `None` when `b | order` or `b` does not fit in 64 bits.
pub fn excess_divisor(b: &BigUint, order: &BigUint) -> Option<BigUint> {
    let small = b.to_u64()?;
    let mut best: Option<(bool, u64, BigUint)> = None;
    for (l, e_b) in factorize(small) {
        let e_g = valuation(order, l).unwrap_or(0);
        if u64::from(e_b) > e_g {
            let coprime = e_g == 0;
            let d = BigUint::from(l).pow((e_g + 1) as u32);
            let key = (coprime, l);
            if best.as_ref().map_or(true, |(c, p, _)| key > (*c, *p)) {
                best = Some((coprime, l, d));
            }
        }
    }
    best.map(|(_, _, d)| d)
}
