//! Small-integer number theory shared by the cyclotomic machinery and the
//! p-adic checks. Everything here works on machine integers.

use alloc::vec::Vec;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// `Some(p)` when `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Miller-Rabin with the base set that is deterministic on all of `u64`.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut twos = 0;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `l ≡ 1 (mod d)` near 2^62 together with an element of exact
/// multiplicative order `d`, i.e. a root of `Φ_d` in `F_l`.
pub(crate) fn root_of_unity_field(d: u64) -> (u64, u64) {
    let mut t = (1u64 << 62) / d;
    let ell = loop {
        let cand = d * t + 1;
        if is_prime_u64(cand) {
            break cand;
        }
        t += 1;
    };
    let factors = prime_factors(d);
    let mut g = 2u64;
    loop {
        let w = pow_mod(g, (ell - 1) / d, ell);
        if factors.iter().all(|&p| pow_mod(w, d / p, ell) != 1) && (d != 1 || w == 1) {
            return (ell, w);
        }
        g += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        let ps: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        for n in 0..2000 {
            assert_eq!(is_prime(n), is_prime_u64(n), "n = {n}");
        }
    }

    #[test]
    fn mobius_and_totient() {
        assert_eq!(
            (1..=12).map(mobius).collect::<Vec<_>>(),
            [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
        );
        assert_eq!(totient(1), 1);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(36), 12);
        // Sum of totients over divisors is n.
        for n in 1..200 {
            assert_eq!(divisors(n).into_iter().map(totient).sum::<u64>(), n);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(4, 25), Some(19));
        assert_eq!(inverse_mod(3, 8), Some(3));
        assert_eq!(inverse_mod(5, 25), None);
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for d in [1u64, 2, 3, 6, 9, 25, 49, 360, 576] {
            let (ell, w) = root_of_unity_field(d);
            assert_eq!(ell % d, 1 % d);
            assert_eq!(pow_mod(w, d, ell), 1);
            for p in prime_factors(d) {
                assert_ne!(pow_mod(w, d / p, ell), 1);
            }
        }
    }
}
