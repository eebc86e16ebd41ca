//! p-adic valuations, residues of p-integral rationals, and checkers for the
//! classical (`q = 1`) congruences: the Rodriguez-Villegas/Mortenson sums,
//! Sun's and Liu's truncated binomial sums, and Dwork-type integrality.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::numtheory::{inverse_mod, is_prime};
use crate::polyring::Rational;

/// Residues of both sides of a congruence modulo `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceInstance {
    pub prime: u64,
    pub exponent: u32,
    pub lhs_residue: u64,
    pub rhs_residue: u64,
    pub passed: bool,
}

impl CongruenceInstance {
    fn new(prime: u64, exponent: u32, lhs_residue: u64, rhs_residue: u64) -> Self {
        CongruenceInstance { prime, exponent, lhs_residue, rhs_residue, passed: lhs_residue == rhs_residue }
    }
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return Err(invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

fn valuation_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("{p} is not prime")))
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(x: &Rational, p: u64) -> Result<i64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(valuation_int(x.numer(), p) - valuation_int(x.denom(), p))
}

/// `true` when `x` has no `p` in its denominator (zero included).
pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    x.is_zero() || valuation_int(x.denom(), p) == 0
}

/// The representative in `[0, modulus)` of a rational whose denominator is
/// invertible modulo `modulus`.
pub fn residue_modulo(x: &Rational, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(invalid("modulus must be positive"));
    }
    let m = BigInt::from(modulus);
    let num = x.numer().mod_floor(&m).to_u64().expect("reduced below modulus");
    let den = x.denom().mod_floor(&m).to_u64().expect("reduced below modulus");
    let inv = inverse_mod(den, modulus).ok_or(Error::NotPIntegral)?;
    Ok(((num as u128 * inv as u128) % modulus as u128) as u64)
}

/// `x mod p^e` for p-integral `x`.
pub fn residue_mod(x: &Rational, p: u64, e: u32) -> Result<u64> {
    check_prime(p)?;
    if e == 0 {
        return Err(invalid("exponent must be positive"));
    }
    let modulus = p.checked_pow(e).ok_or_else(|| invalid(format!("{p}^{e} overflows u64")))?;
    if !is_p_integral(x, p) {
        return Err(Error::NotPIntegral);
    }
    residue_modulo(x, modulus)
}

/// `⟨x⟩_p`, the least nonnegative residue of a p-integral `x` modulo `p`.
pub fn least_residue(x: &Rational, p: u64) -> Result<u64> {
    residue_mod(x, p, 1)
}

/// `x (x - 1) ... (x - k + 1) / k!`.
pub fn binom_rational(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        let i = Rational::from_integer(BigInt::from(i));
        acc = acc * (x - &i) / (&i + Rational::one());
    }
    acc
}

fn symbol_residue(symbol: i8, modulus: u64) -> u64 {
    match symbol {
        1 => 1 % modulus,
        -1 => modulus - 1,
        _ => 0,
    }
}

/// One of the four Rodriguez-Villegas sums `Σ_{k<p} c_k / b^k` modulo `p²`.
///
/// | variant | summand | right side |
/// |---|---|---|
/// | 1 | `C(2k,k)^2 / 16^k` | `(-1/p)` |
/// | 2 | `C(3k,k) C(2k,k) / 27^k` | `(p/3)` |
/// | 3 | `C(4k,2k) C(2k,k) / 64^k` | `(-2/p)` |
/// | 4 | `C(6k,3k) C(3k,k) / 432^k` | `(-1/p)` |
pub fn check_mortenson(p: u64, variant: u8) -> Result<CongruenceInstance> {
    if p <= 3 || !is_prime(p) {
        return Err(invalid(format!("need a prime p > 3, got {p}")));
    }
    let rhs_symbol = match variant {
        1 | 4 => jacobi(-1, p)?,
        2 => jacobi(p as i64, 3)?,
        3 => jacobi(-2, p)?,
        _ => return Err(invalid(format!("variant must be 1..=4, got {variant}"))),
    };
    let sum = mortenson_sum(p, variant);
    let modulus = p * p;
    let lhs = residue_mod(&sum, p, 2)?;
    Ok(CongruenceInstance::new(p, 2, lhs, symbol_residue(rhs_symbol, modulus)))
}

/// The exact rational `Σ_{k=0}^{p-1}` of the chosen Mortenson summand.
pub fn mortenson_sum(p: u64, variant: u8) -> Rational {
    // Each summand is binom(-x, k) binom(x - 1, k) = (x)_k (1-x)_k / k!^2 with
    // x = 1/2, 1/3, 1/4, 1/6; the ratio of consecutive terms is
    // (k + x)(k + 1 - x) / (k + 1)^2.
    let x = match variant {
        1 => Rational::new(1.into(), 2.into()),
        2 => Rational::new(1.into(), 3.into()),
        3 => Rational::new(1.into(), 4.into()),
        _ => Rational::new(1.into(), 6.into()),
    };
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for k in 0..p {
        sum += &term;
        let kr = Rational::from_integer(BigInt::from(k));
        let k1 = &kr + Rational::one();
        term = term * (&kr + &x) * (&k1 - &x) / (&k1 * &k1);
    }
    sum
}

/// `Σ_{k=0}^{len-1} binom(-x, k) binom(x-1, k)`.
pub fn sun_sum(x: &Rational, len: u64) -> Rational {
    let neg_x = -x;
    let x_minus_one = x - Rational::one();
    (0..len).fold(Rational::zero(), |acc, k| {
        acc + binom_rational(&neg_x, k) * binom_rational(&x_minus_one, k)
    })
}

const LIU_SET: [(i64, i64); 4] = [(1, 2), (1, 3), (1, 4), (1, 6)];

/// `Σ_{k<pn} binom(-x,k) binom(x-1,k) ≡ (-1)^{⟨-x⟩_p} Σ_{k<n} binom(-x,k) binom(x-1,k) (mod p²)`.
///
/// `n = 1` holds for every p-integral `x`; for `n > 1` only
/// `x ∈ {1/2, 1/3, 1/4, 1/6}` is admitted.
pub fn check_sun_liu(p: u64, n: u64, x: &Rational) -> Result<CongruenceInstance> {
    check_prime(p)?;
    if p == 2 {
        return Err(invalid("p must be an odd prime"));
    }
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if !is_p_integral(x, p) {
        return Err(Error::NotPIntegral);
    }
    if n > 1 && !LIU_SET.iter().any(|&(a, b)| *x == Rational::new(a.into(), b.into())) {
        return Err(Error::HypothesisViolation(format!("x = {x} is outside {{1/2, 1/3, 1/4, 1/6}} for n = {n}")));
    }
    let lhs = sun_sum(x, p * n);
    let mut rhs = sun_sum(x, n);
    if least_residue(&-x, p)? % 2 == 1 {
        rhs = -rhs;
    }
    Ok(CongruenceInstance::new(p, 2, residue_mod(&lhs, p, 2)?, residue_mod(&rhs, p, 2)?))
}

/// Valuations behind the Dwork-type integrality statement at `q = 1`.
///
/// `diff_valuation` is `vp(D)` for
/// `D = Σ_{k<p^r} c_k - (-1)^{⟨-s/m⟩_p} Σ_{k<p^{r-1}} c_k`,
/// `c_k = binom(-s/m, k) binom(-(m-s)/m, k)`; `None` means `D = 0`.
/// `w_valuation` is `vp(D / (p^{2r} c_{p^{r-1}}))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DworkCheck {
    pub diff_valuation: Option<i64>,
    pub w_valuation: Option<i64>,
    /// `vp(1 / c_{p^{r-1}})`, required to be nonnegative.
    pub inverse_binomial_valuation: i64,
    pub passed: bool,
}

pub fn check_dwork_padic(p: u64, r: u32, m: u64, s: u64) -> Result<DworkCheck> {
    check_prime(p)?;
    if r < 2 {
        return Err(invalid(format!("need r >= 2, got {r}")));
    }
    if s == 0 || s >= m {
        return Err(invalid(format!("need 0 < s < m, got s = {s}, m = {m}")));
    }
    if m % p == 0 {
        return Err(invalid(format!("p = {p} divides m = {m}")));
    }
    if p % m != 1 % m {
        return Err(invalid(format!("need p ≡ 1 (mod m), got p = {p}, m = {m}")));
    }
    let len = p.checked_pow(r).ok_or_else(|| invalid("p^r overflows"))?;
    let short = len / p;
    let a = Rational::new(-BigInt::from(s), BigInt::from(m));
    let b = Rational::new(-BigInt::from(m - s), BigInt::from(m));

    let coeffs: Vec<Rational> = {
        let mut out = Vec::with_capacity(len as usize + 1);
        let mut ca = Rational::one();
        let mut cb = Rational::one();
        for k in 0..=len {
            out.push(&ca * &cb);
            let kr = Rational::from_integer(BigInt::from(k));
            let k1 = &kr + Rational::one();
            ca = ca * (&a - &kr) / &k1;
            cb = cb * (&b - &kr) / &k1;
        }
        out
    };
    let long_sum: Rational = coeffs[..len as usize].iter().sum();
    let short_sum: Rational = coeffs[..short as usize].iter().sum();
    let negate = least_residue(&a, p)? % 2 == 1;
    let diff = if negate { long_sum + short_sum } else { long_sum - short_sum };

    let pivot = &coeffs[short as usize];
    let inverse_binomial_valuation = -vp(pivot, p)?;
    let two_r = 2 * r as i64;
    let (diff_valuation, w_valuation) = if diff.is_zero() {
        (None, None)
    } else {
        let v = vp(&diff, p)?;
        (Some(v), Some(v - two_r + inverse_binomial_valuation))
    };
    let passed = inverse_binomial_valuation >= 0
        && diff_valuation.is_none_or(|v| v >= two_r)
        && w_valuation.is_none_or(|v| v >= 0);
    Ok(DworkCheck { diff_valuation, w_valuation, inverse_binomial_valuation, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert_eq!(jacobi(-1, 5).unwrap(), 1);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert_eq!(jacobi(5, 1).unwrap(), 1);
        assert!(jacobi(1, 4).is_err());
        assert!(jacobi(1, 0).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&q(18, 1), 3).unwrap(), 2);
        assert_eq!(vp(&q(1, 4), 2).unwrap(), -2);
        assert_eq!(vp(&q(1225, 16384), 5).unwrap(), 2);
        assert_eq!(vp(&q(0, 1), 5), Err(Error::ZeroValuation));
        assert!(vp(&q(3, 1), 4).is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(residue_mod(&q(1, 4), 5, 2).unwrap(), 19);
        assert_eq!(residue_mod(&q(9, 64), 5, 2).unwrap(), 6);
        assert_eq!(residue_mod(&q(1, 3), 2, 3).unwrap(), 3);
        assert_eq!(residue_mod(&q(-1, 1), 7, 2).unwrap(), 48);
        assert_eq!(residue_mod(&q(1, 5), 5, 2), Err(Error::NotPIntegral));
        assert_eq!(least_residue(&q(-1, 2), 3).unwrap(), 1);
        assert_eq!(least_residue(&q(-1, 3), 7).unwrap(), 2);
        assert_eq!(least_residue(&q(0, 1), 11).unwrap(), 0);
        assert_eq!(least_residue(&q(2, 7), 7), Err(Error::NotPIntegral));
    }

    #[test]
    fn rational_binomials() {
        assert_eq!(binom_rational(&q(-1, 2), 0), q(1, 1));
        assert_eq!(binom_rational(&q(-1, 2), 2), q(3, 8));
        assert_eq!(binom_rational(&q(5, 1), 2), q(10, 1));
        assert_eq!(binom_rational(&q(5, 1), 7), q(0, 1));
    }

    #[test]
    fn mortenson_examples() {
        let c = check_mortenson(5, 1).unwrap();
        assert_eq!((c.lhs_residue, c.rhs_residue, c.passed), (1, 1, true));
        assert_eq!(mortenson_sum(5, 1), q(1, 1) + q(1, 4) + q(9, 64) + q(25, 256) + q(1225, 16384));
        let c = check_mortenson(7, 1).unwrap();
        assert_eq!(c.rhs_residue, 48);
        assert!(c.passed);
        let c = check_mortenson(5, 2).unwrap();
        assert_eq!(c.rhs_residue, 24);
        assert!(c.passed);
        assert!(check_mortenson(3, 1).is_err());
        assert!(check_mortenson(9, 1).is_err());
        assert!(check_mortenson(7, 5).is_err());
    }

    #[test]
    fn sun_liu_examples() {
        let c = check_sun_liu(5, 1, &q(1, 2)).unwrap();
        assert!(c.passed);
        assert_eq!((c.lhs_residue, c.rhs_residue), (1, 1));
        let c = check_sun_liu(7, 1, &q(0, 1)).unwrap();
        assert_eq!((c.lhs_residue, c.rhs_residue, c.passed), (1, 1, true));
        assert!(check_sun_liu(5, 2, &q(1, 3)).unwrap().passed);
        assert_eq!(check_sun_liu(5, 1, &q(1, 5)), Err(Error::NotPIntegral));
        assert!(matches!(check_sun_liu(5, 2, &q(2, 3)), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn dwork_examples() {
        let d = check_dwork_padic(3, 2, 2, 1).unwrap();
        assert!(d.diff_valuation.unwrap() >= 4);
        assert!(d.passed);
        assert!(check_dwork_padic(5, 2, 4, 1).unwrap().passed);
        assert!(check_dwork_padic(3, 2, 2, 2).is_err());
        assert!(check_dwork_padic(7, 2, 4, 1).is_err());
        assert!(check_dwork_padic(3, 1, 2, 1).is_err());
    }
}
