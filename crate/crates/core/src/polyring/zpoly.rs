//! Integer polynomials specialised for products of binomials `1 ± q^e`.
//!
//! Every denominator that occurs in the q-sums is a product of such binomials,
//! and every cyclotomic polynomial is a signed product of binomial powers
//! (`Φ_d = ∏_{e|d} (1 - q^e)^{μ(d/e)}` for `d > 1`). Multiplying or exactly
//! dividing by a binomial is a single linear pass over the coefficients, so
//! the hot paths never run a dense multiplication or a polynomial gcd.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{Poly, Rational};
use crate::numtheory::{divisors, mobius, root_of_unity_field};

/// Dense polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn constant(v: BigInt) -> Self {
        Self::from_coeffs(vec![v])
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = ZPoly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Zero::is_zero) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Multiplicity of `q` as a factor. Zero for the zero polynomial.
    pub fn q_order(&self) -> usize {
        self.c.iter().take_while(|v| v.is_zero()).count()
    }

    /// `self *= q^k`.
    pub fn shift_up(&mut self, k: usize) {
        if k == 0 || self.is_zero() {
            return;
        }
        self.c.splice(0..0, core::iter::repeat_with(BigInt::zero).take(k));
    }

    /// `self /= q^k`; the caller guarantees `k <= q_order()`.
    pub fn shift_down(&mut self, k: usize) {
        debug_assert!(self.is_zero() || k <= self.q_order());
        let k = k.min(self.c.len());
        self.c.drain(0..k);
    }

    pub fn negate(&mut self) {
        for v in &mut self.c {
            *v = -core::mem::take(v);
        }
    }

    pub fn scale(&mut self, k: &BigInt) {
        if k.is_zero() {
            self.c.clear();
        } else if !k.is_one() {
            for v in &mut self.c {
                *v *= k;
            }
        }
    }

    pub fn add_assign(&mut self, other: &ZPoly) {
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), BigInt::zero());
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
        self.trim();
    }

    pub fn sub_assign(&mut self, other: &ZPoly) {
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), BigInt::zero());
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a -= b;
        }
        self.trim();
    }

    /// `self *= 1 - q^e` (`plus = false`) or `self *= 1 + q^e` (`plus = true`), `e >= 1`.
    pub fn mul_binomial(&mut self, e: usize, plus: bool) {
        assert!(e >= 1, "binomial exponent must be positive");
        if self.is_zero() {
            return;
        }
        let n = self.c.len();
        self.c.resize(n + e, BigInt::zero());
        for i in (e..n + e).rev() {
            let (lo, hi) = self.c.split_at_mut(i);
            if plus {
                hi[0] += &lo[i - e];
            } else {
                hi[0] -= &lo[i - e];
            }
        }
        self.trim();
    }

    /// Exact division by `1 ∓ q^e`. Returns `false` and leaves `self`
    /// untouched when the binomial does not divide.
    pub fn div_binomial(&mut self, e: usize, plus: bool) -> bool {
        assert!(e >= 1, "binomial exponent must be positive");
        let n = self.c.len();
        if n == 0 {
            return true;
        }
        if n <= e {
            return false;
        }
        // Quotient recurrence c_i = p_i ± c_{i-e}; the top e slots must cancel.
        for i in e..n {
            let (lo, hi) = self.c.split_at_mut(i);
            if plus {
                hi[0] -= &lo[i - e];
            } else {
                hi[0] += &lo[i - e];
            }
        }
        if self.c[n - e..].iter().all(Zero::is_zero) {
            self.c.truncate(n - e);
            self.trim();
            return true;
        }
        // Undo: multiplying the partial quotient back restores the input.
        for i in (e..n).rev() {
            let (lo, hi) = self.c.split_at_mut(i);
            if plus {
                hi[0] += &lo[i - e];
            } else {
                hi[0] -= &lo[i - e];
            }
        }
        false
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_bigints(self.c.clone())
    }

    /// Divides every coefficient by `den` and returns the rational polynomial.
    pub fn to_poly_over(&self, den: &BigInt) -> Poly {
        if den.is_one() {
            return self.to_poly();
        }
        Poly::from_coeffs(self.c.iter().map(|v| Rational::new(v.clone(), den.clone())).collect())
    }

    /// Content (gcd of coefficients), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    fn residues(&self, ell: u64) -> Vec<u64> {
        let m = BigInt::from(ell);
        self.c
            .iter()
            .map(|v| v.mod_floor(&m).to_u64().expect("residue fits in u64"))
            .collect()
    }

    /// Upper bound for the multiplicity of `Φ_d` in `self`, capped at `cap`:
    /// the multiplicity of a root of `Φ_d` in the reduction modulo a large
    /// prime `l ≡ 1 (mod d)`.
    pub fn cyclotomic_order_bound(&self, d: u64, cap: u32) -> u32 {
        if self.is_zero() {
            return cap;
        }
        let (ell, w) = root_of_unity_field(d);
        let mut r = self.residues(ell);
        let mut order = 0;
        while order < cap && r.len() > 1 {
            // Synthetic division by (q - w); r becomes the quotient.
            let mut carry = 0u64;
            for v in r.iter_mut().rev() {
                let next = (*v as u128 + carry as u128 * w as u128) % ell as u128;
                *v = carry;
                carry = next as u64;
            }
            if carry != 0 {
                break;
            }
            r.pop();
            order += 1;
        }
        order
    }
}

/// `Φ_d` as binomial exponents: `Φ_d = sign * ∏ (1 - q^e)^{k_e}`.
pub fn cyclotomic_as_binomials(d: u64) -> (bool, Vec<(u64, i32)>) {
    assert!(d >= 1);
    if d == 1 {
        return (true, vec![(1, 1)]);
    }
    let terms = divisors(d)
        .into_iter()
        .filter_map(|e| {
            let mu = mobius(d / e);
            (mu != 0).then_some((e, mu))
        })
        .collect();
    (false, terms)
}

/// Cyclotomic factors `∏ Φ_d^{k_d}` of a binomial product, as a multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicProduct {
    pub factors: BTreeMap<u64, u32>,
}

impl CyclotomicProduct {
    pub fn add(&mut self, d: u64, k: u32) {
        if k > 0 {
            *self.factors.entry(d).or_insert(0) += k;
        }
    }

    /// Adds the factors of `(1 - q^e)^k`, returning the number of sign flips
    /// (`1 - q^e = -(q^e - 1)`).
    pub fn add_one_minus(&mut self, e: u64, k: u32) -> u32 {
        for d in divisors(e) {
            self.add(d, k);
        }
        k
    }

    /// Adds the factors of `(1 + q^e)^k = ∏_{d | 2e, d ∤ e} Φ_d^k`.
    pub fn add_one_plus(&mut self, e: u64, k: u32) {
        for d in divisors(2 * e) {
            if e % d != 0 {
                self.add(d, k);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(&d, &k)| crate::numtheory::totient(d) * k as u64)
            .sum()
    }

    /// Net binomial exponents `a_e` with `∏ Φ_d^{k_d} = (-1)^{k_1} ∏ (1 - q^e)^{a_e}`.
    fn net_binomials(&self) -> (bool, BTreeMap<u64, i64>) {
        let mut net: BTreeMap<u64, i64> = BTreeMap::new();
        let mut negate = false;
        for (&d, &k) in &self.factors {
            let (flip, terms) = cyclotomic_as_binomials(d);
            if flip && k % 2 == 1 {
                negate = !negate;
            }
            for (e, mu) in terms {
                *net.entry(e).or_insert(0) += mu as i64 * k as i64;
            }
        }
        net.retain(|_, a| *a != 0);
        (negate, net)
    }

    /// Multiplies the factors out into a monic integer polynomial.
    pub fn expand(&self) -> ZPoly {
        let (negate, net) = self.net_binomials();
        let mut p = ZPoly::one();
        for (&e, &a) in net.iter().filter(|(_, a)| **a > 0) {
            for _ in 0..a {
                p.mul_binomial(e as usize, false);
            }
        }
        for (&e, &a) in net.iter().filter(|(_, a)| **a < 0) {
            for _ in 0..-a {
                let ok = p.div_binomial(e as usize, false);
                assert!(ok, "cyclotomic product expansion is exact");
            }
        }
        if negate {
            p.negate();
        }
        p
    }

    /// Divides `p` by the product, returning `false` (and leaving `p`
    /// unchanged) when it does not divide.
    pub fn divide(&self, p: &mut ZPoly) -> bool {
        if self.is_empty() || p.is_zero() {
            return true;
        }
        let (negate, net) = self.net_binomials();
        let mut work = p.clone();
        for (&e, &a) in net.iter().filter(|(_, a)| **a < 0) {
            for _ in 0..-a {
                work.mul_binomial(e as usize, false);
            }
        }
        for (&e, &a) in net.iter().filter(|(_, a)| **a > 0) {
            for _ in 0..a {
                if !work.div_binomial(e as usize, false) {
                    return false;
                }
            }
        }
        if negate {
            work.negate();
        }
        *p = work;
        true
    }
}

/// Cancels the largest divisor of `num` within `den`, in place.
///
/// On return `num` and `den` are coprime. A prime-field precheck bounds each
/// multiplicity; the combined exact division confirms it, and on a (never
/// observed) false positive the factors are retried one at a time.
pub fn cancel_common_cyclotomics(num: &mut ZPoly, den: &mut CyclotomicProduct) {
    if num.is_zero() {
        den.factors.clear();
        return;
    }
    let mut common = CyclotomicProduct::default();
    for (&d, &k) in &den.factors {
        common.add(d, num.cyclotomic_order_bound(d, k));
    }
    if !common.divide(num) {
        common = CyclotomicProduct::default();
        for (&d, &k) in &den.factors {
            let single = CyclotomicProduct { factors: BTreeMap::from([(d, 1)]) };
            let mut taken = 0;
            while taken < k && single.divide(num) {
                taken += 1;
            }
            common.add(d, taken);
        }
    }
    for (d, k) in common.factors {
        let slot = den.factors.get_mut(&d).expect("common factor comes from den");
        *slot -= k;
        if *slot == 0 {
            den.factors.remove(&d);
        }
    }
}
