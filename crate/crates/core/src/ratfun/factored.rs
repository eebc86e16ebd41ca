use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::RatFun;
use crate::polyring::zpoly::cancel_common_cyclotomics;
use crate::polyring::{CyclotomicProduct, ZPoly};

/// `1 - q^exp` (`plus = false`) or `1 + q^exp` (`plus = true`), `exp >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub exp: u64,
    pub plus: bool,
}

/// An unreduced fraction whose denominator is kept factored:
/// `num / (scalar * q^qpow * ∏ binomial^mult)`.
///
/// Sums of q-shifted factorials are built in this form and reduced once by
/// [`BinomialFraction::to_ratfun`], which cancels common cyclotomic factors
/// instead of computing a polynomial gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFraction {
    pub(crate) num: ZPoly,
    pub(crate) den_scalar: BigInt,
    pub(crate) den_qpow: u64,
    pub(crate) den: BTreeMap<Binomial, u32>,
}

impl BinomialFraction {
    pub fn from_zpoly(num: ZPoly) -> Self {
        BinomialFraction { num, den_scalar: BigInt::one(), den_qpow: 0, den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_zpoly(ZPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_zpoly(ZPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator_binomials(&self) -> &BTreeMap<Binomial, u32> {
        &self.den
    }

    /// Multiplies by `q^k` for any integer `k`.
    pub fn mul_qpow(&mut self, k: i64) {
        if k >= 0 {
            self.num.shift_up(k as usize);
        } else {
            self.den_qpow += k.unsigned_abs();
        }
    }

    /// Multiplies by `1 ± q^e` for any integer `e`; negative exponents use
    /// `1 - q^{-t} = -(1 - q^t) / q^t` and `1 + q^{-t} = (1 + q^t) / q^t`.
    pub fn mul_factor(&mut self, e: i64, plus: bool) {
        match e {
            0 if plus => self.num.scale(&BigInt::from(2)),
            0 => self.num = ZPoly::zero(),
            e if e > 0 => self.num.mul_binomial(e as usize, plus),
            e => {
                let t = e.unsigned_abs();
                self.num.mul_binomial(t as usize, plus);
                if !plus {
                    self.num.negate();
                }
                self.den_qpow += t;
            }
        }
    }

    /// Divides by `1 ± q^e`, `e >= 0` (`e = 0` is only allowed with `plus`).
    pub fn div_factor(&mut self, e: u64, plus: bool) {
        if e == 0 {
            assert!(plus, "division by 1 - q^0 = 0");
            self.den_scalar *= 2;
            return;
        }
        *self.den.entry(Binomial { exp: e, plus }).or_insert(0) += 1;
    }

    pub fn scale(&mut self, k: &BigInt) {
        self.num.scale(k);
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.num.negate();
        out
    }

    /// Sum over the least common binomial denominator.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut den = self.den.clone();
        for (b, &k) in &other.den {
            let slot = den.entry(*b).or_insert(0);
            *slot = (*slot).max(k);
        }
        let den_scalar = self.den_scalar.lcm(&other.den_scalar);
        let den_qpow = self.den_qpow.max(other.den_qpow);
        let lift = |f: &Self| {
            let mut n = f.num.clone();
            for (b, &k) in &den {
                for _ in f.den.get(b).copied().unwrap_or(0)..k {
                    n.mul_binomial(b.exp as usize, b.plus);
                }
            }
            n.shift_up((den_qpow - f.den_qpow) as usize);
            n.scale(&(&den_scalar / &f.den_scalar));
            n
        };
        let mut num = lift(self);
        num.add_assign(&lift(other));
        BinomialFraction { num, den_scalar, den_qpow, den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Canonical reduced form.
    pub fn to_ratfun(&self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        let mut cyclo = CyclotomicProduct::default();
        let mut negate = false;
        for (b, &k) in &self.den {
            if b.plus {
                cyclo.add_one_plus(b.exp, k);
            } else if cyclo.add_one_minus(b.exp, k) % 2 == 1 {
                negate = !negate;
            }
        }
        let mut num = self.num.clone();
        let cancel_q = (num.q_order() as u64).min(self.den_qpow);
        num.shift_down(cancel_q as usize);
        cancel_common_cyclotomics(&mut num, &mut cyclo);

        let mut den = cyclo.expand();
        den.shift_up((self.den_qpow - cancel_q) as usize);
        if negate {
            num.negate();
        }
        // Fold the integer scalar into the numerator's content.
        let g = num.content().gcd(&self.den_scalar);
        let scalar = &self.den_scalar / &g;
        if !g.is_one() && !g.is_zero() {
            num = ZPoly::from_coeffs(num.coeffs().iter().map(|v| v / &g).collect());
        }
        RatFun::from_reduced(num.to_poly_over(&scalar), den.to_poly())
    }
}

impl From<ZPoly> for BinomialFraction {
    fn from(p: ZPoly) -> Self {
        Self::from_zpoly(p)
    }
}

impl Default for BinomialFraction {
    fn default() -> Self {
        Self::zero()
    }
}
