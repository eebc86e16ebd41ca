//! q-shifted factorials with monomial arguments and the truncated sums
//!
//! ```text
//!   Σ_{k=0}^{N-1} 2 (a q^{st}; q^{mt})_k (q^{(m-s)t}/a; q^{mt})_k q^{mtk}
//!                 / ((q^{mt}; q^{mt})_k^2 (1 + q^{mtk}))
//! ```
//!
//! with the parameter `a` specialised to a power `q^u` (`u = 0` is `a = 1`).

use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::polyring::ZPoly;
use crate::ratfun::{BinomialFraction, RatFun};

/// Shape of one side of a congruence: `m`, `s`, the scale `t`, the number of
/// summands `N` and the substitution exponent `u` (`a = q^u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SumSpec {
    pub m: u64,
    pub s: u64,
    pub scale: u64,
    pub terms: u64,
    pub subst_exponent: i64,
}

impl SumSpec {
    pub fn new(m: u64, s: u64, scale: u64, terms: u64, subst_exponent: i64) -> Result<Self> {
        if s == 0 || s >= m {
            return Err(invalid(alloc::format!("need 0 < s < m, got s = {s}, m = {m}")));
        }
        if scale == 0 {
            return Err(invalid("scale must be positive"));
        }
        Ok(SumSpec { m, s, scale, terms, subst_exponent })
    }

    /// `a = 1`.
    pub fn plain(m: u64, s: u64, scale: u64, terms: u64) -> Result<Self> {
        Self::new(m, s, scale, terms, 0)
    }

    fn step(&self) -> i64 {
        (self.m * self.scale) as i64
    }

    /// Exponent of the first Pochhammer base, `s t + u`.
    fn first_base(&self) -> i64 {
        (self.s * self.scale) as i64 + self.subst_exponent
    }

    /// Exponent of the second Pochhammer base, `(m - s) t - u`.
    fn second_base(&self) -> i64 {
        ((self.m - self.s) * self.scale) as i64 - self.subst_exponent
    }

    /// Smallest `i` for which a numerator factor `1 - q^0` appears at index
    /// `i`; every summand with `k > i` is then exactly zero.
    pub fn vanishing_index(&self) -> Option<u64> {
        let step = self.step();
        [self.first_base(), self.second_base()]
            .into_iter()
            .filter(|&e| e <= 0 && e % step == 0)
            .map(|e| (-e / step) as u64)
            .min()
    }

    /// Number of summands that can be nonzero.
    pub fn effective_terms(&self) -> u64 {
        match self.vanishing_index() {
            Some(i) => self.terms.min(i + 1),
            None => self.terms,
        }
    }
}

/// `(q^e; q^step)_k = ∏_{i<k} (1 - q^{e + step i})` as an unreduced fraction.
pub fn qpochhammer_fraction(e: i64, step: u64, k: u64) -> BinomialFraction {
    let mut f = BinomialFraction::one();
    for i in 0..k {
        f.mul_factor(e + (step * i) as i64, false);
        if f.is_zero() {
            break;
        }
    }
    f
}

/// `(q^e; q^step)_k` in canonical form. A factor with negative exponent `-t`
/// is `(q^t - 1)/q^t`; the product is zero exactly when some `e + step i = 0`.
pub fn qpochhammer(e: i64, step: u64, k: u64) -> RatFun {
    qpochhammer_fraction(e, step, k).to_ratfun()
}

/// The `k`-th summand, unreduced.
pub fn sum_term_fraction(spec: &SumSpec, k: u64) -> BinomialFraction {
    let step = spec.step() as u64;
    let mut f = qpochhammer_fraction(spec.first_base(), step, k);
    if f.is_zero() {
        return f;
    }
    for i in 0..k {
        f.mul_factor(spec.second_base() + (step * i) as i64, false);
    }
    f.scale(&BigInt::from(2));
    f.mul_qpow((step * k) as i64);
    for i in 1..=k {
        f.div_factor(step * i, false);
        f.div_factor(step * i, false);
    }
    f.div_factor(step * k, true);
    f
}

pub fn sum_term(spec: &SumSpec, k: u64) -> RatFun {
    sum_term_fraction(spec, k).to_ratfun()
}

/// The truncated sum as an unreduced fraction over a product of binomials.
///
/// Nested (Horner) evaluation: with `T_{k+1} = R_k T_k` and `T_0 = 1`,
/// `S = 1 + R_0 (1 + R_1 (1 + ... ))`. Each ratio `R_k` is a product of at
/// most three binomials over three binomials, so every step is a handful of
/// linear passes over the accumulated numerator and denominator.
pub fn sum_side_fraction(spec: &SumSpec) -> BinomialFraction {
    let terms = spec.effective_terms();
    if terms == 0 {
        return BinomialFraction::zero();
    }
    let step = spec.step();
    let mut out = BinomialFraction::one();
    // Numerator P and explicit denominator D of the innermost tail.
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for k in (0..terms - 1).rev() {
        let ki = k as i64;
        // R_k = q^step (1 - q^x)(1 - q^y)(1 + q^{step k}) / ((1 - q^{step(k+1)})^2 (1 + q^{step(k+1)}))
        let mut qexp = step;
        for base in [spec.first_base(), spec.second_base()] {
            let e = base + step * ki;
            debug_assert!(e != 0, "vanishing factors lie beyond the effective terms");
            if e > 0 {
                num.mul_binomial(e as usize, false);
            } else {
                num.mul_binomial((-e) as usize, false);
                num.negate();
                qexp += e;
            }
        }
        if k == 0 {
            num.scale(&BigInt::from(2));
        } else {
            num.mul_binomial((step * ki) as usize, true);
        }
        let next = (step * (ki + 1)) as u64;
        den.mul_binomial(next as usize, false);
        den.mul_binomial(next as usize, false);
        den.mul_binomial(next as usize, true);
        out.div_factor(next, false);
        out.div_factor(next, false);
        out.div_factor(next, true);
        if qexp >= 0 {
            num.shift_up(qexp as usize);
        } else {
            den.shift_up((-qexp) as usize);
            out.mul_qpow(qexp);
        }
        num.add_assign(&den);
    }
    out.num = num;
    out
}

/// The truncated sum in canonical form.
pub fn sum_side(spec: &SumSpec) -> RatFun {
    sum_side_fraction(spec).to_ratfun()
}

/// The same sum built term by term, reducing after every addition.
pub fn sum_side_by_terms(spec: &SumSpec) -> RatFun {
    (0..spec.effective_terms()).fold(RatFun::zero(), |acc, k| acc.add(&sum_term(spec, k)))
}
