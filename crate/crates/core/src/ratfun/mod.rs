//! Rational functions in `q` in canonical reduced form, and congruences
//! between them modulo a polynomial.

mod factored;

pub use factored::{Binomial, BinomialFraction};

use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Rational};

/// A reduced quotient `num / den` with `den` monic and `gcd(num, den) = 1`.
/// Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Outcome of testing `b ≡ c (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Congruence {
    Congruent,
    NotCongruent,
    /// The reduced denominator of `b - c` shares a factor with `p`, so the
    /// congruence is not defined.
    NonCoprimeDenominator,
}

impl Congruence {
    pub fn holds(self) -> bool {
        self == Congruence::Congruent
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFun {
    /// Canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(Self::normalized(num, den))
    }

    /// Makes an already coprime pair canonical by moving the denominator's
    /// leading coefficient into the numerator.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Wraps a pair the caller has already reduced (coprime, monic denominator).
    pub(crate) fn from_reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return Self::zero();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// Exact value at `q = x`, or `None` if the denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn neg(&self) -> Self {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Henrici: with g = gcd(b, d) the only possible cancellation is by gcd(num, g).
        let g = Poly::gcd(&self.den, &other.den).expect("denominators are nonzero");
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &d1 + &other.num * &b1;
        if num.is_zero() {
            return Self::zero();
        }
        let den = &b1 * &other.den;
        let h = Poly::gcd(&num, &g).expect("num is nonzero");
        if h.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&h).expect("h | num"), den.div_exact(&h).expect("h | den"))
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = Poly::gcd(&self.num, &other.den).expect("nonzero");
        let g2 = Poly::gcd(&other.num, &self.den).expect("nonzero");
        let num = self.num.div_exact(&g1).expect("g1 | a") * other.num.div_exact(&g2).expect("g2 | c");
        let den = self.den.div_exact(&g2).expect("g2 | b") * other.den.div_exact(&g1).expect("g1 | d");
        Self::normalized(num, den)
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn arith(op: ArithOp, a: &RatFun, b: &RatFun) -> Result<RatFun> {
        Ok(match op {
            ArithOp::Add => a.add(b),
            ArithOp::Sub => a.sub(b),
            ArithOp::Mul => a.mul(b),
            ArithOp::Div => a.div(b)?,
        })
    }

    /// Tests `self ≡ 0 (mod p)`: `p` divides the reduced numerator and is
    /// coprime to the reduced denominator.
    pub fn congruent_to_zero(&self, p: &Poly) -> Result<Congruence> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidModulus);
        }
        if self.num.divisible_by(p)? {
            // gcd(num, den) = 1 and p | num force gcd(den, p) = 1.
            debug_assert!(coprime(&self.den, p));
            return Ok(Congruence::Congruent);
        }
        if !coprime(&self.den, p) {
            return Ok(Congruence::NonCoprimeDenominator);
        }
        Ok(Congruence::NotCongruent)
    }

    /// Same verdict as [`congruent_to_zero`](Self::congruent_to_zero) for a
    /// modulus `p` dividing `(q^k - 1)^e`, reached after folding numerator and
    /// denominator modulo `(q^k - 1)^e`. Much cheaper when the degree of
    /// `self` is far above `k e`.
    pub fn congruent_to_zero_folded(&self, p: &Poly, k: usize, e: u32) -> Result<Congruence> {
        if p.degree().unwrap_or(0) == 0 || k == 0 || !Poly::q_pow_minus_one(k).pow(e).divisible_by(p)? {
            return Err(Error::InvalidModulus);
        }
        if self.num.fold_binomial_power(k, e).divisible_by(p)? {
            return Ok(Congruence::Congruent);
        }
        if !coprime(&self.den.fold_binomial_power(k, e), p) {
            return Ok(Congruence::NonCoprimeDenominator);
        }
        Ok(Congruence::NotCongruent)
    }

    /// Tests `b ≡ c (mod p)` on the reduced form of `b - c`.
    pub fn congruent(b: &RatFun, c: &RatFun, p: &Poly) -> Result<Congruence> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidModulus);
        }
        b.sub(c).congruent_to_zero(p)
    }
}

/// `gcd(a, p) = 1`, reducing `a` modulo `p` first so a large `a` costs one
/// division.
fn coprime(a: &Poly, p: &Poly) -> bool {
    let r = a.rem(p).expect("p is nonzero");
    if r.is_zero() {
        return false;
    }
    Poly::gcd(p, &r).expect("p is nonzero").is_one()
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
