use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense univariate polynomial in `q` with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`. The list never ends in a zero,
/// so the zero polynomial is the empty list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// `q^n - 1`.
    pub fn q_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = -Rational::one();
        coeffs[n] += Rational::one();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficient list, if the polynomial has one.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Product `a * b`; schoolbook multiplication.
    pub fn mul_poly(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc = &divisor.coeffs[dd];
        if lc.is_one() {
            if let Some(ints) = divisor.to_bigints() {
                return Ok(self.div_rem_monic_integral(&ints));
            }
        }
        let lc_inv = if lc.is_one() { None } else { Some(lc.recip()) };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let c = match &lc_inv {
                None => top.clone(),
                Some(inv) => top * inv,
            };
            for (j, b) in divisor.coeffs.iter().enumerate().take(dd) {
                if !b.is_zero() {
                    rem[i + j] -= &c * b;
                }
            }
            rem[i + dd] = Rational::zero();
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division by a monic integer polynomial, carried out on integers after
    /// clearing the denominators of `self`.
    fn div_rem_monic_integral(&self, divisor: &[BigInt]) -> (Poly, Poly) {
        let dd = divisor.len() - 1;
        let common = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut rem: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&common / c.denom())).collect();
        let nd = rem.len() - 1;
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = core::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.iter().enumerate().take(dd) {
                if !b.is_zero() {
                    rem[i + j] -= &c * b;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        let back = |v: Vec<BigInt>| Poly::from_coeffs(v.into_iter().map(|c| Rational::new(c, common.clone())).collect());
        (back(quot), back(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Quotient of an exact division.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonExactDivision)
        }
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Monic greatest common divisor over the rationals (monic Euclid).
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.rem(&y)?.monic();
            x = y;
            y = r;
        }
        Ok(x)
    }

    /// A representative of `self` modulo `(q^k - 1)^e` of degree below `k e`.
    ///
    /// Writing `q^{jk + i} = q^i (1 + t)^j` with `t = q^k - 1` and dropping
    /// `t^e` and beyond needs only additions and small binomial multiples.
    pub fn fold_binomial_power(&self, k: usize, e: u32) -> Poly {
        assert!(k > 0, "period must be positive");
        let e = e as usize;
        if self.coeffs.len() <= k * e || e == 0 {
            return if e == 0 { Poly::zero() } else { self.clone() };
        }
        let common = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut acc = vec![vec![BigInt::zero(); k]; e];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let value = c.numer() * (&common / c.denom());
            let (j, i) = (idx / k, idx % k);
            // C(j, t) for t < e.
            let mut binom = BigInt::one();
            for (t, row) in acc.iter_mut().enumerate() {
                if t > j {
                    break;
                }
                if t > 0 {
                    binom = binom * BigInt::from(j + 1 - t) / BigInt::from(t);
                }
                row[i] += &binom * &value;
            }
        }
        let t = Poly::q_pow_minus_one(k);
        let mut power = Poly::one();
        let mut out = Poly::zero();
        for row in acc {
            let part = Poly::from_coeffs(row.into_iter().map(Rational::from_integer).collect());
            out = &out + &(&part * &power);
            power = &power * &t;
        }
        out.scale(&Rational::new(BigInt::one(), common))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Renders at most `max_terms` leading terms, appending `+ ...` when cut.
    pub fn display_truncated(&self, max_terms: usize) -> String {
        let mut out = String::new();
        let nonzero = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        write_terms(&mut out, self, max_terms).expect("writing to a String");
        if nonzero > max_terms {
            out.push_str(" + ...");
        }
        out
    }
}

fn write_terms(f: &mut impl fmt::Write, p: &Poly, max_terms: usize) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in p.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).take(max_terms) {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let mag = c.abs();
        match k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
    }
    Ok(())
}

/// Descending powers with explicit `q^k` monomials, e.g. `q^6 + q^3 + 1`,
/// `q - 1`, `-3/2*q^2 + 2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, usize::MAX)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul_poly(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn products() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[1, 1, 1]) * &p(&[1, -1]), p(&[1, 0, 0, -1]));
        assert_eq!(&p(&[3, 1]) * &Poly::zero(), Poly::zero());
        let a = p(&[1, 2, 3]);
        assert_eq!((&a * &a).degree(), Some(4));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 0, 1]).div_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])), Err(Error::NonExactDivision));
        assert_eq!(p(&[1, 0, 1]).rem(&p(&[-1, 1])).unwrap(), p(&[2]));
        assert_eq!(p(&[1, 1]).div_exact(&Poly::zero()), Err(Error::DivisionByZero));
        // Non-monic divisor.
        assert_eq!(p(&[2, 2]).div_exact(&p(&[2])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 0, -4]).div_exact(&p(&[1, 2])).unwrap(), p(&[1, -2]));
    }

    #[test]
    fn division_with_rational_dividend() {
        let a = Poly::from_coeffs(vec![r(1, 2), r(-2, 3), r(0, 1), r(5, 6), r(7, 4), r(1, 3)]);
        for b in [p(&[1, 1, 1]), p(&[-3, 0, 2, 1]), p(&[2, 1])] {
            let (quot, rem) = a.div_rem(&b).unwrap();
            assert_eq!(&(&quot * &b) + &rem, a);
            assert!(rem.degree() < b.degree());
        }
        // Same remainder as the generic path with a non-monic scaling.
        let b = p(&[1, 1, 1]);
        let (_, rem2) = a.div_rem(&b.scale(&r(3, 1))).unwrap();
        assert_eq!(a.rem(&b).unwrap(), rem2);
    }

    #[test]
    fn folding_modulo_binomial_powers() {
        let a = Poly::from_coeffs((0..40).map(|i| r((i * 7 % 11) - 5, 1 + i % 3)).collect());
        for (k, e) in [(1, 1), (3, 2), (5, 2), (4, 3), (50, 2)] {
            let folded = a.fold_binomial_power(k, e);
            assert!(folded.degree().map_or(true, |d| d < (k * e as usize).max(a.coeffs.len())));
            let modulus = Poly::q_pow_minus_one(k).pow(e);
            assert!((&a - &folded).divisible_by(&modulus).unwrap(), "k = {k}, e = {e}");
        }
        assert_eq!(a.fold_binomial_power(3, 0), Poly::zero());
    }

    #[test]
    fn gcds() {
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 0, 0, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &p(&[2, 2])).unwrap(), p(&[1, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Err(Error::BothZero));
        assert_eq!(Poly::gcd(&p(&[6]), &p(&[0, 4])).unwrap(), Poly::one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-1, 0, 1]).eval(&r(3, 1)), r(8, 1));
        assert_eq!(p(&[1, 1]).eval(&r(-1, 2)), r(1, 2));
        assert_eq!(Poly::zero().eval(&r(5, 1)), r(0, 1));
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[1, 0, 0, 1, 0, 0, 1]).to_string(), "q^6 + q^3 + 1");
        assert_eq!(p(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(p(&[0, 0, -1]).to_string(), "-q^2");
        assert_eq!(p(&[2, 0, 3]).to_string(), "3*q^2 + 2");
        assert_eq!(Poly::from_coeffs(vec![r(2, 1), r(0, 1), r(-3, 2)]).to_string(), "-3/2*q^2 + 2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[1, 1, 1, 1, 1]).display_truncated(2), "q^4 + q^3 + ...");
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let a = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
    }
}
