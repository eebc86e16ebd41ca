//! Theorem drivers.
//!
//! Each driver assembles the modulus, builds both sides of a congruence with
//! exact arithmetic and returns a [`VerificationReport`]. The parametric
//! statements (with an extra indeterminate `a`) are checked at the roots
//! `a = q^u` of their linear-in-`a` modulus factors, where the congruence
//! becomes an exact identity.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::numtheory::gcd;
use crate::padic::{jacobi, residue_modulo};
use crate::polyring::{CyclotomicTable, Poly, Rational};
use crate::qseries::{sum_side, sum_side_fraction, SumSpec};
use crate::ratfun::{Congruence, RatFun};

/// Default cap on the number of summands `n^r`.
pub const DEFAULT_SIZE_GUARD: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `n ≡ 1 (mod m)`: modulo `∏_{j=1}^{r} Φ_{n^j}²`.
    Thm1,
    /// `n ≡ -1 (mod m)`: modulo `∏_{j=1}^{⌊r/2⌋} Φ_{n^{2j}}²`.
    Thm2,
    /// Single-length sum at the two roots of its parametric modulus.
    Lemma21,
    /// Root identities behind `Thm1`.
    Param1Roots,
    /// Root identities behind `Thm2`.
    Param2Roots,
    /// The `(m, s) = (2, 1)` congruence with inclusive upper limits `(n^r - 1)/2`.
    GzD2,
}

impl Theorem {
    pub const ALL: [Theorem; 6] =
        [Theorem::Thm1, Theorem::Thm2, Theorem::Lemma21, Theorem::Param1Roots, Theorem::Param2Roots, Theorem::GzD2];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm2 => "thm2",
            Theorem::Lemma21 => "lemma21",
            Theorem::Param1Roots => "param1",
            Theorem::Param2Roots => "param2",
            Theorem::GzD2 => "gz-d2",
        }
    }

    pub fn from_name(name: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl core::fmt::Display for Theorem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// `(m, s, n, r)` for the Dwork-type statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremParams {
    pub m: u64,
    pub s: u64,
    pub n: u64,
    pub r: u32,
}

impl TheoremParams {
    pub fn new(m: u64, s: u64, n: u64, r: u32) -> Self {
        TheoremParams { m, s, n, r }
    }

    /// `n ≡ 1 (mod m)`.
    pub fn is_class_one(&self) -> bool {
        self.m > 0 && self.n % self.m == 1 % self.m
    }

    /// `n ≡ -1 (mod m)`.
    pub fn is_class_two(&self) -> bool {
        self.m > 0 && (self.n + 1) % self.m == 0
    }

    fn check_common(&self) -> Result<()> {
        if self.s == 0 || self.s >= self.m {
            return Err(invalid(format!("need 0 < s < m, got s = {}, m = {}", self.s, self.m)));
        }
        if self.n <= 1 || self.n % 2 == 0 {
            return Err(invalid(format!("n must be odd and > 1, got {}", self.n)));
        }
        if self.r < 2 {
            return Err(invalid(format!("need r >= 2, got {}", self.r)));
        }
        Ok(())
    }

    pub fn check_class_one(&self) -> Result<()> {
        self.check_common()?;
        if !self.is_class_one() {
            return Err(invalid(format!("need n ≡ 1 (mod m), got n = {}, m = {}", self.n, self.m)));
        }
        Ok(())
    }

    pub fn check_class_two(&self) -> Result<()> {
        self.check_common()?;
        if !self.is_class_two() {
            return Err(invalid(format!("need n ≡ -1 (mod m), got n = {}, m = {}", self.n, self.m)));
        }
        Ok(())
    }

    fn n_pow(&self, e: u32) -> Result<u64> {
        self.n.checked_pow(e).ok_or_else(|| invalid(format!("{}^{} overflows", self.n, e)))
    }
}

/// Parameters echoed in a report; `r` is absent for the single-length lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReportParams {
    pub m: u64,
    pub s: u64,
    pub n: u64,
    pub r: Option<u32>,
}

impl From<TheoremParams> for ReportParams {
    fn from(p: TheoremParams) -> Self {
        ReportParams { m: p.m, s: p.s, n: p.n, r: Some(p.r) }
    }
}

/// Outcome of one driver run. `passed` holds exactly when `failure_witness`
/// is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub params: ReportParams,
    /// `(k, e)` for each modulus factor `Φ_k^e`.
    pub modulus_factors: Vec<(u64, u32)>,
    pub passed: bool,
    pub failure_witness: Option<String>,
    /// Wall-clock time; drivers leave it at zero, runners with a clock fill it.
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(theorem: Theorem, params: ReportParams, modulus_factors: Vec<(u64, u32)>, witness: Option<String>) -> Self {
        VerificationReport {
            theorem,
            params,
            modulus_factors,
            passed: witness.is_none(),
            failure_witness: witness,
            elapsed_ms: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible number of summands on the long side.
    pub size_guard: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { size_guard: DEFAULT_SIZE_GUARD }
    }
}

impl Limits {
    fn admit(&self, terms: u64) -> Result<()> {
        if terms > self.size_guard {
            return Err(Error::SizeGuard { terms, limit: self.size_guard });
        }
        Ok(())
    }
}

fn pow_factors(bases: impl Iterator<Item = u64>, mult: u32) -> Vec<(u64, u32)> {
    bases.map(|b| (b, mult)).collect()
}

/// `∏ Φ_k^e` over the listed factors.
pub fn modulus_from_factors(factors: &[(u64, u32)]) -> Result<Poly> {
    let mut table = CyclotomicTable::new();
    factors
        .iter()
        .try_fold(Poly::one(), |acc, &(k, e)| Ok(&acc * &table.get(k)?.pow(e)))
}

/// Factor list `[(n^j, 2) : j = 1..r]`.
pub fn modulus_thm1_factors(n: u64, r: u32) -> Result<Vec<(u64, u32)>> {
    if n <= 1 || r < 1 {
        return Err(invalid(format!("need n > 1 and r >= 1, got n = {n}, r = {r}")));
    }
    let bases = (1..=r)
        .map(|j| n.checked_pow(j).ok_or_else(|| invalid("n^r overflows")))
        .collect::<Result<Vec<_>>>()?;
    Ok(pow_factors(bases.into_iter(), 2))
}

/// `∏_{j=1}^{r} Φ_{n^j}(q)²`.
pub fn modulus_thm1(n: u64, r: u32) -> Result<Poly> {
    modulus_from_factors(&modulus_thm1_factors(n, r)?)
}

/// Factor list `[(n^{2j}, 2) : j = 1..⌊r/2⌋]`.
pub fn modulus_thm2_factors(n: u64, r: u32) -> Result<Vec<(u64, u32)>> {
    if n <= 1 {
        return Err(invalid(format!("need n > 1, got {n}")));
    }
    let bases = (1..=r / 2)
        .map(|j| n.checked_pow(2 * j).ok_or_else(|| invalid("n^r overflows")))
        .collect::<Result<Vec<_>>>()?;
    Ok(pow_factors(bases.into_iter(), 2))
}

/// Tests `diff ≡ 0` modulo every listed factor, smallest first, and
/// cross-checks the verdict against the full product. Every factor `Φ_k^e`
/// must divide `(q^period - 1)^2`, so both numerator and denominator are
/// folded modulo that binomial power before dividing.
fn congruence_witness(diff: &RatFun, factors: &[(u64, u32)], period: u64) -> Result<Option<String>> {
    let period = period as usize;
    let mut table = CyclotomicTable::new();
    let mut witness = None;
    let mut product = Poly::one();
    for &(k, e) in factors {
        let modulus = table.get(k)?.pow(e);
        product = &product * &modulus;
        if witness.is_some() {
            continue;
        }
        witness = match diff.congruent_to_zero_folded(&modulus, period, 2)? {
            Congruence::Congruent => None,
            Congruence::NotCongruent => {
                let residue = diff.num().fold_binomial_power(period, 2).rem(&modulus)?;
                Some(format!(
                    "Phi_{k}^{e} does not divide the reduced numerator; residue {}",
                    residue.display_truncated(4)
                ))
            }
            Congruence::NonCoprimeDenominator => {
                Some(format!("NonCoprimeDenominator: reduced denominator shares a factor with Phi_{k}"))
            }
        };
    }
    if !factors.is_empty() {
        let whole = diff.congruent_to_zero_folded(&product, period, 2)?.holds();
        if whole != witness.is_none() {
            return Ok(Some(format!(
                "modulus assembly mismatch: full product {}, per-factor {}",
                if whole { "congruent" } else { "not congruent" },
                if witness.is_none() { "congruent" } else { "not congruent" }
            )));
        }
    }
    Ok(witness)
}

fn parity_sign(exponent: u64) -> i64 {
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `⟨-s/m⟩_n` for `n ≡ 1 (mod m)`, i.e. `s (n - 1) / m`.
pub fn class_one_sign_exponent(m: u64, s: u64, n: u64) -> Result<u64> {
    if m == 0 || (n - 1) % m != 0 {
        return Err(invalid(format!("need n ≡ 1 (mod m), got n = {n}, m = {m}")));
    }
    Ok(s * ((n - 1) / m))
}

/// Canonical left side and signed right side of the `n ≡ 1 (mod m)` congruence.
pub fn thm1_sides(params: &TheoremParams, limits: &Limits) -> Result<(RatFun, RatFun)> {
    params.check_class_one()?;
    let TheoremParams { m, s, n, r } = *params;
    let long = params.n_pow(r)?;
    limits.admit(long)?;
    let lhs = sum_side(&SumSpec::plain(m, s, 1, long)?);
    let rhs = sum_side(&SumSpec::plain(m, s, n, long / n)?);
    let sign = parity_sign(class_one_sign_exponent(m, s, n)?);
    Ok((lhs, rhs.scale(&Rational::from_integer(sign.into()))))
}

pub fn verify_thm1(params: &TheoremParams, limits: &Limits) -> Result<VerificationReport> {
    params.check_class_one()?;
    let TheoremParams { m, s, n, r } = *params;
    let long = params.n_pow(r)?;
    limits.admit(long)?;
    let factors = modulus_thm1_factors(n, r)?;
    let lhs = sum_side_fraction(&SumSpec::plain(m, s, 1, long)?);
    let mut rhs = sum_side_fraction(&SumSpec::plain(m, s, n, long / n)?);
    if class_one_sign_exponent(m, s, n)? % 2 == 1 {
        rhs = rhs.neg();
    }
    let diff = lhs.sub(&rhs).to_ratfun();
    let witness = congruence_witness(&diff, &factors, long)?;
    Ok(VerificationReport::new(Theorem::Thm1, (*params).into(), factors, witness))
}

/// Canonical sides of the `n ≡ -1 (mod m)` congruence.
pub fn thm2_sides(params: &TheoremParams, limits: &Limits) -> Result<(RatFun, RatFun)> {
    params.check_class_two()?;
    let TheoremParams { m, s, n, r } = *params;
    let long = params.n_pow(r)?;
    limits.admit(long)?;
    let lhs = sum_side(&SumSpec::plain(m, s, 1, long)?);
    let rhs = sum_side(&SumSpec::plain(m, s, n * n, long / (n * n))?);
    Ok((lhs, rhs))
}

pub fn verify_thm2(params: &TheoremParams, limits: &Limits) -> Result<VerificationReport> {
    params.check_class_two()?;
    let TheoremParams { m, s, n, r } = *params;
    let long = params.n_pow(r)?;
    limits.admit(long)?;
    let factors = modulus_thm2_factors(n, r)?;
    let lhs = sum_side_fraction(&SumSpec::plain(m, s, 1, long)?);
    let rhs = sum_side_fraction(&SumSpec::plain(m, s, n * n, long / (n * n))?);
    let diff = lhs.sub(&rhs).to_ratfun();
    let witness = congruence_witness(&diff, &factors, params.n_pow(2 * (r / 2))?)?;
    Ok(VerificationReport::new(Theorem::Thm2, (*params).into(), factors, witness))
}

/// The `(m, s) = (2, 1)` congruence with `⌊(n^r - 1)/2⌋ + 1` summands on the
/// left, `⌊(n^{r-1} - 1)/2⌋ + 1` at scale `n` on the right, and the Jacobi
/// sign `(-1/n)`, modulo `∏_{j=1}^{r} Φ_{n^j}²`.
pub fn verify_gz_d2(n: u64, r: u32, limits: &Limits) -> Result<VerificationReport> {
    if n <= 1 || n % 2 == 0 {
        return Err(invalid(format!("n must be odd and > 1, got {n}")));
    }
    if r < 1 {
        return Err(invalid("need r >= 1"));
    }
    let long = n.checked_pow(r).ok_or_else(|| invalid("n^r overflows"))?;
    limits.admit(long)?;
    let factors = modulus_thm1_factors(n, r)?;
    let lhs = sum_side_fraction(&SumSpec::plain(2, 1, 1, (long - 1) / 2 + 1)?);
    let mut rhs = sum_side_fraction(&SumSpec::plain(2, 1, n, (long / n - 1) / 2 + 1)?);
    if jacobi(-1, n)? == -1 {
        rhs = rhs.neg();
    }
    let diff = lhs.sub(&rhs).to_ratfun();
    let witness = congruence_witness(&diff, &factors, long)?;
    let params = ReportParams { m: 2, s: 1, n, r: Some(r) };
    Ok(VerificationReport::new(Theorem::GzD2, params, factors, witness))
}

fn least_residue_fraction(num: i64, den: u64, modulus: u64) -> Result<u64> {
    residue_modulo(&Rational::new(num.into(), den.into()), modulus)
}

/// Root exponents `(u₁, u₂)` and the sign exponent `⟨-s/m⟩_n` of the
/// single-length lemma: `a = q^{u₁}` with `u₁ = -(s + m⟨-s/m⟩_n)` and
/// `a = q^{u₂}` with `u₂ = m - s + m⟨(s-m)/m⟩_n`.
pub fn lemma21_roots(m: u64, n: u64, s: u64) -> Result<(i64, i64, u64)> {
    if s == 0 || s >= m {
        return Err(invalid(format!("need 0 < s < m, got s = {s}, m = {m}")));
    }
    if n == 0 || n % 2 == 0 {
        return Err(invalid(format!("n must be odd, got {n}")));
    }
    if gcd(m, n) != 1 {
        return Err(invalid(format!("need gcd(m, n) = 1, got m = {m}, n = {n}")));
    }
    let first = least_residue_fraction(-(s as i64), m, n)?;
    let second = least_residue_fraction(s as i64 - m as i64, m, n)?;
    let u1 = -((s + m * first) as i64);
    let u2 = (m - s + m * second) as i64;
    Ok((u1, u2, first))
}

pub fn verify_lemma21(m: u64, n: u64, s: u64, limits: &Limits) -> Result<VerificationReport> {
    let (u1, u2, sign_exp) = lemma21_roots(m, n, s)?;
    limits.admit(n)?;
    let params = ReportParams { m, s, n, r: None };
    let expected = RatFun::from_int(parity_sign(sign_exp));
    let mut witness = None;
    if u2 <= u1 {
        witness = Some(format!("root exponents coincide: u1 = {u1}, u2 = {u2}"));
    }
    for u in [u1, u2] {
        if witness.is_some() {
            break;
        }
        let value = sum_side(&SumSpec::new(m, s, 1, n, u)?);
        if value != expected {
            witness = Some(format!("a = q^{u}: sum is {value}, expected {expected}"));
        }
    }
    Ok(VerificationReport::new(Theorem::Lemma21, params, Vec::new(), witness))
}

/// Which parametric statement a root check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamVariant {
    /// `n ≡ 1 (mod m)`; right side at scale `n` with `n^{r-1}` terms.
    One,
    /// `n ≡ -1 (mod m)`; right side at scale `n²` with `n^{r-2}` terms.
    Two,
}

impl ParamVariant {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(ParamVariant::One),
            2 => Ok(ParamVariant::Two),
            _ => Err(invalid(format!("variant must be 1 or 2, got {i}"))),
        }
    }
}

/// One substitution `a = q^u` of a parametric statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSubstitution {
    /// 1 for the `1 - a q^{...}` family, 2 for the `a - q^{...}` family.
    pub family: u8,
    pub j: u64,
    pub exponent: i64,
    /// Value both sides take at this root.
    pub expected_sign: i64,
}

struct ParamShape {
    /// `n` or `n²`.
    scale: u64,
    /// `n^{r-1}` or `n^{r-2}`: length of the scaled side.
    short: u64,
    long: u64,
    /// Exponent of the constant sign in front of the scaled side.
    prefactor_exp: u64,
}

fn param_shape(variant: ParamVariant, params: &TheoremParams) -> Result<ParamShape> {
    let TheoremParams { m, s, n, r } = *params;
    match variant {
        ParamVariant::One => {
            params.check_class_one()?;
            Ok(ParamShape {
                scale: n,
                short: params.n_pow(r - 1)?,
                long: params.n_pow(r)?,
                prefactor_exp: class_one_sign_exponent(m, s, n)?,
            })
        }
        ParamVariant::Two => {
            params.check_class_two()?;
            Ok(ParamShape { scale: n * n, short: params.n_pow(r - 2)?, long: params.n_pow(r)?, prefactor_exp: 0 })
        }
    }
}

/// All roots `a = q^u` of the parametric modulus.
///
/// Family 1: `u = -s T (mj + 1)` for `0 <= j <= ⌊(L - 1)/s⌋`; family 2:
/// `u = (m - s) T (mj + 1)` for `0 <= j <= ⌊(L - 1)/(m - s)⌋`, where
/// `(T, L) = (n, n^{r-1})` or `(n², n^{r-2})`. At each root both sides equal
/// `(-1)^{c (T(mj+1) - 1)/m}` with `c = s` or `m - s`. The roots are
/// `q^u`, not `-q^u`: the exponents of the identity force a positive base.
pub fn param_root_substitutions(variant: ParamVariant, params: &TheoremParams) -> Result<Vec<RootSubstitution>> {
    let shape = param_shape(variant, params)?;
    let TheoremParams { m, s, .. } = *params;
    let mut out = Vec::new();
    for (family, c) in [(1u8, s), (2u8, m - s)] {
        for j in 0..=(shape.short - 1) / c {
            let stretched = shape.scale * (m * j + 1);
            let magnitude = (c * stretched) as i64;
            out.push(RootSubstitution {
                family,
                j,
                exponent: if family == 1 { -magnitude } else { magnitude },
                expected_sign: parity_sign(c * ((stretched - 1) / m)),
            });
        }
    }
    Ok(out)
}

/// Checks the parametric statement at every root of its modulus: both sides
/// must equal the predicted sign exactly, and all roots must be distinct.
pub fn verify_param_roots(variant: ParamVariant, params: &TheoremParams, limits: &Limits) -> Result<VerificationReport> {
    let shape = param_shape(variant, params)?;
    limits.admit(shape.long)?;
    let TheoremParams { m, s, n, r } = *params;
    let roots = param_root_substitutions(variant, params)?;
    let prefactor = Rational::from_integer(parity_sign(shape.prefactor_exp).into());

    let mut witness = None;
    let distinct: BTreeSet<i64> = roots.iter().map(|x| x.exponent).collect();
    if distinct.len() != roots.len() {
        witness = Some(String::from("substituted exponents are not pairwise distinct"));
    }
    for root in &roots {
        if witness.is_some() {
            break;
        }
        let expected = RatFun::from_int(root.expected_sign);
        let lhs = sum_side(&SumSpec::new(m, s, 1, shape.long, root.exponent)?);
        let rhs = sum_side(&SumSpec::new(m, s, shape.scale, shape.short, root.exponent)?).scale(&prefactor);
        if lhs != expected || rhs != expected {
            witness = Some(format!(
                "a = q^{} (family {}, j = {}): left {}, right {}, expected {}",
                root.exponent, root.family, root.j, lhs, rhs, expected
            ));
        }
    }

    // Multiplicity of each Φ in the a → 1 limit of the modulus.
    let (theorem, levels): (Theorem, Vec<u32>) = match variant {
        ParamVariant::One => (Theorem::Param1Roots, (1..=r).collect()),
        ParamVariant::Two => (Theorem::Param2Roots, (1..=r / 2).map(|j| 2 * j).collect()),
    };
    let factors = levels
        .into_iter()
        .map(|e| {
            let k = n.pow(e);
            let count = roots.iter().filter(|x| x.exponent.unsigned_abs() % k == 0).count();
            (k, count as u32)
        })
        .collect();
    Ok(VerificationReport::new(theorem, (*params).into(), factors, witness))
}

/// Multiples of `n^j` among `{s n (m i + 1)}` and `{(m - s) n (m i + 1)}`,
/// counted with multiplicity, against the closed form
/// `⌊(n^{r-j} - 1)/s⌋ + ⌊(n^{r-j} - 1)/(m - s)⌋ + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultipleCount {
    pub counted: u64,
    pub expected: u64,
}

fn check_level(params: &TheoremParams, j: u32) -> Result<()> {
    params.check_class_one()?;
    if j < 1 || j > params.r {
        return Err(invalid(format!("need 1 <= j <= r, got j = {j}, r = {}", params.r)));
    }
    Ok(())
}

pub fn count_multiples(m: u64, s: u64, n: u64, r: u32, j: u32) -> Result<MultipleCount> {
    let params = TheoremParams::new(m, s, n, r);
    check_level(&params, j)?;
    let short = params.n_pow(r - 1)?;
    let target = params.n_pow(j)?;
    let tail = params.n_pow(r - j)?;
    let mut counted = 0;
    for c in [s, m - s] {
        counted += (0..=(short - 1) / c).filter(|i| (c * n * (m * i + 1)) % target == 0).count() as u64;
    }
    let expected = (tail - 1) / s + (tail - 1) / (m - s) + 2;
    Ok(MultipleCount { counted, expected })
}

/// `n^{j-1} (⌊(n^{r-j} - 1)/s⌋ m + 1) <= ⌊(n^{r-1} - 1)/s⌋ m + 1`.
pub fn exponent_bound_holds(m: u64, s: u64, n: u64, r: u32, j: u32) -> Result<bool> {
    let params = TheoremParams::new(m, s, n, r);
    check_level(&params, j)?;
    let left = params.n_pow(j - 1)? * ((params.n_pow(r - j)? - 1) / s * m + 1);
    let right = (params.n_pow(r - 1)? - 1) / s * m + 1;
    Ok(left <= right)
}
