use alloc::collections::BTreeMap;

use super::poly::Poly;
use crate::error::{invalid, Result};
use crate::numtheory::divisors;

/// Memo table for cyclotomic polynomials.
///
/// Insertion is idempotent: an entry, once present, is never replaced, and
/// every entry equals the value [`cyclotomic`] would compute from scratch.
#[derive(Clone, Debug, Default)]
pub struct CyclotomicTable {
    memo: BTreeMap<u64, Poly>,
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Φ_n(q)`, computing and caching every `Φ_d` with `d | n` on the way.
    pub fn get(&mut self, n: u64) -> Result<Poly> {
        if n == 0 {
            return Err(invalid("cyclotomic index must be at least 1"));
        }
        if let Some(p) = self.memo.get(&n) {
            return Ok(p.clone());
        }
        let mut acc = Poly::q_pow_minus_one(n as usize);
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi = self.get(d)?;
            acc = acc.div_exact(&phi)?;
        }
        self.memo.entry(n).or_insert_with(|| acc.clone());
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// The `n`-th cyclotomic polynomial: `q^n - 1` divided exactly by `Φ_d` for
/// every proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> Result<Poly> {
    CyclotomicTable::new().get(n)
}
