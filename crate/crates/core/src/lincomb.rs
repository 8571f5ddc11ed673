//! Sparse exact linear combinations over an ordered basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite sum `Σ c_k · k` with exact rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, BigRational::one())
    }

    pub fn term(key: K, coefficient: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coefficient);
        out
    }

    pub fn add_term(&mut self, key: K, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, factor: &BigRational) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &BigRational::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-BigRational::one());
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-indexes through `f`, merging coefficients of keys that collide.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Bilinear extension of a product on basis elements.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &LinComb<L>,
        mut f: impl FnMut(&K, &L) -> LinComb<M>,
    ) -> LinComb<M> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in other.iter() {
                out.add_assign_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigRational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// `"a/b"`, or `"a"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let bad = || crate::Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Decimal approximation for display.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
