//! Exact convolution on `G_n = S_n × S_n × S_n` and the coset algebras of
//! `K_n[α]`-biinvariant functions.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cosets::{circledast, DoubleCoset};
use crate::error::{Error, Result};
use crate::lincomb::{integer, LinComb};
use crate::perm::Permutation;
use crate::surface::{canonical_form, LabeledSurface, Triple};

/// A finitely supported function on `G_n` with rational values.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: LinComb<Triple>,
}

/// Coefficients of a product of coset indicators in the basis of coset
/// indicators.
pub type CosetAlgebraElement = LinComb<LabeledSurface>;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: LinComb::zero(),
        }
    }

    /// Point mass `δ_t`.
    pub fn point(t: &Triple, n: usize) -> Self {
        let n = n.max(t.n());
        Self::from_terms(n, LinComb::basis(t.padded(n)))
    }

    pub fn identity(n: usize) -> Self {
        Self::point(&Triple::identity(n), n)
    }

    pub fn from_terms(n: usize, terms: LinComb<Triple>) -> Self {
        let terms = terms.map_keys(|t| t.padded(n));
        GroupAlgebraElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Triple> {
        &self.terms
    }

    pub fn coefficient(&self, t: &Triple) -> BigRational {
        self.terms.coefficient(t)
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn mass(&self) -> BigRational {
        self.terms.mass()
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        GroupAlgebraElement {
            n: self.n,
            terms: self.terms.scaled(factor),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        GroupAlgebraElement {
            n: self.n.max(other.n),
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        GroupAlgebraElement {
            n: self.n.max(other.n),
            terms: self.terms.minus(&other.terms),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(f∗g)(x) = Σ_y f(y) g(y⁻¹x)`.
    ///
    /// Terms are grouped by coefficient so that the inner loop only counts
    /// products; this keeps class-sum products cheap.
    pub fn convolve(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let groups = |terms: &LinComb<Triple>| {
            let mut by_coef: BTreeMap<BigRational, Vec<Triple>> = BTreeMap::new();
            for (t, c) in terms.iter() {
                by_coef.entry(c.clone()).or_default().push(t.padded(n));
            }
            by_coef
        };
        let (left, right) = (groups(&self.terms), groups(&other.terms));
        let mut out = LinComb::zero();
        for (ca, xs) in &left {
            for (cb, ys) in &right {
                let counts = xs
                    .par_iter()
                    .fold(HashMap::new, |mut acc: HashMap<Triple, u64>, x| {
                        for y in ys {
                            *acc.entry(x.compose(y)).or_default() += 1;
                        }
                        acc
                    })
                    .reduce(HashMap::new, merge_counts);
                let coef = ca * cb;
                for (t, k) in counts {
                    out.add_term(t, &coef * integer(k));
                }
            }
        }
        GroupAlgebraElement { n, terms: out }
    }

    /// Whether `f(h·x·h'⁻¹) = f(x)` for `h ∈ K_n[alpha]`, `h' ∈ K_n[beta]`,
    /// checked on generators.
    pub fn is_biinvariant(&self, alpha: usize, beta: usize) -> bool {
        let gens = |fixed: usize| -> Vec<Permutation> {
            (fixed..self.n.saturating_sub(1))
                .map(|i| Permutation::from_cycles(self.n, &[vec![i, i + 1]]).expect("adjacent transposition"))
                .collect()
        };
        let id = Permutation::identity(self.n);
        let left = gens(alpha).into_iter().map(|h| (h, id.clone()));
        let right = gens(beta).into_iter().map(|h| (id.clone(), h));
        left.chain(right).all(|(h, h2)| {
            self.terms
                .iter()
                .all(|(t, c)| &self.terms.coefficient(&t.relabel(&h, &h2).padded(self.n)) == c)
        })
    }
}

impl std::fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C[G_{}]{:?}", self.n, self.terms)
    }
}

fn merge_counts<K: std::hash::Hash + Eq>(mut a: HashMap<K, u64>, b: HashMap<K, u64>) -> HashMap<K, u64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Uniform probability measure on the diagonal subgroup `K_n[alpha]`.
pub fn delta_subgroup(alpha: usize, n: usize) -> GroupAlgebraElement {
    let alpha = alpha.min(n);
    let weight = BigRational::new(BigInt::one(), factorial(n - alpha));
    let terms = Permutation::all_fixing(alpha, n)
        .map(|h| (Triple::diagonal(&h).padded(n), weight.clone()))
        .collect();
    GroupAlgebraElement { n, terms }
}

fn check_degree(n: usize, needed: usize) -> Result<()> {
    if n < needed {
        return Err(Error::DegreeTooSmall { requested: n, needed });
    }
    Ok(())
}

/// Uniform probability measure `δ_{p(n)}` on the double coset of `p`
/// embedded in `G_n`, by direct enumeration of `K[α] · a₀ · K[β]`.
pub fn coset_element(p: &DoubleCoset, n: usize) -> Result<GroupAlgebraElement> {
    check_degree(n, p.pairs())?;
    let a0 = p.triple().padded(n);
    let rights: Vec<Permutation> = Permutation::all_fixing(p.beta(), n).collect();
    let set: HashSet<Triple> = Permutation::all_fixing(p.alpha(), n)
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|h| rights.iter().map(|h2| a0.relabel(h, h2).padded(n)).collect::<Vec<_>>())
        .collect();
    let weight = BigRational::new(BigInt::one(), BigInt::from(set.len()));
    let terms = set.into_iter().map(|t| (t, weight.clone())).collect();
    Ok(GroupAlgebraElement { n, terms })
}

/// Structure constants `c^r` of `δ_{p(n)} ∗ δ_{q(n)} = Σ_r c^r δ_{r(n)}`,
/// computed as the distribution of the class of `a₀ · h · b₀` for `h`
/// uniform in `K_n[β]`.
pub fn coset_decomposition(p: &DoubleCoset, q: &DoubleCoset, n: usize) -> Result<CosetAlgebraElement> {
    if p.beta() != q.alpha() {
        return Err(Error::LabelMismatch {
            left: p.beta(),
            right: q.alpha(),
        });
    }
    check_degree(n, p.pairs().max(q.pairs()))?;
    decomposition_from_reps(p.triple(), q.triple(), p.alpha(), p.beta(), q.beta(), n)
}

/// As [`coset_decomposition`], from arbitrary representatives.
pub fn decomposition_from_reps(
    a0: &Triple,
    b0: &Triple,
    alpha: usize,
    beta: usize,
    gamma: usize,
    n: usize,
) -> Result<CosetAlgebraElement> {
    check_degree(n, a0.n().max(b0.n()).max(alpha).max(beta).max(gamma))?;
    let (a0, b0) = (a0.padded(n), b0.padded(n));
    let hs: Vec<Permutation> = Permutation::all_fixing(beta, n).collect();
    let counts = hs
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<LabeledSurface, u64>, h| {
            let t = a0.compose(&Triple::diagonal(h).padded(n)).compose(&b0);
            let class = canonical_form(&t, alpha, gamma).expect("labels fit");
            *acc.entry(class).or_default() += 1;
            acc
        })
        .reduce(HashMap::new, merge_counts);
    let total = factorial(n - beta);
    Ok(counts
        .into_iter()
        .map(|(class, k)| (class, BigRational::new(BigInt::from(k), total.clone())))
        .collect())
}

/// `σ_n`: the coefficient of `p ⊛ q` in `δ_{p(n)} ∗ δ_{q(n)}` for each `n`.
pub fn sigma_series(p: &DoubleCoset, q: &DoubleCoset, ns: &[usize]) -> Result<Vec<(usize, BigRational)>> {
    let target = circledast(p, q)?;
    ns.iter()
        .map(|&n| Ok((n, coset_decomposition(p, q, n)?.coefficient(&target))))
        .collect()
}

/// Expands a coset decomposition into a function on `G_n`.
pub fn expand(decomposition: &CosetAlgebraElement, n: usize) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(n);
    for (class, c) in decomposition.iter() {
        out = out.plus(&coset_element(class, n)?.scaled(c));
    }
    Ok(out)
}

/// Whether every coefficient has a denominator dividing `m!`.
pub fn denominators_divide_factorial(x: &CosetAlgebraElement, m: usize) -> bool {
    let f = factorial(m);
    x.iter().all(|(_, c)| (&f % c.denom()).is_zero())
}
