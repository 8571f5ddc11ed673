//! The filtered algebra spanned by all finite checker surfaces, double
//! triangles included, with projections onto the class algebras of
//! `Q_m = S_m × S_m` and the induced Poisson bracket on its associated
//! graded algebra.
//!
//! A surface with `k` triangle pairs is an orbit of pairs `(g₁, g₂) ∈ S_k²`
//! under simultaneous conjugation; the pair `(g₁, g₂)` is the triple
//! `(g₁, g₂, id)`. Products glue white triangles of the left factor to black
//! triangles of the right factor along partial bijections.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::convolution::GroupAlgebraElement;
use crate::cosets::glue_complexes;
use crate::error::{Error, Result};
use crate::lincomb::{integer, LinComb};
use crate::perm::Permutation;
use crate::surface::{build_surface, triple_of, CheckerSurface, Triple};

/// A linear combination of surfaces `Σ c_p u_p`.
pub type IKElement = LinComb<CheckerSurface>;

/// Injective map from some white triangles of one surface to black
/// triangles of another, as `(white, black)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    pairs: Vec<(usize, usize)>,
}

impl PartialBijection {
    /// Fails unless both coordinates are injective and within bounds.
    pub fn new(pairs: Vec<(usize, usize)>, whites: usize, blacks: usize) -> Result<Self> {
        let mut seen_w = HashSet::new();
        let mut seen_b = HashSet::new();
        for &(w, b) in &pairs {
            if w >= whites || b >= blacks || !seen_w.insert(w) || !seen_b.insert(b) {
                return Err(Error::InvalidPermutation(format!("not a partial bijection: {pairs:?}")));
            }
        }
        Ok(PartialBijection { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// All partial bijections from `0..whites` to `0..blacks`, or only those of
/// size `size` when given.
pub fn partial_bijections(whites: usize, blacks: usize, size: Option<usize>) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    let sizes = match size {
        Some(s) if s <= whites.min(blacks) => s..=s,
        Some(_) => return out,
        None => 0..=whites.min(blacks),
    };
    for j in sizes {
        for domain in subsets(whites, j) {
            for image in arrangements(blacks, j) {
                out.push(PartialBijection {
                    pairs: domain.iter().copied().zip(image).collect(),
                });
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, k, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

/// Permutation of `0..n` sending `first[i]` to `i` and the remaining points,
/// in increasing order, to `first.len()..n`.
fn front_loading(first: &[usize], n: usize) -> Permutation {
    let mut images = vec![usize::MAX; n];
    for (i, &x) in first.iter().enumerate() {
        images[x] = i;
    }
    let mut next = first.len();
    for x in images.iter_mut() {
        if *x == usize::MAX {
            *x = next;
            next += 1;
        }
    }
    Permutation::from_images(&images).expect("front loading is a bijection")
}

/// `p ⊙_s q`: for each `(w, b)` in `s`, white triangle `w` of `p` and black
/// triangle `b` of `q` are removed and the edges that bounded them joined.
pub fn glue(p: &Triple, q: &Triple, s: &PartialBijection) -> Result<CheckerSurface> {
    let (whites, blacks): (Vec<usize>, Vec<usize>) = s.pairs.iter().copied().unzip();
    let p = p.relabel(&Permutation::identity(p.n()), &front_loading(&whites, p.n()));
    let q = q.relabel(&front_loading(&blacks, q.n()), &Permutation::identity(q.n()));
    let glued = glue_complexes(&build_surface(&p), &build_surface(&q), s.len())?;
    Ok(CheckerSurface::new(&triple_of(&glued)?))
}

fn glue_all(p: &CheckerSurface, q: &CheckerSurface, size: Option<usize>) -> IKElement {
    let (pt, qt) = (p.triple(), q.triple());
    partial_bijections(pt.n(), qt.n(), size)
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<CheckerSurface, u64>, s| {
            *acc.entry(glue(pt, qt, s).expect("partial bijection fits")).or_default() += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
        .into_iter()
        .map(|(r, k)| (r, integer(k)))
        .collect()
}

/// `u_p ∘ u_q = Σ_s u_{p ⊙_s q}` over all partial bijections `s` from white
/// triangles of `p` to black triangles of `q`.
pub fn ik_product(p: &CheckerSurface, q: &CheckerSurface) -> IKElement {
    glue_all(p, q, None)
}

pub fn ik_product_elements(x: &IKElement, y: &IKElement) -> IKElement {
    x.bilinear(y, ik_product)
}

/// Product in the associated graded algebra: disjoint union.
pub fn graded_product(p: &CheckerSurface, q: &CheckerSurface) -> CheckerSurface {
    p.disjoint_union(q)
}

pub fn graded_product_elements(x: &IKElement, y: &IKElement) -> IKElement {
    x.bilinear(y, |p, q| LinComb::basis(graded_product(p, q)))
}

/// `{u_p, u_q}`: single-triangle gluings of `p` onto `q` minus those of `q`
/// onto `p`.
pub fn poisson_bracket(p: &CheckerSurface, q: &CheckerSurface) -> IKElement {
    glue_all(p, q, Some(1)).minus(&glue_all(q, p, Some(1)))
}

pub fn poisson_bracket_elements(x: &IKElement, y: &IKElement) -> IKElement {
    x.bilinear(y, poisson_bracket)
}

/// Terms with exactly `pairs` triangle pairs.
pub fn graded_piece(x: &IKElement, pairs: usize) -> IKElement {
    x.filtered(|r| r.pairs() == pairs)
}

/// Largest number of triangle pairs in `x` (0 for the zero element).
pub fn filtration_degree(x: &IKElement) -> usize {
    x.keys().map(CheckerSurface::pairs).max().unwrap_or(0)
}

/// The representative `(blue·yellow⁻¹, red·yellow⁻¹, id)` of a surface.
pub fn pair_form(t: &Triple) -> Triple {
    t.relabel(&Permutation::identity(t.n()), t.yellow())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Multiplicity of each element of the class of `p(m)` in `Π_m(u_p)`:
/// `|Aut(p)| · C(m−k+f, f)` with `k` triangle pairs and `f` double-triangle
/// components.
pub fn lift_constant(p: &CheckerSurface, m: usize) -> Result<BigUint> {
    let k = p.pairs();
    if m < k {
        return Err(Error::DegreeTooSmall { requested: m, needed: k });
    }
    let f = p.double_triangle_count();
    let binom = factorial(m - k + f) / (factorial(f) * factorial(m - k));
    Ok(p.automorphism_count() * binom)
}

/// `Π_m(u_p)`: the class sum of `p` padded to `m` pairs, weighted by
/// [`lift_constant`]. Equivalently `Σ_ι δ_{ι g ι⁻¹}` over injections
/// `ι: 0..k → 0..m`.
pub fn lift(p: &CheckerSurface, m: usize) -> Result<GroupAlgebraElement> {
    let c = BigRational::from_integer(BigInt::from(lift_constant(p, m)?));
    let g = pair_form(p.triple()).padded(m);
    let class: HashSet<Triple> = Permutation::all(m).map(|h| g.conjugate(&h).padded(m)).collect();
    let terms = class.into_iter().map(|t| (t, c.clone())).collect();
    Ok(GroupAlgebraElement::from_terms(m, terms))
}

/// `Σ_ι δ_{ι g ι⁻¹}` by enumerating the injections directly.
pub fn lift_by_embeddings(p: &CheckerSurface, m: usize) -> Result<GroupAlgebraElement> {
    let k = p.pairs();
    if m < k {
        return Err(Error::DegreeTooSmall { requested: m, needed: k });
    }
    let g = pair_form(p.triple());
    let mut terms = LinComb::zero();
    for image in arrangements(m, k) {
        let mut b = (0..m).collect::<Vec<_>>();
        let mut r = b.clone();
        for (x, &ix) in image.iter().enumerate() {
            b[ix] = image[g.blue().apply(x)];
            r[ix] = image[g.red().apply(x)];
        }
        let t = Triple::with_degree(
            m,
            Permutation::from_images(&b)?,
            Permutation::from_images(&r)?,
            Permutation::identity(m),
        )?;
        terms.add_term(t, integer(1));
    }
    Ok(GroupAlgebraElement::from_terms(m, terms))
}

/// `Π_n(x)`; surfaces with more than `n` pairs map to zero.
pub fn project(x: &IKElement, n: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(n);
    for (p, c) in x.iter() {
        if p.pairs() <= n {
            out = out.plus(&lift(p, n).expect("fits").scaled(c));
        }
    }
    out
}

/// Every canonical surface with exactly `k` triangle pairs.
pub fn surfaces_with_pairs(k: usize) -> Vec<CheckerSurface> {
    let all: Vec<Permutation> = Permutation::all(k).collect();
    let set: HashSet<CheckerSurface> = all
        .par_iter()
        .flat_map_iter(|b| {
            all.iter().map(move |r| {
                CheckerSurface::new(&Triple::with_degree(k, b.clone(), r.clone(), Permutation::identity(k)).expect("degree k"))
            })
        })
        .collect();
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}
