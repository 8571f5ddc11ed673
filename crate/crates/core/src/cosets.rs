//! The category of double cosets `K[α] \ G / K[β]`.
//!
//! Objects are label counts; a morphism from `β` to `α` is a
//! [`LabeledSurface`] with `α` black and `β` white labels. Composition is
//! computed two ways: algebraically, as the stable class of
//! `p · Θ_j[β] · q` for large `j`, and geometrically, by gluing labelled
//! triangles of an explicit cell complex.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::surface::{build_surface, canonical_form, triple_of, CompletelyLabeledSurface, Edge, LabeledSurface, Triple};

/// A morphism of the category; the canonical representative is the
/// labelled surface itself.
pub type DoubleCoset = LabeledSurface;

/// The involution fixing `0..beta` and swapping the blocks
/// `beta..beta+j` and `beta+j..beta+2j`. Its degree is `beta + 2j`.
pub fn theta(j: usize, beta: usize) -> Permutation {
    let images: Vec<usize> = (0..beta)
        .chain(beta + j..beta + 2 * j)
        .chain(beta..beta + j)
        .collect();
    Permutation::from_images(&images).expect("block swap is a bijection")
}

fn check_inner(p_beta: usize, q_alpha: usize) -> Result<()> {
    if p_beta != q_alpha {
        return Err(Error::LabelMismatch {
            left: p_beta,
            right: q_alpha,
        });
    }
    Ok(())
}

/// Class of `p · Θ_j[beta] · q` in `K[alpha] \ G / K[gamma]`, with both
/// representatives padded to degree `beta + 2j`.
pub fn shifted_product(p: &Triple, q: &Triple, alpha: usize, beta: usize, gamma: usize, j: usize) -> Result<LabeledSurface> {
    let n = (beta + 2 * j).max(p.n()).max(q.n());
    let th = Triple::diagonal(&theta(j, beta)).padded(n);
    let product = p.padded(n).compose(&th).compose(&q.padded(n));
    canonical_form(&product, alpha, gamma)
}

/// `⊛` on arbitrary representatives. The shift starts at the larger degree
/// of the two representatives and the result is checked against the next
/// shift.
pub fn circledast_reps(p: &Triple, q: &Triple, alpha: usize, beta: usize, gamma: usize) -> Result<LabeledSurface> {
    let j = p.n().max(q.n()).max(1);
    let first = shifted_product(p, q, alpha, beta, gamma, j)?;
    let second = shifted_product(p, q, alpha, beta, gamma, j + 1)?;
    if first != second {
        return Err(Error::Unstable { j, next: j + 1 });
    }
    Ok(first)
}

/// The product `p ⊛ q` of `p: β → α` and `q: γ → β`.
pub fn circledast(p: &DoubleCoset, q: &DoubleCoset) -> Result<DoubleCoset> {
    check_inner(p.beta(), q.alpha())?;
    circledast_reps(p.triple(), q.triple(), p.alpha(), p.beta(), q.beta())
}

/// The glued complex: `q`'s labelled black triangle `i` and `p`'s labelled
/// white triangle `i` are removed for `i < beta`, and the edges that bounded
/// them are joined colour by colour.
///
/// New white labels: `q`'s whites first, then `p`'s unglued whites. New
/// black labels: `p`'s blacks first, then `q`'s unglued blacks.
pub fn glue_complexes(
    p: &CompletelyLabeledSurface,
    q: &CompletelyLabeledSurface,
    beta: usize,
) -> Result<CompletelyLabeledSurface> {
    let (np, nq) = (p.n(), q.n());
    if beta > np || beta > nq {
        return Err(Error::TooManyLabels {
            labels: beta,
            degree: np.min(nq),
        });
    }
    // black of p across each colour of each glued white
    let mut p_black = vec![[0usize; 3]; beta];
    let mut edges = Vec::with_capacity(3 * (np + nq - beta));
    for e in p.edges() {
        if e.white < beta {
            p_black[e.white][e.color.index()] = e.black;
        } else {
            edges.push(Edge {
                color: e.color,
                white: nq + e.white - beta,
                black: e.black,
            });
        }
    }
    for e in q.edges() {
        let black = if e.black < beta {
            p_black[e.black][e.color.index()]
        } else {
            np + e.black - beta
        };
        edges.push(Edge {
            color: e.color,
            white: e.white,
            black,
        });
    }
    CompletelyLabeledSurface::from_edges(np + nq - beta, edges)
}

/// `P ⊛ Q` by explicit gluing of cell complexes.
pub fn concat_geometric(p: &LabeledSurface, q: &LabeledSurface) -> Result<LabeledSurface> {
    check_inner(p.beta(), q.alpha())?;
    let glued = glue_complexes(&build_surface(p.triple()), &build_surface(q.triple()), p.beta())?;
    canonical_form(&triple_of(&glued)?, p.alpha(), q.beta())
}

/// The involution `p ↦ p*`: reverse the surface, swapping which triangles
/// carry the labels.
pub fn star(p: &DoubleCoset) -> DoubleCoset {
    canonical_form(&p.triple().reverse(), p.beta(), p.alpha()).expect("labels fit the reversed surface")
}

/// The identity morphism of the object `beta`.
pub fn identity(beta: usize) -> DoubleCoset {
    LabeledSurface::identity(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_coset, random_permutation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coset(rng: &mut ChaCha8Rng, max_n: usize, alpha: usize, beta: usize) -> LabeledSurface {
        let n = rng.gen_range(0..=max_n);
        random_coset(rng, n, alpha, beta)
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(1, 0), p("(1 2)"));
        assert_eq!(theta(2, 1), p("(2 4)(3 5)"));
        assert_eq!(theta(2, 1).deg(), 5);
        for j in 1..=4 {
            for beta in 0..=3 {
                let t = theta(j, beta);
                assert!(t.compose(&t).is_identity());
                assert!((0..beta).all(|x| t.apply(x) == x));
            }
        }
    }

    #[test]
    fn unlabelled_product_is_disjoint_union() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = coset(&mut rng, 4, 0, 0);
            let b = coset(&mut rng, 4, 0, 0);
            let union = canonical_form(&a.triple().disjoint_union(b.triple()), 0, 0).unwrap();
            assert_eq!(circledast(&a, &b).unwrap(), union);
            assert_eq!(concat_geometric(&a, &b).unwrap(), union);
        }
    }

    #[test]
    fn gluing_two_double_triangles() {
        let dt_white = canonical_form(&Triple::identity(1), 0, 1).unwrap();
        let dt_black = canonical_form(&Triple::identity(1), 1, 0).unwrap();
        let glued = glue_complexes(&build_surface(dt_white.triple()), &build_surface(dt_black.triple()), 1).unwrap();
        assert_eq!(glued.n(), 1);
        assert_eq!(triple_of(&glued).unwrap(), Triple::identity(1));
        // keeping the outer labels shows the surviving double triangle
        let id = identity(1);
        assert_eq!(concat_geometric(&id, &id).unwrap(), id);
        assert_eq!(circledast(&id, &id).unwrap(), id);
        // without outer labels it is stripped
        assert_eq!(circledast(&dt_white, &dt_black).unwrap(), LabeledSurface::empty());
    }

    #[test]
    fn mismatched_labels_rejected() {
        let a = identity(1);
        let b = identity(2);
        assert!(matches!(circledast(&a, &b), Err(Error::LabelMismatch { .. })));
        assert!(matches!(concat_geometric(&a, &b), Err(Error::LabelMismatch { .. })));
    }

    #[test]
    fn unit_laws_exhaustive_small() {
        for n in 0..=3 {
            for alpha in 0..=n.min(2) {
                for beta in 0..=n.min(2) {
                    for b in Permutation::all(n) {
                        for r in Permutation::all(n) {
                            let s = canonical_form(&Triple::with_degree(n, b.clone(), r.clone(), Permutation::identity(n)).unwrap(), alpha, beta).unwrap();
                            assert_eq!(circledast(&s, &identity(beta)).unwrap(), s);
                            assert_eq!(circledast(&identity(alpha), &s).unwrap(), s);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stable_over_three_shifts_and_representatives() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (a, b, c) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
            let x = coset(&mut rng, 5, a, b);
            let y = coset(&mut rng, 5, b, c);
            let j = x.pairs().max(y.pairs()).max(1);
            let values: Vec<_> = (j..j + 3)
                .map(|j| shifted_product(x.triple(), y.triple(), a, b, c, j).unwrap())
                .collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]));
            // other representatives of the same cosets
            let n = x.pairs().max(y.pairs()) + 2;
            let xr = x.triple().padded(n).relabel(&random_permutation(&mut rng, n, a), &random_permutation(&mut rng, n, b));
            let yr = y.triple().padded(n).relabel(&random_permutation(&mut rng, n, b), &random_permutation(&mut rng, n, c));
            assert_eq!(circledast_reps(&xr, &yr, a, b, c).unwrap(), values[0]);
        }
    }

    #[test]
    fn geometric_matches_algebraic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (a, b, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
            let x = coset(&mut rng, 6, a, b);
            let y = coset(&mut rng, 6, b, c);
            assert_eq!(concat_geometric(&x, &y).unwrap(), circledast(&x, &y).unwrap());
        }
    }

    #[test]
    fn associativity_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let l: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
            let x = coset(&mut rng, 5, l[0], l[1]);
            let y = coset(&mut rng, 5, l[1], l[2]);
            let z = coset(&mut rng, 5, l[2], l[3]);
            let left = circledast(&circledast(&x, &y).unwrap(), &z).unwrap();
            let right = circledast(&x, &circledast(&y, &z).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(star(&star(&x)), x);
            assert_eq!(star(&circledast(&x, &y).unwrap()), circledast(&star(&y), &star(&x)).unwrap());
        }
        for beta in 0..4 {
            assert_eq!(star(&identity(beta)), identity(beta));
        }
    }
}
