//! Permutation triples and the checker surfaces they glue.
//!
//! A [`Triple`] `(blue, red, yellow)` of permutations of `0..n` describes a
//! surface made of `n` white triangles `W_j` and `n` black triangles `B_j`:
//! for each colour `c`, `W_j` is glued to `B_{c(j)}` along its `c`-coloured
//! side. Vertices, components and the Euler characteristic are read off from
//! cycles of the three "vertex permutations":
//!
//! | vertex colour | incident edges | permutation      |
//! |---------------|----------------|------------------|
//! | blue          | red, yellow    | `yellow⁻¹ ∘ red`  |
//! | red           | blue, yellow   | `yellow⁻¹ ∘ blue` |
//! | yellow        | blue, red      | `red⁻¹ ∘ blue`    |

mod canonical;
mod complex;
mod dessin;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use canonical::{canonical_form, canonical_labeling, CanonicalLabeling};
pub use complex::{build_surface, triple_of, CellCounts, CompletelyLabeledSurface, Edge};
pub use dessin::{to_dessin, Dessin, DessinEdge};

/// Edge colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
    Yellow,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Blue, Color::Red, Color::Yellow];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// An element of `S_n × S_n × S_n`.
///
/// Equality and hashing compare the three permutations as elements of the
/// infinite symmetric group; the ambient degree `n` is bookkeeping for the
/// number of triangles.
#[derive(Clone)]
pub struct Triple {
    n: usize,
    perms: [Permutation; 3],
}

impl Triple {
    /// Pads all three permutations to their common maximal degree.
    pub fn new(blue: Permutation, red: Permutation, yellow: Permutation) -> Self {
        let n = blue.deg().max(red.deg()).max(yellow.deg());
        Triple {
            n,
            perms: [blue.padded(n), red.padded(n), yellow.padded(n)],
        }
    }

    /// A triple at an explicit degree, failing if a permutation moves a
    /// point at or beyond `n`.
    pub fn with_degree(n: usize, blue: Permutation, red: Permutation, yellow: Permutation) -> Result<Self> {
        Ok(Triple {
            n,
            perms: [blue.truncated(n)?, red.truncated(n)?, yellow.truncated(n)?],
        })
    }

    pub fn identity(n: usize) -> Self {
        let id = Permutation::identity(n);
        Triple {
            n,
            perms: [id.clone(), id.clone(), id],
        }
    }

    /// Diagonal element `(h, h, h)`.
    pub fn diagonal(h: &Permutation) -> Self {
        Triple::new(h.clone(), h.clone(), h.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blue(&self) -> &Permutation {
        &self.perms[0]
    }

    pub fn red(&self) -> &Permutation {
        &self.perms[1]
    }

    pub fn yellow(&self) -> &Permutation {
        &self.perms[2]
    }

    pub fn get(&self, color: Color) -> &Permutation {
        &self.perms[color.index()]
    }

    pub fn padded(&self, n: usize) -> Triple {
        let n = n.max(self.n);
        Triple {
            n,
            perms: self.perms.clone().map(|p| p.padded(n)),
        }
    }

    /// Group product in `G_n`: componentwise composition.
    pub fn compose(&self, other: &Triple) -> Triple {
        let n = self.n.max(other.n);
        Triple {
            n,
            perms: [0, 1, 2].map(|i| self.perms[i].compose(&other.perms[i]).padded(n)),
        }
    }

    /// Componentwise inverse: swaps white and black triangles and reverses
    /// the orientation of every component.
    pub fn reverse(&self) -> Triple {
        Triple {
            n: self.n,
            perms: self.perms.clone().map(|p| p.inverse()),
        }
    }

    /// `h · self · h'⁻¹` for diagonal `h = (left, left, left)` and
    /// `h' = (right, right, right)`: relabels black triangles by `left` and
    /// white triangles by `right`.
    pub fn relabel(&self, left: &Permutation, right: &Permutation) -> Triple {
        let right_inv = right.inverse();
        let n = self.n.max(left.deg()).max(right.deg());
        Triple {
            n,
            perms: self
                .perms
                .clone()
                .map(|p| left.compose(&p).compose(&right_inv).padded(n)),
        }
    }

    /// Simultaneous conjugation `h · self · h⁻¹`.
    pub fn conjugate(&self, h: &Permutation) -> Triple {
        self.relabel(h, h)
    }

    /// Disjoint union: `other`'s labels are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Triple) -> Triple {
        let n = self.n + other.n;
        let perms = [0, 1, 2].map(|i| {
            let images: Vec<usize> = self.perms[i]
                .images()
                .chain(other.perms[i].images().map(|x| x + self.n))
                .collect();
            Permutation::from_images(&images).expect("disjoint union of bijections")
        });
        Triple { n, perms }
    }

    /// Vertex permutation whose cycles are the vertices of `color`.
    pub fn vertex_permutation(&self, color: Color) -> Permutation {
        let (first, second) = match color {
            Color::Blue => (self.yellow(), self.red()),
            Color::Red => (self.yellow(), self.blue()),
            Color::Yellow => (self.red(), self.blue()),
        };
        first.inverse().compose(second).padded(self.n)
    }

    /// Connected components as sets of white labels: orbits of the group
    /// generated by `yellow⁻¹∘blue` and `yellow⁻¹∘red`, each sorted, ordered
    /// by minimal element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let gens = [
            self.vertex_permutation(Color::Red),
            self.vertex_permutation(Color::Blue),
        ];
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &gens {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Euler characteristic of one component:
    /// `−#comp + cyc(yellow⁻¹blue) + cyc(yellow⁻¹red) + cyc(red⁻¹blue)`.
    pub fn euler_characteristic(&self, component: &[usize]) -> Result<i64> {
        let mut sorted = component.to_vec();
        sorted.sort_unstable();
        if !self.components().contains(&sorted) {
            return Err(Error::NotAComponent(sorted.iter().map(|x| x + 1).collect()));
        }
        let mut chi = -(sorted.len() as i64);
        for color in Color::ALL {
            chi += self.vertex_permutation(color).cycles(&sorted)?.len() as i64;
        }
        Ok(chi)
    }

    pub fn vertex_census(&self) -> VertexCensus {
        let lengths = |c| {
            self.vertex_permutation(c)
                .all_cycles()
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>()
        };
        VertexCensus {
            blue: lengths(Color::Blue),
            red: lengths(Color::Red),
            yellow: lengths(Color::Yellow),
        }
    }

    /// Per-component Euler characteristic and genus.
    pub fn component_summaries(&self) -> Vec<ComponentSummary> {
        self.components()
            .into_iter()
            .map(|points| {
                let chi = self.euler_characteristic(&points).expect("own component");
                let genus = genus(chi).expect("closed oriented component");
                ComponentSummary { points, chi, genus }
            })
            .collect()
    }

    /// Number of components that are double triangles (`n = 1` components).
    pub fn double_triangle_count(&self) -> usize {
        // W_j glued to a single black triangle along all three sides
        (0..self.n)
            .filter(|&j| {
                let k = self.blue().apply(j);
                self.red().apply(j) == k && self.yellow().apply(j) == k
            })
            .count()
    }

    /// Comparison key.
    fn key(&self) -> [&Permutation; 3] {
        [&self.perms[0], &self.perms[1], &self.perms[2]]
    }
}

impl PartialEq for Triple {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Triple {}

impl Hash for Triple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triple[{}]({}, {}, {})", self.n, self.perms[0], self.perms[1], self.perms[2])
    }
}

/// Cycle lengths of the three vertex permutations. A vertex coming from a
/// cycle of length `l` has order `2l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCensus {
    pub blue: Vec<usize>,
    pub red: Vec<usize>,
    pub yellow: Vec<usize>,
}

impl VertexCensus {
    pub fn total(&self) -> usize {
        self.blue.len() + self.red.len() + self.yellow.len()
    }

    pub fn orders(lengths: &[usize]) -> Vec<usize> {
        lengths.iter().map(|l| 2 * l).collect()
    }

    /// Census restricted to one component, sorted for comparison.
    pub fn sorted(&self) -> VertexCensus {
        let s = |v: &Vec<usize>| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        };
        VertexCensus {
            blue: s(&self.blue),
            red: s(&self.red),
            yellow: s(&self.yellow),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// White labels of the component.
    pub points: Vec<usize>,
    pub chi: i64,
    pub genus: usize,
}

/// `g = (2 − χ)/2` for a closed oriented connected surface.
pub fn genus(chi: i64) -> Result<usize> {
    if chi > 2 || chi.rem_euclid(2) != 0 {
        return Err(Error::InvalidEulerCharacteristic(chi));
    }
    Ok(((2 - chi) / 2) as usize)
}

/// A checker surface: the class of a triple up to independent relabeling of
/// white and black triangles, stored as its canonical triple. Double
/// triangles are kept, so the number of triangle pairs is significant.
#[derive(Clone)]
pub struct CheckerSurface {
    triple: Triple,
}

impl CheckerSurface {
    pub fn new(t: &Triple) -> Self {
        CheckerSurface {
            triple: canonical_labeling(t, 0, 0, false).triple,
        }
    }

    pub fn empty() -> Self {
        CheckerSurface {
            triple: Triple::identity(0),
        }
    }

    /// A sphere made of one white and one black triangle sharing all sides.
    pub fn double_triangle() -> Self {
        CheckerSurface {
            triple: Triple::identity(1),
        }
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    /// Number of triangle pairs (`2·pairs` triangles).
    pub fn pairs(&self) -> usize {
        self.triple.n
    }

    pub fn double_triangle_count(&self) -> usize {
        self.triple.double_triangle_count()
    }

    /// Number of colour- and orientation-preserving self-maps.
    pub fn automorphism_count(&self) -> BigUint {
        canonical_labeling(&self.triple, 0, 0, false).automorphisms
    }

    pub fn disjoint_union(&self, other: &CheckerSurface) -> CheckerSurface {
        CheckerSurface::new(&self.triple.disjoint_union(&other.triple))
    }

    /// Adds double triangles up to `n` triangle pairs.
    pub fn padded(&self, n: usize) -> CheckerSurface {
        CheckerSurface::new(&self.triple.padded(n))
    }

    pub fn reverse(&self) -> CheckerSurface {
        CheckerSurface::new(&self.triple.reverse())
    }

    pub fn component_summaries(&self) -> Vec<ComponentSummary> {
        self.triple.component_summaries()
    }

    pub fn vertex_census(&self) -> VertexCensus {
        self.triple.vertex_census()
    }
}

impl PartialEq for CheckerSurface {
    fn eq(&self, other: &Self) -> bool {
        self.triple.n == other.triple.n && self.triple == other.triple
    }
}

impl Eq for CheckerSurface {}

impl Hash for CheckerSurface {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.triple.n.hash(state);
        self.triple.hash(state);
    }
}

impl PartialOrd for CheckerSurface {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CheckerSurface {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.triple.n, &self.triple).cmp(&(other.triple.n, &other.triple))
    }
}

impl fmt::Debug for CheckerSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surface{:?}", self.triple)
    }
}

/// A checker surface with black triangles `0..alpha` and white triangles
/// `0..beta` labelled, and every unlabelled double-triangle component
/// removed. Represents a double coset `K[alpha] \ G / K[beta]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledSurface {
    alpha: usize,
    beta: usize,
    n: usize,
    triple: Triple,
}

impl LabeledSurface {
    pub(crate) fn from_canonical(alpha: usize, beta: usize, triple: Triple) -> Self {
        LabeledSurface {
            alpha,
            beta,
            n: triple.n,
            triple,
        }
    }

    /// Number of black labels.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Number of white labels.
    pub fn beta(&self) -> usize {
        self.beta
    }

    /// Canonical representative; its degree is the number of triangle pairs.
    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn pairs(&self) -> usize {
        self.n
    }

    /// The empty surface with no labels.
    pub fn empty() -> Self {
        Self::from_canonical(0, 0, Triple::identity(0))
    }

    /// Identity morphism of the object `beta`: `beta` double triangles, each
    /// carrying the same label on both sides.
    pub fn identity(beta: usize) -> Self {
        Self::from_canonical(beta, beta, Triple::identity(beta))
    }
}

impl fmt::Debug for LabeledSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeled[α={}, β={}]{:?}", self.alpha, self.beta, self.triple)
    }
}
