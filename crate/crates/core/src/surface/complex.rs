//! Explicit cell complexes: triangles, coloured edges and vertices.
//!
//! This is the geometric side of the dictionary. It never consults the
//! vertex permutations; vertices are found by identifying triangle corners
//! across shared edges, which makes it an independent check on the
//! cycle-counting formulas.

use super::{Color, Triple};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A coloured edge between white triangle `white` and black triangle `black`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub color: Color,
    pub white: usize,
    pub black: usize,
}

/// Triangles `W_0..W_{n-1}`, `B_0..B_{n-1}` and their coloured edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletelyLabeledSurface {
    n: usize,
    edges: Vec<Edge>,
}

/// Per-component cell counts of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCounts {
    pub whites: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl CellCounts {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

/// Glues `W_j` to `B_{c(j)}` along the `c`-side for every colour.
pub fn build_surface(t: &Triple) -> CompletelyLabeledSurface {
    let mut edges = Vec::with_capacity(3 * t.n());
    for color in Color::ALL {
        for j in 0..t.n() {
            edges.push(Edge {
                color,
                white: j,
                black: t.get(color).apply(j),
            });
        }
    }
    CompletelyLabeledSurface { n: t.n(), edges }
}

/// Reads the triple back: the colour-`c` permutation sends the white label
/// of each `c`-edge to its black label.
pub fn triple_of(s: &CompletelyLabeledSurface) -> Result<Triple> {
    s.validate()?;
    let mut images = [vec![0; s.n], vec![0; s.n], vec![0; s.n]];
    for e in &s.edges {
        images[e.color.index()][e.white] = e.black;
    }
    let [b, r, y] = images.map(|v| Permutation::from_images(&v));
    Triple::with_degree(s.n, b?, r?, y?)
}

impl CompletelyLabeledSurface {
    /// A complex from an explicit edge list; checked by [`Self::validate`].
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let s = CompletelyLabeledSurface { n, edges };
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangle_count(&self) -> usize {
        2 * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Every triangle must have exactly one edge of each colour.
    pub fn validate(&self) -> Result<()> {
        let mut white_seen = vec![[false; 3]; self.n];
        let mut black_seen = vec![[false; 3]; self.n];
        for e in &self.edges {
            if e.white >= self.n || e.black >= self.n {
                return Err(Error::MalformedComplex(format!("edge {e:?} leaves 0..{}", self.n)));
            }
            let c = e.color.index();
            if std::mem::replace(&mut white_seen[e.white][c], true) {
                return Err(Error::MalformedComplex(format!(
                    "white triangle {} has two {:?} edges",
                    e.white + 1,
                    e.color
                )));
            }
            if std::mem::replace(&mut black_seen[e.black][c], true) {
                return Err(Error::MalformedComplex(format!(
                    "black triangle {} has two {:?} edges",
                    e.black + 1,
                    e.color
                )));
            }
        }
        if self.edges.len() != 3 * self.n {
            return Err(Error::MalformedComplex(format!(
                "{} edges for {} triangle pairs",
                self.edges.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Vertex, edge and face counts per connected component, found by
    /// identifying corners across edges. Components are listed by their
    /// minimal white triangle.
    pub fn cell_counts(&self) -> Vec<CellCounts> {
        let n = self.n;
        // triangles: whites 0..n, blacks n..2n; corner (tri, colour) -> 3*tri + colour
        let mut corners = UnionFind::new(6 * n);
        let mut triangles = UnionFind::new(2 * n);
        for e in &self.edges {
            let (w, b) = (e.white, n + e.black);
            triangles.union(w, b);
            for other in Color::ALL {
                if other != e.color {
                    corners.union(3 * w + other.index(), 3 * b + other.index());
                }
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|w| triangles.find(w)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut out: Vec<CellCounts> = Vec::new();
        for root in roots {
            let whites: Vec<usize> = (0..n).filter(|&w| triangles.find(w) == root).collect();
            let mut vertex_ids: Vec<usize> = (0..2 * n)
                .filter(|&tri| triangles.find(tri) == root)
                .flat_map(|tri| (0..3).map(move |c| 3 * tri + c))
                .map(|corner| corners.find(corner))
                .collect();
            vertex_ids.sort_unstable();
            vertex_ids.dedup();
            let edges = self.edges.iter().filter(|e| triangles.find(e.white) == root).count();
            out.push(CellCounts {
                faces: 2 * whites.len(),
                whites,
                vertices: vertex_ids.len(),
                edges,
            });
        }
        out.sort_by_key(|c| c.whites[0]);
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_triple;
    use crate::surface::tests::t;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_triples_are_double_triangles() {
        for n in [1, 3] {
            let s = build_surface(&Triple::identity(n));
            assert_eq!(s.triangle_count(), 2 * n);
            assert_eq!(s.edge_count(), 3 * n);
            let counts = s.cell_counts();
            assert_eq!(counts.len(), n);
            for c in counts {
                assert_eq!((c.vertices, c.edges, c.faces), (3, 3, 2));
            }
        }
    }

    #[test]
    fn transposition_is_a_sphere() {
        let s = build_surface(&t("(1 2)", "", "", 2));
        let counts = s.cell_counts();
        assert_eq!(counts.len(), 1);
        let c = &counts[0];
        assert_eq!((c.vertices, c.edges, c.faces), (4, 6, 4));
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn round_trip_small() {
        let id = Triple::identity(2);
        assert_eq!(triple_of(&build_surface(&id)).unwrap(), id);
        // a double triangle with labels (white 1, black 1) is the identity on one point
        let dt = CompletelyLabeledSurface::from_edges(
            1,
            Color::ALL.iter().map(|&color| Edge { color, white: 0, black: 0 }).collect(),
        )
        .unwrap();
        assert_eq!(triple_of(&dt).unwrap(), Triple::identity(1));
    }

    #[test]
    fn round_trip_exhaustive_s3() {
        let all: Vec<Permutation> = Permutation::all(3).collect();
        let mut count = 0;
        for b in &all {
            for r in &all {
                for y in &all {
                    let s = Triple::new(b.clone(), r.clone(), y.clone());
                    assert_eq!(triple_of(&build_surface(&s)).unwrap(), s);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 216);
    }

    #[test]
    fn malformed_complexes_rejected() {
        let edges = vec![
            Edge { color: Color::Blue, white: 0, black: 0 },
            Edge { color: Color::Blue, white: 0, black: 0 },
            Edge { color: Color::Red, white: 0, black: 0 },
        ];
        assert!(CompletelyLabeledSurface::from_edges(1, edges).is_err());
        let short = vec![Edge { color: Color::Blue, white: 0, black: 0 }];
        assert!(CompletelyLabeledSurface::from_edges(1, short).is_err());
        let out_of_range = vec![Edge { color: Color::Blue, white: 3, black: 0 }];
        assert!(CompletelyLabeledSurface::from_edges(1, out_of_range).is_err());
    }

    #[test]
    fn formula_matches_explicit_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=8);
            let s = random_triple(&mut rng, n);
            let counts = build_surface(&s).cell_counts();
            let comps = s.components();
            assert_eq!(counts.len(), comps.len());
            for (c, comp) in counts.iter().zip(&comps) {
                assert_eq!(&c.whites, comp);
                assert_eq!(c.euler_characteristic(), s.euler_characteristic(comp).unwrap());
            }
        }
    }
}
