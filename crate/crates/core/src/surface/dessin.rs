//! Dessins d'enfant: keep the blue edges and the red and yellow vertices.

use std::fmt::Write as _;

use super::complex::UnionFind;
use super::{Color, Triple};

/// Blue edge `index` (the blue side of white triangle `index`) joining a red
/// and a yellow vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DessinEdge {
    pub index: usize,
    pub red: usize,
    pub yellow: usize,
}

/// A bipartite ribbon graph. Each rotation lists the edges around a vertex
/// in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dessin {
    pub red_rotations: Vec<Vec<usize>>,
    pub yellow_rotations: Vec<Vec<usize>>,
    pub edges: Vec<DessinEdge>,
}

pub fn to_dessin(t: &Triple) -> Dessin {
    let red_rotations = t.vertex_permutation(Color::Red).all_cycles();
    let yellow_rotations = t.vertex_permutation(Color::Yellow).all_cycles();
    let mut edges: Vec<DessinEdge> = (0..t.n())
        .map(|index| DessinEdge { index, red: 0, yellow: 0 })
        .collect();
    for (v, cycle) in red_rotations.iter().enumerate() {
        for &e in cycle {
            edges[e].red = v;
        }
    }
    for (v, cycle) in yellow_rotations.iter().enumerate() {
        for &e in cycle {
            edges[e].yellow = v;
        }
    }
    Dessin {
        red_rotations,
        yellow_rotations,
        edges,
    }
}

impl Dessin {
    fn rotation_successor(rotations: &[Vec<usize>], n: usize) -> Vec<usize> {
        let mut next = vec![0; n];
        for cycle in rotations {
            for (i, &e) in cycle.iter().enumerate() {
                next[e] = cycle[(i + 1) % cycle.len()];
            }
        }
        next
    }

    /// Faces as orbits of `yellow_rotation⁻¹ ∘ red_rotation` on edges.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.edges.len();
        let red = Self::rotation_successor(&self.red_rotations, n);
        let yellow = Self::rotation_successor(&self.yellow_rotations, n);
        let mut yellow_inv = vec![0; n];
        for (e, &f) in yellow.iter().enumerate() {
            yellow_inv[f] = e;
        }
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                face.push(e);
                e = yellow_inv[red[e]];
            }
            faces.push(face);
        }
        faces
    }

    /// `V − E + F` per connected component, components ordered by their
    /// smallest edge.
    pub fn euler_characteristics(&self) -> Vec<(Vec<usize>, i64)> {
        let reds = self.red_rotations.len();
        let mut uf = UnionFind::new(reds + self.yellow_rotations.len());
        for e in &self.edges {
            uf.union(e.red, reds + e.yellow);
        }
        let faces = self.faces();
        let mut comps: Vec<(usize, Vec<usize>, i64)> = Vec::new();
        for e in &self.edges {
            let root = uf.find(e.red);
            match comps.iter_mut().find(|(r, _, _)| *r == root) {
                Some((_, members, _)) => members.push(e.index),
                None => comps.push((root, vec![e.index], 0)),
            }
        }
        for (root, members, chi) in comps.iter_mut() {
            let red_v = (0..reds).filter(|&v| uf.find(v) == *root).count() as i64;
            let yellow_v = (0..self.yellow_rotations.len())
                .filter(|&v| uf.find(reds + v) == *root)
                .count() as i64;
            let f = faces.iter().filter(|face| members.contains(&face[0])).count() as i64;
            *chi = red_v + yellow_v - members.len() as i64 + f;
            members.sort_unstable();
        }
        comps.sort_by_key(|(_, m, _)| m[0]);
        comps.into_iter().map(|(_, m, chi)| (m, chi)).collect()
    }

    /// Graphviz rendering: red vertices as boxes, yellow vertices as circles,
    /// edges labelled by white triangle (1-based).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dessin {\n");
        for (v, rot) in self.red_rotations.iter().enumerate() {
            let order: Vec<String> = rot.iter().map(|e| (e + 1).to_string()).collect();
            let _ = writeln!(
                out,
                "  r{} [shape=box, color=red, label=\"r{} ({})\"];",
                v + 1,
                v + 1,
                order.join(" ")
            );
        }
        for (v, rot) in self.yellow_rotations.iter().enumerate() {
            let order: Vec<String> = rot.iter().map(|e| (e + 1).to_string()).collect();
            let _ = writeln!(
                out,
                "  y{} [shape=circle, color=gold, label=\"y{} ({})\"];",
                v + 1,
                v + 1,
                order.join(" ")
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  r{} -- y{} [color=blue, label=\"{}\"];",
                e.red + 1,
                e.yellow + 1,
                e.index + 1
            );
        }
        out.push_str("}\n");
        out
    }
}
