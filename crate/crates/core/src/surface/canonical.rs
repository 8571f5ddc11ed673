//! Canonical labeling of (partially) labelled checker surfaces.
//!
//! Triangle adjacency is rigid: every triangle has exactly one side of each
//! colour, so a colour-preserving isomorphism of a connected surface is
//! fixed by the image of a single triangle. A breadth-first walk from a root
//! therefore induces a labeling, and the minimum of the induced codes over
//! all white roots is an isomorphism invariant of the component.
//!
//! Components that carry a pinned label are walked from their pinned
//! triangles in label order; the rest are canonicalised independently and
//! sorted by (size descending, code), so padding double triangles always
//! lands at the end.

use std::cmp::Reverse;
use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;
use smallvec::SmallVec;

use super::{LabeledSurface, Triple};
use crate::perm::{Images, Permutation};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    White(usize),
    Black(usize),
}

/// Result of [`canonical_labeling`].
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    /// The relabelled (and possibly stripped) triple.
    pub triple: Triple,
    /// New label of each old white triangle, `None` if stripped.
    pub white: Vec<Option<usize>>,
    /// New label of each old black triangle, `None` if stripped.
    pub black: Vec<Option<usize>>,
    /// Size of the automorphism group of the unlabelled part (components
    /// carrying no pinned label), counting permutations of isomorphic
    /// components.
    pub automorphisms: BigUint,
}

struct Adjacency {
    n: usize,
    fwd: [Vec<usize>; 3],
    inv: [Vec<usize>; 3],
}

impl Adjacency {
    fn new(t: &Triple) -> Self {
        let fwd = [0, 1, 2].map(|i| t.perms[i].raw().iter().map(|&x| x as usize).collect::<Vec<_>>());
        let inv = [0, 1, 2].map(|i| {
            let mut v = vec![0; t.n];
            for (x, &y) in fwd[i].iter().enumerate() {
                v[y] = x;
            }
            v
        });
        Adjacency { n: t.n, fwd, inv }
    }

    fn neighbours(&self, node: Node) -> [Node; 3] {
        match node {
            Node::White(w) => [0, 1, 2].map(|c| Node::Black(self.fwd[c][w])),
            Node::Black(k) => [0, 1, 2].map(|c| Node::White(self.inv[c][k])),
        }
    }

    /// Breadth-first discovery order of whites and blacks from `root`.
    fn walk(&self, root: Node, whites: &mut Vec<usize>, blacks: &mut Vec<usize>, seen_w: &mut [bool], seen_b: &mut [bool]) {
        let mut queue = VecDeque::new();
        let mut visit = |node: Node, queue: &mut VecDeque<Node>| match node {
            Node::White(w) if !seen_w[w] => {
                seen_w[w] = true;
                whites.push(w);
                queue.push_back(node);
            }
            Node::Black(k) if !seen_b[k] => {
                seen_b[k] = true;
                blacks.push(k);
                queue.push_back(node);
            }
            _ => {}
        };
        visit(root, &mut queue);
        while let Some(node) = queue.pop_front() {
            for next in self.neighbours(node) {
                visit(next, &mut queue);
            }
        }
    }

    /// Code of the component induced by a walk: for each white in discovery
    /// order, the local indices of its blue, red and yellow neighbours.
    fn code(&self, whites: &[usize], blacks: &[usize], local_w: &mut [usize], local_b: &mut [usize]) -> Vec<u32> {
        for (i, &w) in whites.iter().enumerate() {
            local_w[w] = i;
        }
        for (i, &k) in blacks.iter().enumerate() {
            local_b[k] = i;
        }
        let mut code = Vec::with_capacity(3 * whites.len());
        for &w in whites {
            for c in 0..3 {
                code.push(local_b[self.fwd[c][w]] as u32);
            }
        }
        code
    }
}

struct Component {
    whites: Vec<usize>,
    blacks: Vec<usize>,
    code: Vec<u32>,
}

/// Canonical labeling with black labels `0..alpha` and white labels
/// `0..beta` pinned. When `strip` is set, unlabelled double-triangle
/// components are removed.
pub fn canonical_labeling(t: &Triple, alpha: usize, beta: usize, strip: bool) -> CanonicalLabeling {
    let n = t.n;
    let alpha = alpha.min(n);
    let beta = beta.min(n);
    let adj = Adjacency::new(t);
    let mut new_w = vec![NONE; n];
    let mut new_b = vec![NONE; n];
    let mut seen_w = vec![false; n];
    let mut seen_b = vec![false; n];
    for w in 0..beta {
        new_w[w] = w;
    }
    for k in 0..alpha {
        new_b[k] = k;
    }
    let mut next_w = beta;
    let mut next_b = alpha;

    // components with pinned labels: walk from the pins in label order
    let seeds = (0..beta).map(Node::White).chain((0..alpha).map(Node::Black));
    for seed in seeds {
        let already = match seed {
            Node::White(w) => seen_w[w],
            Node::Black(k) => seen_b[k],
        };
        if already {
            continue;
        }
        let (mut whites, mut blacks) = (Vec::new(), Vec::new());
        adj.walk(seed, &mut whites, &mut blacks, &mut seen_w, &mut seen_b);
        for w in whites {
            if new_w[w] == NONE {
                new_w[w] = next_w;
                next_w += 1;
            }
        }
        for k in blacks {
            if new_b[k] == NONE {
                new_b[k] = next_b;
                next_b += 1;
            }
        }
    }

    // unlabelled components: minimal code over white roots
    let mut components: Vec<Component> = Vec::new();
    let mut automorphisms = BigUint::one();
    let mut local_w = vec![0; n];
    let mut local_b = vec![0; n];
    let mut scratch_w = vec![false; n];
    let mut scratch_b = vec![false; n];
    for start in 0..n {
        if seen_w[start] {
            continue;
        }
        let (mut members, mut member_blacks) = (Vec::new(), Vec::new());
        adj.walk(Node::White(start), &mut members, &mut member_blacks, &mut seen_w, &mut seen_b);
        if strip && members.len() == 1 {
            continue;
        }
        let mut best: Option<Component> = None;
        let mut ties = 0u64;
        for &root in &members {
            let (mut whites, mut blacks) = (Vec::with_capacity(members.len()), Vec::with_capacity(members.len()));
            adj.walk(Node::White(root), &mut whites, &mut blacks, &mut scratch_w, &mut scratch_b);
            for &w in &whites {
                scratch_w[w] = false;
            }
            for &k in &blacks {
                scratch_b[k] = false;
            }
            let code = adj.code(&whites, &blacks, &mut local_w, &mut local_b);
            match &best {
                Some(b) if b.code < code => {}
                Some(b) if b.code == code => ties += 1,
                _ => {
                    ties = 1;
                    best = Some(Component { whites, blacks, code });
                }
            }
        }
        automorphisms *= BigUint::from(ties);
        components.push(best.expect("component has a white triangle"));
    }
    components.sort_by(|a, b| {
        (Reverse(a.whites.len()), &a.code).cmp(&(Reverse(b.whites.len()), &b.code))
    });
    let mut run = 1u64;
    for i in 1..=components.len() {
        if i < components.len() && components[i].code == components[i - 1].code {
            run += 1;
        } else {
            for m in 2..=run {
                automorphisms *= BigUint::from(m);
            }
            run = 1;
        }
    }
    for comp in &components {
        for &w in &comp.whites {
            new_w[w] = next_w;
            next_w += 1;
        }
        for &k in &comp.blacks {
            new_b[k] = next_b;
            next_b += 1;
        }
    }

    let kept = next_w;
    debug_assert_eq!(kept, next_b);
    let perms = [0, 1, 2].map(|c| {
        let mut images: Images = SmallVec::from_elem(0, kept);
        for w in 0..adj.n {
            if new_w[w] != NONE {
                images[new_w[w]] = new_b[adj.fwd[c][w]] as u16;
            }
        }
        Permutation::from_raw(images)
    });
    let option = |v: Vec<usize>| v.into_iter().map(|x| (x != NONE).then_some(x)).collect();
    CanonicalLabeling {
        triple: Triple { n: kept, perms },
        white: option(new_w),
        black: option(new_b),
        automorphisms,
    }
}

/// The double coset `K[alpha] · t · K[beta]` as a labelled surface: black
/// labels `0..alpha` and white labels `0..beta` are kept, all other labels
/// are forgotten, and unlabelled double triangles are removed.
pub fn canonical_form(t: &Triple, alpha: usize, beta: usize) -> crate::Result<LabeledSurface> {
    if alpha > t.n || beta > t.n {
        return Err(crate::Error::TooManyLabels {
            labels: alpha.max(beta),
            degree: t.n,
        });
    }
    let c = canonical_labeling(t, alpha, beta, true);
    Ok(LabeledSurface::from_canonical(alpha, beta, c.triple))
}
