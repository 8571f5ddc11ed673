//! Spherical functions of the tensor-product representation on
//! `X^{⊗n}`, `X = H^blue ⊗ H^red ⊗ H^yellow`.
//!
//! `G_n` permutes the blue, red and yellow tensor slots of `ξ^{⊗n}`
//! independently; `Φ(t) = ⟨ρ(t) ξ^{⊗n}, ξ^{⊗n}⟩`. The same number is a sum
//! over assignments of basis indices to the edges of the surface of `t`.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{Color, Triple};

/// Default limit on enumerated terms.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A tensor `ξ ∈ C^{d_b} ⊗ C^{d_r} ⊗ C^{d_y}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorJson", into = "TensorJson")]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    dims: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<TensorJson> for Tensor3 {
    type Error = Error;

    fn try_from(raw: TensorJson) -> Result<Self> {
        let dims: [usize; 3] = raw
            .dims
            .try_into()
            .map_err(|d: Vec<usize>| Error::InvalidTensor(format!("expected 3 dims, got {}", d.len())))?;
        if raw.re.len() != raw.im.len() {
            return Err(Error::InvalidTensor("re and im differ in length".into()));
        }
        let data = raw.re.iter().zip(&raw.im).map(|(&re, &im)| Complex64::new(re, im)).collect();
        Tensor3::new(dims, data)
    }
}

impl From<Tensor3> for TensorJson {
    fn from(t: Tensor3) -> Self {
        TensorJson {
            dims: t.dims.to_vec(),
            re: t.data.iter().map(|z| z.re).collect(),
            im: t.data.iter().map(|z| z.im).collect(),
        }
    }
}

impl Tensor3 {
    /// Entries in row-major order `(i, j, k)`.
    pub fn new(dims: [usize; 3], data: Vec<Complex64>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidTensor(format!("dimensions must be positive, got {dims:?}")));
        }
        let size = dims.iter().product::<usize>();
        if data.len() != size {
            return Err(Error::InvalidTensor(format!(
                "{} entries for dimensions {dims:?} (expected {size})",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidTensor("non-finite entry".into()));
        }
        Ok(Tensor3 { dims, data })
    }

    /// Uniformly random entries in the unit square, normalized.
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, dims: [usize; 3]) -> Self {
        let size = dims.iter().product::<usize>();
        let data = (0..size)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Tensor3::new(dims, data).expect("valid shape").normalized()
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    /// Number of entries, `d_b · d_r · d_y`.
    pub fn size(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.data[(i * self.dims[1] + j) * self.dims[2] + k]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        Tensor3 {
            dims: self.dims,
            data: self.data.iter().map(|z| z / norm).collect(),
        }
    }
}

fn check_budget(base: usize, exponent: usize, budget: u128) -> Result<u128> {
    let mut needed: u128 = 1;
    for _ in 0..exponent {
        needed = needed.saturating_mul(base as u128);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
    }
    Ok(needed)
}

/// Sum over assignments of edge indices: each white triangle contributes
/// `ξ_{ijk}` for the indices on its blue, red and yellow edges and each black
/// triangle `conj(ξ_{ijk})`. Evaluated per connected component.
pub fn spherical_assignment_sum(t: &Triple, xi: &Tensor3, budget: u128) -> Result<Complex64> {
    let components = t.components();
    let mut total: u128 = 0;
    for comp in &components {
        total = total.saturating_add(check_budget(xi.size(), comp.len(), budget)?);
        if total > budget {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
    }
    let values: Vec<Complex64> = components.par_iter().map(|comp| component_sum(t, comp, xi)).collect();
    Ok(values.into_iter().product())
}

/// Depth-first enumeration: whites in breadth-first order, each black
/// factor applied as soon as its three edges carry indices.
fn component_sum(t: &Triple, comp: &[usize], xi: &Tensor3) -> Complex64 {
    let order = spanning_order(t, comp);
    let mut position = vec![usize::MAX; t.n()];
    for (i, &w) in order.iter().enumerate() {
        position[w] = i;
    }
    // blacks completed at each step, with the positions of their three edges
    let inverses = Color::ALL.map(|c| t.get(c).inverse().padded(t.n()));
    let mut completing: Vec<Vec<[usize; 3]>> = vec![Vec::new(); order.len()];
    let mut blacks: Vec<usize> = comp.iter().map(|&w| t.blue().apply(w)).collect();
    blacks.sort_unstable();
    for m in blacks {
        let edges = inverses.clone().map(|inv| position[inv.apply(m)]);
        let step = *edges.iter().max().expect("three edges");
        completing[step].push(edges);
    }
    let mut indices = vec![[0usize; 3]; order.len()];
    recurse(0, Complex64::new(1.0, 0.0), &mut indices, &completing, xi)
}

fn recurse(
    step: usize,
    partial: Complex64,
    indices: &mut Vec<[usize; 3]>,
    completing: &[Vec<[usize; 3]>],
    xi: &Tensor3,
) -> Complex64 {
    if step == indices.len() {
        return partial;
    }
    let [db, dr, dy] = xi.dims;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..db {
        for j in 0..dr {
            for k in 0..dy {
                let white = xi.get(i, j, k);
                if white == Complex64::new(0.0, 0.0) {
                    continue;
                }
                indices[step] = [i, j, k];
                let mut value = partial * white;
                for edges in &completing[step] {
                    value *= xi.get(indices[edges[0]][0], indices[edges[1]][1], indices[edges[2]][2]).conj();
                }
                sum += recurse(step + 1, value, indices, completing, xi);
            }
        }
    }
    sum
}

fn spanning_order(t: &Triple, comp: &[usize]) -> Vec<usize> {
    let gens = [t.vertex_permutation(Color::Red), t.vertex_permutation(Color::Blue)];
    let mut seen = vec![false; t.n()];
    let mut order = vec![comp[0]];
    seen[comp[0]] = true;
    let mut i = 0;
    while i < order.len() {
        let w = order[i];
        for g in &gens {
            for next in [g.apply(w), g.inverse().apply(w)] {
                if !seen[next] {
                    seen[next] = true;
                    order.push(next);
                }
            }
        }
        i += 1;
    }
    order
}

/// `⟨ρ(t) ξ^{⊗n}, ξ^{⊗n}⟩` by summing over every basis vector of
/// `X^{⊗n}`; the blue factor in slot `m` is moved to slot `blue(m)`, and
/// likewise for red and yellow.
pub fn spherical_oracle(t: &Triple, xi: &Tensor3, budget: u128) -> Result<Complex64> {
    let n = t.n();
    let size = xi.size();
    check_budget(size, n, budget)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let perms = Color::ALL.map(|c| t.get(c).padded(n));
    let [_, dr, dy] = xi.dims;
    let split = |x: usize| [x / (dr * dy), (x / dy) % dr, x % dy];
    // parallel over the value of slot 0, serial inside
    let partial: Vec<Complex64> = (0..size)
        .into_par_iter()
        .map(|first| {
            let mut digits = vec![0usize; n];
            digits[0] = first;
            let mut sum = Complex64::new(0.0, 0.0);
            loop {
                let slots: Vec<[usize; 3]> = digits.iter().map(|&x| split(x)).collect();
                let mut moved = Complex64::new(1.0, 0.0);
                let mut plain = Complex64::new(1.0, 0.0);
                for m in 0..n {
                    moved *= xi.get(
                        slots[perms[0].apply(m)][0],
                        slots[perms[1].apply(m)][1],
                        slots[perms[2].apply(m)][2],
                    );
                    let [i, j, k] = slots[m];
                    plain *= xi.get(i, j, k);
                }
                sum += moved * plain.conj();
                // advance digits 1..n (slot 0 is fixed per task)
                let mut pos = 1;
                while pos < n {
                    digits[pos] += 1;
                    if digits[pos] < size {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos >= n {
                    break;
                }
            }
            sum
        })
        .collect();
    Ok(partial.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::random::{random_permutation, random_triple};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-10;

    fn random_dims(rng: &mut ChaCha8Rng, max: usize) -> [usize; 3] {
        [rng.gen_range(1..=max), rng.gen_range(1..=max), rng.gen_range(1..=max)]
    }

    #[test]
    fn rejects_bad_tensors() {
        assert!(Tensor3::new([2, 0, 1], vec![]).is_err());
        assert!(Tensor3::new([2, 1, 1], vec![Complex64::new(1.0, 0.0)]).is_err());
        let json = r#"{"dims":[1,1],"re":[1],"im":[0]}"#;
        assert!(serde_json::from_str::<Tensor3>(json).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xi = Tensor3::random_unit(&mut rng, [2, 3, 1]);
        let back: Tensor3 = serde_json::from_str(&serde_json::to_string(&xi).unwrap()).unwrap();
        assert_eq!(back, xi);
    }

    #[test]
    fn trivial_surfaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let xi = Tensor3::random_unit(&mut rng, [2, 2, 3]);
        assert!((xi.norm() - 1.0).abs() < 1e-12);
        let empty = spherical_assignment_sum(&Triple::identity(0), &xi, DEFAULT_BUDGET).unwrap();
        assert!((empty - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let dt = spherical_assignment_sum(&Triple::identity(1), &xi, DEFAULT_BUDGET).unwrap();
        assert!((dt - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let oracle = spherical_oracle(&Triple::identity(3), &xi, DEFAULT_BUDGET).unwrap();
        assert!((oracle - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn matches_oracle_on_s2_cubed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let dims = random_dims(&mut rng, 3);
            let xi = Tensor3::random_unit(&mut rng, dims);
            for b in Permutation::all(2) {
                for r in Permutation::all(2) {
                    for y in Permutation::all(2) {
                        let t = Triple::with_degree(2, b.clone(), r.clone(), y).unwrap();
                        let a = spherical_assignment_sum(&t, &xi, DEFAULT_BUDGET).unwrap();
                        let o = spherical_oracle(&t, &xi, DEFAULT_BUDGET).unwrap();
                        assert!((a - o).norm() < TOL, "{t:?}: {a} vs {o}");
                    }
                }
            }
        }
    }

    #[test]
    fn invariants_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let n = rng.gen_range(0..=4);
            let dims = random_dims(&mut rng, 2);
            let xi = Tensor3::random_unit(&mut rng, dims);
            let t = random_triple(&mut rng, n);
            let phi = spherical_assignment_sum(&t, &xi, DEFAULT_BUDGET).unwrap();
            assert!((phi - spherical_oracle(&t, &xi, DEFAULT_BUDGET).unwrap()).norm() < TOL);
            assert!(phi.norm() <= 1.0 + TOL);
            let rev = spherical_assignment_sum(&t.reverse(), &xi, DEFAULT_BUDGET).unwrap();
            assert!((rev - phi.conj()).norm() < TOL);
            let moved = t.relabel(&random_permutation(&mut rng, n, 0), &random_permutation(&mut rng, n, 0));
            assert!((spherical_oracle(&moved, &xi, DEFAULT_BUDGET).unwrap() - phi).norm() < TOL);
            assert!((spherical_assignment_sum(&moved, &xi, DEFAULT_BUDGET).unwrap() - phi).norm() < TOL);
            let m = rng.gen_range(0..=3);
            let other = random_triple(&mut rng, m);
            let psi = spherical_assignment_sum(&other, &xi, DEFAULT_BUDGET).unwrap();
            let union = spherical_assignment_sum(&t.disjoint_union(&other), &xi, DEFAULT_BUDGET).unwrap();
            assert!((union - phi * psi).norm() < TOL);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xi = Tensor3::random_unit(&mut rng, [3, 3, 3]);
        let t = Triple::new("(1 2 3 4 5 6 7)".parse().unwrap(), Permutation::identity(7), Permutation::identity(7));
        assert!(matches!(
            spherical_assignment_sum(&t, &xi, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(spherical_oracle(&t, &xi, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
