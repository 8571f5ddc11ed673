//! JSON schemas for surfaces, linear combinations and group-algebra
//! elements. All labels are 1-based on the wire.
//!
//! A surface is `{"n": 3, "blue": [2,3,1], "red": "(1 2)", "yellow": []}`
//! with optional `"alpha"`/`"beta"` label counts; each permutation is either
//! a one-line image list or a cycle string. Unknown fields are ignored, so a
//! report produced by this module reads back as its own input.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::convolution::{CosetAlgebraElement, GroupAlgebraElement};
use crate::error::{Error, Result};
use crate::ik::IKElement;
use crate::lincomb::{format_rational, parse_rational, to_f64, LinComb};
use crate::perm::Permutation;
use crate::surface::{canonical_form, CheckerSurface, LabeledSurface, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermJson {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermJson {
    fn to_permutation(&self) -> Result<Permutation> {
        match self {
            PermJson::Images(images) => Permutation::from_one_based(images),
            PermJson::Cycles(s) => s.parse(),
        }
    }

    fn images(p: &Permutation, n: usize) -> Self {
        PermJson::Images(p.padded(n).images().map(|x| x + 1).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub alpha: usize,
    #[serde(default)]
    pub beta: usize,
    pub blue: PermJson,
    pub red: PermJson,
    pub yellow: PermJson,
}

impl SurfaceJson {
    pub fn from_triple(t: &Triple, alpha: usize, beta: usize) -> Self {
        SurfaceJson {
            n: Some(t.n()),
            alpha,
            beta,
            blue: PermJson::images(t.blue(), t.n()),
            red: PermJson::images(t.red(), t.n()),
            yellow: PermJson::images(t.yellow(), t.n()),
        }
    }

    pub fn from_labeled(s: &LabeledSurface) -> Self {
        Self::from_triple(s.triple(), s.alpha(), s.beta())
    }

    pub fn triple(&self) -> Result<Triple> {
        let (b, r, y) = (self.blue.to_permutation()?, self.red.to_permutation()?, self.yellow.to_permutation()?);
        match self.n {
            Some(n) => Triple::with_degree(n, b, r, y),
            None => Ok(Triple::new(b, r, y)),
        }
    }

    pub fn labeled(&self) -> Result<LabeledSurface> {
        canonical_form(&self.triple()?, self.alpha, self.beta)
    }

    pub fn surface(&self) -> Result<CheckerSurface> {
        Ok(CheckerSurface::new(&self.triple()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub triangles: Vec<usize>,
    pub chi: i64,
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticesJson {
    pub blue: Vec<usize>,
    pub red: Vec<usize>,
    pub yellow: Vec<usize>,
}

/// Canonical form of a surface with its topological invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    #[serde(flatten)]
    pub surface: SurfaceJson,
    pub cycles: [String; 3],
    pub components: Vec<ComponentJson>,
    /// Vertex orders (twice the cycle lengths) per colour.
    pub vertex_orders: VerticesJson,
}

impl SurfaceReport {
    pub fn new(t: &Triple, alpha: usize, beta: usize) -> Self {
        let census = t.vertex_census();
        let orders = |v: &[usize]| {
            let mut o = crate::surface::VertexCensus::orders(v);
            o.sort_unstable();
            o
        };
        SurfaceReport {
            surface: SurfaceJson::from_triple(t, alpha, beta),
            cycles: [t.blue().to_string(), t.red().to_string(), t.yellow().to_string()],
            components: t
                .component_summaries()
                .into_iter()
                .map(|c| ComponentJson {
                    triangles: c.points.iter().map(|x| x + 1).collect(),
                    chi: c.chi,
                    genus: c.genus,
                })
                .collect(),
            vertex_orders: VerticesJson {
                blue: orders(&census.blue),
                red: orders(&census.red),
                yellow: orders(&census.yellow),
            },
        }
    }

    pub fn labeled(s: &LabeledSurface) -> Self {
        Self::new(s.triple(), s.alpha(), s.beta())
    }

    pub fn surface(s: &CheckerSurface) -> Self {
        Self::new(s.triple(), 0, 0)
    }
}

/// One term of a linear combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub surface: SurfaceJson,
    /// Exact value, `"a/b"` or `"a"`.
    pub coefficient: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<f64>,
}

impl TermJson {
    fn new(surface: SurfaceJson, c: &BigRational) -> Self {
        TermJson {
            surface,
            coefficient: format_rational(c),
            decimal: Some(to_f64(c)),
        }
    }
}

pub fn ik_element_to_json(x: &IKElement) -> Vec<TermJson> {
    x.iter()
        .map(|(s, c)| TermJson::new(SurfaceJson::from_triple(s.triple(), 0, 0), c))
        .collect()
}

pub fn ik_element_from_json(terms: &[TermJson]) -> Result<IKElement> {
    let mut out = LinComb::zero();
    for t in terms {
        out.add_term(t.surface.surface()?, parse_rational(&t.coefficient)?);
    }
    Ok(out)
}

pub fn cosets_to_json(x: &CosetAlgebraElement) -> Vec<TermJson> {
    x.iter().map(|(s, c)| TermJson::new(SurfaceJson::from_labeled(s), c)).collect()
}

pub fn cosets_from_json(terms: &[TermJson]) -> Result<CosetAlgebraElement> {
    let mut out = LinComb::zero();
    for t in terms {
        out.add_term(t.surface.labeled()?, parse_rational(&t.coefficient)?);
    }
    Ok(out)
}

/// A function on `G_n` as a list of weighted triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElementJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl GroupElementJson {
    pub fn new(f: &GroupAlgebraElement) -> Self {
        GroupElementJson {
            n: f.n(),
            terms: f
                .terms()
                .iter()
                .map(|(t, c)| TermJson::new(SurfaceJson::from_triple(&t.padded(f.n()), 0, 0), c))
                .collect(),
        }
    }

    pub fn element(&self) -> Result<GroupAlgebraElement> {
        let mut terms = LinComb::zero();
        for t in &self.terms {
            let triple = t.surface.triple()?;
            if triple.n() > self.n {
                return Err(Error::DegreeMismatch {
                    expected: self.n,
                    found: triple.n(),
                });
            }
            terms.add_term(triple, parse_rational(&t.coefficient)?);
        }
        Ok(GroupAlgebraElement::from_terms(self.n, terms))
    }
}
