use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use checker_core::convolution::coset_decomposition;
use checker_core::cosets::{circledast, concat_geometric};
use checker_core::ik::{ik_product_elements, poisson_bracket_elements, project, surfaces_with_pairs, IKElement};
use checker_core::json::{
    cosets_to_json, ik_element_from_json, ik_element_to_json, GroupElementJson, SurfaceJson, SurfaceReport, TermJson,
};
use checker_core::lincomb::{format_rational, to_f64};
use checker_core::random::{random_pair, random_triple};
use checker_core::spherical::{spherical_assignment_sum, spherical_oracle, Tensor3};
use checker_core::surface::to_dessin;
use checker_core::{Error, LinComb, Permutation, Triple};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::output::{read_json, to_json, Failure, Outcome};
use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> Outcome<String> {
    let format = cli.global.format;
    let quiet = cli.global.quiet;
    match &cli.command {
        Command::Canon { input, alpha, beta } => canon(input, *alpha, *beta, format),
        Command::CosetProduct {
            p,
            q,
            alpha,
            beta,
            gamma,
        } => coset_product(p, q, *alpha, *beta, *gamma, format),
        Command::Concentrate { p, q, n_from, n_to } => concentrate(p, q, *n_from, *n_to, format),
        Command::Spherical {
            surface,
            xi,
            normalize,
            max_assignments,
        } => spherical(surface, xi, *normalize, *max_assignments, format, quiet),
        Command::IkProduct { p, q, max_terms } => {
            let (x, y) = (read_ik(p)?, read_ik(q)?);
            check_terms(&x, &y, *max_terms)?;
            ik_output(&ik_product_elements(&x, &y), format)
        }
        Command::IkProject { input, n } => ik_project(input, *n, format),
        Command::Poisson { p, q, max_terms } => {
            let (x, y) = (read_ik(p)?, read_ik(q)?);
            check_terms(&x, &y, *max_terms)?;
            ik_output(&poisson_bracket_elements(&x, &y), format)
        }
        Command::Dessin { input } => dessin(input, format),
        Command::Census { n } => census(*n, format),
        Command::Random { n, alpha, beta, pair } => random(cli.global.seed, *n, *alpha, *beta, *pair, format),
    }
}

fn json_or_tsv(format: Option<Format>, default: Format) -> Outcome<Format> {
    match format.unwrap_or(default) {
        Format::Dot => Err(Failure::schema("DOT output is only available for `dessin`")),
        f => Ok(f),
    }
}

fn read_surface(path: &Path) -> Outcome<SurfaceJson> {
    read_json(path)
}

fn with_labels(mut s: SurfaceJson, alpha: Option<usize>, beta: Option<usize>) -> SurfaceJson {
    if let Some(a) = alpha {
        s.alpha = a;
    }
    if let Some(b) = beta {
        s.beta = b;
    }
    s
}

fn component_tsv(out: &mut String, report: &SurfaceReport) {
    out.push_str("component\ttriangles\tchi\tgenus\n");
    for (i, c) in report.components.iter().enumerate() {
        let tri: Vec<String> = c.triangles.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}\t{}\t{}\t{}", i + 1, tri.join(","), c.chi, c.genus);
    }
}

fn canon(input: &Path, alpha: Option<usize>, beta: Option<usize>, format: Option<Format>) -> Outcome<String> {
    let s = with_labels(read_surface(input)?, alpha, beta).labeled()?;
    let report = SurfaceReport::labeled(&s);
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => {
            let mut out = format!(
                "# alpha={} beta={} n={} blue={} red={} yellow={}\n",
                s.alpha(),
                s.beta(),
                s.pairs(),
                report.cycles[0],
                report.cycles[1],
                report.cycles[2]
            );
            component_tsv(&mut out, &report);
            out
        }
        _ => to_json(&report),
    })
}

#[derive(Serialize)]
struct ProductJson {
    product: SurfaceReport,
    geometric: SurfaceReport,
    agree: bool,
}

fn coset_product(
    p: &Path,
    q: &Path,
    alpha: Option<usize>,
    beta: Option<usize>,
    gamma: Option<usize>,
    format: Option<Format>,
) -> Outcome<String> {
    let p = with_labels(read_surface(p)?, alpha, beta).labeled()?;
    let q = with_labels(read_surface(q)?, beta, gamma).labeled()?;
    let algebraic = circledast(&p, &q)?;
    let geometric = concat_geometric(&p, &q)?;
    if algebraic != geometric {
        return Err(Failure::invariant(format!(
            "shift-stabilised product {algebraic:?} differs from geometric gluing {geometric:?}"
        )));
    }
    let product = SurfaceReport::labeled(&algebraic);
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => {
            let mut out = format!(
                "# alpha={} gamma={} n={} blue={} red={} yellow={} agree=true\n",
                algebraic.alpha(),
                algebraic.beta(),
                algebraic.pairs(),
                product.cycles[0],
                product.cycles[1],
                product.cycles[2]
            );
            component_tsv(&mut out, &product);
            out
        }
        _ => to_json(&ProductJson {
            geometric: SurfaceReport::labeled(&geometric),
            product,
            agree: true,
        }),
    })
}

#[derive(Serialize)]
struct ConcentrationRow {
    n: usize,
    sigma: String,
    decimal: f64,
    decomposition: Vec<TermJson>,
}

#[derive(Serialize)]
struct ConcentrationJson {
    target: SurfaceReport,
    rows: Vec<ConcentrationRow>,
}

fn concentrate(p: &Path, q: &Path, n_from: usize, n_to: usize, format: Option<Format>) -> Outcome<String> {
    let p = read_surface(p)?.labeled()?;
    let q = read_surface(q)?.labeled()?;
    if n_from > n_to {
        return Err(Failure::schema(format!("empty degree range {n_from}..={n_to}")));
    }
    let target = circledast(&p, &q)?;
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let d = coset_decomposition(&p, &q, n)?;
        let sigma = d.coefficient(&target);
        if d.mass() != BigRational::one() || !d.all_nonnegative() {
            return Err(Failure::invariant(format!("decomposition at n={n} is not a probability")));
        }
        rows.push(ConcentrationRow {
            n,
            decimal: to_f64(&sigma),
            sigma: format_rational(&sigma),
            decomposition: cosets_to_json(&d),
        });
    }
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => {
            let mut out = String::from("n\tsigma\tdecimal\tclasses\n");
            for r in &rows {
                let _ = writeln!(out, "{}\t{}\t{:.12}\t{}", r.n, r.sigma, r.decimal, r.decomposition.len());
            }
            out
        }
        _ => to_json(&ConcentrationJson {
            target: SurfaceReport::labeled(&target),
            rows,
        }),
    })
}

#[derive(Serialize)]
struct SphericalJson {
    norm: f64,
    assignment_sum: [f64; 2],
    oracle: [f64; 2],
    difference: f64,
}

fn spherical(
    surface: &Path,
    xi: &Path,
    normalize: bool,
    budget: u128,
    format: Option<Format>,
    quiet: bool,
) -> Outcome<String> {
    let t = read_surface(surface)?.triple()?;
    let mut xi: Tensor3 = read_json(xi)?;
    if normalize {
        xi = xi.normalized();
    } else if (xi.norm() - 1.0).abs() > 1e-12 && !quiet {
        eprintln!("checker: warning: ξ has norm {} (use --normalize)", xi.norm());
    }
    let a = spherical_assignment_sum(&t, &xi, budget)?;
    let o = spherical_oracle(&t, &xi, budget)?;
    let result = SphericalJson {
        norm: xi.norm(),
        assignment_sum: [a.re, a.im],
        oracle: [o.re, o.im],
        difference: (a - o).norm(),
    };
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => format!(
            "path\tre\tim\nassignment_sum\t{:e}\t{:e}\noracle\t{:e}\t{:e}\n# difference {:e}\n",
            a.re, a.im, o.re, o.im, result.difference
        ),
        _ => to_json(&result),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IkInput {
    Terms(Vec<TermJson>),
    Surface(SurfaceJson),
}

fn read_ik(path: &Path) -> Outcome<IKElement> {
    match read_json::<IkInput>(path)? {
        IkInput::Terms(terms) => Ok(ik_element_from_json(&terms)?),
        IkInput::Surface(s) => Ok(LinComb::basis(s.surface()?)),
    }
}

/// Number of partial bijections between `k` and `l` triangles.
fn bijection_count(k: usize, l: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1; // j!·C(k,j)·C(l,j) at j = 0
    for j in 0..=k.min(l) {
        total = total.saturating_add(term);
        let (kj, lj) = ((k - j) as u128, (l - j) as u128);
        term = term.saturating_mul(kj).saturating_mul(lj) / (j as u128 + 1);
    }
    total
}

fn check_terms(x: &IKElement, y: &IKElement, budget: u128) -> Outcome<()> {
    let mut needed: u128 = 0;
    for p in x.keys() {
        for q in y.keys() {
            needed = needed.saturating_add(bijection_count(p.pairs(), q.pairs()));
        }
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

fn ik_output(x: &IKElement, format: Option<Format>) -> Outcome<String> {
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => {
            let mut out = String::from("pairs\tblue\tred\tyellow\tcoefficient\n");
            for (s, c) in x.iter() {
                let t = s.triple();
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", s.pairs(), t.blue(), t.red(), t.yellow(), format_rational(c));
            }
            out
        }
        _ => to_json(&ik_element_to_json(x)),
    })
}

fn ik_project(input: &Path, n: usize, format: Option<Format>) -> Outcome<String> {
    let x = read_ik(input)?;
    let f = project(&x, n);
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => {
            let mut out = String::from("blue\tred\tyellow\tcoefficient\n");
            for (t, c) in f.terms().iter() {
                let _ = writeln!(out, "{}\t{}\t{}\t{}", t.blue(), t.red(), t.yellow(), format_rational(c));
            }
            out
        }
        _ => to_json(&GroupElementJson::new(&f)),
    })
}

#[derive(Serialize)]
struct DessinJson {
    red_vertices: Vec<Vec<usize>>,
    yellow_vertices: Vec<Vec<usize>>,
    edges: Vec<[usize; 3]>,
    faces: Vec<Vec<usize>>,
}

fn dessin(input: &Path, format: Option<Format>) -> Outcome<String> {
    let t = read_surface(input)?.triple()?;
    let d = to_dessin(&t);
    let one_based = |v: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        v.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect()
    };
    Ok(match format.unwrap_or(Format::Dot) {
        Format::Dot => d.to_dot(),
        Format::Tsv => {
            let mut out = String::from("edge\tred_vertex\tyellow_vertex\n");
            for e in &d.edges {
                let _ = writeln!(out, "{}\t{}\t{}", e.index + 1, e.red + 1, e.yellow + 1);
            }
            out
        }
        Format::Json => to_json(&DessinJson {
            red_vertices: one_based(&d.red_rotations),
            yellow_vertices: one_based(&d.yellow_rotations),
            edges: d.edges.iter().map(|e| [e.index + 1, e.red + 1, e.yellow + 1]).collect(),
            faces: one_based(&d.faces()),
        }),
    })
}

#[derive(Serialize)]
struct CensusRow {
    n: usize,
    classes: usize,
    burnside: String,
    connected: usize,
    /// Connected classes by genus.
    genus: BTreeMap<usize, usize>,
    /// Classes by number of components.
    components: BTreeMap<usize, usize>,
}

/// Orbit count of `S_n` acting on pairs by conjugation: `(1/n!) Σ_h |C(h)|²`.
fn burnside(n: usize) -> BigRational {
    let mut total = BigInt::zero();
    for h in Permutation::all(n) {
        let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
        for len in h.cycle_type() {
            *multiplicity.entry(len).or_default() += 1;
        }
        let mut centralizer = BigInt::one();
        for (len, m) in multiplicity {
            centralizer *= BigInt::from(len).pow(m as u32);
            for k in 1..=m {
                centralizer *= k;
            }
        }
        total += &centralizer * &centralizer;
    }
    let factorial: BigInt = (1..=n).product::<usize>().into();
    BigRational::new(total, factorial)
}

fn census(n: usize, format: Option<Format>) -> Outcome<String> {
    if n > 7 {
        return Err(Error::BudgetExceeded {
            needed: (1..=n as u128).product::<u128>().pow(2),
            budget: 5040u128.pow(2),
        }
        .into());
    }
    let mut rows = Vec::new();
    for k in 1..=n {
        let classes = surfaces_with_pairs(k);
        let expected = burnside(k);
        if BigRational::from_integer(classes.len().into()) != expected {
            return Err(Failure::invariant(format!(
                "degree {k}: {} canonical classes but Burnside count {expected}",
                classes.len()
            )));
        }
        let mut genus = BTreeMap::new();
        let mut components = BTreeMap::new();
        let mut connected = 0;
        for s in &classes {
            let summaries = s.component_summaries();
            *components.entry(summaries.len()).or_default() += 1;
            if summaries.len() == 1 {
                connected += 1;
                *genus.entry(summaries[0].genus).or_default() += 1;
            }
        }
        rows.push(CensusRow {
            n: k,
            classes: classes.len(),
            burnside: format_rational(&expected),
            connected,
            genus,
            components,
        });
    }
    Ok(match json_or_tsv(format, Format::Tsv)? {
        Format::Tsv => {
            let mut out = String::from("n\tclasses\tburnside\tconnected\tgenus_histogram\n");
            for r in &rows {
                let hist: Vec<String> = r.genus.iter().map(|(g, c)| format!("g{g}:{c}")).collect();
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", r.n, r.classes, r.burnside, r.connected, hist.join(","));
            }
            out
        }
        _ => to_json(&rows),
    })
}

fn random(seed: u64, n: usize, alpha: usize, beta: usize, pair: bool, format: Option<Format>) -> Outcome<String> {
    if alpha > n || beta > n {
        return Err(Error::TooManyLabels {
            labels: alpha.max(beta),
            degree: n,
        }
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t: Triple = if pair { random_pair(&mut rng, n) } else { random_triple(&mut rng, n) };
    let t = t.padded(n);
    Ok(match json_or_tsv(format, Format::Json)? {
        Format::Tsv => format!("n\tblue\tred\tyellow\n{}\t{}\t{}\t{}\n", n, t.blue(), t.red(), t.yellow()),
        _ => to_json(&SurfaceJson::from_triple(&t, alpha, beta)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_counts() {
        assert_eq!(bijection_count(3, 3), 34);
        assert_eq!(bijection_count(2, 3), 13);
        assert_eq!(bijection_count(0, 5), 1);
    }

    #[test]
    fn burnside_small() {
        let counts: Vec<String> = (1..=4).map(|n| format_rational(&burnside(n))).collect();
        assert_eq!(counts, vec!["1", "4", "11", "43"]);
    }
}
