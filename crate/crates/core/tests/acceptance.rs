//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use checker_core::convolution::{coset_decomposition, sigma_series, GroupAlgebraElement};
use checker_core::cosets::{circledast, concat_geometric, identity, star};
use checker_core::ik::{
    graded_piece, graded_product, graded_product_elements, ik_product, lift, poisson_bracket,
    poisson_bracket_elements, surfaces_with_pairs, IKElement,
};
use checker_core::lincomb::rational;
use checker_core::random::{random_coset, random_pair, random_triple};
use checker_core::spherical::{spherical_assignment_sum, spherical_oracle, Tensor3, DEFAULT_BUDGET};
use checker_core::surface::{build_surface, canonical_form, triple_of};
use checker_core::{CheckerSurface, LabeledSurface, LinComb, Permutation, Triple};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s3_cubed() -> Vec<Triple> {
    let all: Vec<Permutation> = Permutation::all(3).collect();
    let mut out = Vec::new();
    for b in &all {
        for r in &all {
            for y in &all {
                out.push(Triple::with_degree(3, b.clone(), r.clone(), y.clone()).unwrap());
            }
        }
    }
    out
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bijection() -> Check {
    let exhaustive = s3_cubed();
    for t in &exhaustive {
        ensure(&triple_of(&build_surface(t)).unwrap() == t, || format!("round trip failed on {t:?}"))?;
    }
    let mut rng = rng(1);
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=8);
        let t = random_triple(&mut rng, n);
        ensure(triple_of(&build_surface(&t)).unwrap() == t, || format!("round trip failed on {t:?}"))?;
    }
    Ok(format!("{} exhaustive + 10000 random round trips", exhaustive.len()))
}

fn euler() -> Check {
    let mut rng = rng(2);
    let mut cases: Vec<Triple> = s3_cubed();
    cases.extend((0..5000).map(|_| {
        let n = rng.gen_range(0..=8);
        random_triple(&mut rng, n)
    }));
    let mut components = 0;
    for t in &cases {
        let counts = build_surface(t).cell_counts();
        let comps = t.components();
        ensure(counts.len() == comps.len(), || format!("component count differs on {t:?}"))?;
        for (c, comp) in counts.iter().zip(&comps) {
            let chi = t.euler_characteristic(comp).map_err(|e| e.to_string())?;
            ensure(chi == c.euler_characteristic(), || format!("χ {chi} vs V−E+F {} on {t:?}", c.euler_characteristic()))?;
            ensure(chi % 2 == 0 && chi <= 2, || format!("χ = {chi} on {t:?}"))?;
            components += 1;
        }
    }
    Ok(format!("{components} components agree with V−E+F"))
}

/// Orbits of diagonal conjugation on `S_n × S_n`, by direct traversal.
fn orbit_count(n: usize) -> usize {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let mut seen: HashSet<(Permutation, Permutation)> = HashSet::new();
    let mut orbits = 0;
    for a in &all {
        for b in &all {
            if seen.contains(&(a.clone(), b.clone())) {
                continue;
            }
            orbits += 1;
            for h in &all {
                seen.insert((a.conjugate_by(h), b.conjugate_by(h)));
            }
        }
    }
    orbits
}

fn census() -> Check {
    let mut report = Vec::new();
    for n in 1..=4 {
        let id = Permutation::identity(n);
        let mut classes = HashSet::new();
        for a in Permutation::all(n) {
            for b in Permutation::all(n) {
                let t = Triple::with_degree(n, a.clone(), b, id.clone()).unwrap();
                classes.insert(canonical_form(&t, 0, 0).unwrap());
            }
        }
        let orbits = orbit_count(n);
        ensure(classes.len() == orbits, || format!("n={n}: {} canonical forms vs {orbits} orbits", classes.len()))?;
        report.push(format!("n={n}:{orbits}"));
    }
    ensure(report[1] == "n=2:4", || "n = 2 must give 4 classes".into())?;
    Ok(report.join(" "))
}

fn coherence() -> Check {
    let mut rng = rng(4);
    let coset = |rng: &mut ChaCha8Rng, max_n: usize, a: usize, b: usize| {
        let n = rng.gen_range(0..=max_n);
        random_coset(rng, n, a, b)
    };
    for _ in 0..1000 {
        let (a, b, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let p = coset(&mut rng, 6, a, b);
        let q = coset(&mut rng, 6, b, c);
        let alg = circledast(&p, &q).map_err(|e| e.to_string())?;
        let geo = concat_geometric(&p, &q).map_err(|e| e.to_string())?;
        ensure(alg == geo, || format!("⊛ {alg:?} vs gluing {geo:?}"))?;
    }
    for _ in 0..500 {
        let l: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=2)).collect();
        let p = coset(&mut rng, 5, l[0], l[1]);
        let q = coset(&mut rng, 5, l[1], l[2]);
        let r = coset(&mut rng, 5, l[2], l[3]);
        let left = circledast(&circledast(&p, &q).unwrap(), &r).unwrap();
        let right = circledast(&p, &circledast(&q, &r).unwrap()).unwrap();
        ensure(left == right, || format!("associativity fails on {p:?} {q:?} {r:?}"))?;
    }
    for _ in 0..500 {
        let (a, b, c) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let p = coset(&mut rng, 6, a, b);
        let q = coset(&mut rng, 6, b, c);
        ensure(star(&star(&p)) == p, || format!("p** ≠ p for {p:?}"))?;
        let lhs = star(&circledast(&p, &q).unwrap());
        let rhs = circledast(&star(&q), &star(&p)).unwrap();
        ensure(lhs == rhs, || format!("(p⊛q)* ≠ q*⊛p* for {p:?} {q:?}"))?;
    }
    let mut units = 0;
    for n in 0..=3 {
        for alpha in 0..=n.min(2) {
            for beta in 0..=n.min(2) {
                for t in Permutation::all(n).flat_map(|b| {
                    Permutation::all(n).map(move |r| Triple::with_degree(n, b.clone(), r, Permutation::identity(n)).unwrap())
                }) {
                    let p = canonical_form(&t, alpha, beta).unwrap();
                    ensure(circledast(&p, &identity(beta)).unwrap() == p, || format!("right unit fails on {p:?}"))?;
                    ensure(circledast(&identity(alpha), &p).unwrap() == p, || format!("left unit fails on {p:?}"))?;
                    units += 1;
                }
            }
        }
    }
    Ok(format!("1000 gluings, 500 associativity, 500 involution, {units} unit checks"))
}

fn transposition() -> LabeledSurface {
    let id = Permutation::identity(2);
    canonical_form(&Triple::new("(1 2)".parse().unwrap(), id.clone(), id), 0, 0).unwrap()
}

/// Probability that `(1 2)·(h1 h2)` is a double transposition for `h`
/// uniform in `S_n`, by summing over all `h`.
fn disjoint_fraction(n: usize) -> BigRational {
    let (mut hits, mut total) = (0i64, 0i64);
    for h in Permutation::all(n) {
        let (a, b) = (h.apply(0), h.apply(1));
        if a >= 2 && b >= 2 {
            hits += 1;
        }
        total += 1;
    }
    rational(hits, total)
}

fn concentration() -> Check {
    let p = transposition();
    let ns: Vec<usize> = (4..=9).collect();
    let series = sigma_series(&p, &p, &ns).map_err(|e| e.to_string())?;
    for (n, sigma) in &series {
        let n_i = *n as i64;
        let closed = rational((n_i - 2) * (n_i - 3), n_i * (n_i - 1));
        ensure(sigma == &closed, || format!("σ_{n} = {sigma}, expected {closed}"))?;
        ensure(sigma == &disjoint_fraction(*n), || format!("σ_{n} disagrees with the direct h-sum"))?;
    }
    ensure(series.windows(2).all(|w| w[0].1 < w[1].1), || "σ_n not strictly increasing".into())?;
    let one = BigRational::one();
    ensure(&one - &series[5].1 < &one - &series[0].1, || "1 − σ_9 ≥ 1 − σ_4".into())?;
    let mut rng = rng(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let (a, b, c) = (rng.gen_range(0..=2.min(n)), rng.gen_range(0..=2.min(n)), rng.gen_range(0..=2.min(n)));
        let x = random_coset(&mut rng, n, a, b);
        let y = random_coset(&mut rng, n, b, c);
        let d = coset_decomposition(&x, &y, n).map_err(|e| e.to_string())?;
        ensure(d.mass() == one && d.all_nonnegative(), || format!("not a probability: {x:?} {y:?} at n={n}"))?;
    }
    let shown: Vec<String> = series.iter().map(|(n, s)| format!("σ_{n}={s}")).collect();
    Ok(format!("{}; 200 decompositions sum to 1", shown.join(" ")))
}

fn spherical() -> Check {
    const TOL: f64 = 1e-10;
    let mut rng = rng(6);
    let dims = |rng: &mut ChaCha8Rng, max: usize| [rng.gen_range(1..=max), rng.gen_range(1..=max), rng.gen_range(1..=max)];
    let s2: Vec<Permutation> = Permutation::all(2).collect();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = dims(&mut rng, 3);
        let xi = Tensor3::random_unit(&mut rng, d);
        for b in &s2 {
            for r in &s2 {
                for y in &s2 {
                    let t = Triple::with_degree(2, b.clone(), r.clone(), y.clone()).unwrap();
                    let a = spherical_assignment_sum(&t, &xi, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    let o = spherical_oracle(&t, &xi, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    worst = worst.max((a - o).norm());
                }
            }
        }
    }
    for _ in 0..100 {
        let n = rng.gen_range(0..=5);
        let t = random_triple(&mut rng, n);
        let d = dims(&mut rng, 2);
        let xi = Tensor3::random_unit(&mut rng, d);
        let a = spherical_assignment_sum(&t, &xi, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let o = spherical_oracle(&t, &xi, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        worst = worst.max((a - o).norm());
    }
    ensure(worst < TOL, || format!("assignment sum vs oracle differ by {worst:e}"))?;
    let mut worst_dt = 0.0f64;
    let mut worst_mult = 0.0f64;
    for _ in 0..50 {
        let d = dims(&mut rng, 3);
        let xi = Tensor3::random_unit(&mut rng, d);
        let dt = spherical_assignment_sum(&Triple::identity(1), &xi, DEFAULT_BUDGET).unwrap();
        worst_dt = worst_dt.max((dt - Complex64::new(1.0, 0.0)).norm());
        let (n1, n2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let (p, q) = (random_triple(&mut rng, n1), random_triple(&mut rng, n2));
        let phi = |t: &Triple| spherical_assignment_sum(t, &xi, DEFAULT_BUDGET).unwrap();
        worst_mult = worst_mult.max((phi(&p.disjoint_union(&q)) - phi(&p) * phi(&q)).norm());
    }
    ensure(worst_dt <= 1e-12, || format!("Φ(double triangle) off by {worst_dt:e}"))?;
    ensure(worst_mult < TOL, || format!("multiplicativity off by {worst_mult:e}"))?;
    Ok(format!("max |sum − oracle| = {worst:.1e}, |Φ(DT) − 1| ≤ {worst_dt:.1e}, multiplicativity ≤ {worst_mult:.1e}"))
}

struct Lifts(HashMap<(CheckerSurface, usize), GroupAlgebraElement>);

impl Lifts {
    fn get(&mut self, p: &CheckerSurface, m: usize) -> GroupAlgebraElement {
        if p.pairs() > m {
            return GroupAlgebraElement::zero(m);
        }
        self.0.entry((p.clone(), m)).or_insert_with(|| lift(p, m).unwrap()).clone()
    }

    fn project(&mut self, x: &IKElement, m: usize) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(m);
        for (r, c) in x.iter() {
            if r.pairs() <= m {
                out = out.plus(&self.get(r, m).scaled(c));
            }
        }
        out
    }
}

fn basis_up_to(k: usize) -> Vec<CheckerSurface> {
    (0..=k).flat_map(surfaces_with_pairs).collect()
}

fn ivanov_kerov() -> Check {
    let dt = CheckerSurface::double_triangle();
    let expected = LinComb::basis(dt.disjoint_union(&dt)).plus(&LinComb::basis(dt.clone()));
    ensure(ik_product(&dt, &dt) == expected, || "u_DT ∘ u_DT ≠ u_2DT + u_DT".into())?;
    let basis = basis_up_to(3);
    let mut lifts = Lifts(HashMap::new());
    let mut checks = 0;
    let mut stronger_bound_holds = true;
    for p in &basis {
        for q in &basis {
            let product = ik_product(p, q);
            ensure(product.all_integral() && product.all_nonnegative(), || format!("non-integral constants in {p:?}∘{q:?}"))?;
            let (m, n) = (p.pairs(), q.pairs());
            for r in product.keys() {
                let l = r.pairs();
                ensure(m.min(n) <= l && l <= m + n, || format!("degree bound fails: {m}, {n} → {l}"))?;
                stronger_bound_holds &= l >= m.max(n);
            }
            for deg in 0..=6 {
                let lhs = lifts.get(p, deg).convolve(&lifts.get(q, deg));
                let rhs = lifts.project(&product, deg);
                ensure(lhs == rhs, || format!("Π_{deg} not multiplicative on {p:?}, {q:?}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{} basis surfaces, {checks} exact homomorphism checks; l ≥ max(m,n) {}",
        basis.len(),
        if stronger_bound_holds { "held on every product" } else { "FAILED somewhere" }
    ))
}

fn poisson() -> Check {
    let commutator_top = |p: &CheckerSurface, q: &CheckerSurface| {
        let top = p.pairs() + q.pairs();
        let c = ik_product(p, q).minus(&ik_product(q, p));
        if top == 0 {
            LinComb::zero()
        } else {
            graded_piece(&c, top - 1)
        }
    };
    let small = basis_up_to(2);
    let mut pairs: Vec<(CheckerSurface, CheckerSurface)> = Vec::new();
    for p in &small {
        for q in &small {
            pairs.push((p.clone(), q.clone()));
        }
    }
    let mut rng = rng(8);
    for _ in 0..100 {
        let (n1, n2) = (rng.gen_range(3..=4), rng.gen_range(1..=4));
        pairs.push((CheckerSurface::new(&random_pair(&mut rng, n1)), CheckerSurface::new(&random_pair(&mut rng, n2))));
    }
    for (p, q) in &pairs {
        let b = poisson_bracket(p, q);
        ensure(b == commutator_top(p, q), || format!("bracket ≠ top commutator term on {p:?}, {q:?}"))?;
        ensure(b.plus(&poisson_bracket(q, p)).is_empty(), || format!("antisymmetry fails on {p:?}, {q:?}"))?;
        ensure(graded_piece(&ik_product(p, q), p.pairs() + q.pairs()) == LinComb::basis(graded_product(p, q)), || {
            "top term of the product is not the disjoint union".into()
        })?;
    }
    let mut triples = 0;
    for _ in 0..100 {
        let x: Vec<IKElement> = (0..3)
            .map(|_| {
                let n = rng.gen_range(0..=3);
                LinComb::basis(CheckerSurface::new(&random_pair(&mut rng, n)))
            })
            .collect();
        let br = poisson_bracket_elements;
        let jacobi = br(&x[0], &br(&x[1], &x[2])).plus(&br(&x[1], &br(&x[2], &x[0]))).plus(&br(&x[2], &br(&x[0], &x[1])));
        ensure(jacobi.is_empty(), || format!("Jacobi fails on {x:?}"))?;
        let g = graded_product_elements;
        let leibniz = br(&x[0], &g(&x[1], &x[2])).minus(&g(&br(&x[0], &x[1]), &x[2])).minus(&g(&x[1], &br(&x[0], &x[2])));
        ensure(leibniz.is_empty(), || format!("Leibniz fails on {x:?}"))?;
        triples += 1;
    }
    Ok(format!("{} pairs match the commutator, {triples} Jacobi/Leibniz triples", pairs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 8] = [
        ("bijection", bijection, 5),
        ("euler characteristic", euler, 60),
        ("double-coset census", census, 60),
        ("⊛ coherence", coherence, 60),
        ("concentration", concentration, 120),
        ("spherical function", spherical, 60),
        ("Ivanov–Kerov homomorphism", ivanov_kerov, 300),
        ("Poisson structure", poisson, 120),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail} but took {elapsed:.1?} (limit {limit} s)"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
