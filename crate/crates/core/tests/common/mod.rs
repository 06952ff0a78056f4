//! A seeded corpus of small validated finite k-graphs (k <= 2, at most 6 vertices, at
//! most 3 parallel edges per color) and random elements over them.
#![allow(dead_code)]

use std::collections::BTreeMap;

use kpgraph::algebra::{gen, gen_star, mul, unit, Element, Monomial, Scalar};
use kpgraph::graph::{one_vertex, Edge, FiniteSkeleton, KGraph, KGraphPresentation, Square, VertexId};
use kpgraph::path::{enumerate_paths, Path};
use kpgraph::Degree;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A 1-graph skeleton as `(vertices, edges (id, range, source))` where every vertex
/// receives between 1 and `max_in` edges.
fn random_one_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_in: usize,
    prefix: &str,
) -> (Vec<String>, Vec<(String, String, String)>) {
    let vs: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut es = Vec::new();
    for r in &vs {
        for _ in 0..rng.gen_range(1..=max_in) {
            let s = vs.choose(rng).unwrap().clone();
            es.push((format!("{}{}", prefix.to_uppercase(), es.len()), r.clone(), s));
        }
    }
    (vs, es)
}

pub fn random_1graph(rng: &mut ChaCha8Rng) -> KGraphPresentation {
    let n = rng.gen_range(1..=6);
    let (vs, es) = random_one_graph(rng, n, 3, "v");
    let edges = es.into_iter().map(|(id, r, s)| Edge::new(id, 1, r, s)).collect();
    let vs = vs.into_iter().map(VertexId::new).collect();
    KGraphPresentation::Skeleton(FiniteSkeleton::new(1, vs, edges, vec![]))
}

/// The product of two random 1-graphs with the factorization bijection shuffled inside
/// every (range, source) class, which keeps it a 2-graph.
pub fn random_2graph(rng: &mut ChaCha8Rng) -> KGraphPresentation {
    let (na, nb) = *[
        (1, 1),
        (1, 2),
        (2, 1),
        (2, 2),
        (1, 3),
        (3, 1),
        (2, 3),
        (3, 2),
        (1, 4),
        (1, 5),
        (1, 6),
        (6, 1),
    ]
    .choose(rng)
    .unwrap();
    let max_in = |n: usize| if n == 1 { 3 } else { 2 };
    let (av, ae) = random_one_graph(rng, na, max_in(na), "a");
    let (bv, be) = random_one_graph(rng, nb, max_in(nb), "b");
    let v = |a: &str, b: &str| format!("{a}|{b}");
    let mut vertices = Vec::new();
    for a in &av {
        for b in &bv {
            vertices.push(VertexId::new(v(a, b)));
        }
    }
    let mut edges = Vec::new();
    for (id, r, s) in &ae {
        for b in &bv {
            edges.push(Edge::new(format!("{id}|{b}"), 1, v(r, b), v(s, b)));
        }
    }
    for (id, r, s) in &be {
        for a in &av {
            edges.push(Edge::new(format!("{a}|{id}"), 2, v(a, r), v(a, s)));
        }
    }
    // red-blue and blue-red 2-paths grouped by endpoints
    let mut rb: BTreeMap<(String, String), Vec<[String; 2]>> = BTreeMap::new();
    let mut br: BTreeMap<(String, String), Vec<[String; 2]>> = BTreeMap::new();
    for e in edges.iter().filter(|e| e.color == 1) {
        for f in edges.iter().filter(|f| f.color == 2 && f.range == e.source) {
            rb.entry((e.range.to_string(), f.source.to_string()))
                .or_default()
                .push([e.id.to_string(), f.id.to_string()]);
        }
    }
    for f in edges.iter().filter(|f| f.color == 2) {
        for e in edges.iter().filter(|e| e.color == 1 && e.range == f.source) {
            br.entry((f.range.to_string(), e.source.to_string()))
                .or_default()
                .push([f.id.to_string(), e.id.to_string()]);
        }
    }
    let mut squares = Vec::new();
    for (key, left) in rb {
        let mut right = br.remove(&key).expect("products have matching 2-path counts");
        assert_eq!(left.len(), right.len());
        right.shuffle(rng);
        for (l, r) in left.into_iter().zip(right) {
            squares.push(Square::new([&l[0], &l[1]], [&r[0], &r[1]]));
        }
    }
    KGraphPresentation::Skeleton(FiniteSkeleton::new(2, vertices, edges, squares))
}

/// One-vertex 2-graph with random square permutations.
pub fn random_one_vertex(rng: &mut ChaCha8Rng) -> KGraphPresentation {
    let sizes = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
    let mut perm: Vec<usize> = (0..sizes[0] * sizes[1]).collect();
    perm.shuffle(rng);
    KGraphPresentation::Skeleton(one_vertex(2, &sizes, Some(&[perm])).unwrap())
}

/// `count` validated graphs, cycling through 1-graphs, products and one-vertex graphs.
pub fn corpus(count: usize, seed: u64) -> Vec<KGraphPresentation> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < count {
        let g = match i % 3 {
            0 => random_1graph(&mut rng),
            1 => random_2graph(&mut rng),
            _ => random_one_vertex(&mut rng),
        };
        i += 1;
        let report = g.validate();
        assert!(report.ok, "corpus graph failed validation: {report:?}");
        out.push(g);
    }
    out
}

pub fn vertices(g: &KGraphPresentation) -> Vec<VertexId> {
    g.finite_vertices().expect("finite corpus").to_vec()
}

/// All paths with `d <= bound` coordinatewise.
pub fn paths_up_to(g: &KGraphPresentation, bound: &Degree) -> Vec<Path> {
    let mut out = Vec::new();
    for v in vertices(g) {
        for d in bound.below() {
            out.extend(enumerate_paths(g, &v, &d).unwrap());
        }
    }
    out
}

pub fn random_path(rng: &mut ChaCha8Rng, g: &KGraphPresentation, max: u32) -> Path {
    let vs = vertices(g);
    loop {
        let v = vs.choose(rng).unwrap();
        let d = Degree::new((0..g.rank()).map(|_| rng.gen_range(0..=max)).collect());
        let paths = enumerate_paths(g, v, &d).unwrap();
        if let Some(p) = paths.choose(rng) {
            return p.clone();
        }
    }
}

/// A random monomial `s_mu s_nu*` with legs of degree at most `max` per coordinate.
pub fn random_monomial(rng: &mut ChaCha8Rng, g: &KGraphPresentation, max: u32) -> Element {
    let mu = random_path(rng, g, max);
    let d = Degree::new((0..g.rank()).map(|_| rng.gen_range(0..=max)).collect());
    // nu ranges over the paths of degree d with the same source as mu
    let candidates: Vec<Path> = vertices(g)
        .iter()
        .flat_map(|v| enumerate_paths(g, v, &d).unwrap())
        .filter(|p| p.source() == mu.source())
        .collect();
    let nu = candidates
        .choose(rng)
        .cloned()
        .unwrap_or_else(|| Path::vertex(mu.source().clone(), g.rank()));
    let m = Monomial::new(mu, nu).unwrap();
    Element::monomial(g, m, Scalar::from_integer(1.into()))
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let p: i64 = rng.gen_range(-4..=4);
    let q: i64 = rng.gen_range(1..=3);
    Scalar::new(p.into(), q.into())
}

/// A random combination of up to `terms` monomials.
pub fn random_element(rng: &mut ChaCha8Rng, g: &KGraphPresentation, terms: usize, max: u32) -> Element {
    let mut a = Element::zero(g);
    for _ in 0..rng.gen_range(1..=terms) {
        a = a.add(&random_monomial(rng, g, max).scale(&random_scalar(rng))).unwrap();
    }
    a
}

/// `s_lambda s_lambda*`.
pub fn range_projection(g: &KGraphPresentation, lambda: &Path) -> Element {
    mul(g, &gen(g, lambda).unwrap(), &gen_star(g, lambda).unwrap()).unwrap()
}

pub fn p(g: &KGraphPresentation, v: &str) -> Element {
    unit(g, &v.into()).unwrap()
}
