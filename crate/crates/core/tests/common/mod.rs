#![allow(dead_code)]

use graphflow::graph::{GraphSum, UnorientedGraph};
use graphflow::rational::ratio;
use graphflow::superpoly::{Monomial, SuperPoly, Var, XiSet};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random simple graph on `1..=max_n` vertices with shuffled wedge order.
pub fn random_graph(rng: &mut StdRng, max_n: usize, max_e: usize) -> UnorientedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let e = rng.gen_range(0..=pairs.len().min(max_e));
    pairs.truncate(e);
    UnorientedGraph::new(n, &pairs).unwrap()
}

pub fn random_sum(rng: &mut StdRng, max_n: usize, max_e: usize) -> GraphSum {
    let mut s = GraphSum::new();
    for _ in 0..rng.gen_range(1..=4) {
        let g = random_graph(rng, max_n, max_e);
        s.add_graph(&g, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
    }
    s
}

/// Random polynomial multivector of ξ-degree `k` in dimension `r`, coordinate
/// degree at most 2.
pub fn random_multivector(rng: &mut StdRng, r: usize, k: usize) -> SuperPoly {
    let subsets: Vec<Vec<usize>> = (0u32..1 << r)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..r).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut p = SuperPoly::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let xi = XiSet::from_indices(subsets.choose(rng).unwrap()).unwrap();
        let mut f = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            f.push((Var::Coord(rng.gen_range(0..r) as u8), 1));
        }
        let c = rng.gen_range(-3..=3);
        p.add_term(xi, Monomial::from_factors(f), ratio(c, 1));
    }
    p
}

/// Random bivector with polynomial coefficients; generically not Poisson.
pub fn random_bivector(rng: &mut StdRng, r: usize) -> SuperPoly {
    random_multivector(rng, r, 2)
}

/// Bivector whose coefficients have degree up to `max_deg`, dense enough that
/// third derivatives survive.
pub fn rich_bivector(rng: &mut StdRng, r: usize, max_deg: usize) -> SuperPoly {
    let mut p = SuperPoly::zero(r);
    for i in 0..r {
        for j in i + 1..r {
            for _ in 0..2 {
                let f: Vec<(Var, u16)> = (0..rng.gen_range(1..=max_deg))
                    .map(|_| (Var::Coord(rng.gen_range(0..r) as u8), 1))
                    .collect();
                let c = ratio(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
                p.add_term(XiSet::from_indices(&[i, j]).unwrap(), Monomial::from_factors(f), c);
            }
        }
    }
    p
}

/// `(−1)^k` as a rational.
pub fn parity(k: usize) -> graphflow::Q {
    ratio(if k % 2 == 0 { 1 } else { -1 }, 1)
}
