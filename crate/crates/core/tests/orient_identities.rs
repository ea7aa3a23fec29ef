mod common;

use std::collections::BTreeMap;
use std::path::Path;

use graphflow::cli::{parse_superpoly, Scope};
use graphflow::complex::{CocycleLibrary, CocycleRecord};
use graphflow::graph::UnorientedGraph;
use graphflow::orient::{
    abstract_bivector, enumerate_leibniz, evaluate, jacobiator_insertion_sum, orient_flow, parse_leibniz,
    tautological_diamond, Diamond,
};
use graphflow::poissonlab::PoissonModel;
use graphflow::rational::{q, ratio};
use graphflow::superpoly::{jacobiator, schouten, substitute, SuperPoly, Symbol, XiSet};
use proptest::prelude::*;
use rand::Rng;

/// Frozen after the equivariance and universality checks below.
const GOLDEN_R2: &str = "24*d[p]/dx1*d[p]/dx2^2*d[p]/dx1dx1dx2*xi1*xi2 - 24*d[p]/dx1^2*d[p]/dx2*d[p]/dx1dx2dx2*xi1*xi2 \
                         + 8*d[p]/dx1^3*d[p]/dx2dx2dx2*xi1*xi2 - 8*d[p]/dx2^3*d[p]/dx1dx1dx1*xi1*xi2";

fn gamma3() -> CocycleRecord {
    CocycleRecord::gamma3()
}

/// Scalar polynomial in x1, x2 with small coefficients.
fn random_scalar(rng: &mut impl Rng) -> SuperPoly {
    let mut p = SuperPoly::zero(2);
    for _ in 0..rng.gen_range(2..=4) {
        let (a, b) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let t = SuperPoly::coord(2, 0).pow(a).mul(&SuperPoly::coord(2, 1).pow(b));
        p.add_scaled(&t, &q(rng.gen_range(-3..=3)));
    }
    p
}

/// `f(M x)` for a ξ-free `f` in two variables.
fn compose_linear(f: &SuperPoly, m: [[i64; 2]; 2]) -> SuperPoly {
    let y: Vec<SuperPoly> = (0..2)
        .map(|i| {
            let mut s = SuperPoly::coord(2, 0).scale(&q(m[i][0]));
            s.add_scaled(&SuperPoly::coord(2, 1), &q(m[i][1]));
            s
        })
        .collect();
    let mut out = SuperPoly::zero(2);
    for (t, c) in f.terms() {
        let mut term = SuperPoly::constant(2, c.clone());
        for (v, e) in t.mono.factors() {
            let i = match v {
                graphflow::superpoly::Var::Coord(i) => *i as usize,
                _ => panic!("not a coordinate"),
            };
            term = term.mul(&y[i].pow(*e as u32));
        }
        out.add_assign(&term);
    }
    out
}

fn xi12() -> SuperPoly {
    SuperPoly::xi(2, 0).mul(&SuperPoly::xi(2, 1))
}

/// Coefficient of ξ1ξ2 in a 2D bivector.
fn scalar_part(b: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::zero(2);
    for (t, c) in b.terms() {
        assert_eq!(t.xi, XiSet::from_indices(&[0, 1]).unwrap());
        out.add_term(XiSet::empty(), t.mono.clone(), c.clone());
    }
    out
}

#[test]
fn golden_two_dimensional_flow() {
    let got = orient_flow(&gamma3().sum, &abstract_bivector(2)).unwrap();
    let want = parse_superpoly(GOLDEN_R2, &Scope::open(2)).unwrap();
    assert_eq!(got, want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// `Or(γ)` commutes with linear changes of coordinates: for `x = M y`,
    /// `p ξ1ξ2` pulls back to `det(M)⁻¹ p(M y) ξ1ξ2`, and a quartic flow picks up `det(M)⁻⁴·det(M)`.
    #[test]
    fn two_dimensional_flow_is_equivariant(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let m = loop {
            let m = [[rng.gen_range(-2..=2), rng.gen_range(-2..=2)], [rng.gen_range(-2..=2), rng.gen_range(-2..=2)]];
            if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0 {
                break m;
            }
        };
        let det = q(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
        let f = random_scalar(&mut rng);
        let g3 = gamma3();
        let qf = scalar_part(&orient_flow(&g3.sum, &f.mul(&xi12())).unwrap());
        prop_assume!(!qf.is_zero());
        let pulled = compose_linear(&f, m).scale(&(q(1) / &det));
        let qpulled = scalar_part(&orient_flow(&g3.sum, &pulled.mul(&xi12())).unwrap());
        prop_assert_eq!(qpulled, compose_linear(&qf, m).scale(&(q(1) / &det)));
    }

    /// Substituting a concrete `p` into the abstract flow equals the flow of the concrete bivector.
    #[test]
    fn flow_is_universal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = random_scalar(&mut rng);
        let g3 = gamma3();
        let abs = orient_flow(&g3.sum, &abstract_bivector(2)).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::new("p"), f.clone());
        prop_assert_eq!(substitute(&abs, &b).unwrap(), orient_flow(&g3.sum, &f.mul(&xi12())).unwrap());
    }

    #[test]
    fn evaluate_is_multilinear(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = rng.gen_range(2..=3);
        let g = UnorientedGraph::tetrahedron();
        let mut contents: Vec<SuperPoly> = (0..4).map(|_| common::random_bivector(&mut rng, r)).collect();
        let slot = rng.gen_range(0..4);
        let extra = common::random_bivector(&mut rng, r);
        let lambda = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let base = evaluate(&g, &contents).unwrap();
        let mut alt = contents.clone();
        alt[slot] = extra.clone();
        let other = evaluate(&g, &alt).unwrap();
        contents[slot].add_scaled(&extra, &lambda);
        let mut want = base;
        want.add_scaled(&other, &lambda);
        prop_assert_eq!(evaluate(&g, &contents).unwrap(), want);
    }

    /// Expanding the Jacobiator vertex into two bivector vertices agrees with
    /// evaluating it directly, on bivectors that are not Poisson.
    #[test]
    fn leibniz_expansion_matches_direct(seed in any::<u64>(), m in 1usize..=2) {
        let mut rng = common::rng(seed);
        let p = common::rich_bivector(&mut rng, 3, 3);
        let sinks = 2;
        let graphs = enumerate_leibniz(m, sinks).unwrap();
        prop_assume!(!graphs.is_empty());
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let direct = g.evaluate(&p).unwrap();
        prop_assert_eq!(&direct, &g.evaluate_expanded(&p).unwrap());
        prop_assert_eq!(parse_leibniz(&g.to_string()).unwrap(), g.clone());
    }

    /// The stored solution of the factorization problem holds for every bivector.
    #[test]
    fn stored_diamond_factorizes(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::rich_bivector(&mut rng, 3, 4);
        let d = Diamond::read(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/gamma3-r3.diamond")).unwrap();
        let bracket = schouten(&p, &orient_flow(&gamma3().sum, &p).unwrap()).unwrap();
        prop_assert!(!bracket.is_zero());
        prop_assert_eq!(d.evaluate(&p).unwrap(), bracket);
        prop_assert_eq!(Diamond::parse(&d.to_text(), "roundtrip").unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    /// The diamond rebuilt from γ3's edges equals the sum of Jacobiator insertions
    /// and twice the bracket of P with the flow, for any bivector.
    #[test]
    fn tautological_diamond_identity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let p = common::rich_bivector(&mut rng, 3, 3);
        let g3 = gamma3();
        let taut = tautological_diamond(&g3.sum).unwrap();
        let lhs = taut.evaluate(&p).unwrap();
        prop_assert_eq!(&lhs, &jacobiator_insertion_sum(&g3.sum, &p).unwrap());
        let bracket = schouten(&p, &orient_flow(&g3.sum, &p).unwrap()).unwrap();
        prop_assert!(!bracket.is_zero());
        prop_assert_eq!(lhs, bracket.scale(&q(2)));
    }
}

#[test]
fn stick_is_minus_the_schouten_bracket() {
    let mut rng = common::rng(7);
    for r in 2..=4 {
        for p in [abstract_bivector(r), common::random_bivector(&mut rng, r)] {
            let stick = evaluate(&UnorientedGraph::stick(), &[p.clone(), p.clone()]).unwrap();
            assert_eq!(stick, schouten(&p, &p).unwrap().scale(&q(-1)), "r={r}");
            assert_eq!(jacobiator(&p).unwrap(), schouten(&p, &p).unwrap().scale(&ratio(1, 2)));
        }
    }
}

#[test]
fn zero_graphs_evaluate_to_zero() {
    // Graphs equal to minus themselves must give zero on any equal contents.
    let mut rng = common::rng(11);
    let p = common::random_bivector(&mut rng, 3);
    for g in [UnorientedGraph::cycle(3).unwrap(), UnorientedGraph::path(3).unwrap()] {
        assert!(evaluate(&g, &vec![p.clone(); 3]).unwrap().is_zero());
    }
}

#[test]
fn flows_are_symmetries_of_builtin_models() {
    let lib = CocycleLibrary::from_env().unwrap();
    for name in ["so3", "nambu-sphere", "nambu-cubic", "constant2", "abstract2", "nambu-abstract"] {
        let m = PoissonModel::builtin(name).unwrap();
        let mut cocycles = vec!["gamma3"];
        if matches!(name, "so3" | "nambu-sphere" | "constant2") {
            cocycles.push("gamma5");
        }
        for c in cocycles {
            let q = orient_flow(&lib.get(c).unwrap().sum, &m.bivector).unwrap();
            assert!(schouten(&m.bivector, &q).unwrap().is_zero(), "{c} on {name}");
        }
    }
}
