//! Finite Coxeter families as hyperreflection systems.

mod common;

use common::*;
use hrg::coxeter::CoxeterSpec;
use hrg::groups::IDENTITY;
use hrg::hrs::{verify_system, walls};
use hrg::CoxeterFamily;

fn families() -> Vec<CoxeterFamily> {
    let mut out: Vec<CoxeterFamily> = (1..=4).map(CoxeterFamily::A).collect();
    out.extend((2..=12).map(CoxeterFamily::I2));
    out.extend([CoxeterFamily::B(2), CoxeterFamily::B(3)]);
    out
}

fn expected_order(f: CoxeterFamily) -> usize {
    match f {
        CoxeterFamily::A(n) => (1..=n + 1).product(),
        CoxeterFamily::I2(m) => 2 * m,
        CoxeterFamily::B(n) => (1..=n).product::<usize>() << n,
    }
}

#[test]
fn families_have_their_orders_and_verify() {
    for f in families() {
        let sys = cox(f);
        assert_eq!(sys.group().order(), expected_order(f), "{}", f.label());
        assert!(verify_system(&sys).pass, "{}", f.label());
        assert!(sys.sigma().iter().all(|s| s.len() == 2));
    }
}

#[test]
fn generator_products_have_the_matrix_orders() {
    for f in families() {
        let sys = cox(f);
        let g = sys.group();
        let m = f.matrix();
        let gens: Vec<_> = sys.sigma().iter().map(|s| s.nonidentity().next().unwrap()).collect();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let p = g.mul(gens[i], gens[j]);
                let mut x = p;
                let mut k = 1;
                while x != IDENTITY {
                    x = g.mul(x, p);
                    k += 1;
                }
                assert_eq!(k, m[i][j], "{} ({i},{j})", f.label());
            }
        }
    }
}

#[test]
fn lengths_match_breadth_first_search() {
    for f in families() {
        let sys = cox(f);
        let lengths = bfs_lengths(&sys);
        for g in sys.group().elements() {
            assert_eq!(sys.length(g), lengths[g], "{}", f.label());
        }
    }
}

#[test]
fn walls_are_reflections_and_count_the_positive_roots() {
    for f in families() {
        let sys = cox(f);
        let reflections = sys.group().elements().filter(|&g| g != IDENTITY && sys.group().mul(g, g) == IDENTITY);
        let ws = walls(&sys);
        assert!(ws.iter().all(|w| w.subgroup.len() == 2));
        // The longest element crosses every wall.
        let longest = sys.group().elements().map(|g| sys.length(g)).max().unwrap();
        assert_eq!(ws.len(), longest, "{}", f.label());
        assert!(ws.len() <= reflections.count());
    }
}

#[test]
fn unsupported_families_are_rejected() {
    for f in
        [CoxeterFamily::A(0), CoxeterFamily::A(5), CoxeterFamily::I2(1), CoxeterFamily::I2(13), CoxeterFamily::B(4)]
    {
        assert!(hrg::coxeter_system(f).is_err());
    }
    for text in [r#"{"family":"A3"}"#, r#"{"type":"coxeter","family":"I2","m":5}"#, r#"{"family":"B","n":2}"#] {
        let spec: CoxeterSpec = serde_json::from_str(text).unwrap();
        assert!(spec.build().is_ok(), "{text}");
    }
}
