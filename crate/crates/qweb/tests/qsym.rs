mod common;

use common::quotient::{quotient_block, sym_relations};
use proptest::prelude::*;
use qweb::qsym::*;
use qweb::scalars::ScalarQ;
use qweb::superlinear::{tensor_space, SuperMap};

#[test]
fn phi_values() {
    assert_eq!(phi(1, 1), 1);
    assert_eq!(phi(1, 2), 0);
    assert_eq!(phi(-1, 1), 1);
    assert_eq!(phi(1, -1), -1);
}

#[test]
fn t_columns() {
    let t = t_matrix(2);
    let v = t.source().clone();
    let col = |a: i32, b: i32| {
        let l = qweb::superlinear::Label::Tuple(vec![
            qweb::superlinear::Label::Sym(vec![a]),
            qweb::superlinear::Label::Sym(vec![b]),
        ]);
        v.position(&l).unwrap()
    };
    let qt = ScalarQ::qtilde();
    assert_eq!(t.entry(col(1, 1), col(1, 1)), ScalarQ::q_pow(1));
    assert_eq!(t.entry(col(-1, -1), col(1, 1)), qt);
    assert_eq!(t.column(col(1, 1)).len(), 2);
    assert_eq!(t.entry(col(2, 1), col(1, 2)), ScalarQ::one());
    assert_eq!(t.entry(col(1, 2), col(1, 2)), qt);
    assert_eq!(t.entry(col(-1, -2), col(1, 2)), qt);
    assert_eq!(t.column(col(1, 2)).len(), 3);
}

#[test]
fn hecke_and_braid_relations() {
    for n in 1..=2 {
        let t = t_matrix(n);
        let id = SuperMap::identity(t.source());
        let lhs = t.compose(&t).unwrap();
        let rhs = t.scale(&ScalarQ::qtilde()).add(&id).unwrap();
        assert_eq!(lhs, rhs, "n={}", n);

        let v = vn(n);
        let idv = SuperMap::identity(&v);
        let a = t.tensor(&idv);
        let b = idv.tensor(&t);
        let b = b.with_spaces(a.source().clone(), a.target().clone());
        let l = a.compose(&b).unwrap().compose(&a).unwrap();
        let r = b.compose(&a).unwrap().compose(&b).unwrap();
        assert_eq!(l, r, "braid n={}", n);
        assert_eq!(a.source().dim(), tensor_space(&v, &tensor_space(&v, &v)).dim());
    }
}

#[test]
fn known_normal_forms() {
    let m12 = SymMonomial::from_indices(&[1, 2]);
    let r = sym_normalize(&[1, 2], 2).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r.coeff(&m12), ScalarQ::one());
    assert!(sym_normalize(&[-1, -1], 2).unwrap().is_zero());
    let r = sym_normalize(&[2, 1], 2).unwrap();
    assert_eq!(r.coeff(&m12), ScalarQ::q_pow(-1));
    assert_eq!(r.coeff(&SymMonomial::from_indices(&[-2, -1])), ScalarQ::one() - ScalarQ::q_pow(-2));
    assert_eq!(r.len(), 2);
}

fn words(d: usize, n: i32) -> Vec<Vec<i32>> {
    let idx: Vec<i32> = (-n..=n).filter(|&x| x != 0).collect();
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| idx.iter().map(move |&a| [w.clone(), vec![a]].concat()))
            .collect();
    }
    out
}

#[test]
fn normalize_matches_ideal_quotient_oracle() {
    for n in 1..=2 {
        let rels = sym_relations(n);
        for d in 1..=3 {
            let mut cache = std::collections::HashMap::new();
            for w in words(d, n) {
                let lw: Vec<(i32, i32)> = w.iter().map(|&a| (1, a)).collect();
                if !cache.contains_key(&lw) {
                    cache.extend(quotient_block(&lw, &rels));
                }
                let expect = &cache[&lw];
                let got = sym_normalize(&w, n as usize).unwrap();
                assert_eq!(got.len(), expect.len(), "word {:?} n={}", w, n);
                for (mono, c) in expect {
                    let idx: Vec<i32> = mono.iter().map(|l| l.1).collect();
                    assert_eq!(got.coeff(&SymMonomial::from_indices(&idx)), *c, "word {:?} n={}", w, n);
                }
            }
        }
    }
}

#[test]
fn basis_and_dimension() {
    assert_eq!(sym_basis(0, 3).len(), 1);
    assert_eq!(sym_basis(1, 3).len(), 6);
    assert_eq!(sym_dim(2, 1), 2);
    assert_eq!(sym_dim(2, 2), 8);
    for d in 0..=4 {
        for n in 1..=3 {
            let b = sym_basis(d, n);
            assert_eq!(b.len(), sym_dim(d, n));
            // brute force: sorted index tuples with no repeated odd index
            let brute = words(d, n as i32)
                .into_iter()
                .filter(|w| w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && p[0] > 0)))
                .count();
            assert_eq!(brute, b.len());
            assert!(b.iter().all(|m| m.is_admissible() && m.degree() as usize == d));
        }
    }
}

#[test]
fn fuel_exhaustion_is_reported() {
    let e = sym_normalize_with_fuel(&[2, 1, -2], 2, Some(1)).unwrap_err();
    assert!(e.to_string().contains("fuel exhausted"));
}

proptest! {
    #[test]
    fn ordered_monomials_are_fixed(w in proptest::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 0..4)) {
        let mono = SymMonomial::from_indices(&w);
        prop_assume!(mono.is_admissible());
        let r = sym_normalize(&mono.indices(), 2).unwrap();
        prop_assert_eq!(r.len(), 1);
        prop_assert_eq!(r.coeff(&mono), ScalarQ::one());
    }

    #[test]
    fn multiplication_is_associative(a in prop_oneof![-2i32..=-1, 1i32..=2], b in prop_oneof![-2i32..=-1, 1i32..=2], c in prop_oneof![-2i32..=-1, 1i32..=2]) {
        let x = sym_normalize(&[a], 2).unwrap();
        let y = sym_normalize(&[b], 2).unwrap();
        let z = sym_normalize(&[c], 2).unwrap();
        let l = sym_mul(&sym_mul(&x, &y, 2).unwrap(), &z, 2).unwrap();
        let r = sym_mul(&x, &sym_mul(&y, &z, 2).unwrap(), 2).unwrap();
        prop_assert_eq!(format!("{:?}", l), format!("{:?}", r));
    }
}
