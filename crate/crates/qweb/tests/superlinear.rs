use std::sync::Arc;

use proptest::prelude::*;
use qweb::scalars::{GaussianRational, ScalarQ};
use qweb::superlinear::*;

fn space(even: usize, odd: usize) -> Arc<SuperSpace> {
    let basis = (0..even + odd).map(|k| (Label::Idx(k as i32), (k >= even) as u8)).collect();
    SuperSpace::new(basis).unwrap()
}

fn s(n: i64) -> ScalarQ {
    ScalarQ::from_int(n)
}

#[test]
fn tensor_signs() {
    let v = space(1, 1);
    let id = SuperMap::identity(&v);
    let idid = id.tensor(&id);
    assert_eq!(idid, SuperMap::identity(&tensor_space(&v, &v)));
    // g odd, v odd: sign -1
    let g = SuperMap::from_entries(v.clone(), v.clone(), 1, vec![(1, 0, s(1)), (0, 1, s(1))]).unwrap();
    let fg = id.tensor(&g);
    let vv = tensor_space(&v, &v);
    let col = |a: i32, b: i32| vv.position(&Label::Tuple(vec![Label::Idx(a), Label::Idx(b)])).unwrap();
    assert_eq!(fg.entry(col(1, 1), col(1, 0)), s(-1));
    assert_eq!(fg.entry(col(0, 1), col(0, 0)), s(1));
    assert_eq!(fg.parity(), 1);
}

#[test]
fn flips() {
    let v = space(1, 1);
    let f = flip(&v, &v);
    assert_eq!(f.compose(&f).unwrap(), SuperMap::identity(&tensor_space(&v, &v)));
    let vv = tensor_space(&v, &v);
    let c = vv.position(&Label::Tuple(vec![Label::Idx(1), Label::Idx(1)])).unwrap();
    assert_eq!(f.entry(c, c), s(-1));
}

#[test]
fn scalars_and_ranks() {
    let v = space(2, 2);
    assert_eq!(SuperMap::scalar(&v, &s(3)).scalar_of().unwrap(), s(3));
    let bad = SuperMap::identity(&v).add(&SuperMap::from_entries(v.clone(), v.clone(), 0, vec![(0, 1, s(1))]).unwrap()).unwrap();
    assert_eq!(bad.scalar_of().unwrap_err().to_string(), "not scalar");
    let q0 = GaussianRational::from_ratio(7, 5);
    assert_eq!(SuperMap::identity(&v).rank_at(&q0).unwrap(), 4);
    assert_eq!(SuperMap::zero(v.clone(), v.clone(), 0).rank_at(&q0).unwrap(), 0);
    let sing = SuperMap::from_entries(v.clone(), v.clone(), 0, vec![(0, 0, s(1))]).unwrap();
    assert_eq!(sing.invert().unwrap_err().to_string(), "singular");
    let w = space(1, 0);
    assert!(SuperMap::identity(&v).compose(&SuperMap::identity(&w)).unwrap_err().to_string().contains("object mismatch"));
}

fn arb_map(v: Arc<SuperSpace>, parity: u8) -> impl Strategy<Value = SuperMap> {
    let d = v.dim();
    proptest::collection::vec((0..d, 0..d, -2i64..=2, -1i32..=1), 0..6).prop_map(move |es| {
        let entries: Vec<_> = es
            .into_iter()
            .filter(|(r, c, _, _)| v.parity(*r) == v.parity(*c) ^ parity)
            .map(|(r, c, a, e)| (r, c, ScalarQ::from_int(a) * ScalarQ::q_pow(e)))
            .collect();
        let mut m = SuperMap::zero(v.clone(), v.clone(), parity);
        for (r, c, x) in entries {
            let one = SuperMap::from_entries(v.clone(), v.clone(), parity, vec![(r, c, x)]).unwrap();
            m = m.add(&one).unwrap();
        }
        m
    })
}

fn arb_quad() -> impl Strategy<Value = (SuperMap, SuperMap, SuperMap, SuperMap)> {
    let v = space(2, 2);
    (0u8..2, 0u8..2, 0u8..2, 0u8..2).prop_flat_map(move |(a, b, c, d)| {
        (arb_map(v.clone(), a), arb_map(v.clone(), b), arb_map(v.clone(), c), arb_map(v.clone(), d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn super_interchange((f, g, h, k) in arb_quad()) {
        let lhs = f.tensor(&g).compose(&h.tensor(&k)).unwrap();
        let rhs = f.compose(&h).unwrap().tensor(&g.compose(&k).unwrap());
        let rhs = if g.parity() & h.parity() == 1 { rhs.neg() } else { rhs };
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.tensor(&g).check_parity());
    }

    #[test]
    fn identity_is_neutral((f, _g, _h, _k) in arb_quad()) {
        prop_assert_eq!(SuperMap::identity(f.target()).compose(&f).unwrap(), f.clone());
    }

    #[test]
    fn inverse_is_inverse(d in proptest::collection::vec(1i64..=3, 4), (f, _g, _h, _k) in arb_quad()) {
        let v = f.source().clone();
        let diag = SuperMap::from_entries(v.clone(), v.clone(), 0, d.iter().enumerate().map(|(i, &x)| (i, i, ScalarQ::from_int(x)))).unwrap();
        let m = if f.parity() == 0 { diag.add(&f.scale(&ScalarQ::qtilde())).unwrap() } else { diag };
        if let Ok(inv) = m.invert() {
            prop_assert_eq!(inv.compose(&m).unwrap(), SuperMap::identity(&v));
        }
    }
}
