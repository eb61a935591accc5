mod common;

use std::sync::Arc;

use proptest::prelude::*;
use qweb::evaluator::*;
use qweb::qsym::{index_set, parity, phi, t_matrix};
use qweb::scalars::{qint, ScalarQ};
use qweb::superlinear::{SuperMap, SuperSpace};
use qweb::webir::*;
use qweb::Error;

fn web(s: &str) -> WebDiagram {
    parse_web(s).unwrap()
}

fn eval(ctx: &EvalContext, s: &str) -> SuperMap {
    ctx.eval_diagram(&web(s)).unwrap()
}

fn space(ctx: &EvalContext, o: &str) -> Arc<SuperSpace> {
    ctx.eval_object(&parse_object(o).unwrap()).unwrap()
}

/// Position of `v_a` in the basis of V_n.
fn pos(n: usize, a: i32) -> usize {
    index_set(n).iter().position(|&x| x == a).unwrap()
}

fn sgn(odd: bool) -> ScalarQ {
    if odd {
        -ScalarQ::one()
    } else {
        ScalarQ::one()
    }
}

fn assert_same(a: &SuperMap, b: &SuperMap) {
    let c = compare_maps(a, b, None);
    assert!(c.passed(), "{:?}", c);
}

#[test]
fn object_dimensions() {
    assert_eq!(space(&EvalContext::new(1), "u1").dim(), 2);
    assert_eq!(space(&EvalContext::new(1), "d2").dim(), 2);
    assert_eq!(space(&EvalContext::new(2), "u1 d1").dim(), 16);
    assert_eq!(space(&EvalContext::new(2), "u2").dim(), 8);
}

#[test]
fn dimension_cap_is_enforced() {
    let ctx = EvalContext::with_cap(2, 64);
    let err = ctx.eval_object(&parse_object("u1 u1 u1 u1").unwrap()).unwrap_err();
    assert!(matches!(err, Error::DimensionCap { dim: 256, cap: 64 }));
}

#[test]
fn thin_dot_matches_closed_formula() {
    for n in 1..=3 {
        let ctx = EvalContext::new(n);
        let v = space(&ctx, "u1");
        let d = 2 * n;
        let entries = index_set(n).into_iter().map(|b| {
            let c = &ScalarQ::i() * &sgn(parity(b) == 1);
            (pos(n, -b), pos(n, b), c)
        });
        let oracle = SuperMap::from_entries(v.clone(), v.clone(), 1, entries).unwrap();
        assert_eq!(oracle.source().dim(), d);
        assert_same(&eval(&ctx, "dot(1)"), &oracle);
    }
}

#[test]
fn thin_dot_at_rank_one() {
    let ctx = EvalContext::new(1);
    let m = eval(&ctx, "dot(1)");
    assert_eq!(m.entry(pos(1, -1), pos(1, 1)), ScalarQ::i());
    assert_eq!(m.entry(pos(1, 1), pos(1, -1)), -ScalarQ::i());
}

#[test]
fn thin_rightward_cap_matches_closed_formula() {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        let src = space(&ctx, "u1 d1");
        let dim = 2 * n;
        let entries = index_set(n).into_iter().map(|a| {
            let odd = parity(a) == 1;
            let e = if odd { -2 * a } else { 2 * a } - (2 * n as i32 + 1);
            (0, pos(n, a) * dim + pos(n, a), &sgn(odd) * &ScalarQ::q_pow(e))
        });
        let oracle = SuperMap::from_entries(src, space(&ctx, ""), 0, entries).unwrap();
        assert_same(&eval(&ctx, "rcap(1)"), &oracle);
    }
}

#[test]
fn thin_upward_crossing_is_the_t_operator() {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        assert_same(&eval(&ctx, "xo(u1,u1)"), &t_matrix(n));
    }
}

/// `v_a^* (x) v_b -> (-1)^{p(a)p(b)} q^{phi(b,a)} v_b (x) v_a^* + ...` for the
/// leftward crossings; `over` selects which correction terms appear.
fn leftward_oracle(n: usize, src: Arc<SuperSpace>, tgt: Arc<SuperSpace>, over: bool) -> SuperMap {
    let dim = 2 * n;
    let qt = ScalarQ::qtilde();
    let idx = index_set(n);
    let mut entries = Vec::new();
    for &a in &idx {
        for &b in &idx {
            let col = pos(n, a) * dim + pos(n, b);
            let c = &sgn(parity(a) & parity(b) == 1) * &ScalarQ::q_pow(phi(b, a));
            entries.push((pos(n, b) * dim + pos(n, a), col, c));
            if a == b {
                for &k in &idx {
                    let hit = if over { k <= b } else { b < k };
                    if hit {
                        let c = if over { -qt.clone() } else { qt.clone() };
                        entries.push((pos(n, k) * dim + pos(n, k), col, c));
                    }
                }
            }
            if a == -b {
                for &k in idx.iter().filter(|&&k| -b < k) {
                    entries.push((pos(n, -k) * dim + pos(n, k), col, &qt * &sgn(parity(k) == 1)));
                }
            }
        }
    }
    SuperMap::from_entries(src, tgt, 0, entries).unwrap()
}

#[test]
fn thin_leftward_crossings_match_closed_formulas() {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        let (src, tgt) = (space(&ctx, "d1 u1"), space(&ctx, "u1 d1"));
        assert_same(&eval(&ctx, "xu(d1,u1)"), &leftward_oracle(n, src.clone(), tgt.clone(), false));
        assert_same(&eval(&ctx, "xo(d1,u1)"), &leftward_oracle(n, src, tgt, true));
    }
}

#[test]
fn rightward_crossings_invert_leftward_ones() {
    let ctx = EvalContext::new(1);
    for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for (right, left) in [("xo", "xu"), ("xu", "xo")] {
            let r = eval(&ctx, &format!("{right}(u{l},d{k})"));
            let inv = eval(&ctx, &format!("{left}(d{k},u{l})")).invert().unwrap();
            assert_same(&r, &inv);
        }
    }
}

#[test]
fn mates_agree_with_their_expansion() {
    for n in 1..=2 {
        let ctx = EvalContext::with_cap(n, 1 << 16);
        for g in ["ddot(1)", "ddot(2)", "dmerge(1,1)", "dsplit(1,2)", "xo(d1,d1)", "xu(d1,d2)", "xo(d2,d1)"] {
            let d = web(g);
            let Block::Gen(gen) = &d.slices()[0][0] else { unreachable!() };
            let direct = ctx.eval_generator(gen).unwrap();
            let expanded = ctx.eval_diagram(&unfold_generator(gen).unwrap()).unwrap();
            assert_same(&direct, &expanded);
        }
    }
}

#[test]
fn merge_then_split_at_rank_one() {
    let ctx = EvalContext::new(1);
    let m = eval(&ctx, "merge(1,1)");
    assert_eq!(m.source().dim(), 4);
    assert_eq!(m.target().dim(), 2);
    let digon = eval(&ctx, "split(1,1) ; merge(1,1)");
    assert_same(&digon, &SuperMap::identity(&space(&ctx, "u2")).scale(&qint(2, 1)));
}

fn run_family(family: &str) {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        for (id, p) in suite(family).unwrap() {
            let c = verify_relation(id, &p, &ctx);
            assert!(c.passed(), "{} {:?} at n={}: {:?}", id, p, n, c);
        }
    }
}

#[test]
fn upward_relations() {
    run_family("upward");
}

#[test]
fn ladder_relations() {
    run_family("ladder");
}

#[test]
fn hecke_clifford_relations() {
    run_family("hecke");
}

#[test]
fn untwisting() {
    run_family("untwist");
}

#[test]
fn braiding_relations() {
    run_family("braiding");
}

#[test]
fn thin_oriented_relations() {
    run_family("thin");
}

#[test]
fn twists_and_pitchforks() {
    run_family("twist");
}

#[test]
fn bubbles_and_zigzags() {
    run_family("bubble");
}

#[test]
fn catalog_ids_are_unique_and_buildable() {
    let entries = catalog_entries();
    let mut ids: Vec<_> = entries.iter().map(|e| e.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), entries.len());
    let all = suite("all").unwrap();
    for e in entries {
        assert!(all.iter().any(|(id, _)| *id == e.id), "{} has no instance", e.id);
    }
    assert!(suite("nonsense").is_err());
    assert!(build_relation("digon", &[1]).is_err());
    assert!(build_relation("nonsense", &[]).is_err());
}

#[test]
fn dot_on_the_under_strand_does_not_slide() {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        let c = verify_diagrams(
            &web("id(u1) * dot(1) ; xo(u1,u1)"),
            &web("xo(u1,u1) ; dot(1) * id(u1)"),
            &ctx,
            Some(&default_q0()),
        );
        assert!(matches!(c, Check::Fail(_)), "{:?}", c);
    }
}

#[test]
fn literal_dot_on_exploded_strand_is_off_by_a_factorial() {
    let ctx = EvalContext::new(1);
    let c = verify_diagrams(&web("split(1,1) * id(u1) ; id(u1) * dot(1) * id(u1) ; merge(1,1) * id(u1)"), &web("id(u2 u1)"), &ctx, None);
    assert!(!c.passed());
    let exploded = explode(3).then(&web("dot(1) * id(u1 u1)")).unwrap().then(&merge_all(3)).unwrap();
    let c = verify_diagrams(&exploded, &web("dot(3)"), &ctx, None);
    assert!(matches!(c, Check::Fail(_)));
}

#[test]
fn closed_webs_vanish() {
    for n in 1..=2 {
        let ctx = EvalContext::new(n);
        for s in [
            "lcup(1) ; rcap(1)",
            "lcup(1) ; dot(1) * id(d1) ; rcap(1)",
            "rcup(1) ; lcap(1)",
            "rcup(1) ; id(d1) * dot(1) ; lcap(1)",
            "lcup(2) ; rcap(2)",
            "lcup(2) ; split(1,1) * id(d2) ; xo(u1,u1) * id(d2) ; merge(1,1) * id(d2) ; rcap(2)",
        ] {
            assert!(eval(&ctx, s).is_zero(), "{} at n={}", s, n);
        }
    }
}

#[test]
fn witness_names_the_first_differing_entry() {
    let ctx = EvalContext::new(1);
    let c = verify_diagrams(&web("dot(1) ; dot(1)"), &web("dot(1)"), &ctx, None);
    assert!(matches!(c, Check::Error(_) | Check::Fail(_)));
    let c = verify_diagrams(&web("xo(u1,u1)"), &web("xu(u1,u1)"), &ctx, Some(&default_q0()));
    let Check::Fail(w) = c else { panic!("{:?}", c) };
    assert_ne!(w.lhs, w.rhs);
    let c = verify_diagrams(&web("dot(1)"), &web("id(u1)"), &ctx, None);
    assert!(!c.passed());
    let c = verify_diagrams(&web("id(u1)"), &web("id(u2)"), &ctx, None);
    assert!(matches!(c, Check::Error(_)));
}

#[test]
fn images_are_equivariant() {
    let ctx2 = EvalContext::new(2);
    for s in ["merge(1,1)", "split(1,1)", "dot(1)", "lcup(1)", "rcap(1)", "xo(d1,u1)", "ddot(1)", "xu(u1,d1)"] {
        let c = verify_equivariance(&web(s), &ctx2);
        assert!(c.passed(), "{}: {:?}", s, c);
    }
    let ctx1 = EvalContext::new(1);
    assert!(verify_equivariance(&web("dot(1)"), &ctx1).passed());
}

#[test]
fn corrupted_dot_breaks_equivariance() {
    let ctx = EvalContext::new(1);
    let o = parse_object("u1").unwrap();
    let rep = ctx.representation(&o).unwrap();
    let dot = eval(&ctx, "dot(1)");
    let mut triples = dot.triples();
    triples[0].2 = -triples[0].2.clone();
    let bad = SuperMap::from_entries(dot.source().clone(), dot.target().clone(), 1, triples).unwrap();
    let c = verify_map_equivariance(&bad, &rep, &rep);
    let Check::Fail(w) = c else { panic!("{:?}", c) };
    assert!(!w.row.is_empty());
}

#[test]
fn specialization_commutes_with_composition() {
    let ctx = EvalContext::new(1);
    let q0 = default_q0();
    for s in ["xo(u1,u1) ; dot(1) * id(u1) ; xu(u1,u1)", "id(u1) * lcup(1) ; xo(u1,u1) * id(d1) ; id(u1) * rcap(1)"] {
        let d = web(s);
        let mut prod: Option<Vec<Vec<qweb::GaussianRational>>> = None;
        for slice in d.slices() {
            let src = slice.iter().fold(WebObject::unit(), |a, b| a.concat(&b.source()));
            let step = ctx.eval_diagram(&WebDiagram::from_slices(src, vec![slice.clone()]).unwrap()).unwrap();
            let m = step.specialize(&q0).unwrap();
            prod = Some(match prod {
                None => m,
                Some(p) => matmul(&m, &p),
            });
        }
        assert_eq!(ctx.eval_diagram(&d).unwrap().specialize(&q0).unwrap(), prod.unwrap());
    }
}

fn matmul(a: &[Vec<qweb::GaussianRational>], b: &[Vec<qweb::GaussianRational>]) -> Vec<Vec<qweb::GaussianRational>> {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, |x| x.len()));
    let mut out = vec![vec![qweb::GaussianRational::zero(); c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                out[i][j] = &out[i][j] + &(&a[i][t] * &b[t][j]);
            }
        }
    }
    out
}

const ENDOS: &[&str] = &[
    "xo(u1,u1)",
    "xu(u1,u1)",
    "dot(1) * id(u1)",
    "id(u1) * dot(1)",
    "merge(1,1) ; split(1,1)",
    "dot(1) * dot(1)",
    "id(u1 u1)",
];

const SINGLES: &[&str] = &["dot(1)", "id(u1)", "lcup(1) * id(u1) ; id(u1) * lcap(1)", "dot(1) ; dot(1)"];

fn endo_word() -> impl Strategy<Value = String> {
    prop::collection::vec(0..ENDOS.len(), 1..5).prop_map(|ix| ix.into_iter().map(|i| ENDOS[i]).collect::<Vec<_>>().join(" ; "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn tensor_of_images_is_image_of_tensor(a in endo_word(), b in 0..SINGLES.len()) {
        let ctx = EvalContext::new(1);
        let (da, db) = (web(&a), web(SINGLES[b]));
        let lhs = ctx.eval_diagram(&WebDiagram::tensor(&da, &db)).unwrap();
        let rhs = ctx.eval_diagram(&da).unwrap().tensor(&ctx.eval_diagram(&db).unwrap());
        prop_assert!(compare_maps(&lhs, &rhs, None).passed());
        let lhs = ctx.eval_diagram(&WebDiagram::tensor(&db, &da)).unwrap();
        let rhs = ctx.eval_diagram(&db).unwrap().tensor(&ctx.eval_diagram(&da).unwrap());
        prop_assert!(compare_maps(&lhs, &rhs, None).passed());
    }

    #[test]
    fn composition_of_images_is_image_of_composition(a in endo_word(), b in endo_word()) {
        let ctx = EvalContext::new(1);
        let (da, db) = (web(&a), web(&b));
        let lhs = ctx.eval_diagram(&da.then(&db).unwrap()).unwrap();
        let rhs = ctx.eval_diagram(&db).unwrap().compose(&ctx.eval_diagram(&da).unwrap()).unwrap();
        prop_assert!(compare_maps(&lhs, &rhs, None).passed());
    }

    #[test]
    fn display_round_trips(a in endo_word()) {
        let d = web(&a);
        let again = parse_web(&d.to_string()).unwrap();
        prop_assert_eq!(&again, &d);
    }

    #[test]
    fn expansion_is_idempotent_and_primitive(a in endo_word()) {
        let d = web(&a);
        let e = expand_macros(&d);
        prop_assert!(e.is_primitive());
        prop_assert_eq!(e.source(), d.source());
        prop_assert_eq!(e.target(), d.target());
        prop_assert_eq!(expand_macros(&e), e.clone());
        let ctx = EvalContext::new(1);
        prop_assert!(compare_maps(&ctx.eval_diagram(&d).unwrap(), &ctx.eval_diagram(&e).unwrap(), None).passed());
    }
}
