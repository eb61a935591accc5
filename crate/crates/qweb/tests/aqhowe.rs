mod common;

use std::collections::HashMap;

use common::quotient::{aq_relations, quotient_block};
use qweb::aqhowe::*;
use qweb::lincomb::Lin;
use qweb::qsym::sym_dim;
use qweb::scalars::{qint, ScalarQ};
use qweb::superlinear::SuperMap;

fn el(w: &[(i32, i32)], m: usize, n: usize) -> AqElement {
    aq_normalize(w, m, n).unwrap()
}

fn mono(w: &[(i32, i32)]) -> AqMonomial {
    AqMonomial { factors: w.to_vec() }
}

fn g(side: Side, kind: GenKind, i: usize) -> GeneratorSymbol {
    GeneratorSymbol::new(side, kind, i)
}

fn letters(m: i32, n: i32) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for a in 1..=m {
        for b in (-n..=n).filter(|&x| x != 0) {
            out.push((a, b));
        }
    }
    out
}

fn words(d: usize, m: i32, n: i32) -> Vec<Vec<(i32, i32)>> {
    let ls = letters(m, n);
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|w| ls.iter().map(move |&l| [w.clone(), vec![l]].concat())).collect();
    }
    out
}

#[test]
fn normal_form_examples() {
    let r = el(&[(1, 1), (2, 1)], 2, 2);
    assert_eq!(r.len(), 1);
    assert_eq!(r.coeff(&mono(&[(1, 1), (2, 1)])), ScalarQ::one());
    assert!(el(&[(1, -1), (1, -1)], 2, 2).is_zero());
    let r = el(&[(2, 1), (1, 1)], 2, 2);
    assert_eq!(r.coeff(&mono(&[(1, 1), (2, 1)])), ScalarQ::q_pow(-1));
    assert_eq!(r.coeff(&mono(&[(1, -1), (2, -1)])), ScalarQ::qtilde());
    assert_eq!(r.len(), 2);
    // negative rows fold
    let r = el(&[(-2, -1)], 2, 2);
    assert_eq!(r.coeff(&mono(&[(2, 1)])), ScalarQ::one());
}

#[test]
fn normalize_matches_ideal_quotient_oracle() {
    let (m, n) = (2, 2);
    let rels = aq_relations(m, n);
    let mut cache: HashMap<Vec<(i32, i32)>, _> = HashMap::new();
    for d in 1..=3 {
        for w in words(d, m, n) {
            if !cache.contains_key(&w) {
                cache.extend(quotient_block(&w, &rels));
            }
            let expect = &cache[&w];
            let got = el(&w, m as usize, n as usize);
            assert_eq!(got.len(), expect.len(), "word {:?}", w);
            for (mo, c) in expect {
                assert_eq!(got.coeff(&mono(mo)), *c, "word {:?}", w);
            }
        }
    }
}

#[test]
fn action_examples() {
    for b in [-2, -1, 1, 2] {
        let x = el(&[(2, b)], 2, 2);
        let y = act(g(Side::M, GenKind::E, 1), &x, 2, 2).unwrap();
        assert_eq!(y, el(&[(1, b)], 2, 2));
    }
    for a in [1, 2] {
        let y = act(g(Side::N, GenKind::Kbar, 1), &el(&[(a, 1)], 2, 2), 2, 2).unwrap();
        assert_eq!(y, el(&[(a, -1)], 2, 2));
    }
    let x = el(&[(1, 1), (1, 2)], 2, 2);
    let y = act(g(Side::M, GenKind::K, 1), &x, 2, 2).unwrap();
    assert_eq!(y, x.scale(&ScalarQ::q_pow(2)));
    let e = act(g(Side::M, GenKind::Ebar, 2), &x, 3, 2).unwrap_err();
    assert!(e.to_string().contains("unsupported generator"));
}

#[test]
fn divided_power_examples() {
    let (m, n) = (2, 2);
    for x in [1, -1, 2] {
        for y in [1, 2, -2] {
            let w = el(&[(2, x), (2, y)], m, n);
            let got = divided_power_e(1, 2, &w, m, n).unwrap();
            assert_eq!(got, el(&[(1, x), (1, y)], m, n));
            let got = divided_power_e(1, 1, &w, m, n).unwrap();
            let mut expect = el(&[(1, x), (2, y)], m, n).scale(&ScalarQ::q_pow(1));
            expect.add_scaled(&el(&[(2, x), (1, y)], m, n), &ScalarQ::one());
            assert_eq!(got, expect);
        }
        let got = divided_power_e(1, 3, &el(&[(1, x)], m, n), m, n).unwrap();
        assert!(got.is_zero());
    }
}

/// Closed sum over placements of `a` copies of row r among `b` factors.
fn gamma_sum(r: i32, a: usize, xs: &[i32], m: usize, n: usize) -> AqElement {
    let b = xs.len();
    let mut out = Lin::new();
    for mask in 0u32..(1 << b) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let rows: Vec<i32> = (0..b).map(|k| if mask >> k & 1 == 1 { r } else { r + 1 }).collect();
        let mut gamma = 0;
        for p in 0..b {
            for q in p + 1..b {
                if rows[p] == r && rows[q] == r + 1 {
                    gamma += 1;
                }
            }
        }
        let w: Vec<(i32, i32)> = rows.iter().zip(xs).map(|(&i, &x)| (i, x)).collect();
        out.add_scaled(&el(&w, m, n), &ScalarQ::q_pow(gamma));
    }
    out
}

#[test]
fn divided_power_matches_closed_sum() {
    for (m, r) in [(2usize, 1i32), (3, 2)] {
        let n = 2;
        for b in 1..=3 {
            for xs in words(b, 1, n as i32) {
                let xs: Vec<i32> = xs.iter().map(|l| l.1).collect();
                let w: Vec<(i32, i32)> = xs.iter().map(|&x| (r + 1, x)).collect();
                let lhs = el(&w, m, n);
                for a in 1..=b {
                    let got = divided_power_e(r as usize, a as u32, &lhs, m, n).unwrap();
                    assert_eq!(got, gamma_sum(r, a, &xs, m, n), "xs={:?} a={}", xs, a);
                }
            }
        }
    }
}

#[test]
fn two_sided_supercommutation() {
    let (m, n) = (2, 2);
    let gm = GeneratorSymbol::generating_set(Side::M, m);
    let gn = GeneratorSymbol::generating_set(Side::N, n);
    for d in 1..=2 {
        for w in words(d, m as i32, n as i32) {
            let x = el(&w, m, n);
            for &a in &gm {
                for &b in &gn {
                    let l = act(a, &act(b, &x, m, n).unwrap(), m, n).unwrap();
                    let r = act(b, &act(a, &x, m, n).unwrap(), m, n).unwrap();
                    let r = if a.parity() & b.parity() == 1 { r.scale(&ScalarQ::from_int(-1)) } else { r };
                    assert_eq!(l, r, "{} {} on {:?}", a, b, w);
                }
            }
        }
    }
}

#[test]
fn weight_space_dimensions() {
    assert_eq!(weight_space(1, 3, &Weight::new(vec![1])).dim(), 6);
    assert_eq!(weight_space(2, 1, &Weight::new(vec![1, 1])).dim(), 4);
    assert_eq!(weight_space(2, 2, &Weight::new(vec![2, 0])).dim(), 8);
    for m in 1..=2 {
        for n in 1..=2 {
            for d in 0..=4 {
                // enumerate ordered monomials of B directly
                let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
                for w in words(d, m as i32, n as i32) {
                    if w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && p[0].1 > 0)) {
                        let mut lam = vec![0i64; m];
                        for l in &w {
                            lam[l.0 as usize - 1] += 1;
                        }
                        *counts.entry(lam).or_default() += 1;
                    }
                }
                for (lam, c) in counts {
                    let expect: usize = lam.iter().map(|&k| sym_dim(k as usize, n)).product();
                    assert_eq!(c, expect);
                    assert_eq!(weight_space(m, n, &Weight::new(lam)).dim(), c);
                }
            }
        }
    }
    let iso = as_tensor_of_sym(2, &Weight::new(vec![1, 2]));
    assert_eq!(iso.len(), 4 * 8);
}

#[test]
fn dual_examples_and_ev_equivariance() {
    let k1 = dual_action(g(Side::N, GenKind::K, 1), 1, 1).unwrap();
    let v1 = k1.source().position(&qweb::superlinear::Label::Dual(Box::new(mono(&[(1, 1)]).label()))).unwrap();
    assert_eq!(k1.entry(v1, v1), ScalarQ::q_pow(-1));
    assert!(dual_action(g(Side::N, GenKind::Ebar, 1), 1, 2).is_err());
    for n in 1..=2 {
        for k in 1..=2 {
            let v = Representation::sym(k, n).unwrap();
            let vd = v.dual().unwrap();
            let both = vd.tensor(&v).unwrap();
            let triv = Representation::trivial(n);
            // ev(f (x) v) = f(v)
            let entries: Vec<_> = (0..v.space.dim()).map(|i| (0, i * v.space.dim() + i, ScalarQ::one())).collect();
            let ev = SuperMap::from_entries(both.space.clone(), triv.space.clone(), 0, entries).unwrap();
            for (gen, rho) in &both.mats {
                let l = ev.compose(rho).unwrap();
                let r = triv.get(*gen).unwrap().compose(&ev).unwrap();
                assert_eq!(l, r, "n={} k={} {}", n, k, gen);
            }
        }
    }
}

// Operators of the idempotented category on A_q, with the barred
// generators beyond Kbar_1 obtained from the defining relations.
struct Ops {
    m: usize,
    n: usize,
}

fn weight_of(mo: &AqMonomial, m: usize) -> Vec<i64> {
    mo.weight(m).into_iter().map(|x| x as i64).collect()
}

impl Ops {
    fn per_mono<F: Fn(&AqElement, &[i64]) -> AqElement>(&self, x: &AqElement, f: F) -> AqElement {
        let mut out = Lin::new();
        for (mo, c) in x.iter() {
            let lam = weight_of(mo, self.m);
            out.add_scaled(&f(&Lin::single(mo.clone(), ScalarQ::one()), &lam), c);
        }
        out
    }
    fn e(&self, i: usize, x: &AqElement) -> AqElement {
        act(g(Side::M, GenKind::E, i), x, self.m, self.n).unwrap()
    }
    fn f(&self, i: usize, x: &AqElement) -> AqElement {
        act(g(Side::M, GenKind::F, i), x, self.m, self.n).unwrap()
    }
    fn kbar(&self, i: usize, x: &AqElement) -> AqElement {
        if i == 1 {
            return act(g(Side::M, GenKind::Kbar, 1), x, self.m, self.n).unwrap();
        }
        // (E_j Fbar_j - Fbar_j E_j) 1_l = q^{-l_{j+1}} Kbar_j - q^{-l_j} Kbar_{j+1}
        let j = i - 1;
        self.per_mono(x, |y, lam| {
            let mut t = self.kbar(j, y).scale(&ScalarQ::q_pow(-lam[j] as i32));
            t = t.sub(&self.e(j, &self.fbar(j, y)));
            t = t.add(&self.fbar(j, &self.e(j, y)));
            t.scale(&ScalarQ::q_pow(lam[j - 1] as i32))
        })
    }
    fn ebar(&self, i: usize, x: &AqElement) -> AqElement {
        // (Kbar_i E_i - q E_i Kbar_i) 1_l = q^{-l_i} Ebar_i
        self.per_mono(x, |y, lam| {
            let t = self.kbar(i, &self.e(i, y)).sub(&self.e(i, &self.kbar(i, y)).scale(&ScalarQ::q_pow(1)));
            t.scale(&ScalarQ::q_pow(lam[i - 1] as i32))
        })
    }
    fn fbar(&self, i: usize, x: &AqElement) -> AqElement {
        // (Kbar_i F_i - q F_i Kbar_i) 1_l = -q^{l_i} Fbar_i
        self.per_mono(x, |y, lam| {
            let t = self.kbar(i, &self.f(i, y)).sub(&self.f(i, &self.kbar(i, y)).scale(&ScalarQ::q_pow(1)));
            t.scale(&ScalarQ::q_pow(-lam[i - 1] as i32)).scale(&ScalarQ::from_int(-1))
        })
    }
}

fn weights(m: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|w| (0..=max).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out.into_iter().filter(|w| w.iter().sum::<i64>() <= max).collect()
}

#[test]
fn derived_barred_operators_match_tables() {
    for m in 2..=3 {
        let n = 2;
        let ops = Ops { m, n };
        for (a, b) in letters(m as i32, n as i32) {
            let x = el(&[(a, b)], m, n);
            let table = |kind, i| match act_letter(g(Side::M, kind, i), (a, b)) {
                Some((l, c)) => el(&[l], m, n).scale(&c),
                None => Lin::new(),
            };
            for i in 1..=m {
                assert_eq!(ops.kbar(i, &x), table(GenKind::Kbar, i), "Kbar_{} t{:?}", i, (a, b));
            }
            for i in 1..m {
                assert_eq!(ops.ebar(i, &x), table(GenKind::Ebar, i), "Ebar_{} t{:?}", i, (a, b));
                assert_eq!(ops.fbar(i, &x), table(GenKind::Fbar, i), "Fbar_{} t{:?}", i, (a, b));
            }
        }
    }
}

#[test]
fn idempotented_category_relations() {
    let n = 2;
    for m in 2..=3 {
        let ops = Ops { m, n };
        let q = |e: i64| ScalarQ::q_pow(e as i32);
        let neg = ScalarQ::from_int(-1);
        let q2 = qint(2, 1);
        for lam in weights(m, 3) {
            let w = Weight::new(lam.clone());
            let l = |i: usize| lam[i - 1];
            for mo in qweb::aqhowe::weight_basis(n, &w) {
                let x = Lin::single(mo.clone(), ScalarQ::one());
                let check = |name: &str, lhs: AqElement, rhs: AqElement| {
                    assert_eq!(lhs, rhs, "{} m={} lambda={:?} x={:?}", name, m, lam, mo);
                };
                for i in 1..m {
                    for j in 1..m {
                        let lhs = ops.e(i, &ops.f(j, &x)).sub(&ops.f(j, &ops.e(i, &x)));
                        let rhs = if i == j { x.scale(&qint(l(i) - l(i + 1), 1)) } else { Lin::new() };
                        check("EF-FE", lhs, rhs);
                        if i.abs_diff(j) > 1 {
                            check("EE", ops.e(i, &ops.e(j, &x)), ops.e(j, &ops.e(i, &x)));
                            check("FF", ops.f(i, &ops.f(j, &x)), ops.f(j, &ops.f(i, &x)));
                        }
                        if i.abs_diff(j) == 1 {
                            let s = ops.e(i, &ops.e(i, &ops.e(j, &x)))
                                .sub(&ops.e(i, &ops.e(j, &ops.e(i, &x))).scale(&q2))
                                .add(&ops.e(j, &ops.e(i, &ops.e(i, &x))));
                            check("Serre E", s, Lin::new());
                            let s = ops.f(i, &ops.f(i, &ops.f(j, &x)))
                                .sub(&ops.f(i, &ops.f(j, &ops.f(i, &x))).scale(&q2))
                                .add(&ops.f(j, &ops.f(i, &ops.f(i, &x))));
                            check("Serre F", s, Lin::new());
                            let s = ops.e(i, &ops.e(i, &ops.ebar(j, &x)))
                                .sub(&ops.e(i, &ops.ebar(j, &ops.e(i, &x))).scale(&q2))
                                .add(&ops.ebar(j, &ops.e(i, &ops.e(i, &x))));
                            check("Serre Ebar", s, Lin::new());
                            let s = ops.f(i, &ops.f(i, &ops.fbar(j, &x)))
                                .sub(&ops.f(i, &ops.fbar(j, &ops.f(i, &x))).scale(&q2))
                                .add(&ops.fbar(j, &ops.f(i, &ops.f(i, &x))));
                            check("Serre Fbar", s, Lin::new());
                        }
                        let lhs = ops.e(i, &ops.fbar(j, &x)).sub(&ops.fbar(j, &ops.e(i, &x)));
                        let rhs = if i == j {
                            ops.kbar(i, &x).scale(&q(-l(i + 1))).sub(&ops.kbar(i + 1, &x).scale(&q(-l(i))))
                        } else {
                            Lin::new()
                        };
                        check("E Fbar", lhs, rhs);
                        let lhs = ops.ebar(i, &ops.f(j, &x)).sub(&ops.f(j, &ops.ebar(i, &x)));
                        let rhs = if i == j {
                            ops.kbar(i, &x).scale(&q(l(i + 1))).sub(&ops.kbar(i + 1, &x).scale(&q(l(i))))
                        } else {
                            Lin::new()
                        };
                        check("Ebar F", lhs, rhs);
                    }
                }
                for i in 1..=m {
                    for j in 1..=m {
                        let lhs = ops.kbar(i, &ops.kbar(j, &x)).add(&ops.kbar(j, &ops.kbar(i, &x)));
                        let rhs = if i == j {
                            x.scale(&(qint(l(i), 2) * ScalarQ::from_int(2)))
                        } else {
                            Lin::new()
                        };
                        check("Kbar Kbar", lhs, rhs);
                    }
                    for j in 1..m {
                        let ke = |y: &AqElement| ops.kbar(i, &ops.e(j, y));
                        let ek = |y: &AqElement| ops.e(j, &ops.kbar(i, y));
                        let kf = |y: &AqElement| ops.kbar(i, &ops.f(j, y));
                        let fk = |y: &AqElement| ops.f(j, &ops.kbar(i, y));
                        if j == i {
                            check("Kbar_i E_i", ke(&x).sub(&ek(&x).scale(&q(1))), ops.ebar(i, &x).scale(&q(-l(i))));
                            check("Kbar_i F_i", kf(&x).sub(&fk(&x).scale(&q(1))), ops.fbar(i, &x).scale(&q(l(i))).scale(&neg));
                        } else if j + 1 == i {
                            // (lambda + alpha_{i-1}, eps_i) = l_i - 1
                            check(
                                "Kbar_i E_{i-1}",
                                ke(&x).scale(&q(1)).sub(&ek(&x)),
                                ops.ebar(j, &x).scale(&q(-(l(i) - 1))).scale(&neg),
                            );
                            // (lambda - alpha_{i-1}, eps_i) = l_i + 1
                            check("Kbar_i F_{i-1}", kf(&x).scale(&q(1)).sub(&fk(&x)), ops.fbar(j, &x).scale(&q(l(i) + 1)));
                        } else {
                            check("Kbar E commute", ke(&x), ek(&x));
                            check("Kbar F commute", kf(&x), fk(&x));
                        }
                    }
                }
                for i in 1..m {
                    check("E Ebar", ops.e(i, &ops.ebar(i, &x)), ops.ebar(i, &ops.e(i, &x)));
                    check("F Fbar", ops.f(i, &ops.fbar(i, &x)), ops.fbar(i, &ops.f(i, &x)));
                    if i + 1 < m {
                        let lhs = ops.e(i, &ops.e(i + 1, &x)).sub(&ops.e(i + 1, &ops.e(i, &x)).scale(&q(1)));
                        let rhs = ops.ebar(i, &ops.ebar(i + 1, &x)).add(&ops.ebar(i + 1, &ops.ebar(i, &x)).scale(&q(1)));
                        check("E E_{i+1}", lhs, rhs);
                        let lhs = ops.f(i + 1, &ops.f(i, &x)).scale(&q(1)).sub(&ops.f(i, &ops.f(i + 1, &x)));
                        let rhs = ops.fbar(i, &ops.fbar(i + 1, &x)).add(&ops.fbar(i + 1, &ops.fbar(i, &x)).scale(&q(1)));
                        check("F F_{i+1}", lhs, rhs);
                    }
                }
            }
        }
    }
}
