//! Ideal-quotient ground truth for quadratic algebras: the degree d part of
//! the tensor algebra modulo the span of x (x) r (x) y, computed by plain
//! row reduction inside one block of words.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use qweb::scalars::ScalarQ;

pub type L = (i32, i32);
pub type Rel = Vec<((L, L), ScalarQ)>;

pub fn fold(l: L) -> L {
    if l.0 < 0 {
        (-l.0, -l.1)
    } else {
        l
    }
}

fn p(i: i32) -> i32 {
    (i < 0) as i32
}

fn sgn(e: i32) -> ScalarQ {
    ScalarQ::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn phi(a: i32, b: i32) -> i32 {
    if a.abs() != b.abs() {
        0
    } else if b < 0 {
        -1
    } else {
        1
    }
}

fn qp(e: i32) -> ScalarQ {
    ScalarQ::q_pow(e)
}

/// The S_q relations `q v_a v_b - T(v_a (x) v_b)` on letters `(1, a)`.
pub fn sym_relations(n: i32) -> Vec<Rel> {
    let qt = ScalarQ::qtilde();
    let idx: Vec<i32> = (-n..=n).filter(|&x| x != 0).collect();
    let mut out = Vec::new();
    for &a in &idx {
        for &b in &idx {
            let mut r: Rel = vec![(((1, a), (1, b)), qp(1))];
            r.push((((1, b), (1, a)), -(qp(phi(a, b)) * sgn(p(a) * p(b)))));
            if a < b {
                r.push((((1, a), (1, b)), -qt.clone()));
            }
            if -a < b {
                r.push((((1, -a), (1, -b)), -(qt.clone() * sgn(p(b)))));
            }
            out.push(r);
        }
    }
    out
}

/// The general defining relation of A_q for all `a, c` in `I_{m|m}` and
/// `b, d` in `I_{n|n}`, with letters folded to positive rows.
pub fn aq_relations(m: i32, n: i32) -> Vec<Rel> {
    let qt = ScalarQ::qtilde();
    let im: Vec<i32> = (-m..=m).filter(|&x| x != 0).collect();
    let inn: Vec<i32> = (-n..=n).filter(|&x| x != 0).collect();
    let mut out = Vec::new();
    for &a in &im {
        for &c in &im {
            for &b in &inn {
                for &d in &inn {
                    let (pa, pb, pc, pd) = (p(a), p(b), p(c), p(d));
                    let mut r: Rel = Vec::new();
                    r.push((((a, b), (c, d)), qp(phi(a, c)) * sgn((pa + pb) * (pc + pd))));
                    if c < a {
                        r.push((((c, b), (a, d)), qt.clone() * sgn(pc + (pb + pc) * (pc + pd))));
                    }
                    if c < -a {
                        r.push((((-c, b), (-a, d)), qt.clone() * sgn(pc + (pb + pc + 1) * (pc + pd))));
                    }
                    r.push((((c, d), (a, b)), -qp(phi(b, d))));
                    if b < d {
                        r.push((((c, b), (a, d)), -(qt.clone() * sgn(pb + (pb + pd) * (pc + pb)))));
                    }
                    if -b < d {
                        r.push((((c, -b), (a, -d)), qt.clone() * sgn(pb + (pb + pc + 1) * (pb + pd + 1))));
                    }
                    let r = r.into_iter().map(|((x, y), v)| ((fold(x), fold(y)), v)).collect();
                    out.push(r);
                }
            }
        }
    }
    out
}

pub fn is_basis(w: &[L]) -> bool {
    w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && p[0].1 > 0))
}

fn permutations(v: &[i32]) -> BTreeSet<Vec<i32>> {
    if v.len() <= 1 {
        return [v.to_vec()].into_iter().collect();
    }
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut t in permutations(&rest) {
            t.insert(0, x);
            out.insert(t);
        }
    }
    out
}

/// All words sharing the row multiset and absolute-column multiset of `w`.
pub fn block_of(w: &[L]) -> Vec<Vec<L>> {
    let rows: Vec<i32> = w.iter().map(|l| l.0).collect();
    let cols: Vec<i32> = w.iter().map(|l| l.1.abs()).collect();
    let mut out = BTreeSet::new();
    for rp in permutations(&rows) {
        for cp in permutations(&cols) {
            for signs in 0..(1u32 << w.len()) {
                let word: Vec<L> = (0..w.len())
                    .map(|k| (rp[k], if signs >> k & 1 == 1 { -cp[k] } else { cp[k] }))
                    .collect();
                out.insert(word);
            }
        }
    }
    out.into_iter().collect()
}

/// Normal forms of every word in the block of `w`, read off from the
/// reduced relation span with ordered monomials as free columns.
pub fn quotient_block(w: &[L], rels: &[Rel]) -> HashMap<Vec<L>, BTreeMap<Vec<L>, ScalarQ>> {
    let mut by_pair: HashMap<(L, L), Vec<usize>> = HashMap::new();
    for (k, r) in rels.iter().enumerate() {
        for ((x, y), _) in r {
            by_pair.entry((*x, *y)).or_default().push(k);
        }
    }
    let mut words = block_of(w);
    words.sort_by_key(|u| is_basis(u));
    let col: HashMap<Vec<L>, usize> = words.iter().enumerate().map(|(i, u)| (u.clone(), i)).collect();
    let mut seen = BTreeSet::new();
    let mut rows: Vec<BTreeMap<usize, ScalarQ>> = Vec::new();
    for u in &words {
        for i in 0..u.len().saturating_sub(1) {
            for &k in by_pair.get(&(u[i], u[i + 1])).map(|v| v.as_slice()).unwrap_or(&[]) {
                let key = (u[..i].to_vec(), u[i + 2..].to_vec(), k);
                if !seen.insert(key) {
                    continue;
                }
                let mut row: BTreeMap<usize, ScalarQ> = BTreeMap::new();
                for ((x, y), v) in &rels[k] {
                    let mut nw = u[..i].to_vec();
                    nw.push(*x);
                    nw.push(*y);
                    nw.extend_from_slice(&u[i + 2..]);
                    let j = col[&nw];
                    let e = row.entry(j).or_insert_with(ScalarQ::zero);
                    *e = &*e + v;
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    // Sparse Gauss-Jordan, pivots taken in column order.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, ScalarQ>> = BTreeMap::new();
    for mut row in rows {
        for (pc, prow) in &pivots {
            if let Some(f) = row.get(pc).cloned() {
                for (j, v) in prow {
                    let e = row.entry(*j).or_insert_with(ScalarQ::zero);
                    *e = &*e - &(&f * v);
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        let Some((&pc, pv)) = row.iter().next() else { continue };
        let inv = pv.inv().unwrap();
        let row: BTreeMap<usize, ScalarQ> = row.iter().map(|(j, v)| (*j, v * &inv)).collect();
        for prow in pivots.values_mut() {
            if let Some(f) = prow.get(&pc).cloned() {
                for (j, v) in &row {
                    let e = prow.entry(*j).or_insert_with(ScalarQ::zero);
                    *e = &*e - &(&f * v);
                }
                prow.retain(|_, v| !v.is_zero());
            }
        }
        pivots.insert(pc, row);
    }
    let mut out = HashMap::new();
    for (j, u) in words.iter().enumerate() {
        let mut nf = BTreeMap::new();
        if is_basis(u) {
            assert!(!pivots.contains_key(&j), "ordered word {:?} is dependent", u);
            nf.insert(u.clone(), ScalarQ::one());
        } else {
            let row = pivots.get(&j).unwrap_or_else(|| panic!("word {:?} is free in the quotient", u));
            for (jj, v) in row {
                if *jj != j {
                    assert!(is_basis(&words[*jj]));
                    nf.insert(words[*jj].clone(), -v);
                }
            }
        }
        out.insert(u.clone(), nf);
    }
    out
}
