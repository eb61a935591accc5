//! The natural module V_n, the operator T on V_n (x) V_n, and the quantum
//! symmetric superalgebra S_q(V_n).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::lincomb::Lin;
use crate::quadratic::{Relation, Straightener};
use crate::scalars::{GaussianRational, ScalarQ};
use crate::superlinear::{tensor_space, Label, Parity, SuperMap, SuperSpace};

/// An element of `I_{n|n} = {-n..-1, 1..n}`; negative indices are odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(i32);

impl BasisIndex {
    pub fn new(value: i32, n: usize) -> Result<BasisIndex> {
        if value == 0 || value.unsigned_abs() as usize > n {
            return Err(Error::Invalid(format!("index {} outside I_{{{}|{}}}", value, n, n)));
        }
        Ok(BasisIndex(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn parity(self) -> Parity {
        parity(self.0)
    }
}

/// `p(i)`: 1 exactly when `i < 0`.
pub fn parity(i: i32) -> Parity {
    (i < 0) as Parity
}

/// `phi(a, b) = (-1)^{p(b)} [a = +-b]`.
pub fn phi(a: i32, b: i32) -> i32 {
    if a.abs() != b.abs() {
        0
    } else if b < 0 {
        -1
    } else {
        1
    }
}

/// `I_{n|n}` in increasing order.
pub fn index_set(n: usize) -> Vec<i32> {
    let n = n as i32;
    (-n..=-1).chain(1..=n).collect()
}

pub(crate) fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Ordered monomial `prod v_a^{d_a}` of S_q(V_n), with `d_a <= 1` for odd `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymMonomial {
    pub exponents: BTreeMap<i32, u32>,
}

impl SymMonomial {
    /// From a nondecreasing index sequence.
    pub fn from_indices(idx: &[i32]) -> SymMonomial {
        let mut exponents = BTreeMap::new();
        for &a in idx {
            *exponents.entry(a).or_insert(0) += 1;
        }
        SymMonomial { exponents }
    }

    /// Indices in increasing order, repeated by multiplicity.
    pub fn indices(&self) -> Vec<i32> {
        self.exponents.iter().flat_map(|(&a, &e)| std::iter::repeat_n(a, e as usize)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn parity(&self) -> Parity {
        (self.exponents.iter().filter(|(a, _)| **a < 0).map(|(_, e)| *e).sum::<u32>() % 2) as Parity
    }

    pub fn is_admissible(&self) -> bool {
        self.exponents.iter().all(|(&a, &e)| a > 0 || e <= 1)
    }

    pub fn label(&self) -> Label {
        Label::Sym(self.indices())
    }
}

/// V_n with basis labelled `Sym([a])`, i.e. the degree one part of S_q(V_n).
pub fn vn(n: usize) -> Arc<SuperSpace> {
    sym_space(1, n)
}

/// `T(v_a (x) v_b) = q^{phi(a,b)} (-1)^{p(a)p(b)} v_b (x) v_a
///  + [a<b] qt v_a (x) v_b + [-a<b] qt (-1)^{p(b)} v_{-a} (x) v_{-b}`.
pub fn t_matrix(n: usize) -> SuperMap {
    let v = vn(n);
    let vv = tensor_space(&v, &v);
    let dim = v.dim();
    let pos = |a: i32| v.position(&Label::Sym(vec![a])).unwrap();
    let qt = ScalarQ::qtilde();
    let mut entries = Vec::new();
    for &a in &index_set(n) {
        for &b in &index_set(n) {
            let col = pos(a) * dim + pos(b);
            let s = sign(parity(a) & parity(b) == 1);
            entries.push((pos(b) * dim + pos(a), col, ScalarQ::q_pow(phi(a, b)).scale(&GaussianRational::from_int(s))));
            if a < b {
                entries.push((col, col, qt.clone()));
            }
            if -a < b {
                let s = sign(parity(b) == 1);
                entries.push((pos(-a) * dim + pos(-b), col, qt.scale(&GaussianRational::from_int(s))));
            }
        }
    }
    SuperMap::from_entries(vv.clone(), vv, 0, entries).unwrap()
}

/// The defining quadratic relations of S_q(V_n) as letters `(1, a)`.
pub(crate) fn sym_relations(n: usize) -> Vec<Relation> {
    let qt = ScalarQ::qtilde();
    let mut rels = Vec::new();
    for &a in &index_set(n) {
        for &b in &index_set(n) {
            let mut rel: Relation = vec![(((1, a), (1, b)), ScalarQ::q_pow(1))];
            let s = sign(parity(a) & parity(b) == 1);
            rel.push((((1, b), (1, a)), ScalarQ::q_pow(phi(a, b)).scale(&GaussianRational::from_int(-s))));
            if a < b {
                rel.push((((1, a), (1, b)), -&qt));
            }
            if -a < b {
                let s = sign(parity(b) == 1);
                rel.push((((1, -a), (1, -b)), qt.scale(&GaussianRational::from_int(-s))));
            }
            rels.push(rel);
        }
    }
    rels
}

static SYM_ENGINES: Lazy<Mutex<HashMap<usize, Arc<Straightener>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn sym_engine(n: usize) -> Arc<Straightener> {
    let mut g = SYM_ENGINES.lock().unwrap();
    g.entry(n)
        .or_insert_with(|| Arc::new(Straightener::from_relations(sym_relations(n), 2 * n).expect("S_q relations straighten")))
        .clone()
}

/// Expresses `v_{a_1} ... v_{a_d}` in the ordered monomial basis.
pub fn sym_normalize(word: &[i32], n: usize) -> Result<Lin<SymMonomial>> {
    sym_normalize_with_fuel(word, n, None)
}

/// As [`sym_normalize`] with an explicit rewriting budget.
pub fn sym_normalize_with_fuel(word: &[i32], n: usize, fuel: Option<usize>) -> Result<Lin<SymMonomial>> {
    for &a in word {
        BasisIndex::new(a, n)?;
    }
    let letters: Vec<(i32, i32)> = word.iter().map(|&a| (1, a)).collect();
    let nf = sym_engine(n).normalize(&letters, fuel)?;
    Ok(nf
        .iter()
        .map(|(w, c)| (SymMonomial::from_indices(&w.iter().map(|l| l.1).collect::<Vec<_>>()), c.clone()))
        .collect())
}

/// Product in S_q(V_n).
pub fn sym_mul(x: &Lin<SymMonomial>, y: &Lin<SymMonomial>, n: usize) -> Result<Lin<SymMonomial>> {
    let mut out = Lin::new();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let mut w = a.indices();
            w.extend(b.indices());
            out.add_scaled(&sym_normalize(&w, n)?, &(c * d));
        }
    }
    Ok(out)
}

static SYM_BASES: Lazy<Mutex<HashMap<(usize, usize), Arc<SuperSpace>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Admissible ordered monomials of degree `d`, in lexicographic order of
/// their index sequences.
pub fn sym_basis(d: usize, n: usize) -> Vec<SymMonomial> {
    fn rec(d: usize, start: usize, idx: &[i32], cur: &mut Vec<i32>, out: &mut Vec<SymMonomial>) {
        if cur.len() == d {
            out.push(SymMonomial::from_indices(cur));
            return;
        }
        for k in start..idx.len() {
            let a = idx[k];
            let next = if a < 0 { k + 1 } else { k };
            cur.push(a);
            rec(d, next, idx, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, 0, &index_set(n), &mut Vec::new(), &mut out);
    out
}

/// `dim S_q^d(V_n) = sum_k C(n,k) C(n+d-k-1, d-k)`.
pub fn sym_dim(d: usize, n: usize) -> usize {
    (0..=d.min(n)).map(|k| binom(n, k) * if d == k { 1 } else { binom(n + d - k - 1, d - k) }).sum()
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

/// S_q^d(V_n) as a superspace with labels `Sym(indices)`.
pub fn sym_space(d: usize, n: usize) -> Arc<SuperSpace> {
    let mut g = SYM_BASES.lock().unwrap();
    g.entry((d, n))
        .or_insert_with(|| {
            let basis = sym_basis(d, n).into_iter().map(|m| (m.label(), m.parity())).collect();
            SuperSpace::new(basis).unwrap()
        })
        .clone()
}
