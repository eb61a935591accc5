//! The Hecke-Clifford superalgebra HC_k(q) in the normal form
//! `c_1^{e_1} ... c_k^{e_k} T_sigma`, its image on V_n^{(x)k}, clasps, and
//! the walled Brauer-Clifford generator webs on `u1^r d1^s`.

use std::collections::BTreeMap;
use std::fmt;

use crate::aqhowe::Representation;
use crate::error::{Error, Result};
use crate::evaluator::{compare_maps, Check, EvalContext};
use crate::scalars::{qfact, qint, GaussianRational as Gr, ScalarQ};
use crate::superlinear::{dense_rank, SuperMap};
use crate::webir::{parse_web, Item, WebDiagram, WebObject};

/// A permutation of `0..k` in one-line notation: `self.0[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(k: usize) -> Permutation {
        Permutation((0..k).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Invalid(format!("not a permutation: {:?}", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }

    /// `self * s_i` for the simple transposition swapping positions `i-1, i`.
    pub fn times_simple(&self, i: usize) -> Permutation {
        let mut p = self.0.clone();
        p.swap(i - 1, i);
        Permutation(p)
    }

    /// True when `length(self * s_i) < length(self)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// A reduced word `[i_1, ..., i_m]` with `self = s_{i_1} ... s_{i_m}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..p.len()).find(|&i| p.has_right_descent(i)) {
            word.push(i);
            p = p.times_simple(i);
        }
        word.reverse();
        word
    }

    /// Extends to `0..k+1` fixing the new last point.
    pub fn extend(&self) -> Permutation {
        let mut p = self.0.clone();
        p.push(p.len());
        Permutation(p)
    }

    /// All permutations of `0..k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; k], &mut out);
        out
    }
}

/// A basis element `c^eps T_sigma`; bit `i` of `eps` is the exponent of `c_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HCBasis {
    pub eps: u32,
    pub perm: Permutation,
}

/// An element of HC_k(q) in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct HCElement {
    k: usize,
    terms: BTreeMap<HCBasis, ScalarQ>,
}

impl HCElement {
    pub fn zero(k: usize) -> HCElement {
        HCElement { k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> HCElement {
        HCElement::basis(k, 0, Permutation::identity(k))
    }

    pub fn basis(k: usize, eps: u32, perm: Permutation) -> HCElement {
        let mut terms = BTreeMap::new();
        terms.insert(HCBasis { eps, perm }, ScalarQ::one());
        HCElement { k, terms }
    }

    /// The generator `T_i`, `1 <= i < k`.
    pub fn t(k: usize, i: usize) -> HCElement {
        assert!(i >= 1 && i < k, "T_{} outside HC_{}", i, k);
        HCElement::basis(k, 0, Permutation::identity(k).times_simple(i))
    }

    /// The generator `c_i`, `1 <= i <= k`.
    pub fn c(k: usize, i: usize) -> HCElement {
        assert!(i >= 1 && i <= k, "c_{} outside HC_{}", i, k);
        HCElement::basis(k, 1 << (i - 1), Permutation::identity(k))
    }

    pub fn scalar(k: usize, s: ScalarQ) -> HCElement {
        HCElement::one(k).scale(&s)
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<HCBasis, ScalarQ> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, b: HCBasis, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b.clone()).or_insert_with(ScalarQ::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> HCElement {
        let mut out = HCElement::zero(self.k);
        for (b, v) in &self.terms {
            out.add_term(b.clone(), v * c);
        }
        out
    }

    pub fn add(&self, o: &HCElement) -> HCElement {
        assert_eq!(self.k, o.k);
        let mut out = self.clone();
        for (b, v) in &o.terms {
            out.add_term(b.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, o: &HCElement) -> HCElement {
        self.add(&o.scale(&-ScalarQ::one()))
    }

    /// Parity of a homogeneous element, `None` for mixed or zero elements.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|b| (b.eps.count_ones() % 2) as u8);
        let p = ps.next()?;
        ps.all(|x| x == p).then_some(p)
    }

    /// Image under `HC_{k-1} -> HC_k`, `x -> x (x) 1`.
    pub fn extend(&self) -> HCElement {
        let mut out = HCElement::zero(self.k + 1);
        for (b, v) in &self.terms {
            out.add_term(HCBasis { eps: b.eps, perm: b.perm.extend() }, v.clone());
        }
        out
    }

    /// `x * T_i`.
    fn times_t(&self, i: usize) -> HCElement {
        let mut out = HCElement::zero(self.k);
        for (b, v) in &self.terms {
            let moved = HCBasis { eps: b.eps, perm: b.perm.times_simple(i) };
            if b.perm.has_right_descent(i) {
                // T_w T_i = T_{w s_i} T_i^2 = qt T_w + T_{w s_i}
                out.add_term(b.clone(), v * &ScalarQ::qtilde());
                out.add_term(moved, v.clone());
            } else {
                out.add_term(moved, v.clone());
            }
        }
        out
    }

    /// `x * c_j`.
    fn times_c(&self, j: usize) -> HCElement {
        let mut out = HCElement::zero(self.k);
        for (b, v) in &self.terms {
            for (coef, a, word) in push_clifford(&b.perm.reduced_word(), j) {
                let (sign, eps) = clifford_times(b.eps, a);
                let mut t = HCElement::basis(self.k, eps, Permutation::identity(self.k));
                for i in word {
                    t = t.times_t(i);
                }
                let c = if sign { -(v * &coef) } else { v * &coef };
                for (tb, tv) in t.terms {
                    out.add_term(tb, &tv * &c);
                }
            }
        }
        out
    }

    /// Product in normal form.
    pub fn mul(&self, o: &HCElement) -> HCElement {
        assert_eq!(self.k, o.k, "ranks differ");
        let mut out = HCElement::zero(self.k);
        for (b, v) in &o.terms {
            let mut x = self.scale(v);
            for j in 0..self.k {
                if b.eps & (1 << j) != 0 {
                    x = x.times_c(j + 1);
                }
            }
            for i in b.perm.reduced_word() {
                x = x.times_t(i);
            }
            out = out.add(&x);
        }
        out
    }
}

impl fmt::Display for HCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, v)| {
                let mut letters: Vec<String> = (0..self.k).filter(|j| b.eps & (1 << j) != 0).map(|j| format!("c{}", j + 1)).collect();
                letters.extend(b.perm.reduced_word().iter().map(|i| format!("T{}", i)));
                let mono = if letters.is_empty() { "1".to_string() } else { letters.join(" ") };
                format!("({}) {}", v, mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `c^eps c_a` as a sign and a new exponent mask.
fn clifford_times(eps: u32, a: usize) -> (bool, u32) {
    let bit = 1u32 << (a - 1);
    let above = (eps >> a).count_ones();
    (above % 2 == 1, eps ^ bit)
}

/// `T_{word} c_j` as a sum of `coef * c_a * T_{word'}`.
fn push_clifford(word: &[usize], j: usize) -> Vec<(ScalarQ, usize, Vec<usize>)> {
    let Some((&i, prefix)) = word.split_last() else {
        return vec![(ScalarQ::one(), j, Vec::new())];
    };
    let with = |terms: Vec<(ScalarQ, usize, Vec<usize>)>, c: ScalarQ, append: bool| {
        terms
            .into_iter()
            .map(move |(x, a, mut w)| {
                if append {
                    w.push(i);
                }
                (&x * &c, a, w)
            })
            .collect::<Vec<_>>()
    };
    let one = ScalarQ::one();
    let qt = ScalarQ::qtilde();
    if j == i {
        with(push_clifford(prefix, i + 1), one, true)
    } else if j == i + 1 {
        // T_i c_{i+1} = c_i T_i - qt c_i + qt c_{i+1}
        let mut out = with(push_clifford(prefix, i), one, true);
        out.extend(with(push_clifford(prefix, i), -qt.clone(), false));
        out.extend(with(push_clifford(prefix, i + 1), qt, false));
        out
    } else {
        with(push_clifford(prefix, j), one, true)
    }
}

/// Multiplies two elements of HC_k.
pub fn hc_multiply(x: &HCElement, y: &HCElement) -> HCElement {
    x.mul(y)
}

/// The normal-form basis `{c^eps T_sigma}` of HC_k, `k! 2^k` elements.
pub fn hc_basis(k: usize) -> Vec<HCElement> {
    let mut out = Vec::new();
    for perm in Permutation::all(k) {
        for eps in 0..(1u32 << k) {
            out.push(HCElement::basis(k, eps, perm.clone()));
        }
    }
    out
}

fn ids(count: usize, item: &str) -> String {
    if count == 0 {
        String::new()
    } else {
        format!("id({})", vec![item; count].join(" "))
    }
}

fn row(parts: &[String]) -> String {
    parts.iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join(" * ")
}

/// The web of `T_i` on `u1^k`.
pub fn t_web(k: usize, i: usize) -> WebDiagram {
    parse_web(&row(&[ids(i - 1, "u1"), "xo(u1,u1)".into(), ids(k - i - 1, "u1")])).expect("well-formed")
}

/// The web of `c_i` on `u1^k`.
pub fn c_web(k: usize, i: usize) -> WebDiagram {
    parse_web(&row(&[ids(i - 1, "u1"), "dot(1)".into(), ids(k - i, "u1")])).expect("well-formed")
}

/// The superalgebra map HC_k(q) -> End(V_n^{(x)k}).
pub struct Psi<'a> {
    ctx: &'a EvalContext,
    k: usize,
    ts: Vec<SuperMap>,
    cs: Vec<SuperMap>,
    id: SuperMap,
}

impl<'a> Psi<'a> {
    pub fn new(ctx: &'a EvalContext, k: usize) -> Result<Psi<'a>> {
        let ts = (1..k).map(|i| ctx.eval_diagram(&t_web(k, i))).collect::<Result<Vec<_>>>()?;
        let cs = (1..=k).map(|i| ctx.eval_diagram(&c_web(k, i))).collect::<Result<Vec<_>>>()?;
        let space = ctx.eval_object(&WebObject::ups(&vec![1; k]))?;
        Ok(Psi { ctx, k, ts, cs, id: SuperMap::identity(&space) })
    }

    pub fn context(&self) -> &EvalContext {
        self.ctx
    }

    pub fn basis_image(&self, b: &HCBasis) -> Result<SuperMap> {
        let mut m = self.id.clone();
        for j in 0..self.k {
            if b.eps & (1 << j) != 0 {
                m = m.compose(&self.cs[j])?;
            }
        }
        for i in b.perm.reduced_word() {
            m = m.compose(&self.ts[i - 1])?;
        }
        Ok(m)
    }

    pub fn image(&self, x: &HCElement) -> Result<SuperMap> {
        if x.k != self.k {
            return Err(Error::Invalid("rank mismatch".into()));
        }
        let mut acc: Option<SuperMap> = None;
        for (b, v) in &x.terms {
            let m = self.basis_image(b)?.scale(v);
            acc = Some(match acc {
                None => m,
                Some(a) => a.add(&m)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.id.scale(&ScalarQ::zero())))
    }

    /// Rank at `q = q0` of the images of the normal-form basis.
    pub fn rank_at(&self, q0: &Gr) -> Result<usize> {
        let mut rows = Vec::new();
        for b in hc_basis(self.k) {
            let (key, _) = b.terms.into_iter().next().expect("basis element");
            let m = self.basis_image(&key)?.specialize(q0)?;
            rows.push(m.into_iter().flatten().collect::<Vec<_>>());
        }
        Ok(dense_rank(rows))
    }
}

/// `psi(x)` on V_n^{(x)k}.
pub fn psi(x: &HCElement, n: usize) -> Result<SuperMap> {
    let ctx = EvalContext::new(n);
    Psi::new(&ctx, x.k)?.image(x)
}

/// The clasp by the closed sum over permutations.
pub fn clasp(k: usize) -> HCElement {
    let pre = &ScalarQ::q_pow(-((k * k.saturating_sub(1) / 2) as i32)) / &qfact(k as u32);
    let mut out = HCElement::zero(k);
    for p in Permutation::all(k) {
        let c = &pre * &ScalarQ::q_pow(p.length() as i32);
        out.add_term(HCBasis { eps: 0, perm: p }, c);
    }
    out
}

/// The clasp by the three-term recursion.
pub fn clasp_recursive(k: usize) -> HCElement {
    assert!(k >= 1);
    if k == 1 {
        return HCElement::one(1);
    }
    let prev = clasp_recursive(k - 1).extend();
    if k == 2 {
        return clasp(2);
    }
    // 1^{k-2} (x) Cl_2
    let last = HCElement::one(k)
        .add(&HCElement::t(k, k - 1).scale(&ScalarQ::q_pow(1)))
        .scale(&(&ScalarQ::q_pow(-1) / &qint(2, 1)));
    let kk = qint(k as i64, 1);
    let a = &(&qint(2, 1) * &qint(k as i64 - 1, 1)) / &kk;
    let b = &qint(k as i64 - 2, 1) / &kk;
    prev.mul(&last).mul(&prev).scale(&a).sub(&prev.scale(&b))
}

/// Names of the walled Brauer-Clifford generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BcGen {
    T(usize),
    TInv(usize),
    TStar(usize),
    C(usize),
    CStar(usize),
    E,
}

impl fmt::Display for BcGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BcGen::T(i) => write!(f, "t{}", i),
            BcGen::TInv(i) => write!(f, "t{}^-1", i),
            BcGen::TStar(i) => write!(f, "t*{}", i),
            BcGen::C(i) => write!(f, "c{}", i),
            BcGen::CStar(i) => write!(f, "c*{}", i),
            BcGen::E => write!(f, "e"),
        }
    }
}

/// The generator webs on `u1^r d1^s`, including `t_i^{-1}` as the under-crossing.
pub fn bc_generators(r: usize, s: usize) -> BTreeMap<BcGen, WebDiagram> {
    let mut out = BTreeMap::new();
    let web = |parts: &[String]| parse_web(&row(parts)).expect("well-formed");
    let ups = |c: usize| ids(c, "u1");
    let downs = |c: usize| ids(c, "d1");
    for i in 1..r {
        out.insert(BcGen::T(i), web(&[ups(i - 1), "xo(u1,u1)".into(), ups(r - i - 1), downs(s)]));
        out.insert(BcGen::TInv(i), web(&[ups(i - 1), "xu(u1,u1)".into(), ups(r - i - 1), downs(s)]));
    }
    for j in 1..s {
        out.insert(BcGen::TStar(j), web(&[ups(r), downs(j - 1), "xo(d1,d1)".into(), downs(s - j - 1)]));
    }
    for i in 1..=r {
        out.insert(BcGen::C(i), web(&[ups(i - 1), "dot(1)".into(), ups(r - i), downs(s)]));
    }
    for j in 1..=s {
        out.insert(BcGen::CStar(j), web(&[ups(r), downs(j - 1), "ddot(1)".into(), downs(s - j)]));
    }
    if r >= 1 && s >= 1 {
        out.insert(BcGen::E, web(&[ups(r - 1), "(rcap(1) ; lcup(1))".into(), downs(s - 1)]));
    }
    out
}

/// A linear combination of generator words; a word `[x1, ..., xm]` is the
/// product `x1 x2 ... xm`, acting by `x1 o ... o xm`.
pub type BcExpr = Vec<(ScalarQ, Vec<BcGen>)>;

/// One instance of a defining relation.
#[derive(Clone, Debug)]
pub struct BcRelation {
    pub label: String,
    pub lhs: BcExpr,
    pub rhs: BcExpr,
}

fn w(gs: &[BcGen]) -> BcExpr {
    vec![(ScalarQ::one(), gs.to_vec())]
}

fn zero() -> BcExpr {
    Vec::new()
}

fn lin(terms: &[(ScalarQ, &[BcGen])]) -> BcExpr {
    terms.iter().map(|(c, g)| (c.clone(), g.to_vec())).collect()
}

/// Every applicable instance of the defining relations for `(r, s)`.
pub fn bc_relations(r: usize, s: usize) -> Vec<BcRelation> {
    use BcGen::*;
    let mut out = Vec::new();
    let mut add = |label: String, lhs: BcExpr, rhs: BcExpr| out.push(BcRelation { label, lhs, rhs });
    let one = ScalarQ::one();
    let qt = ScalarQ::qtilde();
    let has_e = r >= 1 && s >= 1;
    for (star, m) in [(false, r), (true, s)] {
        let t = |i: usize| if star { TStar(i) } else { T(i) };
        let c = |i: usize| if star { CStar(i) } else { C(i) };
        let tag = if star { "*" } else { "" };
        for i in 1..m {
            add(format!("quadratic{tag} i={i}"), w(&[t(i), t(i)]), lin(&[(qt.clone(), &[t(i)]), (one.clone(), &[])]));
            if i + 1 < m {
                add(format!("braid{tag} i={i}"), w(&[t(i), t(i + 1), t(i)]), w(&[t(i + 1), t(i), t(i + 1)]));
            }
            for j in 1..m {
                if i.abs_diff(j) > 1 {
                    add(format!("far{tag} i={i} j={j}"), w(&[t(i), t(j)]), w(&[t(j), t(i)]));
                }
            }
            add(
                format!("hc-mixed{tag} i={i}"),
                w(&[c(i), t(i)]),
                lin(&[(one.clone(), &[t(i), c(i + 1)]), (qt.clone(), &[c(i)]), (-qt.clone(), &[c(i + 1)])]),
            );
            for j in (1..=m).filter(|&j| j != i && j != i + 1) {
                add(format!("hc-far{tag} i={i} j={j}"), w(&[t(i), c(j)]), w(&[c(j), t(i)]));
            }
        }
        for i in 1..=m {
            let sq = if star { -one.clone() } else { one.clone() };
            add(format!("clifford-square{tag} i={i}"), w(&[c(i), c(i)]), vec![(sq, vec![])]);
            for j in (1..=m).filter(|&j| j != i) {
                add(format!("clifford-anticommute{tag} i={i} j={j}"), w(&[c(i), c(j)]), vec![(-one.clone(), vec![c(j), c(i)])]);
            }
        }
    }
    for i in 1..r {
        for j in 1..=s {
            add(format!("t-cstar i={i} j={j}"), w(&[T(i), CStar(j)]), w(&[CStar(j), T(i)]));
        }
    }
    for i in 1..s {
        for j in 1..=r {
            add(format!("tstar-c i={i} j={j}"), w(&[TStar(i), C(j)]), w(&[C(j), TStar(i)]));
        }
    }
    for i in 1..=r {
        for j in 1..=s {
            // Odd letters on different strands: the Koszul sign makes this an anticommutator.
            add(format!("c-cstar i={i} j={j}"), w(&[C(i), CStar(j)]), vec![(-one.clone(), vec![CStar(j), C(i)])]);
        }
    }
    if has_e {
        if r >= 2 {
            add("ete".into(), w(&[E, T(r - 1), E]), w(&[E]));
        }
        if s >= 2 {
            add("et*e".into(), w(&[E, TStar(1), E]), w(&[E]));
        }
        for j in (1..r).filter(|&j| j != r - 1) {
            add(format!("e-t j={j}"), w(&[E, T(j)]), w(&[T(j), E]));
        }
        for j in 2..s {
            add(format!("e-t* j={j}"), w(&[E, TStar(j)]), w(&[TStar(j), E]));
        }
        add("e-square".into(), w(&[E, E]), zero());
        if r >= 2 && s >= 2 {
            add(
                "e-twist".into(),
                w(&[E, TInv(r - 1), TStar(1), E, TStar(1), TInv(r - 1)]),
                w(&[TInv(r - 1), TStar(1), E, TStar(1), TInv(r - 1), E]),
            );
        }
        add("wall-clifford left".into(), w(&[C(r), E]), w(&[CStar(1), E]));
        add("wall-clifford right".into(), w(&[E, C(r)]), w(&[E, CStar(1)]));
        for i in 1..r {
            add(format!("e-c i={i}"), w(&[C(i), E]), w(&[E, C(i)]));
        }
        for i in 2..=s {
            add(format!("e-c* i={i}"), w(&[CStar(i), E]), w(&[E, CStar(i)]));
        }
        add("ece".into(), w(&[E, C(r), E]), zero());
    }
    out
}

/// How relation sides are compared.
#[derive(Clone, Debug)]
pub enum Exactness {
    Symbolic,
    Specialized(Vec<Gr>),
}

/// Evaluated generator matrices on `u1^r d1^s`.
pub struct BcImages {
    pub r: usize,
    pub s: usize,
    mats: BTreeMap<BcGen, SuperMap>,
    id: SuperMap,
}

impl BcImages {
    pub fn new(r: usize, s: usize, ctx: &EvalContext) -> Result<BcImages> {
        let mut mats = BTreeMap::new();
        for (g, d) in bc_generators(r, s) {
            mats.insert(g, ctx.eval_diagram(&d)?);
        }
        let items = [vec![Item::up(1); r], vec![Item::down(1); s]].concat();
        let id = SuperMap::identity(&ctx.eval_object(&WebObject::new(items))?);
        Ok(BcImages { r, s, mats, id })
    }

    pub fn get(&self, g: BcGen) -> Option<&SuperMap> {
        self.mats.get(&g)
    }

    pub fn eval(&self, e: &BcExpr) -> Result<SuperMap> {
        let mut acc: Option<SuperMap> = None;
        for (c, word) in e {
            let mut m = self.id.clone();
            for g in word {
                let x = self.mats.get(g).ok_or_else(|| Error::Invalid(format!("generator {} absent", g)))?;
                m = m.compose(x)?;
            }
            let m = m.scale(c);
            acc = Some(match acc {
                None => m,
                Some(a) => a.add(&m)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.id.scale(&ScalarQ::zero())))
    }
}

fn compare_specialized(a: &SuperMap, b: &SuperMap, points: &[Gr]) -> Check {
    for q0 in points {
        match (a.specialize(q0), b.specialize(q0)) {
            (Ok(x), Ok(y)) if x == y => {}
            (Ok(_), Ok(_)) => return compare_maps(a, b, Some(q0)),
            (Err(e), _) | (_, Err(e)) => return Check::Error(e.to_string()),
        }
    }
    Check::Pass
}

/// Checks every applicable relation; returns `(label, outcome)` per instance.
pub fn verify_bc_relations(r: usize, s: usize, ctx: &EvalContext, mode: &Exactness) -> Result<Vec<(String, Check)>> {
    let imgs = BcImages::new(r, s, ctx)?;
    let mut out = Vec::new();
    for rel in bc_relations(r, s) {
        let check = match (imgs.eval(&rel.lhs), imgs.eval(&rel.rhs)) {
            (Ok(a), Ok(b)) => match mode {
                Exactness::Symbolic => compare_maps(&a, &b, None),
                Exactness::Specialized(points) => compare_specialized(&a, &b, points),
            },
            (Err(e), _) | (_, Err(e)) => Check::Error(e.to_string()),
        };
        out.push((rel.label, check));
    }
    Ok(out)
}

/// Dimension of the supercommutant `End_{U_q(q_n)}` of a representation at `q = q0`,
/// counting even and odd maps.
pub fn commutant_dimension(rep: &Representation, q0: &Gr) -> Result<usize> {
    let d = rep.space.dim();
    let gens: Vec<(u8, Vec<Vec<Gr>>)> =
        rep.mats.iter().map(|(g, m)| Ok((g.parity(), m.specialize(q0)?))).collect::<Result<Vec<_>>>()?;
    let mut total = 0;
    for p in 0..2u8 {
        let unknowns: Vec<(usize, usize)> =
            (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).filter(|&(a, b)| rep.space.parity(a) ^ rep.space.parity(b) == p).collect();
        let index: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, &ab)| (ab, i)).collect();
        let mut rows = Vec::new();
        for (gp, rho) in &gens {
            let sign = if p & gp == 1 { -Gr::one() } else { Gr::one() };
            for r in 0..d {
                for c in 0..d {
                    let mut row = vec![Gr::zero(); unknowns.len()];
                    let mut any = false;
                    // (X rho)[r][c] - sign (rho X)[r][c]
                    for b in 0..d {
                        if let Some(&u) = index.get(&(r, b)) {
                            if !rho[b][c].is_zero() {
                                row[u] = &row[u] + &rho[b][c];
                                any = true;
                            }
                        }
                    }
                    for a in 0..d {
                        if let Some(&u) = index.get(&(a, c)) {
                            if !rho[r][a].is_zero() {
                                row[u] = &row[u] - &(&sign * &rho[r][a]);
                                any = true;
                            }
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        total += unknowns.len() - dense_rank(rows);
    }
    Ok(total)
}

/// Rank at `q0` of the span of all words in the generators of length at most
/// `depth` acting on `u1^r d1^s`.
pub fn bc_span_rank(imgs: &BcImages, depth: usize, q0: &Gr) -> Result<usize> {
    let gens: Vec<&SuperMap> = imgs.mats.iter().filter(|(g, _)| !matches!(g, BcGen::TInv(_))).map(|(_, m)| m).collect();
    let mut layer = vec![imgs.id.clone()];
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for m in &layer {
            for g in &gens {
                next.push(m.compose(g)?);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let rows = all.iter().map(|m| Ok(m.specialize(q0)?.into_iter().flatten().collect())).collect::<Result<Vec<Vec<Gr>>>>()?;
    Ok(dense_rank(rows))
}
