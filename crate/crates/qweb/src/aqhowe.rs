//! The Howe algebra A_q(V_m * V_n): ordered basis, the actions of both
//! quantum groups extended along the coproduct, divided powers, weight
//! spaces, and dual modules through the antipode.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::lincomb::Lin;
use crate::qsym::sym_basis;
use crate::quadratic::{Letter, Relation, Straightener};
use crate::scalars::{qfact, GaussianRational as Gr, ScalarQ};
use crate::superlinear::{tensor_space, Label, Parity, SuperMap, SuperSpace};

/// An ordered monomial of the basis `B`: factors `(row, column)` with
/// positive rows, lexicographically nondecreasing, odd factors not repeated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AqMonomial {
    pub factors: Vec<(i32, i32)>,
}

impl fmt::Debug for AqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Label::Aq(self.factors.clone()))
    }
}

impl AqMonomial {
    pub fn parity(&self) -> Parity {
        (self.factors.iter().filter(|l| l.1 < 0).count() % 2) as Parity
    }

    pub fn weight(&self, m: usize) -> Vec<u32> {
        let mut w = vec![0; m];
        for &(a, _) in &self.factors {
            w[a as usize - 1] += 1;
        }
        w
    }

    pub fn label(&self) -> Label {
        Label::Aq(self.factors.clone())
    }
}

pub type AqElement = Lin<AqMonomial>;

/// A weight `lambda` of the m-side torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub lambda: Vec<i64>,
}

impl Weight {
    pub fn new(lambda: Vec<i64>) -> Self {
        Weight { lambda }
    }

    pub fn total(&self) -> i64 {
        self.lambda.iter().sum()
    }

    pub fn is_dominant_nonneg(&self) -> bool {
        self.lambda.iter().all(|&x| x >= 0)
    }

    /// `lambda + eps_i - eps_j` (1-based).
    pub fn shifted(&self, i: usize, j: usize) -> Weight {
        let mut l = self.lambda.clone();
        l[i - 1] += 1;
        l[j - 1] -= 1;
        Weight { lambda: l }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    M,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    E,
    F,
    K,
    Kinv,
    Kbar,
    Ebar,
    Fbar,
}

/// A generator of U_q(q_m) (side `M`) or U_q(q_n) (side `N`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSymbol {
    pub side: Side,
    pub kind: GenKind,
    pub index: usize,
}

impl GeneratorSymbol {
    pub fn new(side: Side, kind: GenKind, index: usize) -> Self {
        GeneratorSymbol { side, kind, index }
    }

    pub fn parity(&self) -> Parity {
        matches!(self.kind, GenKind::Kbar | GenKind::Ebar | GenKind::Fbar) as Parity
    }

    /// Whether the action on products is available (the generating set).
    pub fn extends_to_products(&self) -> bool {
        match self.kind {
            GenKind::E | GenKind::F | GenKind::K | GenKind::Kinv => true,
            GenKind::Kbar => self.index == 1,
            _ => false,
        }
    }

    /// The generating set `{E_i, F_i, K_i, K_i^-1, Kbar_1}` of one side.
    pub fn generating_set(side: Side, rank: usize) -> Vec<GeneratorSymbol> {
        let mut out = Vec::new();
        for i in 1..rank {
            out.push(GeneratorSymbol::new(side, GenKind::E, i));
            out.push(GeneratorSymbol::new(side, GenKind::F, i));
        }
        for i in 1..=rank {
            out.push(GeneratorSymbol::new(side, GenKind::K, i));
            out.push(GeneratorSymbol::new(side, GenKind::Kinv, i));
        }
        out.push(GeneratorSymbol::new(side, GenKind::Kbar, 1));
        out
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GenKind::E => "E",
            GenKind::F => "F",
            GenKind::K => "K",
            GenKind::Kinv => "Kinv",
            GenKind::Kbar => "Kbar",
            GenKind::Ebar => "Ebar",
            GenKind::Fbar => "Fbar",
        };
        let s = if self.side == Side::N { "'" } else { "" };
        write!(f, "{}{}_{}", k, s, self.index)
    }
}

/// `t_{a,b} = t_{-a,-b}`: representative with positive row.
pub fn fold(l: Letter) -> Letter {
    if l.0 < 0 {
        (-l.0, -l.1)
    } else {
        l
    }
}

fn letter_parity(l: Letter) -> Parity {
    ((l.0 < 0) as u8) ^ ((l.1 < 0) as u8)
}

/// The relations of A_q in the four-case form valid for positive indices
/// and row `a <= c`.
pub(crate) fn aq_relations(m: usize, n: usize) -> Vec<Relation> {
    let qt = ScalarQ::qtilde();
    let q = |e: i32| ScalarQ::q_pow(e);
    let d = |x: i32, y: i32| (x == y) as i32;
    let mut rels = Vec::new();
    for a in 1..=m as i32 {
        for c in a..=m as i32 {
            for b in 1..=n as i32 {
                for dd in 1..=n as i32 {
                    let mut r: Relation = vec![
                        (((a, b), (c, dd)), q(d(a, c))),
                        (((c, dd), (a, b)), -q(d(b, dd))),
                        (((c, -b), (a, -dd)), -&qt),
                    ];
                    if b < dd {
                        r.push((((c, b), (a, dd)), -&qt));
                    }
                    rels.push(r);
                    let mut r: Relation =
                        vec![(((a, b), (c, -dd)), q(d(a, c))), (((c, -dd), (a, b)), -q(-d(b, dd)))];
                    if dd < b {
                        r.push((((c, -b), (a, dd)), qt.clone()));
                    }
                    rels.push(r);
                    let mut r: Relation = vec![
                        (((a, -b), (c, dd)), q(d(a, c))),
                        (((c, dd), (a, -b)), -q(d(b, dd))),
                        (((c, -b), (a, dd)), -&qt),
                    ];
                    if b < dd {
                        r.push((((c, b), (a, -dd)), -&qt));
                    }
                    rels.push(r);
                    let mut r: Relation =
                        vec![(((a, -b), (c, -dd)), q(d(a, c))), (((c, -dd), (a, -b)), q(-d(b, dd)))];
                    if dd < b {
                        r.push((((c, -b), (a, -dd)), -&qt));
                    }
                    rels.push(r);
                }
            }
        }
    }
    rels
}

static AQ_ENGINES: Lazy<Mutex<HashMap<(usize, usize), Arc<Straightener>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn aq_engine(m: usize, n: usize) -> Arc<Straightener> {
    let mut g = AQ_ENGINES.lock().unwrap();
    g.entry((m, n))
        .or_insert_with(|| {
            Arc::new(Straightener::from_relations(aq_relations(m, n), 2 * n * m).expect("A_q relations straighten"))
        })
        .clone()
}

fn check_letter(l: Letter, m: usize, n: usize) -> Result<()> {
    if l.0 == 0 || l.1 == 0 || l.0.unsigned_abs() as usize > m || l.1.unsigned_abs() as usize > n {
        return Err(Error::Invalid(format!("generator t_{{{},{}}} outside I_{{{}|{}}} x I_{{{}|{}}}", l.0, l.1, m, m, n, n)));
    }
    Ok(())
}

/// Expresses a product of generators `t_{a,b}` in the ordered basis.
pub fn aq_normalize(word: &[(i32, i32)], m: usize, n: usize) -> Result<AqElement> {
    aq_normalize_with_fuel(word, m, n, None)
}

pub fn aq_normalize_with_fuel(word: &[(i32, i32)], m: usize, n: usize, fuel: Option<usize>) -> Result<AqElement> {
    for &l in word {
        check_letter(l, m, n)?;
    }
    let folded: Vec<Letter> = word.iter().map(|&l| fold(l)).collect();
    let nf = aq_engine(m, n).normalize(&folded, fuel)?;
    Ok(nf.iter().map(|(w, c)| (AqMonomial { factors: w.clone() }, c.clone())).collect())
}

/// Product in A_q.
pub fn aq_mul(x: &AqElement, y: &AqElement, m: usize, n: usize) -> Result<AqElement> {
    let mut out = Lin::new();
    for (a, c) in x.iter() {
        for (b, d) in y.iter() {
            let mut w = a.factors.clone();
            w.extend(b.factors.iter().cloned());
            out.add_scaled(&aq_normalize(&w, m, n)?, &(c * d));
        }
    }
    Ok(out)
}

fn kron(x: i32, y: i32) -> bool {
    x == y
}

fn i_sign(odd: bool) -> ScalarQ {
    ScalarQ::constant(Gr::i().mul_i_pow(if odd { 2 } else { 0 }))
}

/// Action of a single generator on a single factor `t_{a,b}`.
pub fn act_letter(g: GeneratorSymbol, l: Letter) -> Option<(Letter, ScalarQ)> {
    let (a, b) = l;
    let r = g.index as i32;
    let one = ScalarQ::one();
    let pa_pb = letter_parity(l) == 1;
    let out = match (g.side, g.kind) {
        (Side::M, GenKind::E) => {
            if kron(a, r + 1) {
                Some(((r, b), one))
            } else if kron(a, -(r + 1)) {
                Some(((-r, b), one))
            } else {
                None
            }
        }
        (Side::M, GenKind::F) => {
            if kron(a, r) {
                Some(((r + 1, b), one))
            } else if kron(a, -r) {
                Some(((-(r + 1), b), one))
            } else {
                None
            }
        }
        (Side::M, GenKind::K) => Some((l, ScalarQ::q_pow(kron(a.abs(), r) as i32))),
        (Side::M, GenKind::Kinv) => Some((l, ScalarQ::q_pow(-(kron(a.abs(), r) as i32)))),
        (Side::M, GenKind::Kbar) => {
            if kron(a, r) {
                Some(((-r, b), i_sign(pa_pb)))
            } else if kron(a, -r) {
                Some(((r, b), i_sign(pa_pb)))
            } else {
                None
            }
        }
        (Side::M, GenKind::Ebar) => {
            if kron(a, r + 1) {
                Some(((-r, b), i_sign(pa_pb)))
            } else if kron(a, -(r + 1)) {
                Some(((r, b), i_sign(pa_pb)))
            } else {
                None
            }
        }
        (Side::M, GenKind::Fbar) => {
            if kron(a, r) {
                Some(((-(r + 1), b), i_sign(pa_pb)))
            } else if kron(a, -r) {
                Some(((r + 1, b), i_sign(pa_pb)))
            } else {
                None
            }
        }
        (Side::N, GenKind::E) => {
            if kron(b, r + 1) {
                Some(((a, r), one))
            } else if kron(b, -(r + 1)) {
                Some(((a, -r), one))
            } else {
                None
            }
        }
        (Side::N, GenKind::Ebar) => {
            if kron(b, r + 1) {
                Some(((a, -r), one))
            } else if kron(b, -(r + 1)) {
                Some(((a, r), one))
            } else {
                None
            }
        }
        (Side::N, GenKind::F) => {
            if kron(b, r) {
                Some(((a, r + 1), one))
            } else if kron(b, -r) {
                Some(((a, -(r + 1)), one))
            } else {
                None
            }
        }
        (Side::N, GenKind::Fbar) => {
            if kron(b, r) {
                Some(((a, -(r + 1)), one))
            } else if kron(b, -r) {
                Some(((a, r + 1), one))
            } else {
                None
            }
        }
        (Side::N, GenKind::K) => Some((l, ScalarQ::q_pow(kron(b.abs(), r) as i32))),
        (Side::N, GenKind::Kinv) => Some((l, ScalarQ::q_pow(-(kron(b.abs(), r) as i32)))),
        (Side::N, GenKind::Kbar) => {
            if kron(b, r) {
                Some(((a, -r), one))
            } else if kron(b, -r) {
                Some(((a, r), one))
            } else {
                None
            }
        }
    };
    out.map(|(l, c)| (fold(l), c))
}

fn k_letter(side: Side, r: usize, e: i32, l: Letter) -> i32 {
    let idx = match side {
        Side::M => l.0.abs(),
        Side::N => l.1.abs(),
    };
    if idx == r as i32 {
        e
    } else {
        0
    }
}

/// Terms of the iterated coproduct applied to a word: each term is the new
/// word and its coefficient (before straightening).
fn coproduct_terms(g: GeneratorSymbol, w: &[Letter]) -> Result<Vec<(Vec<Letter>, ScalarQ)>> {
    let d = w.len();
    let side = g.side;
    let r = g.index;
    let mut out = Vec::new();
    match g.kind {
        GenKind::K | GenKind::Kinv => {
            let e = if g.kind == GenKind::K { 1 } else { -1 };
            let p: i32 = w.iter().map(|&l| k_letter(side, r, e, l)).sum();
            out.push((w.to_vec(), ScalarQ::q_pow(p)));
        }
        GenKind::E | GenKind::F | GenKind::Kbar => {
            if g.kind == GenKind::Kbar && r != 1 && d > 1 {
                return Err(Error::UnsupportedGenerator(g.to_string()));
            }
            for j in 0..d {
                let (l2, c) = match act_letter(g, w[j]) {
                    Some(x) => x,
                    None => continue,
                };
                let mut e = 0;
                for (i, &l) in w.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    e += match g.kind {
                        // Delta(E) = E (x) K_r^-1 K_{r+1} + 1 (x) E
                        GenKind::E if i > j => k_letter(side, r, -1, l) + k_letter(side, r + 1, 1, l),
                        // Delta(F) = F (x) 1 + K_r K_{r+1}^-1 (x) F
                        GenKind::F if i < j => k_letter(side, r, 1, l) + k_letter(side, r + 1, -1, l),
                        // Delta(Kbar_1) = Kbar_1 (x) K_1 + K_1^-1 (x) Kbar_1
                        GenKind::Kbar if i < j => k_letter(side, 1, -1, l),
                        GenKind::Kbar => k_letter(side, 1, 1, l),
                        _ => 0,
                    };
                }
                let mut coef = c.shift(e);
                if g.kind == GenKind::Kbar {
                    let odd = w[..j].iter().filter(|&&l| letter_parity(l) == 1).count() % 2 == 1;
                    if odd {
                        coef = -coef;
                    }
                }
                let mut nw = w.to_vec();
                nw[j] = l2;
                out.push((nw, coef));
            }
        }
        GenKind::Ebar | GenKind::Fbar => {
            if d > 1 {
                return Err(Error::UnsupportedGenerator(g.to_string()));
            }
            if d == 1 {
                if let Some((l2, c)) = act_letter(g, w[0]) {
                    out.push((vec![l2], c));
                }
            }
        }
    }
    Ok(out)
}

/// Action of `g` on an element of A_q, extended to products through the
/// coproduct and the super sign rule.
pub fn act(g: GeneratorSymbol, x: &AqElement, m: usize, n: usize) -> Result<AqElement> {
    let mut out = Lin::new();
    for (mono, c) in x.iter() {
        for (w, k) in coproduct_terms(g, &mono.factors)? {
            out.add_scaled(&aq_normalize(&w, m, n)?, &(c * &k));
        }
    }
    Ok(out)
}

/// `E_r^{(a)} = E_r^a / [a]_q!` on the m-side. Laurent coefficients must stay
/// Laurent after the division.
pub fn divided_power_e(r: usize, a: u32, x: &AqElement, m: usize, n: usize) -> Result<AqElement> {
    divided_power(GenKind::E, r, a, x, m, n)
}

/// `F_r^{(a)}` on the m-side.
pub fn divided_power_f(r: usize, a: u32, x: &AqElement, m: usize, n: usize) -> Result<AqElement> {
    divided_power(GenKind::F, r, a, x, m, n)
}

fn divided_power(kind: GenKind, r: usize, a: u32, x: &AqElement, m: usize, n: usize) -> Result<AqElement> {
    let g = GeneratorSymbol::new(Side::M, kind, r);
    let mut y = x.clone();
    for _ in 0..a {
        y = act(g, &y, m, n)?;
    }
    let f = qfact(a).inv().unwrap();
    let laurent_in = x.iter().all(|(_, c)| c.is_laurent());
    let y = y.scale(&f);
    if laurent_in && !y.iter().all(|(_, c)| c.is_laurent()) {
        return Err(Error::DivisibilityViolated);
    }
    Ok(y)
}

static WEIGHT_SPACES: Lazy<Mutex<HashMap<(usize, usize, Weight), Arc<SuperSpace>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Basis monomials of the weight space `A_{q,lambda}` in the order of
/// `S^{lambda_1} (x) ... (x) S^{lambda_m}` (row one outermost).
pub fn weight_basis(n: usize, lambda: &Weight) -> Vec<AqMonomial> {
    if !lambda.is_dominant_nonneg() {
        return Vec::new();
    }
    let mut out = vec![AqMonomial::default()];
    for (i, &li) in lambda.lambda.iter().enumerate() {
        let row = sym_basis(li as usize, n);
        let mut next = Vec::with_capacity(out.len() * row.len());
        for base in &out {
            for mono in &row {
                let mut f = base.factors.clone();
                f.extend(mono.indices().into_iter().map(|b| (i as i32 + 1, b)));
                next.push(AqMonomial { factors: f });
            }
        }
        out = next;
    }
    out
}

/// `A_{q,lambda}` as a superspace with `Aq` labels.
pub fn weight_space(m: usize, n: usize, lambda: &Weight) -> Arc<SuperSpace> {
    assert_eq!(lambda.lambda.len(), m, "weight length must equal m");
    let key = (m, n, lambda.clone());
    if let Some(s) = WEIGHT_SPACES.lock().unwrap().get(&key) {
        return s.clone();
    }
    let basis = weight_basis(n, lambda).into_iter().map(|mono| (mono.label(), mono.parity())).collect();
    let s = SuperSpace::new(basis).unwrap();
    WEIGHT_SPACES.lock().unwrap().insert(key, s.clone());
    s
}

/// The relabelling `A_{q,lambda} -> S^{lambda_1} (x) ... (x) S^{lambda_m}`:
/// pairs of (Aq label, tuple of Sym labels), in basis order.
pub fn as_tensor_of_sym(n: usize, lambda: &Weight) -> Vec<(Label, Label)> {
    weight_basis(n, lambda)
        .into_iter()
        .map(|mono| {
            let parts = (1..=lambda.lambda.len() as i32)
                .map(|row| Label::Sym(mono.factors.iter().filter(|l| l.0 == row).map(|l| l.1).collect()))
                .collect();
            (mono.label(), Label::Tuple(parts))
        })
        .collect()
}

fn target_weight(g: GeneratorSymbol, lambda: &Weight) -> Weight {
    match (g.side, g.kind) {
        (Side::M, GenKind::E) | (Side::M, GenKind::Ebar) => lambda.shifted(g.index, g.index + 1),
        (Side::M, GenKind::F) | (Side::M, GenKind::Fbar) => lambda.shifted(g.index + 1, g.index),
        _ => lambda.clone(),
    }
}

fn monomial_from_label(l: &Label) -> AqMonomial {
    match l {
        Label::Aq(f) => AqMonomial { factors: f.clone() },
        _ => unreachable!("weight spaces carry Aq labels"),
    }
}

/// Matrix of an element-valued operator on `A_{q,lambda}`.
pub fn operator_matrix<F>(m: usize, n: usize, lambda: &Weight, target: &Weight, parity: Parity, f: F) -> Result<SuperMap>
where
    F: Fn(&AqElement) -> Result<AqElement>,
{
    let src = weight_space(m, n, lambda);
    let tgt = weight_space(m, n, target);
    let mut entries = Vec::new();
    for c in 0..src.dim() {
        let x = Lin::single(monomial_from_label(src.label(c)), ScalarQ::one());
        for (mono, v) in f(&x)?.iter() {
            let r = tgt
                .position(&mono.label())
                .ok_or_else(|| Error::Invalid(format!("{:?} outside the target weight space", mono)))?;
            entries.push((r, c, v.clone()));
        }
    }
    SuperMap::from_entries(src, tgt, parity, entries)
}

/// Matrix of a generator on the weight space `A_{q,lambda}`.
pub fn act_matrix(g: GeneratorSymbol, m: usize, n: usize, lambda: &Weight) -> Result<SuperMap> {
    let t = target_weight(g, lambda);
    operator_matrix(m, n, lambda, &t, g.parity(), |x| act(g, x, m, n))
}

/// Matrix of `E_1^{(a)}` (m-side) between weight spaces.
pub fn divided_power_e_matrix(r: usize, a: u32, m: usize, n: usize, lambda: &Weight) -> Result<SuperMap> {
    let mut t = lambda.clone();
    t.lambda[r - 1] += a as i64;
    t.lambda[r] -= a as i64;
    operator_matrix(m, n, lambda, &t, 0, |x| divided_power_e(r, a, x, m, n))
}

/// The n-side action on `S^k(V_n)`, realized as the first row of A_q.
pub fn sym_action(g: GeneratorSymbol, k: usize, n: usize) -> Result<SuperMap> {
    assert_eq!(g.side, Side::N);
    act_matrix(g, 1, n, &Weight::new(vec![k as i64]))
}

/// Antipode applied inside a representation: the matrix of `S(g)` given
/// matrices for the generating set.
fn antipode_matrix<R>(g: GeneratorSymbol, rho: R) -> Result<SuperMap>
where
    R: Fn(GeneratorSymbol) -> Result<SuperMap>,
{
    let gen = |kind, index| GeneratorSymbol::new(g.side, kind, index);
    let i = g.index;
    match g.kind {
        // S(E_i) = -E_i K_i K_{i+1}^-1
        GenKind::E => {
            let k = rho(gen(GenKind::K, i))?.compose(&rho(gen(GenKind::Kinv, i + 1))?)?;
            Ok(rho(g)?.compose(&k)?.neg())
        }
        // S(F_i) = -K_i^-1 K_{i+1} F_i
        GenKind::F => {
            let k = rho(gen(GenKind::Kinv, i))?.compose(&rho(gen(GenKind::K, i + 1))?)?;
            Ok(k.compose(&rho(g)?)?.neg())
        }
        GenKind::K => rho(gen(GenKind::Kinv, i)),
        GenKind::Kinv => rho(gen(GenKind::K, i)),
        GenKind::Kbar if i == 1 => Ok(rho(g)?.neg()),
        _ => Err(Error::UnsupportedGenerator(g.to_string())),
    }
}

/// Dual basis labels `Dual(l)` with unchanged parities.
pub fn dual_space(v: &Arc<SuperSpace>) -> Arc<SuperSpace> {
    let basis = (0..v.dim()).map(|k| (Label::Dual(Box::new(v.label(k).clone())), v.parity(k))).collect();
    SuperSpace::new(basis).unwrap()
}

/// `(x.f)(v) = (-1)^{p(x)p(f)} f(S(x) v)` in the dual basis, given the
/// action matrices on `V` and the dual space.
pub fn dual_of<R>(g: GeneratorSymbol, dual: &Arc<SuperSpace>, rho: R) -> Result<SuperMap>
where
    R: Fn(GeneratorSymbol) -> Result<SuperMap>,
{
    let s = antipode_matrix(g, rho)?;
    let px = g.parity();
    let mut entries = Vec::new();
    for (r, c, v) in s.triples() {
        // row i, column j of the dual matrix is the (j, i) entry of rho(S(x))
        let (i, j) = (c, r);
        let odd = px & dual.parity(j) == 1;
        entries.push((i, j, if odd { -v } else { v }));
    }
    SuperMap::from_entries(dual.clone(), dual.clone(), px, entries)
}

/// The n-side action on the dual `S^k(V_n)^*`.
pub fn dual_action(g: GeneratorSymbol, k: usize, n: usize) -> Result<SuperMap> {
    if g.side != Side::N || !g.extends_to_products() {
        return Err(Error::UnsupportedGenerator(g.to_string()));
    }
    let v = weight_space(1, n, &Weight::new(vec![k as i64]));
    let dual = dual_space(&v);
    dual_of(g, &dual, |h| sym_action(h, k, n))
}

/// Matrices of the n-side generating set on one module.
#[derive(Clone, Debug)]
pub struct Representation {
    pub n: usize,
    pub space: Arc<SuperSpace>,
    pub mats: BTreeMap<GeneratorSymbol, SuperMap>,
}

impl Representation {
    fn build<R>(n: usize, space: Arc<SuperSpace>, rho: R) -> Result<Representation>
    where
        R: Fn(GeneratorSymbol) -> Result<SuperMap>,
    {
        let mut mats = BTreeMap::new();
        for g in GeneratorSymbol::generating_set(Side::N, n) {
            mats.insert(g, rho(g)?);
        }
        Ok(Representation { n, space, mats })
    }

    /// `S^k(V_n)` with labels of the first row of A_q.
    pub fn sym(k: usize, n: usize) -> Result<Representation> {
        let space = weight_space(1, n, &Weight::new(vec![k as i64]));
        Representation::build(n, space, |g| sym_action(g, k, n))
    }

    /// `S^k(V_n)^*`.
    pub fn sym_dual(k: usize, n: usize) -> Result<Representation> {
        Representation::sym(k, n)?.dual()
    }

    /// The trivial module on the unit space.
    pub fn trivial(n: usize) -> Representation {
        let unit = SuperSpace::unit();
        Representation::build(n, unit.clone(), |g| {
            Ok(match g.kind {
                GenKind::K | GenKind::Kinv => SuperMap::identity(&unit),
                _ => SuperMap::zero(unit.clone(), unit.clone(), g.parity()),
            })
        })
        .unwrap()
    }

    pub fn get(&self, g: GeneratorSymbol) -> Result<&SuperMap> {
        self.mats.get(&g).ok_or_else(|| Error::UnsupportedGenerator(g.to_string()))
    }

    /// Dual module through the antipode, on `Dual` labels.
    pub fn dual(&self) -> Result<Representation> {
        let dual = dual_space(&self.space);
        Representation::build(self.n, dual.clone(), |g| dual_of(g, &dual, |h| self.get(h).cloned()))
    }

    /// Tensor product module through the coproduct.
    pub fn tensor(&self, o: &Representation) -> Result<Representation> {
        let space = tensor_space(&self.space, &o.space);
        let id_a = SuperMap::identity(&self.space);
        let id_b = SuperMap::identity(&o.space);
        let gen = |kind, i| GeneratorSymbol::new(Side::N, kind, i);
        Representation::build(self.n, space.clone(), |g| {
            let i = g.index;
            let m = match g.kind {
                GenKind::K | GenKind::Kinv => self.get(g)?.tensor(o.get(g)?),
                GenKind::E => {
                    let l = o.get(gen(GenKind::Kinv, i))?.compose(o.get(gen(GenKind::K, i + 1))?)?;
                    self.get(g)?.tensor(&l).add(&id_a.tensor(o.get(g)?))?
                }
                GenKind::F => {
                    let l = self.get(gen(GenKind::K, i))?.compose(self.get(gen(GenKind::Kinv, i + 1))?)?;
                    self.get(g)?.tensor(&id_b).add(&l.tensor(o.get(g)?))?
                }
                GenKind::Kbar if i == 1 => {
                    let a = self.get(g)?.tensor(o.get(gen(GenKind::K, 1))?);
                    a.add(&self.get(gen(GenKind::Kinv, 1))?.tensor(o.get(g)?))?
                }
                _ => return Err(Error::UnsupportedGenerator(g.to_string())),
            };
            Ok(m.with_spaces(space.clone(), space.clone()))
        })
    }
}
