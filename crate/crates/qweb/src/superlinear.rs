//! Z2-graded vector spaces with structured basis labels and
//! parity-homogeneous sparse maps obeying the super sign rule.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, ScalarQ};

/// Parity 0 (even) or 1 (odd).
pub type Parity = u8;

/// Structured basis label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Idx(i32),
    /// Ordered monomial of the quantum symmetric algebra, indices nondecreasing.
    Sym(Vec<i32>),
    /// Ordered monomial of the Howe algebra as `(row, column)` factors.
    Aq(Vec<(i32, i32)>),
    Dual(Box<Label>),
    /// Tensor factors; tensor products of spaces concatenate these.
    Tuple(Vec<Label>),
    Name(String),
}

impl Label {
    fn factors(&self) -> Vec<Label> {
        match self {
            Label::Tuple(v) => v.clone(),
            other => vec![other.clone()],
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Idx(a) => write!(f, "{}", a),
            Label::Sym(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                let parts: Vec<String> = v.iter().map(|a| format!("v{}", a)).collect();
                write!(f, "{}", parts.join("."))
            }
            Label::Aq(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                let parts: Vec<String> = v.iter().map(|(a, b)| format!("t{},{}", a, b)).collect();
                write!(f, "{}", parts.join("."))
            }
            Label::Dual(l) => write!(f, "({})*", l),
            Label::Tuple(v) => {
                let parts: Vec<String> = v.iter().map(|l| l.to_string()).collect();
                write!(f, "[{}]", parts.join(" | "))
            }
            Label::Name(s) => write!(f, "{}", s),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A superspace given by an ordered labelled basis of homogeneous vectors.
#[derive(Clone)]
pub struct SuperSpace {
    labels: Vec<Label>,
    parities: Vec<Parity>,
    index: HashMap<Label, usize>,
}

impl PartialEq for SuperSpace {
    fn eq(&self, o: &Self) -> bool {
        self.labels == o.labels && self.parities == o.parities
    }
}

impl Eq for SuperSpace {}

impl fmt::Debug for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperSpace(dim {})", self.dim())
    }
}

impl SuperSpace {
    /// Labels must be distinct.
    pub fn new(basis: Vec<(Label, Parity)>) -> Result<Arc<SuperSpace>> {
        let mut labels = Vec::with_capacity(basis.len());
        let mut parities = Vec::with_capacity(basis.len());
        let mut index = HashMap::with_capacity(basis.len());
        for (k, (l, p)) in basis.into_iter().enumerate() {
            if index.insert(l.clone(), k).is_some() {
                return Err(Error::Invalid(format!("repeated basis label {}", l)));
            }
            labels.push(l);
            parities.push(p & 1);
        }
        Ok(Arc::new(SuperSpace { labels, parities, index }))
    }

    /// The one-dimensional even space with the empty tensor label.
    pub fn unit() -> Arc<SuperSpace> {
        SuperSpace::new(vec![(Label::Tuple(vec![]), 0)]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.labels[k]
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.parities[k]
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Superdimension `(even, odd)`.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|&&p| p == 1).count();
        (self.dim() - odd, odd)
    }
}

fn same_space(a: &Arc<SuperSpace>, b: &Arc<SuperSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `A (x) B` with basis `a (x) b` ordered lexicographically and labels
/// formed by concatenating tuple factors.
pub fn tensor_space(a: &Arc<SuperSpace>, b: &Arc<SuperSpace>) -> Arc<SuperSpace> {
    if a.dim() == 1 && a.labels[0] == Label::Tuple(vec![]) {
        return b.clone();
    }
    if b.dim() == 1 && b.labels[0] == Label::Tuple(vec![]) {
        return a.clone();
    }
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for i in 0..a.dim() {
        let fa = a.labels[i].factors();
        for j in 0..b.dim() {
            let mut f = fa.clone();
            f.extend(b.labels[j].factors());
            basis.push((Label::Tuple(f), a.parities[i] ^ b.parities[j]));
        }
    }
    SuperSpace::new(basis).expect("tensor labels are distinct")
}

/// Parity-homogeneous sparse linear map stored by columns.
#[derive(Clone)]
pub struct SuperMap {
    source: Arc<SuperSpace>,
    target: Arc<SuperSpace>,
    parity: Parity,
    cols: Vec<Vec<(usize, ScalarQ)>>,
}

impl fmt::Debug for SuperMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SuperMap {}x{} parity {}", self.target.dim(), self.source.dim(), self.parity)?;
        for (r, c, v) in self.triples() {
            writeln!(f, "  {} <- {} : {}", self.target.label(r), self.source.label(c), v)?;
        }
        Ok(())
    }
}

impl PartialEq for SuperMap {
    fn eq(&self, o: &Self) -> bool {
        same_space(&self.source, &o.source)
            && same_space(&self.target, &o.target)
            && (self.parity == o.parity || (self.is_zero() && o.is_zero()))
            && self.cols == o.cols
    }
}

fn sort_col(mut col: Vec<(usize, ScalarQ)>) -> Vec<(usize, ScalarQ)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, ScalarQ)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = &last.1 + &v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Accumulates `c * col` into a dense-keyed buffer.
fn axpy(acc: &mut HashMap<usize, ScalarQ>, c: &ScalarQ, col: &[(usize, ScalarQ)]) {
    for (r, v) in col {
        let t = c * v;
        match acc.get_mut(r) {
            Some(x) => *x = &*x + &t,
            None => {
                acc.insert(*r, t);
            }
        }
    }
}

fn finish(acc: HashMap<usize, ScalarQ>) -> Vec<(usize, ScalarQ)> {
    let mut col: Vec<(usize, ScalarQ)> = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
    col.sort_by_key(|e| e.0);
    col
}

impl SuperMap {
    /// Builds a map from `(row, col, value)` entries, rejecting entries that
    /// break parity homogeneity.
    pub fn from_entries<I>(
        source: Arc<SuperSpace>,
        target: Arc<SuperSpace>,
        parity: Parity,
        entries: I,
    ) -> Result<SuperMap>
    where
        I: IntoIterator<Item = (usize, usize, ScalarQ)>,
    {
        let mut cols: Vec<Vec<(usize, ScalarQ)>> = vec![Vec::new(); source.dim()];
        for (r, c, v) in entries {
            if v.is_zero() {
                continue;
            }
            if target.parity(r) != source.parity(c) ^ (parity & 1) {
                return Err(Error::Invalid(format!(
                    "entry {} <- {} violates parity {}",
                    target.label(r),
                    source.label(c),
                    parity
                )));
            }
            cols[c].push((r, v));
        }
        let cols = cols.into_iter().map(sort_col).collect();
        Ok(SuperMap { source, target, parity: parity & 1, cols })
    }

    /// Builds from per-column entry lists (rows may repeat).
    pub fn from_columns(
        source: Arc<SuperSpace>,
        target: Arc<SuperSpace>,
        parity: Parity,
        cols: Vec<Vec<(usize, ScalarQ)>>,
    ) -> Result<SuperMap> {
        assert_eq!(cols.len(), source.dim());
        let entries = cols
            .into_iter()
            .enumerate()
            .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v)));
        SuperMap::from_entries(source, target, parity, entries)
    }

    pub fn zero(source: Arc<SuperSpace>, target: Arc<SuperSpace>, parity: Parity) -> SuperMap {
        let cols = vec![Vec::new(); source.dim()];
        SuperMap { source, target, parity: parity & 1, cols }
    }

    pub fn identity(a: &Arc<SuperSpace>) -> SuperMap {
        SuperMap::scalar(a, &ScalarQ::one())
    }

    pub fn scalar(a: &Arc<SuperSpace>, c: &ScalarQ) -> SuperMap {
        let cols = (0..a.dim())
            .map(|k| if c.is_zero() { vec![] } else { vec![(k, c.clone())] })
            .collect();
        SuperMap { source: a.clone(), target: a.clone(), parity: 0, cols }
    }

    pub fn source(&self) -> &Arc<SuperSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SuperSpace> {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn column(&self, c: usize) -> &[(usize, ScalarQ)] {
        &self.cols[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> ScalarQ {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => ScalarQ::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn triples(&self) -> Vec<(usize, usize, ScalarQ)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out.push((*r, c, v.clone()));
            }
        }
        out
    }

    /// Matrix dump as `(row-label, col-label, scalar)` triples.
    pub fn dump(&self) -> Vec<(String, String, ScalarQ)> {
        self.triples()
            .into_iter()
            .map(|(r, c, v)| (self.target.label(r).to_string(), self.source.label(c).to_string(), v))
            .collect()
    }

    /// Verifies that every entry respects the map's parity.
    pub fn check_parity(&self) -> bool {
        self.cols.iter().enumerate().all(|(c, col)| {
            col.iter().all(|(r, _)| self.target.parity(*r) == self.source.parity(c) ^ self.parity)
        })
    }

    /// Reinterprets the map between spaces of the same dimensions and
    /// parities (for instance after a relabelling of the basis).
    pub fn with_spaces(&self, source: Arc<SuperSpace>, target: Arc<SuperSpace>) -> SuperMap {
        assert_eq!(source.dim(), self.source.dim());
        assert_eq!(target.dim(), self.target.dim());
        SuperMap { source, target, parity: self.parity, cols: self.cols.clone() }
    }

    pub fn scale(&self, c: &ScalarQ) -> SuperMap {
        if c.is_zero() {
            return SuperMap::zero(self.source.clone(), self.target.clone(), self.parity);
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|(r, v)| (*r, v * c)).collect()).collect();
        SuperMap { source: self.source.clone(), target: self.target.clone(), parity: self.parity, cols }
    }

    pub fn neg(&self) -> SuperMap {
        self.scale(&ScalarQ::from_int(-1))
    }

    /// Sum of two maps with equal spaces; a zero summand may have either parity.
    pub fn add(&self, o: &SuperMap) -> Result<SuperMap> {
        if !same_space(&self.source, &o.source) || !same_space(&self.target, &o.target) {
            return Err(Error::ObjectMismatch("sum of maps between different spaces".into()));
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if self.parity != o.parity {
            return Err(Error::Invalid("sum of maps of different parity".into()));
        }
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                sort_col(v)
            })
            .collect();
        Ok(SuperMap { source: self.source.clone(), target: self.target.clone(), parity: self.parity, cols })
    }

    pub fn sub(&self, o: &SuperMap) -> Result<SuperMap> {
        self.add(&o.neg())
    }

    /// `self o g`, i.e. `g` applied first.
    pub fn compose(&self, g: &SuperMap) -> Result<SuperMap> {
        if !same_space(&g.target, &self.source) {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose: inner target dim {} vs outer source dim {}",
                g.target.dim(),
                self.source.dim()
            )));
        }
        let work = |col: &Vec<(usize, ScalarQ)>| {
            let mut acc = HashMap::new();
            for (k, c) in col {
                axpy(&mut acc, c, &self.cols[*k]);
            }
            finish(acc)
        };
        let cols: Vec<Vec<(usize, ScalarQ)>> = if g.cols.len() >= 64 {
            g.cols.par_iter().map(work).collect()
        } else {
            g.cols.iter().map(work).collect()
        };
        Ok(SuperMap {
            source: g.source.clone(),
            target: self.target.clone(),
            parity: self.parity ^ g.parity,
            cols,
        })
    }

    /// Applies the map to a sparse vector given as `(index, coefficient)`.
    pub fn apply(&self, v: &[(usize, ScalarQ)]) -> Vec<(usize, ScalarQ)> {
        let mut acc = HashMap::new();
        for (k, c) in v {
            axpy(&mut acc, c, &self.cols[*k]);
        }
        finish(acc)
    }

    /// `f (x) g` with `(f (x) g)(v (x) w) = (-1)^{p(g) p(v)} f(v) (x) g(w)`.
    pub fn tensor(&self, g: &SuperMap) -> SuperMap {
        let source = tensor_space(&self.source, &g.source);
        let target = tensor_space(&self.target, &g.target);
        let (sb, tb) = (g.source.dim(), g.target.dim());
        let mut cols = Vec::with_capacity(source.dim());
        for j1 in 0..self.source.dim() {
            let sign = g.parity & self.source.parity(j1) == 1;
            for j2 in 0..sb {
                let mut col = Vec::with_capacity(self.cols[j1].len() * g.cols[j2].len());
                for (i1, a) in &self.cols[j1] {
                    for (i2, b) in &g.cols[j2] {
                        let v = a * b;
                        col.push((i1 * tb + i2, if sign { -v } else { v }));
                    }
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
        SuperMap { source, target, parity: self.parity ^ g.parity, cols }
    }

    /// Substitutes `q = q0` entrywise, returning a dense row-major matrix.
    pub fn specialize(&self, q0: &GaussianRational) -> Result<Vec<Vec<GaussianRational>>> {
        let mut m = vec![vec![GaussianRational::zero(); self.source.dim()]; self.target.dim()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                m[*r][c] = v.specialize(q0)?;
            }
        }
        Ok(m)
    }

    /// Rank after substituting `q = q0`.
    pub fn rank_at(&self, q0: &GaussianRational) -> Result<usize> {
        Ok(dense_rank(self.specialize(q0)?))
    }

    /// Returns `c` when the map equals `c * Id`.
    pub fn scalar_of(&self) -> Result<ScalarQ> {
        if !same_space(&self.source, &self.target) {
            return Err(Error::NotScalar);
        }
        let mut c: Option<ScalarQ> = None;
        for (k, col) in self.cols.iter().enumerate() {
            let d = match col.as_slice() {
                [] => ScalarQ::zero(),
                [(r, v)] if *r == k => v.clone(),
                _ => return Err(Error::NotScalar),
            };
            match &c {
                None => c = Some(d),
                Some(x) if *x == d => {}
                Some(_) => return Err(Error::NotScalar),
            }
        }
        Ok(c.unwrap_or_else(ScalarQ::zero))
    }

    /// Exact inverse by Gauss-Jordan elimination; pivots prefer entries with
    /// the fewest terms.
    pub fn invert(&self) -> Result<SuperMap> {
        let n = self.source.dim();
        if n != self.target.dim() {
            return Err(Error::Singular);
        }
        // Rows of [A | I] stored sparsely.
        let mut rows: Vec<HashMap<usize, ScalarQ>> = vec![HashMap::new(); n];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].insert(c, v.clone());
            }
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.insert(n + r, ScalarQ::one());
        }
        let mut used = vec![false; n];
        let mut pivot_row_of_col = vec![usize::MAX; n];
        for c in 0..n {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in rows.iter().enumerate() {
                if used[r] {
                    continue;
                }
                if let Some(v) = row.get(&c) {
                    let cost = v.term_count();
                    if best.is_none_or(|(_, b)| cost < b) {
                        best = Some((r, cost));
                    }
                }
            }
            let (p, _) = best.ok_or(Error::Singular)?;
            used[p] = true;
            pivot_row_of_col[c] = p;
            let inv = rows[p][&c].inv().unwrap();
            let prow: Vec<(usize, ScalarQ)> = rows[p].iter().map(|(k, v)| (*k, v * &inv)).collect();
            rows[p] = prow.iter().cloned().collect();
            for r in 0..n {
                if r == p {
                    continue;
                }
                let f = match rows[r].get(&c) {
                    Some(f) => f.clone(),
                    None => continue,
                };
                for (k, v) in &prow {
                    let t = &f * v;
                    let e = rows[r].entry(*k).or_insert_with(ScalarQ::zero);
                    *e = &*e - &t;
                    if e.is_zero() {
                        rows[r].remove(k);
                    }
                }
            }
        }
        // Row pivot_row_of_col[c] now holds row c of the inverse.
        let mut entries = Vec::new();
        for c in 0..n {
            let row = &rows[pivot_row_of_col[c]];
            for (k, v) in row {
                if *k >= n {
                    entries.push((c, k - n, v.clone()));
                }
            }
        }
        SuperMap::from_entries(self.target.clone(), self.source.clone(), self.parity, entries)
    }

    /// First entry (in column-major order) where two maps differ.
    pub fn first_difference(&self, o: &SuperMap) -> Option<(usize, usize, ScalarQ, ScalarQ)> {
        for c in 0..self.source.dim().min(o.source.dim()) {
            let (a, b) = (&self.cols[c], &o.cols[c]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ra = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                let rb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                if ra == rb {
                    if a[i].1 != b[j].1 {
                        return Some((ra, c, a[i].1.clone(), b[j].1.clone()));
                    }
                    i += 1;
                    j += 1;
                } else if ra < rb {
                    return Some((ra, c, a[i].1.clone(), ScalarQ::zero()));
                } else {
                    return Some((rb, c, ScalarQ::zero(), b[j].1.clone()));
                }
            }
        }
        None
    }

    pub fn map_entries<F: Fn(&ScalarQ) -> ScalarQ>(&self, f: F) -> SuperMap {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, f(v))).filter(|e| !e.1.is_zero()).collect())
            .collect();
        SuperMap { source: self.source.clone(), target: self.target.clone(), parity: self.parity, cols }
    }
}

/// The graded flip `v (x) w -> (-1)^{p(v) p(w)} w (x) v`.
pub fn flip(a: &Arc<SuperSpace>, b: &Arc<SuperSpace>) -> SuperMap {
    let source = tensor_space(a, b);
    let target = tensor_space(b, a);
    let mut entries = Vec::with_capacity(source.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let s = if a.parity(i) & b.parity(j) == 1 { -1 } else { 1 };
            entries.push((j * a.dim() + i, i * b.dim() + j, ScalarQ::from_int(s)));
        }
    }
    SuperMap::from_entries(source, target, 0, entries).unwrap()
}

/// Rank of a dense matrix over the Gaussian rationals.
pub fn dense_rank(mut m: Vec<Vec<GaussianRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let p = (rank..rows).filter(|&r| !m[r][c].is_zero()).min_by_key(|&r| m[r][c].weight());
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        let prow: Vec<GaussianRational> = m[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..cols {
                if !prow[k].is_zero() {
                    let t = &f * &prow[k];
                    m[r][k] -= &t;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
