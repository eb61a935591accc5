//! The evaluation functor: web objects go to tensor products of symmetric
//! powers of the natural module and their duals, generators go to explicit
//! module maps, and diagrams are evaluated slice by slice.

pub mod catalog;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::aqhowe::{act_matrix, divided_power_e_matrix, dual_space, weight_space, GenKind, GeneratorSymbol, Representation, Side, Weight};
use crate::error::{Error, Result};
use crate::qsym::sym_dim;
use crate::scalars::{GaussianRational as Gr, ScalarQ};
use crate::superlinear::{tensor_space, SuperMap, SuperSpace};
use crate::webir::{coev, ev, unfold_generator, Block, Generator, Item, WebDiagram, WebObject};

pub use catalog::{build_relation, catalog_entries, suite, CatalogEntry, Relation};

/// Default bound on the dimension of any evaluated object.
pub const DEFAULT_CAP: usize = 4096;

/// Evaluation at a fixed rank `n` with a dimension cap and a memo table of
/// generator matrices.
pub struct EvalContext {
    pub n: usize,
    pub cap: usize,
    cache: Mutex<HashMap<(Generator, usize), SuperMap>>,
    items: Mutex<HashMap<Item, Arc<SuperSpace>>>,
}

impl EvalContext {
    pub fn new(n: usize) -> EvalContext {
        EvalContext::with_cap(n, DEFAULT_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> EvalContext {
        assert!(n >= 1, "rank must be positive");
        EvalContext { n, cap, cache: Mutex::new(HashMap::new()), items: Mutex::new(HashMap::new()) }
    }

    pub fn object_dim(&self, o: &WebObject) -> usize {
        o.items().iter().fold(1usize, |acc, i| acc.saturating_mul(sym_dim(i.label as usize, self.n)))
    }

    fn item_space(&self, i: Item) -> Arc<SuperSpace> {
        if let Some(s) = self.items.lock().unwrap().get(&i) {
            return s.clone();
        }
        let up = weight_space(1, self.n, &Weight::new(vec![i.label as i64]));
        let s = if i.is_up() { up } else { dual_space(&up) };
        self.items.lock().unwrap().insert(i, s.clone());
        s
    }

    /// The superspace of an object. Up items carry the first-row weight
    /// space basis of the Howe algebra, down items its dual basis.
    pub fn eval_object(&self, o: &WebObject) -> Result<Arc<SuperSpace>> {
        let dim = self.object_dim(o);
        if dim > self.cap {
            return Err(Error::DimensionCap { dim, cap: self.cap });
        }
        Ok(o.items().iter().fold(SuperSpace::unit(), |acc, i| tensor_space(&acc, &self.item_space(*i))))
    }

    /// The matrix of a generator. Non-primitive generators are evaluated
    /// through their expansion; results are memoized.
    pub fn eval_generator(&self, g: &Generator) -> Result<SuperMap> {
        let key = (g.clone(), self.n);
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = self.compute_generator(g)?;
        self.cache.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn compute_generator(&self, g: &Generator) -> Result<SuperMap> {
        g.validate()?;
        let src = self.eval_object(&g.source())?;
        let tgt = self.eval_object(&g.target())?;
        let n = self.n;
        let m = match g {
            Generator::Id(_) => SuperMap::identity(&src),
            Generator::Dot(k) => {
                let kbar = GeneratorSymbol::new(Side::M, GenKind::Kbar, 1);
                act_matrix(kbar, 1, n, &Weight::new(vec![*k as i64]))?
            }
            Generator::Merge(k, l) => divided_power_e_matrix(1, *l, 2, n, &Weight::new(vec![*k as i64, *l as i64]))?,
            Generator::Split(k, l) => divided_power_e_matrix(1, *k, 2, n, &Weight::new(vec![0, (k + l) as i64]))?,
            Generator::LCup(_) => {
                let d = (tgt.dim() as f64).sqrt() as usize;
                let entries = (0..d).map(|i| (i * d + i, 0, ScalarQ::one()));
                SuperMap::from_entries(src.clone(), tgt.clone(), 0, entries)?
            }
            Generator::LCap(_) => {
                let d = (src.dim() as f64).sqrt() as usize;
                let entries = (0..d).map(|i| (0, i * d + i, ScalarQ::one()));
                SuperMap::from_entries(src.clone(), tgt.clone(), 0, entries)?
            }
            Generator::Over(a, b) | Generator::Under(a, b) if a.is_up() && !b.is_up() && a.label == 1 && b.label == 1 => {
                // rightward thin crossings invert the leftward ones
                let leftward = match g {
                    Generator::Over(..) => Generator::Under(*b, *a),
                    _ => Generator::Over(*b, *a),
                };
                self.eval_generator(&leftward)?.invert()?
            }
            Generator::DDot(k) => self.eval_mate(&Generator::Dot(*k))?,
            Generator::DMerge(k, l) => self.eval_mate(&Generator::Merge(*l, *k))?,
            Generator::DSplit(k, l) => self.eval_mate(&Generator::Split(*l, *k))?,
            Generator::Over(a, b) if !a.is_up() && !b.is_up() => {
                self.eval_mate(&Generator::Over(Item::up(a.label), Item::up(b.label)))?
            }
            Generator::Under(a, b) if !a.is_up() && !b.is_up() => {
                self.eval_mate(&Generator::Under(Item::up(a.label), Item::up(b.label)))?
            }
            _ => {
                let d = unfold_generator(g).ok_or_else(|| Error::UnsupportedGenerator(g.to_string()))?;
                self.eval_diagram(&d)?
            }
        };
        Ok(m.with_spaces(src, tgt))
    }

    /// The half-turn rotation of a generator, contracted entrywise against
    /// `coev` and `ev` instead of through the padded composite.
    fn eval_mate(&self, g: &Generator) -> Result<SuperMap> {
        let (x, y) = (g.source(), g.target());
        let f = self.eval_generator(g)?;
        let c = self.eval_diagram(&coev(&x))?;
        let e = self.eval_diagram(&ev(&y))?;
        let xs = self.eval_object(&x.dual())?;
        let ys = self.eval_object(&y.dual())?;
        let (dx, dy) = (xs.dim(), self.eval_object(&y)?.dim());
        // c[(i, b)] for the coevaluation vector, e[(a, j)] for the pairing
        let mut coev_by_i: HashMap<usize, Vec<(usize, ScalarQ)>> = HashMap::new();
        for (r, _, v) in c.triples() {
            coev_by_i.entry(r / dx).or_default().push((r % dx, v));
        }
        let mut ev_by_j: HashMap<usize, Vec<(usize, ScalarQ)>> = HashMap::new();
        for (_, col, v) in e.triples() {
            ev_by_j.entry(col % dy).or_default().push((col / dy, v));
        }
        let mut acc: HashMap<(usize, usize), ScalarQ> = HashMap::new();
        for (j, i, fv) in f.triples() {
            let (Some(cs), Some(es)) = (coev_by_i.get(&i), ev_by_j.get(&j)) else { continue };
            for (b, cv) in cs {
                let cf = &fv * cv;
                for (a, ev) in es {
                    let mut v = &cf * ev;
                    if f.parity() & ys.parity(*a) == 1 {
                        v = -v;
                    }
                    let slot = acc.entry((*b, *a)).or_insert_with(ScalarQ::zero);
                    *slot = &*slot + &v;
                }
            }
        }
        let entries: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((b, a), v)| (b, a, v)).collect();
        SuperMap::from_entries(ys, xs, f.parity(), entries)
    }

    fn eval_block(&self, b: &Block) -> Result<SuperMap> {
        match b {
            Block::Gen(g) => self.eval_generator(g),
            Block::Lin(terms) => {
                let mut acc: Option<SuperMap> = None;
                for (c, d) in terms {
                    if c.is_zero() {
                        continue;
                    }
                    let m = self.eval_diagram(d)?.scale(c);
                    acc = Some(match acc {
                        None => m,
                        Some(a) => a.add(&m)?,
                    });
                }
                match acc {
                    Some(a) => Ok(a),
                    None => {
                        let src = self.eval_object(&b.source())?;
                        let tgt = self.eval_object(&b.target())?;
                        Ok(SuperMap::zero(src, tgt, b.parity()))
                    }
                }
            }
        }
    }

    /// Tensors each slice and composes bottom to top.
    pub fn eval_diagram(&self, d: &WebDiagram) -> Result<SuperMap> {
        let mut cur_obj = d.source().clone();
        let mut acc: Option<SuperMap> = None;
        for s in d.slices() {
            let src = self.eval_object(&cur_obj)?;
            let tgt_obj = s.iter().fold(WebObject::unit(), |o, b| o.concat(&b.target()));
            let tgt = self.eval_object(&tgt_obj)?;
            let mut m = SuperMap::identity(&SuperSpace::unit());
            for b in s {
                m = m.tensor(&self.eval_block(b)?);
            }
            let m = m.with_spaces(src, tgt);
            acc = Some(match acc {
                None => m,
                Some(a) => m.compose(&a)?,
            });
            cur_obj = tgt_obj;
        }
        match acc {
            Some(a) => Ok(a),
            None => Ok(SuperMap::identity(&self.eval_object(d.source())?)),
        }
    }

    /// The module structure on the image of an object.
    pub fn representation(&self, o: &WebObject) -> Result<Representation> {
        let space = self.eval_object(o)?;
        let mut rep = Representation::trivial(self.n);
        for i in o.items() {
            let r = if i.is_up() {
                Representation::sym(i.label as usize, self.n)?
            } else {
                Representation::sym_dual(i.label as usize, self.n)?
            };
            rep = rep.tensor(&r)?;
        }
        rep.space = space.clone();
        for m in rep.mats.values_mut() {
            *m = m.with_spaces(space.clone(), space.clone());
        }
        Ok(rep)
    }
}

/// A differing entry between two maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub row: String,
    pub col: String,
    pub lhs: ScalarQ,
    pub rhs: ScalarQ,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "entry ({} <- {}): {} vs {}", self.row, self.col, self.lhs, self.rhs)
    }
}

/// Outcome of an equality check.
#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Pass,
    Fail(Witness),
    Error(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

fn witness(m: &SuperMap, r: usize, c: usize, lhs: ScalarQ, rhs: ScalarQ) -> Witness {
    Witness { row: m.target().label(r).to_string(), col: m.source().label(c).to_string(), lhs, rhs }
}

/// Entrywise comparison at `q = q0`; `None` when the maps agree there or a
/// pole prevents screening.
fn screen(a: &SuperMap, b: &SuperMap, q0: &Gr) -> Option<(usize, usize)> {
    let mut vals: HashMap<(usize, usize), Gr> = HashMap::new();
    for (r, c, v) in a.triples() {
        vals.insert((r, c), v.specialize(q0).ok()?);
    }
    for (r, c, v) in b.triples() {
        let x = v.specialize(q0).ok()?;
        let e = vals.entry((r, c)).or_insert_with(Gr::zero);
        *e -= &x;
    }
    let mut bad: Vec<(usize, usize)> = vals.into_iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k).collect();
    bad.sort_by_key(|&(r, c)| (c, r));
    bad.first().copied()
}

/// Exact equality of two maps with the same boundaries, screened first at
/// a specialization when `q0` is given.
pub fn compare_maps(lhs: &SuperMap, rhs: &SuperMap, q0: Option<&Gr>) -> Check {
    if lhs.source().dim() != rhs.source().dim() || lhs.target().dim() != rhs.target().dim() {
        return Check::Error("boundary dimensions differ".into());
    }
    let rhs = rhs.with_spaces(lhs.source().clone(), lhs.target().clone());
    if let Some(q0) = q0 {
        if let Some((r, c)) = screen(lhs, &rhs, q0) {
            return Check::Fail(witness(lhs, r, c, lhs.entry(r, c), rhs.entry(r, c)));
        }
    }
    if lhs.is_zero() && rhs.is_zero() {
        return Check::Pass;
    }
    match lhs.first_difference(&rhs) {
        None if lhs.parity() == rhs.parity() || lhs.is_zero() || rhs.is_zero() => Check::Pass,
        None => Check::Error("parities differ".into()),
        Some((r, c, a, b)) => Check::Fail(witness(lhs, r, c, a, b)),
    }
}

/// Evaluates both sides and compares them exactly.
pub fn verify_diagrams(lhs: &WebDiagram, rhs: &WebDiagram, ctx: &EvalContext, q0: Option<&Gr>) -> Check {
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Check::Error(format!(
            "sides have different types: {} -> {} and {} -> {}",
            lhs.source(),
            lhs.target(),
            rhs.source(),
            rhs.target()
        ));
    }
    let l = match ctx.eval_diagram(lhs) {
        Ok(m) => m,
        Err(e) => return Check::Error(e.to_string()),
    };
    let r = match ctx.eval_diagram(rhs) {
        Ok(m) => m,
        Err(e) => return Check::Error(e.to_string()),
    };
    compare_maps(&l, &r, q0)
}

/// The default screening point `q0 = 7/5`.
pub fn default_q0() -> Gr {
    Gr::from_ratio(7, 5)
}

/// Builds the catalog relation `id` with parameters and checks it.
pub fn verify_relation(id: &str, params: &[u32], ctx: &EvalContext) -> Check {
    match build_relation(id, params) {
        Ok(rel) => verify_diagrams(&rel.lhs, &rel.rhs, ctx, Some(&default_q0())),
        Err(e) => Check::Error(e.to_string()),
    }
}

/// Checks `f rho(g) = (-1)^{p(f) p(g)} rho(g) f` for every n-side generator.
pub fn verify_map_equivariance(f: &SuperMap, src: &Representation, tgt: &Representation) -> Check {
    for (g, rs) in &src.mats {
        let rt = match tgt.get(*g) {
            Ok(m) => m,
            Err(e) => return Check::Error(e.to_string()),
        };
        let left = match f.compose(rs) {
            Ok(m) => m,
            Err(e) => return Check::Error(e.to_string()),
        };
        let mut right = match rt.compose(f) {
            Ok(m) => m,
            Err(e) => return Check::Error(e.to_string()),
        };
        if f.parity() & g.parity() == 1 {
            right = right.neg();
        }
        if let Check::Fail(mut w) = compare_maps(&left, &right, None) {
            w.row = format!("{}: {}", g, w.row);
            return Check::Fail(w);
        }
    }
    Check::Pass
}

/// Equivariance of the image of a diagram.
pub fn verify_equivariance(d: &WebDiagram, ctx: &EvalContext) -> Check {
    let run = || -> Result<Check> {
        let f = ctx.eval_diagram(d)?;
        let src = ctx.representation(d.source())?;
        let tgt = ctx.representation(d.target())?;
        Ok(verify_map_equivariance(&f, &src, &tgt))
    };
    run().unwrap_or_else(|e| Check::Error(e.to_string()))
}
