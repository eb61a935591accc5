//! Straightening for algebras presented by quadratic relations on letters
//! `(row, column)`, with ordered monomials as the target basis.
//!
//! Relations are grouped into blocks that share the multiset of rows and
//! the multiset of absolute column values. Each block is row-reduced once so
//! that every non-basis pair is expressed through ordered pairs; words are
//! then normalized by rewriting their leftmost non-basis pair.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::lincomb::Lin;
use crate::scalars::ScalarQ;

pub(crate) type Letter = (i32, i32);
pub(crate) type Word = Vec<Letter>;
pub(crate) type Relation = Vec<((Letter, Letter), ScalarQ)>;

pub(crate) fn letter_is_odd(l: Letter) -> bool {
    l.1 < 0
}

pub(crate) fn is_basis_pair(x: Letter, y: Letter) -> bool {
    x < y || (x == y && !letter_is_odd(x))
}

pub(crate) fn is_basis_word(w: &[Letter]) -> bool {
    w.windows(2).all(|p| is_basis_pair(p[0], p[1]))
}

type BlockKey = (i32, i32, i32, i32);

fn block_key(x: Letter, y: Letter) -> BlockKey {
    let (r1, r2) = (x.0.min(y.0), x.0.max(y.0));
    let (a, b) = (x.1.abs(), y.1.abs());
    (r1, r2, a.min(b), a.max(b))
}

fn block_words(k: BlockKey) -> Vec<(Letter, Letter)> {
    let (r1, r2, b1, b2) = k;
    let mut letters = Vec::new();
    for r in [r1, r2] {
        for b in [b1, b2] {
            for s in [b, -b] {
                if !letters.contains(&(r, s)) {
                    letters.push((r, s));
                }
            }
        }
    }
    let mut out = Vec::new();
    for &x in &letters {
        for &y in &letters {
            if block_key(x, y) == k && !out.contains(&(x, y)) {
                out.push((x, y));
            }
        }
    }
    out.sort();
    out
}

pub(crate) struct Straightener {
    table: HashMap<(Letter, Letter), Vec<(Letter, Letter, ScalarQ)>>,
    fuel_base: usize,
    cache: Mutex<HashMap<Word, Lin<Word>>>,
}

impl Straightener {
    /// `fuel_base` is the alphabet size used in the default fuel bound
    /// `10 * d * fuel_base^d`.
    pub fn from_relations(rels: Vec<Relation>, fuel_base: usize) -> Result<Straightener> {
        let mut blocks: BTreeMap<BlockKey, Vec<Relation>> = BTreeMap::new();
        for rel in rels {
            if rel.is_empty() {
                continue;
            }
            let k = block_key(rel[0].0 .0, rel[0].0 .1);
            debug_assert!(rel.iter().all(|((x, y), _)| block_key(*x, *y) == k));
            blocks.entry(k).or_default().push(rel);
        }
        let mut table = HashMap::new();
        for (k, rels) in blocks {
            solve_block(k, &rels, &mut table)?;
        }
        Ok(Straightener { table, fuel_base, cache: Mutex::new(HashMap::new()) })
    }

    pub fn default_fuel(&self, d: usize) -> usize {
        let d32 = d as u32;
        10usize.saturating_mul(d.max(1)).saturating_mul(self.fuel_base.saturating_pow(d32))
    }

    /// Expresses the product of the letters of `w` in ordered monomials.
    pub fn normalize(&self, w: &[Letter], fuel: Option<usize>) -> Result<Lin<Word>> {
        if is_basis_word(w) {
            return Ok(Lin::single(w.to_vec(), ScalarQ::one()));
        }
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let mut fuel = fuel.unwrap_or_else(|| self.default_fuel(w.len()));
        let mut pending: BTreeMap<Word, ScalarQ> = BTreeMap::new();
        pending.insert(w.to_vec(), ScalarQ::one());
        let mut out = Lin::new();
        while let Some((word, c)) = pending.pop_last() {
            let bad = word.windows(2).position(|p| !is_basis_pair(p[0], p[1]));
            let i = match bad {
                None => {
                    out.add_term(word, c);
                    continue;
                }
                Some(i) => i,
            };
            if fuel == 0 {
                return Err(Error::FuelExhausted);
            }
            fuel -= 1;
            let rule = self
                .table
                .get(&(word[i], word[i + 1]))
                .ok_or_else(|| Error::Invalid(format!("no straightening rule for {:?}", &word[i..i + 2])))?;
            for (x, y, k) in rule {
                let mut nw = word.clone();
                nw[i] = *x;
                nw[i + 1] = *y;
                let v = &c * k;
                match pending.get_mut(&nw) {
                    Some(e) => {
                        *e = &*e + &v;
                        if e.is_zero() {
                            pending.remove(&nw);
                        }
                    }
                    None => {
                        pending.insert(nw, v);
                    }
                }
            }
        }
        self.cache.lock().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }
}

/// Row-reduces one block with non-basis words as preferred pivots and
/// records each non-basis word as a combination of ordered pairs.
fn solve_block(
    k: BlockKey,
    rels: &[Relation],
    table: &mut HashMap<(Letter, Letter), Vec<(Letter, Letter, ScalarQ)>>,
) -> Result<()> {
    let mut words = block_words(k);
    words.sort_by_key(|&(x, y)| is_basis_pair(x, y));
    let pos: HashMap<(Letter, Letter), usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let ncols = words.len();
    let mut m: Vec<Vec<ScalarQ>> = rels
        .iter()
        .map(|rel| {
            let mut row = vec![ScalarQ::zero(); ncols];
            for (w, c) in rel {
                let j = pos[w];
                row[j] = &row[j] + c;
            }
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let p = (rank..m.len()).filter(|&r| !m[r][c].is_zero()).min_by_key(|&r| m[r][c].term_count());
        let p = match p {
            Some(p) => p,
            None => continue,
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().unwrap();
        let prow: Vec<ScalarQ> = m[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..ncols {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        }
        m[rank] = prow;
        pivots.push((rank, c));
        rank += 1;
    }
    for (j, &(x, y)) in words.iter().enumerate() {
        let basis = is_basis_pair(x, y);
        let pivot = pivots.iter().find(|p| p.1 == j);
        match (basis, pivot) {
            (true, Some(_)) => {
                return Err(Error::Invalid(format!("ordered pair {:?} {:?} is not independent", x, y)))
            }
            (false, None) => {
                return Err(Error::Invalid(format!("pair {:?} {:?} cannot be straightened", x, y)))
            }
            (false, Some(&(r, _))) => {
                let mut rule = Vec::new();
                for (jj, v) in m[r].iter().enumerate() {
                    if jj == j || v.is_zero() {
                        continue;
                    }
                    let (a, b) = words[jj];
                    if !is_basis_pair(a, b) {
                        return Err(Error::Invalid(format!("pair {:?} {:?} left unresolved", a, b)));
                    }
                    rule.push((a, b, -v));
                }
                table.insert((x, y), rule);
            }
            (true, None) => {}
        }
    }
    Ok(())
}
