//! Link invariants from cut braid closures, framing factors, and the
//! circle values of the κ-specialized category.
//!
//! A braid closure is cut along its rightmost strand: every other strand is
//! closed to the left by a rightward cup below and a leftward cap above, so
//! the result is an endomorphism of `↑k`. Its image under Ψₙ is a scalar
//! multiple of the identity, and the invariant is that scalar divided by the
//! same scalar for the unknot, after removing the framing twists.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::evaluator::EvalContext;
use crate::scalars::{qfact, qint, ScalarQ};
use crate::webir::{parse_braid, parse_web, BraidWord, Item, WebDiagram, WebObject};

/// A framed link given as a braid closure. `kinks[j]` counts signed curls
/// inserted below the braid on strand position `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPresentation {
    pub braid: BraidWord,
    pub kinks: Vec<i32>,
}

impl LinkPresentation {
    pub fn new(braid: BraidWord, kinks: Vec<i32>) -> Result<LinkPresentation> {
        if kinks.len() != braid.strands.len() {
            return Err(Error::MalformedBraid(format!(
                "{} kink counts for {} strands",
                kinks.len(),
                braid.strands.len()
            )));
        }
        braid.check_closure()?;
        Ok(LinkPresentation { braid, kinks })
    }

    pub fn from_braid(braid: BraidWord) -> Result<LinkPresentation> {
        let kinks = vec![0; braid.strands.len()];
        LinkPresentation::new(braid, kinks)
    }

    pub fn parse(text: &str) -> Result<LinkPresentation> {
        LinkPresentation::from_braid(parse_braid(text)?)
    }

    /// The `k`-labelled unknot with `kinks` signed curls.
    pub fn unknot(k: u32, kinks: i32) -> Result<LinkPresentation> {
        LinkPresentation::new(BraidWord::new(vec![k], vec![])?, vec![kinks])
    }

    /// Component index of each strand position (numbered by first position).
    pub fn components(&self) -> Vec<usize> {
        let perm = self.braid.permutation();
        let m = perm.len();
        let mut comp = vec![usize::MAX; m];
        let mut next = 0;
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut j = start;
            while comp[j] == usize::MAX {
                comp[j] = next;
                // The strand ending at top position `j` starts at `perm[j]`;
                // closing it feeds bottom position `j`, so follow backwards.
                j = perm[j];
            }
            next += 1;
        }
        comp
    }

    /// Per component: (label, crossings of the component with itself plus kinks).
    pub fn self_writhes(&self) -> Vec<(u32, i64)> {
        let comp = self.components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut out: Vec<(u32, i64)> = (0..count)
            .map(|c| (self.braid.strands[comp.iter().position(|&x| x == c).unwrap()], 0))
            .collect();
        for (j, &k) in self.kinks.iter().enumerate() {
            out[comp[j]].1 += k as i64;
        }
        let mut at: Vec<usize> = (0..self.braid.strands.len()).collect();
        for &l in &self.braid.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (comp[at[i]], comp[at[i + 1]]);
            if a == b {
                out[a].1 += l.signum() as i64;
            }
            at.swap(i, i + 1);
        }
        out
    }
}

/// A signed curl on `↑k`: the left closure of a crossing of `↑k` with itself.
pub fn kink(k: u32, positive: bool) -> Result<WebDiagram> {
    let x = if positive { "xo" } else { "xu" };
    parse_web(&format!("rcup({k}) * id(u{k}) ; id(d{k}) * {x}(u{k},u{k}) ; lcap({k}) * id(u{k})"))
}

/// The factor a framing change of `kinks` curls on a `k`-labelled strand contributes.
pub fn framing_factor(k: u32, kinks: i64) -> ScalarQ {
    let e = (k as i64) * (k as i64 - 1) * kinks;
    ScalarQ::q_pow(e as i32)
}

fn identity_on(items: &[Item]) -> WebDiagram {
    WebDiagram::identity(&WebObject::new(items.to_vec()))
}

fn padded(left: &[Item], middle: WebDiagram, right: &[Item]) -> WebDiagram {
    WebDiagram::tensor_all(&[identity_on(left), middle, identity_on(right)])
}

/// The 1-1 tangle obtained by closing all but the rightmost strand to the left.
pub fn cut_closure(link: &LinkPresentation) -> Result<WebDiagram> {
    let labels = &link.braid.strands;
    let m = labels.len();
    let ups: Vec<Item> = labels.iter().map(|&k| Item::up(k)).collect();
    // Closed strands 0..m-1 nest with strand 0 innermost.
    let downs: Vec<Item> = labels[..m - 1].iter().rev().map(|&k| Item::down(k)).collect();

    let mut d = identity_on(&ups[m - 1..]);
    for j in (0..m - 1).rev() {
        let k = labels[j];
        let outer = &downs[..m - 2 - j];
        let cup = padded(outer, parse_web(&format!("rcup({k})"))?, &ups[j + 1..]);
        d = d.then(&cup)?;
    }

    let mut framed = identity_on(&ups);
    for (j, &count) in link.kinks.iter().enumerate() {
        for _ in 0..count.unsigned_abs() {
            let curl = padded(&ups[..j], kink(labels[j], count > 0)?, &ups[j + 1..]);
            framed = framed.then(&curl)?;
        }
    }
    let body = framed.then(&link.braid.to_diagram())?;
    d = d.then(&padded(&downs, body, &[]))?;

    for j in 0..m - 1 {
        let k = labels[j];
        let outer = &downs[..m - 2 - j];
        let cap = padded(outer, parse_web(&format!("lcap({k})"))?, &ups[j + 1..]);
        d = d.then(&cap)?;
    }
    Ok(d)
}

/// The scalar by which Ψₙ(T_K) acts on `↑k`, before any normalization.
pub fn unnormalized(link: &LinkPresentation, ctx: &EvalContext) -> Result<ScalarQ> {
    let d = cut_closure(link)?;
    let m = ctx.eval_diagram(&d)?;
    m.scalar_of()
}

/// The framing-independent invariant, normalized so the unknot of the cut
/// strand's label is 1.
pub fn invariant(link: &LinkPresentation, ctx: &EvalContext) -> Result<ScalarQ> {
    let k = *link.braid.strands.last().expect("braids have strands");
    let raw = unnormalized(link, ctx)?;
    let base = unnormalized(&LinkPresentation::unknot(k, 0)?, ctx)?;
    let framing = link
        .self_writhes()
        .into_iter()
        .fold(ScalarQ::one(), |acc, (label, w)| &acc * &framing_factor(label, w));
    let denom = &base * &framing;
    match denom.inv() {
        Some(inv) => Ok(&raw * &inv),
        None => Err(Error::Invalid("the unknot evaluates to zero".into())),
    }
}

/// Invariants of several links, computed in parallel.
pub fn invariants(links: &[LinkPresentation], n: usize) -> Vec<Result<ScalarQ>> {
    use rayon::prelude::*;
    links.par_iter().map(|l| invariant(l, &EvalContext::new(n))).collect()
}

/// Named knots used by the CLI and the tests.
pub fn named_links() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("unknot", "braid 1 [1] :"),
        ("trefoil", "braid 2 [1,1] : s1 s1 s1"),
        ("trefoil-mirror", "braid 2 [1,1] : s-1 s-1 s-1"),
        ("figure-eight", "braid 3 [1,1,1] : s1 s-2 s1 s-2"),
        ("hopf", "braid 2 [1,1] : s1 s1"),
    ])
}

// ---------------------------------------------------------------------------
// κ-specialized circles

/// The clockwise 1-circle value when it is not forced to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaContext {
    pub kappa: ScalarQ,
}

impl KappaContext {
    pub fn new() -> KappaContext {
        let qt = ScalarQ::qtilde();
        KappaContext { kappa: &ScalarQ::from_int(2) / &qt }
    }
}

impl Default for KappaContext {
    fn default() -> Self {
        KappaContext::new()
    }
}

/// Closed product for the clockwise `k`-circle.
pub fn kappa_circle(k: u32) -> ScalarQ {
    assert!(k >= 1, "circle label must be positive");
    let mut num = ScalarQ::one();
    for t in 0..k as i32 {
        num = &num * &(&ScalarQ::q_pow(t) + &ScalarQ::q_pow(-t));
    }
    let mut den = qfact(k);
    for _ in 0..k {
        den = &den * &ScalarQ::qtilde();
    }
    &num / &den
}

/// Both displayed forms of the ratio between the `k`- and `(k-1)`-circles.
pub fn kappa_ratios(k: u32) -> (ScalarQ, ScalarQ) {
    assert!(k >= 2, "the recursion starts at k = 2");
    let kappa = KappaContext::new().kappa;
    let k = k as i64;
    let qk = qint(k, 1);
    let first = &(&(&(&qint(k - 1, 1) * &ScalarQ::q_pow(-1)) * &(&kappa + &ScalarQ::q_pow(1))) / &qk)
        - &(&(&kappa * &qint(k - 2, 1)) / &qk);
    let second = &(&ScalarQ::q_pow((k - 1) as i32) + &ScalarQ::q_pow(-(k - 1) as i32)) / &(&qk * &ScalarQ::qtilde());
    (first, second)
}

/// The circle value reached by running the recursion up from κ.
pub fn kappa_by_recursion(k: u32) -> ScalarQ {
    let mut v = KappaContext::new().kappa;
    for j in 2..=k {
        v = &v * &kappa_ratios(j).0;
    }
    v
}

/// The two recursion coefficients agree for every step up to `k`, and the
/// recursion reproduces the closed product.
pub fn kappa_recursion_check(k: u32) -> bool {
    (2..=k).all(|j| {
        let (a, b) = kappa_ratios(j);
        a == b
    }) && kappa_by_recursion(k) == kappa_circle(k)
}
