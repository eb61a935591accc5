//! The relation catalog. Each entry builds both sides of an identity as
//! web diagrams from integer parameters; `suite` lists the instances run
//! by the verification suites.

use crate::error::{Error, Result};
use crate::scalars::{qbinom, qint, ScalarQ};
use crate::webir::{explode, merge_all, parse_web, permutations, reduced_word, t_word, Generator, Item, WebDiagram, WebObject};

/// Both sides of an identity.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub params: Vec<u32>,
    pub lhs: WebDiagram,
    pub rhs: WebDiagram,
}

/// A catalog row: id, family, parameter names and a short description.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub family: &'static str,
    pub params: &'static [&'static str],
    pub about: &'static str,
}

macro_rules! entry {
    ($id:expr, $fam:expr, [$($p:expr),*], $about:expr) => {
        CatalogEntry { id: $id, family: $fam, params: &[$($p),*], about: $about }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("digon", "upward", ["k", "l"], "split then merge is a quantum binomial times the identity"),
    entry!("merge-assoc", "upward", ["h", "k", "l"], "associativity of merges"),
    entry!("split-assoc", "upward", ["h", "k", "l"], "coassociativity of splits"),
    entry!("dot-collision", "upward", ["k"], "two dots on a k-strand give [k]_{q^2}"),
    entry!("two-dots-digon", "upward", [], "a digon with a dot on each edge is qt times the identity"),
    entry!("dot-on-thick", "upward", ["k", "side"], "a dot on a thin edge of a k-digon is the dot on the k-strand"),
    entry!("dot-on-exploded", "upward", ["k", "j"], "a dot on strand j of an exploded k-strand"),
    entry!("rung-collision", "ladder", ["k", "l", "r", "s"], "two rungs in the same direction combine"),
    entry!("square-switch", "ladder", ["k", "l", "r"], "commutator of opposite rungs"),
    entry!("square-switch-dots", "ladder", ["k", "l"], "dotted opposite rungs"),
    entry!("serre", "ladder", ["h", "k", "l"], "Serre relation for rungs on three strands"),
    entry!("serre-dotted", "ladder", ["h", "k", "l"], "Serre relation with a dotted rung"),
    entry!("hecke-quadratic", "hecke", ["strands", "i"], "T_i^2 = qt T_i + 1"),
    entry!("hecke-far", "hecke", ["strands", "i", "j"], "T_i T_j = T_j T_i for |i-j| > 1"),
    entry!("hecke-braid", "hecke", ["strands", "i"], "T_i T_{i+1} T_i = T_{i+1} T_i T_{i+1}"),
    entry!("clifford-square", "hecke", ["strands", "i"], "c_i^2 = 1"),
    entry!("clifford-anticommute", "hecke", ["strands", "i", "j"], "c_i c_j = -c_j c_i"),
    entry!("hc-far", "hecke", ["strands", "i", "j"], "T_i c_j = c_j T_i for |i-j| > 1"),
    entry!("hc-swap", "hecke", ["strands", "i"], "T_i c_i = c_{i+1} T_i"),
    entry!("hc-mixed", "hecke", ["strands", "i"], "c_i T_i = T_i c_{i+1} + qt (c_i - c_{i+1})"),
    entry!("untwist", "untwist", ["k", "perm", "over", "merge"], "merging after T_w scales by q^{+-l(w)}"),
    entry!("reidemeister-two", "braiding", ["k", "l", "over-first"], "a crossing followed by its inverse"),
    entry!("braid-relation", "braiding", ["h", "k", "l", "over"], "the braid relation for thick strands"),
    entry!("crossing-past-merge", "braiding", ["h", "k", "l", "variant"], "a strand crosses a merge"),
    entry!("crossing-past-split", "braiding", ["h", "k", "l", "variant"], "a strand crosses a split"),
    entry!("dot-over-crossing", "braiding", ["k", "l", "mirror"], "a dot slides along the over strand"),
    entry!("thin-leftward-skein", "thin", [], "leftward over minus under is a cap-cup"),
    entry!("thin-rightward-skein", "thin", [], "rightward over minus under is a cap-cup"),
    entry!("thin-downward-skein", "thin", [], "downward skein relation"),
    entry!("thin-ccw-bubble", "thin", [], "counterclockwise thin circle vanishes"),
    entry!("thin-cap-crossing", "thin", [], "leftward cap after a rightward under-crossing is the rightward cap"),
    entry!("thin-cup-crossing", "thin", [], "rightward over-crossing after a leftward cup is the rightward cup"),
    entry!("thin-dotted-ccw-bubble", "thin", [], "dotted counterclockwise thin circle vanishes"),
    entry!("thin-dot-over-up", "thin", [], "dot passing an upward over-crossing"),
    entry!("thin-dot-under-up", "thin", [], "dot passing an upward under-crossing"),
    entry!("thin-dot-leftward-under", "thin", [], "down dot passing a leftward under-crossing"),
    entry!("thin-dot-leftward-over", "thin", [], "dot passing a leftward over-crossing"),
    entry!("thin-dot-rightward-over", "thin", [], "down dot passing a rightward over-crossing"),
    entry!("thin-dot-rightward-under", "thin", [], "dot passing a rightward under-crossing"),
    entry!("thin-dot-down-over", "thin", [], "down dot passing a downward over-crossing"),
    entry!("thin-dot-down-under", "thin", [], "down dot passing a downward under-crossing"),
    entry!("thin-dot-rcap", "thin", [], "a dot moves through a thin rightward cap"),
    entry!("thin-dot-rcup", "thin", [], "a dot moves through a thin rightward cup"),
    entry!("twist", "twist", ["k", "side", "over"], "a curl is q^{+-k(k-1)} times the identity"),
    entry!("dot-rcap", "twist", ["k"], "a dot moves through a rightward cap"),
    entry!("dot-rcup", "twist", ["k"], "a dot moves through a rightward cup"),
    entry!("pitchfork-cap", "twist", ["k", "h", "cap-right", "h-down", "over"], "a strand slides through a cap"),
    entry!("pitchfork-cup", "twist", ["k", "h", "cup-right", "h-down", "over"], "a strand slides through a cup"),
    entry!("zigzag", "bubble", ["k", "kind"], "the four straightening identities"),
    entry!("bubble", "bubble", ["k", "ccw", "dotted"], "a closed circle vanishes"),
    entry!("closed-digon", "bubble", ["k", "l"], "a closed digon vanishes"),
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

fn w(s: &str) -> Result<WebDiagram> {
    parse_web(s)
}

fn one() -> ScalarQ {
    ScalarQ::one()
}

fn q(e: i32) -> ScalarQ {
    ScalarQ::q_pow(e)
}

fn lin(terms: Vec<(ScalarQ, WebDiagram)>) -> Result<WebDiagram> {
    WebDiagram::linear(terms)
}

fn zero_like(d: &WebDiagram) -> WebDiagram {
    WebDiagram::scaled(ScalarQ::zero(), d.clone())
}

fn need(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invalid(format!("parameters out of range: {}", what)))
    }
}

fn ids(labels: &[u32]) -> String {
    let items: Vec<String> = labels.iter().filter(|&&k| k > 0).map(|k| format!("u{}", k)).collect();
    if items.is_empty() {
        String::new()
    } else {
        format!("id({})", items.join(" "))
    }
}

/// Joins atoms with `*`, dropping empty identities.
fn row(parts: &[String]) -> String {
    parts.iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join(" * ")
}

fn merge_d(k: u32, l: u32) -> WebDiagram {
    if k == 0 || l == 0 {
        WebDiagram::identity(&WebObject::ups(&[k + l]))
    } else {
        WebDiagram::generator(Generator::Merge(k, l))
    }
}

fn split_d(k: u32, l: u32) -> WebDiagram {
    if k == 0 || l == 0 {
        WebDiagram::identity(&WebObject::ups(&[k + l]))
    } else {
        WebDiagram::generator(Generator::Split(k, l))
    }
}

fn idd(labels: &[u32]) -> WebDiagram {
    WebDiagram::identity(&WebObject::ups(labels))
}

fn t(parts: &[WebDiagram]) -> WebDiagram {
    WebDiagram::tensor_all(parts)
}

fn chain(parts: &[WebDiagram]) -> Result<WebDiagram> {
    let mut it = parts.iter();
    let mut d = it.next().expect("nonempty").clone();
    for p in it {
        d = d.then(p)?;
    }
    Ok(d)
}

/// Rung moving `j` from the right strand to the left: `(k, l) -> (k+j, l-j)`,
/// optionally with a dot on the rung.
fn rung_left(k: u32, l: u32, j: u32, dotted: bool) -> Result<WebDiagram> {
    need(j <= l, "rung larger than its source strand")?;
    let mid = if dotted {
        t(&[idd(&[k]), WebDiagram::generator(Generator::Dot(j)), idd(&[l - j])])
    } else {
        idd(&[k, j, l - j])
    };
    chain(&[t(&[idd(&[k]), split_d(j, l - j)]), mid, t(&[merge_d(k, j), idd(&[l - j])])])
}

/// Rung moving `j` from the left strand to the right: `(k, l) -> (k-j, l+j)`.
fn rung_right(k: u32, l: u32, j: u32, dotted: bool) -> Result<WebDiagram> {
    need(j <= k, "rung larger than its source strand")?;
    let mid = if dotted {
        t(&[idd(&[k - j]), WebDiagram::generator(Generator::Dot(j)), idd(&[l])])
    } else {
        idd(&[k - j, j, l])
    };
    chain(&[t(&[split_d(k - j, j), idd(&[l])]), mid, t(&[idd(&[k - j]), merge_d(j, l)])])
}

fn thin_t(strands: usize, i: usize) -> String {
    let mut parts = vec![ids(&vec![1; i - 1])];
    parts.push("xo(u1,u1)".into());
    parts.push(ids(&vec![1; strands - i - 1]));
    row(&parts)
}

fn thin_c(strands: usize, i: usize) -> String {
    let mut parts = vec![ids(&vec![1; i - 1])];
    parts.push("dot(1)".into());
    parts.push(ids(&vec![1; strands - i]));
    row(&parts)
}

fn cross(a: Item, b: Item, over: bool) -> WebDiagram {
    if over {
        WebDiagram::generator(Generator::Over(a, b))
    } else {
        WebDiagram::generator(Generator::Under(a, b))
    }
}

fn idi(items: &[Item]) -> WebDiagram {
    WebDiagram::identity(&WebObject::new(items.to_vec()))
}

fn up(k: u32) -> Item {
    Item::up(k)
}

fn qt() -> ScalarQ {
    ScalarQ::qtilde()
}

/// Builds relation `id` with parameters.
pub fn build_relation(id: &str, p: &[u32]) -> Result<Relation> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Invalid(format!("unknown relation '{}'", id)))?;
    if p.len() != entry.params.len() {
        return Err(Error::Invalid(format!("{} expects {} parameters", id, entry.params.len())));
    }
    let (lhs, rhs) = sides(id, p)?;
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Err(Error::ObjectMismatch(format!("relation {} has sides of different types", id)));
    }
    Ok(Relation { id: id.to_string(), params: p.to_vec(), lhs, rhs })
}

fn sides(id: &str, p: &[u32]) -> Result<(WebDiagram, WebDiagram)> {
    let g = |i: usize| p[i];
    Ok(match id {
        "digon" => {
            let (k, l) = (g(0), g(1));
            need(k > 0 && l > 0, "k, l > 0")?;
            let lhs = w(&format!("split({k},{l}) ; merge({k},{l})"))?;
            (lhs, WebDiagram::scaled(qbinom(k + l, k), idd(&[k + l])))
        }
        "merge-assoc" => {
            let (h, k, l) = (g(0), g(1), g(2));
            need(h > 0 && k > 0 && l > 0, "positive labels")?;
            let lhs = w(&format!("merge({h},{k}) * id(u{l}) ; merge({},{l})", h + k))?;
            let rhs = w(&format!("id(u{h}) * merge({k},{l}) ; merge({h},{})", k + l))?;
            (lhs, rhs)
        }
        "split-assoc" => {
            let (h, k, l) = (g(0), g(1), g(2));
            need(h > 0 && k > 0 && l > 0, "positive labels")?;
            let lhs = w(&format!("split({},{l}) ; split({h},{k}) * id(u{l})", h + k))?;
            let rhs = w(&format!("split({h},{}) ; id(u{h}) * split({k},{l})", k + l))?;
            (lhs, rhs)
        }
        "dot-collision" => {
            let k = g(0);
            need(k > 0, "k > 0")?;
            (w(&format!("dot({k}) ; dot({k})"))?, WebDiagram::scaled(qint(k as i64, 2), idd(&[k])))
        }
        "two-dots-digon" => {
            (w("split(1,1) ; dot(1) * dot(1) ; merge(1,1)")?, WebDiagram::scaled(qt(), idd(&[2])))
        }
        "dot-on-thick" => {
            let (k, side) = (g(0), g(1));
            need(k >= 2 && side <= 1, "k >= 2, side in {0,1}")?;
            let lhs = if side == 0 {
                w(&format!("split(1,{m}) ; dot(1) * id(u{m}) ; merge(1,{m})", m = k - 1))?
            } else {
                w(&format!("split({m},1) ; id(u{m}) * dot(1) ; merge({m},1)", m = k - 1))?
            };
            (lhs, w(&format!("dot({k})"))?)
        }
        "dot-on-exploded" => {
            let (k, j) = (g(0), g(1));
            need(k >= 2 && j >= 1 && j <= k, "1 <= j <= k, k >= 2")?;
            let ones = vec![1u32; k as usize];
            let mid = w(&row(&[ids(&ones[..j as usize - 1]), "dot(1)".into(), ids(&ones[j as usize..])]))?;
            let lhs = chain(&[explode(k), mid, merge_all(k)])?;
            // the k-fold split and merge enclose [k-1]! copies of the 2-strand digon
            let scale = crate::scalars::qfact(k - 1);
            (lhs, WebDiagram::scaled(scale, w(&format!("dot({k})"))?))
        }
        "rung-collision" => {
            let (k, l, r, s) = (g(0), g(1), g(2), g(3));
            need(r > 0 && s > 0 && r + s <= l, "r, s > 0, r + s <= l")?;
            let lhs = rung_left(k, l, r, false)?.then(&rung_left(k + r, l - r, s, false)?)?;
            (lhs, WebDiagram::scaled(qbinom(r + s, s), rung_left(k, l, r + s, false)?))
        }
        "square-switch" => {
            let (k, l, r) = (g(0), g(1), g(2));
            need(r >= 1 && r <= k && l >= 1, "1 <= r <= k, l >= 1")?;
            let a = rung_right(k, l, r, false)?.then(&rung_left(k - r, l + r, 1, false)?)?;
            let b = rung_left(k, l, 1, false)?.then(&rung_right(k + 1, l - 1, r, false)?)?;
            let lhs = lin(vec![(one(), a), (-one(), b)])?;
            let c = qint(k as i64 - l as i64 + 1 - r as i64, 1);
            (lhs, WebDiagram::scaled(c, rung_right(k, l, r - 1, false)?))
        }
        "square-switch-dots" => {
            let (k, l) = (g(0), g(1));
            need(k >= 1 && l >= 1, "k, l >= 1")?;
            let a = rung_right(k, l, 1, true)?.then(&rung_left(k - 1, l + 1, 1, true)?)?;
            let b = rung_left(k, l, 1, true)?.then(&rung_right(k + 1, l - 1, 1, true)?)?;
            let lhs = lin(vec![(one(), a), (one(), b)])?;
            let dd = w(&format!("dot({k}) * dot({l})"))?;
            let rhs = lin(vec![(qint((k + l) as i64, 1), idd(&[k, l])), (qt(), dd)])?;
            (lhs, rhs)
        }
        "serre" | "serre-dotted" => {
            let (h, k, l) = (g(0), g(1), g(2));
            need(k >= 1 && l >= 1, "k, l >= 1")?;
            let dotted = id == "serre-dotted";
            need(k >= 2, "k >= 2")?;
            // a rung between the first two strands, the third strand idle
            let hk = |h: u32, k: u32, l: u32, j: u32| -> Result<WebDiagram> { Ok(t(&[rung_left(h, k, j, false)?, idd(&[l])])) };
            let kl = |h: u32, k: u32, l: u32| -> Result<WebDiagram> { Ok(t(&[idd(&[h]), rung_left(k, l, 1, dotted)?])) };
            let d1 = chain(&[kl(h, k, l)?, hk(h, k + 1, l - 1, 2)?])?;
            let d2 = chain(&[hk(h, k, l, 1)?, kl(h + 1, k - 1, l)?, hk(h + 1, k, l - 1, 1)?])?;
            let d3 = chain(&[hk(h, k, l, 2)?, kl(h + 2, k - 2, l)?])?;
            let lhs = lin(vec![(one(), d1), (-one(), d2), (one(), d3)])?;
            let z = zero_like(&lhs);
            (lhs, z)
        }
        "clifford-square" => {
            let (n, i) = (g(0) as usize, g(1) as usize);
            need(i >= 1 && i <= n, "1 <= i <= strands")?;
            let ci = thin_c(n, i);
            (w(&format!("{ci} ; {ci}"))?, w(&ids(&vec![1; n]))?)
        }
        "hecke-quadratic" | "hecke-braid" | "hc-swap" | "hc-mixed" => {
            let (n, i) = (g(0) as usize, g(1) as usize);
            need(i >= 1 && i < n, "1 <= i < strands")?;
            let ti = thin_t(n, i);
            let ci = thin_c(n, i);
            let idn = ids(&vec![1; n]);
            match id {
                "hecke-quadratic" => {
                    let lhs = w(&format!("{ti} ; {ti}"))?;
                    (lhs, lin(vec![(qt(), w(&ti)?), (one(), w(&idn)?)])?)
                }
                "hecke-braid" => {
                    need(i + 1 < n, "i + 1 < strands")?;
                    let tj = thin_t(n, i + 1);
                    (w(&format!("{ti} ; {tj} ; {ti}"))?, w(&format!("{tj} ; {ti} ; {tj}"))?)
                }
                "hc-swap" => {
                    let cj = thin_c(n, i + 1);
                    (w(&format!("{ci} ; {ti}"))?, w(&format!("{ti} ; {cj}"))?)
                }
                _ => {
                    let cj = thin_c(n, i + 1);
                    let lhs = w(&format!("{ti} ; {ci}"))?;
                    let rhs = lin(vec![
                        (one(), w(&format!("{cj} ; {ti}"))?),
                        (qt(), w(&ci)?),
                        (-qt(), w(&cj)?),
                    ])?;
                    (lhs, rhs)
                }
            }
        }
        "hecke-far" | "clifford-anticommute" | "hc-far" => {
            let (n, i, j) = (g(0) as usize, g(1) as usize, g(2) as usize);
            match id {
                "hecke-far" => {
                    need(i >= 1 && j >= 1 && i < n && j < n && i.abs_diff(j) > 1, "far indices")?;
                    let (a, b) = (thin_t(n, i), thin_t(n, j));
                    (w(&format!("{b} ; {a}"))?, w(&format!("{a} ; {b}"))?)
                }
                "clifford-anticommute" => {
                    need(i >= 1 && j >= 1 && i <= n && j <= n && i != j, "distinct indices")?;
                    let (a, b) = (thin_c(n, i), thin_c(n, j));
                    let lhs = w(&format!("{b} ; {a}"))?;
                    (lhs, WebDiagram::scaled(-one(), w(&format!("{a} ; {b}"))?))
                }
                _ => {
                    need(i >= 1 && i < n && j >= 1 && j <= n && i.abs_diff(j) > 1, "far indices")?;
                    let (a, b) = (thin_t(n, i), thin_c(n, j));
                    (w(&format!("{b} ; {a}"))?, w(&format!("{a} ; {b}"))?)
                }
            }
        }
        "untwist" => {
            let (k, idx, over, merge) = (g(0) as usize, g(1) as usize, g(2) == 1, g(3) == 1);
            let perms = permutations(k);
            need(k >= 2 && idx < perms.len(), "perm index below k!")?;
            let word = reduced_word(&perms[idx]);
            let tw = if over { t_word(k, &word) } else { under_word(k, &word) };
            let c = q(if over { word.len() as i32 } else { -(word.len() as i32) });
            if merge {
                let m = merge_all(k as u32);
                (tw.then(&m)?, WebDiagram::scaled(c, m))
            } else {
                let e = explode(k as u32);
                (e.then(&tw)?, WebDiagram::scaled(c, e))
            }
        }
        "reidemeister-two" => {
            let (k, l, of) = (g(0), g(1), g(2) == 1);
            need(k > 0 && l > 0, "positive labels")?;
            let lhs = cross(up(k), up(l), of).then(&cross(up(l), up(k), !of))?;
            (lhs, idd(&[k, l]))
        }
        "braid-relation" => {
            let (h, k, l, over) = (g(0), g(1), g(2), g(3) == 1);
            need(h > 0 && k > 0 && l > 0, "positive labels")?;
            let x = |a: u32, b: u32| cross(up(a), up(b), over);
            let lhs = chain(&[t(&[x(h, k), idd(&[l])]), t(&[idd(&[k]), x(h, l)]), t(&[x(k, l), idd(&[h])])])?;
            let rhs = chain(&[t(&[idd(&[h]), x(k, l)]), t(&[x(h, l), idd(&[k])]), t(&[idd(&[l]), x(h, k)])])?;
            (lhs, rhs)
        }
        "crossing-past-merge" | "crossing-past-split" => {
            let (h, k, l, v) = (g(0), g(1), g(2), g(3));
            need(h > 0 && k > 0 && l > 0 && v < 4, "positive labels, variant < 4")?;
            let over = v & 1 == 0;
            let mirrored = v & 2 != 0;
            let x = |a: u32, b: u32| cross(up(a), up(b), over);
            let m = WebDiagram::generator(Generator::Merge(h, k));
            let s = WebDiagram::generator(Generator::Split(h, k));
            match (id == "crossing-past-merge", mirrored) {
                (true, false) => (
                    chain(&[t(&[m.clone(), idd(&[l])]), x(h + k, l)])?,
                    chain(&[t(&[idd(&[h]), x(k, l)]), t(&[x(h, l), idd(&[k])]), t(&[idd(&[l]), m])])?,
                ),
                (true, true) => (
                    chain(&[t(&[idd(&[l]), m.clone()]), x(l, h + k)])?,
                    chain(&[t(&[x(l, h), idd(&[k])]), t(&[idd(&[h]), x(l, k)]), t(&[m, idd(&[l])])])?,
                ),
                (false, false) => (
                    chain(&[x(h + k, l), t(&[idd(&[l]), s.clone()])])?,
                    chain(&[t(&[s, idd(&[l])]), t(&[idd(&[h]), x(k, l)]), t(&[x(h, l), idd(&[k])])])?,
                ),
                (false, true) => (
                    chain(&[x(l, h + k), t(&[s.clone(), idd(&[l])])])?,
                    chain(&[t(&[idd(&[l]), s]), t(&[x(l, h), idd(&[k])]), t(&[idd(&[h]), x(l, k)])])?,
                ),
            }
        }
        "dot-over-crossing" => {
            let (k, l, mirror) = (g(0), g(1), g(2) == 1);
            need(k > 0 && l > 0, "positive labels")?;
            if !mirror {
                (
                    w(&format!("dot({k}) * id(u{l}) ; xo(u{k},u{l})"))?,
                    w(&format!("xo(u{k},u{l}) ; id(u{l}) * dot({k})"))?,
                )
            } else {
                (
                    w(&format!("id(u{l}) * dot({k}) ; xu(u{l},u{k})"))?,
                    w(&format!("xu(u{l},u{k}) ; dot({k}) * id(u{l})"))?,
                )
            }
        }
        "thin-leftward-skein" => (
            w("xo(d1,u1)")?,
            lin(vec![(one(), w("xu(d1,u1)")?), (-qt(), w("lcap(1) ; lcup(1)")?)])?,
        ),
        "thin-rightward-skein" => (
            w("xo(u1,d1)")?,
            lin(vec![(one(), w("xu(u1,d1)")?), (-qt(), w("rcap(1) ; rcup(1)")?)])?,
        ),
        "thin-downward-skein" => (
            w("xu(d1,d1)")?,
            lin(vec![(one(), w("xo(d1,d1)")?), (-qt(), w("id(d1 d1)")?)])?,
        ),
        "thin-ccw-bubble" => {
            let d = w("rcup(1) ; lcap(1)")?;
            let z = zero_like(&d);
            (d, z)
        }
        "thin-cap-crossing" => (w("xu(u1,d1) ; lcap(1)")?, w("rcap(1)")?),
        "thin-cup-crossing" => (w("lcup(1) ; xo(u1,d1)")?, w("rcup(1)")?),
        "thin-dotted-ccw-bubble" => {
            let d = w("rcup(1) ; id(d1) * dot(1) ; lcap(1)")?;
            let z = zero_like(&d);
            (d, z)
        }
        "thin-dot-over-up" => (
            w("xo(u1,u1) ; dot(1) * id(u1)")?,
            lin(vec![
                (one(), w("id(u1) * dot(1) ; xo(u1,u1)")?),
                (qt(), w("dot(1) * id(u1)")?),
                (-qt(), w("id(u1) * dot(1)")?),
            ])?,
        ),
        "thin-dot-under-up" => (
            w("xu(u1,u1) ; id(u1) * dot(1)")?,
            lin(vec![
                (one(), w("dot(1) * id(u1) ; xu(u1,u1)")?),
                (qt(), w("dot(1) * id(u1)")?),
                (-qt(), w("id(u1) * dot(1)")?),
            ])?,
        ),
        "thin-dot-leftward-under" | "thin-dot-leftward-over" => {
            let corr = vec![
                (qt(), w("ddot(1) * id(u1) ; lcap(1) ; lcup(1)")?),
                (-qt(), w("lcap(1) ; lcup(1) ; id(u1) * ddot(1)")?),
            ];
            let (lhs, main) = if id == "thin-dot-leftward-under" {
                (w("ddot(1) * id(u1) ; xu(d1,u1)")?, w("xu(d1,u1) ; id(u1) * ddot(1)")?)
            } else {
                (w("xo(d1,u1) ; dot(1) * id(d1)")?, w("id(d1) * dot(1) ; xo(d1,u1)")?)
            };
            let mut terms = vec![(one(), main)];
            terms.extend(corr);
            (lhs, lin(terms)?)
        }
        "thin-dot-rightward-over" | "thin-dot-rightward-under" => {
            let corr = vec![
                (qt(), w("dot(1) * id(d1) ; rcap(1) ; rcup(1)")?),
                (-qt(), w("rcap(1) ; rcup(1) ; id(d1) * dot(1)")?),
            ];
            let (lhs, main) = if id == "thin-dot-rightward-over" {
                (w("xo(u1,d1) ; ddot(1) * id(u1)")?, w("id(u1) * ddot(1) ; xo(u1,d1)")?)
            } else {
                (w("dot(1) * id(d1) ; xu(u1,d1)")?, w("xu(u1,d1) ; id(d1) * dot(1)")?)
            };
            let mut terms = vec![(one(), main)];
            terms.extend(corr);
            (lhs, lin(terms)?)
        }
        "thin-dot-down-over" => (
            w("xo(d1,d1) ; ddot(1) * id(d1)")?,
            lin(vec![
                (one(), w("id(d1) * ddot(1) ; xo(d1,d1)")?),
                (qt(), w("ddot(1) * id(d1)")?),
                (-qt(), w("id(d1) * ddot(1)")?),
            ])?,
        ),
        "thin-dot-down-under" => (
            w("xu(d1,d1) ; id(d1) * ddot(1)")?,
            lin(vec![
                (one(), w("ddot(1) * id(d1) ; xu(d1,d1)")?),
                (qt(), w("ddot(1) * id(d1)")?),
                (-qt(), w("id(d1) * ddot(1)")?),
            ])?,
        ),
        "thin-dot-rcap" => (w("dot(1) * id(d1) ; rcap(1)")?, w("id(u1) * ddot(1) ; rcap(1)")?),
        "thin-dot-rcup" => (w("rcup(1) ; ddot(1) * id(u1)")?, w("rcup(1) ; id(d1) * dot(1)")?),
        "twist" => {
            let (k, side, over) = (g(0), g(1), g(2) == 1);
            need(k > 0 && side <= 1, "k > 0, side in {0,1}")?;
            let x = if over { format!("xo(u{k},u{k})") } else { format!("xu(u{k},u{k})") };
            let lhs = if side == 0 {
                w(&format!("rcup({k}) * id(u{k}) ; id(d{k}) * {x} ; lcap({k}) * id(u{k})"))?
            } else {
                w(&format!("id(u{k}) * lcup({k}) ; {x} * id(d{k}) ; id(u{k}) * rcap({k})"))?
            };
            let e = (k * (k - 1)) as i32;
            (lhs, WebDiagram::scaled(q(if over { e } else { -e }), idd(&[k])))
        }
        "dot-rcap" => {
            let k = g(0);
            need(k > 0, "k > 0")?;
            (w(&format!("dot({k}) * id(d{k}) ; rcap({k})"))?, w(&format!("id(u{k}) * ddot({k}) ; rcap({k})"))?)
        }
        "dot-rcup" => {
            let k = g(0);
            need(k > 0, "k > 0")?;
            (w(&format!("rcup({k}) ; ddot({k}) * id(u{k})"))?, w(&format!("rcup({k}) ; id(d{k}) * dot({k})"))?)
        }
        "pitchfork-cap" | "pitchfork-cup" => {
            let (k, h, right, hdown, over) = (g(0), g(1), g(2) == 1, g(3) == 1, g(4) == 1);
            need(k > 0 && h > 0, "positive labels")?;
            let hi = if hdown { Item::down(h) } else { Item::up(h) };
            if id == "pitchfork-cap" {
                // legs of the cap, left then right; the h strand passes on the `over` side
                let (l0, l1, cap) = if right {
                    (Item::up(k), Item::down(k), Generator::RCap(k))
                } else {
                    (Item::down(k), Item::up(k), Generator::LCap(k))
                };
                let cap = WebDiagram::generator(cap);
                let lhs = chain(&[t(&[cross(l0, hi, !over), idi(&[l1])]), t(&[idi(&[hi]), cap.clone()])])?;
                let rhs = chain(&[t(&[idi(&[l0]), cross(hi, l1, over)]), t(&[cap, idi(&[hi])])])?;
                (lhs, rhs)
            } else {
                let (l0, l1, cup) = if right {
                    (Item::down(k), Item::up(k), Generator::RCup(k))
                } else {
                    (Item::up(k), Item::down(k), Generator::LCup(k))
                };
                let cup = WebDiagram::generator(cup);
                let lhs = chain(&[t(&[idi(&[hi]), cup.clone()]), t(&[cross(hi, l0, over), idi(&[l1])])])?;
                let rhs = chain(&[t(&[cup, idi(&[hi])]), t(&[idi(&[l0]), cross(l1, hi, !over)])])?;
                (lhs, rhs)
            }
        }
        "zigzag" => {
            let (k, kind) = (g(0), g(1));
            need(k > 0 && kind < 4, "k > 0, kind < 4")?;
            let (lhs, obj) = match kind {
                0 => (format!("lcup({k}) * id(u{k}) ; id(u{k}) * lcap({k})"), format!("u{k}")),
                1 => (format!("id(d{k}) * lcup({k}) ; lcap({k}) * id(d{k})"), format!("d{k}")),
                2 => (format!("rcup({k}) * id(d{k}) ; id(d{k}) * rcap({k})"), format!("d{k}")),
                _ => (format!("id(u{k}) * rcup({k}) ; rcap({k}) * id(u{k})"), format!("u{k}")),
            };
            (w(&lhs)?, w(&format!("id({obj})"))?)
        }
        "bubble" => {
            let (k, ccw, dotted) = (g(0), g(1) == 1, g(2) == 1);
            need(k > 0, "k > 0")?;
            let s = match (ccw, dotted) {
                (false, false) => format!("lcup({k}) ; rcap({k})"),
                (false, true) => format!("lcup({k}) ; dot({k}) * id(d{k}) ; rcap({k})"),
                (true, false) => format!("rcup({k}) ; lcap({k})"),
                (true, true) => format!("rcup({k}) ; id(d{k}) * dot({k}) ; lcap({k})"),
            };
            let d = w(&s)?;
            let z = zero_like(&d);
            (d, z)
        }
        "closed-digon" => {
            let (k, l) = (g(0), g(1));
            need(k > 0 && l > 0, "positive labels")?;
            let m = k + l;
            let d = w(&format!("lcup({m}) ; split({k},{l}) * id(d{m}) ; merge({k},{l}) * id(d{m}) ; rcap({m})"))?;
            let z = zero_like(&d);
            (d, z)
        }
        _ => return Err(Error::Invalid(format!("unknown relation '{}'", id))),
    })
}

fn under_word(k: usize, word: &[usize]) -> WebDiagram {
    let o = vec![Item::up(1); k];
    let mut d = WebDiagram::identity(&WebObject::new(o.clone()));
    for &i in word.iter().rev() {
        let g = WebDiagram::tensor_all(&[
            idi(&o[..i - 1]),
            WebDiagram::generator(Generator::Under(Item::up(1), Item::up(1))),
            idi(&o[i + 1..]),
        ]);
        d = d.then(&g).unwrap();
    }
    d
}

/// Parameter instances of a named suite: `upward`, `ladder`, `hecke`,
/// `untwist`, `braiding`, `thin`, `twist`, `bubble`, or `all`.
pub fn suite(name: &str) -> Result<Vec<(&'static str, Vec<u32>)>> {
    let mut out: Vec<(&'static str, Vec<u32>)> = Vec::new();
    let all = name == "all";
    let fam = |f: &str| all || name == f;
    if !all && !ENTRIES.iter().any(|e| e.family == name) {
        return Err(Error::Invalid(format!("unknown suite '{}'", name)));
    }
    if fam("upward") {
        for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            out.push(("digon", vec![k, l]));
        }
        for hkl in [[1, 1, 1], [1, 2, 1], [2, 1, 1]] {
            out.push(("merge-assoc", hkl.to_vec()));
            out.push(("split-assoc", hkl.to_vec()));
        }
        for k in 1..=3 {
            out.push(("dot-collision", vec![k]));
        }
        out.push(("two-dots-digon", vec![]));
        for k in 2..=3 {
            out.push(("dot-on-thick", vec![k, 0]));
            out.push(("dot-on-thick", vec![k, 1]));
        }
        for j in 1..=3 {
            out.push(("dot-on-exploded", vec![3, j]));
        }
    }
    if fam("ladder") {
        out.push(("rung-collision", vec![1, 2, 1, 1]));
        out.push(("rung-collision", vec![0, 3, 1, 2]));
        for (k, l, r) in [(1, 1, 1), (2, 1, 1), (2, 1, 2), (1, 2, 1)] {
            out.push(("square-switch", vec![k, l, r]));
        }
        for (k, l) in [(1, 1), (2, 1), (1, 2)] {
            out.push(("square-switch-dots", vec![k, l]));
        }
        out.push(("serre", vec![0, 2, 1]));
        out.push(("serre", vec![1, 2, 1]));
        out.push(("serre-dotted", vec![0, 2, 1]));
    }
    if fam("hecke") {
        for i in 1..=2 {
            out.push(("hecke-quadratic", vec![3, i]));
            out.push(("hc-swap", vec![3, i]));
            out.push(("hc-mixed", vec![3, i]));
        }
        out.push(("hecke-braid", vec![3, 1]));
        for i in 1..=3 {
            out.push(("clifford-square", vec![3, i]));
            for j in 1..=3 {
                if i != j {
                    out.push(("clifford-anticommute", vec![3, i, j]));
                }
            }
        }
        out.push(("hc-far", vec![3, 1, 3]));
        out.push(("hecke-far", vec![4, 1, 3]));
        out.push(("hc-far", vec![4, 1, 3]));
        out.push(("hc-far", vec![4, 1, 4]));
        out.push(("hc-far", vec![4, 3, 1]));
    }
    if fam("untwist") {
        for k in 2..=3u32 {
            let count = (1..=k).product::<u32>();
            for idx in 0..count {
                for over in 0..2 {
                    for merge in 0..2 {
                        out.push(("untwist", vec![k, idx, over, merge]));
                    }
                }
            }
        }
    }
    if fam("braiding") {
        for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            out.push(("reidemeister-two", vec![k, l, 0]));
            out.push(("reidemeister-two", vec![k, l, 1]));
            out.push(("dot-over-crossing", vec![k, l, 0]));
            out.push(("dot-over-crossing", vec![k, l, 1]));
        }
        for hkl in [[1, 1, 1], [2, 1, 1], [1, 1, 2]] {
            out.push(("braid-relation", [hkl.to_vec(), vec![0]].concat()));
            out.push(("braid-relation", [hkl.to_vec(), vec![1]].concat()));
        }
        for v in 0..4 {
            out.push(("crossing-past-merge", vec![1, 1, 1, v]));
            out.push(("crossing-past-split", vec![1, 1, 1, v]));
            out.push(("crossing-past-merge", vec![1, 1, 2, v]));
            out.push(("crossing-past-split", vec![1, 1, 2, v]));
        }
    }
    if fam("thin") {
        for e in ENTRIES.iter().filter(|e| e.family == "thin") {
            out.push((e.id, vec![]));
        }
    }
    if fam("twist") {
        for k in 1..=2 {
            for side in 0..2 {
                for over in 0..2 {
                    out.push(("twist", vec![k, side, over]));
                }
            }
            out.push(("dot-rcap", vec![k]));
            out.push(("dot-rcup", vec![k]));
        }
        for (k, h) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for right in 0..2 {
                for hdown in 0..2 {
                    for over in 0..2 {
                        out.push(("pitchfork-cap", vec![k, h, right, hdown, over]));
                        out.push(("pitchfork-cup", vec![k, h, right, hdown, over]));
                    }
                }
            }
        }
    }
    if fam("bubble") {
        for k in 1..=2 {
            for kind in 0..4 {
                out.push(("zigzag", vec![k, kind]));
            }
            for ccw in 0..2 {
                for dotted in 0..2 {
                    out.push(("bubble", vec![k, ccw, dotted]));
                }
            }
        }
        out.push(("closed-digon", vec![1, 1]));
    }
    Ok(out)
}
