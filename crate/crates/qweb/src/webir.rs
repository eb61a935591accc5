//! Web diagrams: objects, the generator vocabulary, slice diagrams, the
//! text syntax, and macro expansion into the primitive generators.
//!
//! Diagrams are read bottom to top. In the text syntax `a ; b` applies `a`
//! first and `a * b` places `a` to the left of `b`.
//!
//! Crossings `xo(a, b)` and `xu(a, b)` have source `a b` and target `b a`.
//! In `xo` the strand entering at the bottom left passes over, in `xu` it
//! passes under. With this handedness `xo(u1,u1)` satisfies
//! `T^2 = (q - q^-1) T + 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{qfact, ScalarQ};
use crate::superlinear::Parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    Up,
    Down,
}

/// One boundary point: an orientation and a thickness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Item {
    pub orient: Orient,
    pub label: u32,
}

impl Item {
    pub fn up(label: u32) -> Item {
        Item { orient: Orient::Up, label }
    }

    pub fn down(label: u32) -> Item {
        Item { orient: Orient::Down, label }
    }

    pub fn is_up(&self) -> bool {
        self.orient == Orient::Up
    }

    pub fn dual(&self) -> Item {
        let orient = match self.orient {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        };
        Item { orient, label: self.label }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_up() { 'u' } else { 'd' };
        write!(f, "{}{}", c, self.label)
    }
}

/// A word in the generating objects. Zero labels are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WebObject {
    items: Vec<Item>,
}

impl WebObject {
    pub fn new(items: Vec<Item>) -> WebObject {
        WebObject { items: items.into_iter().filter(|i| i.label > 0).collect() }
    }

    pub fn unit() -> WebObject {
        WebObject::default()
    }

    pub fn ups(labels: &[u32]) -> WebObject {
        WebObject::new(labels.iter().map(|&k| Item::up(k)).collect())
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.items.is_empty()
    }

    pub fn concat(&self, o: &WebObject) -> WebObject {
        let mut items = self.items.clone();
        items.extend_from_slice(&o.items);
        WebObject { items }
    }

    /// The dual word: reversed with orientations flipped.
    pub fn dual(&self) -> WebObject {
        WebObject { items: self.items.iter().rev().map(Item::dual).collect() }
    }

    pub fn slice(&self, start: usize, end: usize) -> WebObject {
        WebObject { items: self.items[start..end].to_vec() }
    }
}

impl From<Item> for WebObject {
    fn from(i: Item) -> WebObject {
        WebObject::new(vec![i])
    }
}

impl fmt::Display for WebObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.items.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Generating morphisms. Labels of non-identity generators are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Odd endomorphism of `u k`.
    Dot(u32),
    /// Odd endomorphism of `d k`.
    DDot(u32),
    /// `u k u l -> u (k+l)`.
    Merge(u32, u32),
    /// `u (k+l) -> u k u l`.
    Split(u32, u32),
    /// `d (k+l) -> d k d l`.
    DMerge(u32, u32),
    /// `d k d l -> d (k+l)`.
    DSplit(u32, u32),
    /// `1 -> u k d k`.
    LCup(u32),
    /// `d k u k -> 1`.
    LCap(u32),
    /// `1 -> d k u k`.
    RCup(u32),
    /// `u k d k -> 1`.
    RCap(u32),
    Over(Item, Item),
    Under(Item, Item),
    /// Endomorphism of `u1^k`.
    Clasp(u32),
    Id(WebObject),
}

impl Generator {
    pub fn source(&self) -> WebObject {
        use Generator::*;
        match self {
            Dot(k) => WebObject::ups(&[*k]),
            DDot(k) => Item::down(*k).into(),
            Merge(k, l) => WebObject::ups(&[*k, *l]),
            Split(k, l) => WebObject::ups(&[k + l]),
            DMerge(k, l) => Item::down(k + l).into(),
            DSplit(k, l) => WebObject::new(vec![Item::down(*k), Item::down(*l)]),
            LCup(_) | RCup(_) => WebObject::unit(),
            LCap(k) => WebObject::new(vec![Item::down(*k), Item::up(*k)]),
            RCap(k) => WebObject::new(vec![Item::up(*k), Item::down(*k)]),
            Over(a, b) | Under(a, b) => WebObject::new(vec![*a, *b]),
            Clasp(k) => WebObject::ups(&vec![1; *k as usize]),
            Id(o) => o.clone(),
        }
    }

    pub fn target(&self) -> WebObject {
        use Generator::*;
        match self {
            Dot(k) => WebObject::ups(&[*k]),
            DDot(k) => Item::down(*k).into(),
            Merge(k, l) => WebObject::ups(&[k + l]),
            Split(k, l) => WebObject::ups(&[*k, *l]),
            DMerge(k, l) => WebObject::new(vec![Item::down(*k), Item::down(*l)]),
            DSplit(k, l) => Item::down(k + l).into(),
            LCup(k) => WebObject::new(vec![Item::up(*k), Item::down(*k)]),
            RCup(k) => WebObject::new(vec![Item::down(*k), Item::up(*k)]),
            LCap(_) | RCap(_) => WebObject::unit(),
            Over(a, b) | Under(a, b) => WebObject::new(vec![*b, *a]),
            Clasp(k) => WebObject::ups(&vec![1; *k as usize]),
            Id(o) => o.clone(),
        }
    }

    pub fn parity(&self) -> Parity {
        matches!(self, Generator::Dot(_) | Generator::DDot(_)) as Parity
    }

    /// Generators the evaluator realizes directly.
    pub fn is_primitive(&self) -> bool {
        use Generator::*;
        match self {
            Dot(_) | Merge(..) | Split(..) | LCup(_) | LCap(_) | Id(_) => true,
            Over(a, b) | Under(a, b) => a.is_up() && !b.is_up() && a.label == 1 && b.label == 1,
            _ => false,
        }
    }

    /// Every generator kind except clasps and identities, with all labels in
    /// `1..=max_label`.
    pub fn enumerate(max_label: u32) -> Vec<Generator> {
        use Generator::*;
        let ks: Vec<u32> = (1..=max_label).collect();
        let items: Vec<Item> = ks.iter().flat_map(|&k| [Item::up(k), Item::down(k)]).collect();
        let mut out = Vec::new();
        for &k in &ks {
            out.extend([Dot(k), DDot(k), LCup(k), LCap(k), RCup(k), RCap(k)]);
            for &l in &ks {
                out.extend([Merge(k, l), Split(k, l), DMerge(k, l), DSplit(k, l)]);
            }
        }
        for &a in &items {
            for &b in &items {
                out.extend([Over(a, b), Under(a, b)]);
            }
        }
        out
    }

    fn labels(&self) -> Vec<u32> {
        use Generator::*;
        match self {
            Dot(k) | DDot(k) | LCup(k) | LCap(k) | RCup(k) | RCap(k) | Clasp(k) => vec![*k],
            Merge(k, l) | Split(k, l) | DMerge(k, l) | DSplit(k, l) => vec![*k, *l],
            Over(a, b) | Under(a, b) => vec![a.label, b.label],
            Id(_) => vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.labels().contains(&0) {
            return Err(Error::Invalid(format!("zero label in {}", self)));
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Generator::*;
        match self {
            Dot(k) => write!(f, "dot({})", k),
            DDot(k) => write!(f, "ddot({})", k),
            Merge(k, l) => write!(f, "merge({},{})", k, l),
            Split(k, l) => write!(f, "split({},{})", k, l),
            DMerge(k, l) => write!(f, "dmerge({},{})", k, l),
            DSplit(k, l) => write!(f, "dsplit({},{})", k, l),
            LCup(k) => write!(f, "lcup({})", k),
            LCap(k) => write!(f, "lcap({})", k),
            RCup(k) => write!(f, "rcup({})", k),
            RCap(k) => write!(f, "rcap({})", k),
            Over(a, b) => write!(f, "xo({},{})", a, b),
            Under(a, b) => write!(f, "xu({},{})", a, b),
            Clasp(k) => write!(f, "clasp({})", k),
            Id(o) => write!(f, "id({})", o),
        }
    }
}

/// One tensor factor of a slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Gen(Generator),
    /// A linear combination of diagrams sharing source and target.
    Lin(Vec<(ScalarQ, WebDiagram)>),
}

impl Block {
    pub fn source(&self) -> WebObject {
        match self {
            Block::Gen(g) => g.source(),
            Block::Lin(t) => t[0].1.source.clone(),
        }
    }

    pub fn target(&self) -> WebObject {
        match self {
            Block::Gen(g) => g.target(),
            Block::Lin(t) => t[0].1.target.clone(),
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            Block::Gen(g) => g.parity(),
            Block::Lin(t) => t[0].1.parity(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Gen(g) => write!(f, "{}", g),
            Block::Lin(t) if t.len() == 1 && t[0].0.is_one() => write!(f, "({})", t[0].1),
            Block::Lin(t) => {
                let parts: Vec<String> = t.iter().map(|(c, d)| format!("[{}]({})", c, d)).collect();
                write!(f, "({})", parts.join(" + "))
            }
        }
    }
}

pub type Slice = Vec<Block>;

fn slice_source(s: &[Block]) -> WebObject {
    s.iter().fold(WebObject::unit(), |acc, b| acc.concat(&b.source()))
}

fn slice_target(s: &[Block]) -> WebObject {
    s.iter().fold(WebObject::unit(), |acc, b| acc.concat(&b.target()))
}

/// A diagram as horizontal slices, bottom slice first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WebDiagram {
    source: WebObject,
    target: WebObject,
    slices: Vec<Slice>,
}

impl WebDiagram {
    pub fn identity(o: &WebObject) -> WebDiagram {
        WebDiagram { source: o.clone(), target: o.clone(), slices: Vec::new() }
    }

    pub fn generator(g: Generator) -> WebDiagram {
        WebDiagram { source: g.source(), target: g.target(), slices: vec![vec![Block::Gen(g)]] }
    }

    /// A single slice; boundaries are read off the blocks.
    pub fn from_slice(blocks: Slice) -> WebDiagram {
        let source = slice_source(&blocks);
        let target = slice_target(&blocks);
        let slices = if blocks.is_empty() { vec![] } else { vec![blocks] };
        WebDiagram { source, target, slices }
    }

    /// Checked construction from slices.
    pub fn from_slices(source: WebObject, slices: Vec<Slice>) -> Result<WebDiagram> {
        let mut cur = source.clone();
        for (i, s) in slices.iter().enumerate() {
            let src = slice_source(s);
            if src != cur {
                return Err(Error::ObjectMismatch(format!("slice {} expects {} but receives {}", i, src, cur)));
            }
            cur = slice_target(s);
        }
        let slices = slices.into_iter().filter(|s| !s.is_empty()).collect();
        Ok(WebDiagram { source, target: cur, slices })
    }

    /// `sum c_i d_i` as one block. All terms must share boundaries.
    pub fn linear(terms: Vec<(ScalarQ, WebDiagram)>) -> Result<WebDiagram> {
        let first = terms.first().ok_or_else(|| Error::Invalid("empty linear combination".into()))?;
        let (s, t, p) = (first.1.source.clone(), first.1.target.clone(), first.1.parity());
        for (_, d) in &terms {
            if d.source != s || d.target != t {
                return Err(Error::ObjectMismatch(format!("{} -> {} against {} -> {}", d.source, d.target, s, t)));
            }
            if d.parity() != p {
                return Err(Error::Invalid("linear combination is not parity homogeneous".into()));
            }
        }
        Ok(WebDiagram { source: s, target: t, slices: vec![vec![Block::Lin(terms)]] })
    }

    pub fn scaled(c: ScalarQ, d: WebDiagram) -> WebDiagram {
        WebDiagram::linear(vec![(c, d)]).expect("single term")
    }

    pub fn source(&self) -> &WebObject {
        &self.source
    }

    pub fn target(&self) -> &WebObject {
        &self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn parity(&self) -> Parity {
        self.slices.iter().flatten().fold(0, |p, b| p ^ b.parity())
    }

    /// `top` after `bottom`.
    pub fn compose(top: &WebDiagram, bottom: &WebDiagram) -> Result<WebDiagram> {
        if top.source != bottom.target {
            return Err(Error::ObjectMismatch(format!("{} against {}", top.source, bottom.target)));
        }
        let mut slices = bottom.slices.clone();
        slices.extend(top.slices.iter().cloned());
        Ok(WebDiagram { source: bottom.source.clone(), target: top.target.clone(), slices })
    }

    /// `next` after `self`.
    pub fn then(&self, next: &WebDiagram) -> Result<WebDiagram> {
        WebDiagram::compose(next, self)
    }

    /// Horizontal juxtaposition. Diagrams with several slices are laid out
    /// as `(left (x) id) o (id (x) right)`, which carries no interchange sign.
    pub fn tensor(left: &WebDiagram, right: &WebDiagram) -> WebDiagram {
        let source = left.source.concat(&right.source);
        let target = left.target.concat(&right.target);
        if left.slices.len() <= 1 && right.slices.len() <= 1 {
            let mut s = left.slices.first().cloned().unwrap_or_else(|| id_blocks(&left.source));
            s.extend(right.slices.first().cloned().unwrap_or_else(|| id_blocks(&right.source)));
            let slices = if left.slices.is_empty() && right.slices.is_empty() { vec![] } else { vec![s] };
            return WebDiagram { source, target, slices };
        }
        let mut slices = Vec::new();
        for s in &right.slices {
            let mut row = id_blocks(&left.source);
            row.extend(s.iter().cloned());
            slices.push(row);
        }
        for s in &left.slices {
            let mut row = s.clone();
            row.extend(id_blocks(&right.target));
            slices.push(row);
        }
        WebDiagram { source, target, slices }
    }

    /// Tensor of many diagrams, left to right.
    pub fn tensor_all(parts: &[WebDiagram]) -> WebDiagram {
        parts.iter().fold(WebDiagram::identity(&WebObject::unit()), |acc, d| WebDiagram::tensor(&acc, d))
    }

    /// Number of generator occurrences of each kind satisfying `pred`,
    /// looking inside linear blocks.
    pub fn count_generators<F: Fn(&Generator) -> bool + Copy>(&self, pred: F) -> usize {
        self.slices
            .iter()
            .flatten()
            .map(|b| match b {
                Block::Gen(g) => pred(g) as usize,
                Block::Lin(t) => t.iter().map(|(_, d)| d.count_generators(pred)).sum(),
            })
            .sum()
    }

    /// True when every block is primitive.
    pub fn is_primitive(&self) -> bool {
        self.slices.iter().flatten().all(|b| match b {
            Block::Gen(g) => g.is_primitive(),
            Block::Lin(t) => t.iter().all(|(_, d)| d.is_primitive()),
        })
    }

    /// Checks that adjacent slices agree, recursively.
    pub fn check(&self) -> Result<()> {
        let d = WebDiagram::from_slices(self.source.clone(), self.slices.clone())?;
        if d.target != self.target {
            return Err(Error::ObjectMismatch(format!("{} against {}", d.target, self.target)));
        }
        for b in self.slices.iter().flatten() {
            if let Block::Lin(t) = b {
                for (_, d) in t {
                    d.check()?;
                }
            }
        }
        Ok(())
    }
}

fn id_blocks(o: &WebObject) -> Slice {
    if o.is_unit() {
        vec![]
    } else {
        vec![Block::Gen(Generator::Id(o.clone()))]
    }
}

impl fmt::Display for WebDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slices.is_empty() {
            return write!(f, "id({})", self.source);
        }
        let parts: Vec<String> = self
            .slices
            .iter()
            .map(|s| s.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" * "))
            .collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

// ---------------------------------------------------------------------------
// Braids

/// A braid on upward strands. Letter `i > 0` is `xo` on strands `i, i+1`,
/// letter `-i` is `xu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: Vec<u32>,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: Vec<u32>, letters: Vec<i32>) -> Result<BraidWord> {
        if strands.is_empty() {
            return Err(Error::MalformedBraid("no strands".into()));
        }
        if strands.contains(&0) {
            return Err(Error::MalformedBraid("strand label 0".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands.len() {
                return Err(Error::MalformedBraid(format!("letter s{} on {} strands", l, strands.len())));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Sum of the letter signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// `perm[j]` is the bottom position of the strand ending at top
    /// position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands.len()).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        at
    }

    /// Labels must be constant along closed components.
    pub fn check_closure(&self) -> Result<()> {
        let perm = self.permutation();
        for (top, &bottom) in perm.iter().enumerate() {
            if self.strands[top] != self.strands[bottom] {
                return Err(Error::MalformedBraid("labels change along a closed component".into()));
            }
        }
        Ok(())
    }

    /// The braid as an upward diagram.
    pub fn to_diagram(&self) -> WebDiagram {
        let mut cur: Vec<Item> = self.strands.iter().map(|&k| Item::up(k)).collect();
        let mut d = WebDiagram::identity(&WebObject::new(cur.clone()));
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (cur[i], cur[i + 1]);
            let g = if l > 0 { Generator::Over(a, b) } else { Generator::Under(a, b) };
            let mut blocks = id_blocks(&WebObject::new(cur[..i].to_vec()));
            blocks.push(Block::Gen(g));
            blocks.extend(id_blocks(&WebObject::new(cur[i + 2..].to_vec())));
            d = d.then(&WebDiagram::from_slice(blocks)).expect("braid slices match");
            cur.swap(i, i + 1);
        }
        d
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.strands.iter().map(|k| k.to_string()).collect();
        let letters: Vec<String> = self.letters.iter().map(|l| format!("s{}", l)).collect();
        write!(f, "braid {} [{}] :", self.strands.len(), labels.join(","))?;
        for l in letters {
            write!(f, " {}", l)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn signed(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn label(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.signed()?;
        if v < 0 {
            return Err(Error::NegativeLabel { pos: start });
        }
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("label out of range")
        })
    }

    fn item(&mut self) -> Result<Item> {
        self.skip_ws();
        let orient = match self.src.get(self.pos) {
            Some(b'u') => Orient::Up,
            Some(b'd') => Orient::Down,
            _ => return self.err("expected an item u<k> or d<k>"),
        };
        self.pos += 1;
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == b'-') {
            return self.err("expected a label after the orientation");
        }
        Ok(Item { orient, label: self.label()? })
    }

    fn object(&mut self) -> Result<WebObject> {
        let mut items = Vec::new();
        while matches!(self.peek(), Some(b'u') | Some(b'd')) {
            items.push(self.item()?);
        }
        Ok(WebObject::new(items))
    }

    fn diagram(&mut self) -> Result<WebDiagram> {
        let start = self.pos;
        let mut d = self.term()?;
        while self.peek() == Some(b';') {
            self.pos += 1;
            let at = self.pos;
            let t = self.term()?;
            d = d.then(&t).map_err(|e| match e {
                Error::ObjectMismatch(m) => Error::ObjectMismatch(format!("at {}: {}", at, m)),
                e => e,
            })?;
        }
        let _ = start;
        Ok(d)
    }

    fn term(&mut self) -> Result<WebDiagram> {
        let mut blocks = vec![self.atom()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            blocks.push(self.atom()?);
        }
        let blocks: Slice = blocks
            .into_iter()
            .filter(|b| !matches!(b, Block::Gen(Generator::Id(o)) if o.is_unit()))
            .collect();
        Ok(WebDiagram::from_slice(blocks))
    }

    fn atom(&mut self) -> Result<Block> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let d = self.diagram()?;
            self.expect(b')')?;
            return Ok(Block::Lin(vec![(ScalarQ::one(), d)]));
        }
        let at = self.pos;
        let name = self.ident()?;
        self.expect(b'(')?;
        use Generator::*;
        let g = match name.as_str() {
            "id" => Id(self.object()?),
            "dot" => Dot(self.label()?),
            "ddot" => DDot(self.label()?),
            "lcup" => LCup(self.label()?),
            "lcap" => LCap(self.label()?),
            "rcup" => RCup(self.label()?),
            "rcap" => RCap(self.label()?),
            "clasp" => Clasp(self.label()?),
            "merge" | "split" | "dmerge" | "dsplit" => {
                let k = self.label()?;
                self.expect(b',')?;
                let l = self.label()?;
                match name.as_str() {
                    "merge" => Merge(k, l),
                    "split" => Split(k, l),
                    "dmerge" => DMerge(k, l),
                    _ => DSplit(k, l),
                }
            }
            "xo" | "xu" => {
                let a = self.item()?;
                self.expect(b',')?;
                let b = self.item()?;
                if name == "xo" {
                    Over(a, b)
                } else {
                    Under(a, b)
                }
            }
            _ => {
                self.pos = at;
                return self.err(format!("unknown generator '{}'", name));
            }
        };
        self.expect(b')')?;
        if let Err(e) = g.validate() {
            self.pos = at;
            return self.err(e.to_string());
        }
        Ok(Block::Gen(g))
    }
}

/// Parses the diagram language.
pub fn parse_web(text: &str) -> Result<WebDiagram> {
    let mut p = Parser::new(text);
    let d = p.diagram()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(d)
}

/// Parses an object word such as `u1 d2`.
pub fn parse_object(text: &str) -> Result<WebObject> {
    let mut p = Parser::new(text);
    let o = p.object()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(o)
}

/// Parses `braid N [k1,...,kN] : s1 s-2 ...`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut p = Parser::new(text);
    if p.ident()? != "braid" {
        p.pos = 0;
        return p.err("expected 'braid'");
    }
    let count_at = p.pos;
    let count = p.label()? as usize;
    p.expect(b'[')?;
    let mut labels = vec![p.label()?];
    while p.peek() == Some(b',') {
        p.pos += 1;
        labels.push(p.label()?);
    }
    p.expect(b']')?;
    if labels.len() != count {
        p.pos = count_at;
        return p.err(format!("{} strands declared but {} labels given", count, labels.len()));
    }
    p.expect(b':')?;
    let mut letters = Vec::new();
    while !p.at_end() {
        if p.peek() != Some(b's') {
            return p.err("expected a letter s<i>");
        }
        p.pos += 1;
        let at = p.pos;
        let v = p.signed()?;
        letters.push(i32::try_from(v).or_else(|_| {
            p.pos = at;
            p.err("letter out of range")
        })?);
    }
    BraidWord::new(labels, letters)
}

// ---------------------------------------------------------------------------
// Macro expansion

fn gen(g: Generator) -> WebDiagram {
    WebDiagram::generator(g)
}

fn id(o: &WebObject) -> WebDiagram {
    WebDiagram::identity(o)
}

fn chain(parts: &[WebDiagram]) -> WebDiagram {
    let mut it = parts.iter();
    let first = it.next().expect("nonempty chain").clone();
    it.fold(first, |acc, d| acc.then(d).expect("chain boundaries match"))
}

fn sum(terms: Vec<(ScalarQ, WebDiagram)>) -> WebDiagram {
    WebDiagram::linear(terms).expect("terms share boundaries")
}

/// `u k -> u1^k` by splitting off one strand at a time.
pub fn explode(k: u32) -> WebDiagram {
    if k <= 1 {
        return id(&WebObject::ups(&[k]));
    }
    let rest = WebDiagram::tensor(&id(&WebObject::ups(&[1])), &explode(k - 1));
    gen(Generator::Split(1, k - 1)).then(&rest).unwrap()
}

/// `u1^k -> u k`.
pub fn merge_all(k: u32) -> WebDiagram {
    if k <= 1 {
        return id(&WebObject::ups(&[k]));
    }
    let rest = WebDiagram::tensor(&id(&WebObject::ups(&[1])), &merge_all(k - 1));
    rest.then(&gen(Generator::Merge(1, k - 1))).unwrap()
}

/// `d k -> d1^k`.
pub fn dexplode(k: u32) -> WebDiagram {
    if k <= 1 {
        return id(&Item::down(k).into());
    }
    let rest = WebDiagram::tensor(&id(&Item::down(1).into()), &dexplode(k - 1));
    gen(Generator::DMerge(1, k - 1)).then(&rest).unwrap()
}

/// `d1^k -> d k`.
pub fn dsplit_all(k: u32) -> WebDiagram {
    if k <= 1 {
        return id(&Item::down(k).into());
    }
    let rest = WebDiagram::tensor(&id(&Item::down(1).into()), &dsplit_all(k - 1));
    rest.then(&gen(Generator::DSplit(1, k - 1))).unwrap()
}

fn cup_for(i: &Item) -> Generator {
    if i.is_up() {
        Generator::LCup(i.label)
    } else {
        Generator::RCup(i.label)
    }
}

fn cap_for(i: &Item) -> Generator {
    // closes `i* i`
    if i.is_up() {
        Generator::LCap(i.label)
    } else {
        Generator::RCap(i.label)
    }
}

/// `1 -> X X*` by nested cups.
pub fn coev(x: &WebObject) -> WebDiagram {
    if x.is_unit() {
        return id(x);
    }
    let first = x.slice(0, 1);
    let rest = x.slice(1, x.len());
    let inner = WebDiagram::tensor_all(&[id(&first), coev(&rest), id(&first.dual())]);
    gen(cup_for(&x.items()[0])).then(&inner).unwrap()
}

/// `X* X -> 1` by nested caps.
pub fn ev(x: &WebObject) -> WebDiagram {
    if x.is_unit() {
        return id(x);
    }
    let r = x.len();
    let last = x.slice(r - 1, r);
    let rest = x.slice(0, r - 1);
    let inner = WebDiagram::tensor_all(&[id(&last.dual()), ev(&rest), id(&last)]);
    inner.then(&gen(cap_for(&x.items()[r - 1]))).unwrap()
}

/// The rotation by a half turn: `f: X -> Y` gives `Y* -> X*`.
pub fn mate(f: &WebDiagram) -> WebDiagram {
    let (x, y) = (f.source().clone(), f.target().clone());
    let (xs, ys) = (x.dual(), y.dual());
    chain(&[
        WebDiagram::tensor(&id(&ys), &coev(&x)),
        WebDiagram::tensor_all(&[id(&ys), f.clone(), id(&xs)]),
        WebDiagram::tensor(&ev(&y), &id(&xs)),
    ])
}

fn q(e: i32) -> ScalarQ {
    ScalarQ::q_pow(e)
}

/// Places `g` on positions `at, at+1` of an object.
fn on(o: &[Item], at: usize, g: Generator) -> WebDiagram {
    WebDiagram::tensor_all(&[
        id(&WebObject::new(o[..at].to_vec())),
        gen(g),
        id(&WebObject::new(o[at + 2..].to_vec())),
    ])
}

/// Thin crossings moving the left bundle of `a` strands right past `b`.
fn bundle_cross(a: Item, na: usize, b: Item, nb: usize, over: bool) -> WebDiagram {
    let mut cur: Vec<Item> = std::iter::repeat_n(a, na).chain(std::iter::repeat_n(b, nb)).collect();
    let mut d = id(&WebObject::new(cur.clone()));
    for i in (0..na).rev() {
        for j in i..i + nb {
            let g = if over { Generator::Over(cur[j], cur[j + 1]) } else { Generator::Under(cur[j], cur[j + 1]) };
            d = d.then(&on(&cur, j, g)).unwrap();
            cur.swap(j, j + 1);
        }
    }
    d
}

fn crossing(a: Item, b: Item, over: bool) -> WebDiagram {
    if over {
        gen(Generator::Over(a, b))
    } else {
        gen(Generator::Under(a, b))
    }
}

/// Inversion count and a reduced word of a permutation in one-line notation.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    // bubble sort; each swap at i records s_{i+1}
    loop {
        let mut swapped = false;
        for i in 0..p.len().saturating_sub(1) {
            if p[i] > p[i + 1] {
                p.swap(i, i + 1);
                word.push(i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word.reverse();
    word
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// `T_w` on `u1^k` as a word of thin over-crossings.
pub fn t_word(k: usize, word: &[usize]) -> WebDiagram {
    let o = vec![Item::up(1); k];
    let mut d = id(&WebObject::new(o.clone()));
    for &i in word.iter().rev() {
        d = d.then(&on(&o, i - 1, Generator::Over(Item::up(1), Item::up(1)))).unwrap();
    }
    d
}

/// Expansion of one generator, not yet recursively expanded.
fn unfold(g: &Generator) -> Option<WebDiagram> {
    use Generator::*;
    let d = match g {
        DDot(k) => mate(&gen(Dot(*k))),
        DMerge(k, l) => mate(&gen(Merge(*l, *k))),
        DSplit(k, l) => mate(&gen(Split(*l, *k))),
        RCap(k) => {
            let k = *k;
            let body = gen(Over(Item::up(k), Item::down(k))).then(&gen(LCap(k))).unwrap();
            WebDiagram::scaled(q((k * (k - 1)) as i32), body)
        }
        RCup(k) => {
            let k = *k;
            let body = gen(LCup(k)).then(&gen(Under(Item::up(k), Item::down(k)))).unwrap();
            WebDiagram::scaled(q(-((k * (k - 1)) as i32)), body)
        }
        Clasp(k) => {
            let k = *k as usize;
            let pre = &q(-((k * (k.saturating_sub(1))) as i32) / 2) / &qfact(k as u32);
            let terms = permutations(k)
                .into_iter()
                .map(|p| {
                    let w = reduced_word(&p);
                    (&pre * &q(w.len() as i32), t_word(k, &w))
                })
                .collect();
            sum(terms)
        }
        Over(a, b) | Under(a, b) => {
            let over = matches!(g, Over(..));
            let (a, b) = (*a, *b);
            match (a.is_up(), b.is_up()) {
                (true, true) if a.label == 1 && b.label == 1 => {
                    let ms = gen(Merge(1, 1)).then(&gen(Split(1, 1))).unwrap();
                    let c = if over { q(-1) } else { q(1) };
                    sum(vec![(ScalarQ::one(), ms), (-c, id(&WebObject::ups(&[1, 1])))])
                }
                (true, true) => {
                    let (k, l) = (a.label, b.label);
                    let pre = (&qfact(k) * &qfact(l)).inv().unwrap();
                    let body = chain(&[
                        WebDiagram::tensor(&explode(k), &explode(l)),
                        bundle_cross(Item::up(1), k as usize, Item::up(1), l as usize, over),
                        WebDiagram::tensor(&merge_all(l), &merge_all(k)),
                    ]);
                    WebDiagram::scaled(pre, body)
                }
                (false, true) => {
                    // leftward: d k u l -> u l d k
                    let (k, l) = (a.label, b.label);
                    let (dk, ul) = (Item::down(k), Item::up(l));
                    let uk = Item::up(k);
                    chain(&[
                        WebDiagram::tensor_all(&[id(&WebObject::new(vec![dk, ul])), gen(LCup(k))]),
                        WebDiagram::tensor_all(&[id(&dk.into()), crossing(ul, uk, !over), id(&dk.into())]),
                        WebDiagram::tensor_all(&[gen(LCap(k)), id(&WebObject::new(vec![ul, dk]))]),
                    ])
                }
                (true, false) => {
                    if a.label == 1 && b.label == 1 {
                        return None;
                    }
                    // rightward: u l d k -> d k u l
                    let (l, k) = (a.label, b.label);
                    let pre = (&qfact(k) * &qfact(l)).inv().unwrap();
                    let body = chain(&[
                        WebDiagram::tensor(&explode(l), &dexplode(k)),
                        bundle_cross(Item::up(1), l as usize, Item::down(1), k as usize, over),
                        WebDiagram::tensor(&dsplit_all(k), &merge_all(l)),
                    ]);
                    WebDiagram::scaled(pre, body)
                }
                (false, false) => {
                    let up = crossing(Item::up(a.label), Item::up(b.label), over);
                    mate(&up)
                }
            }
        }
        _ => return None,
    };
    Some(d)
}

/// The one-step unfolding of a generator, or `None` when it is primitive.
pub fn unfold_generator(g: &Generator) -> Option<WebDiagram> {
    if g.is_primitive() {
        None
    } else {
        unfold(g)
    }
}

fn expand_block(b: &Block) -> WebDiagram {
    match b {
        Block::Gen(g) => match unfold_generator(g) {
            Some(d) => expand_macros(&d),
            None => WebDiagram::generator(g.clone()),
        },
        Block::Lin(t) => {
            let terms = t.iter().map(|(c, d)| (c.clone(), expand_macros(d))).collect();
            WebDiagram { source: b.source(), target: b.target(), slices: vec![vec![Block::Lin(terms)]] }
        }
    }
}

/// Rewrites every generator into the primitive set
/// `{dot, merge, split, lcup, lcap, id, xo(u1,d1), xu(u1,d1)}`.
/// Scalar prefactors become single-term linear blocks.
pub fn expand_macros(d: &WebDiagram) -> WebDiagram {
    let mut out = WebDiagram::identity(d.source());
    for s in d.slices() {
        let parts: Vec<WebDiagram> = s.iter().map(expand_block).collect();
        let piece = if parts.iter().all(|p| p.slices.len() <= 1) {
            WebDiagram::tensor_all(&parts)
        } else if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            let blocks = parts
                .into_iter()
                .flat_map(|p| match p.slices.len() {
                    0 => id_blocks(&p.source),
                    1 => p.slices.into_iter().next().unwrap(),
                    _ => vec![Block::Lin(vec![(ScalarQ::one(), p)])],
                })
                .collect();
            WebDiagram::from_slice(blocks)
        };
        out = out.then(&piece).expect("expansion preserves boundaries");
    }
    out
}

/// `sum c_i d_i` helper for callers building relations.
pub fn combination(terms: Vec<(ScalarQ, WebDiagram)>) -> Result<WebDiagram> {
    WebDiagram::linear(terms)
}
