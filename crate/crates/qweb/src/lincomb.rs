//! Finite linear combinations with `ScalarQ` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::ScalarQ;

/// A formal sum `sum c_k * k` with zero coefficients dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, ScalarQ>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn new() -> Self {
        Lin::default()
    }

    pub fn single(k: K, c: ScalarQ) -> Self {
        let mut l = Lin::new();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Lin<K>, c: &ScalarQ) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, o: &Lin<K>) -> Lin<K> {
        let mut r = self.clone();
        r.add_scaled(o, &ScalarQ::one());
        r
    }

    pub fn sub(&self, o: &Lin<K>) -> Lin<K> {
        let mut r = self.clone();
        r.add_scaled(o, &ScalarQ::from_int(-1));
        r
    }

    pub fn scale(&self, c: &ScalarQ) -> Lin<K> {
        let mut r = Lin::new();
        r.add_scaled(self, c);
        r
    }

    pub fn coeff(&self, k: &K) -> ScalarQ {
        self.terms.get(k).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<K, ScalarQ> {
        self.terms
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<K2: Ord + Clone, F: FnMut(&K) -> Lin<K2>>(&self, mut f: F) -> Lin<K2> {
        let mut r = Lin::new();
        for (k, c) in &self.terms {
            r.add_scaled(&f(k), c);
        }
        r
    }
}

impl<K: Ord + Clone> FromIterator<(K, ScalarQ)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, ScalarQ)>>(it: I) -> Self {
        let mut l = Lin::new();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Lin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({})*{:?}", c, k)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
