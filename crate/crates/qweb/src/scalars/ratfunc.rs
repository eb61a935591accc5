use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::gauss::GaussianRational as Gr;
use super::laurent::Laurent;
use crate::error::{Error, Result};

/// Element of Q(i)(q) as a reduced fraction `num / den`.
///
/// `den` is a polynomial with nonzero constant term and leading coefficient
/// one, coprime to `num`; structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: Laurent,
    den: Laurent,
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        ScalarQ::from_laurent(Laurent::one())
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ::constant(Gr::from_int(n))
    }

    pub fn constant(c: Gr) -> Self {
        ScalarQ::from_laurent(Laurent::monomial(c, 0))
    }

    pub fn i() -> Self {
        ScalarQ::constant(Gr::i())
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        ScalarQ::from_laurent(Laurent::monomial(Gr::one(), e))
    }

    /// `c * q^e`.
    pub fn monomial(c: Gr, e: i32) -> Self {
        ScalarQ::from_laurent(Laurent::monomial(c, e))
    }

    /// `q - q^-1`.
    pub fn qtilde() -> Self {
        ScalarQ::from_laurent(Laurent::from_terms([(1, Gr::one()), (-1, Gr::from_int(-1))]))
    }

    pub fn from_laurent(num: Laurent) -> Self {
        ScalarQ { num, den: Laurent::one() }
    }

    /// Reduces `num / den` to canonical form. Panics if `den` is zero.
    pub fn from_fraction(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ScalarQ::zero();
        }
        // Move q-powers and the leading constant of den into num.
        let shift = den.low();
        let mut den = den.shift(-shift);
        let mut num = num.shift(-shift);
        let lc = den.leading().inv().unwrap();
        den = den.scale(&lc);
        num = num.scale(&lc);
        if den.high() > 0 {
            let s = num.low();
            let g = Laurent::gcd(&num.shift(-s), &den);
            if g.high() > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        ScalarQ { num, den }
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Number of stored terms; used as the pivot cost in elimination.
    pub fn term_count(&self) -> usize {
        self.num.num_terms() + if self.den.is_one() { 0 } else { self.den.num_terms() }
    }

    pub fn inv(&self) -> Option<ScalarQ> {
        if self.is_zero() {
            return None;
        }
        Some(ScalarQ::from_fraction(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Option<ScalarQ> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = ScalarQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, c: &Gr) -> ScalarQ {
        if c.is_zero() {
            return ScalarQ::zero();
        }
        ScalarQ { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i32) -> ScalarQ {
        ScalarQ { num: self.num.shift(e), den: self.den.clone() }
    }

    /// Substitutes `q -> q^k`, `k != 0`.
    pub fn compose_power(&self, k: i32) -> ScalarQ {
        ScalarQ::from_fraction(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Exact substitution `q = q0`.
    pub fn specialize(&self, q0: &Gr) -> Result<Gr> {
        let d = self.den.eval(q0).ok_or(Error::Pole)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        let n = self.num.eval(q0).ok_or(Error::Pole)?;
        Ok(&n / &d)
    }

    /// Text form: `(re,im)*q^e` monomials, with ` / (...)` when the
    /// denominator is not one.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({}) / ({})", self.num.to_text(), self.den.to_text())
        }
    }

    pub fn to_structured(&self) -> StructuredScalar {
        StructuredScalar { num: self.num.to_triples(), den: self.den.to_triples() }
    }

    /// Inverse of [`ScalarQ::to_structured`].
    pub fn from_structured(s: &StructuredScalar) -> Option<ScalarQ> {
        let conv = |v: &Vec<(i32, String, String)>| -> Option<Laurent> {
            let mut terms = Vec::new();
            for (e, re, im) in v {
                terms.push((*e, Gr::new(super::gauss::parse_rat(re)?, super::gauss::parse_rat(im)?)));
            }
            Some(Laurent::from_terms(terms))
        };
        let den = conv(&s.den)?;
        if den.is_zero() {
            return None;
        }
        Some(ScalarQ::from_fraction(conv(&s.num)?, den))
    }
}

/// Serializable form: `[exponent, re, im]` triples for numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredScalar {
    pub num: Vec<(i32, String, String)>,
    pub den: Vec<(i32, String, String)>,
}

impl<'a> Add<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return ScalarQ::from_laurent(self.num.add(&o.num));
        }
        if self.den == o.den {
            return ScalarQ::from_fraction(self.num.add(&o.num), self.den.clone());
        }
        ScalarQ::from_fraction(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl<'a> Sub<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() || o.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return ScalarQ::from_laurent(self.num.mul(&o.num));
        }
        ScalarQ::from_fraction(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn div(self, o: &ScalarQ) -> ScalarQ {
        self * &o.inv().expect("division by zero in Q(i)(q)")
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: ScalarQ) -> ScalarQ {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: &ScalarQ) -> ScalarQ {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::ops::AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, o: &ScalarQ) {
        *self = &*self + o;
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if self.den.num_terms() == 1 {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}
