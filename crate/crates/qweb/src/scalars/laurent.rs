use std::fmt;

use num_traits::Zero;

use super::gauss::GaussianRational as Gr;

/// Laurent polynomial in `q` with Gaussian-rational coefficients.
///
/// Stored densely from exponent `low`; both the first and last stored
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<Gr>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(Gr::one(), 0)
    }

    pub fn monomial(c: Gr, e: i32) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: e, coeffs: vec![c] }
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<Gr>) -> Self {
        let mut p = Laurent { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i32, Gr)>>(terms: I) -> Self {
        let terms: Vec<(i32, Gr)> = terms.into_iter().filter(|t| !t.1.is_zero()).collect();
        if terms.is_empty() {
            return Laurent::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Gr::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += &c;
        }
        Laurent::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent; meaningless for zero.
    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, e: i32) -> Gr {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            Gr::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading(&self) -> &Gr {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn lowest(&self) -> &Gr {
        &self.coeffs[0]
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Gr)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn shift(&self, e: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Gr) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let hi = self.high().max(o.high());
        let mut coeffs = vec![Gr::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + k] += c;
        }
        for (k, c) in o.coeffs.iter().enumerate() {
            coeffs[(o.low - lo) as usize + k] += c;
        }
        Laurent::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        if o.coeffs.len() == 1 {
            return self.scale(&o.coeffs[0]).shift(o.low);
        }
        if self.coeffs.len() == 1 {
            return o.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![Gr::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Laurent::from_coeffs(self.low + o.low, coeffs)
    }

    /// Substitutes `q -> q^k` for `k != 0`.
    pub fn compose_power(&self, k: i32) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// Exact evaluation; `None` when a negative power meets `q0 = 0`.
    pub fn eval(&self, q0: &Gr) -> Option<Gr> {
        if self.is_zero() {
            return Some(Gr::zero());
        }
        let mut acc = Gr::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q0) + c;
        }
        let scale = q0.pow(self.low)?;
        Some(&acc * &scale)
    }

    /// Polynomial division, treating both operands as ordinary polynomials
    /// (exponents taken relative to zero). Requires `low() >= 0` on both.
    pub(crate) fn div_rem(&self, d: &Laurent) -> (Laurent, Laurent) {
        debug_assert!(self.low >= 0 && d.low >= 0 && !d.is_zero());
        let mut r = self.clone();
        let mut qt: Vec<(i32, Gr)> = Vec::new();
        let dh = d.high();
        let inv = d.leading().inv().unwrap();
        while !r.is_zero() && r.high() >= dh {
            let e = r.high() - dh;
            let c = r.leading() * &inv;
            r = r.sub(&d.scale(&c).shift(e));
            qt.push((e, c));
        }
        (Laurent::from_terms(qt), r)
    }

    /// Monic greatest common divisor of two polynomials (exponents >= 0).
    pub(crate) fn gcd(a: &Laurent, b: &Laurent) -> Laurent {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = a.leading().inv().unwrap();
        a.scale(&inv)
    }

    /// Exact quotient by a polynomial factor.
    pub(crate) fn div_exact(&self, d: &Laurent) -> Laurent {
        let s = self.low;
        let (qt, r) = self.shift(-s).div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        qt.shift(s)
    }

    /// Space-separated `(re,im)*q^e` monomials in increasing exponent order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "(0,0)*q^0".to_string();
        }
        self.terms()
            .map(|(e, c)| format!("({},{})*q^{}", c.re, c.im, e))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `[exponent, re, im]` triples with rationals rendered as strings.
    pub fn to_triples(&self) -> Vec<(i32, String, String)> {
        self.terms().map(|(e, c)| (e, c.re.to_string(), c.im.to_string())).collect()
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "q"),
        _ => write!(f, "q^{}", e),
    }
}

impl fmt::Display for Laurent {
    /// Human form with descending exponents, e.g. `q^2 - 1 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i32, &Gr)> = self.terms().collect();
        for (k, (e, c)) in terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::from_integer(0.into()) {
                (true, -*c)
            } else {
                (false, (*c).clone())
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let complex = !mag.is_real() && !mag.re.is_zero();
            if mag.is_one() {
                if *e == 0 {
                    write!(f, "1")?;
                }
            } else if complex {
                write!(f, "({})", mag)?;
            } else {
                write!(f, "{}", mag)?;
            }
            if *e != 0 && !mag.is_one() {
                write!(f, "*")?;
            }
            fmt_power(f, *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
