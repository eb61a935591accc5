use super::gauss::GaussianRational as Gr;
use super::laurent::Laurent;
use super::ratfunc::ScalarQ;

/// The quantum integer `[a]_{q^e} = (q^{ea} - q^{-ea}) / (q^e - q^{-e})`.
pub fn qint(a: i64, e: i32) -> ScalarQ {
    assert!(e >= 1, "qint needs a positive base exponent");
    if a == 0 {
        return ScalarQ::zero();
    }
    let sign = if a < 0 { -1 } else { 1 };
    let a = a.unsigned_abs() as i32;
    let terms = (0..a).map(|j| (e * (a - 1 - 2 * j), Gr::from_int(sign)));
    ScalarQ::from_laurent(Laurent::from_terms(terms))
}

/// `[a]_q! = [1]_q [2]_q ... [a]_q`.
pub fn qfact(a: u32) -> ScalarQ {
    (1..=a as i64).fold(ScalarQ::one(), |acc, j| &acc * &qint(j, 1))
}

/// Quantum binomial `[top]_q! / ([bottom]_q! [top - bottom]_q!)`; zero when
/// `bottom > top`.
pub fn qbinom(top: u32, bottom: u32) -> ScalarQ {
    if bottom > top {
        return ScalarQ::zero();
    }
    // Pascal rule [n,k] = q^k [n-1,k] + q^{-(n-k)} [n-1,k-1] keeps it Laurent.
    let mut row = vec![ScalarQ::one()];
    for n in 1..=top {
        let mut next = vec![ScalarQ::zero(); n as usize + 1];
        for k in 0..=n as usize {
            let mut v = ScalarQ::zero();
            if k < n as usize {
                v = &v + &row[k].shift(k as i32);
            }
            if k > 0 {
                v = &v + &row[k - 1].shift(-((n as i32) - k as i32));
            }
            next[k] = v;
        }
        row = next;
    }
    row[bottom as usize].clone()
}
