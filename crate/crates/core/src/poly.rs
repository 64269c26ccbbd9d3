//! Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// A Laurent polynomial `Σ c_k x^k` in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Laurent::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Laurent::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, n: u32) -> Laurent {
        (0..n).fold(Laurent::one(), |acc, _| &acc * self)
    }

    /// `x ↦ c·x^k`: rescales exponents by `k` and multiplies by `c^e`.
    pub fn substitute(&self, sign: i64, k: i32) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| {
            let s = if sign < 0 && e.rem_euclid(2) == 1 { -1 } else { 1 };
            (e * k, s * c)
        }))
    }

    /// Divides exponents by `k`; fails unless every exponent is a multiple.
    pub fn compress(&self, k: i32) -> Option<Laurent> {
        if self.terms.keys().any(|e| e.rem_euclid(k) != 0) {
            return None;
        }
        Some(Laurent::from_terms(self.terms().map(|(e, c)| (e / k, c))))
    }

    /// `x ↦ x⁻¹`.
    pub fn invert(&self) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Exact division by a monic-ended divisor; `None` when it leaves a remainder.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp().expect("nonzero");
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let term = Laurent::monomial(c / lead, hi - dhi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Renders with the given variable; exponents are divided by `denom`
    /// for display, so `denom = 2` prints half-integer powers.
    pub fn display_with(&self, var: &str, denom: i32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c < 0;
            let a = c.unsigned_abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match (e, denom) {
                (0, _) => String::new(),
                (e, d) if e % d == 0 && e / d == 1 => var.to_string(),
                (e, d) if e % d == 0 => format!("{var}^{}", e / d),
                (e, d) => {
                    let g = gcd(e.unsigned_abs(), d as u32) as i32;
                    format!("{var}^({}/{})", e / g, d / g)
                }
            };
            if power.is_empty() {
                out.push_str(&a.to_string());
            } else if a == 1 {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{a}{power}"));
            }
        }
        out
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", 1))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            p.add_term(c, e);
        }
        p
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut p = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}

/// Serialized as `[[exponent, coefficient], ...]` in increasing exponent.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let q = Laurent::monomial(1, 1);
        let qi = Laurent::monomial(1, -1);
        let s = &q + &qi;
        assert_eq!(&s * &s, Laurent::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert!((&s - &s).is_zero());
        assert_eq!(s.pow(0), Laurent::one());
    }

    #[test]
    fn exact_division() {
        let s = Laurent::from_terms([(1, 1), (-1, 1)]);
        let p = &s * &Laurent::from_terms([(3, 2), (-5, -1)]);
        assert_eq!(p.div_exact(&s), Some(Laurent::from_terms([(3, 2), (-5, -1)])));
        assert_eq!(Laurent::one().div_exact(&s), None);
        assert_eq!(Laurent::from_terms([(3, 1), (1, 1), (0, 1)]).div_exact(&s), None);
    }

    #[test]
    fn substitution() {
        // q ↦ -t^{1/2}: exponents are kept in half units.
        let p = Laurent::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(p.substitute(-1, 1), Laurent::from_terms([(1, -1), (-1, -1)]));
        assert_eq!(Laurent::from_terms([(2, 3)]).substitute(-1, 2), Laurent::from_terms([(4, 3)]));
    }

    #[test]
    fn display() {
        let p = Laurent::from_terms([(2, 1), (6, 1), (8, -1)]);
        assert_eq!(p.display_with("t", 2), "t + t^3 - t^4");
        let u = Laurent::from_terms([(-1, -1), (1, -1)]);
        assert_eq!(u.display_with("t", 2), "-t^(-1/2) - t^(1/2)");
        assert_eq!(Laurent::from_terms([(0, 2)]).display_with("q", 1), "2");
    }
}
