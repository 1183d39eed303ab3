//! Truncated Novikov scalars `Σ c_i T^{λ_i}` with rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exp = BigRational;

pub fn exp(num: i64, den: i64) -> Exp {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exp_string(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn parse_exp(s: &str) -> Option<Exp> {
    BigRational::from_str(s.trim()).ok()
}

/// Base field of the Novikov ring.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn parse(s: &str) -> Option<Self>;
    fn to_text(&self) -> String;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Default)]
pub struct F2(pub bool);

impl Coeff for F2 {
    const NAME: &'static str = "F2";
    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        F2(self.0 && other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn parse(s: &str) -> Option<Self> {
        let k = BigInt::from_str(s.trim()).ok()?;
        Some(F2(k.bit(0)))
    }
    fn to_text(&self) -> String {
        if self.0 { "1" } else { "0" }.into()
    }
}

impl Coeff for BigRational {
    const NAME: &'static str = "Q";
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn parse(s: &str) -> Option<Self> {
        BigRational::from_str(s.trim()).ok()
    }
    fn to_text(&self) -> String {
        exp_string(self)
    }
}

/// Valuation with `+∞` for zero. `Finite` orders below `Infinite`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Valuation {
    Finite(Exp),
    Infinite,
}

impl Valuation {
    pub fn is_positive(&self) -> bool {
        match self {
            Valuation::Finite(v) => v.is_positive(),
            Valuation::Infinite => true,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Valuation::Finite(v) => !v.is_negative(),
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", exp_string(v)),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A truncated Novikov series. Terms are sorted by strictly increasing
/// exponent, carry nonzero coefficients and lie below the cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovikovScalar<C> {
    terms: Vec<(Exp, C)>,
    cutoff: Exp,
}

impl<C: Coeff> NovikovScalar<C> {
    pub fn zero(cutoff: &Exp) -> Self {
        NovikovScalar { terms: Vec::new(), cutoff: cutoff.clone() }
    }

    pub fn one(cutoff: &Exp) -> Self {
        Self::monomial(C::one(), <Exp as Zero>::zero(), cutoff)
    }

    /// `T^λ`.
    pub fn t(lambda: Exp, cutoff: &Exp) -> Self {
        Self::monomial(C::one(), lambda, cutoff)
    }

    pub fn monomial(c: C, lambda: Exp, cutoff: &Exp) -> Self {
        Self::from_terms(vec![(lambda, c)], cutoff)
    }

    /// Normalizes an arbitrary term list: merges equal exponents, drops zero
    /// coefficients and everything at or above the cutoff.
    pub fn from_terms(terms: Vec<(Exp, C)>, cutoff: &Exp) -> Self {
        let mut acc: BTreeMap<Exp, C> = BTreeMap::new();
        for (e, c) in terms {
            if &e >= cutoff {
                continue;
            }
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.add(&c);
        }
        NovikovScalar { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(), cutoff: cutoff.clone() }
    }

    pub fn terms(&self) -> &[(Exp, C)] {
        &self.terms
    }

    pub fn cutoff(&self) -> &Exp {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        self.terms.first().map_or(Valuation::Infinite, |(e, _)| Valuation::Finite(e.clone()))
    }

    /// True when every exponent is nonnegative, i.e. the scalar lies in the ring.
    pub fn in_ring(&self) -> bool {
        self.valuation().is_nonnegative()
    }

    fn same_cutoff(&self, other: &Self) -> Result<()> {
        if self.cutoff == other.cutoff {
            Ok(())
        } else {
            Err(Error::CutoffMismatch(exp_string(&self.cutoff), exp_string(&other.cutoff)))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_cutoff(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j == other.terms.len() || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i == self.terms.len() || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.add(&other.terms[j].1);
                if !c.is_zero() {
                    out.push((self.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(NovikovScalar { terms: out, cutoff: self.cutoff.clone() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_cutoff(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.cutoff));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e >= self.cutoff {
                    // Exponents increase along `other`.
                    break;
                }
                terms.push((e, ca.mul(cb)));
            }
        }
        Ok(Self::from_terms(terms, &self.cutoff))
    }

    pub fn neg(&self) -> Self {
        NovikovScalar { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(), cutoff: self.cutoff.clone() }
    }

    /// Multiplication by `T^λ`.
    pub fn shift(&self, lambda: &Exp) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + lambda, c.clone())).collect(), &self.cutoff)
    }

    /// Image in the quotient with a lower cutoff.
    pub fn truncate(&self, cutoff: &Exp) -> Result<Self> {
        if cutoff > &self.cutoff {
            return Err(Error::InvalidParameter(format!(
                "cannot raise cutoff from {} to {}",
                exp_string(&self.cutoff),
                exp_string(cutoff)
            )));
        }
        Ok(Self::from_terms(self.terms.clone(), cutoff))
    }

    /// The `T^0` part.
    pub fn constant_term(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| Zero::is_zero(e)).cloned().collect(), &self.cutoff)
    }

    /// Parses `c1*T^{p/q} + c2*T^2 + c3 + T^{1/2}`. `0` is the zero scalar.
    pub fn parse(text: &str, cutoff: &Exp) -> Result<Self> {
        let bad = |m: String| Error::Parse { line: 0, column: 0, message: m };
        let text = text.trim();
        if text.is_empty() {
            return Err(bad("empty Novikov scalar".into()));
        }
        let mut terms = Vec::new();
        for raw in split_terms(text) {
            let t = raw.trim();
            let (coeff, power) = match t.find('T') {
                None => (t, None),
                Some(k) => {
                    let head = t[..k].trim();
                    let head = if head.is_empty() {
                        "1"
                    } else if head == "-" {
                        "-1"
                    } else {
                        head.strip_suffix('*').map(str::trim).ok_or_else(|| bad(format!("expected '*' before T in {t:?}")))?
                    };
                    let tail = t[k + 1..].trim();
                    let power = if tail.is_empty() {
                        "1"
                    } else {
                        let p = tail.strip_prefix('^').ok_or_else(|| bad(format!("expected '^' after T in {t:?}")))?.trim();
                        p.strip_prefix('{').and_then(|p| p.strip_suffix('}')).unwrap_or(p)
                    };
                    (head, Some(power))
                }
            };
            let c = C::parse(coeff).ok_or_else(|| bad(format!("bad coefficient {coeff:?}")))?;
            let e = match power {
                None => <Exp as Zero>::zero(),
                Some(p) => parse_exp(p).ok_or_else(|| bad(format!("bad exponent {p:?}")))?,
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms, cutoff))
    }
}

/// Splits on top-level `+` signs, leaving braces intact.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl<C: Coeff> fmt::Display for NovikovScalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(e, c)| format!("{}*T^{{{}}}", c.to_text(), exp_string(e))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coeff> Add for &NovikovScalar<C> {
    type Output = NovikovScalar<C>;
    /// # Panics
    /// On a cutoff mismatch.
    fn add(self, rhs: Self) -> NovikovScalar<C> {
        self.checked_add(rhs).expect("cutoff mismatch")
    }
}

impl<C: Coeff> Sub for &NovikovScalar<C> {
    type Output = NovikovScalar<C>;
    fn sub(self, rhs: Self) -> NovikovScalar<C> {
        self.checked_add(&rhs.neg()).expect("cutoff mismatch")
    }
}

impl<C: Coeff> Mul for &NovikovScalar<C> {
    type Output = NovikovScalar<C>;
    /// # Panics
    /// On a cutoff mismatch.
    fn mul(self, rhs: Self) -> NovikovScalar<C> {
        self.checked_mul(rhs).expect("cutoff mismatch")
    }
}

impl<C: Coeff> Neg for &NovikovScalar<C> {
    type Output = NovikovScalar<C>;
    fn neg(self) -> NovikovScalar<C> {
        NovikovScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type NF = NovikovScalar<F2>;
    type NQ = NovikovScalar<BigRational>;

    fn ten() -> Exp {
        exp(10, 1)
    }

    #[test]
    fn zero_is_neutral_and_cancellation() {
        let a = NQ::parse("1*T^{0} + 1*T^{1}", &ten()).unwrap();
        assert_eq!(&a + &NQ::zero(&ten()), a);
        let b = NQ::parse("-1*T^1", &ten()).unwrap();
        assert_eq!(&a + &b, NQ::one(&ten()));
    }

    #[test]
    fn product_example() {
        let a = NF::parse("T^0 + T^1", &ten()).unwrap();
        let t = NF::t(exp(1, 2), &ten());
        assert_eq!(&a * &t, NF::parse("T^{1/2} + T^{3/2}", &ten()).unwrap());
        assert_eq!(&a * &NF::one(&ten()), a);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(NF::zero(&ten()).valuation(), Valuation::Infinite);
        let a = NF::parse("T^{1/3} + T^2", &ten()).unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(exp(1, 3)));
        assert!(Valuation::Finite(exp(100, 1)) < Valuation::Infinite);
    }

    #[test]
    fn truncation_at_cutoff() {
        let a = NF::parse("T^9 + T^{19/2}", &ten()).unwrap();
        assert!((&a * &a).is_zero());
        assert_eq!(a.shift(&exp(1, 2)).terms().len(), 1);
        assert_eq!(a.truncate(&exp(19, 2)).unwrap(), NF::t(exp(9, 1), &exp(19, 2)));
        assert!(a.truncate(&exp(11, 1)).is_err());
    }

    #[test]
    fn cutoff_mismatch_is_an_error() {
        let a = NF::one(&ten());
        let b = NF::one(&exp(5, 1));
        assert_eq!(a.checked_add(&b).unwrap_err().code(), "E_CUTOFF_MISMATCH");
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn display_round_trips() {
        let a = NQ::parse("-3/2*T^{1/2} + 2 + T^3", &ten()).unwrap();
        assert_eq!(a.to_string(), "2*T^{0} + -3/2*T^{1/2} + 1*T^{3}");
        assert_eq!(NQ::parse(&a.to_string(), &ten()).unwrap(), a);
        assert_eq!(NF::parse("0", &ten()).unwrap(), NF::zero(&ten()));
        assert!(NF::parse("T^x", &ten()).is_err());
        assert!(NF::parse("", &ten()).is_err());
    }
}
