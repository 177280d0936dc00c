use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A coefficient ring for [`ExactSeries`](super::ExactSeries): a commutative
/// `Q`-algebra with exact equality.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: BigRational) -> Self;
    /// The grading parameter `u`, if the ring has one.
    fn parameter() -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &BigRational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    /// Whether any rational coefficient is strictly negative.
    fn has_negative(&self) -> bool;
    /// The lowest-degree strictly negative term.
    fn first_negative_term(&self) -> Option<Self>;
    /// Exact string coefficients as `num/den`.
    fn to_strings(&self) -> Vec<String>;
    /// Whether printing needs parentheses when multiplied by a power of `t`.
    fn is_compound(&self) -> bool {
        false
    }
}

pub(crate) fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_rational(r: BigRational) -> Self {
        r
    }

    fn parameter() -> Option<Self> {
        None
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn scaled(&self, r: &BigRational) -> Self {
        self * r
    }

    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn has_negative(&self) -> bool {
        self.is_negative()
    }

    fn first_negative_term(&self) -> Option<Self> {
        self.is_negative().then(|| self.clone())
    }

    fn to_strings(&self) -> Vec<String> {
        vec![rational_string(self)]
    }
}

/// A polynomial in `u` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut v = vec![<BigRational as Zero>::zero(); degree + 1];
        v[degree] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.0
            .get(k)
            .cloned()
            .unwrap_or_else(<BigRational as Zero>::zero)
    }

    /// Value at `u = x`.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(<BigRational as Zero>::zero(), |acc, c| acc * x + c)
    }
}

impl Coeff for UPoly {
    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn one() -> Self {
        UPoly(vec![<BigRational as One>::one()])
    }

    fn from_rational(r: BigRational) -> Self {
        UPoly::new(vec![r])
    }

    fn parameter() -> Option<Self> {
        Some(UPoly(vec![
            <BigRational as Zero>::zero(),
            <BigRational as One>::one(),
        ]))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    fn minus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    fn times(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return UPoly::zero();
        }
        let mut out = vec![<BigRational as Zero>::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    fn negated(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn scaled(&self, r: &BigRational) -> Self {
        UPoly::new(self.0.iter().map(|c| c * r).collect())
    }

    fn inverse(&self) -> Option<Self> {
        match self.0.as_slice() {
            [c] => Some(UPoly(vec![c.recip()])),
            _ => None,
        }
    }

    fn has_negative(&self) -> bool {
        self.0.iter().any(Signed::is_negative)
    }

    fn first_negative_term(&self) -> Option<Self> {
        self.0
            .iter()
            .position(Signed::is_negative)
            .map(|k| UPoly::monomial(self.0[k].clone(), k))
    }

    fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational_string).collect()
    }

    fn is_compound(&self) -> bool {
        self.0.iter().filter(|c| !Zero::is_zero(*c)).count() > 1
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        f.write_str("u")?;
                    } else {
                        write!(f, "u^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
