//! Exact truncated power series in `t`.
//!
//! A series of order `N` knows its coefficients `c_0..=c_N`. Products keep
//! track of valuations, so multiplying by something divisible by `t^k` does
//! not throw away precision. Everything is exact; coefficients are rationals
//! or rational polynomials in the grading parameter `u`.

mod coeff;
mod expr;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use coeff::{Coeff, UPoly};
pub use expr::{elementary, OdeExpression};

use crate::closure::DimensionTable;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 30;

/// Where a series came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Dimensions,
    Supplied,
    Expression,
    Computed,
}

#[derive(Clone, Debug)]
pub struct ExactSeries<C: Coeff> {
    coeffs: Vec<C>,
    provenance: Provenance,
    /// Set when an operation had to drop to a lower order than an operand.
    truncated: bool,
}

impl<C: Coeff> PartialEq for ExactSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

pub type RationalSeries = ExactSeries<BigRational>;
pub type GradedSeries = ExactSeries<UPoly>;

pub(crate) fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl<C: Coeff> ExactSeries<C> {
    /// A series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>, provenance: Provenance) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        ExactSeries {
            coeffs,
            provenance,
            truncated: false,
        }
    }

    fn computed(coeffs: Vec<C>) -> Self {
        Self::new(coeffs, Provenance::Computed)
    }

    pub fn zero(order: usize) -> Self {
        Self::computed(vec![C::zero(); order + 1])
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`; never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        if order < s.order() {
            s.coeffs.truncate(order + 1);
        }
        s
    }

    fn padded(&self, order: usize) -> Vec<C> {
        let mut v = self.coeffs.clone();
        v.resize(order + 1, C::zero());
        v
    }

    fn binary(&self, other: &Self, order: usize, coeffs: Vec<C>) -> Self {
        let mut s = Self::computed(coeffs);
        s.truncated = self.truncated || other.truncated || order < self.order().max(other.order());
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c = (0..=n)
            .map(|k| self.coeffs[k].plus(&other.coeffs[k]))
            .collect();
        self.binary(other, n, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c = (0..=n)
            .map(|k| self.coeffs[k].minus(&other.coeffs[k]))
            .collect();
        self.binary(other, n, c)
    }

    pub fn neg(&self) -> Self {
        Self::computed(self.coeffs.iter().map(C::negated).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::computed(self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::computed(self.coeffs.iter().map(|x| x.scaled(r)).collect())
    }

    /// The product, known up to `min(N_a + v_b, N_b + v_a)` where `v` are
    /// valuations; capped at the larger operand order.
    pub fn mul(&self, other: &Self) -> Self {
        let (va, vb) = (self.valuation(), other.valuation());
        let n = match (va, vb) {
            (Some(va), Some(vb)) => (self.order() + vb).min(other.order() + va),
            (None, _) => self.order(),
            (_, None) => other.order(),
        }
        .min(self.order().max(other.order()));
        let a = self.padded(n);
        let b = other.padded(n);
        let mut c = vec![C::zero(); n + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..=n - i].iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].plus(&x.times(y));
                }
            }
        }
        self.binary(other, n, c)
    }

    /// `1 / self`; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::series("inverse needs an invertible constant term"))?;
        let n = self.order();
        let mut g = vec![C::zero(); n + 1];
        g[0] = inv0.clone();
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                s = s.plus(&self.coeffs[j].times(&g[k - j]));
            }
            g[k] = s.times(&inv0).negated();
        }
        Ok(Self::computed(g))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `f'`, of order one less.
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let c = (1..=self.order())
            .map(|k| self.coeffs[k].scaled(&q(k as i64)))
            .collect();
        Self::computed(c)
    }

    /// The antiderivative with zero constant term, of order one more.
    pub fn integrate(&self) -> Self {
        let mut c = vec![C::zero()];
        for (k, x) in self.coeffs.iter().enumerate() {
            c.push(x.scaled(&BigRational::new(BigInt::one(), BigInt::from(k + 1))));
        }
        Self::computed(c)
    }

    /// `f(-t)`.
    pub fn negate_argument(&self) -> Self {
        Self::computed(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.negated() } else { c.clone() })
                .collect(),
        )
    }

    /// `self(g(t))`; needs `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::series(
                "compose needs an inner series without constant term",
            ));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&g).truncate(n);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[k]);
        }
        let mut out = Self::computed(acc.padded(n));
        out.truncated = self.truncated || g.truncated || n < self.order();
        Ok(out)
    }

    /// The compositional inverse; needs `c_0 = 0` and `c_1` invertible.
    ///
    /// Newton iteration `g <- g - (f(g) - t) / f'(g)`, doubling the precision
    /// at each step.
    pub fn reverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::series("reverse needs a zero constant term"));
        }
        let n = self.order();
        if n == 0 {
            return Err(Error::series("reverse needs order at least 1"));
        }
        let inv1 = self.coeffs[1]
            .inverse()
            .ok_or_else(|| Error::series("reverse needs an invertible t coefficient"))?;
        let mut g = Self::computed(vec![C::zero(), inv1]);
        let mut p = 1;
        while p < n {
            p = (2 * p).min(n);
            let f = self.truncate(p);
            let gp = Self::computed(g.padded(p));
            let residual = f.compose(&gp)?.sub(&Self::t(p));
            let slope = f.derive().compose(&gp.truncate(p - 1))?.inverse()?;
            let step = residual.mul(&slope).truncate(p);
            g = Self::computed(gp.sub(&step).padded(p));
        }
        Ok(g)
    }

    /// `exp(f)`; over the rationals the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::series("exp needs a zero constant term"));
        }
        let n = self.order();
        let mut g = vec![C::zero(); n + 1];
        g[0] = C::one();
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                s = s.plus(&self.coeffs[j].scaled(&q(j as i64)).times(&g[k - j]));
            }
            g[k] = s.scaled(&BigRational::new(BigInt::one(), BigInt::from(k)));
        }
        Ok(Self::computed(g))
    }

    /// `ln(f)`; the constant term must be 1.
    pub fn ln(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::series("ln needs constant term 1"));
        }
        let q = self
            .derive()
            .div(&self.truncate(self.order().saturating_sub(1)))?;
        Ok(Self::computed(q.integrate().padded(self.order())))
    }

    /// The square root with constant term 1; `f` must have constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs[0] != C::one() {
            return Err(Error::series("sqrt needs constant term 1"));
        }
        let n = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut g = vec![C::zero(); n + 1];
        g[0] = C::one();
        for k in 1..=n {
            let mut s = self.coeffs[k].clone();
            for j in 1..k {
                s = s.minus(&g[j].times(&g[k - j]));
            }
            g[k] = s.scaled(&half);
        }
        Ok(Self::computed(g))
    }

    /// Coefficients as exact `num/den` strings (one list per coefficient).
    pub fn coefficient_strings(&self) -> Vec<Vec<String>> {
        self.coeffs.iter().map(Coeff::to_strings).collect()
    }
}

impl<C: Coeff> fmt::Display for ExactSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = if c.is_compound() {
                format!("({c})")
            } else {
                c.to_string()
            };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl RationalSeries {
    /// `c_n = dim(n) / n!`, with `c_0 = 0`.
    pub fn from_dims(d: &DimensionTable) -> Self {
        Self::from_dimension_list(&d.entries).with_provenance(Provenance::Dimensions)
    }

    /// `dims[n - 1]` is the dimension in arity `n`.
    pub fn from_dimension_list(dims: &[u64]) -> Self {
        let mut c = vec![<BigRational as Zero>::zero()];
        for (i, &d) in dims.iter().enumerate() {
            c.push(BigRational::new(BigInt::from(d), factorial_big(i + 1)));
        }
        Self::new(c, Provenance::Dimensions)
    }

    /// Coefficient `k` as `d_k / k!`, the form used in tables.
    pub fn factorial_form(&self, k: usize) -> String {
        factorial_form(&self.coeff(k), k)
    }

    /// Value at `u`-free input: lifts to a graded series.
    pub fn to_graded(&self) -> GradedSeries {
        ExactSeries::new(
            self.coeffs
                .iter()
                .cloned()
                .map(UPoly::from_rational)
                .collect(),
            self.provenance,
        )
    }
}

impl GradedSeries {
    /// `c_n = Σ_w dim(n, w) u^w / n!`.
    pub fn from_graded_dims(graded: &[Vec<u64>]) -> Self {
        let mut c = vec![UPoly::zero()];
        for (i, row) in graded.iter().enumerate() {
            let f = factorial_big(i + 1);
            c.push(UPoly::new(
                row.iter()
                    .map(|&d| BigRational::new(BigInt::from(d), f.clone()))
                    .collect(),
            ));
        }
        Self::new(c, Provenance::Dimensions)
    }

    /// Specializes `u`.
    pub fn at(&self, u: &BigRational) -> RationalSeries {
        ExactSeries::new(
            self.coeffs.iter().map(|p| p.eval(u)).collect(),
            self.provenance,
        )
    }
}

/// Renders `c` (the coefficient of `t^k`) as `d/k!`.
pub fn factorial_form<C: Coeff>(c: &C, k: usize) -> String {
    let scaled = c.scaled(&BigRational::from_integer(factorial_big(k)));
    if scaled.is_compound() {
        format!("({scaled})/{k}!")
    } else {
        format!("{scaled}/{k}!")
    }
}

/// A strictly negative coefficient in `rev(-f(-t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GkObstruction<C: Coeff> {
    pub degree: usize,
    /// The whole coefficient of `t^degree`.
    pub coefficient: C,
    /// Its lowest-degree negative part (the coefficient itself over `Q`).
    pub negative_term: C,
}

impl<C: Coeff> GkObstruction<C> {
    pub fn factorial_form(&self) -> String {
        factorial_form(&self.negative_term, self.degree)
    }
}

fn gk_precondition<C: Coeff>(f: &ExactSeries<C>) -> Result<()> {
    if !f.coeff(0).is_zero() || f.coeff(1) != C::one() || f.order() < 1 {
        return Err(Error::series("the criterion needs c_0 = 0 and c_1 = 1"));
    }
    Ok(())
}

/// `rev(-f(-t))` to the given order.
pub fn gk_dual_candidate<C: Coeff>(f: &ExactSeries<C>, order: usize) -> Result<ExactSeries<C>> {
    gk_precondition(f)?;
    if order > f.order() {
        return Err(Error::series(format!(
            "series known to order {} but order {order} requested",
            f.order()
        )));
    }
    f.truncate(order).negate_argument().neg().reverse()
}

/// The first strictly negative coefficient of `rev(-f(-t))` up to `order`.
pub fn gk_first_negative<C: Coeff>(
    f: &ExactSeries<C>,
    order: usize,
) -> Result<Option<GkObstruction<C>>> {
    let g = gk_dual_candidate(f, order)?;
    Ok(g.coeffs().iter().enumerate().find_map(|(k, c)| {
        c.first_negative_term().map(|neg| GkObstruction {
            degree: k,
            coefficient: c.clone(),
            negative_term: neg,
        })
    }))
}

/// The first coefficient of `rev(-f(-t))` in degrees `1..=order` that is
/// zero or has a negative part.
pub fn gk_first_nonpositive<C: Coeff>(
    f: &ExactSeries<C>,
    order: usize,
) -> Result<Option<(usize, C)>> {
    let g = gk_dual_candidate(f, order)?;
    Ok((1..=order).find_map(|k| {
        let c = g.coeff(k);
        (c.is_zero() || c.has_negative()).then_some((k, c))
    }))
}

/// `g(-f(-t)) - t`; zero exactly when the pair passes to this order.
pub fn gk_pair_check<C: Coeff>(
    f: &ExactSeries<C>,
    g: &ExactSeries<C>,
    order: usize,
) -> Result<ExactSeries<C>> {
    gk_precondition(f)?;
    gk_precondition(g)?;
    let inner = f.truncate(order).negate_argument().neg();
    let composed = g.truncate(order).compose(&inner)?;
    Ok(composed.sub(&ExactSeries::t(composed.order())))
}

/// Result of substituting a series into an equation.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeCheck<C: Coeff> {
    pub checked_to: usize,
    /// First nonzero coefficient of `e(t, f, f')`, if any.
    pub first_nonzero: Option<(usize, C)>,
}

impl<C: Coeff> OdeCheck<C> {
    pub fn passed(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// Substitutes `f` and `f'` into `e` and checks the coefficients of
/// `t^0..t^(order-1)`.
pub fn verify_ode<C: Coeff>(
    f: &ExactSeries<C>,
    e: &OdeExpression,
    order: usize,
) -> Result<OdeCheck<C>> {
    if order == 0 || order > f.order() {
        return Err(Error::series(format!(
            "series known to order {} but order {order} requested",
            f.order()
        )));
    }
    let value = e.evaluate(&f.truncate(order))?;
    let checked_to = value.order().min(order - 1);
    let first_nonzero = (0..=checked_to).find_map(|k| {
        let c = value.coeff(k);
        (!c.is_zero()).then_some((k, c))
    });
    Ok(OdeCheck {
        checked_to,
        first_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(text: &str, order: usize) -> RationalSeries {
        elementary::<BigRational>(text, order).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(ser("t", 10).reverse().unwrap(), ser("t", 10));
        assert_eq!(ser("t/(1-t)", 30).reverse().unwrap(), ser("t/(1+t)", 30));
        let w = ser("t*exp(-t)", 12).reverse().unwrap();
        for n in 1..=12i64 {
            let nn = BigInt::from(n).pow(n as u32 - 1);
            assert_eq!(
                w.coeff(n as usize),
                BigRational::new(nn, factorial_big(n as usize))
            );
        }
    }

    #[test]
    fn reverse_with_negative_leading_coefficient() {
        let f = ser("-t+t^2-t^3/6", 20);
        let g = f.reverse().unwrap();
        assert_eq!(f.compose(&g).unwrap(), ser("t", 20));
    }

    #[test]
    fn elementary_functions() {
        let s = ser("1-sqrt(1-2*t-t^2)", 20);
        let back = ser("1-t", 20).sub(&s).mul(&ser("1-t", 20).sub(&s));
        let one_minus = ser("1", 20).sub(&s);
        assert_eq!(one_minus.mul(&one_minus), ser("1-2t-t^2", 20));
        assert_eq!(back.order(), 20);
        let e = ser("exp(t)-1", 8);
        assert_eq!(e.coeff(5), r(1, 120));
        assert_eq!(ser("ln(1+t)", 5).coeff(4), r(-1, 4));
    }

    #[test]
    fn gk_examples() {
        let p2 = RationalSeries::from_dimension_list(&[1, 2, 9, 60, 525]);
        let obs = gk_first_negative(&p2, 5).unwrap().unwrap();
        assert_eq!(
            (obs.degree, obs.factorial_form()),
            (5, "-15/5!".to_string())
        );
        assert_eq!(gk_first_negative(&ser("t/(1-t)", 30), 30).unwrap(), None);
        assert!(gk_first_negative(&ser("2t", 5), 5).is_err());
    }

    #[test]
    fn graded_gk() {
        let f = elementary::<UPoly>("exp(t)-1+u/2*t^2+u^2/6*t^3", 6).unwrap();
        let obs = gk_first_negative(&f, 6).unwrap().unwrap();
        assert_eq!(obs.degree, 6);
        assert_eq!(obs.factorial_form(), "-35*u^5/6!");
    }

    #[test]
    fn pair_check() {
        let f = RationalSeries::from_dimension_list(&[1, 2, 6, 20, 60, 182, 546]);
        let d = gk_pair_check(&f, &f, 7).unwrap();
        assert_eq!(d.valuation(), Some(7));
        assert_eq!(d.coeff(7), r(-7, 12));
        assert!(gk_pair_check(&ser("t", 5), &ser("t", 5), 5)
            .unwrap()
            .is_zero());
        let com = ser("exp(t)-1", 20);
        let lie = ser("-ln(1-t)", 20);
        assert!(gk_pair_check(&com, &lie, 20).unwrap().is_zero());
    }

    #[test]
    fn ode_examples() {
        let e: OdeExpression = "(1-t)f'-1".parse().unwrap();
        assert!(verify_ode(&ser("-ln(1-t)", 30), &e, 30).unwrap().passed());
        let e: OdeExpression = "f'".parse().unwrap();
        let c = verify_ode(&ser("t^2", 10), &e, 10).unwrap();
        assert_eq!(c.first_nonzero, Some((1, r(2, 1))));
        let bess = ser("exp(1-sqrt(1-2t))-1", 30);
        let e: OdeExpression = "(1-2t)f'^2-(f+1)^2".parse().unwrap();
        assert!(verify_ode(&bess, &e, 30).unwrap().passed());
        let e: OdeExpression = "(1-2t)(f'-f-1)^2-(f+1)^2".parse().unwrap();
        assert!(!verify_ode(&bess, &e, 30).unwrap().passed());
    }

    #[test]
    fn display_and_factorial_form() {
        let s = ser("t+t^2/2", 3);
        assert_eq!(s.to_string(), "1*t + 1/2*t^2 + O(t^4)");
        assert_eq!(s.factorial_form(2), "1/2!");
        let g = elementary::<UPoly>("u*t^2+t", 2).unwrap();
        assert_eq!(g.to_string(), "1*t + u*t^2 + O(t^3)");
    }

    #[test]
    fn mismatched_orders_truncate() {
        let s = ser("t", 5).add(&ser("t", 3));
        assert_eq!(s.order(), 3);
        assert!(s.was_truncated());
    }
}
