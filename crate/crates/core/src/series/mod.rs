//! Truncated bivariate power series over the rationals.
//!
//! A [`Series`] lives in `Q[[x, y]] / (total degree > N)`. The deformation
//! parameter `t` of the tropical vertex group is not a separate variable:
//! every function appearing in a factorization is a series in
//! `(tx)^a (ty)^b`, so the `t`-order of a term always equals its total
//! `(x, y)`-degree and truncating in `t` is truncating in total degree.
//!
//! Terms are stored sparsely, keyed by [`Monomial`], which orders by total
//! degree first. Zero coefficients are never stored.

mod rational;
mod uni;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use rational::{
    binomial, binomial_rational, int, is_integral, parse_rational, ratio, Rational,
};
pub use uni::UniSeries;

use crate::error::{Error, Result};

/// Exponent pair of `x^x y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }
}

// Graded: total degree first, then higher x-power first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Q[[x, y]]` truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    order: u32,
    terms: BTreeMap<Monomial, Rational>,
}

#[allow(clippy::should_implement_trait)]
impl Series {
    pub fn zero(order: u32) -> Self {
        Series {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: u32) -> Self {
        Self::monomial(c, 0, 0, order)
    }

    /// `c x^x y^y`, or zero if the degree exceeds the truncation order.
    pub fn monomial(c: Rational, x: u32, y: u32, order: u32) -> Self {
        Self::from_terms(order, [((x, y), c)])
    }

    /// Builds a series from `((x, y), coefficient)` pairs. Repeated exponents
    /// are summed; terms above the truncation order are dropped.
    pub fn from_terms<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut s = Series::zero(order);
        for ((x, y), c) in terms {
            s.add_term(Monomial::new(x, y), c);
        }
        s
    }

    /// Convenience constructor with small integer coefficients.
    pub fn from_ints(order: u32, terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(order, terms.iter().map(|&(m, c)| (m, int(c))))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, x: u32, y: u32) -> Rational {
        self.terms
            .get(&Monomial::new(x, y))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Lowest total degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous(&self, degree: u32) -> Series {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `order`.
    ///
    /// Panics if `order` exceeds the current truncation order: precision
    /// cannot be manufactured.
    pub fn truncate(&self, order: u32) -> Series {
        assert!(
            order <= self.order,
            "cannot extend truncation order {} to {}",
            self.order,
            order
        );
        Series {
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree() > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::TruncationMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.order);
        }
        Series {
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `x^x y^y`.
    pub fn shift(&self, x: u32, y: u32) -> Series {
        let step = Monomial::new(x, y);
        let mut out = Series::zero(self.order);
        for (m, c) in &self.terms {
            out.add_term(m.times(step), c.clone());
        }
        out
    }

    pub(crate) fn add_unchecked(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub(crate) fn mul_unchecked(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > order {
                break;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > order {
                    break;
                }
                let prod = c1 * c2;
                match acc.entry(m1.times(*m2)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Series { order, terms: acc }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow_u32(&self, mut n: u32) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.order);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Splits a unit with constant term 1 into its non-constant part.
    fn unit_tail(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::ConstantTermNotOne {
                found: c0.to_string(),
            });
        }
        let mut tail = self.clone();
        tail.terms.remove(&Monomial::ONE);
        Ok(tail)
    }

    /// `sum_{j >= 0} coeff(j) * u^j`, for `u` without constant term.
    fn power_sum<F>(u: &Series, mut coeff: F) -> Series
    where
        F: FnMut(u32) -> Rational,
    {
        debug_assert!(u.constant_term().is_zero());
        let mut out = Series::constant(coeff(0), u.order);
        let mut power = Series::one(u.order);
        for j in 1..=u.order {
            power = power.mul_unchecked(u);
            if power.is_zero() {
                break;
            }
            out = out.add_unchecked(&power.scale(&coeff(j)));
        }
        out
    }

    /// Multiplicative inverse of a unit: `s * r = 1` up to the truncation order.
    pub fn invert_unit(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        // s = c0 (1 + u)  =>  1/s = (1/c0) sum (-u)^j
        let mut u = self.scale(&inv0);
        u.terms.remove(&Monomial::ONE);
        let r = Self::power_sum(&u, |j| if j % 2 == 0 { int(1) } else { int(-1) });
        Ok(r.scale(&inv0))
    }

    /// `s^q` for rational `q` via the binomial series; requires constant term 1.
    pub fn pow_rational(&self, q: &Rational) -> Result<Series> {
        let u = self.unit_tail()?;
        Ok(Self::power_sum(&u, |j| binomial_rational(q, j)))
    }

    /// Integer power, negative exponents through [`Series::invert_unit`].
    pub fn pow_i64(&self, n: i64) -> Result<Series> {
        let p = self.pow_u32(n.unsigned_abs() as u32);
        if n < 0 {
            p.invert_unit()
        } else {
            Ok(p)
        }
    }

    /// `log(s)` for constant term 1.
    pub fn log_unit(&self) -> Result<Series> {
        let u = self.unit_tail()?;
        Ok(Self::power_sum(&u, |j| match j {
            0 => Rational::zero(),
            _ if j % 2 == 1 => ratio(1, j as i64),
            _ => ratio(-1, j as i64),
        }))
    }

    /// `exp(s)` for constant term 0.
    pub fn exp(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::ConstantTermNotZero {
                found: c0.to_string(),
            });
        }
        let mut factorial = Rational::one();
        Ok(Self::power_sum(self, |j| {
            if j > 0 {
                factorial *= int(j as i64);
            }
            factorial.recip()
        }))
    }

    /// Image under the ring map `x -> x*u, y -> y*v`.
    ///
    /// `u` and `v` must be units; the result is truncated at the common order.
    pub fn substitute(&self, u: &Series, v: &Series) -> Result<Series> {
        self.check_order(u)?;
        self.check_order(v)?;
        if u.constant_term().is_zero() || v.constant_term().is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(self.substitute_unchecked(u, v))
    }

    pub(crate) fn substitute_unchecked(&self, u: &Series, v: &Series) -> Series {
        let order = self.order;
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let big_x = u.shift(1, 0);
        let big_y = v.shift(0, 1);
        let mut x_pows = vec![Series::one(order)];
        for i in 1..=max_x as usize {
            let next = x_pows[i - 1].mul_unchecked(&big_x);
            x_pows.push(next);
        }
        let mut y_pows = vec![Series::one(order)];
        for j in 1..=max_y as usize {
            let next = y_pows[j - 1].mul_unchecked(&big_y);
            y_pows.push(next);
        }
        // Group by x-exponent: sum_i X^i * (sum_j c_ij Y^j).
        let mut by_x: BTreeMap<u32, Series> = BTreeMap::new();
        for (m, c) in &self.terms {
            let inner = by_x.entry(m.x).or_insert_with(|| Series::zero(order));
            *inner = inner.add_unchecked(&y_pows[m.y as usize].scale(c));
        }
        let mut out = Series::zero(order);
        for (i, inner) in by_x {
            out = out.add_unchecked(&x_pows[i as usize].mul_unchecked(&inner));
        }
        out
    }

    /// Reads a series supported on the ray `(a, b)` as a series in
    /// `z = x^a y^b`, truncated at `z^floor(N / (a + b))`.
    pub fn restrict_to_ray(&self, a: i64, b: i64) -> Result<UniSeries> {
        let (a, b) = ray_exponents(a, b)?;
        let k_max = self.order / (a + b);
        let mut coeffs = vec![Rational::zero(); k_max as usize + 1];
        for (m, c) in &self.terms {
            let k = m.x.checked_div(a).unwrap_or(m.y / b);
            if m.x != a * k || m.y != b * k {
                return Err(Error::OffRay {
                    a: a as i64,
                    b: b as i64,
                    x: m.x,
                    y: m.y,
                });
            }
            coeffs[k as usize] = c.clone();
        }
        Ok(UniSeries::new(coeffs, k_max))
    }

    /// The Euler operator `x d/dx`.
    pub fn x_euler(&self) -> Series {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (*m, c * int(m.x as i64)))
                .collect(),
        }
    }

    /// The Euler operator `y d/dy`.
    pub fn y_euler(&self) -> Series {
        Series {
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (*m, c * int(m.y as i64)))
                .collect(),
        }
    }
}

/// Validates a closed-first-quadrant primitive direction and returns it unsigned.
pub(crate) fn ray_exponents(a: i64, b: i64) -> Result<(u32, u32)> {
    if a < 0 || b < 0 {
        return Err(Error::OutsideQuadrant {
            a,
            b,
            region: "in the closed first quadrant",
        });
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotPrimitive { a, b });
    }
    Ok((a as u32, b as u32))
}

fn write_coeff_monomial(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    first: bool,
    vars: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if neg {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    if vars.is_empty() {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        if mag.is_integer() {
            write!(f, "{mag}")?;
        } else {
            write!(f, "({mag})")?;
        }
    }
    write!(f, "{vars}")
}

fn var_power(name: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let vars = format!("{}{}", var_power("x", m.x), var_power("y", m.y));
            write_coeff_monomial(f, c, i == 0, &vars)?;
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: u32, terms: &[((u32, u32), i64)]) -> Series {
        Series::from_ints(order, terms)
    }

    #[test]
    fn add_examples() {
        let a = s(4, &[((0, 0), 1), ((1, 1), 1)]);
        let b = s(4, &[((1, 1), -1)]);
        assert_eq!(a.add(&b).unwrap(), Series::one(4));
        let c = s(4, &[((0, 0), 1), ((1, 0), 1)]);
        let d = s(4, &[((0, 0), 1), ((0, 1), 1)]);
        assert_eq!(
            c.add(&d).unwrap(),
            s(4, &[((0, 0), 2), ((1, 0), 1), ((0, 1), 1)])
        );
        assert_eq!(a.add(&Series::zero(4)).unwrap(), a);
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = Series::one(3).add(&Series::one(4)).unwrap_err();
        assert_eq!(err, Error::TruncationMismatch { left: 3, right: 4 });
        assert!(Series::one(3).mul(&Series::one(4)).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = s(4, &[((0, 0), 1), ((1, 1), 1)]);
        let b = s(4, &[((0, 0), 1), ((1, 1), -1)]);
        assert_eq!(a.mul(&b).unwrap(), s(4, &[((0, 0), 1), ((2, 2), -1)]));
        let c = s(2, &[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(
            c.mul(&c).unwrap(),
            s(2, &[((0, 0), 1), ((1, 0), 2), ((2, 0), 1)])
        );
        // F_{1,2} for m = 2: (1 + xy^2)^2 with t absorbed.
        let d = s(6, &[((0, 0), 1), ((1, 2), 1)]);
        assert_eq!(
            d.mul(&d).unwrap(),
            s(6, &[((0, 0), 1), ((1, 2), 2), ((2, 4), 1)])
        );
    }

    #[test]
    fn truncation_drops_high_terms() {
        let a = s(3, &[((0, 0), 1), ((2, 2), 5)]);
        assert_eq!(a, Series::one(3));
        let b = s(5, &[((0, 0), 1), ((1, 1), 1), ((2, 2), 1)]);
        assert_eq!(b.truncate(3), s(3, &[((0, 0), 1), ((1, 1), 1)]));
    }

    #[test]
    fn invert_examples() {
        let a = s(6, &[((0, 0), 1), ((1, 1), -1)]);
        assert_eq!(
            a.invert_unit().unwrap(),
            s(6, &[((0, 0), 1), ((1, 1), 1), ((2, 2), 1), ((3, 3), 1)])
        );
        assert_eq!(Series::one(5).invert_unit().unwrap(), Series::one(5));
        let b = s(4, &[((0, 0), 3), ((1, 0), 1)]);
        assert_eq!(b.mul(&b.invert_unit().unwrap()).unwrap(), Series::one(4));
        assert_eq!(s(4, &[((1, 0), 1)]).invert_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn pow_rational_examples() {
        // (1 - xy)^-4 has square root (1 - xy)^-2.
        let f = s(8, &[((0, 0), 1), ((1, 1), -1)]).pow_i64(-4).unwrap();
        let root = f.pow_rational(&ratio(1, 2)).unwrap();
        assert_eq!(
            root,
            s(
                8,
                &[
                    ((0, 0), 1),
                    ((1, 1), 2),
                    ((2, 2), 3),
                    ((3, 3), 4),
                    ((4, 4), 5)
                ]
            )
        );
        assert_eq!(f.pow_rational(&int(0)).unwrap(), Series::one(8));
        let g = s(6, &[((0, 0), 1), ((1, 0), 2), ((0, 1), -1), ((1, 1), 3)]);
        let back = g
            .pow_rational(&ratio(2, 3))
            .unwrap()
            .pow_rational(&ratio(3, 2))
            .unwrap();
        assert_eq!(back, g);
        assert!(s(4, &[((0, 0), 2)]).pow_rational(&int(1)).is_err());
    }

    #[test]
    fn pow_rational_matches_integer_powers() {
        let g = s(7, &[((0, 0), 1), ((1, 0), 2), ((0, 1), -1), ((1, 1), 3)]);
        for n in -3..=4 {
            assert_eq!(g.pow_rational(&int(n)).unwrap(), g.pow_i64(n).unwrap());
        }
    }

    #[test]
    fn log_and_exp_examples() {
        let f = s(6, &[((0, 0), 1), ((1, 1), 1)]);
        let expected = Series::from_terms(
            6,
            [
                ((1, 1), int(1)),
                ((2, 2), ratio(-1, 2)),
                ((3, 3), ratio(1, 3)),
            ],
        );
        assert_eq!(f.log_unit().unwrap(), expected);
        assert!(Series::one(6).log_unit().unwrap().is_zero());
        assert_eq!(Series::zero(6).exp().unwrap(), Series::one(6));
        let xy = s(4, &[((1, 1), 1)]);
        assert_eq!(
            xy.exp().unwrap(),
            Series::from_terms(
                4,
                [((0, 0), int(1)), ((1, 1), int(1)), ((2, 2), ratio(1, 2))]
            )
        );
        let one_plus_x = s(5, &[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(one_plus_x.log_unit().unwrap().exp().unwrap(), one_plus_x);
        assert!(Series::one(3).exp().is_err());
    }

    #[test]
    fn substitute_examples() {
        let g = s(5, &[((0, 0), 2), ((2, 1), -3), ((0, 3), 1)]);
        let one = Series::one(5);
        assert_eq!(g.substitute(&one, &one).unwrap(), g);
        let xy = s(3, &[((1, 1), 1)]);
        let u = s(3, &[((0, 0), 1), ((0, 1), 1)]);
        assert_eq!(
            xy.substitute(&u, &Series::one(3)).unwrap(),
            s(3, &[((1, 1), 1), ((1, 2), 1)])
        );
        assert_eq!(
            xy.substitute(&Series::zero(3), &Series::one(3)),
            Err(Error::NotAUnit)
        );
    }

    #[test]
    fn restrict_examples() {
        let f = s(9, &[((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
        let r = f.restrict_to_ray(1, 2).unwrap();
        assert_eq!(r.coeffs(), &[int(1), int(2), int(1), int(0)]);
        assert_eq!(r.order(), 3);
        assert!(Series::one(4).restrict_to_ray(2, 3).unwrap().is_one());
        let g = s(9, &[((0, 0), 1), ((1, 1), 1)]);
        assert!(matches!(g.restrict_to_ray(1, 2), Err(Error::OffRay { .. })));
        assert!(matches!(
            g.restrict_to_ray(2, 2),
            Err(Error::NotPrimitive { .. })
        ));
        let h = s(8, &[((0, 0), 1), ((1, 1), -1)]).pow_i64(-4).unwrap();
        let r = h.restrict_to_ray(1, 1).unwrap();
        assert_eq!(r.coeffs(), &[int(1), int(4), int(10), int(20), int(35)]);
    }

    #[test]
    fn display_is_readable() {
        let g = Series::from_terms(
            3,
            [((0, 0), int(1)), ((1, 1), ratio(-1, 2)), ((0, 2), int(3))],
        );
        assert_eq!(g.to_string(), "1-(1/2)xy+3y^2 + O(deg 4)");
    }
}
