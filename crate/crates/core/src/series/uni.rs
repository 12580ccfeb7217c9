use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{int, write_coeff_monomial, Rational, Series};
use crate::error::{Error, Result};

/// Univariate series `sum_k c_k z^k` known exactly up to `z^order`.
///
/// Wall functions are stored this way, with `z = x^a y^b` on the ray
/// `(a, b)`. Coefficients are dense and the constant term is always present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniSeries {
    order: u32,
    coeffs: Vec<Rational>,
}

impl UniSeries {
    /// Pads with zeros or truncates `coeffs` to length `order + 1`.
    pub fn new(mut coeffs: Vec<Rational>, order: u32) -> Self {
        coeffs.resize(order as usize + 1, Rational::zero());
        UniSeries { order, coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn one(order: u32) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero above the order is not implied, so this
    /// panics for `k > order`.
    pub fn coeff(&self, k: u32) -> &Rational {
        &self.coeffs[k as usize]
    }

    pub(crate) fn coeff_mut(&mut self, k: u32) -> &mut Rational {
        &mut self.coeffs[k as usize]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// True if the series equals 1 up to its order.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: u32) -> UniSeries {
        assert!(order <= self.order, "cannot extend truncation order");
        UniSeries::new(self.coeffs[..=order as usize].to_vec(), order)
    }

    /// Compares coefficients up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &UniSeries) -> bool {
        let k = self.order.min(other.order) as usize;
        self.coeffs[..=k] == other.coeffs[..=k]
    }

    pub fn mul(&self, other: &UniSeries) -> UniSeries {
        let order = self.order.min(other.order) as usize;
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        UniSeries::new(out, order as u32)
    }

    pub fn inverse(&self) -> Result<UniSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(UniSeries::new(out, self.order))
    }

    pub fn pow_i64(&self, n: i64) -> Result<UniSeries> {
        let mut base = self.clone();
        let mut acc = UniSeries::one(self.order);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if n < 0 {
            acc.inverse()
        } else {
            Ok(acc)
        }
    }

    fn require_unit_one(&self) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne {
                found: self.coeffs[0].to_string(),
            });
        }
        Ok(())
    }

    /// `f^q` via the power recurrence `n g_n = sum_k ((q+1)k - n) f_k g_{n-k}`.
    ///
    /// Independent of the binomial-series route used by [`Series::pow_rational`].
    pub fn pow_rational(&self, q: &Rational) -> Result<UniSeries> {
        self.require_unit_one()?;
        let mut g: Vec<Rational> = vec![Rational::one()];
        let q1 = q + Rational::one();
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if f.is_zero() {
                    continue;
                }
                let w = &q1 * int(k as i64) - int(n as i64);
                acc += w * f * &g[n - k];
            }
            g.push(acc / int(n as i64));
        }
        Ok(UniSeries::new(g, self.order))
    }

    /// `log f` from `z L' = z f' / f`.
    pub fn log(&self) -> Result<UniSeries> {
        self.require_unit_one()?;
        let f = &self.coeffs;
        let mut l: Vec<Rational> = vec![Rational::zero()];
        for n in 1..f.len() {
            let mut acc = int(n as i64) * &f[n];
            for k in 1..n {
                acc -= int(k as i64) * &l[k] * &f[n - k];
            }
            l.push(acc / int(n as i64));
        }
        Ok(UniSeries::new(l, self.order))
    }

    pub fn exp(&self) -> Result<UniSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero {
                found: self.coeffs[0].to_string(),
            });
        }
        let a = &self.coeffs;
        let mut e: Vec<Rational> = vec![Rational::one()];
        for n in 1..a.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += int(k as i64) * &a[k] * &e[n - k];
            }
            e.push(acc / int(n as i64));
        }
        Ok(UniSeries::new(e, self.order))
    }

    /// Evaluates at a bivariate series `z` with zero constant term (Horner).
    pub fn evaluate(&self, z: &Series) -> Series {
        debug_assert!(z.constant_term().is_zero());
        let order = z.order();
        let mut acc = Series::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(z);
            acc = acc.add_unchecked(&Series::constant(c.clone(), order));
        }
        acc
    }

    /// Embeds as a bivariate series on the ray `(a, b)`, i.e. `z -> x^a y^b`,
    /// truncated at total degree `order`.
    pub fn embed_on_ray(&self, a: u32, b: u32, order: u32) -> Result<Series> {
        let needed = order / (a + b);
        if needed > self.order {
            return Err(Error::InsufficientPrecision {
                a: a as i64,
                b: b as i64,
                available: self.order,
                required: needed,
            });
        }
        Ok(Series::from_terms(
            order,
            self.coeffs
                .iter()
                .enumerate()
                .take(needed as usize + 1)
                .map(|(k, c)| ((a * k as u32, b * k as u32), c.clone())),
        ))
    }

    /// Highest index carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map(|k| k as u32)
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            write_coeff_monomial(f, c, first, &var)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl UniSeries {
    /// `Display` followed by the truncation marker `O(z^{order+1})`.
    pub fn to_string_with_order(&self) -> String {
        format!("{self} + O(z^{})", self.order + 1)
    }

    /// Sign of the first nonzero non-constant coefficient.
    pub fn leading_sign(&self) -> Option<bool> {
        self.coeffs[1..]
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_positive())
    }
}
