//! Invariants read off wall functions: logarithmic curve-count coefficients,
//! framed quiver Euler characteristics, the slope-one series and the Euler
//! form of the Kronecker quiver.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scatter::{Generators, ScatteringDiagram};
use crate::series::{binomial, is_integral, Rational, UniSeries};
use crate::vertex::Direction;

/// `c^k` with `log f = sum_k k c^k z^k`, for `k = 1..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWCoefficients {
    pub direction: Direction,
    values: Vec<Rational>,
}

impl GWCoefficients {
    /// Highest `k` available.
    pub fn max_k(&self) -> u32 {
        self.values.len() as u32
    }

    /// `c^k`; `None` outside `1..=max_k`.
    pub fn get(&self, k: u32) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    /// `(k, c^k)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u32 + 1, c))
    }
}

pub fn gw_coefficients(f: &UniSeries, a: i64, b: i64) -> Result<GWCoefficients> {
    let direction = Direction::interior(a, b)?;
    let log = f.log()?;
    let values = (1..=log.order())
        .map(|k| log.coeff(k) / Rational::from_integer(k.into()))
        .collect();
    Ok(GWCoefficients { direction, values })
}

/// Which vertex carries the framing line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Framing {
    Back,
    Front,
}

/// Coefficients `chi(k)` of `B = f^{a/m}` or `F = f^{b/m}`, for `k = 1..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSeries {
    pub direction: Direction,
    pub framing: Framing,
    pub m: u32,
    series: UniSeries,
}

impl EulerSeries {
    /// The full series, constant term included.
    pub fn series(&self) -> &UniSeries {
        &self.series
    }

    pub fn max_k(&self) -> u32 {
        self.series.order()
    }

    pub fn chi(&self, k: u32) -> Option<&Rational> {
        (1..=self.max_k())
            .contains(&k)
            .then(|| self.series.coeff(k))
    }

    pub fn is_integral(&self, k: u32) -> Option<bool> {
        self.chi(k).map(is_integral)
    }

    pub fn all_integral(&self) -> bool {
        self.series.coeffs().iter().all(is_integral)
    }

    /// Recovers the wall function: `B^{m/a}` or `F^{m/b}`.
    pub fn wall_function(&self) -> Result<UniSeries> {
        let e = match self.framing {
            Framing::Back => self.direction.a(),
            Framing::Front => self.direction.b(),
        };
        self.series
            .pow_rational(&Rational::new(i64::from(self.m).into(), e.into()))
    }
}

/// `f^{a/m}` (back framing) or `f^{b/m}` (front framing) for the wall
/// function `f` of `(a, b)` in the diagram with both multiplicities `m`.
pub fn framed_series(
    f: &UniSeries,
    a: i64,
    b: i64,
    m: u32,
    framing: Framing,
) -> Result<EulerSeries> {
    let direction = Direction::interior(a, b)?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let e = match framing {
        Framing::Back => a,
        Framing::Front => b,
    };
    let series = f.pow_rational(&Rational::new(e.into(), i64::from(m).into()))?;
    Ok(EulerSeries {
        direction,
        framing,
        m,
        series,
    })
}

/// [`framed_series`] for a wall of a diagram generated with `l1 = l2 = m`.
pub fn euler_series(
    d: &ScatteringDiagram,
    a: i64,
    b: i64,
    framing: Framing,
) -> Result<EulerSeries> {
    let m = match d.source() {
        Generators::Kronecker { ell1, ell2 } if ell1 == ell2 => *ell1,
        Generators::Kronecker { ell1, ell2 } => {
            return Err(Error::UnequalMultiplicities {
                l1: *ell1,
                l2: *ell2,
            })
        }
        _ => {
            return Err(Error::InvalidArgument(
                "quiver series need a diagram generated by (1+x)^m and (1+y)^m".into(),
            ))
        }
    };
    framed_series(&d.wall_function(a, b)?, a, b, m, framing)
}

/// `sum_{k <= K} C(rk + 1, k) / (rk + 1) z^k`, which for `r >= 1` equals
/// `sum_k C(rk, k) / ((r - 1)k + 1) z^k`.
pub fn s_r_series(r: u32, order: u32) -> UniSeries {
    let r = u64::from(r);
    let coeffs = (0..=u64::from(order))
        .map(|k| {
            let top = r * k + 1;
            Rational::new(binomial(top, k), top.into())
        })
        .collect();
    UniSeries::new(coeffs, order)
}

/// Whether `z S^r - S + 1 = 0` to the order of `s`.
pub fn satisfies_s_r_relation(s: &UniSeries, r: u32) -> Result<bool> {
    let sr = s.pow_i64(i64::from(r))?;
    let mut lhs: Vec<Rational> = vec![Rational::zero(); s.order() as usize + 1];
    for k in 1..=s.order() {
        lhs[k as usize] += sr.coeff(k - 1);
    }
    for (k, c) in s.coeffs().iter().enumerate() {
        lhs[k] -= c;
    }
    lhs[0] += Rational::one();
    Ok(lhs.iter().all(Zero::is_zero))
}

pub fn s_r_algebraic_check(r: u32, order: u32) -> Result<bool> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    satisfies_s_r_relation(&s_r_series(r, order), r)
}

/// `S_r^{l1 l2}` with `r = (l1 - 1)(l2 - 1)`, to `z^K`.
pub fn slope_one_conjecture_series(ell1: u32, ell2: u32, order: u32) -> Result<UniSeries> {
    if ell1 == 0 || ell2 == 0 {
        return Err(Error::InvalidArgument(
            "multiplicities must be positive".into(),
        ));
    }
    let r = (ell1 - 1) * (ell2 - 1);
    s_r_series(r, order).pow_i64(i64::from(ell1) * i64::from(ell2))
}

/// Dimension vector `(d1, d2)` of a Kronecker quiver representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DimensionVector {
    pub d1: u64,
    pub d2: u64,
}

impl DimensionVector {
    pub fn new(d1: u64, d2: u64) -> Result<Self> {
        if d1 == 0 && d2 == 0 {
            return Err(Error::InvalidArgument("dimension vector is zero".into()));
        }
        Ok(DimensionVector { d1, d2 })
    }
}

/// `<d, e> = d1 e1 + d2 e2 - m d1 e2`; not symmetric.
pub fn euler_form(d: DimensionVector, e: DimensionVector, m: u32) -> i128 {
    let (d1, d2, e1, e2) = (
        i128::from(d.d1),
        i128::from(d.d2),
        i128::from(e.d1),
        i128::from(e.d2),
    );
    d1 * e1 + d2 * e2 - i128::from(m) * d1 * e2
}

/// Whether `(1,0)`-semistable representations of dimension `d` exist,
/// i.e. `<d, d> <= 1`, for primitive `d`.
pub fn semistable_exists(d: DimensionVector, m: u32) -> Result<bool> {
    if d.d1.gcd(&d.d2) != 1 {
        return Err(Error::NotPrimitive {
            a: d.d1 as i64,
            b: d.d2 as i64,
        });
    }
    Ok(euler_form(d, d, m) <= 1)
}
