//! Permissible directions for a pair `(l1, l2)`.
//!
//! Everything is decided by the homogenized quadratic
//! `Q(a, b) = b^2/l2 - ab + a^2/l1` and the reflections
//! `T1(a, b) = (l1 b - a, b)`, `T2(a, b) = (a, l2 a - b)`, which preserve `Q`.
//! The cone `Q <= 0` is detected by sign; no root is ever approximated.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{int, ratio, Rational};
use crate::vertex::Direction;

/// Discriminant and (when rational) roots of `z^2/l2 - z + 1/l1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    pub ell1: u32,
    pub ell2: u32,
    /// `1 - 4/(l1 l2)`.
    pub discriminant: Rational,
    /// `(xi_minus, xi_plus)` when the discriminant is a rational square.
    pub roots_rational: Option<(Rational, Rational)>,
}

impl QuadraticData {
    pub fn new(ell1: u32, ell2: u32) -> Result<Self> {
        require_positive(ell1, ell2)?;
        let discriminant = int(1) - ratio(4, i64::from(ell1) * i64::from(ell2));
        let roots_rational = rational_sqrt(&discriminant).map(|s| {
            let half = ratio(i64::from(ell2), 2);
            (&half * (int(1) - &s), &half * (int(1) + &s))
        });
        Ok(QuadraticData {
            ell1,
            ell2,
            discriminant,
            roots_rational,
        })
    }

    /// Whether the roots are real.
    pub fn has_real_roots(&self) -> bool {
        !self.discriminant.is_negative()
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let exact = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(exact(q.numer())?, exact(q.denom())?))
}

fn require_positive(ell1: u32, ell2: u32) -> Result<()> {
    if ell1 == 0 || ell2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "multiplicities must be positive, got ({ell1}, {ell2})"
        )));
    }
    Ok(())
}

/// Which part of the permissible set a direction belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Orbit of `(1, 0)`.
    DiscreteA,
    /// Orbit of `(0, 1)`.
    DiscreteB,
    /// `Q(a, b) < 0`.
    ConeInterior,
    /// `Q(a, b) = 0`.
    ConeBoundary,
    NotPermissible,
}

impl Classification {
    pub fn is_permissible(self) -> bool {
        self != Classification::NotPermissible
    }

    pub fn is_discrete(self) -> bool {
        matches!(self, Classification::DiscreteA | Classification::DiscreteB)
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::DiscreteA => "DiscreteA",
            Classification::DiscreteB => "DiscreteB",
            Classification::ConeInterior => "ConeInterior",
            Classification::ConeBoundary => "ConeBoundary",
            Classification::NotPermissible => "NotPermissible",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Classification::DiscreteA,
            Classification::DiscreteB,
            Classification::ConeInterior,
            Classification::ConeBoundary,
            Classification::NotPermissible,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parts of `a k` into `l1` pieces and of `b k` into `l2` pieces; zero parts allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartitionPair {
    pub pa: Vec<u64>,
    pub pb: Vec<u64>,
    pub k: u64,
}

impl OrderedPartitionPair {
    /// `a b k^2 - k - sum pa^2 - sum pb^2 + 2`, which must be non-negative.
    pub fn genus_margin(&self, a: u64, b: u64) -> i128 {
        let k = i128::from(self.k);
        let sq = |p: &[u64]| {
            p.iter()
                .map(|&x| i128::from(x) * i128::from(x))
                .sum::<i128>()
        };
        i128::from(a) * i128::from(b) * k * k - k - sq(&self.pa) - sq(&self.pb) + 2
    }
}

/// `a^2 R(b/a) = b^2/l2 - ab + a^2/l1`.
pub fn r_eval(ell1: u32, ell2: u32, a: i64, b: i64) -> Rational {
    let (l1, l2) = (i64::from(ell1), i64::from(ell2));
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    Rational::new(&b * &b, l2.into()) - Rational::from_integer(&a * &b)
        + Rational::new(&a * &a, l1.into())
}

pub fn t1(ell1: u32, a: i64, b: i64) -> (i64, i64) {
    (i64::from(ell1) * b - a, b)
}

pub fn t2(ell2: u32, a: i64, b: i64) -> (i64, i64) {
    (a, i64::from(ell2) * a - b)
}

/// Reflection on dimension vectors of the `m`-Kronecker quiver.
pub fn reflection_r(m: u32, a: i64, b: i64) -> (i64, i64) {
    (b, i64::from(m) * b - a)
}

pub fn reflection_r_inv(m: u32, a: i64, b: i64) -> (i64, i64) {
    (i64::from(m) * a - b, a)
}

type Table = &'static [(i64, i64)];

/// Pairs whose orbits are finite; `(A*, B*)` listed explicitly.
fn special_tables(ell1: u32, ell2: u32) -> Option<(Table, Table)> {
    Some(match (ell1, ell2) {
        (1, 1) => (&[(1, 1)], &[(1, 1)]),
        (1, 2) => (&[(1, 2)], &[(1, 1)]),
        (2, 1) => (&[(1, 1)], &[(2, 1)]),
        (1, 3) => (&[(1, 3), (2, 3)], &[(1, 1), (1, 2)]),
        (3, 1) => (&[(1, 1), (2, 1)], &[(3, 1), (3, 2)]),
        _ => return None,
    })
}

/// The orbits `A*` of `(1, 0)` under `T2, T1, T2, ...` and `B*` of `(0, 1)`
/// under `T1, T2, T1, ...`, restricted to `a + b <= degree_bound`.
pub fn discrete_series(
    ell1: u32,
    ell2: u32,
    degree_bound: u32,
) -> Result<(Vec<Direction>, Vec<Direction>)> {
    require_positive(ell1, ell2)?;
    let within = |&(a, b): &(i64, i64)| a + b <= i64::from(degree_bound);
    if let Some((sa, sb)) = special_tables(ell1, ell2) {
        let pick = |t: &[(i64, i64)]| -> Result<Vec<Direction>> {
            t.iter()
                .filter(|v| within(v))
                .map(|&(a, b)| Direction::new(a, b))
                .collect()
        };
        return Ok((pick(sa)?, pick(sb)?));
    }
    let orbit = |start: (i64, i64), first_t2: bool| -> Result<Vec<Direction>> {
        let mut out = Vec::new();
        let mut v = start;
        let mut use_t2 = first_t2;
        loop {
            let next = if use_t2 {
                t2(ell2, v.0, v.1)
            } else {
                t1(ell1, v.0, v.1)
            };
            // outside the special pairs the orbit grows strictly
            if next.0 <= 0 || next.1 <= 0 || next.0 + next.1 <= v.0 + v.1 || !within(&next) {
                return Ok(out);
            }
            out.push(Direction::new(next.0, next.1)?);
            v = next;
            use_t2 = !use_t2;
        }
    };
    Ok((orbit((1, 0), true)?, orbit((0, 1), false)?))
}

/// Places a primitive interior direction in the permissible set or outside it.
pub fn classify(ell1: u32, ell2: u32, a: i64, b: i64) -> Result<Classification> {
    require_positive(ell1, ell2)?;
    Direction::interior(a, b)?;
    if let Some((sa, sb)) = special_tables(ell1, ell2) {
        return Ok(if sa.contains(&(a, b)) {
            Classification::DiscreteA
        } else if sb.contains(&(a, b)) {
            Classification::DiscreteB
        } else {
            Classification::NotPermissible
        });
    }
    let q = r_eval(ell1, ell2, a, b);
    if q.is_negative() {
        return Ok(Classification::ConeInterior);
    }
    if q.is_zero() {
        return Ok(Classification::ConeBoundary);
    }
    // Outside the cone, b/a < xi- <= 2/l1 (T1 shrinks a) or b/a > xi+ >= l2/2
    // (T2 shrinks b); each step lowers a + b until the quadrant is left.
    let mut v = (a, b);
    while v.0 > 0 && v.1 > 0 {
        let next = if 2 * v.1 > i64::from(ell2) * v.0 {
            t2(ell2, v.0, v.1)
        } else {
            t1(ell1, v.0, v.1)
        };
        debug_assert!(next.0 + next.1 < v.0 + v.1);
        v = next;
    }
    Ok(match v {
        (1, 0) => Classification::DiscreteA,
        (0, 1) => Classification::DiscreteB,
        _ => Classification::NotPermissible,
    })
}

/// Every primitive interior direction with `a + b <= max_degree`, by
/// decreasing slope, with its classification.
pub fn classify_all(
    ell1: u32,
    ell2: u32,
    max_degree: u32,
) -> Result<Vec<(Direction, Classification)>> {
    let mut out = Vec::new();
    for s in 2..=i64::from(max_degree) {
        for a in 1..s {
            let b = s - a;
            if a.gcd(&b) == 1 {
                let d = Direction::new(a, b)?;
                out.push((d, classify(ell1, ell2, a, b)?));
            }
        }
    }
    out.sort_by(|x, y| y.0.cmp_slope(x.0));
    Ok(out)
}

/// Most balanced split of `total` into `parts` pieces, non-increasing.
fn balanced(total: u64, parts: u32) -> Vec<u64> {
    let (q, r) = total.div_rem(&u64::from(parts));
    (0..u64::from(parts))
        .map(|i| q + u64::from(i < r))
        .collect()
}

/// Searches `k = 1..=k_max` for partitions satisfying
/// `a b k^2 - k - sum p_i^2 - sum p'_j^2 + 2 >= 0`.
///
/// For each `k` only the balanced partitions are tried: they minimize both
/// sums of squares, so a witness exists at `k` iff they are one.
pub fn permissibility_oracle(
    ell1: u32,
    ell2: u32,
    a: i64,
    b: i64,
    k_max: u64,
) -> Result<Option<OrderedPartitionPair>> {
    require_positive(ell1, ell2)?;
    Direction::interior(a, b)?;
    let (a, b) = (a as u64, b as u64);
    for k in 1..=k_max {
        let cand = OrderedPartitionPair {
            pa: balanced(a * k, ell1),
            pb: balanced(b * k, ell2),
            k,
        };
        if cand.genus_margin(a, b) >= 0 {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Smallest `k` at which the genus inequality can hold with exactly balanced
/// partitions, or `None` if no `k` works.
///
/// With `c = ab - a^2/l1 - b^2/l2`, exact balance needs `l1 | ak` and
/// `l2 | bk` and the inequality becomes `c k^2 - k + 2 >= 0`. For `c < 0`
/// only `k = 1` can succeed, so 1 is returned.
pub fn witness_k_bound(ell1: u32, ell2: u32, a: i64, b: i64) -> Result<Option<u64>> {
    require_positive(ell1, ell2)?;
    Direction::interior(a, b)?;
    let c = -r_eval(ell1, ell2, a, b);
    if c.is_negative() {
        return Ok(Some(1));
    }
    let step1 = u64::from(ell1) / u64::from(ell1).gcd(&(a as u64));
    let step2 = u64::from(ell2) / u64::from(ell2).gcd(&(b as u64));
    let step = step1.lcm(&step2);
    let holds = |k: u64| {
        let kr = int(k as i64);
        !(&c * &kr * &kr - &kr + int(2)).is_negative()
    };
    if c.is_zero() {
        return Ok((step <= 2).then_some(step));
    }
    // c k^2 - k + 2 >= 0 for all k >= 1/c
    let mut k = step;
    loop {
        if holds(k) {
            return Ok(Some(k));
        }
        k += step;
    }
}
