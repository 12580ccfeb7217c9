//! Elements of the tropical vertex group.
//!
//! An element acts on `Q[[x, y]]` (truncated) as the ring map
//! `x -> x*u, y -> y*v` for unit multipliers `u`, `v` with constant term 1.
//! Composition is composition of ring maps: `(f ∘ g)(s) = f(g(s))`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::{binomial, Rational, Series, UniSeries};

/// A primitive integer vector `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    a: i64,
    b: i64,
}

impl Direction {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a.gcd(&b) != 1 {
            return Err(Error::NotPrimitive { a, b });
        }
        Ok(Direction { a, b })
    }

    /// A primitive direction with `a > 0` and `b > 0`.
    pub fn interior(a: i64, b: i64) -> Result<Self> {
        let d = Self::new(a, b)?;
        if !d.is_interior() {
            return Err(Error::OutsideQuadrant {
                a,
                b,
                region: "strictly in the first quadrant",
            });
        }
        Ok(d)
    }

    pub fn a(self) -> i64 {
        self.a
    }

    pub fn b(self) -> i64 {
        self.b
    }

    pub fn is_interior(self) -> bool {
        self.a > 0 && self.b > 0
    }

    pub fn in_closed_quadrant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// Total degree `a + b` of `z = x^a y^b`.
    pub fn degree(self) -> u32 {
        (self.a + self.b) as u32
    }

    /// Compares slopes `b/a` exactly, for closed-first-quadrant directions.
    /// `(0, 1)` has the largest slope.
    pub fn cmp_slope(self, other: Direction) -> Ordering {
        (self.b * other.a).cmp(&(other.b * self.a))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A direction in the closed first quadrant with its attached function
/// `f(z)`, `z = x^a y^b`, normalized to constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    direction: Direction,
    function: UniSeries,
}

impl Wall {
    pub fn new(direction: Direction, function: UniSeries) -> Result<Self> {
        if !direction.in_closed_quadrant() {
            return Err(Error::OutsideQuadrant {
                a: direction.a,
                b: direction.b,
                region: "in the closed first quadrant",
            });
        }
        if !function.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne {
                found: function.constant_term().to_string(),
            });
        }
        Ok(Wall {
            direction,
            function,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn function(&self) -> &UniSeries {
        &self.function
    }

    pub(crate) fn function_mut(&mut self) -> &mut UniSeries {
        &mut self.function
    }

    pub fn inverse(&self) -> Wall {
        Wall {
            direction: self.direction,
            function: self
                .function
                .inverse()
                .expect("wall functions have constant term 1"),
        }
    }

    /// The multipliers `(f^-b, f^a)` as series in `z`.
    pub(crate) fn multipliers(&self) -> (UniSeries, UniSeries) {
        let f = &self.function;
        let u = f.pow_i64(-self.direction.b).expect("unit");
        let v = f.pow_i64(self.direction.a).expect("unit");
        (u, v)
    }
}

/// A ring automorphism `x -> x*u, y -> y*v` of the truncated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAutomorphism {
    u: Series,
    v: Series,
}

impl VertexAutomorphism {
    pub fn identity(order: u32) -> Self {
        VertexAutomorphism {
            u: Series::one(order),
            v: Series::one(order),
        }
    }

    /// Requires equal orders and multipliers with constant term 1.
    pub fn from_multipliers(u: Series, v: Series) -> Result<Self> {
        if u.order() != v.order() {
            return Err(Error::TruncationMismatch {
                left: u.order(),
                right: v.order(),
            });
        }
        for m in [&u, &v] {
            if !m.constant_term().is_one() {
                return Err(Error::ConstantTermNotOne {
                    found: m.constant_term().to_string(),
                });
            }
        }
        Ok(VertexAutomorphism { u, v })
    }

    pub fn order(&self) -> u32 {
        self.u.order()
    }

    /// Multiplier of `x`.
    pub fn u(&self) -> &Series {
        &self.u
    }

    /// Multiplier of `y`.
    pub fn v(&self) -> &Series {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.v.is_one()
    }

    pub fn truncate(&self, order: u32) -> Self {
        VertexAutomorphism {
            u: self.u.truncate(order),
            v: self.v.truncate(order),
        }
    }

    /// Applies the ring map to a series.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        s.substitute(&self.u, &self.v)
    }

    /// `outer ∘ inner`: the map `s -> outer(inner(s))`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.order() != inner.order() {
            return Err(Error::TruncationMismatch {
                left: outer.order(),
                right: inner.order(),
            });
        }
        Ok(Self::compose_unchecked(outer, inner))
    }

    fn compose_unchecked(outer: &Self, inner: &Self) -> Self {
        // outer(x * inner.u(x, y)) = x*outer.u * inner.u(x*outer.u, y*outer.v)
        let u = outer
            .u
            .mul_unchecked(&inner.u.substitute_unchecked(&outer.u, &outer.v));
        let v = outer
            .v
            .mul_unchecked(&inner.v.substitute_unchecked(&outer.u, &outer.v));
        VertexAutomorphism { u, v }
    }

    /// `self ∘ θ_wall`, exploiting that the wall multipliers depend on
    /// `z = x^a y^b` only.
    pub(crate) fn then_wall(&self, wall: &Wall) -> Self {
        let order = self.order();
        let d = wall.direction();
        let (a, b) = (d.a as u32, d.b as u32);
        // z evaluated at the image point: x^a y^b u^a v^b
        let z = self
            .u
            .pow_u32(a)
            .mul_unchecked(&self.v.pow_u32(b))
            .shift(a, b);
        let (wu, wv) = wall.multipliers();
        VertexAutomorphism {
            u: self.u.mul_unchecked(&wu.evaluate(&z)),
            v: self.v.mul_unchecked(&wv.evaluate(&z)),
        }
        .truncate(order)
    }

    /// The inverse automorphism, by fixed-point iteration on
    /// `u' = 1 / u(x u', y v')`, which gains a degree per step.
    pub fn inverse(&self) -> Self {
        let order = self.order();
        let mut inv = Self::identity(order);
        for _ in 0..=order {
            let u = self
                .u
                .substitute_unchecked(&inv.u, &inv.v)
                .invert_unit()
                .expect("unit");
            let v = self
                .v
                .substitute_unchecked(&inv.u, &inv.v)
                .invert_unit()
                .expect("unit");
            let next = VertexAutomorphism { u, v };
            if next == inv {
                break;
            }
            inv = next;
        }
        inv
    }

    /// Checks `θ^*(dx/x ∧ dy/y) = dx/x ∧ dy/y`, i.e. that the logarithmic
    /// Jacobian has determinant 1:
    /// `(u + x u_x)(v + y v_y) - (y u_y)(x v_x) = u v`.
    pub fn is_symplectic(&self) -> bool {
        let (u, v) = (&self.u, &self.v);
        let lhs = u
            .add_unchecked(&u.x_euler())
            .mul_unchecked(&v.add_unchecked(&v.y_euler()))
            .add_unchecked(&u.y_euler().mul_unchecked(&v.x_euler()).neg());
        lhs == u.mul_unchecked(v)
    }
}

impl fmt::Display for VertexAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> x*({}), y -> y*({})", self.u, self.v)
    }
}

/// `θ_{(a,b),f}`: `x -> x f^{-b}`, `y -> y f^{a}` with `f = f(x^a y^b)`.
pub fn wall_to_automorphism(wall: &Wall, order: u32) -> Result<VertexAutomorphism> {
    let d = wall.direction();
    let (a, b) = (d.a as u32, d.b as u32);
    let (u, v) = wall.multipliers();
    Ok(VertexAutomorphism {
        u: u.embed_on_ray(a, b, order)?,
        v: v.embed_on_ray(a, b, order)?,
    })
}

/// Wall function of a polynomial, exact to `z^order`.
fn polynomial_function(coeffs: &[Rational], order: u32) -> Result<UniSeries> {
    match coeffs.first() {
        Some(c) if c.is_one() => {}
        Some(c) => {
            return Err(Error::InvalidGenerator(format!(
                "polynomial must have constant term 1, found {c}"
            )))
        }
        None => return Err(Error::InvalidGenerator("empty coefficient list".into())),
    }
    let len = coeffs.len().max(order as usize + 1);
    Ok(UniSeries::new(coeffs.to_vec(), (len - 1) as u32))
}

/// `S = θ_{(1,0),p1(x)}` and `T = θ_{(0,1),p2(y)}` for polynomials given by
/// coefficient lists starting with the constant term 1.
pub fn polynomial_generators(
    p1: &[Rational],
    p2: &[Rational],
    order: u32,
) -> Result<(VertexAutomorphism, VertexAutomorphism)> {
    let s = Wall::new(Direction::new(1, 0)?, polynomial_function(p1, order)?)?;
    let t = Wall::new(Direction::new(0, 1)?, polynomial_function(p2, order)?)?;
    Ok((
        wall_to_automorphism(&s, order)?,
        wall_to_automorphism(&t, order)?,
    ))
}

/// Coefficients of `(1 + z)^l`.
pub fn binomial_coefficients(l: u32) -> Vec<Rational> {
    (0..=l as u64)
        .map(|k| Rational::from_integer(binomial(l as u64, k)))
        .collect()
}

/// `S_{l1} = θ_{(1,0),(1+tx)^{l1}}` and `T_{l2} = θ_{(0,1),(1+ty)^{l2}}`.
pub fn generators(
    l1: u32,
    l2: u32,
    order: u32,
) -> Result<(VertexAutomorphism, VertexAutomorphism)> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::InvalidGenerator(format!(
            "multiplicities must be positive (got l1={l1}, l2={l2})"
        )));
    }
    polynomial_generators(
        &binomial_coefficients(l1),
        &binomial_coefficients(l2),
        order,
    )
}

/// Whether `a y f_y = b x f_x` for a bivariate `f`; holds exactly when `f`
/// depends on `x, y` only through `x^a y^b`-compatible exponents.
pub fn satisfies_symplectic_identity(f: &Series, a: i64, b: i64) -> bool {
    let a = Rational::from_integer(a.into());
    let b = Rational::from_integer(b.into());
    f.y_euler().scale(&a) == f.x_euler().scale(&b)
}

/// The symplectic condition for a wall, checked on its expansion at `order`.
pub fn symplectic_check(wall: &Wall, order: u32) -> bool {
    let d = wall.direction();
    let f = match wall.function().embed_on_ray(d.a as u32, d.b as u32, order) {
        Ok(f) => f,
        Err(_) => return false,
    };
    satisfies_symplectic_identity(&f, d.a, d.b)
        && wall_to_automorphism(wall, order)
            .map(|t| t.is_symplectic())
            .unwrap_or(false)
}
