//! Ordered-product factorization of commutators.
//!
//! For generators `S`, `T` the commutator `T^-1 ∘ S ∘ T ∘ S^-1` factors
//! uniquely as an ordered product of wall automorphisms over primitive
//! directions strictly inside the first quadrant, the leftmost factor having
//! the largest slope. [`factorize`] finds the wall functions degree by degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{Monomial, Rational, UniSeries};
use crate::vertex::{generators, polynomial_generators, Direction, VertexAutomorphism, Wall};

/// What produced a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    /// `S_{l1} = θ_{(1,0),(1+tx)^{l1}}`, `T_{l2} = θ_{(0,1),(1+ty)^{l2}}`.
    Kronecker { ell1: u32, ell2: u32 },
    /// `θ_{(1,0),p1(tx)}`, `θ_{(0,1),p2(ty)}` by coefficient lists.
    Polynomial {
        p1: Vec<Rational>,
        p2: Vec<Rational>,
    },
    /// Factorization of an arbitrary group element.
    Custom,
}

impl Generators {
    /// The pair `(l1, l2)` controlling the permissible directions: the
    /// multiplicities, or the polynomial degrees.
    pub fn multiplicities(&self) -> Option<(u32, u32)> {
        match self {
            Generators::Kronecker { ell1, ell2 } => Some((*ell1, *ell2)),
            Generators::Polynomial { p1, p2 } => Some((poly_degree(p1), poly_degree(p2))),
            Generators::Custom => None,
        }
    }
}

fn poly_degree(p: &[Rational]) -> u32 {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as u32
}

/// Map key ordering directions by decreasing slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct DescendingSlope(Direction);

impl Ord for DescendingSlope {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp_slope(self.0)
    }
}

impl PartialOrd for DescendingSlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Walls of a factorization, truncated at total degree `order`.
///
/// Only walls whose function differs from 1 up to its available order are
/// stored; a wall on `(a, b)` is known to `z^floor(order / (a + b))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScatteringDiagram {
    source: Generators,
    order: u32,
    walls: BTreeMap<DescendingSlope, Wall>,
}

impl ScatteringDiagram {
    /// Assembles a diagram from explicit walls, checking the invariants:
    /// interior primitive directions, constant term 1, exact truncation.
    pub fn from_walls<I>(source: Generators, order: u32, walls: I) -> Result<Self>
    where
        I: IntoIterator<Item = Wall>,
    {
        let mut map = BTreeMap::new();
        for w in walls {
            let d = w.direction();
            if !d.is_interior() {
                return Err(Error::OutsideQuadrant {
                    a: d.a(),
                    b: d.b(),
                    region: "strictly in the first quadrant",
                });
            }
            let k = order / d.degree();
            let f = w.function();
            if f.order() < k {
                return Err(Error::InsufficientPrecision {
                    a: d.a(),
                    b: d.b(),
                    available: f.order(),
                    required: k,
                });
            }
            let w = Wall::new(d, f.truncate(k))?;
            if w.function().is_one() {
                continue;
            }
            if map.insert(DescendingSlope(d), w).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate wall {d}")));
            }
        }
        Ok(ScatteringDiagram {
            source,
            order,
            walls: map,
        })
    }

    /// Factorizes the commutator of `S_{l1}` and `T_{l2}`.
    pub fn kronecker(ell1: u32, ell2: u32, order: u32) -> Result<Self> {
        let (s, t) = generators(ell1, ell2, order)?;
        let mut d = factorize(&commutator(&s, &t)?, order)?;
        d.source = Generators::Kronecker { ell1, ell2 };
        Ok(d)
    }

    /// Factorizes the commutator of polynomial generators.
    pub fn polynomial(p1: &[Rational], p2: &[Rational], order: u32) -> Result<Self> {
        let (s, t) = polynomial_generators(p1, p2, order)?;
        let mut d = factorize(&commutator(&s, &t)?, order)?;
        d.source = Generators::Polynomial {
            p1: p1.to_vec(),
            p2: p2.to_vec(),
        };
        Ok(d)
    }

    pub fn source(&self) -> &Generators {
        &self.source
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Nontrivial walls, largest slope first.
    pub fn walls(&self) -> impl Iterator<Item = &Wall> + '_ {
        self.walls.values()
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    /// `f_{a,b}` truncated at `z^floor(order / (a + b))`; the constant
    /// series 1 if the wall is trivial to that order.
    pub fn wall_function(&self, a: i64, b: i64) -> Result<UniSeries> {
        let d = Direction::interior(a, b)?;
        Ok(match self.walls.get(&DescendingSlope(d)) {
            Some(w) => w.function().clone(),
            None => UniSeries::one(self.order / d.degree()),
        })
    }

    /// Replaces (or inserts) a wall; used to build perturbed diagrams.
    pub fn with_wall(&self, wall: Wall) -> Result<Self> {
        let d = wall.direction();
        let walls = self
            .walls
            .values()
            .filter(|w| w.direction() != d)
            .cloned()
            .chain(std::iter::once(wall));
        Self::from_walls(self.source.clone(), self.order, walls)
    }

    /// The ordered product of the walls at the diagram's order.
    pub fn product(&self) -> VertexAutomorphism {
        ordered_product(self.walls.values(), self.order)
    }
}

/// `T^-1 ∘ S ∘ T ∘ S^-1`.
pub fn commutator(s: &VertexAutomorphism, t: &VertexAutomorphism) -> Result<VertexAutomorphism> {
    let c = VertexAutomorphism::compose(t, &s.inverse())?;
    let c = VertexAutomorphism::compose(s, &c)?;
    VertexAutomorphism::compose(&t.inverse(), &c)
}

/// Composes walls left to right in the iteration order given.
pub fn ordered_product<'a, I>(walls: I, order: u32) -> VertexAutomorphism
where
    I: IntoIterator<Item = &'a Wall>,
{
    walls
        .into_iter()
        .fold(VertexAutomorphism::identity(order), |acc, w| {
            acc.then_wall(w)
        })
}

/// Factorizes `c` (truncated to `order`) into an ordered product of walls.
///
/// At degree `k` the product of the walls found so far agrees with `c` below
/// degree `k`; the degree-`k` discrepancy in `(u, v)` at each monomial
/// `x^{ja} y^{jb}` must be `(-b c, a c)`, the first-order action of
/// `θ_{(a,b),1 + c z^j}`, and is absorbed into `f_{a,b}`.
pub fn factorize(c: &VertexAutomorphism, order: u32) -> Result<ScatteringDiagram> {
    if order > c.order() {
        return Err(Error::InvalidArgument(format!(
            "factorization order {order} exceeds element order {}",
            c.order()
        )));
    }
    let c = c.truncate(order);
    let mut walls: BTreeMap<DescendingSlope, Wall> = BTreeMap::new();

    for k in 1..=order {
        let target = c.truncate(k);
        let product = ordered_product(walls.values(), k);
        let du = target.u().sub(product.u())?;
        let dv = target.v().sub(product.v())?;
        if let Some(low) = [du.min_degree(), dv.min_degree()]
            .into_iter()
            .flatten()
            .min()
        {
            if low < k {
                return Err(Error::NotFactorizable(format!(
                    "residual has a term of degree {low} below the current degree {k}"
                )));
            }
        }
        let mut monomials: Vec<Monomial> = du.terms().chain(dv.terms()).map(|(m, _)| m).collect();
        monomials.sort();
        monomials.dedup();
        for m in monomials {
            let (alpha, beta) = (du.coeff(m.x, m.y), dv.coeff(m.x, m.y));
            let not_wall = || Error::ResidualNotWallForm {
                degree: k,
                x: m.x,
                y: m.y,
                du: alpha.to_string(),
                dv: beta.to_string(),
            };
            if m.x == 0 || m.y == 0 {
                return Err(not_wall());
            }
            let g = num_integer::gcd(m.x, m.y);
            let (a, b) = (m.x / g, m.y / g);
            // symplectic residual: a*alpha + b*beta = 0
            let a_r = Rational::from_integer(a.into());
            let b_r = Rational::from_integer(b.into());
            if !(&a_r * &alpha + &b_r * &beta).is_zero() {
                return Err(not_wall());
            }
            let increment = beta / a_r;
            let d = Direction::new(a as i64, b as i64)?;
            let z_order = order / d.degree();
            let wall = walls
                .entry(DescendingSlope(d))
                .or_insert_with(|| Wall::new(d, UniSeries::one(z_order)).expect("unit"));
            *wall.function_mut().coeff_mut(g) += increment;
        }
    }

    walls.retain(|_, w| !w.function().is_one());
    let diagram = ScatteringDiagram {
        source: Generators::Custom,
        order,
        walls,
    };
    if diagram.product() != c {
        return Err(Error::FactorizationIncomplete(order));
    }
    Ok(diagram)
}

/// Whether the ordered product of the diagram's walls equals `c` exactly.
pub fn verify_factorization(d: &ScatteringDiagram, c: &VertexAutomorphism) -> bool {
    d.order() <= c.order() && d.product() == c.truncate(d.order())
}
