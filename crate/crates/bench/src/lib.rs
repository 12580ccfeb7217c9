//! Inputs shared by the criterion benchmarks.

use scattering::series::ratio;
use scattering::vertex::generators;
use scattering::{commutator, Series, VertexAutomorphism};

/// The commutator of the two binomial generators, truncated at `order`.
pub fn kronecker_commutator(ell1: u32, ell2: u32, order: u32) -> VertexAutomorphism {
    let (s, t) = generators(ell1, ell2, order).expect("positive multiplicities");
    commutator(&s, &t).expect("equal orders")
}

/// A series with every monomial of degree at most `order` present and
/// small non-integral coefficients.
pub fn dense_series(order: u32) -> Series {
    Series::from_terms(
        order,
        (0..=order).flat_map(|x| {
            (0..=order - x).map(move |y| {
                (
                    (x, y),
                    ratio(i64::from(x + 2 * y + 1), i64::from(x + y + 2)),
                )
            })
        }),
    )
}
