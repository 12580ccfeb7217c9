//! Versioned JSON form of a scattering diagram.
//!
//! Rationals are written as decimal strings so that no coefficient is ever
//! rounded or overflows a JSON number.

use serde::{Deserialize, Serialize};

use scattering::permissible::classify;
use scattering::series::parse_rational;
use scattering::{
    Direction, Error, Generators, Rational, Result, ScatteringDiagram, UniSeries, Wall,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<Vec<String>>,
    pub order: u32,
    /// Decreasing slope.
    pub walls: Vec<WallEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEntry {
    pub a: i64,
    pub b: i64,
    /// Nonzero coefficients as `[k, numerator, denominator]`.
    pub f: Vec<(u32, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
}

fn rational_strings(c: &Rational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn format_rational(c: &Rational) -> String {
    c.to_string()
}

impl DiagramDocument {
    pub fn from_diagram(d: &ScatteringDiagram) -> Self {
        let (mut ell1, mut ell2, mut p1, mut p2) = (None, None, None, None);
        match d.source() {
            Generators::Kronecker { ell1: l1, ell2: l2 } => {
                ell1 = Some(*l1);
                ell2 = Some(*l2);
            }
            Generators::Polynomial { p1: q1, p2: q2 } => {
                p1 = Some(q1.iter().map(format_rational).collect());
                p2 = Some(q2.iter().map(format_rational).collect());
            }
            Generators::Custom => {}
        }
        let multiplicities = d
            .source()
            .multiplicities()
            .filter(|&(l1, l2)| l1 > 0 && l2 > 0);
        let walls = d
            .walls()
            .map(|w| {
                let dir = w.direction();
                let f = w
                    .function()
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| {
                        let (n, q) = rational_strings(c);
                        (k as u32, n, q)
                    })
                    .collect();
                let classification = multiplicities
                    .and_then(|(l1, l2)| classify(l1, l2, dir.a(), dir.b()).ok())
                    .map(|c| c.name().to_string());
                WallEntry {
                    a: dir.a(),
                    b: dir.b(),
                    f,
                    classification,
                }
            })
            .collect();
        DiagramDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            ell1,
            ell2,
            p1,
            p2,
            order: d.order(),
            walls,
        }
    }

    /// Rebuilds the diagram, checking every invariant of [`ScatteringDiagram`].
    pub fn to_diagram(&self) -> Result<ScatteringDiagram> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema version {:?}",
                self.schema_version
            )));
        }
        let parse_list = |v: &[String]| {
            v.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()
        };
        let source = match (self.ell1, self.ell2, &self.p1, &self.p2) {
            (Some(ell1), Some(ell2), None, None) => Generators::Kronecker { ell1, ell2 },
            (None, None, Some(p1), Some(p2)) => Generators::Polynomial {
                p1: parse_list(p1)?,
                p2: parse_list(p2)?,
            },
            (None, None, None, None) => Generators::Custom,
            _ => {
                return Err(Error::InvalidArgument(
                    "document must carry either ell1/ell2 or p1/p2".into(),
                ))
            }
        };
        let mut walls = Vec::with_capacity(self.walls.len());
        for entry in &self.walls {
            let dir = Direction::interior(entry.a, entry.b)?;
            let k = self.order / dir.degree();
            let mut coeffs = vec![Rational::from_integer(0.into()); k as usize + 1];
            for (i, n, q) in &entry.f {
                let slot = coeffs.get_mut(*i as usize).ok_or_else(|| {
                    Error::InvalidArgument(format!("coefficient z^{i} beyond order on {dir}"))
                })?;
                *slot = parse_rational(&format!("{n}/{q}"))?;
            }
            walls.push(Wall::new(dir, UniSeries::new(coeffs, k))?);
        }
        let d = ScatteringDiagram::from_walls(source, self.order, walls)?;
        if d.len() != self.walls.len() {
            return Err(Error::InvalidArgument(
                "document lists a trivial wall".into(),
            ));
        }
        Ok(d)
    }

    /// Pretty-printed JSON with a trailing newline; byte-identical for equal input.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use scattering::series::{int, ratio};

    #[test]
    fn kronecker_round_trip() {
        let d = ScatteringDiagram::kronecker(2, 2, 8).unwrap();
        let doc = DiagramDocument::from_diagram(&d);
        assert_eq!(doc.walls.first().map(|w| (w.a, w.b)), Some((1, 2)));
        assert_eq!(doc.walls[0].classification.as_deref(), Some("DiscreteA"));
        let parsed = DiagramDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.to_diagram().unwrap(), d);
    }

    #[test]
    fn polynomial_round_trip_keeps_fractions() {
        let d = ScatteringDiagram::polynomial(&[int(1), ratio(1, 2)], &[int(1), ratio(-2, 3)], 6)
            .unwrap();
        let doc = DiagramDocument::from_diagram(&d);
        assert_eq!(doc.p1, Some(vec!["1".to_string(), "1/2".to_string()]));
        assert_eq!(doc.to_diagram().unwrap(), d);
    }

    #[test]
    fn rejects_malformed_documents() {
        let d = ScatteringDiagram::kronecker(1, 1, 4).unwrap();
        let mut doc = DiagramDocument::from_diagram(&d);
        doc.schema_version = "0".into();
        assert!(doc.to_diagram().is_err());
        let mut doc = DiagramDocument::from_diagram(&d);
        doc.walls[0].a = 2;
        doc.walls[0].b = 2;
        assert!(doc.to_diagram().is_err());
        let mut doc = DiagramDocument::from_diagram(&d);
        doc.walls[0].f.push((9, "1".into(), "1".into()));
        assert!(doc.to_diagram().is_err());
    }
}
