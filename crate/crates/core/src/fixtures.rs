//! Bundled arrangements and covector data.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arrangement::{covectors_from_hyperplanes, load_covectors, Arrangement, FaceLattice};

const I22: &str = include_str!("../fixtures/I22.arr");
const I23: &str = include_str!("../fixtures/I23.arr");
const S4: &str = include_str!("../fixtures/S4.arr");
const GEN4: &str = include_str!("../fixtures/GEN4.arr");
const NONPAP: &str = include_str!("../fixtures/NONPAP.cov");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    /// m central lines in the plane.
    I2(usize),
    S4,
    Gen4,
    NonPappus,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown fixture `{0}` (expected I22, I23, I2<m>, S4, GEN4 or NONPAP)")]
pub struct UnknownFixture(pub String);

impl FromStr for FixtureId {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, UnknownFixture> {
        match s.to_ascii_uppercase().as_str() {
            "S4" => Ok(FixtureId::S4),
            "GEN4" => Ok(FixtureId::Gen4),
            "NONPAP" => Ok(FixtureId::NonPappus),
            other => other
                .strip_prefix("I2")
                .and_then(|m| m.parse::<usize>().ok())
                .filter(|&m| m >= 2)
                .map(FixtureId::I2)
                .ok_or_else(|| UnknownFixture(s.to_string())),
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::I2(m) => write!(f, "I2{m}"),
            FixtureId::S4 => f.write_str("S4"),
            FixtureId::Gen4 => f.write_str("GEN4"),
            FixtureId::NonPappus => f.write_str("NONPAP"),
        }
    }
}

/// What a fixture resolves to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureData {
    Hyperplanes(Arrangement),
    Covectors(FaceLattice),
}

impl FixtureData {
    pub fn lattice(&self) -> FaceLattice {
        match self {
            FixtureData::Hyperplanes(a) => covectors_from_hyperplanes(a),
            FixtureData::Covectors(fl) => fl.clone(),
        }
    }
}

/// Normals (1,0), (0,1), (1,1), (1,2), ..., (1,m-2).
pub fn dihedral(m: usize) -> Arrangement {
    assert!(m >= 2);
    let mut rows = vec![vec![1, 0], vec![0, 1]];
    rows.extend((1..m as i64 - 1).map(|k| vec![1, k]));
    Arrangement::from_integers(&rows).expect("nonzero normals")
}

pub fn load(id: FixtureId) -> FixtureData {
    let arr = |text: &str| FixtureData::Hyperplanes(text.parse().expect("bundled fixture parses"));
    match id {
        FixtureId::I2(2) => arr(I22),
        FixtureId::I2(3) => arr(I23),
        FixtureId::I2(m) => FixtureData::Hyperplanes(dihedral(m)),
        FixtureId::S4 => arr(S4),
        FixtureId::Gen4 => arr(GEN4),
        FixtureId::NonPappus => {
            FixtureData::Covectors(load_covectors(NONPAP).expect("bundled fixture parses"))
        }
    }
}

pub fn lattice(id: FixtureId) -> FaceLattice {
    load(id).lattice()
}

/// Raw text of the bundled file, when the fixture has one.
pub fn source(id: FixtureId) -> Option<&'static str> {
    match id {
        FixtureId::I2(2) => Some(I22),
        FixtureId::I2(3) => Some(I23),
        FixtureId::S4 => Some(S4),
        FixtureId::Gen4 => Some(GEN4),
        FixtureId::NonPappus => Some(NONPAP),
        FixtureId::I2(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        for name in ["I22", "I23", "I26", "S4", "GEN4", "NONPAP"] {
            assert_eq!(name.parse::<FixtureId>().unwrap().to_string(), name);
        }
        assert!("I21".parse::<FixtureId>().is_err());
        assert!("B3".parse::<FixtureId>().is_err());
    }

    #[test]
    fn bundled_dihedral_files_match_generator() {
        assert_eq!(
            load(FixtureId::I2(2)),
            FixtureData::Hyperplanes(dihedral(2))
        );
        assert_eq!(
            load(FixtureId::I2(3)),
            FixtureData::Hyperplanes(dihedral(3))
        );
    }

    #[test]
    fn sizes() {
        assert_eq!(lattice(FixtureId::S4).topes().len(), 24);
        assert_eq!(lattice(FixtureId::S4).len(), 75);
        assert_eq!(lattice(FixtureId::Gen4).topes().len(), 14);
        assert_eq!(lattice(FixtureId::I2(5)).topes().len(), 10);
    }

    #[test]
    fn non_pappus_file_is_reproducible() {
        assert_eq!(NONPAP, crate::wiring::non_pappus_file());
    }
}
