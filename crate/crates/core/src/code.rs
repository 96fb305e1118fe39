//! Code containers shared by the constructions, the verifier and the CLI.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};
use crate::projgeo::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(f: &Field) -> Self {
        if f.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Construction variant requested from a builder.
///
/// `IV'` and `IV''` are the two extra type IV variants available for even q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeType {
    I,
    II,
    III,
    IV,
    IVPrime,
    IVDoublePrime,
}

impl CodeType {
    pub const ODD: [CodeType; 4] = [CodeType::I, CodeType::II, CodeType::III, CodeType::IV];
    pub const EVEN: [CodeType; 6] = [
        CodeType::I,
        CodeType::II,
        CodeType::III,
        CodeType::IV,
        CodeType::IVPrime,
        CodeType::IVDoublePrime,
    ];

    pub fn available(parity: Parity) -> &'static [CodeType] {
        match parity {
            Parity::Odd => &Self::ODD,
            Parity::Even => &Self::EVEN,
        }
    }

    /// The composition class (I to IV) the variant belongs to.
    pub fn composition(self) -> Composition {
        match self {
            CodeType::I => Composition::I,
            CodeType::II => Composition::II,
            CodeType::III => Composition::III,
            CodeType::IV | CodeType::IVPrime | CodeType::IVDoublePrime => Composition::IV,
        }
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeType::I => "I",
            CodeType::II => "II",
            CodeType::III => "III",
            CodeType::IV => "IV",
            CodeType::IVPrime => "IV'",
            CodeType::IVDoublePrime => "IV''",
        })
    }
}

impl FromStr for CodeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "I" => CodeType::I,
            "II" => CodeType::II,
            "III" => CodeType::III,
            "IV" => CodeType::IV,
            "IV'" | "IVp" => CodeType::IVPrime,
            "IV''" | "IVpp" => CodeType::IVDoublePrime,
            other => return Err(Error::UnknownCodeType(other.to_string())),
        })
    }
}

impl Serialize for CodeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CodeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The four admissible compositions of an optimal `(5, 2(q^3+1), 3)_q` code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Composition {
    I,
    II,
    III,
    IV,
}

impl Composition {
    pub const ALL: [Composition; 4] = [
        Composition::I,
        Composition::II,
        Composition::III,
        Composition::IV,
    ];

    /// Expected (points, lines, planes, solids).
    pub fn histogram(self, q: u64) -> [usize; 4] {
        let c = (q * q * q) as usize;
        match self {
            Composition::I => [1, c + 1, c, 0],
            Composition::II => [0, c, c + 1, 1],
            Composition::III => [1, c, c, 1],
            Composition::IV => [0, c + 1, c + 1, 0],
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Composition::I => "I",
            Composition::II => "II",
            Composition::III => "III",
            Composition::IV => "IV",
        })
    }
}

/// A construction choice recorded alongside the code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Elements(Vec<Elem>),
    Subspace(Subspace),
}

/// A set of subspaces of PG(4,q) plus the choices that produced it.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    pub field: Field,
    pub parity: Parity,
    pub code_type: Option<CodeType>,
    /// Sorted, without duplicates.
    codewords: Vec<Subspace>,
    pub parameters: BTreeMap<String, Parameter>,
}

impl SubspaceCode {
    /// Builds a code from codewords, rejecting repeated entries.
    pub fn new(field: Field, code_type: Option<CodeType>, mut codewords: Vec<Subspace>) -> Result<Self> {
        codewords.sort_unstable();
        if let Some(w) = codewords.windows(2).find(|w| w[0] == w[1]) {
            return Err(crate::error::invariant(
                "distinct codewords",
                format!("{} appears twice", w[0]),
            ));
        }
        Ok(Self::from_list(field, code_type, codewords))
    }

    /// Keeps the given order and any repetitions; used when reading files
    /// that may be corrupt.
    pub fn from_list(field: Field, code_type: Option<CodeType>, codewords: Vec<Subspace>) -> Self {
        SubspaceCode {
            parity: Parity::of(&field),
            field,
            code_type,
            codewords,
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_parameter(mut self, name: &str, value: Parameter) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Counts of points, lines, planes and solids.
    pub fn histogram(&self) -> [usize; 4] {
        let mut h = [0; 4];
        for w in &self.codewords {
            if (1..=4).contains(&w.dim()) {
                h[w.dim() - 1] += 1;
            }
        }
        h
    }

    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &Subspace> {
        self.codewords.iter().filter(move |w| w.dim() == k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_names_round_trip() {
        for t in CodeType::EVEN {
            assert_eq!(t.to_string().parse::<CodeType>().unwrap(), t);
        }
        assert!("V".parse::<CodeType>().is_err());
    }

    #[test]
    fn composition_sizes() {
        for q in [2, 3, 4, 5] {
            for c in Composition::ALL {
                assert_eq!(c.histogram(q).iter().sum::<usize>() as u64, 2 * (q * q * q + 1));
            }
        }
    }
}
