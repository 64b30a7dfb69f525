//! Versioned JSON manifests describing a constructed code. Vectors and matrix
//! rows are hex strings in the [`BitVector::to_hex`] layout.

use serde::{Deserialize, Serialize};

use crate::bits::{BitMatrix, BitVector};
use crate::cosetcode::{ClassicalTower, CosetUnionCode, Family};
use crate::error::{Error, Result};
use crate::gf2poly::{FieldTable, Poly2};
use crate::lincode::LinearCode;
use crate::stabilizer::StabilizerCode;
use crate::symplectic::{AdditiveSympCode, SympHex, SympVector};
use crate::unioncode::{GpComponents, GpConstruction};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    #[serde(flatten)]
    pub body: ManifestBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ManifestBody {
    Goethals(CosetManifest),
    Preparata(CosetManifest),
    Stabilizer(StabilizerManifest),
    GpQuantum(GpManifest),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetManifest {
    pub m: usize,
    pub n: usize,
    pub k_base: usize,
    pub generator: Vec<String>,
    pub reps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizerManifest {
    pub n: usize,
    pub k: usize,
    pub stab: Vec<SympHex>,
    pub logical_x: Vec<SympHex>,
    pub logical_z: Vec<SympHex>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GpManifest {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "K")]
    pub reps_count: usize,
    pub translation_count: usize,
    pub log2_dim: usize,
    pub field_modulus: String,
    pub theta1: String,
    pub mu1: String,
    pub c_g: Vec<String>,
    pub c_p: Vec<String>,
    pub reps: Vec<String>,
    pub d: Vec<String>,
    pub a: Vec<String>,
}

fn hex_list(vs: &[BitVector]) -> Vec<String> {
    vs.iter().map(BitVector::to_hex).collect()
}

fn parse_list(len: usize, rows: &[String]) -> Result<Vec<BitVector>> {
    rows.iter().map(|r| BitVector::from_hex(len, r)).collect()
}

fn symp_list(vs: &[SympVector]) -> Vec<SympHex> {
    vs.iter().map(SympVector::to_hex_pair).collect()
}

impl Manifest {
    pub fn new(body: ManifestBody) -> Self {
        Manifest {
            schema: SCHEMA,
            body,
        }
    }

    pub fn coset(m: usize, code: &CosetUnionCode) -> Self {
        let body = CosetManifest {
            m,
            n: code.n(),
            k_base: code.base().k(),
            generator: code.base().generator().to_hex_rows(),
            reps: hex_list(code.reps()),
        };
        Self::new(match code.family() {
            Family::Goethals => ManifestBody::Goethals(body),
            Family::Preparata => ManifestBody::Preparata(body),
        })
    }

    pub fn stabilizer(code: &StabilizerCode) -> Self {
        Self::new(ManifestBody::Stabilizer(StabilizerManifest {
            n: code.n(),
            k: code.k(),
            stab: symp_list(&code.stab().generator_vectors()),
            logical_x: symp_list(code.logical_x()),
            logical_z: symp_list(code.logical_z()),
        }))
    }

    pub fn gp_quantum(g: &GpConstruction) -> Self {
        let c = &g.components;
        let k = g.code.base().k();
        let reps_count = c.reps.len();
        Self::new(ManifestBody::GpQuantum(GpManifest {
            m: c.m,
            n: c.c_g.n(),
            k,
            reps_count,
            translation_count: g.code.translations().len(),
            log2_dim: k + 2 * reps_count.trailing_zeros() as usize,
            field_modulus: c.field.modulus().to_hex(),
            theta1: c.theta1.to_hex(),
            mu1: c.mu1.to_hex(),
            c_g: c.c_g.generator().to_hex_rows(),
            c_p: c.c_p.generator().to_hex_rows(),
            reps: hex_list(&c.reps),
            d: c.d.to_hex_rows(),
            a: c.a.to_hex_rows(),
        }))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if m.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", m.schema)));
        }
        Ok(m)
    }
}

impl CosetManifest {
    pub fn to_code(&self, family: Family) -> Result<CosetUnionCode> {
        let base = LinearCode::from_generators(self.n, parse_list(self.n, &self.generator)?)?;
        CosetUnionCode::new(family, base, parse_list(self.n, &self.reps)?)
    }
}

impl StabilizerManifest {
    pub fn to_code(&self) -> Result<StabilizerCode> {
        let parse = |hs: &[SympHex]| -> Result<Vec<SympVector>> {
            hs.iter()
                .map(|h| SympVector::from_hex_pair(self.n, h))
                .collect()
        };
        let stab = AdditiveSympCode::from_vectors(self.n, &parse(&self.stab)?)?;
        let norm = stab.symplectic_dual();
        Ok(StabilizerCode::from_parts_unchecked(
            stab,
            norm,
            parse(&self.logical_x)?,
            parse(&self.logical_z)?,
        ))
    }
}

impl GpManifest {
    /// Rebuilds the components exactly as stored; nothing is re-derived, so an
    /// edited manifest is verified as edited.
    pub fn to_components(&self) -> Result<GpComponents> {
        let n = self.n;
        if n != 1 << self.m {
            return Err(Error::Parse(format!(
                "n = {n} does not match m = {}",
                self.m
            )));
        }
        let field = FieldTable::new(self.m - 1, Poly2::from_hex(&self.field_modulus)?)?;
        let code = |rows: &[String]| LinearCode::from_generators(n, parse_list(n, rows)?);
        let dim = self.d.len();
        Ok(GpComponents {
            m: self.m,
            field,
            theta1: Poly2::from_hex(&self.theta1)?,
            mu1: Poly2::from_hex(&self.mu1)?,
            c_g: code(&self.c_g)?,
            c_p: code(&self.c_p)?,
            reps: parse_list(n, &self.reps)?,
            d: BitMatrix::from_hex_rows(n, &self.d)?,
            a: BitMatrix::from_hex_rows(dim, &self.a)?,
        })
    }
}

/// Manifest for `family` at `m`; `family` is one of `goethals`, `preparata`,
/// `stabilizer` (the base `[[2^m, 2^m - 7m + 3]]` code) or `gp-quantum`.
pub fn construct(family: &str, m: usize) -> Result<Manifest> {
    match family {
        "goethals" => Ok(Manifest::coset(m, &ClassicalTower::build(m)?.goethals()?)),
        "preparata" => Ok(Manifest::coset(m, &ClassicalTower::build(m)?.preparata()?)),
        "stabilizer" => Ok(Manifest::stabilizer(
            crate::unioncode::build_gp_code(m)?.code.base(),
        )),
        "gp-quantum" => Ok(Manifest::gp_quantum(&crate::unioncode::build_gp_code(m)?)),
        other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gp_manifest_round_trip() {
        let m = construct("gp-quantum", 6).unwrap();
        let s = m.to_json();
        let back = Manifest::from_json(&s).unwrap();
        assert_eq!(back, m);
        let ManifestBody::GpQuantum(g) = &back.body else {
            panic!()
        };
        assert_eq!(
            (g.n, g.k, g.reps_count, g.translation_count, g.log2_dim),
            (64, 25, 32, 1024, 35)
        );
        let c = g.to_components().unwrap();
        assert_eq!((c.c_g.k(), c.c_p.k(), c.d.nrows()), (42, 47, 5));
        assert!(s.contains("\"schema\": 1"));
        assert!(s.contains("\"family\": \"gp-quantum\""));
    }

    #[test]
    fn coset_and_stabilizer_round_trip() {
        let m = construct("preparata", 6).unwrap();
        let ManifestBody::Preparata(p) = &m.body else {
            panic!()
        };
        assert_eq!((p.n, p.k_base, p.reps.len()), (64, 47, 32));
        let code = p.to_code(Family::Preparata).unwrap();
        assert_eq!(code.base().k(), 47);

        let s = construct("stabilizer", 6).unwrap();
        let ManifestBody::Stabilizer(st) = &s.body else {
            panic!()
        };
        let code = st.to_code().unwrap();
        assert!(crate::stabilizer::audit(&code).all_passed());
        assert_eq!(code.k(), 25);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(construct("goethals", 7).is_err());
        assert!(construct("hamming", 6).is_err());
        assert!(Manifest::from_json("{\"schema\": 2, \"family\": \"goethals\"}").is_err());
    }
}
