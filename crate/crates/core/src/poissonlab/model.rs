use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cli::expr::{parse_expression, Scope};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::superpoly::{jacobiator, SuperPoly};

/// An affine Poisson (or candidate) structure: dimension, bivector, parameter names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonModel {
    pub name: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub bivector: SuperPoly,
}

#[derive(Debug, Deserialize, Serialize)]
struct ModelFile {
    name: String,
    dim: usize,
    #[serde(default)]
    params: Vec<String>,
    /// `P12 = "x3"` etc., 1-based indices.
    bivector: BTreeMap<String, String>,
}

fn entry_key(key: &str, dim: usize) -> Option<(usize, usize)> {
    let digits = key.strip_prefix('P')?;
    let b = digits.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let i = (b[0] as char).to_digit(10)? as usize;
    let j = (b[1] as char).to_digit(10)? as usize;
    (i >= 1 && j >= 1 && i <= dim && j <= dim && i != j).then(|| (i - 1, j - 1))
}

impl PoissonModel {
    pub fn new(name: &str, bivector: SuperPoly, params: &[&str]) -> Result<Self> {
        if !bivector.is_zero() && bivector.xi_degree() != Some(2) {
            return Err(Error::Degree {
                expected: 2,
                found: bivector.xi_degrees().into_iter().find(|&d| d != 2).unwrap_or(0),
            });
        }
        Ok(PoissonModel {
            name: name.to_string(),
            dim: bivector.dim(),
            params: params.iter().map(|s| s.to_string()).collect(),
            bivector,
        })
    }

    /// Builds `P = Σ P^{ij} ξ_i ξ_j` from coefficient expressions (0-based `i, j`).
    pub fn from_entries(name: &str, dim: usize, params: &[&str], entries: &[((usize, usize), &str)]) -> Result<Self> {
        let scope = Scope::with_params(dim, params);
        let mut p = SuperPoly::zero(dim);
        let mut seen = Vec::new();
        for &((i, j), text) in entries {
            if i >= dim || j >= dim || i == j {
                return Err(Error::structure(format!("bad bivector entry ({}, {})", i + 1, j + 1)));
            }
            let pair = (i.min(j), i.max(j));
            if seen.contains(&pair) {
                return Err(Error::structure(format!("entry ({}, {}) given twice", pair.0 + 1, pair.1 + 1)));
            }
            seen.push(pair);
            let c = parse_expression(text)?.to_superpoly(&scope)?;
            if c.xi_degree() != Some(0) {
                return Err(Error::structure("bivector coefficients must not contain xi"));
            }
            let term = c.mul(&SuperPoly::xi(dim, i)).mul(&SuperPoly::xi(dim, j));
            p.add_assign(&term);
        }
        Self::new(name, p, params)
    }

    /// Coefficient `P^{ij}` (0-based), antisymmetric in `i, j`.
    pub fn entry(&self, i: usize, j: usize) -> SuperPoly {
        if i == j {
            return SuperPoly::zero(self.dim);
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.bivector.d_dxi(a).d_dxi(b).scale(&q(sign))
    }

    pub fn jacobi_residual(&self) -> Result<SuperPoly> {
        jacobiator(&self.bivector)
    }

    pub fn is_poisson(&self) -> Result<bool> {
        Ok(self.jacobi_residual()?.is_zero())
    }

    pub fn parse_toml(text: &str, origin: &str) -> Result<Self> {
        let file: ModelFile = toml::from_str(text).map_err(|e| Error::format(origin, 0, e.to_string()))?;
        if file.dim == 0 || file.dim > crate::superpoly::MAX_DIM {
            return Err(Error::format(origin, 0, format!("unsupported dimension {}", file.dim)));
        }
        let mut entries = Vec::new();
        for (k, v) in &file.bivector {
            let ij = entry_key(k, file.dim).ok_or_else(|| Error::format(origin, 0, format!("bad entry key `{k}`")))?;
            entries.push((ij, v.as_str()));
        }
        let params: Vec<&str> = file.params.iter().map(String::as_str).collect();
        Self::from_entries(&file.name, file.dim, &params, &entries).map_err(|e| match e {
            Error::Format { .. } => e,
            other => Error::format(origin, 0, other.to_string()),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse_toml(&fs::read_to_string(path)?, &path.display().to_string())
    }

    pub fn to_toml(&self) -> String {
        let mut bivector = BTreeMap::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    bivector.insert(format!("P{}{}", i + 1, j + 1), e.to_string());
                }
            }
        }
        let file = ModelFile {
            name: self.name.clone(),
            dim: self.dim,
            params: self.params.clone(),
            bivector,
        };
        toml::to_string(&file).expect("model serializes")
    }

    /// Built-in models by name. `abstract2` and `abstract3` carry generic
    /// coefficient functions; the latter is not Poisson.
    pub fn builtin(name: &str) -> Option<Self> {
        let m = match name {
            "so3" => linear_bracket("so3", 3, &so3_constants()).ok()?,
            "abstract2" => Self::new("abstract2", crate::orient::abstract_bivector(2), &[]).ok()?,
            "abstract3" => Self::new("abstract3", crate::orient::abstract_bivector(3), &[]).ok()?,
            "constant2" => Self::from_entries("constant2", 2, &[], &[((0, 1), "1")]).ok()?,
            "nambu-sphere" => super::nambu::nambu_bivector("nambu-sphere", &super::nambu::NambuDatum::parse("(x1^2 + x2^2 + x3^2)/2", "1").ok()?).ok()?,
            "nambu-cubic" => super::nambu::nambu_bivector("nambu-cubic", &super::nambu::NambuDatum::parse("x1^3 + x1*x2*x3", "1 + x3").ok()?).ok()?,
            "nambu-abstract" => super::nambu::nambu_bivector("nambu-abstract", &super::nambu::NambuDatum::abstract_datum()).ok()?,
            _ => return None,
        };
        Some(m)
    }

    pub const BUILTIN: &'static [&'static str] =
        &["so3", "abstract2", "abstract3", "constant2", "nambu-sphere", "nambu-cubic", "nambu-abstract"];
}

impl fmt::Display for PoissonModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (r={}): {}", self.name, self.dim, self.bivector)
    }
}

/// Structure constants `c^{ij}_k`, keyed by 0-based `(i, j, k)` with `i < j`.
pub type StructureConstants = BTreeMap<(usize, usize, usize), Q>;

pub fn so3_constants() -> StructureConstants {
    // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
    BTreeMap::from([((0, 1, 2), q(1)), ((1, 2, 0), q(1)), ((0, 2, 1), q(-1))])
}

/// `P^{ij} = c^{ij}_k x^k`. Keys with `i > j` are read through antisymmetry;
/// conflicting values for `(i,j)` and `(j,i)` are rejected.
pub fn linear_bracket(name: &str, dim: usize, c: &StructureConstants) -> Result<PoissonModel> {
    let mut norm: StructureConstants = BTreeMap::new();
    for (&(i, j, k), v) in c {
        if i >= dim || j >= dim || k >= dim {
            return Err(Error::IndexOutOfRange {
                index: i.max(j).max(k),
                len: dim,
            });
        }
        if i == j {
            if !v.is_zero() {
                return Err(Error::structure("structure constants must be antisymmetric"));
            }
            continue;
        }
        let (key, val) = if i < j { ((i, j, k), v.clone()) } else { ((j, i, k), -v.clone()) };
        if let Some(old) = norm.get(&key) {
            if *old != val {
                return Err(Error::structure("structure constants must be antisymmetric"));
            }
        }
        norm.insert(key, val);
    }
    let mut p = SuperPoly::zero(dim);
    for ((i, j, k), v) in norm {
        let term = SuperPoly::coord(dim, k).mul(&SuperPoly::xi(dim, i)).mul(&SuperPoly::xi(dim, j));
        p.add_scaled(&term, &v);
    }
    PoissonModel::new(name, p, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_entries() {
        let m = PoissonModel::builtin("so3").unwrap();
        assert_eq!(m.entry(0, 1), SuperPoly::coord(3, 2));
        assert_eq!(m.entry(2, 0), SuperPoly::coord(3, 1));
        assert_eq!(m.entry(1, 2), SuperPoly::coord(3, 0));
        assert!(m.is_poisson().unwrap());
    }

    #[test]
    fn broken_constants_fail_jacobi() {
        let mut c = so3_constants();
        c.insert((0, 1, 0), q(1));
        let m = linear_bracket("broken", 3, &c).unwrap();
        assert!(!m.is_poisson().unwrap());
    }

    #[test]
    fn zero_constants() {
        let m = linear_bracket("zero", 3, &BTreeMap::new()).unwrap();
        assert!(m.bivector.is_zero());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let c = BTreeMap::from([((0, 1, 2), q(1)), ((1, 0, 2), q(1))]);
        assert!(linear_bracket("bad", 3, &c).is_err());
    }

    #[test]
    fn toml_roundtrip() {
        for name in PoissonModel::BUILTIN {
            let m = PoissonModel::builtin(name).unwrap();
            let text = m.to_toml();
            let back = PoissonModel::parse_toml(&text, name).unwrap();
            assert_eq!(back, m, "{name}");
            assert_eq!(back.to_toml(), text);
        }
    }

    #[test]
    fn parametric_model() {
        let text = "name = \"scaled\"\ndim = 3\nparams = [\"t\"]\n[bivector]\nP12 = \"t*x3\"\nP23 = \"t*x1\"\nP13 = \"-t*x2\"\n";
        let m = PoissonModel::parse_toml(text, "scaled").unwrap();
        assert_eq!(m.params, vec!["t".to_string()]);
        assert!(m.is_poisson().unwrap());
    }
}
