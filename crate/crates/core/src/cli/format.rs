use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exact_linalg::Scalar;
use crate::glie::{sgn, BasisElement, Bialgebra, BilinearForm, GradedLie, RMatrix, Tensor3};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
}

/// On-disk algebra description. Indices are 1-based; coefficients are exact
/// rationals written as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub shift_n: i64,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub cobrackets: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<Vec<(usize, usize, String)>>,
}

// Entries (i, j, k) with i <= j, plus any (i, j) with i > j whose slice is not
// the graded mirror of (j, i).
fn half_entries(t: &Tensor3, deg: &[i64]) -> Vec<(usize, usize, usize, Scalar)> {
    let mut out = Vec::new();
    for (&(i, j), v) in t {
        let keep = i <= j || {
            let mirror = t.get(&(j, i));
            let s = -Scalar::from_int(sgn(deg[i] * deg[j]));
            let expected: BTreeMap<usize, Scalar> = mirror
                .map(|m| m.iter().map(|(&k, x)| (k, &s * x)).collect())
                .unwrap_or_default();
            &expected != v
        };
        if keep {
            for (&k, x) in v {
                out.push((i, j, k, x.clone()));
            }
        }
    }
    out
}

fn complete(entries: Vec<(usize, usize, usize, Scalar)>, deg: &[i64]) -> Vec<(usize, usize, usize, Scalar)> {
    let pairs: BTreeSet<(usize, usize)> = entries.iter().map(|&(i, j, _, _)| (i, j)).collect();
    let mut out = entries.clone();
    for (i, j, k, x) in entries {
        if i != j && !pairs.contains(&(j, i)) {
            out.push((j, i, k, -Scalar::from_int(sgn(deg[i] * deg[j])) * x));
        }
    }
    out
}

impl AlgebraFile {
    pub fn from_bialgebra(b: &Bialgebra) -> Self {
        let g = &b.algebra;
        let deg = g.degrees();
        let dual_deg: Vec<i64> = (0..g.dim()).map(|i| b.dual_degree(i)).collect();
        let basis = g
            .basis()
            .iter()
            .map(|e| BasisEntry { name: e.name.clone(), degree: e.degree, weight: e.weight.clone() })
            .collect();
        let brackets = half_entries(g.tensor(), &deg)
            .into_iter()
            .map(|(i, j, k, x)| (i + 1, j + 1, k + 1, x.to_string()))
            .collect();
        let cobrackets = half_entries(b.cobracket_tensor(), &dual_deg)
            .into_iter()
            .map(|(i, j, k, x)| (k + 1, i + 1, j + 1, x.to_string()))
            .collect();
        let pairs = |m: &BTreeMap<(usize, usize), Scalar>| -> Vec<(usize, usize, String)> {
            m.iter().map(|(&(i, j), v)| (i + 1, j + 1, v.to_string())).collect()
        };
        AlgebraFile {
            name: b.name.clone(),
            shift_n: b.shift_n,
            basis,
            brackets,
            cobrackets,
            form: b.form.as_ref().map(|f| pairs(f.entries())),
            rmatrix: b.rmatrix.as_ref().map(|r| pairs(r.entries())),
        }
    }

    pub fn to_bialgebra(&self) -> Result<Bialgebra, Error> {
        let n = self.basis.len();
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|e| BasisElement { name: e.name.clone(), degree: e.degree, weight: e.weight.clone() })
            .collect();
        if let Some(len) = basis.iter().find_map(|b| b.weight.as_ref().map(Vec::len)) {
            if basis.iter().any(|b| b.weight.as_ref().map(Vec::len) != Some(len)) {
                return Err(Error::Parse("weights must be given for all basis elements with equal length".into()));
            }
        }
        let idx = |i: usize, what: &str| -> Result<usize, Error> {
            if i == 0 || i > n {
                Err(Error::Parse(format!("{what} index {i} out of range 1..{n}")))
            } else {
                Ok(i - 1)
            }
        };
        let coeff = |s: &str| s.trim().parse::<Scalar>();
        let deg: Vec<i64> = basis.iter().map(|b| b.degree).collect();
        let dual_deg: Vec<i64> = deg.iter().map(|d| -d - self.shift_n).collect();

        let mut seen = BTreeSet::new();
        let mut c = Vec::new();
        for (i, j, k, v) in &self.brackets {
            let key = (idx(*i, "bracket")?, idx(*j, "bracket")?, idx(*k, "bracket")?);
            if !seen.insert(key) {
                return Err(Error::Parse(format!("duplicate bracket entry {:?}", (i, j, k))));
            }
            c.push((key.0, key.1, key.2, coeff(v)?));
        }
        let mut seen = BTreeSet::new();
        let mut gamma = Vec::new();
        for (k, i, j, v) in &self.cobrackets {
            let key = (idx(*k, "cobracket")?, idx(*i, "cobracket")?, idx(*j, "cobracket")?);
            if !seen.insert(key) {
                return Err(Error::Parse(format!("duplicate cobracket entry {:?}", (k, i, j))));
            }
            gamma.push((key.1, key.2, key.0, coeff(v)?));
        }
        let pairs = |list: &Vec<(usize, usize, String)>, what: &str| -> Result<Vec<(usize, usize, Scalar)>, Error> {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for (i, j, v) in list {
                let key = (idx(*i, what)?, idx(*j, what)?);
                if !seen.insert(key) {
                    return Err(Error::Parse(format!("duplicate {what} entry {:?}", (i, j))));
                }
                out.push((key.0, key.1, coeff(v)?));
            }
            Ok(out)
        };
        let algebra = GradedLie::new(basis, complete(c, &deg));
        let gamma_t = crate::glie::tensor_from_entries(complete(gamma, &dual_deg));
        let mut b = Bialgebra::from_tensor(self.name.clone(), algebra, self.shift_n, gamma_t);
        if let Some(f) = &self.form {
            b.form = Some(BilinearForm::new(self.shift_n, pairs(f, "form")?));
        }
        if let Some(r) = &self.rmatrix {
            b.rmatrix = Some(RMatrix::from_tensor(pairs(r, "rmatrix")?));
        }
        Ok(b)
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Compact canonical serialization (field order fixed, entries sorted).
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn fingerprint(b: &Bialgebra) -> String {
    let json = AlgebraFile::from_bialgebra(b).canonical_json();
    hex::encode(Sha256::digest(json.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_indices() {
        let text = r#"{"name":"x","shift_n":0,"basis":[{"name":"a","degree":0}],
            "brackets":[[1,1,1,"1"],[1,1,1,"2"]],"cobrackets":[]}"#;
        assert!(matches!(AlgebraFile::parse(text).unwrap().to_bialgebra(), Err(Error::Parse(_))));
        let text = r#"{"name":"x","shift_n":0,"basis":[{"name":"a","degree":0}],
            "brackets":[[1,2,1,"1"]],"cobrackets":[]}"#;
        assert!(matches!(AlgebraFile::parse(text).unwrap().to_bialgebra(), Err(Error::Parse(_))));
        let text = r#"{"name":"x","shift_n":0,"basis":[{"name":"a","degree":0}],
            "brackets":[[1,1,1,"1/0"]],"cobrackets":[]}"#;
        assert!(AlgebraFile::parse(text).and_then(|f| f.to_bialgebra()).is_err());
    }
}
