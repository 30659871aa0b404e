//! Scheme files: JSON with the field, `n`, and row bases in `(a|b)` layout.
//!
//! ```json
//! {"field":{"p":3,"m":1,"modulus":[0,1]},"n":4,
//!  "c_s":[],"c_r":[[1,1,1,0,0,0,0,0],[0,0,0,0,1,1,1,0]],
//!  "secret_reps":[[0,1,1,0,0,0,0,0],[0,0,0,0,0,1,1,0]]}
//! ```
//!
//! `secret_reps` and `c_max` are optional; without them the default secret
//! map and the greedy Lagrangian extension are used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::scheme::Scheme;
use crate::symplectic::{SympSpace, SympVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: u32,
    /// Monic modulus, constant term first; `[0, 1]` for prime fields.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub field: FieldJson,
    pub n: usize,
    pub c_s: Vec<Vec<u32>>,
    pub c_r: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secret_reps: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_max: Option<Vec<Vec<u32>>>,
}

impl FieldJson {
    pub fn of(f: &FieldSpec) -> Self {
        let modulus = if f.m() == 1 { vec![0, 1] } else { f.modulus().to_vec() };
        FieldJson {
            p: f.p() as u64,
            m: f.m(),
            modulus,
        }
    }

    pub fn to_field(&self) -> Result<FieldSpec> {
        if self.m == 1 {
            // any monic degree-1 modulus gives the same prime field
            FieldSpec::new(self.p, 1, None)
        } else {
            FieldSpec::new(self.p, self.m, Some(&self.modulus))
        }
    }
}

impl SchemeJson {
    /// Canonical (reduced echelon) bases, the scheme's secret map and its `C_max`.
    pub fn from_scheme(s: &Scheme) -> Self {
        let rows = |c: &SympSpace| c.rows().map(|r| r.to_vec()).collect::<Vec<_>>();
        SchemeJson {
            field: FieldJson::of(s.field()),
            n: s.n(),
            c_s: rows(s.c_s()),
            c_r: rows(s.c_r()),
            secret_reps: Some(s.secret_reps().to_vec()),
            c_max: Some(rows(s.c_max())),
        }
    }

    pub fn to_scheme(&self) -> Result<Scheme> {
        let f = self.field.to_field()?;
        let n = self.n;
        let space = |name: &str, rows: &[Vec<u32>]| -> Result<SympSpace> {
            for r in rows {
                if r.len() != 2 * n {
                    return Err(Error::Parse(format!(
                        "{name}: row of length {} where 2n = {}",
                        r.len(),
                        2 * n
                    )));
                }
            }
            SympSpace::span(&f, n, rows)
        };
        let c_s = space("c_s", &self.c_s)?;
        let c_r = space("c_r", &self.c_r)?;
        let reps = match &self.secret_reps {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| {
                        if r.len() != 2 * n {
                            return Err(Error::Parse(format!("secret_reps: row of length {}", r.len())));
                        }
                        SympVec::from_row(&f, r.clone())
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        match &self.c_max {
            None => Scheme::build(&c_s, &c_r, reps.as_deref()),
            Some(rows) => Scheme::build_with_cmax(&c_s, &c_r, reps.as_deref(), &space("c_max", rows)?),
        }
    }
}

pub fn scheme_to_json(s: &Scheme) -> String {
    serde_json::to_string_pretty(&SchemeJson::from_scheme(s)).expect("plain data serializes")
}

pub fn scheme_from_json(text: &str) -> Result<Scheme> {
    let js: SchemeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    js.to_scheme()
}
