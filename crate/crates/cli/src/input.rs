//! The JSON point-file format.
//!
//! ```json
//! {"field": {"p": 3, "h": 1}, "dim": 3, "points": [[0,0,0], [1,0,0]]}
//! ```
//!
//! Each point is either its `dim` affine coordinates or all `dim + 1`
//! homogeneous coordinates with a leading 1. Coordinates are field codes.

use serde::{Deserialize, Serialize};

use redei_core::{AffineSet, Gf, Point};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub h: u32,
}

impl FieldSpec {
    /// Parses `p,h`.
    pub fn parse(s: &str) -> Result<FieldSpec, String> {
        let (p, h) = s
            .split_once(',')
            .ok_or_else(|| format!("expected p,h, got {s:?}"))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| format!("bad characteristic {p:?}"))?;
        let h = h
            .trim()
            .parse()
            .map_err(|_| format!("bad extension degree {h:?}"))?;
        Ok(FieldSpec { p, h })
    }

    pub fn build(self) -> Result<Gf, CliError> {
        Ok(Gf::new(self.p, self.h)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub points: Vec<Vec<u32>>,
}

impl PointFile {
    pub fn from_json(text: &str) -> Result<PointFile, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed point file: {e}")))
    }

    /// Echo form: affine coordinates in set order.
    pub fn from_set(u: &AffineSet) -> PointFile {
        let gf = u.field();
        PointFile {
            field: FieldSpec {
                p: gf.p(),
                h: gf.h(),
            },
            dim: u.dim(),
            points: u
                .tails()
                .map(|t| t.iter().map(|c| c.code()).collect())
                .collect(),
        }
    }

    /// Builds the affine set, checking it against any `--field` and `--dim` given.
    pub fn to_set(
        &self,
        field: Option<FieldSpec>,
        dim: Option<usize>,
    ) -> Result<AffineSet, CliError> {
        if let Some(f) = field.filter(|&f| f != self.field) {
            return Err(CliError::Usage(format!(
                "--field {},{} does not match the point file field {},{}",
                f.p, f.h, self.field.p, self.field.h
            )));
        }
        if let Some(n) = dim.filter(|&n| n != self.dim) {
            return Err(CliError::Usage(format!(
                "--dim {n} does not match the point file dimension {}",
                self.dim
            )));
        }
        if self.dim < 2 {
            return Err(CliError::Usage("dimension must be at least 2".into()));
        }
        let gf = self.field.build()?;
        let mut pts = Vec::with_capacity(self.points.len());
        for (i, codes) in self.points.iter().enumerate() {
            let p = if codes.len() == self.dim {
                let mut full = vec![1];
                full.extend_from_slice(codes);
                Point::from_codes(&gf, &full)?
            } else if codes.len() == self.dim + 1 {
                if codes[0] != 1 {
                    return Err(CliError::Usage(format!("point {i} is not affine")));
                }
                Point::from_codes(&gf, codes)?
            } else {
                return Err(CliError::Usage(format!(
                    "point {i} has {} coordinates, expected {} or {}",
                    codes.len(),
                    self.dim,
                    self.dim + 1
                )));
            };
            pts.push(p);
        }
        Ok(AffineSet::new(&gf, self.dim, pts)?)
    }
}
