//! Structure constants and invariant forms of finite-dimensional Lie algebras.

use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::rational::{fmt_rational, parse_rational, q, Rational};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("form is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("form is not invariant on basis triple ({i}, {j}, {k})")]
    NotInvariant { i: usize, j: usize, k: usize },
    #[error("cannot read structure-constant file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed structure-constant JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// `[e_i, e_j] = sum_k c[i][j][k] e_k` together with an invariant symmetric form `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieData {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
    form: Vec<Vec<Rational>>,
    names: Vec<String>,
}

#[derive(Deserialize)]
struct LieJson {
    dim: usize,
    c: Vec<(usize, usize, usize, String)>,
    #[serde(rename = "B")]
    form: Vec<(usize, usize, String)>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

impl LieData {
    /// Builds and validates a table. Entries not listed are zero.
    pub fn new(
        dim: usize,
        constants: &[(usize, usize, usize, Rational)],
        form: &[(usize, usize, Rational)],
        names: Option<Vec<String>>,
    ) -> Result<Self, LieError> {
        let check = |index: usize| {
            if index < dim {
                Ok(())
            } else {
                Err(LieError::IndexOutOfRange { index, dim })
            }
        };
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, k, v) in constants {
            check(*i)?;
            check(*j)?;
            check(*k)?;
            c[*i][*j][*k] = v.clone();
        }
        let mut b = vec![vec![Rational::zero(); dim]; dim];
        for (i, j, v) in form {
            check(*i)?;
            check(*j)?;
            b[*i][*j] = v.clone();
        }
        let names = names
            .filter(|n| n.len() == dim)
            .unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        let lie = LieData { dim, c, form: b, names };
        lie.validate()?;
        Ok(lie)
    }

    /// `sl_2` on the basis `(e, h, f)`, with form `scale * tr(xy)` in the
    /// defining representation. The Killing form is `scale = 4`.
    pub fn sl2_with_scale(scale: Rational) -> Self {
        let (e, h, f) = (0, 1, 2);
        let constants = [
            (h, e, e, q(2)),
            (e, h, e, q(-2)),
            (h, f, f, q(-2)),
            (f, h, f, q(2)),
            (e, f, h, q(1)),
            (f, e, h, q(-1)),
        ];
        let form = [(e, f, scale.clone()), (f, e, scale.clone()), (h, h, scale * q(2))];
        LieData::new(3, &constants, &form, Some(vec!["e".into(), "h".into(), "f".into()]))
            .expect("sl2 table is valid")
    }

    /// `sl_2` with the Killing form.
    pub fn sl2() -> Self {
        Self::sl2_with_scale(q(4))
    }

    /// Reads `{dim, c: [[i,j,k,"p/q"],...], B: [[i,j,"p/q"],...]}`.
    pub fn from_json_str(src: &str) -> Result<Self, LieError> {
        let raw: LieJson = serde_json::from_str(src)?;
        let rat = |s: &str| parse_rational(s).ok_or_else(|| LieError::BadRational(s.to_string()));
        let constants = raw
            .c
            .iter()
            .map(|(i, j, k, v)| Ok((*i, *j, *k, rat(v)?)))
            .collect::<Result<Vec<_>, LieError>>()?;
        let form = raw
            .form
            .iter()
            .map(|(i, j, v)| Ok((*i, *j, rat(v)?)))
            .collect::<Result<Vec<_>, LieError>>()?;
        Self::new(raw.dim, &constants, &form, raw.names)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, LieError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn form(&self, i: usize, j: usize) -> &Rational {
        &self.form[i][j]
    }

    /// `[e_i, e_j]` as `(k, coefficient)` pairs with nonzero coefficient.
    pub fn bracket_basis(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.c[i][j].iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    fn form_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * yj * &self.form[i][j];
            }
        }
        acc
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = q(1);
        v
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric { i, j, k });
                    }
                }
                if self.form[i][j] != self.form[j][i] {
                    return Err(LieError::NotSymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let eij = self.bracket_vec(&self.unit(i), &self.unit(j));
                for k in 0..n {
                    let ek = self.unit(k);
                    let ejk = self.bracket_vec(&self.unit(j), &ek);
                    let eki = self.bracket_vec(&ek, &self.unit(i));
                    let sum: Vec<Rational> = self
                        .bracket_vec(&eij, &ek)
                        .into_iter()
                        .zip(self.bracket_vec(&ejk, &self.unit(i)))
                        .zip(self.bracket_vec(&eki, &self.unit(j)))
                        .map(|((a, b), c)| a + b + c)
                        .collect();
                    if sum.iter().any(|v| !v.is_zero()) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                    if self.form_vec(&eij, &ek) != self.form_vec(&self.unit(i), &ejk) {
                        return Err(LieError::NotInvariant { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Text dump of the nonzero structure constants.
    pub fn describe(&self) -> String {
        let mut lines = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    if i < j {
                        lines.push(format!(
                            "[{}, {}] += {} {}",
                            self.names[i],
                            self.names[j],
                            fmt_rational(c),
                            self.names[k]
                        ));
                    }
                }
            }
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_killing() {
        let sl2 = LieData::sl2();
        assert_eq!(sl2.form(0, 2), &q(4));
        assert_eq!(sl2.form(1, 1), &q(8));
        assert_eq!(sl2.structure_constant(0, 2, 1), &q(1));
    }

    #[test]
    fn json_round() {
        let src = r#"{"dim": 3,
            "c": [[1,0,0,"2"],[0,1,0,"-2"],[1,2,2,"-2"],[2,1,2,"2"],[0,2,1,"1"],[2,0,1,"-1"]],
            "B": [[0,2,"1"],[2,0,"1"],[1,1,"2"]]}"#;
        let lie = LieData::from_json_str(src).unwrap();
        assert_eq!(lie, LieData::sl2_with_scale(q(1)).with_default_names());
    }

    #[test]
    fn rejects_broken_tables() {
        let missing_antisym = r#"{"dim": 2, "c": [[0,1,0,"1"]], "B": []}"#;
        assert!(matches!(
            LieData::from_json_str(missing_antisym),
            Err(LieError::NotAntisymmetric { .. })
        ));
        // sl2 with a non-invariant form
        let bad_form = r#"{"dim": 3,
            "c": [[1,0,0,"2"],[0,1,0,"-2"],[1,2,2,"-2"],[2,1,2,"2"],[0,2,1,"1"],[2,0,1,"-1"]],
            "B": [[0,2,"1"],[2,0,"1"],[1,1,"3"]]}"#;
        assert!(matches!(
            LieData::from_json_str(bad_form),
            Err(LieError::NotInvariant { .. })
        ));
        // not a Lie algebra: [e0,e1]=e1, [e1,e2]=e0, rest zero
        let bad_jacobi = r#"{"dim": 3,
            "c": [[0,1,1,"1"],[1,0,1,"-1"],[1,2,0,"1"],[2,1,0,"-1"]], "B": []}"#;
        assert!(matches!(
            LieData::from_json_str(bad_jacobi),
            Err(LieError::Jacobi { .. })
        ));
        let out_of_range = r#"{"dim": 1, "c": [[0,1,0,"1"]], "B": []}"#;
        assert!(matches!(
            LieData::from_json_str(out_of_range),
            Err(LieError::IndexOutOfRange { .. })
        ));
    }

    impl LieData {
        fn with_default_names(mut self) -> Self {
            self.names = (0..self.dim).map(|i| format!("e{i}")).collect();
            self
        }
    }
}
