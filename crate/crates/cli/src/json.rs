//! JSON interchange for matroids, formal sums and matrices. Coefficients
//! are exact `"p/q"` strings.

use matroid_minor::hopf::{IsoSum, PhiMatrix};
use matroid_minor::linalg::RationalMatrix;
use matroid_minor::matroid::bits;
use matroid_minor::coalgebra::FormalSum;
use matroid_minor::{GroundSet, IsoClass, Matroid, MatroidError, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad coefficient '{0}'")]
    Coefficient(String),
    #[error("rank field {field} does not match basis size {actual}")]
    RankMismatch { field: usize, actual: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidDoc {
    pub ground: Vec<String>,
    pub rank: usize,
    pub bases: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coef: String,
    pub matroid: MatroidDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub classes: Vec<MatroidDoc>,
    pub phi: Vec<Vec<String>>,
    pub phi_inv: Vec<Vec<String>>,
}

pub fn matroid_doc(m: &Matroid) -> MatroidDoc {
    let ground = m.ground();
    let mut positions: Vec<Vec<usize>> = m.bases().iter().map(|&b| bits(b).collect()).collect();
    positions.sort();
    MatroidDoc {
        ground: ground.labels().iter().map(|l| l.as_str().to_string()).collect(),
        rank: m.rank(),
        bases: positions
            .into_iter()
            .map(|b| b.into_iter().map(|i| ground.labels()[i].as_str().to_string()).collect())
            .collect(),
    }
}

pub fn matroid_from_doc(doc: &MatroidDoc) -> Result<Matroid, JsonError> {
    let ground = GroundSet::new(&doc.ground)?;
    let bases: Vec<&[String]> = doc.bases.iter().map(Vec::as_slice).collect();
    let m = Matroid::from_labels(ground, &bases)?;
    if m.rank() != doc.rank {
        return Err(JsonError::RankMismatch {
            field: doc.rank,
            actual: m.rank(),
        });
    }
    Ok(m)
}

pub fn matroid_to_json(m: &Matroid) -> String {
    serde_json::to_string(&matroid_doc(m)).expect("serializable")
}

pub fn matroid_from_json(text: &str) -> Result<Matroid, JsonError> {
    matroid_from_doc(&serde_json::from_str(text)?)
}

pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    let bad = || JsonError::Coefficient(s.to_string());
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn formal_sum_doc(x: &FormalSum) -> Vec<TermDoc> {
    x.iter()
        .map(|(m, c)| TermDoc {
            coef: format_rational(c),
            matroid: matroid_doc(m),
        })
        .collect()
}

pub fn formal_sum_from_doc(doc: &[TermDoc]) -> Result<FormalSum, JsonError> {
    let mut out = FormalSum::zero();
    for t in doc {
        out.add_term(matroid_from_doc(&t.matroid)?, parse_rational(&t.coef)?);
    }
    Ok(out)
}

/// Classes are written as their canonical representatives.
pub fn iso_sum_doc(x: &IsoSum) -> Vec<TermDoc> {
    x.iter()
        .map(|(c, k)| TermDoc {
            coef: format_rational(k),
            matroid: matroid_doc(c.matroid()),
        })
        .collect()
}

pub fn iso_sum_from_doc(doc: &[TermDoc]) -> Result<IsoSum, JsonError> {
    let mut out = IsoSum::zero();
    for t in doc {
        out.add_term(matroid_from_doc(&t.matroid)?.canonicalize(), parse_rational(&t.coef)?);
    }
    Ok(out)
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_doc(pm: &PhiMatrix) -> MatrixDoc {
    MatrixDoc {
        classes: pm.classes.iter().map(|c| matroid_doc(c.matroid())).collect(),
        phi: matrix_rows(&pm.phi),
        phi_inv: matrix_rows(&pm.phi_inv),
    }
}

/// Classes and both matrices back from a matrix document.
pub fn matrix_from_doc(
    doc: &MatrixDoc,
) -> Result<(Vec<IsoClass>, RationalMatrix, RationalMatrix), JsonError> {
    let classes = doc
        .classes
        .iter()
        .map(|d| Ok(matroid_from_doc(d)?.canonicalize()))
        .collect::<Result<Vec<_>, JsonError>>()?;
    let parse = |rows: &[Vec<String>]| -> Result<RationalMatrix, JsonError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(RationalMatrix::from_rows(rows))
    };
    Ok((classes, parse(&doc.phi)?, parse(&doc.phi_inv)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use matroid_minor::{rat, ratio};

    #[test]
    fn matroid_document_layout() {
        let g = GroundSet::new(["b", "a"]).unwrap();
        let m = Matroid::uniform(1, g).unwrap();
        assert_eq!(
            matroid_to_json(&m),
            r#"{"ground":["a","b"],"rank":1,"bases":[["a"],["b"]]}"#
        );
        assert_eq!(matroid_from_json(&matroid_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_inconsistent_documents() {
        assert!(matches!(
            matroid_from_json(r#"{"ground":["a","b"],"rank":2,"bases":[["a"],["b"]]}"#),
            Err(JsonError::RankMismatch { .. })
        ));
        assert!(matches!(
            matroid_from_json(r#"{"ground":["a","b"],"rank":1,"bases":[["c"]]}"#),
            Err(JsonError::Matroid(_))
        ));
        assert!(matroid_from_json("{").is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(format_rational(&rat(-1)), "-1/1");
        assert_eq!(format_rational(&ratio(6, 8)), "3/4");
        assert_eq!(parse_rational("11/120").unwrap(), ratio(11, 120));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
