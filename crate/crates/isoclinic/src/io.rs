//! On-disk formats.
//!
//! Matrices travel as
//! `{"rows": n, "cols": m, "data": [[[re, im], ...m pairs...], ...n rows...]}`
//! with `re`/`im` as JSON numbers, and error models as
//! `{"operators": [<matrix>, ...]}`. Serialization goes through serde_json,
//! so every number is written in its shortest round-tripping form and
//! re-parses to the identical bits.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::matrix::Tolerance;
use crate::qec::{ErrorModel, ExtractionResult};

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let data: Vec<Vec<[f64; 2]>> = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| {
                        let c = self.get(i, j);
                        [c.re, c.im]
                    })
                    .collect()
            })
            .collect();
        MatrixWire {
            rows: self.rows(),
            cols: self.cols(),
            data,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.data.len() != wire.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but data has {}",
                wire.rows,
                wire.data.len()
            )));
        }
        let mut entries = Vec::with_capacity(wire.rows * wire.cols);
        for (i, row) in wire.data.iter().enumerate() {
            if row.len() != wire.cols {
                return Err(D::Error::custom(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    wire.cols
                )));
            }
            entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        ComplexMatrix::from_rows(wire.rows, wire.cols, &entries)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ModelWire {
    operators: Vec<ComplexMatrix>,
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn write_matrix(path: &Path, matrix: &ComplexMatrix) -> Result<()> {
    fs::write(path, to_json_string(matrix)?)?;
    Ok(())
}

/// Pretty-printed JSON with a trailing newline; field order is fixed by
/// the struct definitions so identical values give identical bytes.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn write_model(path: &Path, model: &ErrorModel) -> Result<()> {
    let wire = ModelWire {
        operators: model.operators().to_vec(),
    };
    fs::write(path, to_json_string(&wire)?)?;
    Ok(())
}

/// Reads Kraus operators from a list of files. Each file is either a model
/// object `{"operators": [...]}` or a bare matrix; operators are
/// concatenated in argument order.
pub fn read_operators(paths: &[impl AsRef<Path>], tol: Tolerance) -> Result<ErrorModel> {
    let mut kraus = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if value.get("operators").is_some() {
            let wire: ModelWire = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            kraus.extend(wire.operators);
        } else {
            let matrix: ComplexMatrix = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            kraus.push(matrix);
        }
    }
    ErrorModel::new(kraus, tol)
}

/// Manifest written next to the basis and isometry files by the extract
/// command.
#[derive(Serialize)]
pub struct ExtractionManifest {
    pub tol: f64,
    pub subspaces: Vec<String>,
    pub partial_isometries: Vec<String>,
    pub lambda_matrix: ComplexMatrix,
    pub pairwise_lambda: Vec<Vec<f64>>,
    pub family_isoclinic: bool,
}

/// Writes one basis file and one partial-isometry file per operator into
/// `outdir`, plus a `result.json` manifest. Returns the manifest.
pub fn write_extraction(
    outdir: &Path,
    result: &ExtractionResult,
    tol: f64,
) -> Result<ExtractionManifest> {
    fs::create_dir_all(outdir)?;
    let mut subspace_files = Vec::new();
    let mut isometry_files = Vec::new();
    for (i, subspace) in result.subspaces.iter().enumerate() {
        let name = format!("subspace_{i:02}.json");
        write_matrix(&outdir.join(&name), subspace.basis())?;
        subspace_files.push(name);
    }
    for (i, isometry) in result.partial_isometries.iter().enumerate() {
        let name = format!("partial_isometry_{i:02}.json");
        write_matrix(&outdir.join(&name), isometry)?;
        isometry_files.push(name);
    }
    let manifest = ExtractionManifest {
        tol,
        subspaces: subspace_files,
        partial_isometries: isometry_files,
        lambda_matrix: result.lambda_matrix.clone(),
        pairwise_lambda: result.pairwise_lambda.clone(),
        family_isoclinic: result.family_isoclinic,
    };
    fs::write(outdir.join("result.json"), to_json_string(&manifest)?)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_shape() {
        let m = ComplexMatrix::from_rows(
            1,
            2,
            &[Complex64::new(1.5, -2.0), Complex64::new(0.0, 3.25)],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":1,"cols":2,"data":[[[1.5,-2.0],[0.0,3.25]]]}"#
        );
        let back: ComplexMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_ragged_rows() {
        let bad = r#"{"rows":2,"cols":2,"data":[[[1,0],[0,0]],[[1,0]]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
        let short = r#"{"rows":3,"cols":1,"data":[[[1,0]]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(short).is_err());
    }

    #[test]
    fn reads_models_and_bare_matrices() {
        let dir = tempfile::tempdir().unwrap();
        let eye = ComplexMatrix::identity(2).scale_real(0.6);
        let model_path = dir.path().join("model.json");
        let model = ErrorModel::new(vec![eye.clone()], Tolerance::default()).unwrap();
        write_model(&model_path, &model).unwrap();
        let matrix_path = dir.path().join("op.json");
        write_matrix(&matrix_path, &eye).unwrap();

        let combined = read_operators(&[model_path, matrix_path], Tolerance::default()).unwrap();
        assert_eq!(combined.len(), 2);
    }
}
