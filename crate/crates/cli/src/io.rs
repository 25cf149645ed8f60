use std::path::Path;

use indexlab_core::graph::GraphJson;
use indexlab_core::matrix::MatrixJson;
use indexlab_core::{FFMatrix, Graph, P4Instance};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::report::{CliError, InputDigest};

fn read_json<T: DeserializeOwned>(path: &Path, digests: &mut Vec<InputDigest>) -> Result<T, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    digests.push(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    });
    serde_json::from_slice(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path, digests: &mut Vec<InputDigest>) -> Result<Graph, CliError> {
    let j: GraphJson = read_json(path, digests)?;
    Ok(Graph::from_json(&j)?)
}

pub fn read_matrix(path: &Path, digests: &mut Vec<InputDigest>) -> Result<FFMatrix, CliError> {
    let j: MatrixJson = read_json(path, digests)?;
    Ok(FFMatrix::from_json(&j)?)
}

pub fn read_p4(path: &Path, digests: &mut Vec<InputDigest>) -> Result<P4Instance, CliError> {
    read_json(path, digests)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)? + "\n";
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
