//! Flat parameter vectors with a named-slice layout registry.
//!
//! Every parametric model stores all trainable weights in one flat f64
//! vector. The layout maps each layer tensor to a contiguous slice, which
//! keeps EMA tracking, Adam state, snapshots, and ensembling plain vector
//! arithmetic. Checkpoints are a JSON header followed by the raw
//! little-endian f64 array.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::NnError;

/// One named contiguous slice of the flat parameter vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSlice {
    pub name: String,
    pub offset: usize,
    pub len: usize,
}

/// Registry mapping layer tensors to slices of a flat vector.
///
/// The layout is fixed at model construction and never changes over the
/// model's lifetime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamLayout {
    slices: Vec<ParamSlice>,
    total: usize,
}

impl ParamLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a tensor of `len` parameters and returns its offset.
    pub fn push(&mut self, name: impl Into<String>, len: usize) -> usize {
        let offset = self.total;
        self.slices.push(ParamSlice { name: name.into(), offset, len });
        self.total += len;
        offset
    }

    pub fn total_len(&self) -> usize {
        self.total
    }

    pub fn slices(&self) -> &[ParamSlice] {
        &self.slices
    }

    pub fn find(&self, name: &str) -> Option<&ParamSlice> {
        self.slices.iter().find(|s| s.name == name)
    }
}

/// Flat vector of all trainable parameters plus its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    pub data: Vec<f64>,
    pub layout: ParamLayout,
}

impl ParamVector {
    pub fn zeros(layout: ParamLayout) -> Self {
        let data = vec![0.0; layout.total_len()];
        Self { data, layout }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn slice(&self, name: &str) -> Option<&[f64]> {
        self.layout.find(name).map(|s| &self.data[s.offset..s.offset + s.len])
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"TSBC";

/// JSON header preceding the raw parameter array in a checkpoint file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub version: u32,
    pub layout: ParamLayout,
    pub param_count: usize,
    /// Model metadata (kind, hyperparameters, lookback/horizon) set by the
    /// model zoo; opaque at this layer.
    #[serde(default)]
    pub meta: serde_json::Value,
}

/// Writes `params` with `meta` to `path` in the checkpoint format:
/// magic, u32 LE header length, header JSON, little-endian f64 array.
pub fn write_checkpoint(
    path: &Path,
    params: &ParamVector,
    meta: serde_json::Value,
) -> Result<(), NnError> {
    let header = CheckpointHeader {
        version: 1,
        layout: params.layout.clone(),
        param_count: params.data.len(),
        meta,
    };
    let header_bytes = serde_json::to_vec(&header).map_err(|e| NnError::Checkpoint(e.to_string()))?;
    let mut file = std::fs::File::create(path)?;
    file.write_all(CHECKPOINT_MAGIC)?;
    file.write_all(&(header_bytes.len() as u32).to_le_bytes())?;
    file.write_all(&header_bytes)?;
    for v in &params.data {
        file.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a checkpoint written by [`write_checkpoint`].
pub fn read_checkpoint(path: &Path) -> Result<(ParamVector, CheckpointHeader), NnError> {
    let mut file = std::fs::File::open(path)?;
    let mut magic = [0u8; 4];
    file.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(NnError::Checkpoint("bad magic bytes".into()));
    }
    let mut len_bytes = [0u8; 4];
    file.read_exact(&mut len_bytes)?;
    let header_len = u32::from_le_bytes(len_bytes) as usize;
    let mut header_bytes = vec![0u8; header_len];
    file.read_exact(&mut header_bytes)?;
    let header: CheckpointHeader =
        serde_json::from_slice(&header_bytes).map_err(|e| NnError::Checkpoint(e.to_string()))?;
    let mut data = vec![0.0f64; header.param_count];
    let mut buf = [0u8; 8];
    for v in data.iter_mut() {
        file.read_exact(&mut buf)?;
        *v = f64::from_le_bytes(buf);
    }
    if header.layout.total_len() != data.len() {
        return Err(NnError::Checkpoint("layout/param count mismatch".into()));
    }
    Ok((ParamVector { data, layout: header.layout.clone() }, header))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_registers_contiguous_slices() {
        let mut layout = ParamLayout::new();
        assert_eq!(layout.push("w1", 6), 0);
        assert_eq!(layout.push("b1", 3), 6);
        assert_eq!(layout.total_len(), 9);
        let s = layout.find("b1").unwrap();
        assert_eq!((s.offset, s.len), (6, 3));
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut layout = ParamLayout::new();
        layout.push("w", 4);
        let mut params = ParamVector::zeros(layout);
        params.data.copy_from_slice(&[1.5, -2.25, 0.0, f64::MIN_POSITIVE]);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        write_checkpoint(&path, &params, serde_json::json!({"kind": "test"})).unwrap();
        let (loaded, header) = read_checkpoint(&path).unwrap();
        assert_eq!(loaded.data, params.data);
        assert_eq!(header.meta["kind"], "test");
        assert_eq!(loaded.slice("w").unwrap(), params.data.as_slice());
    }

    #[test]
    fn checkpoint_rejects_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.bin");
        std::fs::write(&path, b"NOPE....").unwrap();
        assert!(read_checkpoint(&path).is_err());
    }
}
