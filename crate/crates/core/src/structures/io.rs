//! JSON files for hypergraphs and partitions.
//!
//! Payload keys are emitted in sorted order with compact separators so that
//! identical payloads are byte-identical. Provenance is stored next to the
//! payload and carries the SHA-256 digest of the canonical payload.

use super::{LabeledHypergraph, SplitPartition, StructureError};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub m: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    pub k: usize,
    pub parts: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

/// Compact JSON with object keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String, StructureError> {
    // serde_json::Value maps are BTreeMaps, so a round trip sorts keys.
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

/// Hex SHA-256 of the canonical JSON of `value`.
pub fn payload_digest<T: Serialize>(value: &T) -> Result<String, StructureError> {
    let json = canonical_json(value)?;
    Ok(hex::encode(Sha256::digest(json.as_bytes())))
}

fn with_digest(provenance: Option<Value>, digest: &str) -> Option<Value> {
    provenance.map(|mut p| {
        if let Value::Object(map) = &mut p {
            map.insert("payload_digest".into(), Value::String(digest.to_owned()));
        }
        p
    })
}

impl HypergraphFile {
    pub fn from_graph(g: &LabeledHypergraph) -> Self {
        HypergraphFile { m: g.m(), vertices: g.labels().to_vec(), edges: g.edges().to_vec(), provenance: None }
    }

    pub fn into_graph(self) -> Result<LabeledHypergraph, StructureError> {
        LabeledHypergraph::new(self.m, self.vertices, self.edges)
    }

    pub fn digest(&self) -> Result<String, StructureError> {
        payload_digest(&HypergraphFile { provenance: None, ..self.clone() })
    }
}

impl PartitionFile {
    pub fn from_partition(p: &SplitPartition) -> Self {
        PartitionFile { k: p.k, parts: p.parts.clone(), provenance: None }
    }

    pub fn digest(&self) -> Result<String, StructureError> {
        payload_digest(&PartitionFile { provenance: None, ..self.clone() })
    }
}

/// Writes the graph and returns its payload digest.
pub fn write_hypergraph(
    path: &Path,
    g: &LabeledHypergraph,
    provenance: Option<Value>,
) -> Result<String, StructureError> {
    let mut file = HypergraphFile::from_graph(g);
    let digest = file.digest()?;
    file.provenance = with_digest(provenance, &digest);
    fs::write(path, canonical_json(&file)? + "\n")?;
    Ok(digest)
}

/// Writes the partition and returns its payload digest.
pub fn write_partition(path: &Path, p: &SplitPartition, provenance: Option<Value>) -> Result<String, StructureError> {
    let mut file = PartitionFile::from_partition(p);
    let digest = file.digest()?;
    file.provenance = with_digest(provenance, &digest);
    fs::write(path, canonical_json(&file)? + "\n")?;
    Ok(digest)
}

pub fn read_hypergraph(path: &Path) -> Result<(LabeledHypergraph, Option<Value>), StructureError> {
    let file: HypergraphFile = serde_json::from_slice(&fs::read(path)?)?;
    let provenance = file.provenance.clone();
    Ok((file.into_graph()?, provenance))
}

/// Part sizes are checked against the declared `k`.
pub fn read_partition(path: &Path) -> Result<SplitPartition, StructureError> {
    let file: PartitionFile = serde_json::from_slice(&fs::read(path)?)?;
    SplitPartition::new(file.k, file.parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_stable_digest() {
        let dir = std::env::temp_dir().join(format!("splitforge-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let g = LabeledHypergraph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let p = SplitPartition::new(2, vec![vec![0, 2], vec![1]]).unwrap();
        let gp = dir.join("g.json");
        let pp = dir.join("p.json");
        let d1 = write_hypergraph(&gp, &g, Some(json!({"command": "test"}))).unwrap();
        let bytes1 = fs::read(&gp).unwrap();
        let d2 = write_hypergraph(&gp, &g, Some(json!({"command": "test"}))).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(bytes1, fs::read(&gp).unwrap());
        let (h, prov) = read_hypergraph(&gp).unwrap();
        assert_eq!(h, g);
        assert_eq!(prov.unwrap()["payload_digest"], json!(d1));
        write_partition(&pp, &p, None).unwrap();
        assert_eq!(read_partition(&pp).unwrap(), p);
        assert!(String::from_utf8(bytes1).unwrap().starts_with(r#"{"edges":[[0,1],[1,2]],"m":2,"#));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn declared_k_is_enforced_on_read() {
        let dir = std::env::temp_dir().join(format!("splitforge-io-k-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let pp = dir.join("p.json");
        fs::write(&pp, r#"{"k":1,"parts":[[0,1]]}"#).unwrap();
        assert!(matches!(read_partition(&pp), Err(StructureError::PartTooLarge { .. })));
        fs::remove_dir_all(&dir).unwrap();
    }
}
