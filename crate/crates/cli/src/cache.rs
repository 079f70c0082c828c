//! Content-addressed on-disk cache for Ramsey level scans, keyed by the
//! pattern's canonical form and the host level.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use oramsey_core::digraph::Digraph;

/// Canonical key bytes for a pattern digraph: the permutation-minimal
/// two-bit-per-pair staircase encoding for up to 9 vertices (00 none,
/// 01 forward, 10 backward), preceded by the order; larger patterns fall
/// back to the labeled edge list (still deterministic, not isomorphism-
/// invariant — flagged by the leading byte).
pub fn pattern_key(d: &Digraph) -> Vec<u8> {
    let n = d.vertex_count() as usize;
    if n <= 9 {
        let mut best: Option<Vec<u8>> = None;
        let mut perm: Vec<u32> = (0..n as u32).collect();
        permute(&mut perm, 0, &mut |p| {
            let mut code = Vec::with_capacity(n * (n - 1) / 2);
            for j in 1..n {
                for i in 0..j {
                    let (u, v) = (p[i], p[j]);
                    let fwd = d.out_neighbors(u).contains(&v);
                    let bwd = d.out_neighbors(v).contains(&u);
                    code.push(match (fwd, bwd) {
                        (false, false) => 0u8,
                        (true, false) => 1,
                        (false, true) => 2,
                        (true, true) => 3,
                    });
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        let mut key = vec![1u8, n as u8];
        key.extend(best.unwrap_or_default());
        key
    } else {
        let mut key = vec![0u8];
        key.extend((d.vertex_count()).to_le_bytes());
        for &(u, v) in d.edges() {
            key.extend(u.to_le_bytes());
            key.extend(v.to_le_bytes());
        }
        key
    }
}

fn permute(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// One cached level verdict.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: u32,
    pub mode: String,
    /// None: every host at this level contains the pattern. Some(code): the
    /// smallest labeled code (or canonical staircase code) without a copy.
    pub free_code: Option<u64>,
}

pub struct RamseyCache {
    dir: PathBuf,
}

impl RamseyCache {
    pub fn open(dir: &Path) -> std::io::Result<RamseyCache> {
        fs::create_dir_all(dir)?;
        Ok(RamseyCache { dir: dir.to_path_buf() })
    }

    fn path_for(&self, pattern: &Digraph, level: u32, mode: &str) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(pattern_key(pattern));
        hasher.update(level.to_le_bytes());
        hasher.update(mode.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(hasher.finalize())))
    }

    pub fn get(&self, pattern: &Digraph, level: u32, mode: &str) -> Option<LevelRecord> {
        let path = self.path_for(pattern, level, mode);
        let text = fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, pattern: &Digraph, record: &LevelRecord) -> std::io::Result<()> {
        let path = self.path_for(pattern, record.level, &record.mode);
        fs::write(path, serde_json::to_string_pretty(record).expect("serializable"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use oramsey_core::digraph::make_transitive_pattern;
    use tempfile::tempdir;

    #[test]
    fn key_is_isomorphism_invariant() {
        // P_3 as 0->1->2 and relabeled 2->0->1 share a key.
        let a = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let b = Digraph::new(3, vec![(2, 0), (0, 1)]).unwrap();
        assert_eq!(pattern_key(&a), pattern_key(&b));
        let c = make_transitive_pattern(3);
        assert_ne!(pattern_key(&a), pattern_key(&c));
    }

    #[test]
    fn round_trip() {
        let dir = tempdir().unwrap();
        let cache = RamseyCache::open(dir.path()).unwrap();
        let tt3 = make_transitive_pattern(3);
        assert!(cache.get(&tt3, 4, "labeled").is_none());
        let rec = LevelRecord { level: 4, mode: "labeled".into(), free_code: None };
        cache.put(&tt3, &rec).unwrap();
        assert_eq!(cache.get(&tt3, 4, "labeled"), Some(rec));
    }
}
