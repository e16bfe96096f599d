//! File-backed node store: ingest, fail, repair, extract.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use lrc_core::CodeError;

use crate::container::{node_path, NodeFile};
use crate::error::{Result, SimError};
use crate::pack::{bits_per_symbol, pack, stripes_for, unpack};
use crate::scheme::{CodeSpec, Scheme};

#[derive(Debug)]
pub struct Cluster {
    scheme: Scheme,
    dir: PathBuf,
    stripes: usize,
    original_len: u64,
}

/// Outcome of one repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairOutcome {
    pub failed: BTreeSet<usize>,
    pub helpers: BTreeSet<usize>,
    /// Symbols moved, summed over stripes.
    pub symbols: usize,
    pub bytes: usize,
}

impl Cluster {
    /// Shards `data` over fresh node files in `dir`.
    pub fn ingest(data: &[u8], spec: &CodeSpec, dir: &Path) -> Result<Self> {
        if data.is_empty() {
            return Err(CodeError::Usage("input file is empty".into()).into());
        }
        let scheme = Scheme::build(spec)?;
        Self::ingest_with(data, scheme, dir)
    }

    pub fn ingest_with(data: &[u8], scheme: Scheme, dir: &Path) -> Result<Self> {
        if data.is_empty() {
            return Err(CodeError::Usage("input file is empty".into()).into());
        }
        std::fs::create_dir_all(dir).map_err(SimError::io(dir))?;
        let bits = bits_per_symbol(scheme.base().order());
        let per = scheme.stripe_digits();
        let stripes = stripes_for(data.len(), bits, per);
        let digits = pack(data, bits, stripes * per);
        let nodes = scheme.node_count();
        let mut payloads = vec![Vec::new(); nodes];
        for chunk in digits.chunks(per) {
            for (node, col) in scheme.encode_stripe(chunk)?.into_iter().enumerate() {
                payloads[node].extend(col);
            }
        }
        let cluster = Self {
            scheme,
            dir: dir.to_path_buf(),
            stripes,
            original_len: data.len() as u64,
        };
        for (node, payload) in payloads.into_iter().enumerate() {
            cluster.node_file(node, payload).write(&cluster.path(node))?;
        }
        Ok(cluster)
    }

    /// Reopens a cluster from whatever node files remain in `dir`.
    pub fn open(dir: &Path) -> Result<Self> {
        let entries = std::fs::read_dir(dir).map_err(SimError::io(dir))?;
        let mut first = None;
        for entry in entries {
            let path = entry.map_err(SimError::io(dir))?.path();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
            if name.starts_with("node_") && name.ends_with(".lrc") {
                first = Some(path);
                break;
            }
        }
        let path = first.ok_or({
            SimError::Code(CodeError::InsufficientNodes { need: 1, got: 0 })
        })?;
        let file = NodeFile::read(&path)?;
        let scheme = Scheme::from_descriptor(&file.descriptor)?;
        Ok(Self {
            scheme,
            dir: dir.to_path_buf(),
            stripes: file.stripes,
            original_len: file.original_len,
        })
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stripes(&self) -> usize {
        self.stripes
    }

    pub fn original_len(&self) -> u64 {
        self.original_len
    }

    pub fn path(&self, node: usize) -> PathBuf {
        node_path(&self.dir, node)
    }

    fn column_bytes(&self) -> usize {
        self.scheme.alpha() * self.scheme.symbol_bytes()
    }

    /// Bytes held across all nodes, headers excluded.
    pub fn storage_bytes(&self) -> usize {
        self.scheme.node_count() * self.stripes * self.column_bytes()
    }

    fn node_file(&self, node: usize, payload: Vec<u8>) -> NodeFile {
        NodeFile {
            descriptor: self.scheme.descriptor(),
            node,
            alpha: self.scheme.alpha(),
            stripes: self.stripes,
            original_len: self.original_len,
            payload,
        }
    }

    /// Nodes whose files are present.
    pub fn alive(&self) -> BTreeSet<usize> {
        (0..self.scheme.node_count())
            .filter(|&i| self.path(i).is_file())
            .collect()
    }

    pub fn missing(&self) -> BTreeSet<usize> {
        let alive = self.alive();
        (0..self.scheme.node_count())
            .filter(|i| !alive.contains(i))
            .collect()
    }

    /// Reads and validates one node's payload.
    pub fn read_node(&self, node: usize) -> Result<Vec<u8>> {
        let path = self.path(node);
        let file = NodeFile::read(&path)?;
        let want = self.node_file(node, Vec::new());
        let bad = |reason: String| SimError::Format {
            path: path.clone(),
            reason,
        };
        if file.descriptor != want.descriptor {
            return Err(bad("code descriptor differs from the cluster".into()));
        }
        if file.node != node || file.alpha != want.alpha || file.stripes != self.stripes {
            return Err(bad("node id, α or stripe count differs from the cluster".into()));
        }
        if file.original_len != self.original_len {
            return Err(bad("original length differs from the cluster".into()));
        }
        if file.payload.len() != self.stripes * self.column_bytes() {
            return Err(bad(format!(
                "payload is {} bytes, expected {}",
                file.payload.len(),
                self.stripes * self.column_bytes()
            )));
        }
        Ok(file.payload)
    }

    /// Removes the given nodes' files.
    pub fn fail(&self, nodes: &BTreeSet<usize>) -> Result<()> {
        for &node in nodes {
            let path = self.path(node);
            if path.is_file() {
                std::fs::remove_file(&path).map_err(SimError::io(&path))?;
            }
        }
        Ok(())
    }

    /// Rebuilds the `failed` nodes, ignoring and overwriting any files they
    /// still have. Nothing is written unless all stripes repair successfully.
    pub fn repair(&self, failed: &BTreeSet<usize>) -> Result<RepairOutcome> {
        if let Some(&f) = failed.iter().find(|&&f| f >= self.scheme.node_count()) {
            return Err(CodeError::Usage(format!(
                "node {f} out of range (0..{})",
                self.scheme.node_count()
            ))
            .into());
        }
        let alive = self.alive();
        let helpers = self.scheme.helpers_for(failed, &alive)?;
        let payloads: BTreeMap<usize, Vec<u8>> = helpers
            .iter()
            .map(|&h| Ok((h, self.read_node(h)?)))
            .collect::<Result<_>>()?;
        let cb = self.column_bytes();
        let mut restored: BTreeMap<usize, Vec<u8>> = failed.iter().map(|&f| (f, Vec::new())).collect();
        let mut symbols = 0;
        for s in 0..self.stripes {
            let cols = payloads
                .iter()
                .map(|(&h, p)| (h, p[s * cb..(s + 1) * cb].to_vec()))
                .collect();
            let (out, moved) = self.scheme.repair_stripe(failed, &helpers, &cols)?;
            symbols += moved;
            for (f, col) in out {
                restored.get_mut(&f).expect("failed node present").extend(col);
            }
        }
        for (&f, payload) in &restored {
            self.node_file(f, payload.clone()).write(&self.path(f))?;
        }
        Ok(RepairOutcome {
            failed: failed.clone(),
            helpers,
            symbols,
            bytes: symbols * self.scheme.symbol_bytes(),
        })
    }

    /// Decodes the original bytes from the live nodes.
    pub fn extract(&self) -> Result<Vec<u8>> {
        let alive = self.alive();
        let chosen: Vec<usize> = match self.scheme {
            Scheme::Local(_) => alive.into_iter().collect(),
            _ => alive.into_iter().take(self.scheme.decode_nodes()).collect(),
        };
        let payloads: BTreeMap<usize, Vec<u8>> = chosen
            .iter()
            .map(|&h| Ok((h, self.read_node(h)?)))
            .collect::<Result<_>>()?;
        let cb = self.column_bytes();
        let mut digits = Vec::with_capacity(self.stripes * self.scheme.stripe_digits());
        for s in 0..self.stripes {
            let cols = payloads
                .iter()
                .map(|(&h, p)| (h, p[s * cb..(s + 1) * cb].to_vec()))
                .collect();
            digits.extend(self.scheme.decode_stripe(&cols)?);
        }
        let bits = bits_per_symbol(self.scheme.base().order());
        Ok(unpack(&digits, bits, self.original_len as usize))
    }
}
