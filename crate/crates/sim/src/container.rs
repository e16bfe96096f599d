//! The "LRC1" node file.
//!
//! Layout, integers little-endian:
//! `"LRC1" | version u8 | n w γ p m: u16 | base modulus: u16 len + bytes |
//! mode u8 | extension modulus: u16 len + bytes | k u16 | t u16 | K u32 |
//! node u16 | α u32 | stripes u32 | original length u64 | payload`.
//! The payload holds `stripes` columns of α symbols each, stripe-major.

use std::path::{Path, PathBuf};

use crate::error::{Result, SimError};
use crate::scheme::Mode;

pub const MAGIC: &[u8; 4] = b"LRC1";
pub const VERSION: u8 = 1;

/// Everything needed to rebuild the code that wrote a node file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub mode: Mode,
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub p: usize,
    pub m: usize,
    pub base_modulus: Vec<u8>,
    pub ext_modulus: Vec<u8>,
    pub k: usize,
    pub groups: usize,
    pub filesize: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeFile {
    pub descriptor: Descriptor,
    pub node: usize,
    pub alpha: usize,
    pub stripes: usize,
    pub original_len: u64,
    pub payload: Vec<u8>,
}

pub fn node_path(dir: &Path, node: usize) -> PathBuf {
    dir.join(format!("node_{node:03}.lrc"))
}

fn u16_of(v: usize, what: &str) -> Result<[u8; 2]> {
    u16::try_from(v)
        .map(u16::to_le_bytes)
        .map_err(|_| SimError::Config(format!("{what} = {v} does not fit the container")))
}

fn u32_of(v: usize, what: &str) -> Result<[u8; 4]> {
    u32::try_from(v)
        .map(u32::to_le_bytes)
        .map_err(|_| SimError::Config(format!("{what} = {v} does not fit the container")))
}

impl NodeFile {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let d = &self.descriptor;
        let mut out = Vec::with_capacity(64 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        for (v, name) in [(d.n, "n"), (d.w, "w"), (d.gamma, "γ"), (d.p, "p"), (d.m, "m")] {
            out.extend(u16_of(v, name)?);
        }
        out.extend(u16_of(d.base_modulus.len(), "modulus length")?);
        out.extend(&d.base_modulus);
        out.push(d.mode.code());
        out.extend(u16_of(d.ext_modulus.len(), "modulus length")?);
        out.extend(&d.ext_modulus);
        out.extend(u16_of(d.k, "k")?);
        out.extend(u16_of(d.groups, "t")?);
        out.extend(u32_of(d.filesize, "K")?);
        out.extend(u16_of(self.node, "node")?);
        out.extend(u32_of(self.alpha, "α")?);
        out.extend(u32_of(self.stripes, "stripes")?);
        out.extend(self.original_len.to_le_bytes());
        out.extend(&self.payload);
        Ok(out)
    }

    pub fn parse(bytes: &[u8], path: &Path) -> Result<Self> {
        let bad = |reason: &str| SimError::Format {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4).ok_or_else(|| bad("truncated header"))? != MAGIC {
            return Err(bad("bad magic"));
        }
        let version = r.u8().ok_or_else(|| bad("truncated header"))?;
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let parsed = (|| {
            let n = r.u16()?;
            let w = r.u16()?;
            let gamma = r.u16()?;
            let p = r.u16()?;
            let m = r.u16()?;
            let bl = r.u16()?;
            let base_modulus = r.take(bl)?.to_vec();
            let mode = r.u8()?;
            let el = r.u16()?;
            let ext_modulus = r.take(el)?.to_vec();
            let k = r.u16()?;
            let groups = r.u16()?;
            let filesize = r.u32()?;
            let node = r.u16()?;
            let alpha = r.u32()?;
            let stripes = r.u32()?;
            let original_len = u64::from_le_bytes(r.take(8)?.try_into().ok()?);
            Some((
                (n, w, gamma, p, m, base_modulus, mode, ext_modulus, k, groups, filesize),
                (node, alpha, stripes, original_len),
            ))
        })()
        .ok_or_else(|| bad("truncated header"))?;
        let ((n, w, gamma, p, m, base_modulus, mode, ext_modulus, k, groups, filesize), (node, alpha, stripes, original_len)) =
            parsed;
        let mode = Mode::from_code(mode).ok_or_else(|| bad(&format!("unknown mode {mode}")))?;
        Ok(NodeFile {
            descriptor: Descriptor {
                mode,
                n,
                w,
                gamma,
                p,
                m,
                base_modulus,
                ext_modulus,
                k,
                groups,
                filesize,
            },
            node,
            alpha,
            stripes,
            original_len,
            payload: bytes[r.pos..].to_vec(),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(SimError::io(path))?;
        Self::parse(&bytes, path)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_bytes()?).map_err(SimError::io(path))
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Option<&'a [u8]> {
        let s = self.bytes.get(self.pos..self.pos + len)?;
        self.pos += len;
        Some(s)
    }

    fn u8(&mut self) -> Option<u8> {
        Some(self.take(1)?[0])
    }

    fn u16(&mut self) -> Option<usize> {
        Some(u16::from_le_bytes(self.take(2)?.try_into().ok()?) as usize)
    }

    fn u32(&mut self) -> Option<usize> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = NodeFile {
            descriptor: Descriptor {
                mode: Mode::Lrc,
                n: 5,
                w: 2,
                gamma: 1,
                p: 2,
                m: 2,
                base_modulus: vec![1, 1, 1],
                ext_modulus: vec![1, 0, 1],
                k: 3,
                groups: 1,
                filesize: 17,
            },
            node: 4,
            alpha: 6,
            stripes: 2,
            original_len: 9,
            payload: (0..24).collect(),
        };
        let bytes = f.to_bytes().unwrap();
        assert_eq!(&bytes[..5], b"LRC1\x01");
        assert_eq!(NodeFile::parse(&bytes, Path::new("x")).unwrap(), f);
        assert!(matches!(
            NodeFile::parse(&bytes[..20], Path::new("x")),
            Err(SimError::Format { .. })
        ));
    }
}
