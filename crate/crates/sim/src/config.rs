//! Simulation config, a flat `key = value` TOML file.

use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Deserialize;

use crate::error::{Result, SimError};
use crate::scheme::{CodeSpec, Mode};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    #[serde(default = "default_mode")]
    pub mode: Mode,
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub q: usize,
    pub k: Option<usize>,
    #[serde(alias = "N")]
    pub ext_degree: Option<usize>,
    pub t: Option<usize>,
    #[serde(alias = "K")]
    pub filesize: Option<usize>,
    /// File to ingest; relative paths resolve against the config's directory.
    pub input: Option<PathBuf>,
    /// Length of a seeded pseudo-random input, used when `input` is absent.
    pub input_bytes: Option<usize>,
    pub nodes_dir: Option<PathBuf>,
    #[serde(default = "one")]
    pub gamma_b: String,
    #[serde(default = "one")]
    pub gamma_s: String,
}

fn default_mode() -> Mode {
    Mode::Canonical
}

fn one() -> String {
    "1".into()
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SimError::Config(e.message().to_string()))
    }

    /// Reads a config, resolving relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(SimError::io(path))?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.input, &mut cfg.nodes_dir].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec {
            mode: self.mode,
            n: self.n,
            w: self.w,
            gamma: self.gamma,
            q: self.q,
            k: self.k,
            ext_degree: self.ext_degree,
            groups: self.t,
            filesize: self.filesize,
        }
    }

    /// The bytes to ingest.
    pub fn input_data(&self, seed: u64) -> Result<Vec<u8>> {
        match (&self.input, self.input_bytes) {
            (Some(_), Some(_)) => Err(SimError::Config("give input or input_bytes, not both".into())),
            (Some(p), None) => std::fs::read(p).map_err(SimError::io(p)),
            (None, Some(len)) => {
                let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed ^ 0x5eed);
                let mut buf = vec![0u8; len];
                rng.fill_bytes(&mut buf);
                Ok(buf)
            }
            (None, None) => Err(SimError::Config("one of input or input_bytes is required".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_and_full() {
        let c = SimConfig::parse("n = 5\nw = 2\ngamma = 1\nq = 4\ninput_bytes = 10\n").unwrap();
        assert_eq!(c.mode, Mode::Canonical);
        assert_eq!(c.spec(), CodeSpec::canonical(5, 2, 1, 4));
        let c = SimConfig::parse(
            "mode = \"lrc\"\nn = 5\nw = 2\ngamma = 1\nq = 4\nk = 3\nN = 20\ninput_bytes = 3\ngamma_b = \"1/2\"\n",
        )
        .unwrap();
        assert_eq!(c.ext_degree, Some(20));
        assert_eq!(c.gamma_b, "1/2");
        assert!(SimConfig::parse("n = 5\nw = 2\ngamma = 1\nq = 4\nbogus = 1\n").is_err());
        assert!(SimConfig::parse("n = 5\n").is_err());
    }

    #[test]
    fn seeded_input() {
        let c = SimConfig::parse("n = 5\nw = 2\ngamma = 1\nq = 4\ninput_bytes = 33\n").unwrap();
        let a = c.input_data(1).unwrap();
        assert_eq!(a.len(), 33);
        assert_eq!(a, c.input_data(1).unwrap());
        assert_ne!(a, c.input_data(2).unwrap());
    }
}
