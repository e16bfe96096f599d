//! The three code families behind one byte-level interface.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use lrc_core::canonical::{CanonicalCode, CanonicalParams};
use lrc_core::field::{BaseField, ExtField, Field};
use lrc_core::outer::{LocalCode, OuterCode};
use lrc_core::CodeError;
use serde::Deserialize;

use crate::container::Descriptor;
use crate::error::{Result, SimError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Canonical,
    Lrc,
    Local,
}

impl Mode {
    pub fn code(self) -> u8 {
        match self {
            Mode::Canonical => 0,
            Mode::Lrc => 1,
            Mode::Local => 2,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        [Mode::Canonical, Mode::Lrc, Mode::Local].into_iter().find(|m| m.code() == c)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Canonical => "canonical",
            Mode::Lrc => "lrc",
            Mode::Local => "local",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(Mode::Canonical),
            "lrc" => Ok(Mode::Lrc),
            "local" => Ok(Mode::Local),
            other => Err(format!("unknown mode {other:?} (canonical, lrc or local)")),
        }
    }
}

/// User-level description of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub mode: Mode,
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub q: usize,
    /// lrc: target k.
    pub k: Option<usize>,
    /// lrc / local: extension degree N.
    pub ext_degree: Option<usize>,
    /// local: number of groups t.
    pub groups: Option<usize>,
    /// local: filesize K.
    pub filesize: Option<usize>,
}

impl CodeSpec {
    pub fn canonical(n: usize, w: usize, gamma: usize, q: usize) -> Self {
        Self {
            mode: Mode::Canonical,
            n,
            w,
            gamma,
            q,
            k: None,
            ext_degree: None,
            groups: None,
            filesize: None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scheme {
    Canonical(CanonicalCode<BaseField>),
    Lrc(OuterCode),
    Local(LocalCode),
}

fn need(v: Option<usize>, what: &str, mode: Mode) -> Result<usize> {
    v.ok_or_else(|| SimError::Config(format!("mode {mode} requires {what}")))
}

impl Scheme {
    pub fn build(spec: &CodeSpec) -> Result<Self> {
        let params = CanonicalParams::new(spec.n, spec.w, spec.gamma, spec.q)?;
        let base = BaseField::new(spec.q).map_err(CodeError::from)?;
        Ok(match spec.mode {
            Mode::Canonical => Scheme::Canonical(CanonicalCode::new(params, base)?),
            Mode::Lrc => Scheme::Lrc(OuterCode::new(
                params,
                need(spec.k, "k", spec.mode)?,
                need(spec.ext_degree, "N", spec.mode)?,
            )?),
            Mode::Local => Scheme::Local(LocalCode::new(
                params,
                need(spec.groups, "t", spec.mode)?,
                need(spec.ext_degree, "N", spec.mode)?,
                need(spec.filesize, "K", spec.mode)?,
            )?),
        })
    }

    pub fn from_descriptor(d: &Descriptor) -> Result<Self> {
        let base = BaseField::with_modulus(d.p, &d.base_modulus).map_err(CodeError::from)?;
        if base.prime_degree() as usize != d.m {
            return Err(SimError::Config("base modulus degree disagrees with m".into()));
        }
        let params = CanonicalParams::new(d.n, d.w, d.gamma, base.order())?;
        let ext = || -> Result<ExtField> {
            Ok(ExtField::with_modulus(base.clone(), &d.ext_modulus).map_err(CodeError::from)?)
        };
        Ok(match d.mode {
            Mode::Canonical => Scheme::Canonical(CanonicalCode::new(params, base.clone())?),
            Mode::Lrc => Scheme::Lrc(OuterCode::with_field(params, d.k, ext()?)?),
            Mode::Local => Scheme::Local(LocalCode::with_field(params, d.groups, ext()?, d.filesize)?),
        })
    }

    pub fn descriptor(&self) -> Descriptor {
        let params = self.params();
        let base = self.base();
        let (ext_modulus, k, groups, filesize) = match self {
            Scheme::Canonical(c) => (Vec::new(), c.k(), 1, c.k_c()),
            Scheme::Lrc(o) => (o.field().modulus().to_vec(), o.k(), 1, o.filesize()),
            Scheme::Local(l) => (l.field().modulus().to_vec(), params.k, l.groups(), l.filesize()),
        };
        Descriptor {
            mode: self.mode(),
            n: params.n,
            w: params.w,
            gamma: params.gamma,
            p: base.characteristic(),
            m: base.prime_degree() as usize,
            base_modulus: base.modulus().to_vec(),
            ext_modulus,
            k,
            groups,
            filesize,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scheme::Canonical(_) => Mode::Canonical,
            Scheme::Lrc(_) => Mode::Lrc,
            Scheme::Local(_) => Mode::Local,
        }
    }

    pub fn params(&self) -> &CanonicalParams {
        match self {
            Scheme::Canonical(c) => c.params(),
            Scheme::Lrc(o) => o.inner().params(),
            Scheme::Local(l) => l.inner().params(),
        }
    }

    pub fn base(&self) -> &BaseField {
        match self {
            Scheme::Canonical(c) => c.field(),
            Scheme::Lrc(o) => o.field().base(),
            Scheme::Local(l) => l.field().base(),
        }
    }

    /// Nodes per group.
    pub fn group_size(&self) -> usize {
        self.params().n
    }

    pub fn groups(&self) -> usize {
        match self {
            Scheme::Local(l) => l.groups(),
            _ => 1,
        }
    }

    pub fn node_count(&self) -> usize {
        self.group_size() * self.groups()
    }

    pub fn gamma(&self) -> usize {
        self.params().gamma
    }

    pub fn d(&self) -> usize {
        self.params().d
    }

    pub fn alpha(&self) -> usize {
        match self {
            Scheme::Canonical(c) => c.alpha(),
            Scheme::Lrc(o) => o.inner().alpha(),
            Scheme::Local(l) => l.inner().alpha(),
        }
    }

    pub fn beta(&self) -> usize {
        match self {
            Scheme::Canonical(c) => c.beta(),
            Scheme::Lrc(o) => o.inner().beta(),
            Scheme::Local(l) => l.inner().beta(),
        }
    }

    /// Bytes per stored symbol.
    pub fn symbol_bytes(&self) -> usize {
        match self {
            Scheme::Canonical(c) => c.field().symbol_bytes(),
            Scheme::Lrc(o) => o.field().symbol_bytes(),
            Scheme::Local(l) => l.field().symbol_bytes(),
        }
    }

    /// Message symbols per stripe (K_c or K).
    pub fn message_symbols(&self) -> usize {
        match self {
            Scheme::Canonical(c) => c.k_c(),
            Scheme::Lrc(o) => o.filesize(),
            Scheme::Local(l) => l.filesize(),
        }
    }

    /// Base-field digits carried by one stripe.
    pub fn stripe_digits(&self) -> usize {
        self.message_symbols() * self.symbol_bytes()
    }

    /// Least number of live nodes that always suffices for decoding.
    pub fn decode_nodes(&self) -> usize {
        match self {
            Scheme::Canonical(c) => c.k(),
            Scheme::Lrc(o) => o.k(),
            Scheme::Local(_) => self.params().k,
        }
    }

    /// Encodes one stripe of base digits; returns each node's serialized column.
    pub fn encode_stripe(&self, digits: &[u8]) -> Result<Vec<Vec<u8>>> {
        assert_eq!(digits.len(), self.stripe_digits());
        let arrays = match self {
            Scheme::Canonical(c) => return Ok(serialize(c.field(), c.encode(digits)?.columns())),
            Scheme::Lrc(o) => vec![o.encode(&ext_symbols(o.field(), digits)?)?],
            Scheme::Local(l) => l.encode(&ext_symbols(l.field(), digits)?)?,
        };
        let field = self.ext_field().expect("extension mode");
        Ok(arrays
            .iter()
            .flat_map(|a| serialize(field, a.columns()))
            .collect())
    }

    fn ext_field(&self) -> Option<&ExtField> {
        match self {
            Scheme::Canonical(_) => None,
            Scheme::Lrc(o) => Some(o.field()),
            Scheme::Local(l) => Some(l.field()),
        }
    }

    /// Decodes one stripe from serialized columns keyed by global node id.
    pub fn decode_stripe(&self, columns: &BTreeMap<usize, Vec<u8>>) -> Result<Vec<u8>> {
        match self {
            Scheme::Canonical(c) => Ok(c.collect(&deserialize(c.field(), columns)?)?),
            Scheme::Lrc(o) => {
                let msg = o.collect(&deserialize(o.field(), columns)?)?;
                Ok(msg.iter().flat_map(|m| o.field().coordinates(m)).collect())
            }
            Scheme::Local(l) => {
                let n = self.group_size();
                let cols = deserialize(l.field(), columns)?
                    .into_iter()
                    .map(|(g, col)| ((g / n, g % n), col))
                    .collect();
                let msg = l.collect(&cols)?;
                Ok(msg.iter().flat_map(|m| l.field().coordinates(m)).collect())
            }
        }
    }

    /// Groups the failed nodes by local group, rejecting groups with more than γ.
    pub fn failures_by_group(&self, failed: &BTreeSet<usize>) -> Result<BTreeMap<usize, BTreeSet<usize>>, usize> {
        let n = self.group_size();
        let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &f in failed {
            out.entry(f / n).or_default().insert(f % n);
        }
        match out.values().map(BTreeSet::len).max() {
            Some(m) if m > self.gamma() => Err(m),
            _ => Ok(out),
        }
    }

    /// Helpers (global ids) for repairing `failed` inside each group, chosen
    /// among `alive` in id order.
    pub fn helpers_for(
        &self,
        failed: &BTreeSet<usize>,
        alive: &BTreeSet<usize>,
    ) -> Result<BTreeSet<usize>> {
        let n = self.group_size();
        let groups = self
            .failures_by_group(failed)
            .map_err(|m| CodeError::Usage(format!("{m} failures in one group exceed γ = {}", self.gamma())))?;
        let mut helpers = BTreeSet::new();
        for &g in groups.keys() {
            let local: Vec<usize> = (g * n..(g + 1) * n)
                .filter(|c| alive.contains(c) && !failed.contains(c))
                .take(self.d())
                .collect();
            if local.len() < self.d() {
                return Err(CodeError::InsufficientNodes {
                    need: self.d(),
                    got: local.len(),
                }
                .into());
            }
            helpers.extend(local);
        }
        Ok(helpers)
    }

    /// Plans, gathers and executes the repair of one stripe. `helper_columns`
    /// holds each helper's own serialized column. Returns restored columns and
    /// the number of symbols transferred.
    pub fn repair_stripe(
        &self,
        failed: &BTreeSet<usize>,
        helpers: &BTreeSet<usize>,
        helper_columns: &BTreeMap<usize, Vec<u8>>,
    ) -> Result<(BTreeMap<usize, Vec<u8>>, usize)> {
        let n = self.group_size();
        let by_group = self
            .failures_by_group(failed)
            .map_err(|m| CodeError::Usage(format!("{m} failures in one group exceed γ = {}", self.gamma())))?;
        let mut restored = BTreeMap::new();
        let mut moved = 0;
        for (g, local_failed) in by_group {
            let off = g * n;
            let local_helpers: BTreeSet<usize> = helpers
                .iter()
                .filter(|&&h| h / n == g)
                .map(|&h| h - off)
                .collect();
            let local_cols: BTreeMap<usize, Vec<u8>> = helper_columns
                .iter()
                .filter(|(&h, _)| h / n == g)
                .map(|(&h, c)| (h - off, c.clone()))
                .collect();
            let (cols, m) = match self {
                Scheme::Canonical(c) => repair_group(c, &local_failed, &local_helpers, &local_cols)?,
                Scheme::Lrc(o) => repair_group(o.inner(), &local_failed, &local_helpers, &local_cols)?,
                Scheme::Local(l) => repair_group(l.inner(), &local_failed, &local_helpers, &local_cols)?,
            };
            moved += m;
            restored.extend(cols.into_iter().map(|(c, col)| (c + off, col)));
        }
        Ok((restored, moved))
    }
}

fn repair_group<F: Field>(
    code: &CanonicalCode<F>,
    failed: &BTreeSet<usize>,
    helpers: &BTreeSet<usize>,
    columns: &BTreeMap<usize, Vec<u8>>,
) -> Result<(BTreeMap<usize, Vec<u8>>, usize)> {
    let plan = code.plan_repair(failed, helpers)?;
    let cols = deserialize(code.field(), columns)?;
    let sent = code.gather_transfers(&plan, &cols)?;
    let moved = sent.values().flat_map(|m| m.values()).map(Vec::len).sum();
    let restored = code.execute_repair(&plan, &sent)?;
    let out = restored
        .into_iter()
        .map(|(f, col)| {
            let mut bytes = Vec::with_capacity(col.len() * code.field().symbol_bytes());
            for s in &col {
                code.field().write_elem(s, &mut bytes);
            }
            (f, bytes)
        })
        .collect();
    Ok((out, moved))
}

fn ext_symbols(field: &ExtField, digits: &[u8]) -> Result<Vec<lrc_core::ExtElem>> {
    digits
        .chunks(field.degree())
        .map(|c| Ok(field.from_coordinates(c).map_err(CodeError::from)?))
        .collect()
}

fn serialize<F: Field>(field: &F, columns: &[Vec<F::Elem>]) -> Vec<Vec<u8>> {
    columns
        .iter()
        .map(|col| {
            let mut out = Vec::with_capacity(col.len() * field.symbol_bytes());
            for s in col {
                field.write_elem(s, &mut out);
            }
            out
        })
        .collect()
}

fn deserialize<F: Field>(
    field: &F,
    columns: &BTreeMap<usize, Vec<u8>>,
) -> Result<BTreeMap<usize, Vec<F::Elem>>> {
    let sb = field.symbol_bytes();
    columns
        .iter()
        .map(|(&c, bytes)| {
            if bytes.len() % sb != 0 {
                return Err(CodeError::Corruption(format!("column {c} is not whole symbols")).into());
            }
            let col = bytes
                .chunks(sb)
                .map(|s| field.read_elem(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CodeError::from)?;
            Ok((c, col))
        })
        .collect()
}
