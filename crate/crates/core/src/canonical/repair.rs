use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CodeError, Result};
use crate::field::Field;

use super::code::{CanonicalCode, ThreadId};

/// Symbols delivered to each failed node, keyed `failed -> helper -> symbols`
/// in plan order.
pub type Transfers<E> = BTreeMap<usize, BTreeMap<usize, Vec<E>>>;

/// How one thread containing a failed node is rebuilt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadRecipe {
    pub thread: ThreadId,
    /// The w `(coordinate, node)` pairs that send their stored symbol.
    pub serving: Vec<(usize, usize)>,
    /// `(coordinate, node)` pairs of failed participants.
    pub targets: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairPlan {
    pub failed: BTreeSet<usize>,
    /// Non-helper survivors; they neither send nor receive.
    pub excluded: BTreeSet<usize>,
    pub helpers: BTreeSet<usize>,
    pub recipes: Vec<ThreadRecipe>,
    /// `failed -> helper -> rows` the helper sends verbatim.
    pub transfers: BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
}

impl RepairPlan {
    /// Rows `helper` sends towards `failed`.
    pub fn rows(&self, failed: usize, helper: usize) -> &[usize] {
        self.transfers
            .get(&failed)
            .and_then(|m| m.get(&helper))
            .map_or(&[], Vec::as_slice)
    }

    /// Symbols downloaded by one failed node.
    pub fn download(&self, failed: usize) -> usize {
        self.transfers
            .get(&failed)
            .map_or(0, |m| m.values().map(Vec::len).sum())
    }

    /// Symbols moved over the whole repair.
    pub fn total_download(&self) -> usize {
        self.failed.iter().map(|&f| self.download(f)).sum()
    }
}

impl<F: Field> CanonicalCode<F> {
    /// The first `d` surviving nodes in id order.
    pub fn default_helpers(&self, failed: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.n())
            .filter(|c| !failed.contains(c))
            .take(self.d())
            .collect()
    }

    pub fn plan_repair(
        &self,
        failed: &BTreeSet<usize>,
        helpers: &BTreeSet<usize>,
    ) -> Result<RepairPlan> {
        let n = self.n();
        if failed.is_empty() {
            return Err(CodeError::Usage("no failed nodes given".into()));
        }
        if failed.len() > self.gamma() {
            return Err(CodeError::Usage(format!(
                "{} simultaneous failures exceed γ = {}",
                failed.len(),
                self.gamma()
            )));
        }
        if let Some(&bad) = failed.iter().chain(helpers).find(|&&c| c >= n) {
            return Err(CodeError::Usage(format!("node {bad} out of range (n = {n})")));
        }
        if let Some(&both) = failed.intersection(helpers).next() {
            return Err(CodeError::Usage(format!("node {both} is both failed and a helper")));
        }
        if helpers.len() != self.d() {
            return Err(CodeError::Usage(format!(
                "need exactly d = {} helpers, got {}",
                self.d(),
                helpers.len()
            )));
        }
        let excluded: BTreeSet<usize> = (0..n)
            .filter(|c| !failed.contains(c) && !helpers.contains(c))
            .collect();
        let w = self.w();
        let mut recipes = Vec::new();
        let mut transfers: BTreeMap<usize, BTreeMap<usize, Vec<usize>>> =
            failed.iter().map(|&f| (f, BTreeMap::new())).collect();
        for layer in 0..self.layers().len() {
            let nu = self.layers()[layer].nu;
            for tau in 0..n {
                let cells = self.thread_cells(layer, tau);
                let targets: Vec<(usize, usize)> = cells
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, c))| failed.contains(c))
                    .map(|(i, &(_, c))| (i, c))
                    .collect();
                if targets.is_empty() {
                    continue;
                }
                let mut survivors: Vec<(usize, usize)> = cells
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, c))| helpers.contains(c))
                    .map(|(i, &(_, c))| (i, c))
                    .collect();
                survivors.sort_by_key(|&(_, node)| node);
                let m = survivors.len();
                debug_assert!(m >= w);
                let serving: Vec<(usize, usize)> =
                    (0..w).map(|j| survivors[(nu * w + j) % m]).collect();
                for &(_, f) in &targets {
                    let per_helper = transfers.get_mut(&f).expect("failed node present");
                    for &(coord, h) in &serving {
                        per_helper.entry(h).or_default().push(self.row_of(layer, coord));
                    }
                }
                recipes.push(ThreadRecipe {
                    thread: self.thread(layer, tau),
                    serving,
                    targets,
                });
            }
        }
        Ok(RepairPlan {
            failed: failed.clone(),
            excluded,
            helpers: helpers.clone(),
            recipes,
            transfers,
        })
    }

    /// What the helpers send: each helper reads only its own column.
    pub fn gather_transfers(
        &self,
        plan: &RepairPlan,
        columns: &BTreeMap<usize, Vec<F::Elem>>,
    ) -> Result<Transfers<F::Elem>> {
        self.check_columns(columns)?;
        let mut out = Transfers::new();
        for (&f, per_helper) in &plan.transfers {
            let mut sent = BTreeMap::new();
            for (&h, rows) in per_helper {
                let col = columns.get(&h).ok_or_else(|| CodeError::MissingTransfer {
                    helper: h,
                    thread: format!("helper column for failed node {f}"),
                })?;
                sent.insert(h, rows.iter().map(|&r| col[r].clone()).collect());
            }
            out.insert(f, sent);
        }
        Ok(out)
    }

    /// Rebuilds the failed columns from the delivered symbols.
    pub fn execute_repair(
        &self,
        plan: &RepairPlan,
        transfers: &Transfers<F::Elem>,
    ) -> Result<BTreeMap<usize, Vec<F::Elem>>> {
        let mut cursor: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut restored: BTreeMap<usize, Vec<Option<F::Elem>>> = plan
            .failed
            .iter()
            .map(|&f| (f, vec![None; self.alpha()]))
            .collect();
        for recipe in &plan.recipes {
            let mut codeword: Option<(Vec<F::Elem>, Vec<F::Elem>)> = None;
            for &(target_coord, f) in &recipe.targets {
                let mut received = Vec::with_capacity(recipe.serving.len());
                for &(_, h) in &recipe.serving {
                    let pos = cursor.entry((f, h)).or_insert(0);
                    let sym = transfers
                        .get(&f)
                        .and_then(|m| m.get(&h))
                        .and_then(|v| v.get(*pos))
                        .ok_or_else(|| CodeError::MissingTransfer {
                            helper: h,
                            thread: recipe.thread.to_string(),
                        })?;
                    *pos += 1;
                    received.push(sym.clone());
                }
                let (cw, first) = match &codeword {
                    Some(c) => c,
                    None => {
                        let known = recipe
                            .serving
                            .iter()
                            .map(|&(coord, _)| coord)
                            .zip(received.iter().cloned())
                            .collect();
                        let cw = self.mds().erasure_decode(&known)?;
                        codeword.insert((cw, received.clone()))
                    }
                };
                if &received != first {
                    return Err(CodeError::Corruption(format!(
                        "{}: helpers sent different symbols to different failed nodes",
                        recipe.thread
                    )));
                }
                let row = self.row_of(recipe.thread.layer, target_coord);
                restored.get_mut(&f).expect("failed node present")[row] =
                    Some(cw[target_coord].clone());
            }
        }
        for (&(f, h), &used) in &cursor {
            let sent = transfers[&f][&h].len();
            if sent != used {
                return Err(CodeError::Corruption(format!(
                    "helper {h} sent {sent} symbols to node {f}, the plan uses {used}"
                )));
            }
        }
        restored
            .into_iter()
            .map(|(f, col)| {
                col.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .map(|c| (f, c))
                    .ok_or_else(|| CodeError::Invariant(format!("row of node {f} left unrepaired")))
            })
            .collect()
    }
}
