//! Running a failure history and accounting for it.

use std::fmt;

use lrc_core::tradeoff::{fmt_exact, int, CostModel, TradeoffPoint, Q};

use crate::cluster::Cluster;
use crate::error::{Result, SimError};
use crate::events::Event;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Halted before touching any node at the given event.
    Unrecoverable { index: usize, count: usize, gamma: usize },
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => f.write_str("ok"),
            Status::Unrecoverable { index, count, gamma } => {
                write!(f, "unrecoverable at event {index} ({count} failures in one group > γ = {gamma})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimReport {
    pub mode: String,
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub q: usize,
    /// Events processed, including a halting one.
    pub events: usize,
    /// Failed nodes rebuilt, summed over events.
    pub node_repairs: usize,
    pub stripes: usize,
    pub symbol_bytes: usize,
    pub storage_bytes: usize,
    pub repair_bytes: usize,
    /// Bytes the plan predicts: node_repairs · d · β · symbol bytes · stripes.
    pub predicted_repair_bytes: usize,
    pub omega_empirical: Q,
    pub omega_predicted: Q,
    pub theta_empirical: Option<Q>,
    pub theta_predicted: Q,
    pub cost_per_symbol: Q,
    pub status: Status,
    pub integrity: bool,
}

impl SimReport {
    pub const CSV_HEADER: &'static str = "mode,n,w,gamma,q,events,node_repairs,stripes,symbol_bytes,storage_bytes,repair_bytes,omega_empirical,omega_predicted,theta_empirical,theta_predicted,match,cost_per_symbol,status,integrity";

    /// Empirical figures equal their predictions.
    pub fn matches(&self) -> bool {
        self.repair_bytes == self.predicted_repair_bytes
            && self.omega_empirical == self.omega_predicted
            && self
                .theta_empirical
                .as_ref()
                .is_none_or(|t| *t == self.theta_predicted)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\",{}",
            self.mode,
            self.n,
            self.w,
            self.gamma,
            self.q,
            self.events,
            self.node_repairs,
            self.stripes,
            self.symbol_bytes,
            self.storage_bytes,
            self.repair_bytes,
            fmt_exact(&self.omega_empirical),
            fmt_exact(&self.omega_predicted),
            self.theta_empirical.as_ref().map_or("NA".into(), fmt_exact),
            fmt_exact(&self.theta_predicted),
            self.matches(),
            fmt_exact(&self.cost_per_symbol),
            self.status,
            if self.integrity { "pass" } else { "fail" },
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.csv_row())
    }
}

/// Applies each event (fail, then repair) and checks the file at the end.
/// An event exceeding γ in some group halts the run before any node is touched.
pub fn run(cluster: &Cluster, events: &[Event], original: &[u8], cost: &CostModel) -> Result<SimReport> {
    let scheme = cluster.scheme();
    let nodes = scheme.node_count();
    let mut processed = 0;
    let mut node_repairs = 0;
    let mut repair_bytes = 0;
    let mut status = Status::Ok;
    for (index, event) in events.iter().enumerate() {
        processed += 1;
        if let Some(&bad) = event.failed.iter().find(|&&f| f >= nodes) {
            return Err(SimError::Config(format!("event {index}: node {bad} out of range")));
        }
        if let Err(count) = scheme.failures_by_group(&event.failed) {
            status = Status::Unrecoverable {
                index,
                count,
                gamma: scheme.gamma(),
            };
            break;
        }
        cluster.fail(&event.failed)?;
        let outcome = cluster.repair(&event.failed)?;
        node_repairs += event.failed.len();
        repair_bytes += outcome.bytes;
    }
    let integrity = cluster.extract()? == original;

    let params = scheme.params();
    let stripes = cluster.stripes();
    let sb = scheme.symbol_bytes();
    let k = int(scheme.message_symbols());
    let predicted = TradeoffPoint::new(
        nodes,
        scheme.d(),
        int(scheme.alpha()),
        int(scheme.beta()),
        k.clone(),
    );
    let stored_symbols = int(cluster.storage_bytes() / sb);
    let omega_empirical = stored_symbols / (&k * int(stripes));
    let theta_empirical = (node_repairs > 0).then(|| {
        let per_repair = Q::new((repair_bytes / sb).into(), (node_repairs * stripes).into());
        per_repair * int(nodes) / &k
    });
    let cost_per_symbol = cost.per_symbol(&predicted);
    Ok(SimReport {
        mode: scheme.mode().to_string(),
        n: params.n,
        w: params.w,
        gamma: params.gamma,
        q: scheme.base().order(),
        events: processed,
        node_repairs,
        stripes,
        symbol_bytes: sb,
        storage_bytes: cluster.storage_bytes(),
        repair_bytes,
        predicted_repair_bytes: node_repairs * scheme.d() * scheme.beta() * sb * stripes,
        omega_empirical,
        omega_predicted: predicted.omega(),
        theta_empirical,
        theta_predicted: predicted.theta(),
        cost_per_symbol,
        status,
        integrity,
    })
}
