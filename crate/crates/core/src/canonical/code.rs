use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CodeError, Result};
use crate::field::Field;
use crate::mds::MdsCode;
use crate::patterns::{enumerate_patterns, Pattern};

use super::params::CanonicalParams;

/// Largest array (α·n cells) that will be materialized.
const MAX_CELLS: usize = 1 << 24;

/// α × n matrix stored column-major: `columns[c]` is the content of node `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeArray<E> {
    alpha: usize,
    columns: Vec<Vec<E>>,
}

impl<E: Clone> CodeArray<E> {
    pub fn filled(alpha: usize, n: usize, value: E) -> Self {
        Self {
            alpha,
            columns: vec![vec![value; alpha]; n],
        }
    }

    pub fn from_columns(columns: Vec<Vec<E>>) -> Result<Self> {
        let alpha = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != alpha) {
            return Err(CodeError::Usage("columns have unequal lengths".into()));
        }
        Ok(Self { alpha, columns })
    }

    pub fn rows(&self) -> usize {
        self.alpha
    }

    pub fn nodes(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &E {
        &self.columns[col][row]
    }

    pub fn set(&mut self, row: usize, col: usize, value: E) {
        self.columns[col][row] = value;
    }

    pub fn column(&self, c: usize) -> &[E] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<E>] {
        &self.columns
    }

    pub fn replace_column(&mut self, c: usize, col: Vec<E>) {
        assert_eq!(col.len(), self.alpha);
        self.columns[c] = col;
    }

    pub fn into_columns(self) -> Vec<Vec<E>> {
        self.columns
    }

    /// The columns of `nodes` keyed by node id.
    pub fn subset(&self, nodes: impl IntoIterator<Item = usize>) -> BTreeMap<usize, Vec<E>> {
        nodes
            .into_iter()
            .map(|c| (c, self.columns[c].clone()))
            .collect()
    }
}

/// Layer `(ℓ, ω, ν)`; layers are stacked in lexicographic order of this triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Layer {
    pub pattern: usize,
    pub omega: usize,
    pub nu: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ThreadId {
    pub layer: usize,
    pub pattern: usize,
    pub omega: usize,
    pub nu: usize,
    pub tau: usize,
}

impl fmt::Display for ThreadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "thread (ℓ={}, ω={}, ν={}, τ={})",
            self.pattern, self.omega, self.nu, self.tau
        )
    }
}

/// A materialized canonical code over `F` (the base field or an extension).
#[derive(Clone, Debug)]
pub struct CanonicalCode<F: Field> {
    params: CanonicalParams,
    mds: MdsCode<F>,
    patterns: Vec<Pattern>,
    layers: Vec<Layer>,
    alpha: usize,
    beta: usize,
    k_c: usize,
}

impl<F: Field> CanonicalCode<F> {
    pub fn new(params: CanonicalParams, field: F) -> Result<Self> {
        let q = field.base().order();
        match params.q {
            Some(pq) if pq != q => {
                return Err(CodeError::Usage(format!(
                    "parameters are for q = {pq} but the field has q = {q}"
                )))
            }
            None if params.w < 2 => {
                return Err(CodeError::Parameter(format!("w >= 2 (got w = {})", params.w)))
            }
            _ => {}
        }
        let small = params.small().ok_or_else(|| {
            CodeError::Parameter("parameters too large to materialize the code".into())
        })?;
        if small.alpha.saturating_mul(params.n) > MAX_CELLS {
            return Err(CodeError::Parameter(format!(
                "α·n = {}·{} exceeds the materialization limit {MAX_CELLS}",
                small.alpha, params.n
            )));
        }
        let mds = MdsCode::cauchy(field, params.w, params.gamma)?;
        let patterns = enumerate_patterns(params.n, params.thread_len());
        let mut layers = Vec::with_capacity(small.l * small.v);
        for p in &patterns {
            for omega in 0..p.omega {
                for nu in 0..small.v {
                    layers.push(Layer {
                        pattern: p.index,
                        omega,
                        nu,
                    });
                }
            }
        }
        if layers.len() * params.thread_len() != small.alpha {
            return Err(CodeError::Invariant(format!(
                "{} layers do not fill α = {} rows",
                layers.len(),
                small.alpha
            )));
        }
        Ok(Self {
            alpha: small.alpha,
            beta: small.beta,
            k_c: small.k_c,
            params,
            mds,
            patterns,
            layers,
        })
    }

    pub fn params(&self) -> &CanonicalParams {
        &self.params
    }

    pub fn field(&self) -> &F {
        self.mds.field()
    }

    pub fn mds(&self) -> &MdsCode<F> {
        &self.mds
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn w(&self) -> usize {
        self.params.w
    }

    pub fn gamma(&self) -> usize {
        self.params.gamma
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn k_c(&self) -> usize {
        self.k_c
    }

    pub fn thread_count(&self) -> usize {
        self.layers.len() * self.params.n
    }

    pub fn thread(&self, layer: usize, tau: usize) -> ThreadId {
        let l = self.layers[layer];
        ThreadId {
            layer,
            pattern: l.pattern,
            omega: l.omega,
            nu: l.nu,
            tau,
        }
    }

    /// Absolute row of MDS coordinate `coord` in `layer`.
    pub fn row_of(&self, layer: usize, coord: usize) -> usize {
        layer * self.params.thread_len() + coord
    }

    /// `(row, node)` of every coordinate of a thread, coordinate order.
    pub fn thread_cells(&self, layer: usize, tau: usize) -> Vec<(usize, usize)> {
        let fp = &self.patterns[self.layers[layer].pattern].footprint;
        fp.iter()
            .enumerate()
            .map(|(i, &c)| (self.row_of(layer, i), (c + tau) % self.params.n))
            .collect()
    }

    /// `(layer, τ, coordinate)` of the thread owning cell `(row, col)`.
    pub fn cell_owner(&self, row: usize, col: usize) -> (usize, usize, usize) {
        let t = self.params.thread_len();
        let (layer, coord) = (row / t, row % t);
        let fp = &self.patterns[self.layers[layer].pattern].footprint;
        let n = self.params.n;
        (layer, (col + n - fp[coord]) % n, coord)
    }

    /// Offset of thread `(layer, τ)`'s w-tuple within the message.
    pub fn message_offset(&self, layer: usize, tau: usize) -> usize {
        (layer * self.params.n + tau) * self.params.w
    }

    pub fn encode(&self, message: &[F::Elem]) -> Result<CodeArray<F::Elem>> {
        if message.len() != self.k_c {
            return Err(CodeError::Usage(format!(
                "message has {} symbols, expected K_c = {}",
                message.len(),
                self.k_c
            )));
        }
        let n = self.params.n;
        let w = self.params.w;
        let mut out = CodeArray::filled(self.alpha, n, self.field().zero());
        for layer in 0..self.layers.len() {
            for tau in 0..n {
                let off = self.message_offset(layer, tau);
                let cw = self.mds.encode(&message[off..off + w]);
                for ((row, col), sym) in self.thread_cells(layer, tau).into_iter().zip(cw) {
                    out.set(row, col, sym);
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn check_columns(&self, columns: &BTreeMap<usize, Vec<F::Elem>>) -> Result<()> {
        for (&c, col) in columns {
            if c >= self.params.n {
                return Err(CodeError::Usage(format!(
                    "node {c} out of range (n = {})",
                    self.params.n
                )));
            }
            if col.len() != self.alpha {
                return Err(CodeError::Usage(format!(
                    "node {c} holds {} symbols, expected α = {}",
                    col.len(),
                    self.alpha
                )));
            }
        }
        Ok(())
    }

    /// Recovers the message from any `k = n-γ` or more node columns.
    pub fn collect(&self, columns: &BTreeMap<usize, Vec<F::Elem>>) -> Result<Vec<F::Elem>> {
        self.check_columns(columns)?;
        if columns.len() < self.params.k {
            return Err(CodeError::InsufficientNodes {
                need: self.params.k,
                got: columns.len(),
            });
        }
        let w = self.params.w;
        let mut message = Vec::with_capacity(self.k_c);
        for layer in 0..self.layers.len() {
            for tau in 0..self.params.n {
                let known: BTreeMap<usize, F::Elem> = self
                    .thread_cells(layer, tau)
                    .into_iter()
                    .enumerate()
                    .filter_map(|(i, (row, col))| columns.get(&col).map(|c| (i, c[row].clone())))
                    .collect();
                let cw = self.mds.erasure_decode(&known).map_err(|e| match e {
                    CodeError::Corruption(m) => {
                        CodeError::Corruption(format!("{}: {m}", self.thread(layer, tau)))
                    }
                    other => other,
                })?;
                message.extend(cw.into_iter().take(w));
            }
        }
        Ok(message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;
    use crate::patterns::pattern_cells;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn code(n: usize, w: usize, gamma: usize, q: usize) -> CanonicalCode<BaseField> {
        let p = CanonicalParams::new(n, w, gamma, q).unwrap();
        CanonicalCode::new(p, BaseField::new(q).unwrap()).unwrap()
    }

    fn random_message(c: &CanonicalCode<BaseField>, rng: &mut ChaCha8Rng) -> Vec<u8> {
        (0..c.k_c()).map(|_| c.field().random(rng)).collect()
    }

    #[test]
    fn threading_layout_of_a_single_layer() {
        // a 5-row, 6-column layer threaded along footprint (0,2,3,4,5)
        let (n, fp) = (6, [0, 2, 3, 4, 5]);
        let mut label = vec![vec![usize::MAX; n]; fp.len()];
        for tau in 0..n {
            for (row, col) in pattern_cells(&fp, tau, n) {
                assert_eq!(label[row][col], usize::MAX);
                label[row][col] = tau;
            }
        }
        let expected = [
            [0, 1, 2, 3, 4, 5],
            [4, 5, 0, 1, 2, 3],
            [3, 4, 5, 0, 1, 2],
            [2, 3, 4, 5, 0, 1],
            [1, 2, 3, 4, 5, 0],
        ];
        for (got, want) in label.iter().zip(expected) {
            assert_eq!(got.as_slice(), want.as_slice());
        }
    }

    #[test]
    fn layers_in_lexicographic_order() {
        let c = code(7, 2, 2, 5);
        assert_eq!(c.layers().len(), 15);
        assert!(c.layers().windows(2).all(|w| w[0] < w[1]));
        let c = code(6, 2, 1, 4);
        assert_eq!(c.layers().len(), 10);
        let short = c.patterns().iter().find(|p| p.period == 2).unwrap();
        assert_eq!(c.layers().iter().filter(|l| l.pattern == short.index).count(), 1);
    }

    #[test]
    fn zero_message_gives_zero_array() {
        let c = code(5, 2, 1, 4);
        let arr = c.encode(&[0; 20]).unwrap();
        assert!(arr.columns().iter().flatten().all(|&x| x == 0));
        assert_eq!((arr.rows(), arr.nodes()), (6, 5));
    }

    #[test]
    fn every_thread_is_a_codeword() {
        let c = code(5, 2, 1, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let arr = c.encode(&random_message(&c, &mut rng)).unwrap();
            let mut threads = 0;
            for layer in 0..c.layers().len() {
                for tau in 0..5 {
                    let read: Vec<u8> = c
                        .thread_cells(layer, tau)
                        .iter()
                        .map(|&(r, col)| *arr.get(r, col))
                        .collect();
                    assert_eq!(c.mds().encode(&read[..2]), read);
                    threads += 1;
                }
            }
            assert_eq!(threads, 10);
        }
    }

    #[test]
    fn cell_owner_inverts_thread_cells() {
        let c = code(6, 2, 1, 4);
        for layer in 0..c.layers().len() {
            for tau in 0..6 {
                for (i, (row, col)) in c.thread_cells(layer, tau).into_iter().enumerate() {
                    assert_eq!(c.cell_owner(row, col), (layer, tau, i));
                }
            }
        }
    }

    #[test]
    fn collect_errors() {
        let c = code(5, 2, 1, 4);
        let arr = c.encode(&[1; 20]).unwrap();
        assert_eq!(
            c.collect(&arr.subset([0, 1, 2])),
            Err(CodeError::InsufficientNodes { need: 4, got: 3 })
        );
        assert!(matches!(c.encode(&[0; 19]), Err(CodeError::Usage(_))));
        let mut all = arr.subset(0..5);
        all.get_mut(&3).unwrap()[0] ^= 1;
        assert!(matches!(c.collect(&all), Err(CodeError::Corruption(_))));
    }

    #[test]
    fn field_mismatch_rejected() {
        let p = CanonicalParams::new(5, 2, 1, 4).unwrap();
        assert!(CanonicalCode::new(p, BaseField::new(5).unwrap()).is_err());
    }
}
