//! Outer precoding of the canonical code by linearized polynomials over
//! GF(q^N): the non-canonical code with k < d, an ordinary-polynomial variant
//! kept for comparison, and the code with canonical-code locality.

use std::collections::BTreeMap;

use crate::canonical::{CanonicalCode, CanonicalParams, CodeArray};
use crate::error::{CodeError, Result};
use crate::field::{gfq_rank, moore_solve, BaseField, ExtElem, ExtField, Field, LinearizedPoly};
use crate::linalg::{self, Basis};
use crate::rank;

fn base_of(params: &CanonicalParams) -> Result<BaseField> {
    let q = params
        .q
        .ok_or_else(|| CodeError::Usage("parameters carry no field order q".into()))?;
    Ok(BaseField::new(q)?)
}

fn to_usize(x: &num_bigint::BigUint) -> Result<usize> {
    num_traits::ToPrimitive::to_usize(x)
        .ok_or_else(|| CodeError::Parameter("parameters too large to materialize".into()))
}

/// Greedy selection of GF(q)-independent Y entries, scanning `cells` in order;
/// returns the chosen `(point, value)` pairs, at most `limit`.
fn independent_pairs<'a>(
    ext: &ExtField,
    cells: impl Iterator<Item = (&'a ExtElem, &'a ExtElem)>,
    limit: usize,
) -> (Vec<ExtElem>, Vec<ExtElem>) {
    let mut basis = Basis::new(ext.base().clone());
    let (mut points, mut values) = (Vec::new(), Vec::new());
    for (y, c) in cells {
        if points.len() == limit {
            break;
        }
        if basis.insert(ext.coordinates(y)) {
            points.push(y.clone());
            values.push(c.clone());
        }
    }
    (points, values)
}

/// The non-canonical code: message → linearized polynomial f → f(θ_i) →
/// canonical encoding over GF(q^N).
#[derive(Clone, Debug)]
pub struct OuterCode {
    inner: CanonicalCode<ExtField>,
    k: usize,
    filesize: usize,
    thetas: Vec<ExtElem>,
    /// Canonical encoding of the θ's; every stored cell is f of its Y entry.
    y: CodeArray<ExtElem>,
}

impl OuterCode {
    /// Evaluation points default to the polynomial basis of GF(q^N).
    pub fn new(params: CanonicalParams, k: usize, ext_degree: usize) -> Result<Self> {
        let base = base_of(&params)?;
        let k_c = to_usize(&params.k_c)?;
        if ext_degree < k_c {
            return Err(CodeError::Parameter(format!(
                "N >= K_c (N = {ext_degree}, K_c = {k_c})"
            )));
        }
        rank::check_note1(&params, k)?;
        Self::with_field(params, k, ExtField::new(base, ext_degree)?)
    }

    /// Basis evaluation points in a given extension of GF(q).
    pub fn with_field(params: CanonicalParams, k: usize, ext: ExtField) -> Result<Self> {
        let k_c = to_usize(&params.k_c)?;
        if ext.degree() < k_c {
            return Err(CodeError::Parameter(format!(
                "N >= K_c (N = {}, K_c = {k_c})",
                ext.degree()
            )));
        }
        let filesize = to_usize(&rank::k_of_k(&params, k)?)?;
        let thetas: Vec<ExtElem> = (0..k_c).map(|i| ext.basis(i)).collect();
        Self::with_points(params, k, filesize, ext, thetas)
    }

    pub fn with_points(
        params: CanonicalParams,
        k: usize,
        filesize: usize,
        ext: ExtField,
        thetas: Vec<ExtElem>,
    ) -> Result<Self> {
        let inner = CanonicalCode::new(params, ext.clone())?;
        if thetas.len() != inner.k_c() || gfq_rank(&ext, &thetas) != inner.k_c() {
            return Err(CodeError::Parameter(format!(
                "need K_c = {} GF(q)-independent evaluation points",
                inner.k_c()
            )));
        }
        let y = inner.encode(&thetas)?;
        Ok(Self {
            inner,
            k,
            filesize,
            thetas,
            y,
        })
    }

    pub fn inner(&self) -> &CanonicalCode<ExtField> {
        &self.inner
    }

    pub fn field(&self) -> &ExtField {
        self.inner.field()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// K = ρ_k.
    pub fn filesize(&self) -> usize {
        self.filesize
    }

    pub fn thetas(&self) -> &[ExtElem] {
        &self.thetas
    }

    pub fn points(&self) -> &CodeArray<ExtElem> {
        &self.y
    }

    pub fn encode(&self, message: &[ExtElem]) -> Result<CodeArray<ExtElem>> {
        if message.len() != self.filesize {
            return Err(CodeError::Usage(format!(
                "message has {} symbols, expected K = {}",
                message.len(),
                self.filesize
            )));
        }
        let ext = self.field();
        if let Some(bad) = message.iter().position(|m| !ext.contains(m)) {
            return Err(CodeError::Usage(format!("symbol {bad} is not in {}", ext.describe())));
        }
        let f = LinearizedPoly::new(message.to_vec());
        let u: Vec<ExtElem> = self.thetas.iter().map(|t| f.eval(ext, t)).collect();
        self.inner.encode(&u)
    }

    /// Number of independent Y entries visible from `nodes`, capped at K.
    pub fn accessible_rank(&self, nodes: &[usize]) -> usize {
        let cells = nodes
            .iter()
            .flat_map(|&c| self.y.column(c).iter().map(move |y| (y, y)));
        independent_pairs(self.field(), cells, self.filesize).0.len()
    }

    pub fn collect(&self, columns: &BTreeMap<usize, Vec<ExtElem>>) -> Result<Vec<ExtElem>> {
        if columns.len() < self.k {
            return Err(CodeError::InsufficientNodes {
                need: self.k,
                got: columns.len(),
            });
        }
        for (&c, col) in columns {
            if c >= self.inner.n() || col.len() != self.inner.alpha() {
                return Err(CodeError::Usage(format!("node {c} column is malformed")));
            }
        }
        let cells = columns
            .iter()
            .flat_map(|(&c, col)| self.y.column(c).iter().zip(col.iter()));
        let (points, values) = independent_pairs(self.field(), cells, self.filesize);
        if points.len() < self.filesize {
            return Err(CodeError::Unrecoverable {
                rank: points.len(),
                needed: self.filesize,
            });
        }
        Ok(moore_solve(self.field(), &points, &values)?.coeffs().to_vec())
    }
}

/// Ordinary-polynomial precoding over GF(q) with distinct evaluation points
/// 0, 1, ..., K_c-1 (as field codes). Decoding is thread-local: a thread
/// with at least w surviving cells yields its w evaluations, anything else
/// is lost, then the polynomial is interpolated from K known evaluations.
#[derive(Clone, Debug)]
pub struct OrdinaryOuterCode {
    inner: CanonicalCode<BaseField>,
    k: usize,
    filesize: usize,
}

impl OrdinaryOuterCode {
    pub fn new(params: CanonicalParams, k: usize) -> Result<Self> {
        let base = base_of(&params)?;
        let filesize = to_usize(&rank::k_of_k(&params, k)?)?;
        let inner = CanonicalCode::new(params, base)?;
        if inner.field().order() < inner.k_c() {
            return Err(CodeError::Parameter(format!(
                "q >= K_c (q = {}, K_c = {})",
                inner.field().order(),
                inner.k_c()
            )));
        }
        Ok(Self { inner, k, filesize })
    }

    pub fn inner(&self) -> &CanonicalCode<BaseField> {
        &self.inner
    }

    pub fn filesize(&self) -> usize {
        self.filesize
    }

    fn point(&self, i: usize) -> u8 {
        self.inner.field().elem(i)
    }

    fn eval(&self, coeffs: &[u8], x: u8) -> u8 {
        let f = self.inner.field();
        coeffs.iter().rev().fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    pub fn encode(&self, message: &[u8]) -> Result<CodeArray<u8>> {
        if message.len() != self.filesize {
            return Err(CodeError::Usage(format!(
                "message has {} symbols, expected K = {}",
                message.len(),
                self.filesize
            )));
        }
        let u: Vec<u8> = (0..self.inner.k_c())
            .map(|i| self.eval(message, self.point(i)))
            .collect();
        self.inner.encode(&u)
    }

    /// Evaluations recoverable thread by thread from `nodes`.
    pub fn recoverable_evaluations(&self, nodes: &[usize]) -> usize {
        let code = &self.inner;
        (0..code.layers().len())
            .flat_map(|l| (0..code.n()).map(move |t| (l, t)))
            .filter(|&(l, t)| {
                code.thread_cells(l, t)
                    .iter()
                    .filter(|(_, c)| nodes.contains(c))
                    .count()
                    >= code.w()
            })
            .count()
            * code.w()
    }

    pub fn collect(&self, columns: &BTreeMap<usize, Vec<u8>>) -> Result<Vec<u8>> {
        let code = &self.inner;
        if columns.len() < self.k {
            return Err(CodeError::InsufficientNodes {
                need: self.k,
                got: columns.len(),
            });
        }
        let mut known: Vec<(u8, u8)> = Vec::new();
        for layer in 0..code.layers().len() {
            for tau in 0..code.n() {
                let cells: BTreeMap<usize, u8> = code
                    .thread_cells(layer, tau)
                    .into_iter()
                    .enumerate()
                    .filter_map(|(i, (r, c))| columns.get(&c).map(|col| (i, col[r])))
                    .collect();
                if cells.len() < code.w() {
                    continue;
                }
                let cw = code.mds().erasure_decode(&cells)?;
                let off = code.message_offset(layer, tau);
                for (j, &u) in cw.iter().take(code.w()).enumerate() {
                    known.push((self.point(off + j), u));
                }
            }
        }
        if known.len() < self.filesize {
            return Err(CodeError::Unrecoverable {
                rank: known.len(),
                needed: self.filesize,
            });
        }
        let f = code.field();
        let vandermonde: Vec<Vec<u8>> = known[..self.filesize]
            .iter()
            .map(|&(x, _)| (0..self.filesize).map(|e| f.pow(&x, e as u64)).collect())
            .collect();
        let values: Vec<u8> = known[..self.filesize].iter().map(|&(_, v)| v).collect();
        linalg::solve(f, &vandermonde, &values)
            .ok_or_else(|| CodeError::Invariant("Vandermonde system is singular".into()))
    }
}

/// t local canonical codes sharing one linearized polynomial h over GF(q^N).
#[derive(Clone, Debug)]
pub struct LocalCode {
    inner: CanonicalCode<ExtField>,
    groups: usize,
    filesize: usize,
    phis: Vec<ExtElem>,
    y: Vec<CodeArray<ExtElem>>,
}

impl LocalCode {
    pub fn new(params: CanonicalParams, groups: usize, ext_degree: usize, filesize: usize) -> Result<Self> {
        if groups < 2 {
            return Err(CodeError::Parameter(format!("t >= 2 (got t = {groups})")));
        }
        let base = base_of(&params)?;
        let k_c = to_usize(&params.k_c)?;
        if ext_degree < groups * k_c {
            return Err(CodeError::Parameter(format!(
                "N >= t·K_c (N = {ext_degree}, t·K_c = {})",
                groups * k_c
            )));
        }
        if filesize == 0 || filesize > groups * k_c {
            return Err(CodeError::Parameter(format!(
                "1 <= K <= t·K_c (K = {filesize}, t·K_c = {})",
                groups * k_c
            )));
        }
        Self::with_field(params, groups, ExtField::new(base, ext_degree)?, filesize)
    }

    pub fn with_field(
        params: CanonicalParams,
        groups: usize,
        ext: ExtField,
        filesize: usize,
    ) -> Result<Self> {
        let k_c = to_usize(&params.k_c)?;
        if groups < 2 || ext.degree() < groups * k_c || filesize == 0 || filesize > groups * k_c {
            return Err(CodeError::Parameter(format!(
                "t >= 2, N >= t·K_c and 1 <= K <= t·K_c (t = {groups}, N = {}, K = {filesize}, K_c = {k_c})",
                ext.degree()
            )));
        }
        let inner = CanonicalCode::new(params, ext.clone())?;
        let phis: Vec<ExtElem> = (0..groups * k_c).map(|i| ext.basis(i)).collect();
        if gfq_rank(&ext, &phis) != groups * k_c {
            return Err(CodeError::Invariant("evaluation points are dependent".into()));
        }
        let y = phis
            .chunks(k_c)
            .map(|block| inner.encode(block))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            inner,
            groups,
            filesize,
            phis,
            y,
        })
    }

    pub fn inner(&self) -> &CanonicalCode<ExtField> {
        &self.inner
    }

    pub fn field(&self) -> &ExtField {
        self.inner.field()
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn filesize(&self) -> usize {
        self.filesize
    }

    pub fn points(&self) -> &[ExtElem] {
        &self.phis
    }

    /// (r, δ) of each local group.
    pub fn locality(&self) -> (usize, usize) {
        (self.inner.n() - self.inner.gamma(), self.inner.gamma() + 1)
    }

    pub fn encode(&self, message: &[ExtElem]) -> Result<Vec<CodeArray<ExtElem>>> {
        if message.len() != self.filesize {
            return Err(CodeError::Usage(format!(
                "message has {} symbols, expected K = {}",
                message.len(),
                self.filesize
            )));
        }
        let ext = self.field();
        let h = LinearizedPoly::new(message.to_vec());
        let evals: Vec<ExtElem> = self.phis.iter().map(|p| h.eval(ext, p)).collect();
        evals
            .chunks(self.inner.k_c())
            .map(|block| self.inner.encode(block))
            .collect()
    }

    /// Accessible rank of the Y entries at `(group, node)` positions, capped at K.
    pub fn accessible_rank(&self, nodes: &[(usize, usize)]) -> usize {
        let cells = nodes
            .iter()
            .flat_map(|&(g, c)| self.y[g].column(c).iter().map(move |y| (y, y)));
        independent_pairs(self.field(), cells, self.filesize).0.len()
    }

    /// Recovers the message from any thick columns whose Y entries reach rank K;
    /// keys are `(group, node)`.
    pub fn collect(&self, columns: &BTreeMap<(usize, usize), Vec<ExtElem>>) -> Result<Vec<ExtElem>> {
        for (&(g, c), col) in columns {
            if g >= self.groups || c >= self.inner.n() || col.len() != self.inner.alpha() {
                return Err(CodeError::Usage(format!("column ({g}, {c}) is malformed")));
            }
        }
        let cells = columns
            .iter()
            .flat_map(|(&(g, c), col)| self.y[g].column(c).iter().zip(col.iter()));
        let (points, values) = independent_pairs(self.field(), cells, self.filesize);
        if points.len() < self.filesize {
            return Err(CodeError::Unrecoverable {
                rank: points.len(),
                needed: self.filesize,
            });
        }
        Ok(moore_solve(self.field(), &points, &values)?.coeffs().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn outer_5_2_1() -> OuterCode {
        OuterCode::new(CanonicalParams::new(5, 2, 1, 4).unwrap(), 3, 20).unwrap()
    }

    #[test]
    fn make_checks() {
        let params = CanonicalParams::new(5, 2, 1, 4).unwrap();
        let e = OuterCode::new(params.clone(), 3, 19).unwrap_err();
        assert!(e.to_string().contains("N >= K_c"), "{e}");
        assert_eq!(outer_5_2_1().filesize(), 17);
        assert_eq!(OuterCode::new(params, 4, 20).unwrap().filesize(), 20);
    }

    #[test]
    fn cells_are_f_of_y() {
        let code = outer_5_2_1();
        let ext = code.field();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m: Vec<ExtElem> = (0..17).map(|_| ext.random(&mut rng)).collect();
        let arr = code.encode(&m).unwrap();
        let f = LinearizedPoly::new(m);
        for c in 0..5 {
            for r in 0..6 {
                assert_eq!(arr.get(r, c), &f.eval(ext, code.points().get(r, c)));
            }
        }
    }

    #[test]
    fn single_coefficient_scales_y() {
        let params = CanonicalParams::new(5, 2, 1, 4).unwrap();
        // K = 1 is no ρ_k value, so it is set directly
        let ext = ExtField::new(BaseField::new(4).unwrap(), 20).unwrap();
        let thetas = (0..20).map(|i| ext.basis(i)).collect();
        let code = OuterCode::with_points(params, 4, 1, ext.clone(), thetas).unwrap();
        let m1 = ext.basis(7);
        let arr = code.encode(std::slice::from_ref(&m1)).unwrap();
        for c in 0..5 {
            for r in 0..6 {
                assert_eq!(arr.get(r, c), &ext.mul(&m1, code.points().get(r, c)));
            }
        }
    }

    #[test]
    fn fewer_than_k_nodes_lack_rank() {
        let code = outer_5_2_1();
        assert!(code.accessible_rank(&[0, 1]) < 17);
        assert_eq!(code.accessible_rank(&[0, 1, 2]), 17);
    }

    #[test]
    fn ordinary_variant_loses_rate() {
        let params = CanonicalParams::new(5, 2, 1, 23).unwrap();
        let code = OrdinaryOuterCode::new(params, 3).unwrap();
        assert_eq!(code.filesize(), 17);
        assert_eq!(code.recoverable_evaluations(&[0, 1, 2]), 14);
        let msg: Vec<u8> = (0..17).map(|i| i as u8).collect();
        let arr = code.encode(&msg).unwrap();
        assert_eq!(
            code.collect(&arr.subset([0, 1, 2])),
            Err(CodeError::Unrecoverable { rank: 14, needed: 17 })
        );
        assert_eq!(code.collect(&arr.subset(0..4)).unwrap(), msg);
    }
}
