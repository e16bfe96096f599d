//! Dense Gaussian elimination over any [`Field`].

use crate::field::Field;

/// Incrementally built row-echelon basis; `insert` reports whether a vector
/// was independent of everything inserted so far.
#[derive(Clone, Debug)]
pub struct Basis<F: Field> {
    field: F,
    // (pivot column, row with 1 at pivot and 0 at every earlier pivot)
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Basis<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((pivot, v));
        true
    }
}

pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = Vec<F::Elem>>) -> usize {
    let mut basis = Basis::new(field.clone());
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Solves `a · x = b` for square `a` (row j is equation j). `None` if singular.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.len();
    let f = field;
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !f.is_zero(&m[r][col]))?;
        m.swap(col, piv);
        let inv = f.inv(&m[col][col]).ok()?;
        for x in m[col].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || f.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&c, p));
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert<F: Field>(field: &F, a: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = a.len();
    let f = field;
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !f.is_zero(&m[r][col]))?;
        m.swap(col, piv);
        let inv = f.inv(&m[col][col]).ok()?;
        for x in m[col].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || f.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&c, p));
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(field: &F, v: &[F::Elem], m: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![field.zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if field.is_zero(x) {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o = field.add(o, &field.mul(x, r));
        }
    }
    out
}
