//! The systematic [w+γ, w, γ+1] inner MDS code that every thread carries.

use std::collections::BTreeMap;

use crate::error::{CodeError, Result};
use crate::field::Field;
use crate::linalg;

/// Generator `[I_w | P]`; every w×w column-submatrix is invertible.
#[derive(Clone, Debug)]
pub struct MdsCode<F: Field> {
    field: F,
    w: usize,
    gamma: usize,
    /// w × γ parity block.
    parity: Vec<Vec<F::Elem>>,
}

impl<F: Field> MdsCode<F> {
    /// Cauchy parity P[i][j] = 1 / (x_i - y_j) with x_i = i, y_j = w + j
    /// taken as GF(q) integer codes.
    pub fn cauchy(field: F, w: usize, gamma: usize) -> Result<Self> {
        if w == 0 {
            return Err(CodeError::Parameter("w >= 1".into()));
        }
        let q = field.base().order();
        if q <= w + gamma {
            return Err(CodeError::Parameter(format!(
                "q > w+γ (q = {q}, w+γ = {})",
                w + gamma
            )));
        }
        let code = |i: usize| field.from_base(field.base().elem(i));
        let parity = (0..w)
            .map(|i| {
                (0..gamma)
                    .map(|j| {
                        let diff = field.sub(&code(i), &code(w + j));
                        field.inv(&diff).expect("Cauchy points are distinct")
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            field,
            w,
            gamma,
            parity,
        })
    }

    /// Custom parity block, accepted only if the result is MDS.
    pub fn from_parity(field: F, parity: Vec<Vec<F::Elem>>) -> Result<Self> {
        let w = parity.len();
        let gamma = parity.first().map_or(0, Vec::len);
        if w == 0 || parity.iter().any(|r| r.len() != gamma) {
            return Err(CodeError::Usage("parity block must be a non-empty w × γ matrix".into()));
        }
        let code = Self {
            field,
            w,
            gamma,
            parity,
        };
        let mut coords: Vec<usize> = (0..w).collect();
        loop {
            if code.decoder(&coords).is_err() {
                return Err(CodeError::Parameter(format!(
                    "parity block is not MDS: coordinates {coords:?} are dependent"
                )));
            }
            if !crate::patterns::next_combination(&mut coords, w + gamma) {
                break;
            }
        }
        Ok(code)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.w
    }

    pub fn redundancy(&self) -> usize {
        self.gamma
    }

    pub fn len(&self) -> usize {
        self.w + self.gamma
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Column `j` of the generator matrix.
    pub fn generator_column(&self, j: usize) -> Vec<F::Elem> {
        if j < self.w {
            (0..self.w)
                .map(|i| if i == j { self.field.one() } else { self.field.zero() })
                .collect()
        } else {
            self.parity.iter().map(|row| row[j - self.w].clone()).collect()
        }
    }

    pub fn generator(&self) -> Vec<Vec<F::Elem>> {
        (0..self.w)
            .map(|i| {
                (0..self.len())
                    .map(|j| self.generator_column(j)[i].clone())
                    .collect()
            })
            .collect()
    }

    pub fn encode(&self, u: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(u.len(), self.w, "message must have w symbols");
        let f = &self.field;
        let mut out = u.to_vec();
        for j in 0..self.gamma {
            let mut acc = f.zero();
            for (ui, row) in u.iter().zip(&self.parity) {
                acc = f.add(&acc, &f.mul(ui, &row[j]));
            }
            out.push(acc);
        }
        out
    }

    /// Precomputed decoder reading exactly the `w` given coordinates.
    pub fn decoder(&self, coords: &[usize]) -> Result<SubsetDecoder<F>> {
        if coords.len() != self.w {
            return Err(CodeError::InsufficientData {
                need: self.w,
                got: coords.len(),
            });
        }
        // square system: row i of `sub` is generator row i restricted to coords
        let cols: Vec<Vec<F::Elem>> = coords.iter().map(|&c| self.generator_column(c)).collect();
        let sub: Vec<Vec<F::Elem>> = (0..self.w)
            .map(|i| cols.iter().map(|col| col[i].clone()).collect())
            .collect();
        let inverse = linalg::invert(&self.field, &sub).ok_or_else(|| {
            CodeError::Invariant(format!("coordinates {coords:?} are not an information set"))
        })?;
        Ok(SubsetDecoder {
            coords: coords.to_vec(),
            inverse,
        })
    }

    /// The unique codeword agreeing with `known`; uses the first `w` known
    /// coordinates and checks the rest.
    pub fn erasure_decode(&self, known: &BTreeMap<usize, F::Elem>) -> Result<Vec<F::Elem>> {
        if known.len() < self.w {
            return Err(CodeError::InsufficientData {
                need: self.w,
                got: known.len(),
            });
        }
        if let Some(&bad) = known.keys().find(|&&c| c >= self.len()) {
            return Err(CodeError::Usage(format!("coordinate {bad} out of range")));
        }
        let coords: Vec<usize> = known.keys().take(self.w).copied().collect();
        let values: Vec<F::Elem> = known.values().take(self.w).cloned().collect();
        let dec = self.decoder(&coords)?;
        let codeword = self.encode(&dec.message(&self.field, &values));
        for (&c, v) in known.iter().skip(self.w) {
            if &codeword[c] != v {
                return Err(CodeError::Corruption(format!(
                    "coordinate {c} disagrees with the codeword through {coords:?}"
                )));
            }
        }
        Ok(codeword)
    }
}

#[derive(Clone, Debug)]
pub struct SubsetDecoder<F: Field> {
    coords: Vec<usize>,
    inverse: Vec<Vec<F::Elem>>,
}

impl<F: Field> SubsetDecoder<F> {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    /// Message `u` with `u · G|coords = values`.
    pub fn message(&self, field: &F, values: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_mul(field, values, &self.inverse)
    }
}
