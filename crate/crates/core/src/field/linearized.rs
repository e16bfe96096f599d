use super::{ExtElem, ExtField, Field, FieldError};
use crate::linalg::{self, Basis};

/// f(x) = sum_i m_i x^(q^i), i = 0..K-1, with coefficients in GF(q^N).
///
/// The evaluation map is GF(q)-linear, which is what lets the outer code
/// commute with the (GF(q)-linear) canonical encoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<ExtElem>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<ExtElem>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, field: &ExtField, x: &ExtElem) -> ExtElem {
        let mut acc = field.zero();
        let mut power = x.clone();
        for (i, m) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = field.frobenius(&power, 1);
            }
            if !field.is_zero(m) {
                acc = field.add(&acc, &field.mul(m, &power));
            }
        }
        acc
    }
}

/// Rank over GF(q) of the coordinate vectors of `elems`.
pub fn gfq_rank(field: &ExtField, elems: &[ExtElem]) -> usize {
    linalg::rank(field.base(), elems.iter().map(|e| field.coordinates(e)))
}

/// Recovers the unique linearized polynomial of q-degree < K taking
/// `values[j]` at `points[j]`, by Gaussian elimination on the Moore matrix.
pub fn moore_solve(
    field: &ExtField,
    points: &[ExtElem],
    values: &[ExtElem],
) -> Result<LinearizedPoly, FieldError> {
    if points.len() != values.len() {
        return Err(FieldError::Length {
            expected: points.len(),
            got: values.len(),
        });
    }
    let mut basis = Basis::new(field.base().clone());
    for (index, p) in points.iter().enumerate() {
        if !basis.insert(field.coordinates(p)) {
            return Err(FieldError::DependentPoints { index });
        }
    }
    let k = points.len();
    let moore: Vec<Vec<ExtElem>> = points
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(k);
            let mut cur = p.clone();
            for i in 0..k {
                if i > 0 {
                    cur = field.frobenius(&cur, 1);
                }
                row.push(cur.clone());
            }
            row
        })
        .collect();
    let coeffs = linalg::solve(field, &moore, values)
        .expect("Moore matrix of GF(q)-independent points is invertible");
    Ok(LinearizedPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BaseField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4_20() -> ExtField {
        ExtField::new(BaseField::new(4).unwrap(), 20).unwrap()
    }

    #[test]
    fn linearity_over_base_field() {
        let f = ExtField::new(BaseField::new(4).unwrap(), 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let poly = LinearizedPoly::new((0..4).map(|_| f.random(&mut rng)).collect());
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let lambda = f.from_base(rand::Rng::random_range(&mut rng, 0..4u8));
            assert_eq!(poly.eval(&f, &f.zero()), f.zero());
            assert_eq!(
                poly.eval(&f, &f.add(&a, &b)),
                f.add(&poly.eval(&f, &a), &poly.eval(&f, &b))
            );
            assert_eq!(
                poly.eval(&f, &f.mul(&lambda, &a)),
                f.mul(&lambda, &poly.eval(&f, &a))
            );
        }
    }

    #[test]
    fn single_coefficient_is_scalar_multiplication() {
        let f = gf4_20();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m1 = f.random(&mut rng);
        let y = f.random(&mut rng);
        let poly = LinearizedPoly::new(vec![m1.clone()]);
        assert_eq!(poly.eval(&f, &y), f.mul(&m1, &y));
    }

    #[test]
    fn rank_examples() {
        let f = gf4_20();
        assert_eq!(gfq_rank(&f, &[]), 0);
        assert_eq!(gfq_rank(&f, &[f.one(), f.basis(1)]), 2);
        let x = f.basis(3);
        assert_eq!(gfq_rank(&f, &[x.clone(), f.scale(2, &x)]), 1);
    }

    /// Row reduction over GF(4) written out independently of `linalg`.
    fn oracle_rank(base: &BaseField, mut rows: Vec<Vec<u8>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = base.inv(&rows[rank][c]).unwrap();
            let pivot: Vec<u8> = rows[rank].iter().map(|x| base.mul(x, &inv)).collect();
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let k = rows[r][c];
                    for j in 0..cols {
                        rows[r][j] = base.sub(&rows[r][j], &base.mul(&k, &pivot[j]));
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_row_reduction_oracle() {
        let f = gf4_20();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..20 {
            let mut elems: Vec<ExtElem> = (0..5).map(|_| f.random(&mut rng)).collect();
            if trial % 3 == 0 {
                // force a dependency
                elems[4] = f.add(&elems[0], &f.scale(3, &elems[1]));
            }
            let coords = elems.iter().map(|e| f.coordinates(e)).collect();
            assert_eq!(gfq_rank(&f, &elems), oracle_rank(f.base(), coords));
        }
    }

    #[test]
    fn moore_round_trip() {
        let f = gf4_20();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let poly = LinearizedPoly::new((0..5).map(|_| f.random(&mut rng)).collect());
            let points: Vec<ExtElem> = loop {
                let pts: Vec<ExtElem> = (0..5).map(|_| f.random(&mut rng)).collect();
                if gfq_rank(&f, &pts) == 5 {
                    break pts;
                }
            };
            let values: Vec<ExtElem> = points.iter().map(|p| poly.eval(&f, p)).collect();
            assert_eq!(moore_solve(&f, &points, &values).unwrap(), poly);
        }
    }

    #[test]
    fn moore_single_point() {
        let f = gf4_20();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let y = f.random(&mut rng);
        let c = f.random(&mut rng);
        let sol = moore_solve(&f, std::slice::from_ref(&y), std::slice::from_ref(&c)).unwrap();
        assert_eq!(sol.coeffs(), &[f.mul(&c, &f.inv(&y).unwrap())]);
    }

    #[test]
    fn moore_dependent_points() {
        let f = gf4_20();
        let y = f.basis(2);
        let err = moore_solve(&f, &[y.clone(), f.scale(3, &y)], &[f.one(), f.one()]);
        assert_eq!(err, Err(FieldError::DependentPoints { index: 1 }));
    }
}
