use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::field::{Field, Scalar};
use super::rational::Rational;
use super::LinalgError;

/// Rows beyond which products are computed in parallel.
const PAR_ROWS: usize = 4096;

/// A sparse matrix in compressed-row form.
///
/// Rows are sorted by column and never store a zero, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    entries: Vec<(usize, Scalar)>,
}

/// Sorts, merges duplicate columns and drops zeros.
fn normalize_row(mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    if row.windows(2).any(|w| w[0].0 >= w[1].0) {
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
                _ => merged.push((c, v)),
            }
        }
        row = merged;
    }
    row.retain(|(_, v)| !v.is_zero());
    row
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, row_ptr: vec![0; rows + 1], entries: Vec::new() }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix {
            field,
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            entries: (0..n).map(|i| (i, field.one())).collect(),
        }
    }

    /// Builds a matrix from per-row `(column, value)` lists in any order;
    /// duplicates are summed and zeros dropped.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut entries = Vec::new();
        row_ptr.push(0);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in &row {
                if *c >= cols {
                    return Err(LinalgError::IndexOutOfRange { row: r, col: *c, rows: n, cols });
                }
                if !field.contains(v) {
                    return Err(LinalgError::FieldMismatch);
                }
            }
            entries.extend(normalize_row(row));
            row_ptr.push(entries.len());
        }
        Ok(Matrix { field, rows: n, cols, row_ptr, entries })
    }

    /// Builds a matrix from a dense row-major array.
    pub fn from_dense(field: Field, cols: usize, dense: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut rows = Vec::with_capacity(dense.len());
        for (r, row) in dense.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged { row: r, expected: cols, found: row.len() });
            }
            rows.push(row.iter().cloned().enumerate().collect());
        }
        Self::from_rows(field, cols, rows)
    }

    /// Convenience for integer matrices.
    pub fn from_i64(field: Field, dense: &[&[i64]]) -> Result<Self, LinalgError> {
        let cols = dense.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = dense.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_dense(field, cols, &rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.entries[self.row_ptr[r]..self.row_ptr[r + 1]]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        let row = self.row(r);
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => row[k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|r| {
                let mut out = vec![self.field.zero(); self.cols];
                for (c, v) in self.row(r) {
                    out[*c] = v.clone();
                }
                out
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut counts = vec![0usize; self.cols + 1];
        for (c, _) in &self.entries {
            counts[c + 1] += 1;
        }
        for c in 0..self.cols {
            counts[c + 1] += counts[c];
        }
        let row_ptr = counts.clone();
        let mut slots: Vec<Option<(usize, Scalar)>> = vec![None; self.entries.len()];
        let mut next = counts;
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                slots[next[*c]] = Some((r, v.clone()));
                next[*c] += 1;
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            entries: slots.into_iter().map(|e| e.expect("filled")).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        if k.is_zero() {
            return Matrix::zero(self.field, self.rows, self.cols);
        }
        let mut out = self.clone();
        for (_, v) in &mut out.entries {
            *v = &*v * k;
        }
        out
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Matrix, k: &Scalar) -> Result<Matrix, LinalgError> {
        self.check_same_shape(other)?;
        let rows = (0..self.rows)
            .map(|r| {
                let mut row: Vec<(usize, Scalar)> = self.row(r).to_vec();
                row.extend(other.row(r).iter().map(|(c, v)| (*c, v * k)));
                row
            })
            .collect();
        Matrix::from_rows(self.field, self.cols, rows)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.add_scaled(other, &self.field.one())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.add_scaled(other, &self.field.from_i64(-1))
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let product_row = |r: usize| -> Vec<(usize, Scalar)> {
            let mut acc = Vec::new();
            for (k, a) in self.row(r) {
                acc.extend(other.row(*k).iter().map(|(c, b)| (*c, a * b)));
            }
            normalize_row(acc)
        };
        let rows: Vec<Vec<(usize, Scalar)>> = if self.rows >= PAR_ROWS {
            (0..self.rows).into_par_iter().map(product_row).collect()
        } else {
            (0..self.rows).map(product_row).collect()
        };
        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        row_ptr.push(0);
        let mut entries = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        for row in rows {
            entries.extend(row);
            row_ptr.push(entries.len());
        }
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, row_ptr, entries })
    }

    /// Rank over the matrix's field by exact elimination.
    ///
    /// Over the rationals rows are cleared to primitive integer vectors and
    /// eliminated fraction-free; over `F_p` pivots are normalized to one.
    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        let source = if self.cols < self.rows { self.transpose() } else { self.clone() };
        match self.field {
            Field::Rationals => {
                let rows = (0..source.rows)
                    .map(|r| {
                        source
                            .row(r)
                            .iter()
                            .map(|(c, v)| match v {
                                Scalar::Rational(q) => (*c, q.clone()),
                                Scalar::Residue { .. } => unreachable!("field checked"),
                            })
                            .collect()
                    })
                    .collect();
                rational_rank(rows)
            }
            Field::Prime(p) => {
                let rows = (0..source.rows)
                    .map(|r| {
                        source
                            .row(r)
                            .iter()
                            .map(|(c, v)| match v {
                                Scalar::Residue { value, .. } => (*c, *value),
                                Scalar::Rational(_) => unreachable!("field checked"),
                            })
                            .collect()
                    })
                    .collect();
                modular_rank(rows, p)
            }
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(16) {
            write!(f, "  {r}:")?;
            for (c, v) in self.row(r) {
                write!(f, " ({c}, {v})")?;
            }
            writeln!(f)?;
        }
        if self.rows > 16 {
            writeln!(f, "  ... {} more rows", self.rows - 16)?;
        }
        write!(f, "]")
    }
}

/// Scales a rational row to a primitive integer vector with positive leading entry.
fn primitive(row: &mut [(usize, Rational)]) {
    if row.is_empty() {
        return;
    }
    let mut lcm = Rational::one();
    for (_, v) in row.iter() {
        if !v.is_integer() {
            let d = Rational::from_big(v.denom().into());
            let g = lcm.integer_gcd(&d);
            lcm = (&lcm * &d).checked_div(&g).expect("gcd of positive integers");
        }
    }
    if !lcm.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v * &lcm;
        }
    }
    let mut content = Rational::zero();
    for (_, v) in row.iter() {
        content = content.integer_gcd(v);
        if content.is_one() {
            break;
        }
    }
    if row[0].1.signum() < 0 {
        content = -&content;
    }
    if !content.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.checked_div(&content).expect("nonzero content");
        }
    }
}

/// `a * x - b * y` on sparse rows.
#[allow(clippy::too_many_arguments)]
fn combine<T: Clone>(
    x: &[(usize, T)],
    a: &T,
    y: &[(usize, T)],
    b: &T,
    mul: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
    is_zero: impl Fn(&T) -> bool,
    zero: &T,
) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let v = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, mul(a, vx))
            }
            (Some((cx, _)), Some((cy, vy))) if cy < cx => {
                j += 1;
                (*cy, sub(zero, &mul(b, vy)))
            }
            (Some((cx, vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (*cx, sub(&mul(a, vx), &mul(b, vy)))
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, mul(a, vx))
            }
            (None, Some((cy, vy))) => {
                j += 1;
                (*cy, sub(zero, &mul(b, vy)))
            }
            (None, None) => unreachable!(),
        };
        if !is_zero(&v.1) {
            out.push(v);
        }
    }
    out
}

/// Online echelon form: each incoming row is reduced against the pivot stored
/// at its leading column until it either vanishes or claims a new pivot.
/// `prepare` must be idempotent; it runs on every row on arrival and again on
/// each new pivot.
fn echelon_rank<T: Clone>(
    mut rows: Vec<Vec<(usize, T)>>,
    mut reduce: impl FnMut(&[(usize, T)], &[(usize, T)]) -> Vec<(usize, T)>,
    mut prepare: impl FnMut(&mut Vec<(usize, T)>),
) -> usize {
    rows.retain(|r| !r.is_empty());
    // sparse rows first keeps fill-in down
    rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for mut row in rows {
        prepare(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    row = reduce(&row, p);
                }
                None => {
                    prepare(&mut row);
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn rational_rank(rows: Vec<Vec<(usize, Rational)>>) -> usize {
    let zero = Rational::zero();
    echelon_rank(
        rows,
        |row, pivot| {
            // fraction-free: row <- (p/g) * row - (r/g) * pivot
            let r = &row[0].1;
            let p = &pivot[0].1;
            let g = r.integer_gcd(p);
            let a = p.checked_div(&g).expect("nonzero pivot");
            let b = r.checked_div(&g).expect("nonzero lead");
            let mut out = combine(row, &a, pivot, &b, |x, y| x * y, |x, y| x - y, Rational::is_zero, &zero);
            primitive(&mut out);
            out
        },
        |row| primitive(row),
    )
}

fn modular_rank(rows: Vec<Vec<(usize, u32)>>, p: u32) -> usize {
    let p64 = p as u64;
    let one = 1u32;
    let normalize = |row: &mut Vec<(usize, u32)>| {
        if let Some(&(_, lead)) = row.first() {
            let inv = super::field::mod_inverse(lead as u64, p64).expect("nonzero lead");
            for (_, v) in row.iter_mut() {
                *v = ((*v as u64 * inv) % p64) as u32;
            }
        }
    };
    echelon_rank(
        rows,
        |row, pivot| {
            let lead = row[0].1;
            combine(
                row,
                &one,
                pivot,
                &lead,
                |x, y| ((*x as u64 * *y as u64) % p64) as u32,
                |x, y| ((*x as u64 + p64 - *y as u64) % p64) as u32,
                |x| *x == 0,
                &0,
            )
        },
        normalize,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(dense: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Field::Rationals, dense).unwrap()
    }

    #[test]
    fn product_examples() {
        let id = Matrix::identity(Field::Rationals, 3);
        assert_eq!(id.mul(&id).unwrap(), id);
        let a = q(&[&[1, 2], &[3, 4]]);
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&swap).unwrap(), q(&[&[2, 1], &[4, 3]]));
        let z = Matrix::zero(Field::Rationals, 2, 5);
        assert!(a.mul(&z).unwrap().is_zero());
        assert!(matches!(a.mul(&Matrix::zero(Field::Rationals, 3, 1)), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_examples() {
        let z = Matrix::zero(Field::Rationals, 4, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_dim(), 5);
        let id = Matrix::identity(Field::Rationals, 5);
        assert_eq!(id.rank(), 5);
        assert_eq!(id.kernel_dim(), 0);
        let m = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_dim(), 1);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let over = |f| Matrix::from_i64(f, &[&[1, 1], &[1, -1]]).unwrap().rank();
        assert_eq!(over(Field::Rationals), 2);
        assert_eq!(over(Field::Prime(2)), 1);
        assert_eq!(over(Field::Prime(3)), 2);
    }

    #[test]
    fn rational_entries_and_growth() {
        let f = Field::Rationals;
        let m = Matrix::from_dense(
            f,
            3,
            &[
                vec![f.parse_scalar("1/2").unwrap(), f.parse_scalar("1/3").unwrap(), f.zero()],
                vec![f.parse_scalar("3").unwrap(), f.parse_scalar("2").unwrap(), f.zero()],
                vec![f.zero(), f.parse_scalar("7/9").unwrap(), f.one()],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        // Hilbert matrices are nonsingular and badly conditioned
        let n = 8;
        let hilbert: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| Scalar::Rational(Rational::new(1, (i + j + 1) as i64))).collect()).collect();
        assert_eq!(Matrix::from_dense(f, n, &hilbert).unwrap().rank(), n);
    }

    #[test]
    fn from_rows_normalizes() {
        let f = Field::Rationals;
        let m = Matrix::from_rows(f, 3, vec![vec![(2, f.one()), (0, f.one()), (2, f.from_i64(-1))], vec![]]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), f.one());
        assert_eq!(m.get(0, 2), f.zero());
        assert!(Matrix::from_rows(f, 2, vec![vec![(2, f.one())]]).is_err());
        assert!(Matrix::from_rows(f, 2, vec![vec![(0, Field::Prime(3).one())]]).is_err());
    }

    #[test]
    fn transpose_and_sums() {
        let a = q(&[&[1, 0, 2], &[0, 3, 0]]);
        let t = a.transpose();
        assert_eq!(t, q(&[&[1, 0], &[0, 3], &[2, 0]]));
        assert_eq!(t.transpose(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.add(&a).unwrap(), a.scale(&Field::Rationals.from_i64(2)));
    }

    /// Plain dense Gaussian elimination mod p; shares nothing with the sparse path.
    fn dense_rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_multiple_of(p)) else { continue };
            m.swap(rank, piv);
            let inv = mod_inverse(m[rank][c], p).unwrap();
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c] * inv % p;
                    let pivot = m[rank].clone();
                    for (x, pv) in m[r].iter_mut().zip(&pivot) {
                        *x = (*x + p * p - f * pv) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn mod_inverse(a: u64, p: u64) -> Option<u64> {
        (1..p).find(|x| a * x % p == 1)
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    fn to_matrix(f: Field, d: &[Vec<i64>]) -> Matrix {
        let refs: Vec<&[i64]> = d.iter().map(|r| r.as_slice()).collect();
        Matrix::from_i64(f, &refs).unwrap()
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_is_cols(d in small_matrix()) {
            for f in [Field::Rationals, Field::Prime(5)] {
                let m = to_matrix(f, &d);
                prop_assert_eq!(m.rank() + m.kernel_dim(), m.cols());
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }
        }

        #[test]
        fn rank_invariant_under_permutation(d in small_matrix(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rows = d.clone();
            rows.shuffle(&mut rng);
            let mut perm: Vec<usize> = (0..d[0].len()).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<Vec<i64>> =
                rows.iter().map(|r| perm.iter().map(|&c| r[c]).collect()).collect();
            let a = to_matrix(Field::Rationals, &d);
            let b = to_matrix(Field::Rationals, &permuted);
            prop_assert_eq!(a.rank(), b.rank());
        }

        #[test]
        fn prime_rank_matches_dense_oracle(d in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let m = to_matrix(Field::Prime(p as u32), &d);
            let dense: Vec<Vec<u64>> = d
                .iter()
                .map(|r| r.iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
                .collect();
            prop_assert_eq!(m.rank(), dense_rank_mod(dense, p));
        }

        #[test]
        fn product_matches_dense(a in small_matrix(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let inner = a[0].len();
            let bcols = rng.gen_range(1..=6);
            let b: Vec<Vec<i64>> =
                (0..inner).map(|_| (0..bcols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let expected: Vec<Vec<i64>> = a
                .iter()
                .map(|r| (0..bcols).map(|c| (0..inner).map(|k| r[k] * b[k][c]).sum()).collect())
                .collect();
            let f = Field::Rationals;
            prop_assert_eq!(to_matrix(f, &a).mul(&to_matrix(f, &b)).unwrap(), to_matrix(f, &expected));
        }
    }
}
