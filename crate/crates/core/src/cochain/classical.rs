//! Classical Hochschild cohomology from the bar complex
//! `C^n = Hom(A^{⊗n}, M)` with
//!
//! ```text
//! δf(a_1, ..., a_{n+1}) = a_1 · f(a_2, ..., a_{n+1})
//!                       + Σ_k (-1)^k f(..., a_k a_{k+1}, ...)
//!                       + (-1)^{n+1} f(a_1, ..., a_n) · a_{n+1}
//! ```
//!
//! Deliberately shares nothing with the cosimplicial assembly beyond scalar
//! arithmetic: its own indexing (last factor most significant, module index
//! outermost), dense matrices and its own elimination. It serves as a test
//! oracle for the circle.

use crate::coeffalg::{Algebra, MultiModule};
use crate::exactlinalg::Scalar;

use super::CochainError;

/// `HH^0 .. HH^N` of `A` with coefficients in a bimodule whose first key (in
/// key order) is the left action and second key the right action.
pub fn classical_oracle(alg: &Algebra, module: &MultiModule, max_degree: usize) -> Result<Vec<usize>, CochainError> {
    let keys: Vec<&str> = module.keys().collect();
    if keys.len() != 2 {
        return Err(CochainError::MissingAction(format!("a bimodule needs two actions, found {}", keys.len())));
    }
    let dense = |key: &str| -> Vec<Vec<Vec<Scalar>>> {
        module.action(key).expect("listed key").iter().map(|m| m.to_dense()).collect()
    };
    let (left, right) = (dense(keys[0]), dense(keys[1]));
    let (d, m) = (alg.dim(), module.dim());

    let dims: Vec<usize> = (0..=max_degree + 1).map(|n| m * d.pow(n as u32)).collect();
    let ranks: Vec<usize> = (0..=max_degree).map(|n| rank(coboundary(alg, &left, &right, m, n))).collect();
    (0..=max_degree)
        .map(|n| {
            let image = if n == 0 { 0 } else { ranks[n - 1] };
            (dims[n] - ranks[n]).checked_sub(image).ok_or(CochainError::Inconsistent(n))
        })
        .collect()
}

/// Index of `f(a_1..a_n)` coordinate `mu`: `mu * d^n + Σ a_k d^{k-1}`.
fn index(args: &[usize], mu: usize, d: usize) -> usize {
    let mut idx = 0;
    for &a in args.iter().rev() {
        idx = idx * d + a;
    }
    mu * d.pow(args.len() as u32) + idx
}

fn tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn coboundary(
    alg: &Algebra,
    left: &[Vec<Vec<Scalar>>],
    right: &[Vec<Vec<Scalar>>],
    m: usize,
    n: usize,
) -> Vec<Vec<Scalar>> {
    let field = alg.field();
    let d = alg.dim();
    let cols = m * d.pow(n as u32);
    let rows = m * d.pow(n as u32 + 1);
    let mut out = vec![vec![field.zero(); cols]; rows];
    let sign = |k: usize| field.from_i64(if k.is_multiple_of(2) { 1 } else { -1 });
    for a in tuples(n + 1, d) {
        for mu in 0..m {
            let row = &mut out[index(&a, mu, d)];
            for nu in 0..m {
                let c = index(&a[1..], nu, d);
                row[c] = &row[c] + &left[a[0]][mu][nu];
                let c = index(&a[..n], nu, d);
                row[c] = &row[c] + &(&sign(n + 1) * &right[a[n]][mu][nu]);
            }
            for k in 1..=n {
                let product = alg.product(a[k - 1], a[k]);
                for (t, coeff) in product.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut merged = a[..k - 1].to_vec();
                    merged.push(t);
                    merged.extend_from_slice(&a[k + 1..]);
                    let c = index(&merged, mu, d);
                    row[c] = &row[c] + &(&sign(k) * coeff);
                }
            }
        }
    }
    out
}

/// Textbook Gauss-Jordan rank on a dense matrix.
fn rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        let pivot: Vec<Scalar> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
