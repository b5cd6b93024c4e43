//! Sparse fraction-aware elimination: kernels, ranks, solves, span algebra.
//!
//! Elimination processes columns left to right with leading-term buckets,
//! choosing the sparsest candidate row at each pivot (a Markowitz-style
//! heuristic; the heuristic affects speed only, never the result). Kernels
//! are emitted in the canonical reduced-echelon basis of the nullspace,
//! ordered by free column, so output is deterministic across runs,
//! machines, and pivot strategies.

use std::collections::HashMap;
use std::io::Write;
use std::str::FromStr;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::modp;
use super::{ExactlinError, Mat, Rat, Scalar};

type SRow = Vec<(u32, Scalar)>;

/// Kernel (nullspace) of a matrix in canonical form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    /// One basis vector per free column, in free-column order; vector `k`
    /// has a 1 at `free_cols[k]` and zeros at every other free column.
    pub basis: Vec<Vec<Scalar>>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A particular solution of `A x = b` plus the solution-space dimension.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub nullity: usize,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.nullity == 0
    }
}

fn mat_to_rows(m: &Mat) -> Vec<SRow> {
    let mut rows = Vec::new();
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    for r in 0..m.rows() {
        let row: SRow = m.row_iter(r).map(|(c, v)| (c as u32, v.clone())).collect();
        if row.is_empty() {
            continue;
        }
        // Dedupe identical rows: symmetrized constraint systems produce many.
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        row.hash(&mut h);
        let key = h.finish();
        let bucket = seen.entry(key).or_default();
        if bucket.iter().any(|&idx| rows[idx] == row) {
            continue;
        }
        bucket.push(rows.len());
        rows.push(row);
    }
    rows
}

struct Echelon {
    /// Pivot rows in ascending pivot-column order; entry 0 is the pivot.
    rows: Vec<SRow>,
    pivots: Vec<u32>,
}

/// `a - f * b`, skipping the (cancelling) leading entries at `skip`.
fn row_axpy(a: &SRow, f: &Scalar, b: &SRow, skip: u32) -> SRow {
    let mut out: SRow = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = if i < a.len() { a[i].0 } else { u32::MAX };
        let cb = if j < b.len() { b[j].0 } else { u32::MAX };
        if i < a.len() && ca == skip {
            i += 1;
            continue;
        }
        if j < b.len() && cb == skip {
            j += 1;
            continue;
        }
        if ca < cb {
            out.push((ca, a[i].1.clone()));
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul_assign(&-f.clone(), &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_echelon(mut rows: Vec<SRow>, ncols: usize) -> Echelon {
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (idx, row) in rows.iter().enumerate() {
        buckets[row[0].0 as usize].push(idx);
    }
    let mut out = Echelon { rows: Vec::new(), pivots: Vec::new() };
    for c in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let pivot_pos = bucket
            .iter()
            .enumerate()
            .min_by_key(|(_, &idx)| rows[idx].len())
            .map(|(pos, _)| pos)
            .unwrap();
        let pivot_idx = bucket.swap_remove(pivot_pos);
        let pivot_row = std::mem::take(&mut rows[pivot_idx]);
        let lead = pivot_row[0].1.clone();
        for idx in bucket {
            let row = std::mem::take(&mut rows[idx]);
            let f = &row[0].1 / &lead;
            let reduced = row_axpy(&row, &f, &pivot_row, c as u32);
            if !reduced.is_empty() {
                buckets[reduced[0].0 as usize].push(idx);
                rows[idx] = reduced;
            }
        }
        out.rows.push(pivot_row);
        out.pivots.push(c as u32);
    }
    out
}

/// For each pivot row, the fully reduced (RREF) coefficients at the free
/// columns, computed by back-substitution over the pivot rows only.
fn reduced_free_parts(ech: &Echelon) -> Vec<HashMap<u32, Scalar>> {
    let rank = ech.rows.len();
    let pivot_index: HashMap<u32, usize> =
        ech.pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut reduced: Vec<HashMap<u32, Scalar>> = vec![HashMap::new(); rank];
    for i in (0..rank).rev() {
        let row = &ech.rows[i];
        let lead_inv = row[0].1.inv().expect("pivot entry is nonzero");
        let mut acc: HashMap<u32, Scalar> = HashMap::new();
        for (c, v) in &row[1..] {
            let val = v * &lead_inv;
            match pivot_index.get(c) {
                Some(&j) => {
                    debug_assert!(j > i, "echelon rows out of order");
                    for (fc, fv) in &reduced[j] {
                        let mut cur = acc.remove(fc).unwrap_or_else(Scalar::zero);
                        cur.add_mul_assign(&-val.clone(), fv);
                        if cur.is_zero() {
                            continue;
                        }
                        acc.insert(*fc, cur);
                    }
                }
                None => {
                    let mut cur = acc.remove(c).unwrap_or_else(Scalar::zero);
                    cur += &val;
                    if !cur.is_zero() {
                        acc.insert(*c, cur);
                    }
                }
            }
        }
        reduced[i] = acc;
    }
    reduced
}

fn kernel_uncached(m: &Mat) -> Kernel {
    let ncols = m.cols();
    let ech = row_echelon(mat_to_rows(m), ncols);
    let reduced = reduced_free_parts(&ech);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&c| c as usize).collect();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (i, &p) in pivot_cols.iter().enumerate() {
            if let Some(val) = reduced[i].get(&(f as u32)) {
                v[p] = -val;
            }
        }
        basis.push(v);
    }
    let k = Kernel { rank: pivot_cols.len(), pivot_cols, free_cols, basis };
    debug_assert!(k.basis.iter().all(|v| m.mul_vec(v).iter().all(Scalar::is_zero)));
    debug_assert!(check_rank_against_modp(m, k.rank));
    k
}

fn check_rank_against_modp(m: &Mat, exact_rank: usize) -> bool {
    match modp::rank_profile_mod(m, modp::DEFAULT_PRIME) {
        // The homomorphic rank can only drop, never exceed the exact rank.
        Some((r, _)) => r <= exact_rank,
        None => true,
    }
}

const CACHE_MIN_ENTRIES: usize = 40_000;

fn cache_key(m: &Mat) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{}", m.rows(), m.cols()));
    for (r, c, v) in m.iter() {
        h.update(format!(";{r},{c},{v}"));
    }
    format!("{:x}", h.finalize())
}

fn cache_lookup(dir: &str, key: &str) -> Option<Kernel> {
    let path = std::path::Path::new(dir).join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn cache_store(dir: &str, key: &str, k: &Kernel) {
    // Best-effort: an unusable cache directory must never fail the solve.
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = std::path::Path::new(dir).join(format!("{key}.json"));
    if let Ok(mut f) = std::fs::File::create(path) {
        let _ = f.write_all(serde_json::to_string(k).unwrap_or_default().as_bytes());
    }
}

/// Kernel of `m` as a canonical ordered basis.
///
/// Honors the `SKEWBERGER_CACHE` environment variable: when set to a
/// directory, kernels of large systems are memoized there keyed by a
/// content hash of the matrix.
pub fn kernel(m: &Mat) -> Kernel {
    if m.rows() * m.cols() >= CACHE_MIN_ENTRIES {
        if let Ok(dir) = std::env::var("SKEWBERGER_CACHE") {
            if !dir.is_empty() {
                let key = cache_key(m);
                if let Some(hit) = cache_lookup(&dir, &key) {
                    return hit;
                }
                let k = kernel_uncached(m);
                cache_store(&dir, &key, &k);
                return k;
            }
        }
    }
    kernel_uncached(m)
}

pub fn rank(m: &Mat) -> usize {
    row_echelon(mat_to_rows(m), m.cols()).rows.len()
}

/// Solve `A x = b` exactly. Returns the canonical particular solution
/// (free variables zero) or `None` if inconsistent.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Solution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut aug = Mat::zero(a.rows(), n + 1);
    for (r, c, v) in a.iter() {
        aug.set(r, c, v.clone());
    }
    for (r, v) in b.iter().enumerate() {
        aug.set(r, n, -v);
    }
    let k = kernel(&aug);
    if k.pivot_cols.contains(&n) {
        return None;
    }
    // The kernel vector attached to the free column `n` reads `(x, 1)`.
    let pos = k.free_cols.iter().position(|&f| f == n).expect("column n is free");
    let particular = k.basis[pos][..n].to_vec();
    Some(Solution { particular, nullity: k.dim() - 1 })
}

/// Outcome of inserting a vector into a [`RowBasis`].
pub enum InsertOutcome {
    /// The vector enlarged the span.
    Extended,
    /// The vector was already in the span; coordinates in terms of the
    /// previously inserted vectors (in insertion order) are returned.
    InSpan(Vec<Scalar>),
}

/// Incremental span structure with coordinate tracking.
///
/// Rows are kept in echelon form together with their expressions in terms
/// of the inserted vectors, so membership tests also recover coordinates.
pub struct RowBasis {
    ncols: usize,
    rows: Vec<SRow>,
    /// `coeffs[k][j]`: coefficient of inserted vector `j` in stored row `k`.
    coeffs: Vec<Vec<Scalar>>,
    leads: Vec<u32>,
    inserted: usize,
}

impl RowBasis {
    pub fn new(ncols: usize) -> Self {
        RowBasis { ncols, rows: Vec::new(), coeffs: Vec::new(), leads: Vec::new(), inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn to_sparse(&self, v: &[Scalar]) -> SRow {
        v.iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(c, s)| (c as u32, s.clone()))
            .collect()
    }

    fn reduce(&self, v: &[Scalar]) -> Result<(SRow, Vec<Scalar>), ExactlinError> {
        if v.len() != self.ncols {
            return Err(ExactlinError::Dimension { expected: self.ncols, got: v.len() });
        }
        let mut row = self.to_sparse(v);
        let mut combo = vec![Scalar::zero(); self.rows.len()];
        loop {
            let Some(&(lead, _)) = row.first() else { break };
            let Some(k) = self.leads.iter().position(|&l| l == lead) else { break };
            let f = &row[0].1 / &self.rows[k][0].1;
            row = row_axpy(&row, &f, &self.rows[k], u32::MAX);
            combo[k] = f;
            // row_axpy with skip=MAX subtracts everywhere including the
            // leads, which cancel exactly; drop the explicit zero if any.
            row.retain(|(_, s)| !s.is_zero());
        }
        Ok((row, combo))
    }

    /// Insert a vector; reports whether it extended the span, with
    /// coordinates when it did not.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<InsertOutcome, ExactlinError> {
        let (row, combo) = self.reduce(v)?;
        self.inserted += 1;
        if row.is_empty() {
            let coords = self.combo_to_coords(&combo, self.inserted - 1);
            return Ok(InsertOutcome::InSpan(coords));
        }
        let mut coeff = vec![Scalar::zero(); self.inserted];
        coeff[self.inserted - 1] = Scalar::one();
        for (k, f) in combo.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, c) in self.coeffs[k].iter().enumerate() {
                let mut cur = std::mem::replace(&mut coeff[j], Scalar::zero());
                cur.add_mul_assign(&-f.clone(), c);
                coeff[j] = cur;
            }
        }
        self.leads.push(row[0].0);
        self.rows.push(row);
        self.coeffs.push(coeff);
        Ok(InsertOutcome::Extended)
    }

    fn combo_to_coords(&self, combo: &[Scalar], n_inserted_before: usize) -> Vec<Scalar> {
        let mut coords = vec![Scalar::zero(); n_inserted_before];
        for (k, f) in combo.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, c) in self.coeffs[k].iter().enumerate() {
                if j < coords.len() {
                    coords[j].add_mul_assign(f, c);
                }
            }
        }
        coords
    }

    /// Membership test with coordinates in the inserted vectors.
    pub fn contains(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, ExactlinError> {
        let (row, combo) = self.reduce(v)?;
        if row.is_empty() {
            Ok(Some(self.combo_to_coords(&combo, self.inserted)))
        } else {
            Ok(None)
        }
    }

    /// The stored echelon rows as dense vectors (a basis of the span).
    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![Scalar::zero(); self.ncols];
                for (c, s) in row {
                    v[*c as usize] = s.clone();
                }
                v
            })
            .collect()
    }
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[Vec<Scalar>]) -> Result<usize, ExactlinError> {
    let Some(first) = vectors.first() else { return Ok(0) };
    let mut basis = RowBasis::new(first.len());
    for v in vectors {
        basis.insert(v)?;
    }
    Ok(basis.dim())
}

/// Do two lists of vectors span the same subspace?
pub fn span_equal(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<bool, ExactlinError> {
    let ncols = a.first().or(b.first()).map(|v| v.len()).unwrap_or(0);
    let mut basis_a = RowBasis::new(ncols);
    for v in a {
        basis_a.insert(v)?;
    }
    for v in b {
        if basis_a.contains(v)?.is_none() {
            return Ok(false);
        }
    }
    let mut basis_b = RowBasis::new(ncols);
    for v in b {
        basis_b.insert(v)?;
    }
    Ok(basis_a.dim() == basis_b.dim())
}

/// Coordinates of `v` in the span of `basis_vectors`, if it lies there.
pub fn in_span(v: &[Scalar], basis_vectors: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>, ExactlinError> {
    let mut basis = RowBasis::new(v.len());
    for b in basis_vectors {
        basis.insert(b)?;
    }
    basis.contains(v)
}

/// Signature `(positive, negative, zero)` of a symmetric matrix with real
/// rational entries, by exact congruent diagonalization.
pub fn symmetric_signature(m: &Mat) -> (usize, usize, usize) {
    assert!(m.is_square(), "signature of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = m.get(r, c);
                    assert!(v.is_real(), "signature requires real entries");
                    v.re().clone()
                })
                .collect()
        })
        .collect();
    for r in 0..n {
        for c in 0..r {
            assert_eq!(a[r][c], a[c][r], "signature requires a symmetric matrix");
        }
    }

    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !a[l][l].is_zero()) {
                a.swap(k, l);
                for row in a.iter_mut() {
                    row.swap(k, l);
                }
            } else {
                // No nonzero diagonal left: find an off-diagonal entry.
                let mut found = None;
                'search: for i in k..n {
                    for j in i + 1..n {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else {
                    zero += n - k;
                    break;
                };
                // Congruent op: row_i += row_j, col_i += col_j makes the
                // (i,i) entry 2·a[i][j] ≠ 0.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                if i != k {
                    a.swap(k, i);
                    for row in a.iter_mut() {
                        row.swap(k, i);
                    }
                }
                continue;
            }
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &d;
            for c in 0..n {
                let sub = &f * &a[k][c];
                a[r][c] -= sub;
            }
        }
        for c in k + 1..n {
            if a[k][c].is_zero() {
                continue;
            }
            let f = &a[k][c] / &d;
            for r in 0..n {
                let sub = &f * &a[r][k];
                a[r][c] -= sub;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}

/// Exact inverse of a square matrix, `None` when singular.
///
/// Dense Gauss–Jordan on `[M | I]`; fine for the module sizes this crate
/// works at (inverses only show up in base-change and equivalence checks).
pub fn invert(m: &Mat) -> Option<Mat> {
    assert!(m.is_square(), "invert requires a square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row: Vec<Scalar> = (0..n).map(|c| m.get(r, c)).collect();
            row.extend((0..n).map(|c| {
                if r == c {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            row
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        let inv = a[k][k].inv().expect("nonzero pivot");
        for c in k..2 * n {
            let v = &a[k][c] * &inv;
            a[k][c] = v;
        }
        for r in 0..n {
            if r == k || a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].clone();
            for c in k..2 * n {
                let sub = &f * &a[k][c];
                a[r][c] -= &sub;
            }
        }
    }
    let mut out = Mat::zero(n, n);
    for (r, row) in a.iter().enumerate() {
        for c in 0..n {
            out.set(r, c, row[n + c].clone());
        }
    }
    Some(out)
}

/// Parse a whitespace-free scalar, for tests and data tables.
#[allow(dead_code)] // exercised from sibling modules' tests
pub(crate) fn scalar(text: &str) -> Scalar {
    Scalar::from_str(text).expect("literal scalar")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: &[&[i64]]) -> Mat {
        Mat::from_int_rows(rows)
    }

    #[test]
    fn kernel_of_simple_rank_one_system() {
        // x + y + z = 0 has the canonical kernel { (-1,1,0), (-1,0,1) }.
        let m = int_mat(&[&[1, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.rank, 1);
        assert_eq!(k.free_cols, vec![1, 2]);
        assert_eq!(
            k.basis,
            vec![
                vec![Scalar::from_int(-1), Scalar::one(), Scalar::zero()],
                vec![Scalar::from_int(-1), Scalar::zero(), Scalar::one()],
            ]
        );
    }

    #[test]
    fn kernel_of_empty_matrix_is_standard_basis() {
        let m = Mat::zero(0, 3);
        let k = kernel(&m);
        assert_eq!(k.rank, 0);
        assert_eq!(k.dim(), 3);
        for (idx, v) in k.basis.iter().enumerate() {
            for (c, s) in v.iter().enumerate() {
                assert_eq!(s.is_zero(), c != idx);
            }
        }
    }

    #[test]
    fn kernel_canonical_regardless_of_row_order() {
        let m1 = int_mat(&[&[1, 2, 3, 4], &[0, 1, 1, 1], &[1, 3, 4, 5]]);
        let m2 = int_mat(&[&[1, 3, 4, 5], &[1, 2, 3, 4], &[0, 1, 1, 1]]);
        assert_eq!(kernel(&m1), kernel(&m2));
    }

    #[test]
    fn gaussian_entries_exercise_complex_division() {
        // (1  i) has kernel spanned by (-i, 1).
        let mut m = Mat::zero(1, 2);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::i());
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis[0], vec![-Scalar::i(), Scalar::one()]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = int_mat(&[&[1, 1], &[1, -1]]);
        let b = [Scalar::from_int(4), Scalar::from_int(2)];
        let sol = solve(&a, &b).unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.particular, vec![Scalar::from_int(3), Scalar::one()]);

        let a2 = int_mat(&[&[1, 1], &[2, 2]]);
        let b2 = [Scalar::from_int(1), Scalar::from_int(3)];
        assert!(solve(&a2, &b2).is_none());
    }

    #[test]
    fn row_basis_tracks_coordinates() {
        let v1 = vec![Scalar::from_int(1), Scalar::from_int(0), Scalar::from_int(2)];
        let v2 = vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(1)];
        let probe = vec![Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(7)];
        let coords = in_span(&probe, &[v1, v2]).unwrap().unwrap();
        assert_eq!(coords, vec![Scalar::from_int(2), Scalar::from_int(3)]);
    }

    #[test]
    fn span_relations() {
        let a = vec![
            vec![Scalar::from_int(1), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(-1)],
        ];
        let b = vec![
            vec![Scalar::from_int(1), Scalar::from_int(0)],
            vec![Scalar::from_int(0), Scalar::from_int(1)],
        ];
        assert!(span_equal(&a, &b).unwrap());
        assert_eq!(span_dim(&a).unwrap(), 2);
        let c = vec![vec![Scalar::from_int(1), Scalar::from_int(0)]];
        assert!(!span_equal(&a, &c).unwrap());
    }

    #[test]
    fn span_dimension_mismatch_is_an_error() {
        let a = vec![vec![Scalar::one()], vec![Scalar::one(), Scalar::zero()]];
        assert!(span_dim(&a).is_err());
    }

    #[test]
    fn signature_of_diagonal_and_hyperbolic_forms() {
        assert_eq!(symmetric_signature(&int_mat(&[&[2, 0], &[0, -3]])), (1, 1, 0));
        // Hyperbolic plane: signature (1,1) found via the off-diagonal path.
        assert_eq!(symmetric_signature(&int_mat(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(symmetric_signature(&int_mat(&[&[1, 0], &[0, 0]])), (1, 0, 1));
    }

    #[test]
    fn invert_round_trips_and_detects_singular() {
        let m = int_mat(&[&[2, 1], &[1, 1]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(inv.mul(&m), Mat::identity(2));
        assert!(invert(&int_mat(&[&[1, 2], &[2, 4]])).is_none());
    }
}
