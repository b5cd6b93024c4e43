//! Splitting of a symplectic representation into a totally annihilated
//! part and pairwise orthogonal nondegenerate invariant blocks.

use crate::exactlin::{invert, kernel, rank, InsertOutcome, Mat, RowBasis, Scalar};
use crate::liealg::{commutant, restrict_to_invariant, FormKind, InvariantForm, MatrixRep};

use super::CurvatureError;

/// One orthogonal summand of the decomposition.
#[derive(Clone, Debug)]
pub struct WuBlock {
    vectors: Vec<Vec<Scalar>>,
    rep: MatrixRep,
    trivial: bool,
}

impl WuBlock {
    /// Basis vectors of the summand inside the ambient module.
    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// The action restricted to the summand, carrying the restricted
    /// symplectic form.  The algebra basis is restricted matrix by
    /// matrix, so zero matrices appear for generators annihilating the
    /// block.
    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    /// Whether this is the totally annihilated part.
    pub fn trivial(&self) -> bool {
        self.trivial
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut out = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        out.add_mul_assign(x, y);
    }
    out
}

fn omega_pair(omega: &Mat, a: &[Scalar], b: &[Scalar]) -> Scalar {
    dot(a, &omega.mul_vec(b))
}

fn close_under_action(
    rep: &MatrixRep,
    rb: &mut RowBasis,
    seeds: Vec<Vec<Scalar>>,
) -> Result<(), CurvatureError> {
    let mut queue = Vec::new();
    for s in seeds {
        if matches!(rb.insert(&s)?, InsertOutcome::Extended) {
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for a in rep.basis() {
            let w = a.mul_vec(&v);
            if matches!(rb.insert(&w)?, InsertOutcome::Extended) {
                queue.push(w);
            }
        }
    }
    Ok(())
}

fn gram(omega: &Mat, vectors: &[Vec<Scalar>]) -> Mat {
    let d = vectors.len();
    let mut g = Mat::zero(d, d);
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let w = omega_pair(omega, u, v);
            if !w.is_zero() {
                g.set(i, j, w);
            }
        }
    }
    g
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Decompose the module of a symplectic representation into the totally
/// annihilated part and pairwise orthogonal nondegenerate invariant
/// blocks.
///
/// Minimal invariant symplectic subspaces are produced by closing seed
/// vectors under the action and, while the restricted form is still
/// degenerate, adjoining vectors pairing nontrivially with its radical.
/// Subspaces linked by an element of the commutant are then merged, so
/// equivalent constituents end up in one isotypic block.  The annihilated
/// part (when nonzero) comes first; the remaining blocks are ordered by
/// their first leading coordinate.
pub fn wu_decompose(rep: &MatrixRep) -> Result<Vec<WuBlock>, CurvatureError> {
    let n = rep.dim_v();
    let omega = match rep.form() {
        Some(f) if f.kind == FormKind::Skew => f.matrix.clone(),
        _ => {
            return Err(CurvatureError::Precondition(
                "the representation must carry a skew invariant form".into(),
            ))
        }
    };
    if rank(&omega) != n {
        return Err(CurvatureError::Precondition(
            "the invariant form is degenerate".into(),
        ));
    }

    // Joint kernel of the action.
    let g = rep.dim_g();
    let mut stacked = Mat::zero(g * n, n);
    for (a, m) in rep.basis().iter().enumerate() {
        stacked.insert_block(a * n, 0, m);
    }
    let v0 = kernel(&stacked).basis;

    // The images of the basis matrices span an invariant complement; if
    // they fail to complement the joint kernel, the action is not
    // totally reducible and the decomposition does not exist.
    let mut total = RowBasis::new(n);
    for v in &v0 {
        total.insert(v)?;
    }
    let image_dim = {
        let mut image = RowBasis::new(n);
        for m in rep.basis() {
            for j in 0..n {
                let col: Vec<Scalar> = (0..n).map(|r| m.get(r, j)).collect();
                image.insert(&col)?;
                total.insert(&col)?;
            }
        }
        image.dim()
    };
    if v0.len() + image_dim != n || total.dim() != n {
        return Err(CurvatureError::Precondition(
            "the action is not totally reducible".into(),
        ));
    }

    // Extract minimal invariant symplectic subspaces from the orthogonal
    // complement of what has been claimed so far.
    let mut done = RowBasis::new(n);
    for v in &v0 {
        done.insert(v)?;
    }
    let mut raw_blocks: Vec<Vec<Vec<Scalar>>> = Vec::new();
    loop {
        // Vectors orthogonal to everything extracted so far.
        let claimed = done.dense_rows();
        let mut pairing = Mat::zero(claimed.len(), n);
        for (r, d) in claimed.iter().enumerate() {
            let row = omega.transpose().mul_vec(d);
            for (c, val) in row.into_iter().enumerate() {
                if !val.is_zero() {
                    pairing.set(r, c, val);
                }
            }
        }
        let rem = kernel(&pairing).basis;
        if rem.is_empty() {
            break;
        }
        let mut block = RowBasis::new(n);
        close_under_action(rep, &mut block, vec![rem[0].clone()])?;
        loop {
            let vectors = block.dense_rows();
            let rad = kernel(&gram(&omega, &vectors)).basis;
            let Some(rad0) = rad.first() else { break };
            // Radical vector back in module coordinates.
            let mut r_vec = vec![Scalar::zero(); n];
            for (t, c) in rad0.iter().enumerate() {
                for (u, x) in vectors[t].iter().enumerate() {
                    r_vec[u].add_mul_assign(c, x);
                }
            }
            let repair = rem
                .iter()
                .find(|c| !omega_pair(&omega, &r_vec, c).is_zero())
                .cloned()
                .ok_or_else(|| {
                    CurvatureError::Internal(
                        "restricted form cannot be completed to a nondegenerate block".into(),
                    )
                })?;
            close_under_action(rep, &mut block, vec![repair])?;
        }
        let vectors = block.dense_rows();
        for v in &vectors {
            done.insert(v)?;
        }
        raw_blocks.push(vectors);
    }

    // Merge blocks connected through the commutant into isotypic groups.
    let k = raw_blocks.len();
    let mut uf = UnionFind::new(k);
    if k > 1 {
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        let mut offsets = vec![0usize; k + 1];
        for v in &v0 {
            columns.push(v.clone());
        }
        for (bi, b) in raw_blocks.iter().enumerate() {
            offsets[bi] = columns.len();
            for v in b {
                columns.push(v.clone());
            }
        }
        offsets[k] = columns.len();
        let mut basis_mat = Mat::zero(n, n);
        for (c, col) in columns.iter().enumerate() {
            for (r, val) in col.iter().enumerate() {
                if !val.is_zero() {
                    basis_mat.set(r, c, val.clone());
                }
            }
        }
        let inv = invert(&basis_mat).ok_or_else(|| {
            CurvatureError::Internal("decomposition basis failed to span the module".into())
        })?;
        for c_elem in commutant(rep)? {
            let t = inv.mul(&c_elem).mul(&basis_mat);
            for bi in 0..k {
                for bj in 0..k {
                    if bi == bj {
                        continue;
                    }
                    let linked = (offsets[bj]..offsets[bj + 1]).any(|r| {
                        (offsets[bi]..offsets[bi + 1]).any(|c| t.entry(r, c).is_some())
                    });
                    if linked {
                        uf.union(bi, bj);
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for bi in 0..k {
        let root = uf.find(bi);
        if root == bi {
            groups.push(vec![bi]);
        } else {
            for grp in groups.iter_mut() {
                if grp[0] == root {
                    grp.push(bi);
                }
            }
        }
    }

    let leading = |vectors: &[Vec<Scalar>]| -> usize {
        vectors
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX))
            .min()
            .unwrap_or(usize::MAX)
    };
    let mut grouped: Vec<Vec<Vec<Scalar>>> = groups
        .into_iter()
        .map(|members| {
            let mut rb = RowBasis::new(n);
            for bi in members {
                for v in &raw_blocks[bi] {
                    rb.insert(v).expect("independent block vectors");
                }
            }
            rb.dense_rows()
        })
        .collect();
    grouped.sort_by_key(|b| leading(b));

    let mut out = Vec::new();
    let mut emit = |vectors: Vec<Vec<Scalar>>, trivial: bool, idx: usize| -> Result<(), CurvatureError> {
        let name = format!("wu{}({})", idx, rep.name());
        let mut restricted = restrict_to_invariant(rep, &vectors, name)?;
        let gb = gram(&omega, &vectors);
        if rank(&gb) != vectors.len() {
            return Err(CurvatureError::Internal(
                "restricted form on a block is degenerate".into(),
            ));
        }
        restricted.set_form(Some(InvariantForm {
            kind: FormKind::Skew,
            matrix: gb,
        }));
        out.push(WuBlock {
            vectors,
            rep: restricted,
            trivial,
        });
        Ok(())
    };
    let mut idx = 0usize;
    if !v0.is_empty() {
        emit(v0, true, idx)?;
        idx += 1;
    }
    for b in grouped {
        emit(b, false, idx)?;
        idx += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{diag_dual_symplectic, direct_sum, is_irreducible, sl, sp, trivial, Field};

    fn standard_omega(n: usize) -> Mat {
        let m = n / 2;
        let mut o = Mat::zero(n, n);
        for i in 0..m {
            o.set(i, m + i, Scalar::one());
            o.set(m + i, i, -Scalar::one());
        }
        o
    }

    #[test]
    fn two_independent_symplectic_factors_stay_separate() {
        let a = sp(2, Field::Rational).unwrap();
        let sum = direct_sum(&a, &a).unwrap();
        let blocks = wu_decompose(&sum).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!(b.dim(), 2);
            assert!(!b.trivial());
            assert!(is_irreducible(b.rep()).unwrap().irreducible);
        }
        assert_eq!(blocks[0].vectors()[0].iter().position(|x| !x.is_zero()), Some(0));
    }

    #[test]
    fn empty_action_gives_single_trivial_block() {
        let rep = MatrixRep::new(
            "0 on R4",
            Field::Rational,
            4,
            Vec::new(),
            Some(InvariantForm {
                kind: FormKind::Skew,
                matrix: standard_omega(4),
            }),
        )
        .unwrap();
        let blocks = wu_decompose(&rep).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].trivial());
        assert_eq!(blocks[0].dim(), 4);
    }

    #[test]
    fn equivalent_diagonal_factors_merge_into_one_isotypic_block() {
        let a = sp(2, Field::Rational).unwrap();
        let diag = crate::liealg::direct_sum_same_algebra(&a, &a).unwrap();
        let blocks = wu_decompose(&diag).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim(), 4);
        assert!(!blocks[0].trivial());
    }

    #[test]
    fn irreducible_symplectic_action_is_one_block() {
        let rep = sp(4, Field::Rational).unwrap();
        let blocks = wu_decompose(&rep).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(!blocks[0].trivial());
        assert_eq!(blocks[0].dim(), 4);
    }

    #[test]
    fn lagrangian_doubling_is_weakly_irreducible_single_block() {
        // The doubled action preserves two Lagrangian subspaces but no
        // nondegenerate proper subspace, so the degenerate-closure repair
        // path must assemble the whole module.
        let rep = diag_dual_symplectic(&sl(2, Field::Rational).unwrap());
        let blocks = wu_decompose(&rep).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].dim(), 4);
        assert!(!blocks[0].trivial());
    }

    #[test]
    fn blocks_recover_the_module_orthogonally() {
        let a = sp(2, Field::Rational).unwrap();
        let sum3 = direct_sum(&direct_sum(&a, &a).unwrap(), &a).unwrap();
        let blocks = wu_decompose(&sum3).unwrap();
        assert_eq!(blocks.iter().map(WuBlock::dim).sum::<usize>(), 6);
        let omega = &sum3.form().unwrap().matrix;
        for (i, x) in blocks.iter().enumerate() {
            for (j, y) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for u in x.vectors() {
                    for v in y.vectors() {
                        assert!(omega_pair(omega, u, v).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let mut rep = trivial(2, Field::Rational).unwrap();
        rep.set_form(Some(InvariantForm {
            kind: FormKind::Skew,
            matrix: Mat::zero(2, 2),
        }));
        let err = wu_decompose(&rep).unwrap_err();
        assert!(matches!(err, CurvatureError::Precondition(_)));
    }

    #[test]
    fn missing_form_is_rejected() {
        let rep = sl(2, Field::Rational).unwrap();
        let err = wu_decompose(&rep).unwrap_err();
        assert!(matches!(err, CurvatureError::Precondition(_)));
    }
}
