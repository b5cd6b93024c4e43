//! Functorial constructions: duals, sums, tensor and wedge powers,
//! adjoint, traceless hom-modules, and invariant-subspace restriction.
//!
//! Names of derived representations are functional descriptors
//! (`tensor(a,b)`, `ext(3,a)`, ...) so a representation can always be
//! re-created from its printed name.

use std::collections::HashMap;

use crate::exactlin::{kernel, invert, InsertOutcome, Mat, RowBasis, Scalar};

use super::rep::{Field, FormKind, InvariantForm, MatrixRep};
use super::LiealgError;

fn join_field(a: Field, b: Field) -> Result<Field, LiealgError> {
    if a == b {
        Ok(a)
    } else {
        Err(LiealgError::FieldMismatch(format!(
            "cannot combine representations over {a} and {b}"
        )))
    }
}

/// Dual representation: `A ↦ -Aᵀ` on the dual module.
pub fn dual(rep: &MatrixRep) -> MatrixRep {
    let basis = rep.basis().iter().map(|a| a.transpose().neg()).collect();
    MatrixRep::new_unchecked(
        format!("dual({})", rep.name()),
        rep.field(),
        rep.dim_v(),
        basis,
        None,
    )
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.insert_block(0, 0, a);
    out.insert_block(a.rows(), a.cols(), b);
    out
}

fn sum_form(a: &MatrixRep, b: &MatrixRep) -> Option<InvariantForm> {
    match (a.form(), b.form()) {
        (Some(fa), Some(fb)) if fa.kind == fb.kind => Some(InvariantForm {
            kind: fa.kind,
            matrix: block_diag(&fa.matrix, &fb.matrix),
        }),
        _ => None,
    }
}

/// External direct sum: the algebra `a ⊕ b` acting on `V_a ⊕ V_b`.
pub fn direct_sum(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let field = join_field(a.field(), b.field())?;
    let (da, db) = (a.dim_v(), b.dim_v());
    let mut basis = Vec::with_capacity(a.dim_g() + b.dim_g());
    for m in a.basis() {
        basis.push(block_diag(m, &Mat::zero(db, db)));
    }
    for m in b.basis() {
        basis.push(block_diag(&Mat::zero(da, da), m));
    }
    Ok(MatrixRep::new_unchecked(
        format!("sum({},{})", a.name(), b.name()),
        field,
        da + db,
        basis,
        sum_form(a, b),
    ))
}

/// Diagonal direct sum of two representations of the *same* algebra
/// (matching basis order): `A_i ↦ A_i ⊕ B_i`.
pub fn direct_sum_same_algebra(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let field = join_field(a.field(), b.field())?;
    if a.dim_g() != b.dim_g() {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "diagonal sum needs equal algebra dimensions, got {} and {}",
            a.dim_g(),
            b.dim_g()
        )));
    }
    let basis = a
        .basis()
        .iter()
        .zip(b.basis())
        .map(|(m, n)| block_diag(m, n))
        .collect();
    Ok(MatrixRep::new_unchecked(
        format!("dsum({},{})", a.name(), b.name()),
        field,
        a.dim_v() + b.dim_v(),
        basis,
        sum_form(a, b),
    ))
}

fn tensor_form(a: &MatrixRep, b: &MatrixRep) -> Option<InvariantForm> {
    match (a.form(), b.form()) {
        (Some(fa), Some(fb)) => Some(InvariantForm {
            kind: if fa.kind == fb.kind {
                FormKind::Symmetric
            } else {
                FormKind::Skew
            },
            matrix: fa.matrix.kron(&fb.matrix),
        }),
        _ => None,
    }
}

/// External tensor product: `a ⊕ b` acting on `V_a ⊗ V_b` by
/// `A ⊗ I` and `I ⊗ B`.
pub fn tensor_product(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let field = join_field(a.field(), b.field())?;
    let (ia, ib) = (Mat::identity(a.dim_v()), Mat::identity(b.dim_v()));
    let mut basis = Vec::with_capacity(a.dim_g() + b.dim_g());
    for m in a.basis() {
        basis.push(m.kron(&ib));
    }
    for m in b.basis() {
        basis.push(ia.kron(m));
    }
    Ok(MatrixRep::new_unchecked(
        format!("tensor({},{})", a.name(), b.name()),
        field,
        a.dim_v() * b.dim_v(),
        basis,
        tensor_form(a, b),
    ))
}

/// Tensor product of two modules of the *same* algebra (matching basis
/// order): `A_i ↦ A_i ⊗ I + I ⊗ B_i`.
pub fn tensor_same_algebra(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let field = join_field(a.field(), b.field())?;
    if a.dim_g() != b.dim_g() {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "diagonal tensor needs equal algebra dimensions, got {} and {}",
            a.dim_g(),
            b.dim_g()
        )));
    }
    let (ia, ib) = (Mat::identity(a.dim_v()), Mat::identity(b.dim_v()));
    let basis = a
        .basis()
        .iter()
        .zip(b.basis())
        .map(|(m, n)| m.kron(&ib).add(&ia.kron(n)))
        .collect();
    Ok(MatrixRep::new_unchecked(
        format!("dtensor({},{})", a.name(), b.name()),
        field,
        a.dim_v() * b.dim_v(),
        basis,
        tensor_form(a, b),
    ))
}

fn sym_pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

/// Symmetric square `S²V`, with basis `e_i·e_j` for `i ≤ j` in
/// lexicographic order (modeled inside `V ⊗ V`).
pub fn sym_power2(rep: &MatrixRep) -> MatrixRep {
    let n = rep.dim_v();
    let big = n * (n + 1) / 2;
    let basis = rep
        .basis()
        .iter()
        .map(|a| {
            let mut s = Mat::zero(big, big);
            for i in 0..n {
                for j in i..n {
                    let col = sym_pair_index(n, i, j);
                    // b_{ij} ↦ Σ_k A_{ki} β_{kj} + (i<j only) Σ_k A_{kj} β_{ik},
                    // β_{uv} = b_{uv} for u≠v and 2·b_{uu}.
                    let mut push = |k: usize, other: usize, coeff: &Scalar| {
                        let (u, v) = if k <= other { (k, other) } else { (other, k) };
                        let scale = if k == other {
                            coeff + coeff
                        } else {
                            coeff.clone()
                        };
                        s.add_to(sym_pair_index(n, u, v), col, &scale);
                    };
                    for k in 0..n {
                        if let Some(c) = a.entry(k, i) {
                            push(k, j, c);
                        }
                        if i < j {
                            if let Some(c) = a.entry(k, j) {
                                push(k, i, c);
                            }
                        }
                    }
                }
            }
            s
        })
        .collect();
    MatrixRep::new_unchecked(
        format!("sym2({})", rep.name()),
        rep.field(),
        big,
        basis,
        None,
    )
}

/// All `k`-element subsets of `{0, …, n-1}` in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn subset_table(n: usize, k: usize) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, usize>) {
    let subsets = subsets_lex(n, k);
    let index: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    (subsets, index)
}

/// Exterior power `Λ^k V` with basis `e_S` over lexicographic subsets.
pub fn ext_power(k: usize, rep: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let n = rep.dim_v();
    if k > n {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "ext power {k} of a {n}-dimensional module is zero"
        )));
    }
    let (subsets, index) = subset_table(n, k);
    let big = subsets.len();
    let basis = rep
        .basis()
        .iter()
        .map(|a| {
            let mut m = Mat::zero(big, big);
            for (col, s) in subsets.iter().enumerate() {
                for (p, &sp) in s.iter().enumerate() {
                    for t in 0..n {
                        let Some(coeff) = a.entry(t, sp) else { continue };
                        if t != sp && s.binary_search(&t).is_ok() {
                            continue; // repeated factor, wedge vanishes
                        }
                        let mut target: Vec<usize> =
                            s.iter().copied().filter(|&x| x != sp).collect();
                        let q = target.partition_point(|&x| x < t);
                        target.insert(q, t);
                        let sign_neg = (p + q) % 2 == 1;
                        let row = index[&target];
                        let add = if sign_neg { -coeff } else { coeff.clone() };
                        m.add_to(row, col, &add);
                    }
                }
            }
            m
        })
        .collect();
    Ok(MatrixRep::new_unchecked(
        format!("ext({},{})", k, rep.name()),
        rep.field(),
        big,
        basis,
        None,
    ))
}

/// Restriction of a representation to an invariant subspace, expressed in
/// the given (independent) spanning vectors. Errors if the span is not
/// invariant.
pub fn restrict_to_invariant(
    rep: &MatrixRep,
    span: &[Vec<Scalar>],
    name: impl Into<String>,
) -> Result<MatrixRep, LiealgError> {
    let mut rb = RowBasis::new(rep.dim_v());
    for v in span {
        match rb.insert(v)? {
            InsertOutcome::Extended => {}
            InsertOutcome::InSpan(_) => {
                return Err(LiealgError::InvalidStructure(
                    "restriction basis is linearly dependent".into(),
                ))
            }
        }
    }
    let d = span.len();
    let mut basis = Vec::with_capacity(rep.dim_g());
    for a in rep.basis() {
        let mut m = Mat::zero(d, d);
        for (j, u) in span.iter().enumerate() {
            let w = a.mul_vec(u);
            let coords = rb.contains(&w)?.ok_or_else(|| {
                LiealgError::NotInvariant(format!(
                    "image of spanning vector {j} leaves the subspace"
                ))
            })?;
            for (l, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    m.set(l, j, c.clone());
                }
            }
        }
        basis.push(m);
    }
    Ok(MatrixRep::new_unchecked(
        name,
        rep.field(),
        d,
        basis,
        None,
    ))
}

/// Primitive part of `Λ^k V` for a symplectic module: the kernel of the
/// contraction with the invariant two-form.
pub fn ext_power_primitive(k: usize, rep: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let omega = match rep.form() {
        Some(f) if f.kind == FormKind::Skew => &f.matrix,
        _ => {
            return Err(LiealgError::UnsupportedConstruction(
                "primitive ext power needs an invariant skew form".into(),
            ))
        }
    };
    if k < 2 {
        return Err(LiealgError::UnsupportedConstruction(
            "primitive ext power needs k >= 2".into(),
        ));
    }
    let n = rep.dim_v();
    let (subsets, _) = subset_table(n, k);
    let (_, small_index) = subset_table(n, k - 2);
    let mut contraction = Mat::zero(small_index.len(), subsets.len());
    for (col, s) in subsets.iter().enumerate() {
        for p in 0..k {
            for q in p + 1..k {
                let Some(w) = omega.entry(s[p], s[q]) else { continue };
                let target: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| *pos != p && *pos != q)
                    .map(|(_, &x)| x)
                    .collect();
                let row = small_index[&target];
                let signed = if (p + q + 1) % 2 == 1 { -w } else { w.clone() };
                contraction.add_to(row, col, &signed);
            }
        }
    }
    let prim = kernel(&contraction).basis;
    let full = ext_power(k, rep)?;
    restrict_to_invariant(&full, &prim, format!("ext0({},{})", k, rep.name()))
}

/// The traceless hom-module `(V ⊗ Λ^k V*)_0`: kernel of the natural
/// contraction `v ⊗ α ↦ ι_v α` inside the tensor module.
pub fn traceless_part(rep: &MatrixRep, k: usize) -> Result<MatrixRep, LiealgError> {
    let n = rep.dim_v();
    if k == 0 || k > n {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "traceless part needs 1 <= k <= {n}"
        )));
    }
    let dual_rep = dual(rep);
    let wedge = ext_power(k, &dual_rep)?;
    let full = tensor_same_algebra(rep, &wedge)?;
    let (subsets, _) = subset_table(n, k);
    let (_, small_index) = subset_table(n, k - 1);
    let big = subsets.len();
    let mut contraction = Mat::zero(small_index.len(), n * big);
    for i in 0..n {
        for (si, s) in subsets.iter().enumerate() {
            let col = i * big + si;
            let Ok(p) = s.binary_search(&i) else { continue };
            let target: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
            let row = small_index[&target];
            let one = Scalar::one();
            let signed = if p % 2 == 1 { -&one } else { one };
            contraction.add_to(row, col, &signed);
        }
    }
    let cut = kernel(&contraction).basis;
    restrict_to_invariant(&full, &cut, format!("tl({},{})", k, rep.name()))
}

/// Adjoint representation, built from the structure constants.
pub fn adjoint(rep: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    let sc = rep.structure_constants()?;
    let d = rep.dim_g();
    let basis = (0..d)
        .map(|i| {
            let mut m = Mat::zero(d, d);
            for j in 0..d {
                for (k, c) in &sc[i][j] {
                    m.add_to(*k, j, c);
                }
            }
            m
        })
        .collect();
    Ok(MatrixRep::new_unchecked(
        format!("ad({})", rep.name()),
        rep.field(),
        d,
        basis,
        None,
    ))
}

/// `V ⊕ V*` with the diagonal action `A ⊕ (-Aᵀ)` and the canonical
/// symplectic pairing `[[0, I], [-I, 0]]` between the two summands.
pub fn diag_dual_symplectic(rep: &MatrixRep) -> MatrixRep {
    let n = rep.dim_v();
    let basis = rep
        .basis()
        .iter()
        .map(|a| block_diag(a, &a.transpose().neg()))
        .collect();
    let mut g = Mat::zero(2 * n, 2 * n);
    for k in 0..n {
        g.set(k, n + k, Scalar::one());
        g.set(n + k, k, -Scalar::one());
    }
    MatrixRep::new_unchecked(
        format!("dds({})", rep.name()),
        rep.field(),
        2 * n,
        basis,
        Some(InvariantForm {
            kind: FormKind::Skew,
            matrix: g,
        }),
    )
}

/// Appends a central element to the basis (validated: the result must
/// still be closed, which for a genuine center element is automatic).
pub fn add_center(rep: &MatrixRep, z: Mat, tag: &str) -> Result<MatrixRep, LiealgError> {
    let mut basis = rep.basis().to_vec();
    basis.push(z);
    MatrixRep::new(
        format!("{}({})", tag, rep.name()),
        rep.field(),
        rep.dim_v(),
        basis,
        rep.form().cloned(),
    )
}

/// Conjugated representation `P⁻¹ A P`.
pub fn conjugate(rep: &MatrixRep, p: &Mat) -> Result<MatrixRep, LiealgError> {
    let pinv = invert(p).ok_or_else(|| {
        LiealgError::UnsupportedConstruction("conjugation matrix is singular".into())
    })?;
    let basis = rep.basis().iter().map(|a| pinv.mul(a).mul(p)).collect();
    Ok(MatrixRep::new_unchecked(
        format!("conj({})", rep.name()),
        rep.field(),
        rep.dim_v(),
        basis,
        None,
    ))
}
