//! Constructors for the classical families and the two exceptional spin
//! modules used by the catalog.
//!
//! Everything that is cut out by linear conditions (orthogonal, symplectic,
//! unitary, quaternionic families) is produced as the *canonical kernel* of
//! its defining equations, so basis order and normalization are
//! deterministic and identical across runs. Explicit bases are only written
//! down where they are the universal convention (`gl`, `sl`) or where no
//! linear description exists (spin modules, built from Pauli tensor
//! products).

use crate::exactlin::{kernel, Mat, Scalar};

use super::rep::{Field, FormKind, InvariantForm, MatrixRep};
use super::LiealgError;

fn check_dim(rep: MatrixRep, expected: usize) -> Result<MatrixRep, LiealgError> {
    if rep.dim_g() != expected {
        return Err(LiealgError::InvalidStructure(format!(
            "{}: expected algebra dimension {}, constructed {}",
            rep.name(),
            expected,
            rep.dim_g()
        )));
    }
    Ok(rep)
}

fn field_suffix(field: Field) -> &'static str {
    match field {
        Field::Gaussian => ",C",
        _ => "",
    }
}

/// Coefficient rows for `Aᵀ G + G A = 0`, unknowns = entries of `A`
/// (row-major), one equation row per matrix position.
fn form_constraints(g: &Mat) -> Mat {
    let n = g.rows();
    let mut m = Mat::zero(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                if let Some(v) = g.entry(k, c) {
                    m.add_to(row, k * n + r, v);
                }
                if let Some(v) = g.entry(r, k) {
                    m.add_to(row, k * n + c, v);
                }
            }
        }
    }
    m
}

/// Coefficient rows for `A J - J A = 0`.
fn commute_constraints(j: &Mat) -> Mat {
    let n = j.rows();
    let mut m = Mat::zero(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                if let Some(v) = j.entry(k, c) {
                    m.add_to(row, r * n + k, v);
                }
                if let Some(v) = j.entry(r, k) {
                    m.add_to(row, k * n + c, &-v);
                }
            }
        }
    }
    m
}

fn vstack(blocks: &[Mat]) -> Mat {
    let cols = blocks[0].cols();
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let mut out = Mat::zero(rows, cols);
    let mut r0 = 0;
    for b in blocks {
        assert_eq!(b.cols(), cols);
        out.insert_block(r0, 0, b);
        r0 += b.rows();
    }
    out
}

/// Basis matrices from the canonical kernel of a constraint system whose
/// unknowns are the entries of an `n`×`n` matrix.
fn algebra_from_constraints(n: usize, constraints: &Mat) -> Vec<Mat> {
    kernel(constraints)
        .basis
        .iter()
        .map(|v| Mat::from_dense_vec(n, n, v))
        .collect()
}

/// Full matrix algebra `gl(n)`, basis `E_{rc}` in row-major order.
pub fn gl(n: usize, field: Field) -> Result<MatrixRep, LiealgError> {
    let mut basis = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut m = Mat::zero(n, n);
            m.set(r, c, Scalar::one());
            basis.push(m);
        }
    }
    let name = format!("gl({n}{})", field_suffix(field));
    check_dim(MatrixRep::new(name, field, n, basis, None)?, n * n)
}

/// Traceless matrices `sl(n)`: off-diagonal `E_{rc}` first (row-major),
/// then the Cartan differences `E_{kk} - E_{k+1,k+1}`.
pub fn sl(n: usize, field: Field) -> Result<MatrixRep, LiealgError> {
    let mut basis = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                let mut m = Mat::zero(n, n);
                m.set(r, c, Scalar::one());
                basis.push(m);
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        let mut m = Mat::zero(n, n);
        m.set(k, k, Scalar::one());
        m.set(k + 1, k + 1, -Scalar::one());
        basis.push(m);
    }
    let name = format!("sl({n}{})", field_suffix(field));
    check_dim(MatrixRep::new(name, field, n, basis, None)?, n * n - 1)
}

/// Orthogonal algebra for the split symmetric form (ones on the
/// antidiagonal). Over the rationals this is the split real form; with
/// Gaussian scalars it is `so(n, C)`.
pub fn so_split(n: usize, field: Field) -> Result<MatrixRep, LiealgError> {
    let g = Mat::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let basis = algebra_from_constraints(n, &form_constraints(&g));
    let name = format!("so({n}{})", field_suffix(field));
    let form = InvariantForm {
        kind: FormKind::Symmetric,
        matrix: g,
    };
    check_dim(
        MatrixRep::new(name, field, n, basis, Some(form))?,
        n * (n - 1) / 2,
    )
}

/// Real orthogonal algebra of signature `(p, q)`, form `diag(I_p, -I_q)`.
pub fn so_pq(p: usize, q: usize) -> Result<MatrixRep, LiealgError> {
    let n = p + q;
    let g = Mat::from_fn(n, n, |r, c| {
        if r != c {
            Scalar::zero()
        } else if r < p {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    });
    let basis = algebra_from_constraints(n, &form_constraints(&g));
    let name = if q == 0 {
        format!("so({p})")
    } else {
        format!("so({p},{q})")
    };
    let form = InvariantForm {
        kind: FormKind::Symmetric,
        matrix: g,
    };
    check_dim(
        MatrixRep::new(name, Field::Rational, n, basis, Some(form))?,
        n * (n - 1) / 2,
    )
}

/// Symplectic algebra `sp(n)` for even `n`, form `[[0, I], [-I, 0]]`.
pub fn sp(n: usize, field: Field) -> Result<MatrixRep, LiealgError> {
    if n == 0 || n % 2 != 0 {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "sp({n}): size must be even and positive"
        )));
    }
    let h = n / 2;
    let mut g = Mat::zero(n, n);
    for k in 0..h {
        g.set(k, h + k, Scalar::one());
        g.set(h + k, k, -Scalar::one());
    }
    let basis = algebra_from_constraints(n, &form_constraints(&g));
    let name = format!("sp({n}{})", field_suffix(field));
    let form = InvariantForm {
        kind: FormKind::Skew,
        matrix: g,
    };
    check_dim(MatrixRep::new(name, field, n, basis, Some(form))?, h * n + h)
}

/// The standard complex structure `[[0, -I], [I, 0]]` on `R^{2n}`
/// (multiplication by `i` under `z = x + iy ↦ (x, y)`).
pub(crate) fn standard_j(n: usize) -> Mat {
    let mut j = Mat::zero(2 * n, 2 * n);
    for k in 0..n {
        j.set(k, n + k, -Scalar::one());
        j.set(n + k, k, Scalar::one());
    }
    j
}

fn unitary_constraints(p: usize, q: usize) -> (Mat, Mat, usize) {
    let n = p + q;
    let h_sign = |k: usize| {
        if k < p {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    };
    // Re h(z, w) = xᵀHu + yᵀHv with H = diag(I_p, -I_q).
    let g = Mat::from_fn(2 * n, 2 * n, |r, c| {
        if r == c {
            h_sign(r % n)
        } else {
            Scalar::zero()
        }
    });
    let constraints = vstack(&[commute_constraints(&standard_j(n)), form_constraints(&g)]);
    (constraints, g, n)
}

/// Unitary algebra `u(p, q)` acting on `R^{2(p+q)}`, with the real part of
/// the hermitian form (signature `(2p, 2q)`) attached as invariant form.
pub fn u_pq(p: usize, q: usize) -> Result<MatrixRep, LiealgError> {
    let (constraints, g, n) = unitary_constraints(p, q);
    let basis = algebra_from_constraints(2 * n, &constraints);
    let name = if q == 0 {
        format!("u({p})")
    } else {
        format!("u({p},{q})")
    };
    let form = InvariantForm {
        kind: FormKind::Symmetric,
        matrix: g,
    };
    check_dim(
        MatrixRep::new(name, Field::GaussianAsReal, 2 * n, basis, Some(form))?,
        n * n,
    )
}

/// Special unitary algebra `su(p, q)`: `u(p, q)` cut by both trace
/// conditions (real and imaginary part of the complex trace).
pub fn su_pq(p: usize, q: usize) -> Result<MatrixRep, LiealgError> {
    let (constraints, g, n) = unitary_constraints(p, q);
    let nn = 2 * n;
    let mut tr_re = Mat::zero(1, nn * nn);
    for k in 0..nn {
        tr_re.set(0, k * nn + k, Scalar::one());
    }
    let j = standard_j(n);
    let mut tr_im = Mat::zero(1, nn * nn);
    for r in 0..nn {
        for k in 0..nn {
            if let Some(v) = j.entry(r, k) {
                tr_im.add_to(0, k * nn + r, v);
            }
        }
    }
    let all = vstack(&[constraints, tr_re, tr_im]);
    let basis = algebra_from_constraints(nn, &all);
    let name = if q == 0 {
        format!("su({p})")
    } else {
        format!("su({p},{q})")
    };
    let form = InvariantForm {
        kind: FormKind::Symmetric,
        matrix: g,
    };
    check_dim(
        MatrixRep::new(name, Field::GaussianAsReal, nn, basis, Some(form))?,
        n * n - 1,
    )
}

/// Quaternionic skew algebra `so(n, H)` acting on `R^{4n}`.
///
/// Elements are the complex matrices `A = X + iY ∈ so(2n, C)` (for the
/// identity symmetric form) fixed by the quaternionic structure
/// `A ↦ σ Ā σ⁻¹` with `σ = [[0, -I_n], [I_n, 0]]`; equivalently
/// `σX = Xσ` and `σY = -Yσ` with both blocks skew. The algebra preserves
/// the real symplectic form `diag(σ, σ)` on the realified module.
pub fn so_star(n: usize) -> Result<MatrixRep, LiealgError> {
    if n == 0 {
        return Err(LiealgError::UnsupportedConstruction(
            "so(0,H) is empty".into(),
        ));
    }
    let m = 2 * n;
    let mm = m * m;
    let sigma = standard_j(n);

    // Unknown layout: X entries (row-major) then Y entries.
    let mut rows: Vec<Mat> = Vec::new();
    let skew_rows = |offset: usize| {
        let mut c = Mat::zero(mm, 2 * mm);
        for r in 0..m {
            for s in 0..m {
                let row = r * m + s;
                c.add_to(row, offset + r * m + s, &Scalar::one());
                c.add_to(row, offset + s * m + r, &Scalar::one());
            }
        }
        c
    };
    rows.push(skew_rows(0));
    rows.push(skew_rows(mm));

    let mut sx = Mat::zero(mm, 2 * mm);
    let mut sy = Mat::zero(mm, 2 * mm);
    for r in 0..m {
        for c in 0..m {
            let row = r * m + c;
            for k in 0..m {
                // (σX)_{rc} = Σ σ_{rk} X_{kc},  (Xσ)_{rc} = Σ X_{rk} σ_{kc}
                if let Some(v) = sigma.entry(r, k) {
                    sx.add_to(row, k * m + c, v);
                    sy.add_to(row, mm + k * m + c, v);
                }
                if let Some(v) = sigma.entry(k, c) {
                    sx.add_to(row, r * m + k, &-v);
                    sy.add_to(row, mm + r * m + k, v);
                }
            }
        }
    }
    rows.push(sx);
    rows.push(sy);

    let stacked = vstack(&rows);
    let pairs = kernel(&stacked).basis;
    let basis: Vec<Mat> = pairs
        .iter()
        .map(|v| {
            let x = Mat::from_dense_vec(m, m, &v[..mm]);
            let y = Mat::from_dense_vec(m, m, &v[mm..]);
            // realify(X + iY) = [[X, -Y], [Y, X]]
            let mut out = Mat::zero(2 * m, 2 * m);
            out.insert_block(0, 0, &x);
            out.insert_block(m, m, &x);
            out.insert_block(0, m, &y.neg());
            out.insert_block(m, 0, &y);
            out
        })
        .collect();
    let mut g = Mat::zero(2 * m, 2 * m);
    g.insert_block(0, 0, &sigma);
    g.insert_block(m, m, &sigma);
    let form = InvariantForm {
        kind: FormKind::Skew,
        matrix: g,
    };
    check_dim(
        MatrixRep::new(
            format!("so({n},H)"),
            Field::GaussianAsReal,
            4 * n,
            basis,
            Some(form),
        )?,
        n * (2 * n - 1),
    )
}

fn pauli(which: usize) -> Mat {
    let mut m = Mat::zero(2, 2);
    match which {
        0 => {
            // identity
            m.set(0, 0, Scalar::one());
            m.set(1, 1, Scalar::one());
        }
        1 => {
            m.set(0, 1, Scalar::one());
            m.set(1, 0, Scalar::one());
        }
        2 => {
            m.set(0, 1, -Scalar::i());
            m.set(1, 0, Scalar::i());
        }
        3 => {
            m.set(0, 0, Scalar::one());
            m.set(1, 1, -Scalar::one());
        }
        _ => unreachable!(),
    }
    m
}

fn kron_chain(factors: &[usize]) -> Mat {
    let mut out = pauli(factors[0]);
    for &f in &factors[1..] {
        out = out.kron(&pauli(f));
    }
    out
}

/// The `2k+1` gamma matrices of the rank-`k` Clifford tower on `C^{2^k}`:
/// `γ_{2j-1} = σz^{j-1} ⊗ σx ⊗ I…`, `γ_{2j} = σz^{j-1} ⊗ σy ⊗ I…`, and the
/// diagonal top element `σz^{⊗k}`. They satisfy `γ_a γ_b + γ_b γ_a = 2δ_ab`.
fn gammas(k: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(2 * k + 1);
    for j in 1..=k {
        for sigma in [1usize, 2] {
            let mut factors = vec![3usize; j - 1];
            factors.push(sigma);
            factors.extend(std::iter::repeat(0).take(k - j));
            out.push(kron_chain(&factors));
        }
    }
    out.push(kron_chain(&vec![3usize; k]));
    out
}

fn spin_basis(gams: &[Mat], count: usize) -> Vec<Mat> {
    let half = Scalar::from_frac(1, 2);
    let mut basis = Vec::new();
    for a in 0..count {
        for b in (a + 1)..count {
            basis.push(gams[a].mul(&gams[b]).scale(&half));
        }
    }
    basis
}

/// The 8-dimensional spin representation of `so(7)`, spanned by the
/// products `γ_a γ_b / 2`.
pub fn spin7() -> Result<MatrixRep, LiealgError> {
    let gams = gammas(3);
    let basis = spin_basis(&gams, 7);
    check_dim(
        MatrixRep::new("spin(7)", Field::Gaussian, 8, basis, None)?,
        21,
    )
}

/// A half-spin representation of `so(12)` on `C^32`: the even-product
/// algebra on `C^64` restricted to the `+1` chirality eigenspace (the
/// coordinates of even bit weight).
pub fn spin12_half() -> Result<MatrixRep, LiealgError> {
    let gams = gammas(6);
    let full = spin_basis(&gams, 12);
    let keep: Vec<usize> = (0..64usize).filter(|i| i.count_ones() % 2 == 0).collect();
    let basis: Vec<Mat> = full
        .iter()
        .map(|m| {
            Mat::from_fn(32, 32, |r, c| m.get(keep[r], keep[c]))
        })
        .collect();
    check_dim(
        MatrixRep::new("spin(12)+", Field::Gaussian, 32, basis, None)?,
        66,
    )
}

/// The zero algebra acting on a module of the given dimension.
pub fn trivial(dim_v: usize, field: Field) -> Result<MatrixRep, LiealgError> {
    MatrixRep::new("0", field, dim_v, Vec::new(), None)
}
