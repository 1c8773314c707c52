//! Harmonic forms: Laplace operators, the decomposition `R_d = ⊕ q^j·H^{d−2j}`,
//! the canonical basis `p_{d,k}` of ternary harmonics and the `so(3)` action
//! that moves between its elements.
//!
//! In the `Uvz` frame the Laplacian is `∂²/∂z² + ∂²/∂u∂v`. With
//! `u = (y1 + i·y2)/2`, `v = (y1 − i·y2)/2`, `z = y3` this is exactly the
//! ordinary Laplacian in `y`, so [`laplacian`] commutes with
//! [`LinearSubstitution::uvz_to_y`] without any scale factor.
//!
//! [`LinearSubstitution::uvz_to_y`]: crate::LinearSubstitution::uvz_to_y

use crate::algebra::{
    ExactMatrix, FrameKind, GaussianRational, MonomialBasis, MultiIndex, Poly, SparseEchelon, VariableFrame,
};
use crate::{monomial_count, AlgebraError};

pub fn laplacian(f: &Poly) -> Poly {
    match f.frame().kind() {
        FrameKind::Uvz => {
            let zz = f.derivative(VariableFrame::Z).derivative(VariableFrame::Z);
            let uv = f.derivative(VariableFrame::U).derivative(VariableFrame::V);
            &zz + &uv
        }
        FrameKind::X | FrameKind::Y => (0..f.frame().n()).fold(Poly::zero(f.frame()), |acc, i| {
            &acc + &f.derivative(i).derivative(i)
        }),
    }
}

pub fn is_harmonic(f: &Poly) -> bool {
    laplacian(f).is_zero()
}

/// `dim H_n^d = C(d+n−1, n−1) − C(d+n−3, n−1)`.
pub fn harmonic_dim(n: usize, d: usize) -> usize {
    let lower = if d < 2 { 0 } else { monomial_count(n, d - 2) };
    monomial_count(n, d) - lower
}

/// Matrix of `Δ: R_d → R_{d−2}` in descending graded-lex monomial bases.
fn laplacian_matrix(frame: VariableFrame, d: usize) -> (MonomialBasis, ExactMatrix) {
    let src = MonomialBasis::new(frame, d);
    let dst = MonomialBasis::new(frame, d.saturating_sub(2));
    let rows = if d < 2 { 0 } else { dst.len() };
    let mut m = ExactMatrix::zeros(rows, src.len());
    if d >= 2 {
        for (c, mono) in src.monomials().iter().enumerate() {
            let img = laplacian(&Poly::monomial(frame, mono.clone(), GaussianRational::one()));
            for (r, v) in dst.coordinates(&img) {
                m.set(r, c, v);
            }
        }
    }
    (src, m)
}

/// A basis of the degree-`d` harmonic forms of any frame, as the kernel of `Δ`.
pub fn harmonic_basis(frame: VariableFrame, d: usize) -> Vec<Poly> {
    let (src, m) = laplacian_matrix(frame, d);
    m.kernel_basis().iter().map(|v| src.poly(v.iter().enumerate())).collect()
}

/// `f = Σ_j q^j·h_j` with every `h_j` harmonic of degree `d − 2j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    /// `(j, h_j)` for `j = 0..=⌊d/2⌋`; zero components are kept.
    pub components: Vec<(usize, Poly)>,
}

impl HarmonicDecomposition {
    pub fn reconstruct(&self, frame: VariableFrame) -> Poly {
        let q = Poly::sum_of_squares(frame);
        self.components
            .iter()
            .fold(Poly::zero(frame), |acc, (j, h)| &acc + &(&q.pow(*j as u32) * h))
    }
}

/// Exact solver for harmonic decompositions of degree-`d` forms in one frame.
///
/// Unknowns are the coefficients of every `h_j` on the monomials of degree
/// `d − 2j`. The equations `Σ q^j h_j = f` and `Δh_j = 0` give a square system
/// whose matrix is invertible because the decomposition is unique; the
/// inverse is computed once and reused.
#[derive(Clone, Debug)]
pub struct HarmonicDecomposer {
    frame: VariableFrame,
    degree: usize,
    target: MonomialBasis,
    blocks: Vec<MonomialBasis>,
    inverse: ExactMatrix,
}

impl HarmonicDecomposer {
    pub fn new(frame: VariableFrame, degree: usize) -> Result<Self, AlgebraError> {
        if frame.kind() == FrameKind::Uvz {
            return Err(AlgebraError::UnsupportedFrame(frame));
        }
        let q = Poly::sum_of_squares(frame);
        let target = MonomialBasis::new(frame, degree);
        let blocks: Vec<MonomialBasis> =
            (0..=degree / 2).map(|j| MonomialBasis::new(frame, degree - 2 * j)).collect();
        let harmonic_rows: Vec<MonomialBasis> = (0..=degree / 2)
            .map(|j| MonomialBasis::new(frame, (degree - 2 * j).saturating_sub(2)))
            .collect();
        let unknowns: usize = blocks.iter().map(MonomialBasis::len).sum();
        let mut m = ExactMatrix::zeros(unknowns, unknowns);
        let mut col = 0;
        for (j, block) in blocks.iter().enumerate() {
            let qj = q.pow(j as u32);
            // Harmonicity equations of block j sit after the reconstruction rows.
            let row_offset: usize = target.len()
                + harmonic_rows[..j]
                    .iter()
                    .zip(&blocks[..j])
                    .map(|(h, b)| if b.degree() >= 2 { h.len() } else { 0 })
                    .sum::<usize>();
            for mono in block.monomials() {
                let xm = Poly::monomial(frame, mono.clone(), GaussianRational::one());
                for (r, v) in target.coordinates(&(&qj * &xm)) {
                    m.set(r, col, v);
                }
                if block.degree() >= 2 {
                    for (r, v) in harmonic_rows[j].coordinates(&laplacian(&xm)) {
                        m.set(row_offset + r, col, v);
                    }
                }
                col += 1;
            }
        }
        let inverse = m.inverse()?;
        Ok(Self { frame, degree, target, blocks, inverse })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn decompose(&self, f: &Poly) -> Result<HarmonicDecomposition, AlgebraError> {
        if f.frame() != self.frame {
            return Err(AlgebraError::FrameMismatch { left: f.frame(), right: self.frame });
        }
        if !f.is_zero() && f.homogeneous_degree() != Some(self.degree) {
            return Err(AlgebraError::NotHomogeneous);
        }
        let mut rhs = vec![GaussianRational::zero(); self.inverse.rows()];
        for (i, c) in self.target.coordinates(f) {
            rhs[i] = c;
        }
        let sol = self.inverse.mul_vec(&rhs)?;
        let mut offset = 0;
        let components = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, b)| {
                let h = b.poly(sol[offset..offset + b.len()].iter().enumerate());
                offset += b.len();
                (j, h)
            })
            .collect();
        Ok(HarmonicDecomposition { components })
    }
}

pub fn harmonic_decompose(f: &Poly) -> Result<HarmonicDecomposition, AlgebraError> {
    let d = if f.is_zero() { 0 } else { f.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)? };
    HarmonicDecomposer::new(f.frame(), d)?.decompose(f)
}

fn divided_power(frame: VariableFrame, exps: [(usize, u32); 3]) -> (MultiIndex, GaussianRational) {
    let mut e = vec![0u32; frame.n()];
    let mut weight = num_bigint::BigInt::from(1);
    for (var, k) in exps {
        e[var] = k;
        weight *= crate::algebra::factorial_of(k);
    }
    (MultiIndex::new(e), GaussianRational::from_rational(crate::Rational::new(1.into(), weight)))
}

/// The canonical harmonic `p_{d,k}` for `−d ≤ k ≤ d`, in the `Uvz` frame:
/// `p_{d,k} = Σ_j (−1)^j u^[k+j] z^[d−k−2j] v^[j]` for `k ≥ 0`, with `u` and
/// `v` swapped for negative `k`. Here `w^[m] = w^m/m!`.
pub fn harmonic_basis_element(d: usize, k: i64) -> Poly {
    assert!(k.unsigned_abs() as usize <= d, "index {k} out of range for degree {d}");
    let frame = VariableFrame::uvz();
    let ka = k.unsigned_abs() as usize;
    let (lead, tail) = if k >= 0 { (VariableFrame::U, VariableFrame::V) } else { (VariableFrame::V, VariableFrame::U) };
    Poly::from_terms(
        frame,
        (0..=(d - ka) / 2).map(|j| {
            let (m, c) = divided_power(
                frame,
                [(lead, (ka + j) as u32), (VariableFrame::Z, (d - ka - 2 * j) as u32), (tail, j as u32)],
            );
            if j % 2 == 1 { (m, -c) } else { (m, c) }
        }),
    )
}

/// The `2d+1` harmonics `p_{d,d}, p_{d,d−1}, …, p_{d,−d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicBasis3 {
    pub d: usize,
    pub elements: Vec<Poly>,
}

impl HarmonicBasis3 {
    pub fn element(&self, k: i64) -> &Poly {
        &self.elements[(self.d as i64 - k) as usize]
    }

    /// `p_{d,d}, …, p_{d,0}`.
    pub fn nonnegative(&self) -> &[Poly] {
        &self.elements[..=self.d]
    }

    /// Dimension of the span of the elements.
    pub fn span_dim(&self) -> usize {
        let basis = MonomialBasis::new(VariableFrame::uvz(), self.d);
        let mut e = SparseEchelon::new();
        for p in &self.elements {
            e.insert(basis.coordinates(p));
        }
        e.rank()
    }
}

pub fn harmonic_basis_3(d: usize) -> HarmonicBasis3 {
    let elements = (-(d as i64)..=d as i64).rev().map(|k| harmonic_basis_element(d, k)).collect();
    HarmonicBasis3 { d, elements }
}

/// The basis `H, E, F` of `so(3) ≅ sl(2)` acting on one frame's variables.
///
/// Matrices are indexed by the frame's storage order; column `i` is the image
/// of variable `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct So3Basis {
    pub frame: VariableFrame,
    pub h: ExactMatrix,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
}

pub fn bracket(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.mul(b).and_then(|ab| ab.sub(&b.mul(a)?)).expect("square matrices of one size")
}

impl So3Basis {
    /// The skew-symmetric basis acting on `y1, y2, y3`.
    pub fn y_frame() -> Self {
        let i = GaussianRational::i;
        let n = |v: i64| GaussianRational::from_integer(v);
        let mi = || -GaussianRational::i();
        let m = |rows: Vec<Vec<GaussianRational>>| ExactMatrix::from_rows(rows).expect("3x3");
        let two_i = &n(2) * &i();
        Self {
            frame: VariableFrame::y(3),
            h: m(vec![
                vec![n(0), -&two_i, n(0)],
                vec![two_i.clone(), n(0), n(0)],
                vec![n(0), n(0), n(0)],
            ]),
            e: m(vec![vec![n(0), n(0), n(-1)], vec![n(0), n(0), mi()], vec![n(1), i(), n(0)]]),
            f: m(vec![vec![n(0), n(0), n(1)], vec![n(0), n(0), mi()], vec![n(-1), i(), n(0)]]),
        }
    }

    /// The same basis after `u = (y1+i·y2)/2, v = (y1−i·y2)/2, z = y3`.
    ///
    /// Written in `(u, v, z)` order these are
    /// `H = diag(2, −2, 0)`, `E = [[0,0,−2],[0,0,0],[0,1,0]]`,
    /// `F = [[0,0,0],[0,0,2],[−1,0,0]]`; they are stored permuted into the
    /// frame's `(z, u, v)` order.
    pub fn uvz_frame() -> Self {
        let printed = |rows: &[&[i64]]| {
            // storage index -> printed index: z->2, u->0, v->1
            let p = [2usize, 0, 1];
            let src = ExactMatrix::from_i64(rows);
            let mut out = ExactMatrix::zeros(3, 3);
            for r in 0..3 {
                for c in 0..3 {
                    out.set(r, c, src.get(p[r], p[c]).clone());
                }
            }
            out
        };
        Self {
            frame: VariableFrame::uvz(),
            h: printed(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, 0]]),
            e: printed(&[&[0, 0, -2], &[0, 0, 0], &[0, 1, 0]]),
            f: printed(&[&[0, 0, 0], &[0, 0, 2], &[-1, 0, 0]]),
        }
    }

    /// `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`, exactly.
    pub fn check_brackets(&self) -> bool {
        let two = GaussianRational::from_integer(2);
        bracket(&self.h, &self.e) == self.e.scale(&two)
            && bracket(&self.h, &self.f) == self.f.scale(&-&two)
            && bracket(&self.e, &self.f) == self.h
    }
}

/// Derivation action `M.f = Σ_i (M·x_i) ∂f/∂x_i`, where `M·x_i = Σ_j M[j][i]·x_j`.
///
/// This is a Lie algebra homomorphism: `[M1,M2].f = M1.(M2.f) − M2.(M1.f)`.
pub fn so3_action(m: &ExactMatrix, f: &Poly) -> Result<Poly, AlgebraError> {
    let frame = f.frame();
    let n = frame.n();
    if m.rows() != n || m.cols() != n {
        return Err(AlgebraError::Shape(format!("{}x{} matrix acting on {frame}", m.rows(), m.cols())));
    }
    let mut out = Poly::zero(frame);
    for i in 0..n {
        let image = Poly::from_terms(frame, (0..n).map(|j| (MultiIndex::unit(n, j), m.get(j, i).clone())));
        if image.is_zero() {
            continue;
        }
        out = &out + &(&image * &f.derivative(i));
    }
    Ok(out)
}

impl Poly {
    /// `Some(c)` with `self = c·other`, when `other ≠ 0` and the two are proportional.
    pub fn ratio_to(&self, other: &Poly) -> Option<GaussianRational> {
        let (m, c) = other.terms().iter().next()?;
        let ratio = self.coeff(m).checked_div(c).ok()?;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}
