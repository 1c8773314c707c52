//! The contraction action of the dual ring on forms and everything built on it.
//!
//! Dual polynomials live in a `Y` frame and act on forms in an `X` frame with
//! the same number of variables. On monomials,
//! `y^α ∘ x^β = β!/(β−α)! · x^(β−α)` when `α ≤ β` and `0` otherwise; the action
//! is the bilinear extension of that rule, i.e. `y_i` acts as `∂/∂x_i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    ExactMatrix, FrameKind, GaussianRational, LinearSubstitution, MultiIndex, Poly, VariableFrame,
};
use crate::{monomial_count, AlgebraError};

/// `φ ∘ f` for `φ` in a `Y` frame and `f` in an `X` frame of the same size.
pub fn contract(phi: &Poly, f: &Poly) -> Result<Poly, AlgebraError> {
    let (pf, ff) = (phi.frame(), f.frame());
    if pf.kind() != FrameKind::Y || ff.kind() != FrameKind::X || pf.n() != ff.n() {
        return Err(AlgebraError::FrameMismatch { left: pf, right: ff });
    }
    let mut out = Poly::zero(ff);
    for (alpha, a) in phi.terms() {
        for (beta, b) in f.terms() {
            let Some(w) = beta.falling_weight(alpha) else {
                continue;
            };
            let rest = beta.checked_sub(alpha).expect("alpha <= beta");
            out.add_term(rest, &(&(a * b) * &GaussianRational::from_bigint(w)));
        }
    }
    Ok(out)
}

/// The `j`-th catalecticant of a form of degree `d`.
///
/// Rows are indexed by degree-`(d−j)` `X` monomials and columns by degree-`j`
/// `Y` monomials, both in descending graded-lex order; entry `(β', α)` is the
/// coefficient of `x^β'` in `y^α ∘ f`.
#[derive(Clone, Debug)]
pub struct Catalecticant {
    pub f: Poly,
    pub j: usize,
    pub row_monomials: Vec<MultiIndex>,
    pub col_monomials: Vec<MultiIndex>,
    pub matrix: ExactMatrix,
    pub rank: usize,
}

fn form_degree(f: &Poly) -> Result<usize, AlgebraError> {
    if f.frame().kind() != FrameKind::X {
        return Err(AlgebraError::UnsupportedFrame(f.frame()));
    }
    f.homogeneous_degree().ok_or(AlgebraError::NotHomogeneous)
}

pub fn catalecticant(f: &Poly, j: usize) -> Result<Catalecticant, AlgebraError> {
    let d = form_degree(f)?;
    if j > d {
        return Err(AlgebraError::DegreeOutOfRange { j, d });
    }
    let n = f.frame().n();
    let rows = MultiIndex::all_of_degree(n, d - j);
    let cols = MultiIndex::all_of_degree(n, j);
    let mut matrix = ExactMatrix::zeros(rows.len(), cols.len());
    for (r, bp) in rows.iter().enumerate() {
        for (c, alpha) in cols.iter().enumerate() {
            let beta = bp.add(alpha);
            let coeff = f.coeff(&beta);
            if coeff.is_zero() {
                continue;
            }
            let w = beta.falling_weight(alpha).expect("alpha <= alpha + beta'");
            matrix.set(r, c, &coeff * &GaussianRational::from_bigint(w));
        }
    }
    let rank = matrix.rank();
    Ok(Catalecticant { f: f.clone(), j, row_monomials: rows, col_monomials: cols, matrix, rank })
}

/// The degree-`m` part of the apolar ideal `f⊥`.
#[derive(Clone, Debug)]
pub struct ApolarComponent {
    pub f: Poly,
    pub m: usize,
    /// Dual forms in the `Y` frame spanning `(f⊥)_m`.
    pub basis: Vec<Poly>,
    pub dim: usize,
}

pub fn apolar_component(f: &Poly, m: usize) -> Result<ApolarComponent, AlgebraError> {
    let n = f.frame().n();
    let y = VariableFrame::y(n);
    let d = if f.is_zero() {
        if f.frame().kind() != FrameKind::X {
            return Err(AlgebraError::UnsupportedFrame(f.frame()));
        }
        None
    } else {
        Some(form_degree(f)?)
    };
    let basis: Vec<Poly> = match d {
        Some(d) if m <= d => {
            let cat = catalecticant(f, m)?;
            cat.matrix
                .kernel_basis()
                .into_iter()
                .map(|v| Poly::from_terms(y, cat.col_monomials.iter().cloned().zip(v)))
                .collect()
        }
        _ => MultiIndex::all_of_degree(n, m)
            .into_iter()
            .map(|mi| Poly::monomial(y, mi, GaussianRational::one()))
            .collect(),
    };
    debug_assert!(d.is_none() || basis.len() <= monomial_count(n, m));
    Ok(ApolarComponent { f: f.clone(), m, dim: basis.len(), basis })
}

/// `max_j rank(Cat_f^j)`, a lower bound for both rank and border rank of `f`.
pub fn sylvester_lower_bound(f: &Poly) -> Result<usize, AlgebraError> {
    let d = form_degree(f)?;
    (0..=d).map(|j| catalecticant(f, j).map(|c| c.rank)).try_fold(0, |acc, r| Ok(acc.max(r?)))
}

/// `A.f` for forms: `x_i ↦ Σ_j A[j][i]·x_j`.
pub fn act_on_forms(a: &ExactMatrix, f: &Poly) -> Result<Poly, AlgebraError> {
    LinearSubstitution::from_matrix(f.frame(), f.frame(), a)?.apply(f)
}

/// `A.φ` for dual forms, through the contragredient `(A⁻¹)ᵀ`.
pub fn act_on_dual(a: &ExactMatrix, phi: &Poly) -> Result<Poly, AlgebraError> {
    let contragredient = a.inverse()?.transpose();
    LinearSubstitution::from_matrix(phi.frame(), phi.frame(), &contragredient)?.apply(phi)
}

/// `(I − S)(I + S)⁻¹`, orthogonal whenever `S` is skew-symmetric and `I + S` invertible.
pub fn cayley_orthogonal(skew: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
    let id = ExactMatrix::identity(skew.rows());
    id.sub(skew)?.mul(&id.add(skew)?.inverse()?)
}

/// Random rational skew-symmetric `n×n` matrix with small entries.
pub fn random_skew(n: usize, rng: &mut impl Rng) -> ExactMatrix {
    let mut s = ExactMatrix::zeros(n, n);
    for r in 0..n {
        for c in (r + 1)..n {
            let v = GaussianRational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            s.set(r, c, v.clone());
            s.set(c, r, -v);
        }
    }
    s
}

/// Random dual form of degree `k` with small integer coefficients.
pub fn random_dual_form(n: usize, k: usize, rng: &mut impl Rng) -> Poly {
    let y = VariableFrame::y(n);
    Poly::from_terms(
        y,
        MultiIndex::all_of_degree(n, k)
            .into_iter()
            .map(|m| (m, GaussianRational::from_integer(rng.gen_range(-3..=3)))),
    )
}

/// Checks `Cat_f(A.φ) = A.Cat_f(φ)` on `samples` random dual forms.
///
/// Fails with [`AlgebraError::NotStabilizer`] when `A.f ≠ f`, since the
/// identity is then not expected to hold.
pub fn is_equivariant_spotcheck(f: &Poly, a: &ExactMatrix, samples: usize, seed: u64) -> Result<bool, AlgebraError> {
    let d = form_degree(f)?;
    if act_on_forms(a, f)? != *f {
        return Err(AlgebraError::NotStabilizer);
    }
    let n = f.frame().n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..samples {
        let phi = random_dual_form(n, t % (d + 1), &mut rng);
        let lhs = contract(&act_on_dual(a, &phi)?, f)?;
        let rhs = act_on_forms(a, &contract(&phi, f)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{binomial, parse_poly};

    fn x(n: usize, s: &str) -> Poly {
        parse_poly(s, VariableFrame::x(n)).unwrap()
    }

    fn y(n: usize, s: &str) -> Poly {
        parse_poly(s, VariableFrame::y(n)).unwrap()
    }

    #[test]
    fn monomial_rule() {
        assert_eq!(contract(&y(2, "y1^2"), &x(2, "x1^2*x2")).unwrap(), x(2, "2*x2"));
        assert!(contract(&y(2, "y2^2"), &x(2, "x1^2*x2")).unwrap().is_zero());
    }

    #[test]
    fn linear_form_differentiates_q3_squared() {
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        let got = contract(&y(3, "y1"), &q.pow(2)).unwrap();
        assert_eq!(got, &x(3, "4*x1") * &q);
    }

    #[test]
    fn u_power_kills_q2_power() {
        let q2 = Poly::sum_of_squares(VariableFrame::x(2));
        let u = y(2, "y1 + i*y2");
        for s in 1..=3u32 {
            assert!(contract(&u.pow(s + 1), &q2.pow(s)).unwrap().is_zero());
            assert!(!contract(&u.pow(s), &q2.pow(s)).unwrap().is_zero());
        }
    }

    #[test]
    fn contraction_requires_dual_and_form_frames() {
        let f = x(3, "x1");
        assert!(contract(&f, &f).is_err());
        assert!(contract(&y(2, "y1"), &f).is_err());
    }

    #[test]
    fn catalecticant_of_q2_degree_one() {
        let cat = catalecticant(&Poly::sum_of_squares(VariableFrame::x(2)), 1).unwrap();
        assert_eq!(cat.matrix, ExactMatrix::from_i64(&[&[2, 0], &[0, 2]]));
        assert_eq!(cat.rank, 2);
    }

    #[test]
    fn catalecticant_of_q2_degree_two_frozen() {
        // y1²∘q2 = 2, y1y2∘q2 = 0, y2²∘q2 = 2 by the monomial rule.
        let cat = catalecticant(&Poly::sum_of_squares(VariableFrame::x(2)), 2).unwrap();
        assert_eq!(cat.matrix, ExactMatrix::from_i64(&[&[2, 0, 2]]));
        assert_eq!(cat.rank, 1);
        let comp = apolar_component(&Poly::sum_of_squares(VariableFrame::x(2)), 2).unwrap();
        assert_eq!(comp.dim, 2);
        let mut expected = crate::SparseEchelon::new();
        for p in [y(2, "y1^2 - y2^2"), y(2, "y1*y2")] {
            expected.insert(to_vec(&p));
        }
        for b in &comp.basis {
            assert!(expected.contains(to_vec(b)));
        }
    }

    fn to_vec(p: &Poly) -> crate::algebra::SparseVec {
        crate::algebra::MonomialBasis::new(p.frame(), p.homogeneous_degree().unwrap()).coordinates(p)
    }

    #[test]
    fn middle_catalecticant_of_q3_power_is_full_rank() {
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        for (s, expected) in [(1u32, 3usize), (2, 6), (3, 10)] {
            let cat = catalecticant(&q.pow(s), s as usize).unwrap();
            assert_eq!(cat.rank, expected);
            assert_eq!(cat.rank, binomial(s as usize + 2, 2));
        }
    }

    #[test]
    fn power_of_linear_form_has_rank_one() {
        let f = x(3, "x1^5");
        for j in 0..=5 {
            assert_eq!(catalecticant(&f, j).unwrap().rank, 1);
        }
        assert_eq!(sylvester_lower_bound(&f).unwrap(), 1);
    }

    #[test]
    fn catalecticant_errors() {
        assert_eq!(catalecticant(&x(2, "x1^2 + x2"), 1).unwrap_err(), AlgebraError::NotHomogeneous);
        assert_eq!(
            catalecticant(&x(2, "x1^2"), 3).unwrap_err(),
            AlgebraError::DegreeOutOfRange { j: 3, d: 2 }
        );
    }

    #[test]
    fn sylvester_bounds() {
        let q3 = Poly::sum_of_squares(VariableFrame::x(3));
        assert_eq!(sylvester_lower_bound(&q3.pow(2)).unwrap(), 6);
        let q2 = Poly::sum_of_squares(VariableFrame::x(2));
        assert_eq!(sylvester_lower_bound(&q2.pow(3)).unwrap(), 4);
    }

    #[test]
    fn low_components_of_q3_powers_vanish() {
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        for s in 1..=4u32 {
            for m in 0..=s as usize {
                assert_eq!(apolar_component(&q.pow(s), m).unwrap().dim, 0, "s={s} m={m}");
            }
        }
    }

    #[test]
    fn degree_three_component_of_q3_squared() {
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        let comp = apolar_component(&q.pow(2), 3).unwrap();
        assert_eq!(comp.dim, 7);
        for b in &comp.basis {
            assert!(contract(b, &q.pow(2)).unwrap().is_zero());
        }
    }

    #[test]
    fn q2_component_is_spanned_by_u_and_v_powers() {
        let q2 = Poly::sum_of_squares(VariableFrame::x(2));
        let u = y(2, "y1 + i*y2");
        let v = y(2, "y1 - i*y2");
        for s in 1..=4u32 {
            let comp = apolar_component(&q2.pow(s), s as usize + 1).unwrap();
            assert_eq!(comp.dim, 2);
            let mut span = crate::SparseEchelon::new();
            for b in &comp.basis {
                span.insert(to_vec(b));
            }
            assert!(span.contains(to_vec(&u.pow(s + 1))));
            assert!(span.contains(to_vec(&v.pow(s + 1))));
        }
    }

    #[test]
    fn components_above_degree_are_everything() {
        let comp = apolar_component(&x(3, "x1*x2"), 3).unwrap();
        assert_eq!(comp.dim, 10);
    }

    #[test]
    fn equivariance_under_cayley_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        for s in 1..=3u32 {
            let a = cayley_orthogonal(&random_skew(3, &mut rng)).unwrap();
            assert_eq!(a.transpose().mul(&a).unwrap(), ExactMatrix::identity(3));
            assert!(is_equivariant_spotcheck(&q.pow(s), &a, 6, s as u64).unwrap());
        }
    }

    #[test]
    fn equivariance_trivial_cases() {
        let f = x(3, "x1^3 - 2*x2*x3^2 + x1*x2*x3");
        assert!(is_equivariant_spotcheck(&f, &ExactMatrix::identity(3), 4, 1).unwrap());
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        let minus = ExactMatrix::identity(3).scale(&GaussianRational::from_integer(-1));
        assert!(is_equivariant_spotcheck(&q.pow(2), &minus, 4, 2).unwrap());
    }

    #[test]
    fn equivariance_needs_the_contragredient_for_non_orthogonal_stabilizers() {
        let f = x(2, "x1^2*x2^2");
        let a = ExactMatrix::from_rows(vec![
            vec![GaussianRational::from_integer(2), GaussianRational::zero()],
            vec![GaussianRational::zero(), GaussianRational::ratio(1, 2)],
        ])
        .unwrap();
        assert!(is_equivariant_spotcheck(&f, &a, 5, 3).unwrap());
    }

    #[test]
    fn non_stabilizer_is_rejected() {
        let q = Poly::sum_of_squares(VariableFrame::x(3));
        let a = ExactMatrix::identity(3).scale(&GaussianRational::from_integer(2));
        assert_eq!(is_equivariant_spotcheck(&q, &a, 2, 0), Err(AlgebraError::NotStabilizer));
    }
}
