use super::{ExactMatrix, GaussianRational, MultiIndex, Poly, VariableFrame};
use crate::AlgebraError;

/// Invertible linear change of variables between two frames.
///
/// `images[i]` is the degree-1 polynomial in the target frame that source
/// variable `i` (storage index) is sent to. Applying the substitution is a
/// ring homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubstitution {
    source: VariableFrame,
    target: VariableFrame,
    images: Vec<Poly>,
}

impl LinearSubstitution {
    pub fn new(source: VariableFrame, target: VariableFrame, images: Vec<Poly>) -> Result<Self, AlgebraError> {
        if images.len() != source.n() {
            return Err(AlgebraError::SubstitutionArity {
                frame: source,
                expected: source.n(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.frame() != target {
                return Err(AlgebraError::FrameMismatch { left: img.frame(), right: target });
            }
            if img.homogeneous_degree() != Some(1) {
                return Err(AlgebraError::NonLinearImage { var: source.var_name(i) });
            }
        }
        let sub = Self { source, target, images };
        if source.n() != target.n() || sub.matrix().rank() != source.n() {
            return Err(AlgebraError::NonInvertibleSubstitution);
        }
        Ok(sub)
    }

    /// Frame change given by a square matrix: source variable `i` goes to
    /// `Σ_j m[j][i]·t_j`, i.e. column `i` holds the image of variable `i`.
    pub fn from_matrix(source: VariableFrame, target: VariableFrame, m: &ExactMatrix) -> Result<Self, AlgebraError> {
        if m.rows() != target.n() || m.cols() != source.n() {
            return Err(AlgebraError::Shape(format!(
                "{}x{} matrix for {} -> {}",
                m.rows(),
                m.cols(),
                source,
                target
            )));
        }
        let images = (0..source.n())
            .map(|i| {
                Poly::from_terms(
                    target,
                    (0..target.n()).map(|j| (MultiIndex::unit(target.n(), j), m.get(j, i).clone())),
                )
            })
            .collect();
        Self::new(source, target, images)
    }

    /// `u ↦ (y1 + i·y2)/2, v ↦ (y1 − i·y2)/2, z ↦ y3`.
    pub fn uvz_to_y() -> Self {
        let y = VariableFrame::y(3);
        let half = GaussianRational::ratio(1, 2);
        let half_i = &half * &GaussianRational::i();
        let lin = |a: &GaussianRational, b: &GaussianRational, c: &GaussianRational| {
            Poly::from_terms(
                y,
                [
                    (MultiIndex::unit(3, 0), a.clone()),
                    (MultiIndex::unit(3, 1), b.clone()),
                    (MultiIndex::unit(3, 2), c.clone()),
                ],
            )
        };
        let zero = GaussianRational::zero();
        let one = GaussianRational::one();
        let mut images = vec![Poly::zero(y); 3];
        images[VariableFrame::Z] = lin(&zero, &zero, &one);
        images[VariableFrame::U] = lin(&half, &half_i, &zero);
        images[VariableFrame::V] = lin(&half, &-&half_i, &zero);
        Self::new(VariableFrame::uvz(), y, images).expect("fixed invertible substitution")
    }

    /// Inverse of [`uvz_to_y`](Self::uvz_to_y): `y1 ↦ u + v, y2 ↦ −i(u − v), y3 ↦ z`.
    pub fn y_to_uvz() -> Self {
        Self::uvz_to_y().inverse()
    }

    /// `u ↦ target_u, v ↦ target_v, z ↦ target_z` into an `X(3)` frame, with
    /// `u = x1 + i·x2`, `v = x1 − i·x2`, `z = x3` (the unscaled convention).
    pub fn uvz_to_x_unscaled() -> Self {
        let x = VariableFrame::x(3);
        let i = GaussianRational::i();
        let lin = |c1: GaussianRational, c2: GaussianRational, c3: GaussianRational| {
            Poly::from_terms(
                x,
                [(MultiIndex::unit(3, 0), c1), (MultiIndex::unit(3, 1), c2), (MultiIndex::unit(3, 2), c3)],
            )
        };
        let o = GaussianRational::one;
        let z = GaussianRational::zero;
        let mut images = vec![Poly::zero(x); 3];
        images[VariableFrame::Z] = lin(z(), z(), o());
        images[VariableFrame::U] = lin(o(), i.clone(), z());
        images[VariableFrame::V] = lin(o(), -&i, z());
        Self::new(VariableFrame::uvz(), x, images).expect("fixed invertible substitution")
    }

    pub fn source(&self) -> VariableFrame {
        self.source
    }

    pub fn target(&self) -> VariableFrame {
        self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Column `i` holds the coefficients of the image of source variable `i`.
    pub fn matrix(&self) -> ExactMatrix {
        let n = self.target.n();
        let mut m = ExactMatrix::zeros(n, self.source.n());
        for (i, img) in self.images.iter().enumerate() {
            for j in 0..n {
                m.set(j, i, img.coeff(&MultiIndex::unit(n, j)));
            }
        }
        m
    }

    pub fn inverse(&self) -> Self {
        let inv = self.matrix().inverse().expect("substitution invertible by construction");
        Self::from_matrix(self.target, self.source, &inv).expect("inverse of an invertible map")
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, AlgebraError> {
        if p.frame() != self.source {
            return Err(AlgebraError::FrameMismatch { left: p.frame(), right: self.source });
        }
        let n = self.source.n();
        let max_exp: Vec<u32> = (0..n)
            .map(|i| p.terms().keys().map(|m| m.exponents()[i]).max().unwrap_or(0))
            .collect();
        // powers[i][e] = images[i]^e
        let powers: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                let mut v = vec![Poly::one(self.target)];
                for e in 1..=max_exp[i] as usize {
                    let next = &v[e - 1] * &self.images[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(self.target);
        for (m, c) in p.terms() {
            let mut t = Poly::constant(self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }
}

/// Rewrites `p` in `target` by sending each source variable to `images[i]`.
pub fn change_frame(p: &Poly, target: VariableFrame, images: Vec<Poly>) -> Result<Poly, AlgebraError> {
    LinearSubstitution::new(p.frame(), target, images)?.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_poly;

    #[test]
    fn uv_maps_to_quarter_sum_of_squares() {
        let uv = parse_poly("u*v", VariableFrame::uvz()).unwrap();
        let got = LinearSubstitution::uvz_to_y().apply(&uv).unwrap();
        assert_eq!(got, parse_poly("(y1^2 + y2^2)/4", VariableFrame::y(3)).unwrap());
    }

    #[test]
    fn q2_is_uv_in_unscaled_convention() {
        let uv = parse_poly("u*v", VariableFrame::uvz()).unwrap();
        let got = LinearSubstitution::uvz_to_x_unscaled().apply(&uv).unwrap();
        assert_eq!(got, parse_poly("x1^2 + x2^2", VariableFrame::x(3)).unwrap());
    }

    #[test]
    fn identity_substitution() {
        let f = VariableFrame::x(3);
        let sub = LinearSubstitution::new(f, f, (0..3).map(|i| Poly::var(f, i)).collect()).unwrap();
        let p = parse_poly("x1^3 - 2*x2*x3 + 5", f).unwrap();
        assert_eq!(sub.apply(&p).unwrap(), p);
    }

    #[test]
    fn rename_z_power() {
        let zd = parse_poly("z^5", VariableFrame::uvz()).unwrap();
        let got = LinearSubstitution::uvz_to_y().apply(&zd).unwrap();
        assert_eq!(got, parse_poly("y3^5", VariableFrame::y(3)).unwrap());
    }

    #[test]
    fn inverse_is_the_printed_one() {
        let inv = LinearSubstitution::y_to_uvz();
        let uvz = VariableFrame::uvz();
        assert_eq!(inv.images()[0], parse_poly("u + v", uvz).unwrap());
        assert_eq!(inv.images()[1], parse_poly("-i*u + i*v", uvz).unwrap());
        assert_eq!(inv.images()[2], parse_poly("z", uvz).unwrap());
    }

    #[test]
    fn rejects_bad_substitutions() {
        let f = VariableFrame::x(2);
        let singular = vec![parse_poly("x1+x2", f).unwrap(), parse_poly("2*x1+2*x2", f).unwrap()];
        assert_eq!(LinearSubstitution::new(f, f, singular), Err(AlgebraError::NonInvertibleSubstitution));
        let quadratic = vec![parse_poly("x1^2", f).unwrap(), parse_poly("x2", f).unwrap()];
        assert!(matches!(LinearSubstitution::new(f, f, quadratic), Err(AlgebraError::NonLinearImage { .. })));
        let affine = vec![parse_poly("x1+1", f).unwrap(), parse_poly("x2", f).unwrap()];
        assert!(matches!(LinearSubstitution::new(f, f, affine), Err(AlgebraError::NonLinearImage { .. })));
    }
}
