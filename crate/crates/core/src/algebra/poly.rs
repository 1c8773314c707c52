use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{GaussianRational, MultiIndex, VariableFrame};
use crate::AlgebraError;

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Terms are kept in a map keyed by [`MultiIndex`]; zero coefficients are
/// never stored, so the zero polynomial has an empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    frame: VariableFrame,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl Poly {
    pub fn zero(frame: VariableFrame) -> Self {
        Self { frame, terms: BTreeMap::new() }
    }

    pub fn one(frame: VariableFrame) -> Self {
        Self::constant(frame, GaussianRational::one())
    }

    pub fn constant(frame: VariableFrame, c: GaussianRational) -> Self {
        Self::monomial(frame, MultiIndex::zeros(frame.n()), c)
    }

    /// The `i`-th variable of the frame (storage index).
    pub fn var(frame: VariableFrame, i: usize) -> Self {
        Self::monomial(frame, MultiIndex::unit(frame.n(), i), GaussianRational::one())
    }

    pub fn monomial(frame: VariableFrame, m: MultiIndex, c: GaussianRational) -> Self {
        assert_eq!(m.len(), frame.n(), "multi-index length does not match frame");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { frame, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(frame: VariableFrame, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, GaussianRational)>,
    {
        let mut p = Self::zero(frame);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// `q_n = Σ var_i²` in an `X` or `Y` frame.
    pub fn sum_of_squares(frame: VariableFrame) -> Self {
        Self::from_terms(
            frame,
            (0..frame.n()).map(|i| {
                let mut e = vec![0; frame.n()];
                e[i] = 2;
                (MultiIndex::new(e), GaussianRational::one())
            }),
        )
    }

    pub fn frame(&self) -> VariableFrame {
        self.frame
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, GaussianRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, GaussianRational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let first = self.terms.keys().next()?.degree();
        let last = self.terms.keys().next_back()?.degree();
        (first == last).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_component(&self, d: usize) -> Poly {
        Self {
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Adds `c·x^m` in place.
    pub fn add_term(&mut self, m: MultiIndex, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.frame.n());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.frame);
        }
        Self {
            frame: self.frame,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·x^m·self`.
    pub fn mul_term(&self, m: &MultiIndex, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.frame);
        }
        Self {
            frame: self.frame,
            terms: self.terms.iter().map(|(k, a)| (k.add(m), a * c)).collect(),
        }
    }

    fn check_frame(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(AlgebraError::FrameMismatch { left: self.frame, right: other.frame })
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_frame(other)?;
        let mut out = Poly::zero(self.frame);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.frame);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂/∂var_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.frame);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(MultiIndex::new(ex), &(c * &GaussianRational::from_integer(e as i64)));
        }
        out
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Poly {
        Self {
            frame: self.frame,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// Reinterprets the same term map in another frame with the same variable count.
    pub fn relabel(&self, frame: VariableFrame) -> Result<Poly, AlgebraError> {
        if frame.n() != self.frame.n() {
            return Err(AlgebraError::FrameMismatch { left: self.frame, right: frame });
        }
        Ok(Self { frame, terms: self.terms.clone() })
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &MultiIndex) -> fmt::Result {
        let mut first = true;
        for i in self.frame.print_order() {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.frame.var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>, pretty: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = split_sign(c);
            match (idx == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if pretty && mag.is_real() && !mag.re().denom().is_one() {
                let num = mag.re().numer();
                if !num.is_one() {
                    write!(f, "{num}*")?;
                }
                self.write_monomial(f, m)?;
                write!(f, "/{}", mag.re().denom())?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            self.write_monomial(f, m)?;
        }
        Ok(())
    }

    /// Human-oriented rendering, e.g. `z^2/2 - u*v`. Also accepted by the parser.
    pub fn pretty(&self) -> String {
        struct Pretty<'a>(&'a Poly);
        impl fmt::Display for Pretty<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_terms(f, true)
            }
        }
        Pretty(self).to_string()
    }
}

/// Pulls a leading sign out of real and purely imaginary coefficients.
fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    if (c.im().is_zero() && c.re().is_negative()) || (c.re().is_zero() && c.im().is_negative()) {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Canonical text form: terms in descending graded-lex order, `coeff*monomial`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, false)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.frame, self)
    }
}

// Operator forms panic on frame mismatch; use the `try_*` methods at API boundaries.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial frames differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial frames differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial frames differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&GaussianRational::from_integer(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_poly;

    fn x3() -> VariableFrame {
        VariableFrame::x(3)
    }

    #[test]
    fn difference_of_squares() {
        let a = parse_poly("x1+x2", x3()).unwrap();
        let b = parse_poly("x1-x2", x3()).unwrap();
        assert_eq!(&a * &b, parse_poly("x1^2-x2^2", x3()).unwrap());
    }

    #[test]
    fn zeroth_power_is_one() {
        let q = Poly::sum_of_squares(x3());
        assert_eq!(q.pow(0), Poly::one(x3()));
        assert_eq!(q.pow(2).homogeneous_degree(), Some(4));
    }

    #[test]
    fn frame_mismatch_is_an_error() {
        let a = Poly::var(VariableFrame::x(3), 0);
        let b = Poly::var(VariableFrame::y(3), 0);
        assert!(matches!(a.try_mul(&b), Err(AlgebraError::FrameMismatch { .. })));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = Poly::var(x3(), 1);
        assert!((&a - &a).is_zero());
        assert!((&a - &a).terms().is_empty());
    }

    #[test]
    fn printing() {
        let p = parse_poly("z^2/2 - u*v", VariableFrame::uvz()).unwrap();
        assert_eq!(p.to_string(), "1/2*z^2 - u*v");
        assert_eq!(p.pretty(), "z^2/2 - u*v");
        let q = parse_poly("-x1^2 + (1-2i)*x2*x3 - 3/4i", x3()).unwrap();
        assert_eq!(q.to_string(), "-x1^2 + (1-2i)*x2*x3 - 3/4i");
        assert_eq!(Poly::zero(x3()).to_string(), "0");
        let r = parse_poly("u*z^2 - 3*u^2*v", VariableFrame::uvz()).unwrap();
        assert_eq!(r.to_string(), "u*z^2 - 3*u^2*v");
    }

    #[test]
    fn homogeneity() {
        let p = parse_poly("x1^2 + x2", x3()).unwrap();
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.homogeneous_component(1), parse_poly("x2", x3()).unwrap());
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PolyRepr {
    frame: VariableFrame,
    text: String,
}

/// Serialized as `{"frame": ..., "text": ...}` using the canonical text form.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr { frame: self.frame, text: self.to_string() }.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        super::parse_poly(&repr.text, repr.frame).map_err(serde::de::Error::custom)
    }
}
