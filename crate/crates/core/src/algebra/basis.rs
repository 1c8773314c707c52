use std::collections::HashMap;

use super::{GaussianRational, MultiIndex, Poly, SparseVec, VariableFrame};

/// The monomials of one degree in descending graded-lex order, with a
/// coordinate map between homogeneous polynomials and sparse vectors.
///
/// Coordinate 0 is the graded-lex largest monomial, so the pivot of a vector in
/// a [`SparseEchelon`](super::SparseEchelon) is its leading monomial.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    frame: VariableFrame,
    degree: usize,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(frame: VariableFrame, degree: usize) -> Self {
        let monomials = MultiIndex::all_of_degree(frame.n(), degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { frame, degree, monomials, index }
    }

    pub fn frame(&self) -> VariableFrame {
        self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of the degree-`self.degree` part of `p`; other degrees are ignored.
    pub fn coordinates(&self, p: &Poly) -> SparseVec {
        p.terms()
            .iter()
            .filter_map(|(m, c)| self.position(m).map(|i| (i, c.clone())))
            .collect()
    }

    pub fn dense_coordinates(&self, p: &Poly) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); self.len()];
        for (i, c) in self.coordinates(p) {
            v[i] = c;
        }
        v
    }

    pub fn poly<'a, I>(&self, coords: I) -> Poly
    where
        I: IntoIterator<Item = (usize, &'a GaussianRational)>,
    {
        Poly::from_terms(self.frame, coords.into_iter().map(|(i, c)| (self.monomials[i].clone(), c.clone())))
    }
}
