//! Lex-order division, Buchberger's criterion in colon-ideal form, monomial
//! ideals and Hilbert functions.
//!
//! The monomial order is plain lexicographic on the stored exponent vector.
//! In the `Uvz` frame the storage order is `(z, u, v)`, so this is lex with
//! `z > u > v`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MonomialBasis, MultiIndex, Poly, SparseEchelon, VariableFrame};
use crate::{monomial_count, AlgebraError};

/// `(monomial, coefficient)` of the lex-greatest term.
pub fn lex_leading_term(f: &Poly) -> Result<(MultiIndex, GaussianRational), AlgebraError> {
    f.terms()
        .iter()
        .max_by(|a, b| a.0.lex_cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or(AlgebraError::ZeroPolynomial)
}

fn monomial_string(frame: VariableFrame, m: &MultiIndex) -> String {
    Poly::monomial(frame, m.clone(), GaussianRational::one()).to_string()
}

/// A monomial ideal kept as its minimal generating set, sorted lex-descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<MultiIndex>,
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: impl IntoIterator<Item = MultiIndex>) -> Self {
        let mut gens: Vec<MultiIndex> = generators.into_iter().collect();
        assert!(gens.iter().all(|g| g.len() == n), "generator arity differs from {n}");
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lex_cmp(a)));
        gens.dedup();
        let mut minimal: Vec<MultiIndex> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| b.lex_cmp(a));
        Self { n, generators: minimal }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, generators: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self { n, generators: vec![MultiIndex::zeros(n)] }
    }

    /// All monomials of degree `d` in the listed variables.
    pub fn power_of_variables(n: usize, vars: &[usize], d: usize) -> Self {
        let gens = MultiIndex::all_of_degree(vars.len(), d).into_iter().map(|m| {
            let mut e = vec![0; n];
            for (k, &v) in vars.iter().enumerate() {
                e[v] = m.exponents()[k];
            }
            MultiIndex::new(e)
        });
        Self::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.degree() == 0)
    }

    pub fn contains(&self, m: &MultiIndex) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `J : x^α`, generated by `m / gcd(m, x^α)`.
    pub fn colon_monomial(&self, alpha: &MultiIndex) -> Self {
        Self::new(
            self.n,
            self.generators.iter().map(|m| m.checked_sub(&m.gcd(alpha)).expect("gcd divides m")),
        )
    }

    pub fn colon_var(&self, var: usize) -> Self {
        self.colon_monomial(&MultiIndex::unit(self.n, var))
    }

    /// Generated by the pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> Self {
        assert_eq!(self.n, other.n, "intersection of ideals in different rings");
        Self::new(
            self.n,
            self.generators.iter().flat_map(|a| other.generators.iter().map(move |b| a.lcm(b))),
        )
    }

    /// `J : m`, where `m` is the ideal of all variables.
    pub fn colon_maximal(&self) -> Self {
        (1..self.n).fold(self.colon_var(0), |acc, v| acc.intersect(&self.colon_var(v)))
    }

    /// `J : m^∞` and the number of `J ← J : m` steps until the first repeat.
    pub fn saturation(&self) -> (Self, usize) {
        let mut current = self.clone();
        let mut iterations = 0;
        loop {
            let next = current.colon_maximal();
            iterations += 1;
            if next == current {
                return (current, iterations);
            }
            current = next;
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.colon_maximal() == *self
    }

    /// Number of degree-`a` monomials outside the ideal.
    pub fn standard_monomial_count(&self, a: usize) -> usize {
        MultiIndex::all_of_degree(self.n, a).iter().filter(|m| !self.contains(m)).count()
    }

    pub fn to_strings(&self, frame: VariableFrame) -> Vec<String> {
        self.generators.iter().map(|m| monomial_string(frame, m)).collect()
    }
}

/// One division step: subtract `coefficient · monomial · G[generator]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionStep {
    pub generator: usize,
    pub monomial: MultiIndex,
    pub coefficient: GaussianRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub remainder: Poly,
    pub quotients: Vec<Poly>,
    pub steps: Vec<DivisionStep>,
}

impl Division {
    /// `Σ q_i·G_i + remainder`.
    pub fn reconstruct(&self, g: &[Poly]) -> Poly {
        self.quotients
            .iter()
            .zip(g)
            .fold(self.remainder.clone(), |acc, (q, gi)| &acc + &(q * gi))
    }
}

/// Full division of `f` by `g` in lex order.
///
/// At each step the current lead term is divided by the element of `g` with
/// the lex-greatest leading term among those that divide it; a lead term with
/// no divisor moves to the remainder.
pub fn divide(f: &Poly, g: &[Poly]) -> Result<Division, AlgebraError> {
    let frame = f.frame();
    let leads: Vec<(MultiIndex, GaussianRational)> = g
        .iter()
        .map(|gi| {
            if gi.frame() != frame {
                return Err(AlgebraError::FrameMismatch { left: frame, right: gi.frame() });
            }
            lex_leading_term(gi)
        })
        .collect::<Result<_, _>>()?;
    let mut p = f.clone();
    let mut remainder = Poly::zero(frame);
    let mut quotients = vec![Poly::zero(frame); g.len()];
    let mut steps = Vec::new();
    while let Ok((lm, lc)) = lex_leading_term(&p) {
        let reducer = leads
            .iter()
            .enumerate()
            .filter(|(_, (m, _))| m.divides(&lm))
            .max_by(|a, b| a.1 .0.lex_cmp(&b.1 .0).then(b.0.cmp(&a.0)));
        match reducer {
            Some((i, (m, c))) => {
                let mono = lm.checked_sub(m).expect("divisor");
                let coefficient = lc.checked_div(c)?;
                p = &p - &g[i].mul_term(&mono, &coefficient);
                quotients[i].add_term(mono.clone(), &coefficient);
                steps.push(DivisionStep { generator: i, monomial: mono, coefficient });
            }
            None => {
                remainder.add_term(lm.clone(), &lc);
                p.add_term(lm, &-&lc);
            }
        }
    }
    Ok(Division { remainder, quotients, steps })
}

/// Remainder of [`divide`].
pub fn reduce(f: &Poly, g: &[Poly]) -> Result<Poly, AlgebraError> {
    Ok(divide(f, g)?.remainder)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    /// The colon generator `x^α` that multiplies the current element.
    pub multiplier: String,
    /// `(generator index, term)` for every division step, in order.
    pub chain: Vec<(usize, String)>,
    pub remainder: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonStep {
    /// Zero-based position of the element in the ordered list.
    pub j: usize,
    pub leading_term: String,
    pub colon_generators: Vec<String>,
    pub reductions: Vec<ReductionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerWitness {
    pub frame: VariableFrame,
    pub generators: Vec<String>,
    pub steps: Vec<ColonStep>,
    pub passed: bool,
}

/// Buchberger's criterion with colon ideals.
///
/// For `j ≥ 1`, let `M_j = (LT(g_0), …, LT(g_{j−1})) : LT(g_j)`. The list is a
/// Gröbner basis iff `x^α·g_j` reduces to zero for every minimal generator
/// `x^α` of every `M_j`. The first element needs no check.
pub fn buchberger_colon_check(g: &[Poly]) -> Result<BuchbergerWitness, AlgebraError> {
    let frame = g.first().map(Poly::frame).ok_or_else(|| AlgebraError::InvalidArgument("empty list".into()))?;
    let leads: Vec<MultiIndex> = g.iter().map(|p| lex_leading_term(p).map(|t| t.0)).collect::<Result<_, _>>()?;
    let mut steps = Vec::new();
    let mut passed = true;
    for j in 1..g.len() {
        let colon = MonomialIdeal::new(frame.n(), leads[..j].iter().cloned()).colon_monomial(&leads[j]);
        let mut reductions = Vec::new();
        for alpha in colon.generators() {
            let product = g[j].mul_term(alpha, &GaussianRational::one());
            let division = divide(&product, g)?;
            passed &= division.remainder.is_zero();
            reductions.push(ReductionWitness {
                multiplier: monomial_string(frame, alpha),
                chain: division
                    .steps
                    .iter()
                    .map(|s| (s.generator, Poly::monomial(frame, s.monomial.clone(), s.coefficient.clone()).to_string()))
                    .collect(),
                remainder: division.remainder.to_string(),
            });
        }
        steps.push(ColonStep {
            j,
            leading_term: monomial_string(frame, &leads[j]),
            colon_generators: colon.to_strings(frame),
            reductions,
        });
    }
    Ok(BuchbergerWitness { frame, generators: g.iter().map(Poly::to_string).collect(), steps, passed })
}

/// Leading ideal of a list that passes [`buchberger_colon_check`].
pub fn leading_ideal(g: &[Poly]) -> Result<MonomialIdeal, AlgebraError> {
    if !buchberger_colon_check(g)?.passed {
        return Err(AlgebraError::NotGroebner);
    }
    let n = g[0].frame().n();
    Ok(MonomialIdeal::new(n, g.iter().map(|p| lex_leading_term(p).expect("nonzero").0)))
}

/// A homogeneous ideal with an optional Gröbner basis and a Hilbert function cache.
#[derive(Clone, Debug)]
pub struct GradedIdealPresentation {
    frame: VariableFrame,
    generators: Vec<Poly>,
    groebner_basis: Option<Vec<Poly>>,
    leading_ideal: Option<MonomialIdeal>,
    hilbert: BTreeMap<usize, usize>,
}

impl GradedIdealPresentation {
    pub fn new(frame: VariableFrame, generators: Vec<Poly>) -> Result<Self, AlgebraError> {
        for g in &generators {
            if g.frame() != frame {
                return Err(AlgebraError::FrameMismatch { left: frame, right: g.frame() });
            }
            if g.is_zero() || !g.is_homogeneous() {
                return Err(AlgebraError::NotHomogeneous);
            }
        }
        Ok(Self { frame, generators, groebner_basis: None, leading_ideal: None, hilbert: BTreeMap::new() })
    }

    /// Attaches `basis` as a Gröbner basis after checking it with the colon
    /// criterion and checking that every generator reduces to zero against
    /// it. On failure the presentation is returned unchanged with the witness.
    pub fn attach_groebner_basis(mut self, basis: Vec<Poly>) -> Result<(Self, BuchbergerWitness), AlgebraError> {
        let mut witness = buchberger_colon_check(&basis)?;
        for g in &self.generators {
            witness.passed &= reduce(g, &basis)?.is_zero();
        }
        if witness.passed {
            self.leading_ideal = Some(leading_ideal(&basis)?);
            self.groebner_basis = Some(basis);
            self.hilbert.clear();
        }
        Ok((self, witness))
    }

    pub fn with_generators_as_basis(self) -> Result<(Self, BuchbergerWitness), AlgebraError> {
        let basis = self.generators.clone();
        self.attach_groebner_basis(basis)
    }

    pub fn frame(&self) -> VariableFrame {
        self.frame
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn groebner_basis(&self) -> Option<&[Poly]> {
        self.groebner_basis.as_deref()
    }

    pub fn leading_ideal(&self) -> Option<&MonomialIdeal> {
        self.leading_ideal.as_ref()
    }

    /// `dim span{m·g : deg(m·g) = a}`.
    pub fn component_dim(&self, a: usize) -> usize {
        let basis = MonomialBasis::new(self.frame, a);
        let full = basis.len();
        let mut echelon = SparseEchelon::new();
        for g in &self.generators {
            let d = g.homogeneous_degree().expect("checked homogeneous");
            if d > a {
                continue;
            }
            for m in MultiIndex::all_of_degree(self.frame.n(), a - d) {
                echelon.insert(basis.coordinates(&g.mul_term(&m, &GaussianRational::one())));
                if echelon.rank() == full {
                    return full;
                }
            }
        }
        echelon.rank()
    }

    /// Hilbert function of the quotient ring in degree `a`.
    ///
    /// Always computed from the rank of the degree-`a` multiples; when a
    /// leading ideal is known, also from its standard monomials, and the two
    /// must agree.
    pub fn hilbert_function(&mut self, a: usize) -> Result<usize, AlgebraError> {
        if let Some(&h) = self.hilbert.get(&a) {
            return Ok(h);
        }
        let by_rank = monomial_count(self.frame.n(), a) - self.component_dim(a);
        if let Some(lead) = &self.leading_ideal {
            let by_standard = lead.standard_monomial_count(a);
            if by_standard != by_rank {
                return Err(AlgebraError::HilbertMismatch { degree: a, by_rank, by_standard });
            }
        }
        self.hilbert.insert(a, by_rank);
        Ok(by_rank)
    }
}

/// Closed-form count of degree-`a` standard monomials of the ideal generated
/// by all degree-`d` monomials in two of three variables: monomials
/// `x^i y^j w^k` with `i + j < d`, so `Σ_{t=0}^{min(a, d−1)} (t+1)`.
pub fn two_variable_power_standard_count(d: usize, a: usize) -> usize {
    if d == 0 {
        return 0;
    }
    (0..=a.min(d - 1)).map(|t| t + 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_basis_element;
    use crate::parse_poly;

    fn uvz(s: &str) -> Poly {
        parse_poly(s, VariableFrame::uvz()).unwrap()
    }

    fn mono(s: &str) -> MultiIndex {
        lex_leading_term(&uvz(s)).unwrap().0
    }

    fn b(d: usize) -> Vec<Poly> {
        (0..=d as i64).map(|k| harmonic_basis_element(d, k)).collect()
    }

    fn jd(d: usize) -> MonomialIdeal {
        MonomialIdeal::power_of_variables(3, &[VariableFrame::Z, VariableFrame::U], d)
    }

    #[test]
    fn leading_terms() {
        assert_eq!(lex_leading_term(&uvz("z^2/2 - u*v")).unwrap(), (mono("z^2"), GaussianRational::ratio(1, 2)));
        assert_eq!(lex_leading_term(&uvz("u^2 + u*v")).unwrap().0, mono("u^2"));
        assert_eq!(lex_leading_term(&uvz("z*u*v")).unwrap().0, mono("z*u*v"));
        // lex, not graded: z beats u^5
        assert_eq!(lex_leading_term(&uvz("u^5 + z")).unwrap().0, mono("z"));
        assert_eq!(lex_leading_term(&Poly::zero(VariableFrame::uvz())), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn reduction_examples() {
        let b2 = b(2);
        assert!(reduce(&(&uvz("z") * &b2[1]), &b2).unwrap().is_zero());
        assert!(reduce(&uvz("u^3"), &[uvz("u^2")]).unwrap().is_zero());
        for d in 1..=6 {
            let vd = uvz("v").pow(d as u32);
            assert_eq!(reduce(&vd, &b(d)).unwrap(), vd);
        }
    }

    #[test]
    fn division_reconstructs() {
        let g = b(3);
        let f = uvz("z^4 + 3*u*z^3 - (2+i)*v^2*z*u + u^4 - v^4");
        let div = divide(&f, &g).unwrap();
        assert_eq!(div.reconstruct(&g), f);
        let leads: Vec<_> = g.iter().map(|p| lex_leading_term(p).unwrap().0).collect();
        for m in div.remainder.terms().keys() {
            assert!(!leads.iter().any(|l| l.divides(m)));
        }
    }

    #[test]
    fn reduction_identity_scalars() {
        // z·p_{d,k} = (d−k+1)/k · u·p_{d,k−1} + (d+k+1)/k · v·p_{d,k+1}
        for d in 2..=8usize {
            for k in 1..d {
                let (di, ki) = (d as i64, k as i64);
                let rhs = &(&uvz("u") * &harmonic_basis_element(d, ki - 1)).scale(&GaussianRational::ratio(di - ki + 1, ki))
                    + &(&uvz("v") * &harmonic_basis_element(d, ki + 1)).scale(&GaussianRational::ratio(di + ki + 1, ki));
                assert_eq!(&uvz("z") * &harmonic_basis_element(d, ki), rhs, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn canonical_half_basis_is_groebner() {
        for d in 1..=8 {
            let w = buchberger_colon_check(&b(d)).unwrap();
            assert!(w.passed, "d={d}");
            assert_eq!(w.steps.len(), d);
            for step in &w.steps {
                assert_eq!(step.colon_generators, vec!["z".to_string()]);
            }
            assert_eq!(leading_ideal(&b(d)).unwrap(), jd(d));
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let a = serde_json::to_string(&buchberger_colon_check(&b(4)).unwrap()).unwrap();
        let c = serde_json::to_string(&buchberger_colon_check(&b(4)).unwrap()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn coprime_squares() {
        let g = [uvz("u^2"), uvz("v^2")];
        let w = buchberger_colon_check(&g).unwrap();
        assert!(w.passed);
        assert_eq!(w.steps[0].colon_generators, vec!["u^2".to_string()]);
        assert_eq!(leading_ideal(&g).unwrap(), MonomialIdeal::new(3, [mono("u^2"), mono("v^2")]));
    }

    #[test]
    fn broken_basis_is_rejected() {
        let g = [uvz("z^2 - u*v"), uvz("z*u + v^2")];
        let w = buchberger_colon_check(&g).unwrap();
        assert!(!w.passed);
        assert_ne!(w.steps[0].reductions[0].remainder, "0");
        assert_eq!(leading_ideal(&g), Err(AlgebraError::NotGroebner));
    }

    #[test]
    fn colon_and_intersection() {
        let j = jd(2);
        assert_eq!(j.colon_var(VariableFrame::Z), MonomialIdeal::new(3, [mono("z"), mono("u")]));
        assert_eq!(j.colon_var(VariableFrame::V), j);
        let (u, v) = (MonomialIdeal::new(3, [mono("u")]), MonomialIdeal::new(3, [mono("v")]));
        assert_eq!(u.intersect(&v), MonomialIdeal::new(3, [mono("u*v")]));
    }

    #[test]
    fn minimalization() {
        let j = MonomialIdeal::new(3, [mono("z"), mono("u"), mono("u^2"), mono("z*v")]);
        assert_eq!(j.generators().len(), 2);
    }

    #[test]
    fn saturation_examples() {
        for d in 1..=8 {
            let (sat, iters) = jd(d).saturation();
            assert_eq!(sat, jd(d));
            assert!(iters <= 2);
            assert!(jd(d).is_saturated());
        }
        let m2 = MonomialIdeal::power_of_variables(2, &[0, 1], 2);
        assert_eq!(m2.saturation().0, MonomialIdeal::unit(2));
        let p = MonomialIdeal::new(3, [mono("z^2*u")]);
        assert_eq!(p.saturation().0, p);
    }

    #[test]
    fn hilbert_of_i3() {
        let (mut p, _) = GradedIdealPresentation::new(VariableFrame::uvz(), b(3)).unwrap().with_generators_as_basis().unwrap();
        let expected = [1, 3, 6, 6, 6, 6, 6, 6, 6, 6, 6];
        for (a, e) in expected.iter().enumerate() {
            assert_eq!(p.hilbert_function(a).unwrap(), *e, "a={a}");
        }
        assert_eq!(two_variable_power_standard_count(3, 10), 6);
    }

    #[test]
    fn hilbert_without_basis_uses_rank_only() {
        let mut p = GradedIdealPresentation::new(VariableFrame::uvz(), vec![uvz("u^2"), uvz("v^2")]).unwrap();
        assert_eq!(p.hilbert_function(2).unwrap(), 4);
        // u^a v^b z^c with a, b ≤ 1
        assert_eq!(p.hilbert_function(4).unwrap(), 4);
    }

    #[test]
    fn hilbert_mismatch_is_reported() {
        let (mut p, _) = GradedIdealPresentation::new(VariableFrame::uvz(), b(2)).unwrap().with_generators_as_basis().unwrap();
        p.leading_ideal = Some(jd(3));
        assert!(matches!(p.hilbert_function(2), Err(AlgebraError::HilbertMismatch { degree: 2, .. })));
    }
}
