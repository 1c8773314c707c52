//! End-to-end certificates for the border rank of powers of ternary quadratic
//! forms, the rank classification of ternary quadratics, and numeric
//! decompositions of powers of the binary sum of squares.
//!
//! A [`BorderRankCertificate`] keeps the facts this crate verifies exactly
//! (containment, Gröbner basis, saturation, Hilbert function, catalecticant
//! rank) apart from the published theorems it relies on, which are listed in
//! `assumed_theorems` and are not checked by machine.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactMatrix, FrameKind, GaussianRational, LinearSubstitution, Poly, SparseEchelon, VariableFrame};
use crate::apolarity::{apolar_component, catalecticant, contract};
use crate::groebner::{
    two_variable_power_standard_count, BuchbergerWitness, GradedIdealPresentation, MonomialIdeal,
};
use crate::harmonic::{harmonic_basis, harmonic_basis_element, is_harmonic};
use crate::{binomial, parse_poly, AlgebraError, CertifyError, MonomialBasis, MultiIndex};

/// `I_d = (p_{d,d}, …, p_{d,0})` in the `Uvz` frame, generators in that order.
pub fn build_ideal_i(d: usize) -> Result<GradedIdealPresentation, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::InvalidArgument("I_d needs d >= 1".into()));
    }
    let gens = (0..=d as i64).rev().map(|k| harmonic_basis_element(d, k)).collect();
    GradedIdealPresentation::new(VariableFrame::uvz(), gens)
}

/// Hilbert function of `r` general points in the plane: `a ↦ min(C(a+2,2), r)`.
pub fn generic_points_hilbert(r: usize, a: usize) -> usize {
    binomial(a + 2, 2).min(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCheck {
    pub from: usize,
    pub to: usize,
    pub values: Vec<usize>,
    pub matches: bool,
    /// Degree from which the closed-form count of standard monomials is constant.
    pub stable_from: usize,
    pub stable_value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    /// `p ∘ q_3^s = 0` after changing each generator to `y` coordinates.
    pub apolar_membership: Vec<bool>,
    /// Each generator is annihilated by the Laplacian: an independent check of the same containment.
    pub harmonic: Vec<bool>,
    pub groebner_ok: bool,
    #[serde(rename = "leading_ideal_equals_Jd")]
    pub leading_ideal_equals_jd: bool,
    pub saturated: bool,
    pub saturation_iterations: usize,
    pub hilbert_matches_h_r: HilbertCheck,
    pub catalecticant_rank: usize,
}

impl CertificateChecks {
    pub fn all_pass(&self, r: usize) -> bool {
        self.apolar_membership.iter().all(|&b| b)
            && self.harmonic.iter().all(|&b| b)
            && self.groebner_ok
            && self.leading_ideal_equals_jd
            && self.saturated
            && self.hilbert_matches_h_r.matches
            && self.hilbert_matches_h_r.stable_value == r
            && self.catalecticant_rank == r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: usize,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BorderRankCertificate {
    pub s: usize,
    pub r: usize,
    pub generator_count: usize,
    /// Generators of `I_{s+1}` in the `Uvz` frame, canonical text.
    pub generators: Vec<String>,
    pub checks: CertificateChecks,
    pub groebner_witness: BuchbergerWitness,
    pub lower_bound: Bound,
    pub upper_bound: Bound,
    pub assumed_theorems: Vec<String>,
    pub notes: Vec<String>,
    pub conclusion: usize,
    pub timings_ms: BTreeMap<String, f64>,
}

impl BorderRankCertificate {
    /// The certificate with timings cleared; two runs at one `s` agree on this exactly.
    pub fn without_timings(&self) -> Self {
        Self { timings_ms: BTreeMap::new(), ..self.clone() }
    }
}

fn assumed_theorems() -> Vec<String> {
    [
        "Border apolarity: if f⊥ contains a homogeneous ideal I in Slip_{r,n}, then brk(f) <= r.",
        "A homogeneous ideal whose lex leading ideal is saturated is itself saturated.",
        "A saturated ideal of three variables with the Hilbert function of r general points lies in Slip_{r,3}, because the Hilbert scheme of r points in the plane is irreducible.",
        "Catalecticant bound: rank(Cat_f^j) <= brk(f) for every j.",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn notes() -> Vec<String> {
    vec![
        "Border apolarity is used in the upper-bound direction: a suitable ideal inside f⊥ bounds brk(f) from above by r.".into(),
        "Containment is checked on the y-coordinate images u = (y1 + i*y2)/2, v = (y1 - i*y2)/2, z = y3.".into(),
        "The Gröbner check orders generators by descending z-degree of their lex leading terms (z > u > v) and starts colon checks at the second generator.".into(),
        "The Hilbert function is checked on a finite window; its value for every a >= s comes from the closed-form count of standard monomials of J_{s+1}.".into(),
    ]
}

fn fail(step: &str, detail: impl Into<String>) -> CertifyError {
    CertifyError::CheckFailed { step: step.into(), detail: detail.into() }
}

struct CheckRun {
    checks: CertificateChecks,
    witness: BuchbergerWitness,
    timings: BTreeMap<String, f64>,
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(key.into(), start.elapsed().as_secs_f64() * 1000.0);
    out
}

/// Runs the six certification steps against the given generators of `I_{s+1}`.
fn run_checks(s: usize, generators: &[Poly], window: usize) -> Result<CheckRun, CertifyError> {
    let r = binomial(s + 2, 2);
    let d = s + 1;
    let mut timings = BTreeMap::new();

    let q = Poly::sum_of_squares(VariableFrame::x(3)).pow(s as u32);
    let to_y = LinearSubstitution::uvz_to_y();
    let (apolar_membership, harmonic) = timed(&mut timings, "1_apolar_membership", || {
        let mut member = Vec::new();
        for g in generators {
            member.push(contract(&to_y.apply(g)?, &q)?.is_zero());
        }
        Ok::<_, AlgebraError>((member, generators.iter().map(is_harmonic).collect::<Vec<_>>()))
    })?;

    let presentation = GradedIdealPresentation::new(VariableFrame::uvz(), generators.to_vec())?;
    let ordered: Vec<Poly> = generators.iter().rev().cloned().collect();
    let (mut presentation, witness) =
        timed(&mut timings, "2_groebner", || presentation.attach_groebner_basis(ordered))?;

    let jd = MonomialIdeal::power_of_variables(3, &[VariableFrame::Z, VariableFrame::U], d);
    let leading_ideal_equals_jd = presentation.leading_ideal() == Some(&jd);

    let (saturated, saturation_iterations) = timed(&mut timings, "4_saturation", || {
        let (sat, iterations) = jd.saturation();
        (sat == jd, iterations)
    });

    let hilbert_matches_h_r = timed(&mut timings, "5_hilbert", || {
        let mut values = Vec::new();
        let mut matches = presentation.groebner_basis().is_some();
        for a in 0..=window {
            let h = presentation.hilbert_function(a)?;
            matches &= h == generic_points_hilbert(r, a);
            matches &= two_variable_power_standard_count(d, a) == h;
            values.push(h);
        }
        Ok::<_, AlgebraError>(HilbertCheck {
            from: 0,
            to: window,
            values,
            matches,
            stable_from: s,
            stable_value: two_variable_power_standard_count(d, s),
        })
    })?;

    let catalecticant_rank = timed(&mut timings, "6_catalecticant", || catalecticant(&q, s).map(|c| c.rank))?;

    let checks = CertificateChecks {
        apolar_membership,
        harmonic,
        groebner_ok: witness.passed,
        leading_ideal_equals_jd,
        saturated,
        saturation_iterations,
        hilbert_matches_h_r,
        catalecticant_rank,
    };
    Ok(CheckRun { checks, witness, timings })
}

fn first_failure(c: &CertificateChecks, r: usize) -> Option<CertifyError> {
    if let Some(i) = c.apolar_membership.iter().position(|b| !b) {
        return Some(fail("apolar_membership", format!("generator {i} does not annihilate q_3^s")));
    }
    if let Some(i) = c.harmonic.iter().position(|b| !b) {
        return Some(fail("apolar_membership", format!("generator {i} is not harmonic")));
    }
    if !c.groebner_ok {
        return Some(fail("groebner", "a colon reduction left a nonzero remainder"));
    }
    if !c.leading_ideal_equals_jd {
        return Some(fail("leading_ideal", "leading ideal differs from J_{s+1}"));
    }
    if !c.saturated {
        return Some(fail("saturation", "J_{s+1} is not saturated"));
    }
    let h = &c.hilbert_matches_h_r;
    if !h.matches || h.stable_value != r {
        return Some(fail("hilbert", format!("values {:?} differ from min(C(a+2,2), {r})", h.values)));
    }
    if c.catalecticant_rank != r {
        return Some(fail("catalecticant", format!("rank {} differs from {r}", c.catalecticant_rank)));
    }
    None
}

/// Certifies `brk(q_3^s) = C(s+2, 2)` with the default Hilbert window `0..=2s+4`.
pub fn certify_border_rank_q3(s: usize) -> Result<BorderRankCertificate, CertifyError> {
    certify_border_rank_q3_with_window(s, 2 * s + 4)
}

pub fn certify_border_rank_q3_with_window(s: usize, window: usize) -> Result<BorderRankCertificate, CertifyError> {
    if s == 0 {
        return Err(AlgebraError::InvalidArgument("s must be at least 1".into()).into());
    }
    let r = binomial(s + 2, 2);
    let presentation = build_ideal_i(s + 1)?;
    let generators = presentation.generators().to_vec();
    let run = run_checks(s, &generators, window)?;
    if let Some(err) = first_failure(&run.checks, r) {
        return Err(err);
    }
    Ok(BorderRankCertificate {
        s,
        r,
        generator_count: generators.len(),
        generators: generators.iter().map(Poly::to_string).collect(),
        lower_bound: Bound {
            value: run.checks.catalecticant_rank,
            justification: format!("rank of the middle catalecticant of q_3^{s}"),
        },
        upper_bound: Bound {
            value: r,
            justification: format!(
                "I_{} is a saturated ideal inside (q_3^{s})⊥ with the Hilbert function of {r} general points",
                s + 1
            ),
        },
        checks: run.checks,
        groebner_witness: run.witness,
        assumed_theorems: assumed_theorems(),
        notes: notes(),
        conclusion: r,
        timings_ms: run.timings,
    })
}

/// Re-runs every check from the data recorded in `cert` and compares the
/// outcome with what the certificate claims.
pub fn verify_certificate(cert: &BorderRankCertificate) -> Result<bool, CertifyError> {
    let generators: Vec<Poly> =
        cert.generators.iter().map(|g| parse_poly(g, VariableFrame::uvz())).collect::<Result<_, _>>()?;
    let run = run_checks(cert.s, &generators, cert.checks.hilbert_matches_h_r.to)?;
    let r = binomial(cert.s + 2, 2);
    Ok(run.checks == cert.checks
        && run.witness == cert.groebner_witness
        && cert.r == r
        && cert.generator_count == generators.len()
        && cert.checks.all_pass(r)
        && cert.conclusion == r
        && cert.lower_bound.value == r
        && cert.upper_bound.value == r)
}

/// Rank of a ternary quadratic form and the resulting border rank of its powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticClassification {
    pub g: Poly,
    pub matrix_rank: usize,
}

impl QuadraticClassification {
    /// `brk(g^s) = C(s + rk − 1, rk − 1)`.
    pub fn brk(&self, s: usize) -> usize {
        binomial(s + self.matrix_rank - 1, self.matrix_rank - 1)
    }

    pub fn brk_formula(&self) -> &'static str {
        match self.matrix_rank {
            1 => "1",
            2 => "s+1",
            _ => "(s+1)(s+2)/2",
        }
    }
}

/// Exact rank of the symmetric coefficient matrix of a ternary quadratic.
pub fn classify_ternary_quadratic(g: &Poly) -> Result<QuadraticClassification, AlgebraError> {
    let frame = g.frame();
    if frame.n() != 3 || frame.kind() == FrameKind::Uvz {
        return Err(AlgebraError::UnsupportedFrame(frame));
    }
    if g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if g.homogeneous_degree() != Some(2) {
        return Err(AlgebraError::NotHomogeneous);
    }
    let half = GaussianRational::ratio(1, 2);
    let mut m = ExactMatrix::zeros(3, 3);
    for (mono, c) in g.terms() {
        let e = mono.exponents();
        let vars: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c * &half);
            m.set(j, i, c * &half);
        }
    }
    Ok(QuadraticClassification { g: g.clone(), matrix_rank: m.rank() })
}

/// `u = (y1 + i·y2)/2` and `v = (y1 − i·y2)/2` as dual forms in two variables.
fn binary_u_v() -> (Poly, Poly) {
    let y = VariableFrame::y(2);
    (parse_poly("(y1 + i*y2)/2", y).expect("valid"), parse_poly("(y1 - i*y2)/2", y).expect("valid"))
}

/// `f_{s+1} = u^{s+1} − λ·v^{s+1}` with `λ = e^{i(θ + i·k)}`, an element of
/// `(q_2^s)⊥` for every `θ, k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q2ApolarGenerator {
    pub s: usize,
    pub theta: f64,
    pub k: f64,
    pub lambda: Complex64,
    /// Present when `θ = k = 0`, where `λ = 1` and the generator is exact.
    pub exact: Option<Poly>,
    /// `exact ∘ q_2^s = 0`, computed in exact arithmetic.
    pub exact_annihilates: Option<bool>,
}

impl Q2ApolarGenerator {
    /// Complex angles `w_j = (2(j−1)π + θ + i·k) / (2(s+1))`, `j = 1..=s+1`.
    pub fn root_angles(&self) -> Vec<Complex64> {
        let m = 2.0 * (self.s as f64 + 1.0);
        (0..=self.s)
            .map(|j| Complex64::new(2.0 * j as f64 * PI + self.theta, self.k) / m)
            .collect()
    }
}

pub fn q2_apolar_generator(s: usize, theta: f64, k: f64) -> Result<Q2ApolarGenerator, AlgebraError> {
    if s == 0 {
        return Err(AlgebraError::InvalidArgument("s must be at least 1".into()));
    }
    let lambda = (Complex64::i() * Complex64::new(theta, k)).exp();
    let (exact, exact_annihilates) = if theta == 0.0 && k == 0.0 {
        let (u, v) = binary_u_v();
        let f = &u.pow(s as u32 + 1) - &v.pow(s as u32 + 1);
        let q = Poly::sum_of_squares(VariableFrame::x(2)).pow(s as u32);
        let zero = contract(&f, &q)?.is_zero();
        (Some(f), Some(zero))
    } else {
        (None, None)
    };
    Ok(Q2ApolarGenerator { s, theta, k, lambda, exact, exact_annihilates })
}

/// `r(s) = ((s+1)·C(2s, s))^{−1/(2s)}`.
pub fn q2_radius(s: usize) -> f64 {
    ((s as f64 + 1.0) * binomial(2 * s, s) as f64).powf(-1.0 / (2.0 * s as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q2Decomposition {
    pub s: usize,
    pub theta: f64,
    pub k: f64,
    pub radius: f64,
    /// `(2r·cos w_j, 2r·sin w_j)`; complex when `k ≠ 0`.
    pub points: Vec<[Complex64; 2]>,
    /// Largest coefficient error of `Σ_j ℓ_j^{2s} − q_2^s`, divided by the
    /// largest coefficient of `q_2^s`.
    pub residual: f64,
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

/// Writes `q_2^s` as a sum of `s+1` powers `ℓ_j^{2s}` and measures the error.
pub fn decompose_q2(s: usize, theta: f64, k: f64, tol: f64) -> Result<Q2Decomposition, CertifyError> {
    if s == 0 || tol <= 0.0 || !tol.is_finite() {
        return Err(AlgebraError::InvalidArgument("need s >= 1 and tol > 0".into()).into());
    }
    let radius = q2_radius(s);
    let generator = q2_apolar_generator(s, theta, k)?;
    let points: Vec<[Complex64; 2]> =
        generator.root_angles().iter().map(|w| [w.cos() * 2.0 * radius, w.sin() * 2.0 * radius]).collect();
    let deg = 2 * s;
    let mut residual: f64 = 0.0;
    let scale = (0..=s).map(|a| binomial_f64(s, a)).fold(0.0, f64::max);
    for a in 0..=deg {
        // coefficient of x1^a x2^(2s−a)
        let sum: Complex64 = points.iter().map(|p| p[0].powu(a as u32) * p[1].powu((deg - a) as u32)).sum();
        let got = sum * binomial_f64(deg, a);
        let want = if a % 2 == 0 { binomial_f64(s, a / 2) } else { 0.0 };
        residual = residual.max((got - want).norm() / scale);
    }
    if residual.is_nan() || residual >= tol {
        return Err(CertifyError::Residual { residual, tol });
    }
    Ok(Q2Decomposition { s, theta, k, radius, points, residual })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub m: usize,
    pub apolar_dim: usize,
    pub ideal_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApolarTheoremReport {
    pub n: usize,
    pub s: usize,
    pub degrees: Vec<DegreeComparison>,
    pub holds: bool,
}

/// Compares `(q_n^s)⊥_m` with the degree-`m` part of the ideal generated by
/// the degree-`(s+1)` harmonics, as subspaces, for `m = 0..=2s+max_extra_degree`.
pub fn verify_apolar_ideal_theorem(n: usize, s: usize, max_extra_degree: usize) -> Result<ApolarTheoremReport, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidArgument("n must be positive".into()));
    }
    let y = VariableFrame::y(n);
    let q = Poly::sum_of_squares(VariableFrame::x(n)).pow(s as u32);
    let harmonics = harmonic_basis(y, s + 1);
    let mut degrees = Vec::new();
    for m in 0..=2 * s + max_extra_degree {
        let basis = MonomialBasis::new(y, m);
        let mut apolar = SparseEchelon::new();
        for p in apolar_component(&q, m)?.basis {
            apolar.insert(basis.coordinates(&p));
        }
        let mut ideal = SparseEchelon::new();
        if m > s {
            'outer: for h in &harmonics {
                for mono in MultiIndex::all_of_degree(n, m - s - 1) {
                    ideal.insert(basis.coordinates(&h.mul_term(&mono, &GaussianRational::one())));
                    if ideal.rank() == basis.len() {
                        break 'outer;
                    }
                }
            }
        }
        let (apolar_dim, ideal_dim) = (apolar.rank(), ideal.rank());
        let equal = apolar_dim == ideal_dim && ideal.into_rows().into_iter().all(|row| apolar.contains(row));
        degrees.push(DegreeComparison { m, apolar_dim, ideal_dim, equal });
    }
    let holds = degrees.iter().all(|d| d.equal);
    Ok(ApolarTheoremReport { n, s, degrees, holds })
}
