//! Named verification checks, run for a rank `n` over a coefficient ring.
//!
//! Every check is deterministic given its seed. A check that does not apply
//! to a configuration returns a skipped verdict carrying the reason.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    canonical_ineligibility, canonical_semitrace, check_sl_into_alt, correspondence_with_q_wedge, degree4_alt_check,
    degree4_no_canonical, representative_independence, rho_xi_check, semitrace_defining_property, sl_counterexample,
    CanonicalMap, SplitTripleElement,
};
use crate::clifford::{CliffordAlgebra, EvenInvolutionType, MonomialBasis, MAX_MONOMIAL_RANK};
use crate::error::{AlgebraError, Result};
use crate::exterior::{ExteriorVector, SubsetIndex};
use crate::forms::{b_wedge, b_wedge_gram, b_wedge_signed_perm, b_wedge_via_reversal, classify_bilinear, q_wedge, q_wedge_polar_expected, BilinearClass, QuadraticForm};
use crate::group::{pgo_invariance, pgo_negative_control};
use crate::involution::{Domain, InvolutionSpaces};
use crate::linalg::Matrix;
use crate::report::Verdict;
use crate::ring::{Gf2, Gf2ToGf4, Gf3, Gf4, Gf5, Integer, Rational, Ring, RingHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Relations,
    Gram,
    Classify,
    Polar,
    SlIntoAlt,
    RhoXi,
    CanonicalSemitrace,
    QWedgeCorrespondence,
    PgoInvariance,
    Degree4Alt,
    Degree4Counterexample,
    BaseChange,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::Relations,
        CheckId::Gram,
        CheckId::Classify,
        CheckId::Polar,
        CheckId::SlIntoAlt,
        CheckId::RhoXi,
        CheckId::CanonicalSemitrace,
        CheckId::QWedgeCorrespondence,
        CheckId::PgoInvariance,
        CheckId::Degree4Alt,
        CheckId::Degree4Counterexample,
        CheckId::BaseChange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Relations => "relations",
            CheckId::Gram => "gram",
            CheckId::Classify => "classify",
            CheckId::Polar => "polar",
            CheckId::SlIntoAlt => "sl-into-alt",
            CheckId::RhoXi => "rho-xi",
            CheckId::CanonicalSemitrace => "canonical-semitrace",
            CheckId::QWedgeCorrespondence => "q-wedge-correspondence",
            CheckId::PgoInvariance => "pgo-invariance",
            CheckId::Degree4Alt => "degree4-alt",
            CheckId::Degree4Counterexample => "degree4-counterexample",
            CheckId::BaseChange => "base-change",
        }
    }

    /// Ranks run when none is given.
    pub fn default_ranks(self) -> Vec<usize> {
        match self {
            CheckId::Relations => (1..=6).collect(),
            CheckId::Gram | CheckId::Polar => (1..=5).collect(),
            CheckId::Classify => (2..=5).collect(),
            CheckId::SlIntoAlt | CheckId::RhoXi => vec![2, 3, 4],
            CheckId::CanonicalSemitrace => vec![2, 4, 6],
            CheckId::QWedgeCorrespondence => vec![4, 6],
            CheckId::PgoInvariance => vec![2, 4],
            CheckId::Degree4Alt | CheckId::Degree4Counterexample => vec![2],
            CheckId::BaseChange => vec![4],
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| AlgebraError::BadLabel(format!("unknown check {s:?}")))
    }
}

/// The coefficient rings a check can be run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingTag {
    Gf2,
    Gf3,
    Gf4,
    Gf5,
    Q,
    Z,
}

impl RingTag {
    pub const ALL: [RingTag; 6] = [RingTag::Gf2, RingTag::Gf3, RingTag::Gf4, RingTag::Gf5, RingTag::Q, RingTag::Z];
    pub const DEFAULT: [RingTag; 4] = [RingTag::Gf2, RingTag::Gf3, RingTag::Gf4, RingTag::Q];

    pub fn name(self) -> &'static str {
        match self {
            RingTag::Gf2 => Gf2::TAG,
            RingTag::Gf3 => Gf3::TAG,
            RingTag::Gf4 => Gf4::TAG,
            RingTag::Gf5 => Gf5::TAG,
            RingTag::Q => Rational::TAG,
            RingTag::Z => Integer::TAG,
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        RingTag::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| AlgebraError::BadLabel(format!("unknown ring {s:?}")))
    }
}

/// Sample counts of a run. Secondary counts are derived from `trials`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub trials: usize,
}

impl Budget {
    pub fn new(trials: usize) -> Self {
        Budget { trials }
    }

    /// Orthogonal elements sampled for group invariance.
    pub fn group_samples(self) -> usize {
        (self.trials / 2).max(1)
    }

    /// Trace-one representatives compared for independence.
    pub fn representatives(self) -> usize {
        (self.trials / 5).max(1)
    }

    /// Inputs compared under base change.
    pub fn base_change_samples(self) -> usize {
        (self.trials / 5).max(1)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(100)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the random stream for one configuration, derived from the run
/// seed so that configurations are independent of run order.
pub fn derive_seed(seed: u64, check: CheckId, n: usize, ring: RingTag) -> u64 {
    let mut h = splitmix64(seed);
    for part in [check as u64, n as u64, ring as u64] {
        h = splitmix64(h ^ part);
    }
    h
}

/// Runs one check. Algebraic errors become an error verdict.
pub fn run(check: CheckId, n: usize, ring: RingTag, budget: Budget, seed: u64) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, check, n, ring));
    let result = match ring {
        RingTag::Gf2 => run_in::<Gf2>(check, n, budget, &mut rng),
        RingTag::Gf3 => run_in::<Gf3>(check, n, budget, &mut rng),
        RingTag::Gf4 => run_in::<Gf4>(check, n, budget, &mut rng),
        RingTag::Gf5 => run_in::<Gf5>(check, n, budget, &mut rng),
        RingTag::Q => run_in::<Rational>(check, n, budget, &mut rng),
        RingTag::Z => run_in::<Integer>(check, n, budget, &mut rng),
    };
    result.unwrap_or_else(|e| Verdict::errored(&e))
}

fn run_in<R: Ring>(check: CheckId, n: usize, budget: Budget, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    if n == 0 {
        return Err(AlgebraError::UnsupportedRank { n, min: 1, max: crate::exterior::MAX_RANK });
    }
    let field = || R::require_field().err().map(|_| Verdict::skipped(format!("requires a field, {} is not one", R::TAG)));
    match check {
        CheckId::Relations => Ok(CliffordAlgebra::<R>::new(n)?.relation_suite(budget.trials, rng)),
        CheckId::Gram => gram_suite::<R>(n, budget.trials, rng),
        CheckId::Classify => classify::<R>(n, rng),
        CheckId::Polar => polar::<R>(n),
        CheckId::SlIntoAlt => match field() {
            Some(skip) => Ok(skip),
            None => sl_into_alt::<R>(n, budget.trials, rng),
        },
        CheckId::RhoXi => {
            let alg = CliffordAlgebra::<R>::new(n)?;
            rho_xi_check(&alg, &CanonicalMap::new(&alg), budget.trials, rng)
        }
        CheckId::CanonicalSemitrace => match canonical_ineligibility::<R>(n) {
            Some(reason) => Ok(Verdict::skipped(reason)),
            None => match field() {
                Some(skip) => Ok(skip),
                None => canonical_semitrace_suite::<R>(n, budget, rng),
            },
        },
        CheckId::QWedgeCorrespondence => match canonical_ineligibility::<R>(n) {
            Some(reason) => Ok(Verdict::skipped(reason)),
            None => {
                let alg = CliffordAlgebra::<R>::new(n)?;
                let f = canonical_semitrace(&alg, &CanonicalMap::new(&alg))?;
                correspondence_with_q_wedge(&alg, &f, budget.trials, rng)
            }
        },
        CheckId::PgoInvariance => match field() {
            Some(skip) => Ok(skip),
            None => pgo::<R>(n, budget, rng),
        },
        CheckId::Degree4Alt | CheckId::Degree4Counterexample => {
            if n != 2 {
                return Ok(Verdict::skipped("defined for rank 2 only"));
            }
            if R::characteristic() != 2 {
                return Ok(Verdict::skipped("requires characteristic 2"));
            }
            if check == CheckId::Degree4Alt {
                degree4_alt_check::<R>()
            } else {
                degree4_no_canonical::<R>()
            }
        }
        CheckId::BaseChange => {
            if R::TAG != Gf2::TAG {
                return Ok(Verdict::skipped("base change runs from gf2 to gf4"));
            }
            base_change(n, budget.base_change_samples(), rng)
        }
    }
}

/// `b_∧` against `π(x̄ ∧ y)` on all basis pairs, regularity of the Gram
/// matrix, its classification, and the involution identities.
fn gram_suite<R: Ring>(n: usize, trials: usize, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let mut v = Verdict::new();
    let basis: Vec<ExteriorVector<R>> = SubsetIndex::all(n).map(ExteriorVector::basis).collect::<Result<_>>()?;
    if n <= 5 {
        for x in &basis {
            for y in &basis {
                let (lhs, rhs) = (b_wedge(x, y)?, b_wedge_via_reversal(x, y)?);
                v.check(lhs == rhs, || format!("b_wedge({x}, {y}) = {lhs}, pi(rev(x) ^ y) = {rhs}"));
            }
        }
    }
    let gram = b_wedge_gram::<R>(n)?;
    let perm = b_wedge_signed_perm::<R>(n)?;
    v.check_matrices(|| "Gram times inverse".into(), &(&gram * &perm.inverse().to_matrix()), &Matrix::identity(gram.rows()));
    let class = classify_bilinear(&gram);
    let expected = expected_b_wedge_class::<R>(n);
    v.check(class == expected, || format!("b_wedge classified {class}, expected {expected}"));
    v.note(format!("b_wedge is {class}"));
    if n <= 3 {
        v.note(format!("Gram matrix: {gram}"));
    }
    let alg = CliffordAlgebra::<R>::new(n)?;
    for k in 0..2 * n {
        let g = alg.generator(k);
        v.check_matrices(|| format!("tau fixes {}", alg.space().generator(k)), alg.involution(g).matrix(), g.matrix());
    }
    for _ in 0..trials {
        let (x, y) = (alg.random_element(rng), alg.random_element(rng));
        let tx = alg.involution(&x);
        v.check_matrices(|| "tau(tau(x)) = x".into(), alg.involution(&tx).matrix(), x.matrix());
        let lhs = alg.involution(&(&x * &y));
        let rhs = &alg.involution(&y) * &tx;
        v.check_matrices(|| "tau(xy) = tau(y) tau(x)".into(), lhs.matrix(), rhs.matrix());
    }
    Ok(v)
}

/// Symmetric for `n ≡ 0, 1 (mod 4)`, alternating for `n ≡ 2, 3`; both in
/// characteristic 2.
pub fn expected_b_wedge_class<R: Ring>(n: usize) -> BilinearClass {
    let symmetric = n % 4 <= 1 || R::characteristic() == 2;
    let alternating = n % 4 >= 2 || R::characteristic() == 2;
    BilinearClass { symmetric, skew: alternating, alternating }
}

/// Labels of the type of `τ` on the even part: `center-nontrivial` for odd
/// `n`, otherwise orthogonal for `n ≡ 0 (mod 4)`, symplectic for
/// `n ≡ 2 (mod 4)`, and both when `2 = 0`.
pub fn expected_involution_labels<R: Ring>(n: usize) -> Vec<&'static str> {
    if n % 2 == 1 {
        vec!["center-nontrivial"]
    } else if R::characteristic() == 2 {
        vec!["orthogonal", "symplectic"]
    } else if n % 4 == 0 {
        vec!["orthogonal"]
    } else {
        vec!["symplectic"]
    }
}

fn classify<R: Ring>(n: usize, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let alg = CliffordAlgebra::<R>::new(n)?;
    let mut v = Verdict::new();
    let kind: EvenInvolutionType = alg.classify_even_involution();
    let expected = expected_involution_labels::<R>(n);
    v.check(kind.labels() == expected, || format!("classified {}, expected {}", kind, expected.join("+")));
    let (e0, e1) = alg.center_idempotents();
    for _ in 0..20 {
        let x = alg.random_even(rng);
        for e in [&e0, &e1] {
            v.check_matrices(|| "central idempotent commutes with even x".into(), (e * &x).matrix(), (&x * e).matrix());
        }
    }
    v.check((alg.involution(&e1) == e1) == (n % 2 == 0), || format!("tau on the odd-block idempotent at n = {n}"));
    v.note(kind.to_string());
    Ok(v)
}

fn polar<R: Ring>(n: usize) -> Result<Verdict> {
    let mut v = Verdict::new();
    let polar = QuadraticForm::<R>::wedge(n)?.polar_gram();
    let gram = b_wedge_gram::<R>(n)?;
    let equal = polar.gram() == &gram;
    let expected = q_wedge_polar_expected::<R>(n);
    v.check(equal == expected, || {
        if expected {
            format!("polar(q_wedge) != b_wedge: {}", crate::report::matrix_difference(polar.gram(), &gram))
        } else {
            "polar(q_wedge) = b_wedge, expected a difference".into()
        }
    });
    v.note(if equal { "polar(q_wedge) = b_wedge" } else { "polar(q_wedge) != b_wedge" });
    Ok(v)
}

fn sl_into_alt<R: Ring>(n: usize, trials: usize, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let alg = CliffordAlgebra::<R>::new(n)?;
    let spaces = InvolutionSpaces::new(&alg, Domain::Even)?;
    let map = CanonicalMap::new(&alg);
    match n {
        1 => Ok(Verdict::skipped("rank 1 is not covered")),
        2 if R::characteristic() != 2 => Ok(Verdict::skipped("rank-2 negative control requires characteristic 2")),
        2 => {
            let mut v = Verdict::new();
            let in_alt = sl_counterexample(&spaces, &map)?;
            v.check(!in_alt, || "c(v1 ⊗ v2) = v1 v2 is alternating".into());
            v.note("c(v1 ⊗ v2) = v1 v2 is not alternating");
            Ok(v)
        }
        _ => check_sl_into_alt(&spaces, &map, trials / 2, rng),
    }
}

fn canonical_semitrace_suite<R: Ring>(n: usize, budget: Budget, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let alg = CliffordAlgebra::<R>::new(n)?;
    let map = CanonicalMap::new(&alg);
    let f = canonical_semitrace(&alg, &map)?;
    let spaces = InvolutionSpaces::new(&alg, Domain::Even)?;
    let mut v = Verdict::new();
    let one = f.evaluate(&alg.identity());
    let expected = R::from_i64(1 << (n - 1));
    v.check(one == expected, || format!("f(1) = {one}, expected 2^(n-1) = {expected}"));
    v.absorb(representative_independence(&spaces, &map, &f, budget.representatives(), rng)?);
    v.absorb(semitrace_defining_property(&alg, &f, budget.trials, rng));
    v.note(format!("f(x + tau(x)) = Trd(x) on {} random even x, f(1) = {one}", budget.trials));
    v.absorb(correspondence_with_q_wedge(&alg, &f, budget.trials, rng)?);
    Ok(v)
}

fn pgo<R: Ring>(n: usize, budget: Budget, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    if n == 2 && R::characteristic() == 2 {
        if R::elements().is_some_and(|e| e.iter().any(|t| t.clone() * t.clone() != *t)) {
            return pgo_negative_control::<R>();
        }
        return Ok(Verdict::skipped(format!("rank-2 negative control needs t with t^2 != t, none in {}", R::TAG)));
    }
    if let Some(reason) = canonical_ineligibility::<R>(n) {
        return Ok(Verdict::skipped(reason));
    }
    if n > MAX_MONOMIAL_RANK {
        return Ok(Verdict::skipped(format!("monomial action limited to n <= {MAX_MONOMIAL_RANK}")));
    }
    let alg = CliffordAlgebra::<R>::new(n)?;
    let spaces = InvolutionSpaces::new(&alg, Domain::Even)?;
    let basis = MonomialBasis::new(&alg)?;
    pgo_invariance(&spaces, &basis, budget.group_samples(), rng)
}

fn embed(x: &Gf2) -> Gf4 {
    Gf2ToGf4.apply(x)
}

/// The computations behind the relation, Gram, polar, classification,
/// `sl → Alt`, `ρ/ξ` and semi-trace checks commute with `GF(2) ⊂ GF(4)`.
fn base_change(n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let a2 = CliffordAlgebra::<Gf2>::new(n)?;
    let a4 = CliffordAlgebra::<Gf4>::new(n)?;
    let map2 = CanonicalMap::new(&a2);
    let map4 = CanonicalMap::new(&a4);
    let s2 = InvolutionSpaces::new(&a2, Domain::Even)?;
    let s4 = InvolutionSpaces::new(&a4, Domain::Even)?;
    let semitraces = match canonical_ineligibility::<Gf2>(n) {
        None => Some((canonical_semitrace(&a2, &map2)?, canonical_semitrace(&a4, &map4)?)),
        Some(_) => None,
    };
    let sym = s2.basis_elements(s2.sym());
    let mut v = Verdict::new();
    for _ in 0..samples {
        // relations: Φ(m) and q(m)
        let m = a2.random_vector(rng);
        let m4: Vec<Gf4> = m.iter().map(embed).collect();
        let phi2 = a2.phi_vector(&m)?;
        v.check(phi2.map(embed) == a4.phi_vector(&m4)?, || "Phi(m) does not commute with base change".into());
        let sq = (&phi2 * &phi2).map(embed);
        v.check(sq == a4.scalar(crate::forms::q_hyperbolic(&m4)), || "Phi(m)^2 = q(m) after base change".into());

        // Gram, involution and polar form on random exterior vectors
        let (x, y) = (ExteriorVector::<Gf2>::random(n, rng)?, ExteriorVector::<Gf2>::random(n, rng)?);
        let (x4, y4) = (ExteriorVector::from_coeffs(n, x.coeffs().iter().map(embed).collect())?, ExteriorVector::from_coeffs(n, y.coeffs().iter().map(embed).collect())?);
        v.check(embed(&b_wedge(&x, &y)?) == b_wedge(&x4, &y4)?, || format!("b_wedge({x}, {y}) under base change"));
        v.check(embed(&q_wedge(&x)) == q_wedge(&x4), || format!("q_wedge({x}) under base change"));
        let z = a2.random_element(rng);
        v.check(a2.involution(&z).map(embed) == a4.involution(&z.map(embed)), || "tau under base change".into());

        // c and ρ/ξ on random matrices
        let t = SplitTripleElement::<Gf2>::random(n, rng);
        let t4 = t.map(embed);
        let c2 = map2.apply(&t)?;
        let c4 = map4.apply(&t4)?;
        v.check(c2.map(embed) == c4, || format!("c(M) under base change for M = {}", t.matrix()));
        let rho4 = &c4 + &a4.involution(&c4);
        v.check(rho4 == a4.scalar(embed(&t.trace())), || "(1 + tau)(c(M)) = Trd(M) after base change".into());

        // Alt membership of c(M) for trace-zero M
        let t0 = SplitTripleElement::<Gf2>::random_with_trace(n, Gf2::zero(), rng);
        let (in2, in4) = (s2.in_alternating(&map2.apply(&t0)?)?, s4.in_alternating(&map4.apply(&t0.map(embed))?)?);
        v.check(in2 == in4, || format!("Alt membership of c(M) differs: gf2 {in2}, gf4 {in4}"));

        // the canonical semi-trace on a random symmetric element
        if let Some((f2, f4)) = &semitraces {
            let w = a2.random_even(rng);
            let s = &w + &a2.involution(&w);
            v.check(embed(&f2.evaluate(&s)) == f4.evaluate(&s.map(embed)), || "semi-trace under base change".into());
            let k = rand::Rng::gen_range(rng, 0..sym.len());
            v.check(embed(&f2.evaluate(&sym[k])) == f4.evaluate(&sym[k].map(embed)), || format!("semi-trace on sym basis vector {k}"));
        }
    }
    let (k2, k4) = (a2.classify_even_involution(), a4.classify_even_involution());
    v.check(k2.labels() == k4.labels(), || format!("involution type {k2} over gf2, {k4} over gf4"));
    v.check(
        q_wedge_polar_expected::<Gf2>(n) == q_wedge_polar_expected::<Gf4>(n)
            && (QuadraticForm::<Gf4>::wedge(n)?.polar_gram().gram() == &b_wedge_gram::<Gf4>(n)?) == (QuadraticForm::<Gf2>::wedge(n)?.polar_gram().gram() == &b_wedge_gram::<Gf2>(n)?),
        || "polar identity differs between gf2 and gf4".into(),
    );
    v.note(format!("{samples} sampled inputs per item"));
    if semitraces.is_none() {
        v.note(format!("semi-trace item not applicable at n = {n}"));
    }
    Ok(v)
}
