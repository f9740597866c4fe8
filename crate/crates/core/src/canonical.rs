//! The canonical map `c : End(H(V)) → Cl`, the canonical semi-trace on the
//! even Clifford algebra, and the degree-4 obstruction.
//!
//! `End(H(V))` is identified with `H(V) ⊗ H(V)` through
//! `φ_b(m_1 ⊗ m_2) = b(m_1, -)·m_2`, and `c(φ_b(m_1 ⊗ m_2)) = Φ(m_1)Φ(m_2)`.
//! With the antidiagonal polar form, the matrix unit `E_{r,c}` is
//! `φ_b(e_{c'} ⊗ e_r)` where `c'` is the partner of `c`.

use crate::clifford::{fmt_vector, CliffordAlgebra, CliffordElement, MonomialBasis};
use crate::error::{AlgebraError, Result};
use crate::exterior::{ExteriorVector, Parity, SubsetIndex};
use crate::forms::{b_wedge, hyperbolic_polar_gram, q_wedge, Generator, HyperbolicSpace};
use crate::group::{rank_two_transvection, CliffordAction, OrthogonalElement};
use crate::involution::{semi_trace_from, InvolutionSpaces, SemiTrace};
use crate::linalg::{dot, Matrix};
use crate::report::Verdict;
use crate::ring::Ring;

/// An endomorphism of `H(V)` as a `2n × 2n` matrix in the basis
/// `v_1, ..., v_n, v_n^*, ..., v_1^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTripleElement<R> {
    n: usize,
    matrix: Matrix<R>,
}

impl<R: Ring> SplitTripleElement<R> {
    pub fn new(n: usize, matrix: Matrix<R>) -> Result<Self> {
        HyperbolicSpace::new(n)?;
        if matrix.rows() != 2 * n || matrix.cols() != 2 * n {
            return Err(AlgebraError::ShapeMismatch(format!("{}x{} matrix on H(V) of rank {}", matrix.rows(), matrix.cols(), 2 * n)));
        }
        Ok(SplitTripleElement { n, matrix })
    }

    pub fn zero(n: usize) -> Self {
        SplitTripleElement { n, matrix: Matrix::zeros(2 * n, 2 * n) }
    }

    pub fn identity(n: usize) -> Self {
        SplitTripleElement { n, matrix: Matrix::identity(2 * n) }
    }

    /// The matrix unit `E_{r,c}` (0-based).
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Matrix::zeros(2 * n, 2 * n);
        m[(r, c)] = R::one();
        SplitTripleElement { n, matrix: m }
    }

    /// `E_{2n,2n}`, the trace-one element used for the canonical semi-trace.
    pub fn default_trace_one(n: usize) -> Self {
        Self::unit(n, 2 * n - 1, 2 * n - 1)
    }

    pub fn random<G: rand::Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        SplitTripleElement { n, matrix: Matrix::random(2 * n, 2 * n, rng) }
    }

    /// Random element with the given trace, adjusted in entry `(0, 0)`.
    pub fn random_with_trace<G: rand::Rng + ?Sized>(n: usize, trace: R, rng: &mut G) -> Self {
        let mut m = Self::random(n, rng);
        let t = m.trace();
        m.matrix[(0, 0)] = m.matrix[(0, 0)].clone() - t + trace;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn trace(&self) -> R {
        self.matrix.trace()
    }

    /// The adjoint involution of the polar of `q_{2n}`: `G B^T G`.
    pub fn adjoint(&self) -> Self {
        let g = hyperbolic_polar_gram::<R>(self.n);
        SplitTripleElement { n: self.n, matrix: &(&g * &self.matrix.transpose()) * &g }
    }

    pub fn map<T: Ring>(&self, f: impl FnMut(&R) -> T) -> SplitTripleElement<T> {
        SplitTripleElement { n: self.n, matrix: self.matrix.map(f) }
    }
}

/// `φ_b(x ⊗ y) : m ↦ b(x, m)·y` for `x, y ∈ H(V)`.
pub fn phi_b_tensor<R: Ring>(n: usize, x: &[R], y: &[R]) -> Result<SplitTripleElement<R>> {
    let space = HyperbolicSpace::new(n)?;
    if x.len() != space.dim() || y.len() != space.dim() {
        return Err(AlgebraError::ShapeMismatch("vectors must lie in H(V)".into()));
    }
    let m = Matrix::from_fn(space.dim(), space.dim(), |r, c| y[r].clone() * x[space.partner(c)].clone());
    SplitTripleElement::new(n, m)
}

/// The canonical map `c`, with the products `Φ(e_a)Φ(e_b)` precomputed.
#[derive(Clone, Debug)]
pub struct CanonicalMap<R> {
    n: usize,
    /// `products[r * 2n + c] = c(E_{r,c})`
    products: Vec<CliffordElement<R>>,
}

impl<R: Ring> CanonicalMap<R> {
    pub fn new(alg: &CliffordAlgebra<R>) -> Self {
        let space = alg.space();
        let d = space.dim();
        let products = (0..d * d)
            .map(|k| {
                let (r, c) = (k / d, k % d);
                alg.generator(space.partner(c)) * alg.generator(r)
            })
            .collect();
        CanonicalMap { n: alg.n(), products }
    }

    pub fn apply(&self, m: &SplitTripleElement<R>) -> Result<CliffordElement<R>> {
        if m.n != self.n {
            return Err(AlgebraError::RankMismatch { left: m.n, right: self.n });
        }
        let dim = 1usize << self.n;
        let mut out = Matrix::zeros(dim, dim);
        for (coeff, prod) in m.matrix.as_slice().iter().zip(&self.products) {
            out.add_scaled(coeff, prod.matrix());
        }
        CliffordElement::from_matrix(self.n, out)
    }
}

/// One element of the trace-zero basis of `H(V) ⊗ H(V)`: a signed sum of
/// pure tensors of basis vectors.
#[derive(Clone, Debug)]
pub struct SlBasisElement {
    /// 1: squares of a basis vector, 2: pure tensors of distinct indices,
    /// 3: differences of pairing tensors.
    pub row: usize,
    pub terms: Vec<(i64, Generator, Generator)>,
}

impl SlBasisElement {
    pub fn label(&self) -> String {
        let mut s = String::new();
        for (k, (sign, x, y)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(if *sign < 0 { " - " } else { " + " });
            } else if *sign < 0 {
                s.push('-');
            }
            s.push_str(&format!("{x}⊗{y}"));
        }
        s
    }

    pub fn to_matrix<R: Ring>(&self, n: usize) -> Result<SplitTripleElement<R>> {
        let space = HyperbolicSpace::new(n)?;
        let mut m = SplitTripleElement::zero(n);
        for (sign, x, y) in &self.terms {
            let t = phi_b_tensor(n, &space.unit_vector(space.position(*x)?), &space.unit_vector(space.position(*y)?))?;
            m.matrix.add_scaled(&R::from_i64(*sign), &t.matrix);
        }
        Ok(m)
    }

    /// Indices `i` such that `v_i` or `v_i^*` occurs.
    pub fn indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.iter().flat_map(|(_, x, y)| [x.index(), y.index()]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A basis of the trace-zero endomorphisms of `H(V)`, written as tensors:
/// `v_i⊗v_i`, `v_i^*⊗v_i^*`; `x⊗y` for basis vectors `x, y` of distinct
/// indices; `v_i⊗v_i^* - v_{i+1}⊗v_{i+1}^*`,
/// `v_{i+1}^*⊗v_{i+1} - v_i^*⊗v_i` and `v_n⊗v_n^* - v_n^*⊗v_n`.
pub fn sl_basis(n: usize) -> Vec<SlBasisElement> {
    use Generator::{Dual, Plain};
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(SlBasisElement { row: 1, terms: vec![(1, Plain(i), Plain(i))] });
        out.push(SlBasisElement { row: 1, terms: vec![(1, Dual(i), Dual(i))] });
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for (x, y) in [(Plain(i), Plain(j)), (Plain(i), Dual(j)), (Dual(i), Plain(j)), (Dual(i), Dual(j))] {
                out.push(SlBasisElement { row: 2, terms: vec![(1, x, y)] });
            }
        }
    }
    for i in 1..n {
        out.push(SlBasisElement { row: 3, terms: vec![(1, Plain(i), Dual(i)), (-1, Plain(i + 1), Dual(i + 1))] });
        out.push(SlBasisElement { row: 3, terms: vec![(1, Dual(i + 1), Plain(i + 1)), (-1, Dual(i), Plain(i))] });
    }
    out.push(SlBasisElement { row: 3, terms: vec![(1, Plain(n), Dual(n)), (-1, Dual(n), Plain(n))] });
    out
}

/// Checks `c(x) = w - τ(w)` for `w = c(x)·Φ(v_k)Φ(v_k^*)`, with `k` an index
/// not occurring in `x`. This certifies `c(x) ∈ Alt` over any ring.
pub fn alt_certificate<R: Ring>(alg: &CliffordAlgebra<R>, cx: &CliffordElement<R>, k: usize) -> Result<bool> {
    let vk = alg.phi(Generator::Plain(k))?;
    let vkd = alg.phi(Generator::Dual(k))?;
    let w = &(cx * vk) * vkd;
    Ok(&w - &alg.involution(&w) == *cx)
}

/// Every listed trace-zero basis element, and `trials` random trace-zero
/// matrices, map into `Alt`.
pub fn check_sl_into_alt<R: Ring, G: rand::Rng + ?Sized>(
    spaces: &InvolutionSpaces<R>,
    map: &CanonicalMap<R>,
    trials: usize,
    rng: &mut G,
) -> Result<Verdict> {
    let alg = spaces.algebra();
    let n = alg.n();
    let mut v = Verdict::new();
    let basis = sl_basis(n);
    let mut certified = 0;
    for e in &basis {
        let m = e.to_matrix::<R>(n)?;
        v.check(m.trace().is_zero(), || format!("{} has trace {}", e.label(), m.trace()));
        let cx = map.apply(&m)?;
        v.check(spaces.in_alternating(&cx)?, || format!("c({}) is not alternating", e.label()));
        if let Some(k) = (1..=n).find(|k| !e.indices().contains(k)) {
            if alt_certificate(alg, &cx, k)? {
                certified += 1;
            }
        }
    }
    for _ in 0..trials {
        let m = SplitTripleElement::random_with_trace(n, R::zero(), rng);
        let cx = map.apply(&m)?;
        v.check(spaces.in_alternating(&cx)?, || format!("c(M) is not alternating for trace-zero M = {}", m.matrix()));
    }
    v.note(format!("{} basis elements and {trials} random trace-zero matrices map into Alt", basis.len()));
    v.note(format!("{certified} of {} basis images certified as w - tau(w)", basis.len()));
    Ok(v)
}

/// `c(v_1 ⊗ v_2) = Φ(v_1)Φ(v_2)` and whether it is alternating.
pub fn sl_counterexample<R: Ring>(spaces: &InvolutionSpaces<R>, map: &CanonicalMap<R>) -> Result<bool> {
    let n = spaces.algebra().n();
    let e = SlBasisElement { row: 2, terms: vec![(1, Generator::Plain(1), Generator::Plain(2))] };
    spaces.in_alternating(&map.apply(&e.to_matrix(n)?)?)
}

/// `(Id + τ)(c(M)) = Trd(M)·Id` for `E_{2n,2n}`, `0` and `trials` random `M`.
pub fn rho_xi_check<R: Ring, G: rand::Rng + ?Sized>(
    alg: &CliffordAlgebra<R>,
    map: &CanonicalMap<R>,
    trials: usize,
    rng: &mut G,
) -> Result<Verdict> {
    let n = alg.n();
    let mut v = Verdict::new();
    let mut inputs = vec![SplitTripleElement::default_trace_one(n), SplitTripleElement::zero(n)];
    inputs.extend((0..trials).map(|_| SplitTripleElement::random(n, rng)));
    for m in &inputs {
        let cm = map.apply(m)?;
        let lhs = &cm + &alg.involution(&cm);
        let rhs = alg.scalar(m.trace());
        v.check_matrices(|| format!("(1 + tau)(c(M)) = Trd(M) for M = {}, Trd(M) = {}", m.matrix(), m.trace()), lhs.matrix(), rhs.matrix());
    }
    v.note(format!("{} matrices checked", inputs.len()));
    Ok(v)
}

/// Why no canonical semi-trace exists at this rank and characteristic, if so.
pub fn canonical_ineligibility<R: Ring>(n: usize) -> Option<String> {
    if n % 2 == 1 {
        Some("involution acts non-trivially on the center".into())
    } else if n % 4 == 2 && R::characteristic() != 2 {
        Some("involution symplectic, not orthogonal".into())
    } else if n < 4 {
        Some("rank 2: trace-zero elements do not map into Alt, no canonical semi-trace".into())
    } else {
        None
    }
}

/// The canonical semi-trace with representative `c(E_{2n,2n})`.
pub fn canonical_semitrace<R: Ring>(alg: &CliffordAlgebra<R>, map: &CanonicalMap<R>) -> Result<SemiTrace<R>> {
    canonical_semitrace_from(alg, map, &SplitTripleElement::default_trace_one(alg.n()))
}

/// The semi-trace with representative `c(a)` for a trace-one `a`.
pub fn canonical_semitrace_from<R: Ring>(
    alg: &CliffordAlgebra<R>,
    map: &CanonicalMap<R>,
    a: &SplitTripleElement<R>,
) -> Result<SemiTrace<R>> {
    if let Some(reason) = canonical_ineligibility::<R>(alg.n()) {
        return Err(AlgebraError::Ineligible(reason));
    }
    if !a.trace().is_one() {
        return Err(AlgebraError::Ineligible(format!("representative source has trace {}, not 1", a.trace())));
    }
    semi_trace_from(alg, map.apply(a)?)
}

/// `c(a)` gives the same semi-trace as `f` for `trials` random trace-one `a`.
pub fn representative_independence<R: Ring, G: rand::Rng + ?Sized>(
    spaces: &InvolutionSpaces<R>,
    map: &CanonicalMap<R>,
    f: &SemiTrace<R>,
    trials: usize,
    rng: &mut G,
) -> Result<Verdict> {
    let alg = spaces.algebra();
    let mut v = Verdict::new();
    for _ in 0..trials {
        let a = SplitTripleElement::random_with_trace(alg.n(), R::one(), rng);
        let g = canonical_semitrace_from(alg, map, &a)?;
        let diff = f.disagreement(&g, spaces)?;
        v.check(diff.is_none(), || {
            let (i, x, y) = diff.clone().expect("disagreement present");
            format!("a = {}: on sym basis vector {i}, c(E) gives {x}, c(a) gives {y}", a.matrix())
        });
    }
    v.note(format!("{trials} trace-one representatives agree on all {} symmetric basis vectors", spaces.sym().dim()));
    Ok(v)
}

/// `f(x + τ(x)) = Trd(x)` for `trials` random even `x`.
pub fn semitrace_defining_property<R: Ring, G: rand::Rng + ?Sized>(
    alg: &CliffordAlgebra<R>,
    f: &SemiTrace<R>,
    trials: usize,
    rng: &mut G,
) -> Verdict {
    let mut v = Verdict::new();
    for _ in 0..trials {
        let x = alg.random_even(rng);
        let lhs = f.evaluate(&(&x + &alg.involution(&x)));
        let rhs = x.reduced_trace();
        v.check(lhs == rhs, || format!("f(x + tau(x)) = {lhs} but Trd(x) = {rhs}"));
    }
    v
}

/// `m ↦ b_∧(x, m)·x` on the parity block of a homogeneous `x`, zero on the
/// other block.
pub fn rank_one_block<R: Ring>(alg: &CliffordAlgebra<R>, x: &ExteriorVector<R>) -> Result<CliffordElement<R>> {
    let parity = x.parity();
    if parity == Parity::Mixed {
        return Err(AlgebraError::MixedParity);
    }
    let n = alg.n();
    let idx: &[usize] = if parity == Parity::Odd { alg.odd_indices() } else { alg.even_indices() };
    let mut m = Matrix::zeros(alg.dim(), alg.dim());
    for &c in idx {
        let bc = b_wedge(x, &ExteriorVector::basis(SubsetIndex::new(n, c as u32)?)?)?;
        if bc.is_zero() {
            continue;
        }
        for &r in idx {
            m[(r, c)] = x.coeffs()[r].clone() * bc.clone();
        }
    }
    alg.element(m)
}

/// `f(φ_{b_∧}(x ⊗ x)) = q_∧(x)` for random homogeneous `x` of each parity,
/// plus the fixed inputs `x = 1` and `x = 1 + v_{[n]}`.
pub fn correspondence_with_q_wedge<R: Ring, G: rand::Rng + ?Sized>(
    alg: &CliffordAlgebra<R>,
    f: &SemiTrace<R>,
    trials: usize,
    rng: &mut G,
) -> Result<Verdict> {
    let n = alg.n();
    let mut v = Verdict::new();
    let one = ExteriorVector::one(n)?;
    let top = ExteriorVector::basis(SubsetIndex::full(n))?;
    let mut inputs = vec![one.clone(), &one + &top];
    for parity in [Parity::Even, Parity::Odd] {
        inputs.extend((0..trials).map(|_| ExteriorVector::random_homogeneous(n, parity, rng).expect("rank validated")));
    }
    for x in &inputs {
        let m = rank_one_block(alg, x)?;
        v.check(alg.involution(&m) == m, || format!("rank-one map of x = {x} is not symmetric"));
        let lhs = f.evaluate(&m);
        let rhs = q_wedge(x);
        v.check(lhs == rhs, || format!("x = {x}: f(phi(x⊗x)) = {lhs}, q_wedge(x) = {rhs}"));
    }
    v.note(format!("{} vectors checked ({trials} per parity)", inputs.len()));
    Ok(v)
}

/// The eight even monomials of rank 2, in the order
/// `1, v1v2, v1v2*, v1v1*, v2v2*, v2v1*, v2*v1*, v1v2v2*v1*`.
pub fn degree4_words() -> [Vec<Generator>; 8] {
    use Generator::{Dual, Plain};
    [
        vec![],
        vec![Plain(1), Plain(2)],
        vec![Plain(1), Dual(2)],
        vec![Plain(1), Dual(1)],
        vec![Plain(2), Dual(2)],
        vec![Plain(2), Dual(1)],
        vec![Dual(2), Dual(1)],
        vec![Plain(1), Plain(2), Dual(2), Dual(1)],
    ]
}

fn require_char2<R: Ring>() -> Result<()> {
    if R::characteristic() == 2 {
        Ok(())
    } else {
        Err(AlgebraError::WrongCharacteristic(R::characteristic()))
    }
}

fn degree4_setup<R: Ring>() -> Result<(CliffordAlgebra<R>, Vec<CliffordElement<R>>)> {
    require_char2::<R>()?;
    let alg = CliffordAlgebra::new(2)?;
    let monomials = degree4_words().iter().map(|w| alg.phi_word(w)).collect::<Result<Vec<_>>>()?;
    Ok((alg, monomials))
}

/// In rank 2 and characteristic 2: `Alt = span{1, v1v1* + v2v2*}`, and
/// `x + τ(x) = (a3 + a4 + a7) + a7(v1v1* + v2v2*)` on the eight monomials.
pub fn degree4_alt_check<R: Ring>() -> Result<Verdict> {
    let (alg, m) = degree4_setup::<R>()?;
    let spaces = InvolutionSpaces::new(&alg, crate::involution::Domain::Even)?;
    let mut v = Verdict::new();
    let z = &m[3] + &m[4];
    let alt = spaces.alt();
    v.check(alt.dim() == 2, || format!("dim Alt = {}, expected 2", alt.dim()));
    for (name, x) in [("1", &m[0]), ("v1v1* + v2v2*", &z)] {
        v.check(spaces.in_alternating(x)?, || format!("{name} is not alternating"));
    }
    for (k, mk) in m.iter().enumerate() {
        let lhs = mk + &alg.involution(mk);
        let scalar = if matches!(k, 3 | 4 | 7) { R::one() } else { R::zero() };
        let rhs = &alg.scalar(scalar) + &if k == 7 { z.clone() } else { alg.zero() };
        v.check_matrices(|| format!("x + tau(x) on probe a{k}"), lhs.matrix(), rhs.matrix());
    }
    let expected = &(&m[0] + &z) + &m[7];
    v.check_matrices(|| "tau(v1v2v2*v1*) = 1 + v1v1* + v2v2* + v1v2v2*v1*".into(), alg.involution(&m[7]).matrix(), expected.matrix());
    v.note(format!("dim Alt = {}: spanned by 1 and v1v1* + v2v2*", alt.dim()));
    Ok(v)
}

/// The constrained representatives of rank 2 over a finite field of
/// characteristic 2: all `ℓ = Σ a_k m_k` with `ℓ + τ(ℓ) = 1`, with their
/// coefficient vectors.
pub fn degree4_candidates<R: Ring>() -> Result<Vec<(Vec<R>, CliffordElement<R>)>> {
    let (alg, m) = degree4_setup::<R>()?;
    let elements = R::elements().ok_or(AlgebraError::Ineligible("enumeration needs a finite ring".into()))?;
    let q = elements.len();
    let mut out = Vec::new();
    let mut digits = [0usize; 8];
    loop {
        let a: Vec<R> = digits.iter().map(|&d| elements[d].clone()).collect();
        let mut l = Matrix::zeros(alg.dim(), alg.dim());
        for (c, mk) in a.iter().zip(&m) {
            l.add_scaled(c, mk.matrix());
        }
        let l = alg.element(l)?;
        if (&l + &alg.involution(&l)).matrix().is_identity() {
            out.push((a, l));
        }
        // odometer over R^8
        let mut k = 0;
        while k < 8 {
            digits[k] += 1;
            if digits[k] < q {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == 8 {
            break;
        }
    }
    Ok(out)
}

/// Every constrained `ℓ` is moved off its class by `C(B(t))` for some
/// nonzero `t`, and `ℓ - C(B(t))(ℓ) = (t + t²a5) v1v2* + t a5 (v1v1* + v2v2*)`.
pub fn degree4_no_canonical<R: Ring>() -> Result<Verdict> {
    let (alg, m) = degree4_setup::<R>()?;
    let elements = R::elements().ok_or(AlgebraError::Ineligible("enumeration needs a finite ring".into()))?;
    let ts: Vec<R> = elements.iter().filter(|t| !t.is_zero()).cloned().collect();
    if !elements.iter().any(|t| t.clone() * t.clone() != *t) {
        return Ok(Verdict::skipped(format!("every t in {} satisfies t^2 = t", R::TAG)));
    }
    let spaces = InvolutionSpaces::new(&alg, crate::involution::Domain::Even)?;
    let basis = MonomialBasis::new(&alg)?;
    let indices = degree4_words().iter().map(|w| basis.index_of(w)).collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::new();
    // images of the eight monomials under each C(B(t))
    let mut images = Vec::new();
    for t in &ts {
        let b = OrthogonalElement::new(rank_two_transvection(t.clone()))?;
        let action = CliffordAction::new(&alg, &b)?;
        images.push(indices.iter().map(|&s| action.monomial_image(s).clone()).collect::<Vec<_>>());
    }
    let z = &m[3] + &m[4];
    let candidates = degree4_candidates::<R>()?;
    let mut moved_all = 0usize;
    for (a, l) in &candidates {
        v.check(a[7].is_zero() && (a[3].clone() + a[4].clone()).is_one(), || {
            format!("candidate {} violates a7 = 0, a3 + a4 = 1", fmt_vector(a))
        });
        let mut moved_by = None;
        for (t, img) in ts.iter().zip(&images) {
            let mut cl = Matrix::zeros(alg.dim(), alg.dim());
            for (c, mk) in a.iter().zip(img) {
                cl.add_scaled(c, mk.matrix());
            }
            let diff = l - &alg.element(cl)?;
            let coeff = t.clone() + t.clone() * t.clone() * a[5].clone();
            let predicted = &m[2].scale(&coeff) + &z.scale(&(t.clone() * a[5].clone()));
            v.check_matrices(|| format!("l - C(B({t}))(l) for a = {}", fmt_vector(a)), diff.matrix(), predicted.matrix());
            if moved_by.is_none() && !spaces.in_alternating(&diff)? {
                moved_by = Some(t.clone());
            }
        }
        if v.check(moved_by.is_some(), || format!("a = {}: l - C(B(t))(l) alternating for every t", fmt_vector(a))) {
            moved_all += 1;
        }
    }
    let expected = elements.len().pow(6);
    v.check(candidates.len() == expected, || format!("{} candidates, expected {expected}", candidates.len()));
    if moved_all == candidates.len() {
        v.note(format!("{} candidates, all moved", candidates.len()));
    } else {
        v.note(format!("{} candidates, {moved_all} moved", candidates.len()));
    }
    Ok(v)
}

/// Value of `b(m_1, B m_2) - b(σ(B) m_1, m_2)` on basis pairs; all zero for
/// the adjoint.
pub fn adjoint_defect<R: Ring>(b: &SplitTripleElement<R>) -> Vec<(usize, usize, R)> {
    let n = b.n();
    let g = hyperbolic_polar_gram::<R>(n);
    let s = b.adjoint();
    let space = HyperbolicSpace::new(n).expect("rank validated");
    let mut out = Vec::new();
    for i in 0..2 * n {
        for j in 0..2 * n {
            let (ei, ej) = (space.unit_vector::<R>(i), space.unit_vector::<R>(j));
            let lhs = dot(&ei, &g.mul_vec(&b.matrix.mul_vec(&ej).expect("shape")).expect("shape"));
            let rhs = dot(&s.matrix.mul_vec(&ei).expect("shape"), &g.mul_vec(&ej).expect("shape"));
            if lhs != rhs {
                out.push((i, j, lhs - rhs));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::Domain;
    use crate::ring::{Gf2, Gf3, Gf4, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_map_values() {
        for n in 1..=4 {
            let alg = CliffordAlgebra::<Rational>::new(n).unwrap();
            let map = CanonicalMap::new(&alg);
            let c = map.apply(&SplitTripleElement::default_trace_one(n)).unwrap();
            assert_eq!(c, alg.phi_labels(&["v1", "v1*"]).unwrap());
            let id = map.apply(&SplitTripleElement::identity(n)).unwrap();
            assert_eq!(id, alg.scalar(Rational::from_i64(n as i64)));
            if n >= 2 {
                let space = alg.space();
                let t = phi_b_tensor(n, &space.unit_vector(0), &space.unit_vector(1)).unwrap();
                assert_eq!(map.apply(&t).unwrap(), alg.phi_labels(&["v1", "v2"]).unwrap());
            }
        }
    }

    #[test]
    fn phi_b_of_pure_tensors_is_product_of_images() {
        let alg = CliffordAlgebra::<Gf3>::new(3).unwrap();
        let map = CanonicalMap::new(&alg);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let x = alg.random_vector(&mut rng);
            let y = alg.random_vector(&mut rng);
            let lhs = map.apply(&phi_b_tensor(3, &x, &y).unwrap()).unwrap();
            let rhs = &alg.phi_vector(&x).unwrap() * &alg.phi_vector(&y).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn adjoint_is_the_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let b = SplitTripleElement::<Gf3>::random(3, &mut rng);
        assert!(adjoint_defect(&b).is_empty());
        assert_eq!(b.adjoint().adjoint(), b);
    }

    #[test]
    fn sl_basis_is_a_basis() {
        for n in 1..=4 {
            let rows: Vec<Vec<Rational>> = sl_basis(n)
                .iter()
                .map(|e| e.to_matrix::<Rational>(n).unwrap().matrix().as_slice().to_vec())
                .collect();
            assert_eq!(rows.len(), 4 * n * n - 1);
            assert_eq!(crate::linalg::RowSpace::new(4 * n * n, &rows).unwrap().dim(), 4 * n * n - 1);
        }
    }

    #[test]
    fn trace_zero_maps_into_alt_from_rank_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let alg = CliffordAlgebra::<Gf2>::new(3).unwrap();
        let spaces = InvolutionSpaces::new(&alg, Domain::Even).unwrap();
        let map = CanonicalMap::new(&alg);
        let v = check_sl_into_alt(&spaces, &map, 5, &mut rng).unwrap();
        assert!(v.passed(), "{:?}", v.details());
        assert!(v.details().iter().any(|d| d == "35 of 35 basis images certified as w - tau(w)"));
        let alg2 = CliffordAlgebra::<Gf2>::new(2).unwrap();
        let spaces2 = InvolutionSpaces::new(&alg2, Domain::Even).unwrap();
        assert!(!sl_counterexample(&spaces2, &CanonicalMap::new(&alg2)).unwrap());
    }

    #[test]
    fn counterexample_needs_characteristic_two() {
        // the adjugate involution on 2x2 blocks has every trace-zero block in Alt when 2 is a unit
        let alg = CliffordAlgebra::<Gf3>::new(2).unwrap();
        let spaces = InvolutionSpaces::new(&alg, Domain::Even).unwrap();
        assert!(sl_counterexample(&spaces, &CanonicalMap::new(&alg)).unwrap());
    }

    #[test]
    fn rho_xi() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let alg = CliffordAlgebra::<Gf3>::new(3).unwrap();
        assert!(rho_xi_check(&alg, &CanonicalMap::new(&alg), 10, &mut rng).unwrap().passed());
    }

    #[test]
    fn eligibility() {
        assert_eq!(canonical_ineligibility::<Gf3>(2).unwrap(), "involution symplectic, not orthogonal");
        assert_eq!(canonical_ineligibility::<Gf2>(3).unwrap(), "involution acts non-trivially on the center");
        assert!(canonical_ineligibility::<Gf2>(2).is_some());
        assert!(canonical_ineligibility::<Gf3>(4).is_none());
        assert!(canonical_ineligibility::<Gf2>(6).is_none());
        assert!(canonical_ineligibility::<Gf3>(6).is_some());
        let alg = CliffordAlgebra::<Gf3>::new(2).unwrap();
        assert!(matches!(canonical_semitrace(&alg, &CanonicalMap::new(&alg)), Err(AlgebraError::Ineligible(_))));
    }

    #[test]
    fn canonical_semitrace_in_rank_four() {
        let alg = CliffordAlgebra::<Gf3>::new(4).unwrap();
        let map = CanonicalMap::new(&alg);
        let f = canonical_semitrace(&alg, &map).unwrap();
        assert_eq!(f.evaluate(&alg.identity()), Gf3::new(2));
        let spaces = InvolutionSpaces::new(&alg, Domain::Even).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        assert!(representative_independence(&spaces, &map, &f, 3, &mut rng).unwrap().passed());
        assert!(semitrace_defining_property(&alg, &f, 10, &mut rng).passed());
        assert!(correspondence_with_q_wedge(&alg, &f, 10, &mut rng).unwrap().passed());
    }

    #[test]
    fn q_wedge_of_one_plus_top() {
        let alg = CliffordAlgebra::<Gf2>::new(4).unwrap();
        let f = canonical_semitrace(&alg, &CanonicalMap::new(&alg)).unwrap();
        let x = &ExteriorVector::one(4).unwrap() + &ExteriorVector::basis(SubsetIndex::full(4)).unwrap();
        assert_eq!(q_wedge(&x), Gf2::new(1));
        assert_eq!(f.evaluate(&rank_one_block(&alg, &x).unwrap()), Gf2::new(1));
        let one = ExteriorVector::one(4).unwrap();
        assert_eq!(f.evaluate(&rank_one_block(&alg, &one).unwrap()), Gf2::new(0));
    }

    #[test]
    fn degree4_alt() {
        assert!(degree4_alt_check::<Gf2>().unwrap().passed());
        assert!(degree4_alt_check::<Gf4>().unwrap().passed());
        assert_eq!(degree4_alt_check::<Gf3>().unwrap_err(), AlgebraError::WrongCharacteristic(3));
    }

    #[test]
    fn degree4_counterexample_over_gf4() {
        let v = degree4_no_canonical::<Gf4>().unwrap();
        assert!(v.passed(), "{:?}", v.details());
        assert!(v.details().contains(&"4096 candidates, all moved".to_string()));
        assert!(matches!(degree4_no_canonical::<Gf2>().unwrap().status(), crate::report::Status::Skipped(_)));
    }
}
