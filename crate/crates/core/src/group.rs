//! The orthogonal group of `q_{2n}` and its action on the Clifford algebra.
//!
//! `C(B)` sends `Φ(m)` to `Φ(Bm)`. It is computed on the monomial basis: each
//! ordered product of generators is replaced by the product of the images.

use crate::canonical::{canonical_semitrace, degree4_candidates, CanonicalMap};
use crate::clifford::{CliffordAlgebra, CliffordElement, MonomialBasis, MAX_MONOMIAL_RANK};
use crate::error::{AlgebraError, Result};
use crate::forms::{hyperbolic_polar_gram, q_hyperbolic, HyperbolicSpace};
use crate::involution::{semi_trace_from, Domain, InvolutionSpaces};
use crate::linalg::{dot, Matrix};
use crate::report::Verdict;
use crate::ring::Ring;

/// `q_{2n}(Be) = q_{2n}(e)` for basis vectors `e`, and `B` preserves the
/// polar form on basis pairs.
pub fn is_orthogonal<R: Ring>(b: &Matrix<R>) -> bool {
    if !b.is_square() || b.rows() % 2 == 1 || b.rows() == 0 {
        return false;
    }
    let dim = b.rows();
    let g = hyperbolic_polar_gram::<R>(dim / 2);
    let cols: Vec<Vec<R>> = (0..dim).map(|j| b.column(j)).collect();
    for (j, c) in cols.iter().enumerate() {
        let e = {
            let mut e = vec![R::zero(); dim];
            e[j] = R::one();
            e
        };
        if q_hyperbolic(c) != q_hyperbolic(&e) {
            return false;
        }
    }
    for i in 0..dim {
        let gi = g.mul_vec(&cols[i]).expect("square");
        for (j, c) in cols.iter().enumerate() {
            if dot(c, &gi) != g[(j, i)] {
                return false;
            }
        }
    }
    true
}

/// An element of `O(q_{2n})`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalElement<R> {
    matrix: Matrix<R>,
}

impl<R: Ring> OrthogonalElement<R> {
    pub fn new(matrix: Matrix<R>) -> Result<Self> {
        if is_orthogonal(&matrix) {
            Ok(OrthogonalElement { matrix })
        } else {
            Err(AlgebraError::NotOrthogonal)
        }
    }

    pub fn identity(n: usize) -> Self {
        OrthogonalElement { matrix: Matrix::identity(2 * n) }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn compose(&self, other: &Self) -> Self {
        OrthogonalElement { matrix: &self.matrix * &other.matrix }
    }
}

fn space(n: usize) -> HyperbolicSpace {
    HyperbolicSpace::new(n).expect("rank validated by caller")
}

/// Matrix sending basis vector `j` to `images[j]` (columns).
fn from_images<R: Ring>(dim: usize, images: impl Fn(usize) -> Vec<(usize, R)>) -> Matrix<R> {
    let mut m = Matrix::<R>::zeros(dim, dim);
    for j in 0..dim {
        for (i, c) in images(j) {
            m[(i, j)] = m[(i, j)].clone() + c;
        }
    }
    m
}

/// Swaps `v_i` and `v_i^*`.
pub fn pair_swap<R: Ring>(n: usize, i: usize) -> Matrix<R> {
    let h = space(n);
    let (a, b) = (i - 1, h.partner(i - 1));
    from_images(h.dim(), |j| {
        let k = if j == a { b } else if j == b { a } else { j };
        vec![(k, R::one())]
    })
}

/// Swaps `v_i ↔ v_j` and `v_i^* ↔ v_j^*`.
pub fn index_transposition<R: Ring>(n: usize, i: usize, j: usize) -> Matrix<R> {
    let h = space(n);
    let swap = |k: usize| {
        if k == i - 1 {
            j - 1
        } else if k == j - 1 {
            i - 1
        } else if k == h.partner(i - 1) {
            h.partner(j - 1)
        } else if k == h.partner(j - 1) {
            h.partner(i - 1)
        } else {
            k
        }
    };
    from_images(h.dim(), |k| vec![(swap(k), R::one())])
}

/// `v_j ↦ v_j + t v_i`, `v_i^* ↦ v_i^* - t v_j^*` for `i ≠ j`.
pub fn eichler_plain<R: Ring>(n: usize, i: usize, j: usize, t: R) -> Matrix<R> {
    let h = space(n);
    let (vi, vj, vid, vjd) = (i - 1, j - 1, h.partner(i - 1), h.partner(j - 1));
    from_images(h.dim(), |k| {
        if k == vj {
            vec![(vj, R::one()), (vi, t.clone())]
        } else if k == vid {
            vec![(vid, R::one()), (vjd, -t.clone())]
        } else {
            vec![(k, R::one())]
        }
    })
}

/// `v_j ↦ v_j + t v_i^*`, `v_i ↦ v_i - t v_j^*` for `i ≠ j`.
pub fn eichler_dual<R: Ring>(n: usize, i: usize, j: usize, t: R) -> Matrix<R> {
    let h = space(n);
    let (vi, vj, vid, vjd) = (i - 1, j - 1, h.partner(i - 1), h.partner(j - 1));
    from_images(h.dim(), |k| {
        if k == vj {
            vec![(vj, R::one()), (vid, t.clone())]
        } else if k == vi {
            vec![(vi, R::one()), (vjd, -t.clone())]
        } else {
            vec![(k, R::one())]
        }
    })
}

/// `v_i ↦ u v_i`, `v_i^* ↦ u^{-1} v_i^*` for a unit `u`.
pub fn unit_scaling<R: Ring>(n: usize, i: usize, u: R) -> Result<Matrix<R>> {
    let h = space(n);
    let inv = u.try_inv()?;
    let (a, b) = (i - 1, h.partner(i - 1));
    Ok(from_images(h.dim(), |k| {
        if k == a {
            vec![(a, u.clone())]
        } else if k == b {
            vec![(b, inv.clone())]
        } else {
            vec![(k, R::one())]
        }
    }))
}

/// The rank-2 matrix with `t` in entries `(1,2)` and `(3,4)` in the basis
/// `v_1, v_2, v_2^*, v_1^*`: `v_2 ↦ t v_1 + v_2`, `v_1^* ↦ t v_2^* + v_1^*`.
/// It preserves `q_4` exactly when `2t = 0`.
pub fn rank_two_transvection<R: Ring>(t: R) -> Matrix<R> {
    let mut m = Matrix::identity(4);
    m[(0, 1)] = t.clone();
    m[(2, 3)] = t;
    m
}

/// A random product of `length` generators of `O(q_{2n})`.
pub fn sample_orthogonal<R: Ring, G: rand::Rng + ?Sized>(n: usize, length: usize, rng: &mut G) -> OrthogonalElement<R> {
    let mut acc = OrthogonalElement::identity(n);
    for _ in 0..length {
        let i = rng.gen_range(1..=n);
        let mut j = rng.gen_range(1..=n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(1..=n);
            }
        }
        let kind = if n > 1 { rng.gen_range(0..5) } else { rng.gen_range(0..2) * 4 };
        let g = match kind {
            0 => pair_swap(n, i),
            1 => index_transposition(n, i, j),
            2 => eichler_plain(n, i, j, R::sample(rng)),
            3 => eichler_dual(n, i, j, R::sample(rng)),
            _ => {
                let u = std::iter::repeat_with(|| R::sample(rng)).find(|u| u.try_inv().is_ok()).expect("units exist");
                unit_scaling(n, i, u).expect("unit")
            }
        };
        let g = OrthogonalElement::new(g).expect("generators are orthogonal");
        acc = acc.compose(&g);
    }
    acc
}

/// The automorphism `C(B)` of the Clifford algebra, with the images of all
/// `4^n` monomials precomputed.
#[derive(Clone, Debug)]
pub struct CliffordAction<R> {
    n: usize,
    monomial_images: Vec<CliffordElement<R>>,
}

impl<R: Ring> CliffordAction<R> {
    pub fn new(alg: &CliffordAlgebra<R>, b: &OrthogonalElement<R>) -> Result<Self> {
        let n = alg.n();
        if b.n() != n {
            return Err(AlgebraError::RankMismatch { left: b.n(), right: n });
        }
        if n > MAX_MONOMIAL_RANK {
            return Err(AlgebraError::UnsupportedRank { n, min: 1, max: MAX_MONOMIAL_RANK });
        }
        let generator_images = (0..2 * n)
            .map(|k| alg.phi_vector(&b.matrix().column(k)))
            .collect::<Result<Vec<_>>>()?;
        let mut monomial_images: Vec<CliffordElement<R>> = Vec::with_capacity(1 << (2 * n));
        monomial_images.push(alg.identity());
        for s in 1usize..1 << (2 * n) {
            let high = usize::BITS as usize - 1 - s.leading_zeros() as usize;
            let prefix = &monomial_images[s & !(1 << high)];
            monomial_images.push(prefix * &generator_images[high]);
        }
        Ok(CliffordAction { n, monomial_images })
    }

    pub fn monomial_image(&self, s: usize) -> &CliffordElement<R> {
        &self.monomial_images[s]
    }

    /// `C(B)` applied to monomial coordinates.
    pub fn apply_coordinates(&self, coords: &[R]) -> Result<CliffordElement<R>> {
        if coords.len() != self.monomial_images.len() {
            return Err(AlgebraError::ShapeMismatch(format!("{} coordinates for {} monomials", coords.len(), self.monomial_images.len())));
        }
        let dim = 1usize << self.n;
        let mut m = Matrix::zeros(dim, dim);
        for (c, img) in coords.iter().zip(&self.monomial_images) {
            m.add_scaled(c, img.matrix());
        }
        CliffordElement::from_matrix(self.n, m)
    }

    pub fn apply(&self, basis: &MonomialBasis<R>, x: &CliffordElement<R>) -> Result<CliffordElement<R>> {
        self.apply_coordinates(&basis.decompose(x)?)
    }

    /// Matrix of `C(B)` on the even coordinates of `spaces`.
    pub fn even_matrix(&self, basis: &MonomialBasis<R>, spaces: &InvolutionSpaces<R>) -> Result<Matrix<R>> {
        if spaces.domain() != Domain::Even {
            return Err(AlgebraError::ShapeMismatch("even coordinates required".into()));
        }
        let dim = spaces.dim();
        let mut columns = Vec::with_capacity(dim);
        for p in 0..dim {
            let mut e = vec![R::zero(); dim];
            e[p] = R::one();
            let x = spaces.element(&e)?;
            columns.push(spaces.coordinates(&self.apply(basis, &x)?)?);
        }
        Matrix::from_columns(dim, &columns)
    }
}

/// For `samples` sampled `B ∈ O(q_{2n})`: the canonical semi-trace is
/// invariant under `C(B)` on every symmetric basis vector, `C(B)` keeps
/// those vectors symmetric, and `C(B)` commutes with `τ` on random elements.
pub fn pgo_invariance<R: Ring, G: rand::Rng + ?Sized>(
    spaces: &InvolutionSpaces<R>,
    basis: &MonomialBasis<R>,
    samples: usize,
    rng: &mut G,
) -> Result<Verdict> {
    let alg = spaces.algebra();
    let n = alg.n();
    let f = canonical_semitrace(alg, &CanonicalMap::new(alg))?;
    let fl = spaces.coordinates(f.representative())?;
    let sym = spaces.basis_elements(spaces.sym());
    let mut v = Verdict::new();
    let mut group = vec![OrthogonalElement::identity(n)];
    group.extend((0..samples.saturating_sub(1)).map(|_| sample_orthogonal(n, 6, rng)));
    for b in &group {
        v.check(is_orthogonal(b.matrix()), || format!("sampled B = {} is not orthogonal", b.matrix()));
        let action = CliffordAction::new(alg, b)?;
        v.check(action.apply(basis, &alg.identity())?.matrix().is_identity(), || format!("C(B) moves 1 for B = {}", b.matrix()));
        for (k, s) in sym.iter().enumerate() {
            let moved = action.apply(basis, s)?;
            let lhs = spaces.trace_pairing(&fl, &spaces.coordinates(&moved)?);
            let rhs = f.evaluate(s);
            v.check(lhs == rhs, || format!("B = {}: f(C(B)(s_{k})) = {lhs}, f(s_{k}) = {rhs}", b.matrix()));
            v.check(alg.involution(&moved) == moved, || format!("B = {}: C(B)(s_{k}) is not symmetric", b.matrix()));
        }
        for _ in 0..2 {
            let x = alg.random_even(rng);
            let lhs = alg.involution(&action.apply(basis, &x)?);
            let rhs = action.apply(basis, &alg.involution(&x))?;
            v.check_matrices(|| format!("B = {}: tau(C(B)(x)) = C(B)(tau(x))", b.matrix()), lhs.matrix(), rhs.matrix());
        }
    }
    v.note(format!("{} orthogonal elements, {} symmetric basis vectors each", group.len(), sym.len()));
    Ok(v)
}

/// Rank 2 in characteristic 2: for every constrained representative `ℓ`
/// some `B(t)` changes the semi-trace `f_ℓ` on a symmetric basis vector.
/// Passing means invariance fails for every candidate.
pub fn pgo_negative_control<R: Ring>() -> Result<Verdict> {
    let alg = CliffordAlgebra::<R>::new(2)?;
    let spaces = InvolutionSpaces::new(&alg, Domain::Even)?;
    let basis = MonomialBasis::new(&alg)?;
    let elements = R::elements().ok_or(AlgebraError::Ineligible("enumeration needs a finite ring".into()))?;
    let actions = elements
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| Ok((t.clone(), CliffordAction::new(&alg, &OrthogonalElement::new(rank_two_transvection(t.clone()))?)?)))
        .collect::<Result<Vec<_>>>()?;
    let sym = spaces.basis_elements(spaces.sym());
    let moved_sym: Vec<Vec<CliffordElement<R>>> = actions
        .iter()
        .map(|(_, a)| sym.iter().map(|s| a.apply(&basis, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let candidates = degree4_candidates::<R>()?;
    let mut v = Verdict::new();
    for (a, l) in &candidates {
        let f = semi_trace_from(&alg, l.clone())?;
        let broken = moved_sym.iter().any(|images| sym.iter().zip(images).any(|(s, cs)| f.evaluate(cs) != f.evaluate(s)));
        v.check(broken, || format!("semi-trace of a = {} is invariant under every B(t)", crate::clifford::fmt_vector(a)));
    }
    v.note(format!("{} candidate semi-traces, none invariant", candidates.len()));
    Ok(v)
}
