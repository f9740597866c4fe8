//! The split Clifford algebra `Cl(H(V), q_{2n})`, realized as `End(∧V)`.
//!
//! `Φ(v_i)` is left multiplication by `v_i` and `Φ(v_i^*)` is the contraction
//! `d_{v_i^*}`. Elements are `2^n × 2^n` matrices in the ascending-mask basis
//! of `∧V`. The even part is block diagonal once the basis is sorted by
//! parity; blocks are taken even first, each in ascending mask order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::exterior::{basis_left_mult_matrix, check_rank, contraction_matrix, Parity, SubsetIndex};
use crate::forms::{classify_bilinear, b_wedge_signed_perm, q_hyperbolic, BilinearClass, Generator, HyperbolicSpace};
use crate::linalg::{inverse, trace_of_product, Matrix, SignedPermutation};
use crate::report::Verdict;
use crate::ring::Ring;

/// Largest rank for which the monomial basis is built.
pub const MAX_MONOMIAL_RANK: usize = 4;

/// An element of the Clifford algebra with its parity.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement<R> {
    n: usize,
    matrix: Matrix<R>,
    parity: Parity,
}

fn detect_parity<R: Ring>(n: usize, m: &Matrix<R>) -> Parity {
    let mut even = false;
    let mut odd = false;
    let dim = 1usize << n;
    for i in 0..dim {
        for j in 0..dim {
            if !m[(i, j)].is_zero() {
                if (i.count_ones() + j.count_ones()) % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
    }
    match (even, odd) {
        (true, true) => Parity::Mixed,
        (false, true) => Parity::Odd,
        _ => Parity::Even,
    }
}

impl<R: Ring> CliffordElement<R> {
    pub fn from_matrix(n: usize, matrix: Matrix<R>) -> Result<Self> {
        check_rank(n)?;
        let dim = 1usize << n;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} matrix for rank {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let parity = detect_parity(n, &matrix);
        Ok(CliffordElement { n, matrix, parity })
    }

    fn wrap(n: usize, matrix: Matrix<R>) -> Self {
        let parity = detect_parity(n, &matrix);
        CliffordElement { n, matrix, parity }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<R> {
        self.matrix
    }

    /// Zero counts as even.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::wrap(self.n, self.matrix.scale(c))
    }

    pub fn map<T: Ring>(&self, f: impl FnMut(&R) -> T) -> CliffordElement<T> {
        CliffordElement::wrap(self.n, self.matrix.map(f))
    }

    /// Matrix trace, which is the reduced trace in the split model.
    pub fn reduced_trace(&self) -> R {
        self.matrix.trace()
    }

    /// `Trd(self * other)` without forming the product.
    pub fn trace_pairing(&self, other: &Self) -> R {
        trace_of_product(&self.matrix, &other.matrix)
    }
}

impl<R: Ring> Mul for &CliffordElement<R> {
    type Output = CliffordElement<R>;
    fn mul(self, rhs: Self) -> CliffordElement<R> {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        CliffordElement::wrap(self.n, &self.matrix * &rhs.matrix)
    }
}

impl<R: Ring> Add for &CliffordElement<R> {
    type Output = CliffordElement<R>;
    fn add(self, rhs: Self) -> CliffordElement<R> {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        CliffordElement::wrap(self.n, &self.matrix + &rhs.matrix)
    }
}

impl<R: Ring> Sub for &CliffordElement<R> {
    type Output = CliffordElement<R>;
    fn sub(self, rhs: Self) -> CliffordElement<R> {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        CliffordElement::wrap(self.n, &self.matrix - &rhs.matrix)
    }
}

impl<R: Ring> Neg for &CliffordElement<R> {
    type Output = CliffordElement<R>;
    fn neg(self) -> CliffordElement<R> {
        CliffordElement { n: self.n, matrix: -&self.matrix, parity: self.parity }
    }
}

impl<R: fmt::Debug> fmt::Debug for CliffordElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordElement(n = {}, {}, {:?})", self.n, self.parity, self.matrix)
    }
}

/// Shared data for computations in `Cl(H(V), q_{2n})` at a fixed rank.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra<R> {
    space: HyperbolicSpace,
    generators: Vec<CliffordElement<R>>,
    gram: SignedPermutation<R>,
    even: Vec<usize>,
    odd: Vec<usize>,
}

impl<R: Ring> CliffordAlgebra<R> {
    pub fn new(n: usize) -> Result<Self> {
        let space = HyperbolicSpace::new(n)?;
        let mut generators = Vec::with_capacity(2 * n);
        for k in 0..2 * n {
            let m = match space.generator(k) {
                Generator::Plain(i) => basis_left_mult_matrix(n, i)?,
                Generator::Dual(i) => contraction_matrix(n, i)?,
            };
            generators.push(CliffordElement::wrap(n, m));
        }
        let (even, odd) = (0..1usize << n).partition(|i| i.count_ones() % 2 == 0);
        Ok(CliffordAlgebra { space, generators, gram: b_wedge_signed_perm(n)?, even, odd })
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Dimension of `∧V`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn space(&self) -> HyperbolicSpace {
        self.space
    }

    /// Gram of `b_∧`, whose adjoint involution is `τ`.
    pub fn gram(&self) -> &SignedPermutation<R> {
        &self.gram
    }

    pub fn identity(&self) -> CliffordElement<R> {
        CliffordElement { n: self.n(), matrix: Matrix::identity(self.dim()), parity: Parity::Even }
    }

    pub fn zero(&self) -> CliffordElement<R> {
        CliffordElement { n: self.n(), matrix: Matrix::zeros(self.dim(), self.dim()), parity: Parity::Even }
    }

    pub fn scalar(&self, c: R) -> CliffordElement<R> {
        CliffordElement::wrap(self.n(), Matrix::scalar(self.dim(), c))
    }

    pub fn element(&self, matrix: Matrix<R>) -> Result<CliffordElement<R>> {
        CliffordElement::from_matrix(self.n(), matrix)
    }

    /// `Φ(e_k)` for the `k`-th basis vector of `H(V)`.
    pub fn generator(&self, k: usize) -> &CliffordElement<R> {
        &self.generators[k]
    }

    pub fn phi(&self, g: Generator) -> Result<&CliffordElement<R>> {
        Ok(&self.generators[self.space.position(g)?])
    }

    /// `Φ(m)` for `m ∈ H(V)` given in coordinates.
    pub fn phi_vector(&self, w: &[R]) -> Result<CliffordElement<R>> {
        if w.len() != self.space.dim() {
            return Err(AlgebraError::ShapeMismatch(format!("vector of length {} in H(V) of rank {}", w.len(), self.space.dim())));
        }
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (c, g) in w.iter().zip(&self.generators) {
            m.add_scaled(c, &g.matrix);
        }
        Ok(CliffordElement::wrap(self.n(), m))
    }

    pub fn phi_word(&self, word: &[Generator]) -> Result<CliffordElement<R>> {
        let mut acc = self.identity();
        for &g in word {
            acc = &acc * self.phi(g)?;
        }
        Ok(acc)
    }

    /// Like [`Self::phi_word`] with labels such as `"v1"` and `"v2*"`.
    pub fn phi_labels(&self, word: &[&str]) -> Result<CliffordElement<R>> {
        let gens = word.iter().map(|l| Generator::parse(l)).collect::<Result<Vec<_>>>()?;
        self.phi_word(&gens)
    }

    /// The canonical involution `τ(x) = G^{-1} x^T G`.
    pub fn involution(&self, x: &CliffordElement<R>) -> CliffordElement<R> {
        CliffordElement { n: self.n(), matrix: self.gram.transpose_conjugate(&x.matrix), parity: x.parity }
    }

    pub fn reduced_trace(&self, x: &CliffordElement<R>) -> R {
        x.reduced_trace()
    }

    pub fn even_indices(&self) -> &[usize] {
        &self.even
    }

    pub fn odd_indices(&self) -> &[usize] {
        &self.odd
    }

    /// Dimension of the even part, `2 · 4^{n-1}`.
    pub fn even_dim(&self) -> usize {
        2 * self.even.len() * self.even.len()
    }

    /// Coordinates of an even element: the even block row-major, then the
    /// odd block row-major.
    pub fn flatten_even(&self, x: &CliffordElement<R>) -> Result<Vec<R>> {
        match x.parity {
            Parity::Even => {}
            Parity::Mixed => return Err(AlgebraError::MixedParity),
            Parity::Odd => return Err(AlgebraError::NotEven),
        }
        let mut out = Vec::with_capacity(self.even_dim());
        for block in [&self.even, &self.odd] {
            for &i in block.iter() {
                for &j in block.iter() {
                    out.push(x.matrix[(i, j)].clone());
                }
            }
        }
        Ok(out)
    }

    pub fn unflatten_even(&self, v: &[R]) -> Result<CliffordElement<R>> {
        if v.len() != self.even_dim() {
            return Err(AlgebraError::ShapeMismatch(format!("{} coordinates for an even part of dimension {}", v.len(), self.even_dim())));
        }
        let mut m = Matrix::zeros(self.dim(), self.dim());
        let mut it = v.iter();
        for block in [&self.even, &self.odd] {
            for &i in block.iter() {
                for &j in block.iter() {
                    m[(i, j)] = it.next().expect("length checked").clone();
                }
            }
        }
        Ok(CliffordElement { n: self.n(), matrix: m, parity: Parity::Even })
    }

    /// The even and odd block identities `(Id, 0)` and `(0, Id)`, which span
    /// the center of the even part.
    pub fn center_idempotents(&self) -> (CliffordElement<R>, CliffordElement<R>) {
        let block = |idx: &[usize]| {
            let mut m = Matrix::zeros(self.dim(), self.dim());
            for &i in idx {
                m[(i, i)] = R::one();
            }
            CliffordElement { n: self.n(), matrix: m, parity: Parity::Even }
        };
        (block(&self.even), block(&self.odd))
    }

    /// Restricts a matrix on `∧V` to the rows and columns of one parity.
    pub fn parity_block(&self, m: &Matrix<R>, parity: Parity) -> Matrix<R> {
        let idx = match parity {
            Parity::Odd => &self.odd,
            _ => &self.even,
        };
        Matrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])].clone())
    }

    pub fn random_element<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> CliffordElement<R> {
        CliffordElement::wrap(self.n(), Matrix::random(self.dim(), self.dim(), rng))
    }

    pub fn random_even<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> CliffordElement<R> {
        let v: Vec<R> = (0..self.even_dim()).map(|_| R::sample(rng)).collect();
        self.unflatten_even(&v).expect("length matches")
    }

    pub fn random_vector<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Vec<R> {
        (0..self.space.dim()).map(|_| R::sample(rng)).collect()
    }

    /// Checks the six families of defining relations and `Φ(m)^2 = q(m)·Id`
    /// for `trials` random `m`.
    pub fn relation_suite<G: rand::Rng + ?Sized>(&self, trials: usize, rng: &mut G) -> Verdict {
        let n = self.n();
        let mut v = Verdict::new();
        let id = self.identity();
        let zero = self.zero();
        let p = |i| Generator::Plain(i);
        let d = |i| Generator::Dual(i);
        let get = |g: Generator| self.phi(g).expect("generator in range");
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    for g in [p(i), d(i)] {
                        v.check_matrices(|| format!("{g}^2 = 0"), (get(g) * get(g)).matrix(), zero.matrix());
                    }
                    let lhs = get(p(i)) * get(d(i));
                    let rhs = &id - &(get(d(i)) * get(p(i)));
                    v.check_matrices(|| format!("v{i} v{i}* = 1 - v{i}* v{i}"), lhs.matrix(), rhs.matrix());
                } else {
                    for (a, b) in [(p(i), p(j)), (d(i), d(j)), (p(i), d(j))] {
                        let lhs = get(a) * get(b);
                        let rhs = -&(get(b) * get(a));
                        v.check_matrices(|| format!("{a} {b} = -{b} {a}"), lhs.matrix(), rhs.matrix());
                    }
                }
            }
        }
        for _ in 0..trials {
            let m = self.random_vector(rng);
            let phi = self.phi_vector(&m).expect("length matches");
            let square = &phi * &phi;
            let q = q_hyperbolic(&m);
            let expected = self.scalar(q.clone());
            v.check_matrices(
                || format!("Phi(m)^2 = q(m) Id for m = {}, q(m) = {q}", fmt_vector(&m)),
                square.matrix(),
                expected.matrix(),
            );
        }
        v.note(format!("{} relation identities checked", v.checks()));
        v
    }

    /// Type of `τ` restricted to the even part.
    pub fn classify_even_involution(&self) -> EvenInvolutionType {
        let (e0, e1) = self.center_idempotents();
        let center_fixed = self.involution(&e0) == e0 && self.involution(&e1) == e1;
        let blocks = if center_fixed {
            let g = self.gram.to_matrix();
            Some((
                classify_bilinear(&self.parity_block(&g, Parity::Even)),
                classify_bilinear(&self.parity_block(&g, Parity::Odd)),
            ))
        } else {
            None
        };
        EvenInvolutionType { center_fixed, blocks }
    }
}

pub(crate) fn fmt_vector<R: Ring>(v: &[R]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Result of classifying `τ` on the even Clifford algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvenInvolutionType {
    pub center_fixed: bool,
    /// Classes of `b_∧` restricted to `∧_0 V` and `∧_1 V`, when `τ` fixes
    /// the center.
    pub blocks: Option<(BilinearClass, BilinearClass)>,
}

impl EvenInvolutionType {
    pub fn orthogonal(&self) -> bool {
        matches!(self.blocks, Some((a, b)) if a.symmetric && b.symmetric)
    }

    pub fn symplectic(&self) -> bool {
        matches!(self.blocks, Some((a, b)) if a.alternating && b.alternating)
    }

    /// `center-nontrivial`, or `orthogonal` and/or `symplectic`.
    pub fn labels(&self) -> Vec<&'static str> {
        if !self.center_fixed {
            return vec!["center-nontrivial"];
        }
        let mut out = Vec::new();
        if self.orthogonal() {
            out.push("orthogonal");
        }
        if self.symplectic() {
            out.push("symplectic");
        }
        if out.is_empty() {
            out.push("neither");
        }
        out
    }
}

impl fmt::Display for EvenInvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join("+"))
    }
}

/// The `4^n` ordered products of distinct generators, with the data to
/// decompose any element in that basis.
///
/// Generators are ordered `v_1 < ... < v_n < v_n^* < ... < v_1^*` (the basis
/// order of `H(V)`); monomial `S` is the product over the set bits of `S` in
/// increasing order.
#[derive(Clone, Debug)]
pub struct MonomialBasis<R> {
    n: usize,
    monomials: Vec<CliffordElement<R>>,
    /// row `p`: monomial coordinates of the matrix unit at flat position `p`
    units: Matrix<R>,
}

impl<R: Ring> MonomialBasis<R> {
    pub fn new(alg: &CliffordAlgebra<R>) -> Result<Self> {
        R::require_field()?;
        let n = alg.n();
        if n > MAX_MONOMIAL_RANK {
            return Err(AlgebraError::UnsupportedRank { n, min: 1, max: MAX_MONOMIAL_RANK });
        }
        let monomials: Vec<CliffordElement<R>> = (0..1usize << (2 * n))
            .map(|s| {
                let mut acc = alg.identity();
                for k in bits(s) {
                    acc = &acc * alg.generator(k);
                }
                acc
            })
            .collect();
        let columns: Vec<Vec<R>> = monomials.iter().map(|m| m.matrix().as_slice().to_vec()).collect();
        let change = Matrix::from_columns(monomials.len(), &columns)?;
        let units = inverse(&change)?
            .ok_or_else(|| AlgebraError::ShapeMismatch("monomials are linearly dependent".into()))?
            .transpose();
        Ok(MonomialBasis { n, monomials, units })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, s: usize) -> &CliffordElement<R> {
        &self.monomials[s]
    }

    pub fn monomials(&self) -> &[CliffordElement<R>] {
        &self.monomials
    }

    /// Indices in `H(V)` of the generators in monomial `s`, in product order.
    pub fn factors(s: usize) -> Vec<usize> {
        bits(s).collect()
    }

    pub fn label(&self, s: usize) -> String {
        let space = HyperbolicSpace::new(self.n).expect("rank validated");
        if s == 0 {
            return "1".into();
        }
        bits(s).map(|k| space.generator(k).to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Monomial index of an ordered product of distinct generators.
    pub fn index_of(&self, word: &[Generator]) -> Result<usize> {
        let space = HyperbolicSpace::new(self.n)?;
        let mut s = 0usize;
        let mut last = None;
        for &g in word {
            let k = space.position(g)?;
            if last.is_some_and(|l| l >= k) {
                return Err(AlgebraError::BadLabel(format!("{g} out of monomial order")));
            }
            last = Some(k);
            s |= 1 << k;
        }
        Ok(s)
    }

    pub fn decompose(&self, x: &CliffordElement<R>) -> Result<Vec<R>> {
        if x.n() != self.n {
            return Err(AlgebraError::RankMismatch { left: x.n(), right: self.n });
        }
        let mut out = vec![R::zero(); self.len()];
        for (p, c) in x.matrix().as_slice().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, u) in out.iter_mut().zip(self.units.row(p)) {
                if !u.is_zero() {
                    *o = o.clone() + c.clone() * u.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn recompose(&self, coords: &[R]) -> Result<CliffordElement<R>> {
        if coords.len() != self.len() {
            return Err(AlgebraError::ShapeMismatch(format!("{} coordinates for {} monomials", coords.len(), self.len())));
        }
        let dim = 1usize << self.n;
        let mut m = Matrix::zeros(dim, dim);
        for (c, mono) in coords.iter().zip(&self.monomials) {
            m.add_scaled(c, mono.matrix());
        }
        Ok(CliffordElement::wrap(self.n, m))
    }
}

fn bits(s: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |k| s >> k & 1 == 1)
}

/// Even subsets of `[n]` then odd ones, each in ascending mask order.
pub fn parity_sorted_subsets(n: usize) -> Vec<SubsetIndex> {
    let (mut even, odd): (Vec<_>, Vec<_>) = SubsetIndex::all(n).partition(|i| i.size() % 2 == 0);
    even.extend(odd);
    even
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Gf2, Gf3, Gf5, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64) -> Rational {
        Rational::from_i64(a)
    }

    #[test]
    fn rank_one_generator() {
        let alg = CliffordAlgebra::<Rational>::new(1).unwrap();
        let expected = Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(alg.phi_labels(&["v1"]).unwrap().matrix(), &expected);
        let a = alg.phi_labels(&["v1", "v1*"]).unwrap();
        let b = alg.phi_labels(&["v1*", "v1"]).unwrap();
        assert_eq!(&a + &b, alg.identity());
    }

    #[test]
    fn word_blocks_in_rank_two() {
        let alg = CliffordAlgebra::<Rational>::new(2).unwrap();
        let x = alg.phi_labels(&["v1", "v2"]).unwrap();
        assert!(x.is_even());
        let even = alg.parity_block(x.matrix(), Parity::Even);
        let odd = alg.parity_block(x.matrix(), Parity::Odd);
        assert_eq!(even, Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]]).unwrap());
        assert!(odd.is_zero());
        assert!(alg.phi_labels(&["v3"]).is_err());
        assert!(alg.phi_labels(&["x1"]).is_err());
    }

    #[test]
    fn relations_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            assert!(CliffordAlgebra::<Gf5>::new(n).unwrap().relation_suite(10, &mut rng).passed());
            assert!(CliffordAlgebra::<Rational>::new(n).unwrap().relation_suite(10, &mut rng).passed());
        }
    }

    #[test]
    fn involution_fixes_generators_and_reverses_products() {
        for n in 1..=5 {
            let alg = CliffordAlgebra::<Rational>::new(n).unwrap();
            for k in 0..2 * n {
                assert_eq!(&alg.involution(alg.generator(k)), alg.generator(k));
            }
            assert_eq!(alg.involution(&alg.identity()), alg.identity());
        }
        let alg = CliffordAlgebra::<Gf3>::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let x = alg.random_element(&mut rng);
            let y = alg.random_element(&mut rng);
            assert_eq!(alg.involution(&(&x * &y)), &alg.involution(&y) * &alg.involution(&x));
            assert_eq!(alg.involution(&alg.involution(&x)), x);
        }
    }

    #[test]
    fn involution_swaps_diagonal_entries_in_rank_two() {
        let alg = CliffordAlgebra::<Rational>::new(2).unwrap();
        let v: Vec<Rational> = (1..=8).map(q).collect();
        let x = alg.unflatten_even(&v).unwrap();
        let t = alg.flatten_even(&alg.involution(&x)).unwrap();
        // blocks [[a, b], [c, d]] become the adjugates [[d, -b], [-c, a]]
        let expected: Vec<Rational> = [4, -2, -3, 1, 8, -6, -7, 5].iter().map(|&a| q(a)).collect();
        assert_eq!(t, expected);
        // in characteristic 2 the off-diagonal entries stay put
        let alg = CliffordAlgebra::<Gf2>::new(2).unwrap();
        let v: Vec<Gf2> = [1, 1, 0, 0, 0, 1, 1, 1].iter().map(|&a| Gf2::new(a)).collect();
        let t = alg.flatten_even(&alg.involution(&alg.unflatten_even(&v).unwrap())).unwrap();
        let expected: Vec<Gf2> = [0, 1, 0, 1, 1, 1, 1, 0].iter().map(|&a| Gf2::new(a)).collect();
        assert_eq!(t, expected);
    }

    #[test]
    fn traces() {
        let alg = CliffordAlgebra::<Gf3>::new(3).unwrap();
        assert_eq!(alg.identity().reduced_trace(), Gf3::new(8));
        for n in 1..=5 {
            let alg = CliffordAlgebra::<Rational>::new(n).unwrap();
            let x = alg.phi_labels(&["v1", "v1*"]).unwrap();
            assert_eq!(x.reduced_trace(), q(1 << (n - 1)));
            if n >= 2 {
                assert_eq!(alg.phi_labels(&["v1", "v2"]).unwrap().reduced_trace(), q(0));
            }
        }
    }

    #[test]
    fn even_flattening_round_trips() {
        let alg = CliffordAlgebra::<Gf3>::new(3).unwrap();
        assert_eq!(alg.even_dim(), 32);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = alg.random_even(&mut rng);
        assert_eq!(alg.unflatten_even(&alg.flatten_even(&x).unwrap()).unwrap(), x);
        assert_eq!(alg.flatten_even(alg.generator(0)), Err(AlgebraError::NotEven));
        let mixed = &alg.identity() + alg.generator(0);
        assert_eq!(alg.flatten_even(&mixed), Err(AlgebraError::MixedParity));
    }

    #[test]
    fn even_involution_types() {
        assert_eq!(CliffordAlgebra::<Rational>::new(4).unwrap().classify_even_involution().labels(), vec!["orthogonal"]);
        assert_eq!(CliffordAlgebra::<Gf3>::new(2).unwrap().classify_even_involution().labels(), vec!["symplectic"]);
        assert_eq!(CliffordAlgebra::<Gf2>::new(3).unwrap().classify_even_involution().labels(), vec!["center-nontrivial"]);
        assert_eq!(
            CliffordAlgebra::<Gf2>::new(2).unwrap().classify_even_involution().labels(),
            vec!["orthogonal", "symplectic"]
        );
    }

    #[test]
    fn monomial_decomposition() {
        let alg = CliffordAlgebra::<Gf3>::new(2).unwrap();
        let basis = MonomialBasis::new(&alg).unwrap();
        assert_eq!(basis.len(), 16);
        let mut unit = vec![Gf3::new(0); 16];
        unit[0] = Gf3::new(1);
        assert_eq!(basis.decompose(&alg.identity()).unwrap(), unit);
        let s = basis.index_of(&[Generator::Plain(1), Generator::Plain(2)]).unwrap();
        let mut unit = vec![Gf3::new(0); 16];
        unit[s] = Gf3::new(1);
        assert_eq!(basis.decompose(&alg.phi_labels(&["v1", "v2"]).unwrap()).unwrap(), unit);
        assert_eq!(basis.label(s), "v1 v2");
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = alg.random_element(&mut rng);
            assert_eq!(basis.recompose(&basis.decompose(&x).unwrap()).unwrap(), x);
        }
        assert!(basis.index_of(&[Generator::Plain(2), Generator::Plain(1)]).is_err());
    }

    #[test]
    fn monomial_basis_needs_a_field() {
        let alg = CliffordAlgebra::<crate::ring::Integer>::new(2).unwrap();
        assert_eq!(MonomialBasis::new(&alg).unwrap_err(), AlgebraError::NotAField("z"));
    }
}
