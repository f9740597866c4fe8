//! Quadratic and bilinear forms: the hyperbolic form on `H(V) = V ⊕ V*`,
//! and the forms `b_∧`, `q_∧` on the exterior algebra.
//!
//! Quadratic forms are kept as evaluation procedures. A symmetric matrix
//! cannot represent a quadratic form in characteristic 2, so only polar
//! forms get Gram matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::exterior::{check_rank, subset_sign, ExteriorVector, SubsetIndex};
use crate::linalg::{Matrix, SignedPermutation};
use crate::ring::Ring;

/// A generator `v_i` or `v_i^*` of `H(V)`, with `i` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Plain(usize),
    Dual(usize),
}

impl Generator {
    /// Parses `v3` or `v3*`.
    pub fn parse(label: &str) -> Result<Self> {
        let bad = || AlgebraError::BadLabel(label.to_string());
        let body = label.strip_prefix('v').ok_or_else(bad)?;
        let (digits, dual) = match body.strip_suffix('*') {
            Some(d) => (d, true),
            None => (body, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let i: usize = digits.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(if dual { Generator::Dual(i) } else { Generator::Plain(i) })
    }

    pub fn index(self) -> usize {
        match self {
            Generator::Plain(i) | Generator::Dual(i) => i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Plain(i) => write!(f, "v{i}"),
            Generator::Dual(i) => write!(f, "v{i}*"),
        }
    }
}

/// `H(V)` for `V` free of rank `n`, with ordered basis
/// `v_1, ..., v_n, v_n^*, ..., v_1^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperbolicSpace {
    n: usize,
}

impl HyperbolicSpace {
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(HyperbolicSpace { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn dim(self) -> usize {
        2 * self.n
    }

    /// Position of a generator in the basis order.
    pub fn position(self, g: Generator) -> Result<usize> {
        let i = g.index();
        if i == 0 || i > self.n {
            return Err(AlgebraError::BadLabel(g.to_string()));
        }
        Ok(match g {
            Generator::Plain(i) => i - 1,
            Generator::Dual(i) => 2 * self.n - i,
        })
    }

    pub fn generator(self, k: usize) -> Generator {
        assert!(k < self.dim(), "basis index out of range");
        if k < self.n {
            Generator::Plain(k + 1)
        } else {
            Generator::Dual(2 * self.n - k)
        }
    }

    /// Index of the basis vector paired with `k` by the polar form.
    pub fn partner(self, k: usize) -> usize {
        2 * self.n - 1 - k
    }

    pub fn basis(self) -> Vec<Generator> {
        (0..self.dim()).map(|k| self.generator(k)).collect()
    }

    pub fn unit_vector<R: Ring>(self, k: usize) -> Vec<R> {
        let mut v = vec![R::zero(); self.dim()];
        v[k] = R::one();
        v
    }
}

/// `q_{2n}(x + g) = g(x)`: the sum of products of paired coordinates.
pub fn q_hyperbolic<R: Ring>(w: &[R]) -> R {
    let dim = w.len();
    assert!(dim % 2 == 0, "hyperbolic vectors have even length");
    (0..dim / 2).fold(R::zero(), |acc, i| acc + w[i].clone() * w[dim - 1 - i].clone())
}

/// Gram matrix of the polar of `q_{2n}`: ones on the antidiagonal.
pub fn hyperbolic_polar_gram<R: Ring>(n: usize) -> Matrix<R> {
    let dim = 2 * n;
    Matrix::from_fn(dim, dim, |i, j| if i + j == dim - 1 { R::one() } else { R::zero() })
}

/// The polar `b_q(x, y) = q(x + y) - q(x) - q(y)`, computed literally.
pub fn polar<R: Ring, V>(q: impl Fn(&V) -> R, x: &V, y: &V) -> R
where
    for<'a> &'a V: std::ops::Add<&'a V, Output = V>,
{
    q(&(x + y)) - q(x) - q(y)
}

fn add_slices<R: Ring>(x: &[R], y: &[R]) -> Vec<R> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

type Evaluation<R> = Arc<dyn Fn(&[R]) -> R + Send + Sync>;

/// A quadratic form on a free module, given by evaluation.
#[derive(Clone)]
pub struct QuadraticForm<R> {
    dim: usize,
    eval: Evaluation<R>,
}

impl<R: Ring> QuadraticForm<R> {
    pub fn new(dim: usize, eval: impl Fn(&[R]) -> R + Send + Sync + 'static) -> Self {
        QuadraticForm { dim, eval: Arc::new(eval) }
    }

    pub fn hyperbolic(n: usize) -> Self {
        Self::new(2 * n, |w: &[R]| q_hyperbolic(w))
    }

    /// `q_∧` on coefficient vectors of `∧V`.
    pub fn wedge(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Self::new(1 << n, move |w: &[R]| {
            q_wedge(&ExteriorVector::from_coeffs(n, w.to_vec()).expect("length checked by caller"))
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn evaluate(&self, x: &[R]) -> Result<R> {
        if x.len() != self.dim {
            return Err(AlgebraError::ShapeMismatch(format!("vector of length {} for dimension {}", x.len(), self.dim)));
        }
        Ok((self.eval)(x))
    }

    pub fn polar(&self, x: &[R], y: &[R]) -> Result<R> {
        let sum = add_slices(x, y);
        Ok(self.evaluate(&sum)? - self.evaluate(x)? - self.evaluate(y)?)
    }

    /// Gram matrix of the polar form on the standard basis.
    pub fn polar_gram(&self) -> BilinearForm<R> {
        let unit = |k: usize| {
            let mut v = vec![R::zero(); self.dim];
            v[k] = R::one();
            v
        };
        let units: Vec<Vec<R>> = (0..self.dim).map(unit).collect();
        let diag: Vec<R> = units.iter().map(|e| (self.eval)(e)).collect();
        let gram = Matrix::from_fn(self.dim, self.dim, |i, j| {
            (self.eval)(&add_slices(&units[i], &units[j])) - diag[i].clone() - diag[j].clone()
        });
        BilinearForm { gram }
    }
}

impl<R> fmt::Debug for QuadraticForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm(dim = {})", self.dim)
    }
}

/// A bilinear form given by its Gram matrix: `b(x, y) = x^T G y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<R> {
    gram: Matrix<R>,
}

impl<R: Ring> BilinearForm<R> {
    pub fn new(gram: Matrix<R>) -> Result<Self> {
        if !gram.is_square() {
            return Err(AlgebraError::ShapeMismatch("Gram matrix must be square".into()));
        }
        Ok(BilinearForm { gram })
    }

    pub fn gram(&self) -> &Matrix<R> {
        &self.gram
    }

    pub fn evaluate(&self, x: &[R], y: &[R]) -> Result<R> {
        let gy = self.gram.mul_vec(y)?;
        if x.len() != gy.len() {
            return Err(AlgebraError::ShapeMismatch("vector length".into()));
        }
        Ok(crate::linalg::dot(x, &gy))
    }

    pub fn classify(&self) -> BilinearClass {
        classify_bilinear(&self.gram)
    }
}

/// Which of the symmetry conditions a Gram matrix satisfies. In
/// characteristic 2 a form can be both symmetric and alternating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BilinearClass {
    pub symmetric: bool,
    pub skew: bool,
    pub alternating: bool,
}

impl BilinearClass {
    /// `symmetric` and `alternating` as applicable; otherwise `skew_only` or
    /// `none`.
    pub fn labels(self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.symmetric {
            out.push("symmetric");
        }
        if self.alternating {
            out.push("alternating");
        }
        if out.is_empty() {
            out.push(if self.skew { "skew_only" } else { "none" });
        }
        out
    }
}

impl fmt::Display for BilinearClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join("+"))
    }
}

pub fn classify_bilinear<R: Ring>(gram: &Matrix<R>) -> BilinearClass {
    assert!(gram.is_square(), "Gram matrix must be square");
    let d = gram.rows();
    let mut symmetric = true;
    let mut skew = true;
    for i in 0..d {
        for j in 0..d {
            let a = &gram[(i, j)];
            let b = &gram[(j, i)];
            symmetric &= a == b;
            skew &= *a == -b.clone();
        }
    }
    let alternating = skew && (0..d).all(|i| gram[(i, i)].is_zero());
    BilinearClass { symmetric, skew, alternating }
}

/// `b_∧(x, y) = Σ_I (-1)^{ΣI - |I|} x_I y_{I^c}`.
pub fn b_wedge<R: Ring>(x: &ExteriorVector<R>, y: &ExteriorVector<R>) -> Result<R> {
    if x.n() != y.n() {
        return Err(AlgebraError::RankMismatch { left: x.n(), right: y.n() });
    }
    let mut acc = R::zero();
    for i in SubsetIndex::all(x.n()) {
        let (a, b) = (x.coeff(i), y.coeff(i.complement()));
        if !a.is_zero() && !b.is_zero() {
            acc = acc + subset_sign::<R>(i) * a.clone() * b.clone();
        }
    }
    Ok(acc)
}

/// `b_∧(x, y)` as the top coefficient of `x̄ ∧ y`.
pub fn b_wedge_via_reversal<R: Ring>(x: &ExteriorVector<R>, y: &ExteriorVector<R>) -> Result<R> {
    Ok(x.reversal().wedge(y)?.pi_top())
}

/// Gram of `b_∧` as a signed permutation: column `J` has
/// `(-1)^{ΣJ^c - |J^c|}` in row `J^c`.
pub fn b_wedge_signed_perm<R: Ring>(n: usize) -> Result<SignedPermutation<R>> {
    check_rank(n)?;
    let (target, sign) = SubsetIndex::all(n)
        .map(|j| (j.complement().index(), subset_sign::<R>(j.complement())))
        .unzip();
    SignedPermutation::new(target, sign)
}

pub fn b_wedge_gram<R: Ring>(n: usize) -> Result<Matrix<R>> {
    Ok(b_wedge_signed_perm(n)?.to_matrix())
}

/// `q_∧(x) = Σ_{1 ∈ I} (-1)^{ΣI - |I|} x_I x_{I^c}`.
pub fn q_wedge<R: Ring>(x: &ExteriorVector<R>) -> R {
    let mut acc = R::zero();
    for i in SubsetIndex::all(x.n()).filter(|i| i.contains(1)) {
        let (a, b) = (x.coeff(i), x.coeff(i.complement()));
        if !a.is_zero() && !b.is_zero() {
            acc = acc + subset_sign::<R>(i) * a.clone() * b.clone();
        }
    }
    acc
}

/// Whether `polar(q_∧) = b_∧` is expected: `n ≡ 0, 1 (mod 4)` or
/// characteristic 2.
pub fn q_wedge_polar_expected<R: Ring>(n: usize) -> bool {
    n % 4 <= 1 || R::characteristic() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Gf2, Gf3, Rational};

    fn ev<R: Ring>(n: usize, terms: &[(&[usize], i64)]) -> ExteriorVector<R> {
        let mut v = ExteriorVector::<R>::zero(n).unwrap();
        for (e, c) in terms {
            let i = SubsetIndex::from_elements(n, e).unwrap();
            v.set_coeff(i, v.coeff(i).clone() + R::from_i64(*c));
        }
        v
    }

    #[test]
    fn generator_labels_round_trip() {
        let h = HyperbolicSpace::new(3).unwrap();
        for k in 0..6 {
            let g = h.generator(k);
            assert_eq!(Generator::parse(&g.to_string()).unwrap(), g);
            assert_eq!(h.position(g).unwrap(), k);
        }
        assert_eq!(h.position(Generator::Dual(3)).unwrap(), 3);
        assert!(Generator::parse("w1").is_err());
        assert!(Generator::parse("v0").is_err());
        assert!(Generator::parse("v*").is_err());
        assert!(h.position(Generator::Plain(4)).is_err());
    }

    #[test]
    fn hyperbolic_values() {
        let h = HyperbolicSpace::new(2).unwrap();
        let v1 = h.unit_vector::<Rational>(0);
        let v1d = h.unit_vector::<Rational>(3);
        let v2d = h.unit_vector::<Rational>(2);
        assert_eq!(q_hyperbolic(&v1), Rational::from_i64(0));
        assert_eq!(q_hyperbolic(&add_slices(&v1, &v1d)), Rational::from_i64(1));
        assert_eq!(q_hyperbolic(&add_slices(&v1, &v2d)), Rational::from_i64(0));
        let q = QuadraticForm::<Rational>::hyperbolic(2);
        assert_eq!(q.polar(&v1, &v1d).unwrap(), Rational::from_i64(1));
        assert_eq!(q.polar_gram().gram(), &hyperbolic_polar_gram(2));
    }

    #[test]
    fn polar_on_the_diagonal_is_twice_the_form() {
        let q = QuadraticForm::<Gf2>::hyperbolic(2);
        let x: Vec<Gf2> = [1, 1, 0, 1].iter().map(|&c| Gf2::new(c)).collect();
        assert_eq!(q.evaluate(&x).unwrap(), Gf2::new(1));
        assert_eq!(q.polar(&x, &x).unwrap(), Gf2::new(0));
        let q3 = QuadraticForm::<Gf3>::hyperbolic(2);
        let y: Vec<Gf3> = [1, 1, 0, 1].iter().map(|&c| Gf3::new(c)).collect();
        assert_eq!(q3.polar(&y, &y).unwrap(), Gf3::new(2));
    }

    #[test]
    fn polar_closure_matches_method() {
        let x = ev::<Rational>(2, &[(&[1], 1), (&[], 2)]);
        let y = ev::<Rational>(2, &[(&[2], 3), (&[1, 2], 1)]);
        let direct = polar(q_wedge, &x, &y);
        let via_form = QuadraticForm::wedge(2).unwrap().polar(x.coeffs(), y.coeffs()).unwrap();
        assert_eq!(direct, via_form);
    }

    #[test]
    fn b_wedge_values() {
        let one = ev::<Rational>(2, &[(&[], 1)]);
        let top = ev::<Rational>(2, &[(&[1, 2], 1)]);
        let v1 = ev::<Rational>(2, &[(&[1], 1)]);
        let v2 = ev::<Rational>(2, &[(&[2], 1)]);
        assert_eq!(b_wedge(&one, &top).unwrap(), Rational::from_i64(1));
        assert_eq!(b_wedge(&top, &one).unwrap(), Rational::from_i64(-1));
        assert_eq!(b_wedge(&v1, &v2).unwrap(), Rational::from_i64(1));
    }

    #[test]
    fn q_wedge_values() {
        for n in 1..=4 {
            for i in SubsetIndex::all(n) {
                assert!(q_wedge(&ExteriorVector::<Rational>::basis(i).unwrap()).is_zero());
            }
        }
        assert_eq!(q_wedge(&ev::<Rational>(2, &[(&[1], 1), (&[2], 1)])), Rational::from_i64(1));
        assert_eq!(q_wedge(&ev::<Rational>(2, &[(&[], 1), (&[1, 2], 1)])), Rational::from_i64(-1));
        assert_eq!(q_wedge(&ev::<Gf2>(2, &[(&[], 1), (&[1, 2], 1)])), Gf2::new(1));
    }

    #[test]
    fn classification_of_b_wedge() {
        let four = classify_bilinear(&b_wedge_gram::<Rational>(4).unwrap());
        assert_eq!(four.labels(), vec!["symmetric"]);
        let two = classify_bilinear(&b_wedge_gram::<Rational>(2).unwrap());
        assert_eq!(two.labels(), vec!["alternating"]);
        let two_char2 = classify_bilinear(&b_wedge_gram::<Gf2>(2).unwrap());
        assert_eq!(two_char2.labels(), vec!["symmetric", "alternating"]);
        let upper = Matrix::<Rational>::from_rows(vec![
            vec![Rational::from_i64(0), Rational::from_i64(1)],
            vec![Rational::from_i64(0), Rational::from_i64(0)],
        ])
        .unwrap();
        assert_eq!(classify_bilinear(&upper).labels(), vec!["none"]);
    }

    #[test]
    fn gram_agrees_with_formula_on_basis_pairs() {
        for n in 1..=4 {
            let g = b_wedge_gram::<Rational>(n).unwrap();
            let form = BilinearForm::new(g.clone()).unwrap();
            for i in SubsetIndex::all(n) {
                for j in SubsetIndex::all(n) {
                    let x = ExteriorVector::<Rational>::basis(i).unwrap();
                    let y = ExteriorVector::basis(j).unwrap();
                    let expected = b_wedge(&x, &y).unwrap();
                    assert_eq!(g[(i.index(), j.index())], expected);
                    assert_eq!(form.evaluate(x.coeffs(), y.coeffs()).unwrap(), expected);
                    assert_eq!(b_wedge_via_reversal(&x, &y).unwrap(), expected);
                }
            }
        }
    }

    /// In the basis `v_I (1 ∉ I)`, `±v_I (1 ∈ I)` the form `q_∧` is
    /// hyperbolic: pairs `(v_I, ±v_{I^c})` with polar value 1.
    #[test]
    fn q_wedge_is_hyperbolic() {
        fn check<R: Ring>(n: usize) {
            let q = QuadraticForm::<R>::wedge(n).unwrap();
            let dim = 1 << n;
            let basis: Vec<Vec<R>> = SubsetIndex::all(n)
                .map(|i| {
                    let mut v = vec![R::zero(); dim];
                    v[i.index()] = if i.contains(1) { subset_sign(i) } else { R::one() };
                    v
                })
                .collect();
            for i in SubsetIndex::all(n) {
                assert!(q.evaluate(&basis[i.index()]).unwrap().is_zero());
                for j in SubsetIndex::all(n) {
                    let b = q.polar(&basis[i.index()], &basis[j.index()]).unwrap();
                    let expected = if j == i.complement() { R::one() } else { R::zero() };
                    assert_eq!(b, expected, "n = {n}, I = {i}, J = {j}");
                }
            }
        }
        check::<Rational>(4);
        check::<Rational>(5);
        check::<Gf3>(1);
        check::<Gf2>(2);
        check::<Gf2>(3);
    }
}
