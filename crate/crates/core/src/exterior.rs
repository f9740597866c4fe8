//! The exterior algebra of a free module of rank `n`.
//!
//! Basis vectors `v_I` are indexed by subsets `I` of `{1, ..., n}`, encoded
//! as bitmasks (bit `i - 1` set iff `i ∈ I`). The global basis order is
//! ascending mask value.

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{AlgebraError, Result};
use crate::linalg::Matrix;
use crate::ring::{minus_one_pow, Ring};

/// Largest supported rank; `2^n` coefficients are stored densely.
pub const MAX_RANK: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_degree(k: usize) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a product of homogeneous elements.
    pub fn compose(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_exponent(k: u64) -> Sign {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_ring<R: Ring>(self) -> R {
        match self {
            Sign::Plus => R::one(),
            Sign::Minus => -R::one(),
        }
    }
}

/// A subset `I ⊆ [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    mask: u32,
}

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if (1..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(AlgebraError::UnsupportedRank { n, min: 1, max: MAX_RANK })
    }
}

impl SubsetIndex {
    pub fn new(n: usize, mask: u32) -> Result<Self> {
        check_rank(n)?;
        if mask >> n != 0 {
            return Err(AlgebraError::ShapeMismatch(format!("mask {mask:#b} outside [{n}]")));
        }
        Ok(SubsetIndex { n, mask })
    }

    /// Builds `I` from its (1-based) elements.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        check_rank(n)?;
        let mut mask = 0u32;
        for &i in elements {
            if i == 0 || i > n {
                return Err(AlgebraError::ShapeMismatch(format!("{i} is not in [{n}]")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(SubsetIndex { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        SubsetIndex { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        SubsetIndex { n, mask: (1u32 << n) - 1 }
    }

    /// All subsets of `[n]` in ascending mask order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetIndex> {
        (0..1u32 << n).map(move |mask| SubsetIndex { n, mask })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn index(self) -> usize {
        self.mask as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.n && self.mask & (1 << (i - 1)) != 0
    }

    pub fn size(self) -> usize {
        self.mask.count_ones() as usize
    }

    /// `ΣI`, the sum of the elements.
    pub fn sum(self) -> usize {
        self.elements().iter().sum()
    }

    pub fn parity(self) -> Parity {
        Parity::of_degree(self.size())
    }

    pub fn complement(self) -> SubsetIndex {
        SubsetIndex { n: self.n, mask: !self.mask & ((1u32 << self.n) - 1) }
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.contains(i)).collect()
    }

    /// 1-based position of `i` among the elements in increasing order.
    pub fn position(self, i: usize) -> Option<usize> {
        if !self.contains(i) {
            return None;
        }
        Some((self.mask & ((1u32 << (i - 1)) - 1)).count_ones() as usize + 1)
    }

    pub fn without(self, i: usize) -> SubsetIndex {
        SubsetIndex { n: self.n, mask: self.mask & !(1 << (i - 1)) }
    }

    /// The sign `(-1)^{ΣI - |I|}` pairing `v_I` with `v_{I^c}`.
    pub fn complement_sign(self) -> Sign {
        Sign::from_exponent((self.sum() - self.size()) as u64)
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `(-1)^{ΣI - |I|}` as a ring element.
pub fn subset_sign<R: Ring>(i: SubsetIndex) -> R {
    i.complement_sign().to_ring()
}

/// `v_I ∧ v_J = sign · v_{I ∪ J}`, or `None` when `I` and `J` meet.
pub fn wedge_basis(i: SubsetIndex, j: SubsetIndex) -> Result<Option<(Sign, SubsetIndex)>> {
    if i.n != j.n {
        return Err(AlgebraError::RankMismatch { left: i.n, right: j.n });
    }
    if i.mask & j.mask != 0 {
        return Ok(None);
    }
    // count pairs (a, b) in I x J with a > b
    let inversions: u32 = j.elements().iter().map(|&b| (i.mask >> b).count_ones()).sum();
    Ok(Some((Sign::from_exponent(inversions as u64), SubsetIndex { n: i.n, mask: i.mask | j.mask })))
}

/// An element of `∧V`, stored as `2^n` coefficients in ascending mask order.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorVector<R> {
    n: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> ExteriorVector<R> {
    pub fn zero(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(ExteriorVector { n, coeffs: vec![R::zero(); 1 << n] })
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::basis(SubsetIndex::empty(n))
    }

    pub fn basis(i: SubsetIndex) -> Result<Self> {
        let mut v = Self::zero(i.n)?;
        v.coeffs[i.index()] = R::one();
        Ok(v)
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<R>) -> Result<Self> {
        check_rank(n)?;
        if coeffs.len() != 1 << n {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} coefficients for rank {n}",
                coeffs.len()
            )));
        }
        Ok(ExteriorVector { n, coeffs })
    }

    pub fn random<G: rand::Rng + ?Sized>(n: usize, rng: &mut G) -> Result<Self> {
        check_rank(n)?;
        Ok(ExteriorVector { n, coeffs: (0..1 << n).map(|_| R::sample(rng)).collect() })
    }

    /// Random element supported on subsets of the given parity.
    pub fn random_homogeneous<G: rand::Rng + ?Sized>(
        n: usize,
        parity: Parity,
        rng: &mut G,
    ) -> Result<Self> {
        let mut v = Self::random(n, rng)?;
        for i in SubsetIndex::all(n) {
            if i.parity() != parity {
                v.coeffs[i.index()] = R::zero();
            }
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: SubsetIndex) -> &R {
        &self.coeffs[i.index()]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: SubsetIndex, value: R) {
        self.coeffs[i.index()] = value;
    }

    pub fn scale(&self, c: &R) -> Self {
        ExteriorVector { n: self.n, coeffs: self.coeffs.iter().map(|x| c.clone() * x.clone()).collect() }
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for i in SubsetIndex::all(self.n) {
            if !self.coeff(i).is_zero() {
                match i.parity() {
                    Parity::Even => even = true,
                    _ => odd = true,
                }
            }
        }
        match (even, odd) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(AlgebraError::RankMismatch { left: self.n, right: other.n });
        }
        let mut out = Self::zero(self.n)?;
        for i in SubsetIndex::all(self.n) {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in SubsetIndex::all(self.n) {
                let b = other.coeff(j);
                if b.is_zero() {
                    continue;
                }
                if let Some((sign, k)) = wedge_basis(i, j)? {
                    let term = sign.to_ring::<R>() * a.clone() * b.clone();
                    out.coeffs[k.index()] = out.coeffs[k.index()].clone() + term;
                }
            }
        }
        Ok(out)
    }

    /// Reverses the order of wedge factors: `v_I ↦ (-1)^{|I|(|I|-1)/2} v_I`.
    pub fn reversal(&self) -> Self {
        let coeffs = SubsetIndex::all(self.n)
            .map(|i| {
                let k = i.size() as u64;
                minus_one_pow::<R>(k * k.saturating_sub(1) / 2) * self.coeff(i).clone()
            })
            .collect();
        ExteriorVector { n: self.n, coeffs }
    }

    /// Coefficient of `v_{[n]}`.
    pub fn pi_top(&self) -> R {
        self.coeff(SubsetIndex::full(self.n)).clone()
    }
}

impl<R: Ring> Add for &ExteriorVector<R> {
    type Output = ExteriorVector<R>;
    fn add(self, rhs: Self) -> ExteriorVector<R> {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        ExteriorVector { n: self.n, coeffs }
    }
}

impl<R: Ring> Sub for &ExteriorVector<R> {
    type Output = ExteriorVector<R>;
    fn sub(self, rhs: Self) -> ExteriorVector<R> {
        assert_eq!(self.n, rhs.n, "rank mismatch");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        ExteriorVector { n: self.n, coeffs }
    }
}

impl<R: Ring> fmt::Debug for ExteriorVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for ExteriorVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = SubsetIndex::all(self.n)
            .filter(|&i| !self.coeff(i).is_zero())
            .map(|i| format!("{}*v{}", self.coeff(i), i))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Matrix of `ℓ_x : y ↦ x ∧ y`.
pub fn left_mult_matrix<R: Ring>(x: &ExteriorVector<R>) -> Result<Matrix<R>> {
    let n = x.n();
    let dim = 1usize << n;
    let mut m = Matrix::zeros(dim, dim);
    for j in SubsetIndex::all(n) {
        let column = x.wedge(&ExteriorVector::basis(j)?)?;
        for (i, c) in column.coeffs().iter().enumerate() {
            m[(i, j.index())] = c.clone();
        }
    }
    Ok(m)
}

/// Matrix of `ℓ_{v_i}`, built directly from [`wedge_basis`].
pub fn basis_left_mult_matrix<R: Ring>(n: usize, i: usize) -> Result<Matrix<R>> {
    let vi = SubsetIndex::from_elements(n, &[i])?;
    let dim = 1usize << n;
    let mut m = Matrix::zeros(dim, dim);
    for j in SubsetIndex::all(n) {
        if let Some((sign, k)) = wedge_basis(vi, j)? {
            m[(k.index(), j.index())] = sign.to_ring();
        }
    }
    Ok(m)
}

/// Matrix of the contraction `d_{v_i^*}`:
/// `v_I ↦ (-1)^{pos(i, I) + 1} v_{I \ {i}}` for `i ∈ I`, and `0` otherwise.
pub fn contraction_matrix<R: Ring>(n: usize, i: usize) -> Result<Matrix<R>> {
    check_rank(n)?;
    if i == 0 || i > n {
        return Err(AlgebraError::ShapeMismatch(format!("{i} is not in [{n}]")));
    }
    let dim = 1usize << n;
    let mut m = Matrix::zeros(dim, dim);
    for set in SubsetIndex::all(n) {
        if let Some(pos) = set.position(i) {
            m[(set.without(i).index(), set.index())] = minus_one_pow(pos as u64 + 1);
        }
    }
    Ok(m)
}
