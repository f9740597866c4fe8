//! Symmetric, skew, symmetrized and alternating elements of `(Cl, τ)`, and
//! semi-traces given by class representatives.
//!
//! Subspaces are computed in coordinates: on the even part these are the
//! flattened parity blocks (dimension `2 · 4^{n-1}`), on the whole algebra
//! the row-major matrix entries. `τ` permutes coordinate directions up to
//! sign, so each subspace has a basis supported on the orbits.

use std::sync::OnceLock;

use crate::clifford::{CliffordAlgebra, CliffordElement};
use crate::error::{AlgebraError, Result};
use crate::exterior::Parity;
use crate::linalg::Matrix;
use crate::report::Verdict;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The even subalgebra `Cl_0`.
    Even,
    /// All of `Cl`.
    Full,
}

/// A subspace of `Cl` or `Cl_0`, in coordinates. The basis vectors have
/// disjoint supports, each with coefficient `1` at its first coordinate.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<R> {
    domain: Domain,
    ambient: usize,
    vectors: Vec<Vec<R>>,
    supports: Vec<Vec<usize>>,
}

impl<R: Ring> SubspaceBasis<R> {
    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<R>] {
        &self.vectors
    }

    /// Coefficients of `v` in this basis, if `v` lies in the span.
    pub fn coefficients(&self, v: &[R]) -> Option<Vec<R>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.vectors.len());
        for (b, support) in self.vectors.iter().zip(&self.supports) {
            let c = v[support[0]].clone();
            for &p in support {
                residual[p] = residual[p].clone() - c.clone() * b[p].clone();
            }
            coeffs.push(c);
        }
        residual.iter().all(R::is_zero).then_some(coeffs)
    }

    pub fn contains_coordinates(&self, v: &[R]) -> bool {
        self.coefficients(v).is_some()
    }

    pub fn contains_space(&self, other: &SubspaceBasis<R>) -> bool {
        other.vectors.iter().all(|v| self.contains_coordinates(v))
    }
}

/// The four `τ`-subspaces of a domain, computed on demand and cached.
pub struct InvolutionSpaces<R> {
    alg: CliffordAlgebra<R>,
    domain: Domain,
    alt: OnceLock<SubspaceBasis<R>>,
    sym: OnceLock<SubspaceBasis<R>>,
    skew: OnceLock<SubspaceBasis<R>>,
    symd: OnceLock<SubspaceBasis<R>>,
}

impl<R: Ring> InvolutionSpaces<R> {
    /// Requires a field: over other rings these are image sheaves, which are
    /// not computed here.
    pub fn new(alg: &CliffordAlgebra<R>, domain: Domain) -> Result<Self> {
        R::require_field()?;
        Ok(InvolutionSpaces {
            alg: alg.clone(),
            domain,
            alt: OnceLock::new(),
            sym: OnceLock::new(),
            skew: OnceLock::new(),
            symd: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &CliffordAlgebra<R> {
        &self.alg
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        match self.domain {
            Domain::Even => self.alg.even_dim(),
            Domain::Full => self.alg.dim() * self.alg.dim(),
        }
    }

    pub fn coordinates(&self, x: &CliffordElement<R>) -> Result<Vec<R>> {
        if x.n() != self.alg.n() {
            return Err(AlgebraError::RankMismatch { left: x.n(), right: self.alg.n() });
        }
        match self.domain {
            Domain::Even => self.alg.flatten_even(x),
            Domain::Full => Ok(x.matrix().as_slice().to_vec()),
        }
    }

    pub fn element(&self, v: &[R]) -> Result<CliffordElement<R>> {
        match self.domain {
            Domain::Even => self.alg.unflatten_even(v),
            Domain::Full => {
                let d = self.alg.dim();
                self.alg.element(Matrix::from_vec(d, d, v.to_vec())?)
            }
        }
    }

    fn unit(&self, p: usize) -> Vec<R> {
        let mut v = vec![R::zero(); self.dim()];
        v[p] = R::one();
        v
    }

    /// `τ(e_p) = sign_p · e_{target_p}` on coordinate directions.
    fn tau_permutation(&self) -> Vec<(usize, R)> {
        (0..self.dim())
            .map(|p| {
                let x = self.element(&self.unit(p)).expect("unit vector has the right length");
                let t = self.coordinates(&self.alg.involution(&x)).expect("τ preserves the domain");
                let q = t.iter().position(|c| !c.is_zero()).expect("τ is injective");
                (q, t[q].clone())
            })
            .collect()
    }

    /// Image (`image = true`) or kernel of `Id + s·τ`, orbit by orbit.
    fn orbit_space(&self, s: i64, image: bool) -> SubspaceBasis<R> {
        let s = R::from_i64(s);
        let dim = self.dim();
        let tau = self.tau_permutation();
        let mut vectors = Vec::new();
        let mut supports = Vec::new();
        for (p, (q, sign)) in tau.iter().enumerate() {
            let factor = s.clone() * sign.clone();
            if *q == p {
                // (1 + s·sign) is zero or a unit over a field
                if (R::one() + factor).is_zero() != image {
                    vectors.push(self.unit(p));
                    supports.push(vec![p]);
                }
            } else if p < *q {
                let mut v = self.unit(p);
                v[*q] = if image { factor } else { -factor };
                vectors.push(v);
                supports.push(vec![p, *q]);
            }
        }
        SubspaceBasis { domain: self.domain, ambient: dim, vectors, supports }
    }

    /// `Alt = Img(Id - τ)`.
    pub fn alt(&self) -> &SubspaceBasis<R> {
        self.alt.get_or_init(|| self.orbit_space(-1, true))
    }

    /// `Sym = Ker(Id - τ)`.
    pub fn sym(&self) -> &SubspaceBasis<R> {
        self.sym.get_or_init(|| self.orbit_space(-1, false))
    }

    /// `Skew = Ker(Id + τ)`.
    pub fn skew(&self) -> &SubspaceBasis<R> {
        self.skew.get_or_init(|| self.orbit_space(1, false))
    }

    /// `Symd = Img(Id + τ)`.
    pub fn symd(&self) -> &SubspaceBasis<R> {
        self.symd.get_or_init(|| self.orbit_space(1, true))
    }

    pub fn basis_elements(&self, basis: &SubspaceBasis<R>) -> Vec<CliffordElement<R>> {
        basis.vectors().iter().map(|v| self.element(v).expect("coordinates of this domain")).collect()
    }

    pub fn in_alternating(&self, x: &CliffordElement<R>) -> Result<bool> {
        if self.domain == Domain::Even && x.parity() == Parity::Mixed {
            return Err(AlgebraError::MixedParity);
        }
        Ok(self.alt().contains_coordinates(&self.coordinates(x)?))
    }

    pub fn in_symmetric(&self, x: &CliffordElement<R>) -> Result<bool> {
        Ok(self.sym().contains_coordinates(&self.coordinates(x)?))
    }

    /// `Trd(x y)` for `x`, `y` given in coordinates.
    pub fn trace_pairing(&self, x: &[R], y: &[R]) -> R {
        let mut acc = R::zero();
        let mut offset = 0;
        let blocks: Vec<usize> = match self.domain {
            Domain::Even => vec![self.alg.even_indices().len(), self.alg.odd_indices().len()],
            Domain::Full => vec![self.alg.dim()],
        };
        for b in blocks {
            for i in 0..b {
                for j in 0..b {
                    let u = &x[offset + i * b + j];
                    if u.is_zero() {
                        continue;
                    }
                    let v = &y[offset + j * b + i];
                    if !v.is_zero() {
                        acc = acc + u.clone() * v.clone();
                    }
                }
            }
            offset += b * b;
        }
        acc
    }

    /// `Trd(a s) = 0` for every alternating basis vector `a` and symmetric
    /// basis vector `s`.
    pub fn trace_orthogonality(&self) -> Verdict {
        let mut v = Verdict::new();
        for (i, a) in self.alt().vectors().iter().enumerate() {
            for (j, s) in self.sym().vectors().iter().enumerate() {
                let t = self.trace_pairing(a, s);
                v.check(t.is_zero(), || format!("Trd(alt[{i}] * sym[{j}]) = {t}, expected 0"));
            }
        }
        v.note(format!("dim Alt = {}, dim Sym = {}", self.alt().dim(), self.sym().dim()));
        v
    }
}

/// A semi-trace `s ↦ Trd(ℓ s)` on symmetric elements, given by a
/// representative `ℓ` with `ℓ + τ(ℓ) = 1`.
#[derive(Clone, Debug)]
pub struct SemiTrace<R> {
    representative: CliffordElement<R>,
}

impl<R: Ring> SemiTrace<R> {
    pub fn representative(&self) -> &CliffordElement<R> {
        &self.representative
    }

    pub fn evaluate(&self, s: &CliffordElement<R>) -> R {
        self.representative.trace_pairing(s)
    }

    /// Evaluation on even coordinates.
    pub fn evaluate_coordinates(&self, spaces: &InvolutionSpaces<R>, s: &[R]) -> Result<R> {
        Ok(spaces.trace_pairing(&spaces.coordinates(&self.representative)?, s))
    }

    /// Compares two semi-traces on every symmetric basis vector; returns the
    /// first disagreement.
    pub fn disagreement(&self, other: &SemiTrace<R>, spaces: &InvolutionSpaces<R>) -> Result<Option<(usize, R, R)>> {
        let a = spaces.coordinates(&self.representative)?;
        let b = spaces.coordinates(&other.representative)?;
        for (i, s) in spaces.sym().vectors().iter().enumerate() {
            let (x, y) = (spaces.trace_pairing(&a, s), spaces.trace_pairing(&b, s));
            if x != y {
                return Ok(Some((i, x, y)));
            }
        }
        Ok(None)
    }

    pub fn agrees_with(&self, other: &SemiTrace<R>, spaces: &InvolutionSpaces<R>) -> Result<bool> {
        Ok(self.disagreement(other, spaces)?.is_none())
    }
}

/// Builds the semi-trace of `ℓ`, checking `ℓ` is even with `ℓ + τ(ℓ) = 1`.
pub fn semi_trace_from<R: Ring>(alg: &CliffordAlgebra<R>, representative: CliffordElement<R>) -> Result<SemiTrace<R>> {
    match representative.parity() {
        Parity::Even => {}
        Parity::Mixed => return Err(AlgebraError::MixedParity),
        Parity::Odd => return Err(AlgebraError::NotEven),
    }
    if !(&representative + &alg.involution(&representative)).matrix().is_identity() {
        return Err(AlgebraError::NotASemiTraceRepresentative);
    }
    Ok(SemiTrace { representative })
}
