//! Explicit matrix representations of `sl(n)` and `gl(1)` together with their
//! tensor products over direct sums.
//!
//! Tensor bases are row-major with the first factor major: the basis vector
//! `e_i ⊗ f_j` of `V ⊗ W` has index `i·dim W + j`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::castle::{CastleError, Solution};
use crate::exactmat::{int, Rational, RationalMatrix};
use crate::liealg::{AlgebraSpec, FactorSpec};

/// Largest tensor space [`tensor_triplet`] will materialize.
pub const DESK_SCALE_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Castle(#[from] CastleError),
    #[error("representation {rep} is not available on {factor}")]
    UnsupportedRep { factor: FactorSpec, rep: RepKind },
    #[error("space dimension {space_dim} exceeds the desk-scale limit {limit}")]
    ExceedsDeskScale { space_dim: BigUint, limit: usize },
    #[error("tensor product of an empty list")]
    EmptyTensor,
}

/// Named representations available per factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    /// Identity representation `Λ₁`.
    L1,
    /// Its dual `Λ₁*`.
    L1Dual,
    /// `d`-th symmetric power `dΛ₁`.
    Sym(u32),
    /// Second exterior power `Λ₂`.
    L2,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::L1 => write!(f, "L1"),
            RepKind::L1Dual => write!(f, "L1*"),
            RepKind::Sym(d) => write!(f, "{d}L1"),
            RepKind::L2 => write!(f, "L2"),
        }
    }
}

/// A Lie algebra homomorphism given by the images of the basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: AlgebraSpec,
    degree: usize,
    matrices: Vec<RationalMatrix>,
}

impl Representation {
    /// # Panics
    /// If the number or shape of matrices does not match the algebra and degree.
    pub fn new(algebra: AlgebraSpec, degree: usize, matrices: Vec<RationalMatrix>) -> Self {
        assert_eq!(matrices.len(), algebra.dim(), "one matrix per basis element");
        assert!(
            matrices.iter().all(|m| m.rows() == degree && m.cols() == degree),
            "matrices must be degree × degree"
        );
        Self {
            algebra,
            degree,
            matrices,
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    /// Image of the algebra element with the given basis coordinates.
    pub fn apply(&self, coords: &[Rational]) -> RationalMatrix {
        assert_eq!(coords.len(), self.matrices.len());
        let mut acc = RationalMatrix::zeros(self.degree, self.degree);
        for (c, m) in coords.iter().zip(&self.matrices) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        acc
    }

    /// Checks `ρ([X_i, X_j]) = [ρ(X_i), ρ(X_j)]` on every basis pair,
    /// returning the first failing pair.
    pub fn check_homomorphism(&self) -> Result<(), (usize, usize)> {
        let pairs = (0..self.matrices.len()).flat_map(|i| (i + 1..self.matrices.len()).map(move |j| (i, j)));
        self.check_pairs(pairs)
    }

    /// Like [`Representation::check_homomorphism`] on the given pairs only.
    pub fn check_pairs(&self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<(), (usize, usize)> {
        let sparse: Vec<Sparse> = self.matrices.iter().map(Sparse::from_dense).collect();
        let mut brackets: HashMap<(FactorSpec, usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        let offsets = self.algebra.offsets();
        for (i, j) in pairs {
            let lhs = {
                // Structure constants only depend on the factor-local indices.
                let (fi, li) = self.algebra.locate(i);
                let (fj, lj) = self.algebra.locate(j);
                if fi == fj {
                    let factor = self.algebra.factors()[fi];
                    let local = brackets.entry((factor, li, lj)).or_insert_with(|| {
                        let single = AlgebraSpec::new(vec![factor]);
                        single.bracket(li, lj)
                    });
                    let mut acc = Sparse::zero(self.degree);
                    for (k, c) in local.iter() {
                        acc.add_scaled(&sparse[offsets[fi] + k], c);
                    }
                    acc
                } else {
                    Sparse::zero(self.degree)
                }
            };
            let rhs = sparse[i].commutator(&sparse[j]);
            if lhs != rhs {
                return Err((i, j));
            }
        }
        Ok(())
    }
}

/// Row-major sparse matrix used only for homomorphism checks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Sparse {
    rows: Vec<Vec<(usize, Rational)>>,
}

impl Sparse {
    fn zero(n: usize) -> Self {
        Self { rows: vec![Vec::new(); n] }
    }

    fn from_dense(m: &RationalMatrix) -> Self {
        let mut rows = vec![Vec::new(); m.rows()];
        for (i, j, v) in m.nonzeros() {
            rows[i].push((j, v.clone()));
        }
        Self { rows }
    }

    fn from_map(n: usize, map: HashMap<(usize, usize), Rational>) -> Self {
        let mut rows = vec![Vec::new(); n];
        for ((i, j), v) in map {
            if !v.is_zero() {
                rows[i].push((j, v));
            }
        }
        for r in &mut rows {
            r.sort_by_key(|(j, _)| *j);
        }
        Self { rows }
    }

    fn to_map(&self) -> HashMap<(usize, usize), Rational> {
        let mut map = HashMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                map.insert((i, *j), v.clone());
            }
        }
        map
    }

    fn add_scaled(&mut self, other: &Sparse, c: &Rational) {
        let mut map = self.to_map();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                *map.entry((i, *j)).or_insert_with(Rational::zero) += v * c;
            }
        }
        *self = Self::from_map(self.rows.len(), map);
    }

    fn commutator(&self, other: &Sparse) -> Sparse {
        let mut map: HashMap<(usize, usize), Rational> = HashMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    *map.entry((i, *j)).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
        for (i, row) in other.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &self.rows[*k] {
                    *map.entry((i, *j)).or_insert_with(Rational::zero) -= a * b;
                }
            }
        }
        Self::from_map(self.rows.len(), map)
    }
}

/// `Λ₁` of `sl(n)`: every basis element maps to itself.
pub fn identity_rep(n: usize) -> Representation {
    assert!(n >= 1, "identity_rep needs n ≥ 1");
    let factor = FactorSpec::Sl(n);
    Representation::new(AlgebraSpec::new(vec![factor]), n, factor.basis())
}

/// `gl(1)` acting on `V(1)` by `x ↦ x` (or `x ↦ −x` for the dual).
pub fn scalar_rep(dual: bool) -> Representation {
    let v = if dual { -Rational::one() } else { Rational::one() };
    Representation::new(
        AlgebraSpec::new(vec![FactorSpec::Gl1]),
        1,
        vec![RationalMatrix::from_vec(1, 1, vec![v])],
    )
}

/// `X ↦ −Xᵀ`.
pub fn dual_rep(r: &Representation) -> Representation {
    Representation::new(
        r.algebra.clone(),
        r.degree,
        r.matrices.iter().map(|m| -&m.transpose()).collect(),
    )
}

/// Exponent vectors of degree-`d` monomials in `n` variables, ordered
/// lexicographically with the exponent of `e₁` decreasing first.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Action of an `n × n` matrix `x` on `S^d(V(n))` by derivation:
/// `x·(e^α) = Σ_t α_t e^{α − δ_t} · (x e_t)`.
pub fn sym_power_matrix(x: &RationalMatrix, d: usize) -> RationalMatrix {
    let n = x.rows();
    let basis = monomials(n, d);
    let index: HashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        for t in 0..n {
            if alpha[t] == 0 {
                continue;
            }
            for s in 0..n {
                let xst = x.get(s, t);
                if xst.is_zero() {
                    continue;
                }
                let mut beta = alpha.clone();
                beta[t] -= 1;
                beta[s] += 1;
                let row = index[beta.as_slice()];
                let v = out.get(row, col) + int(alpha[t] as i64) * xst;
                out.set(row, col, v);
            }
        }
    }
    out
}

/// `dΛ₁` of `sl(n)` on `V(binom(n + d − 1, d))`.
pub fn sym_power(d: usize, n: usize) -> Representation {
    assert!(d >= 1 && n >= 2, "sym_power needs d ≥ 1 and n ≥ 2");
    let factor = FactorSpec::Sl(n);
    let matrices: Vec<RationalMatrix> = factor.basis().iter().map(|x| sym_power_matrix(x, d)).collect();
    let degree = matrices.first().map_or(0, RationalMatrix::rows);
    Representation::new(AlgebraSpec::new(vec![factor]), degree, matrices)
}

/// Pairs `(i, j)` with `i < j`, lexicographic.
pub fn wedge_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Action on `Λ²V(n)`: `x·(e_i ∧ e_j) = (x e_i) ∧ e_j + e_i ∧ (x e_j)`.
pub fn ext_square_matrix(x: &RationalMatrix) -> RationalMatrix {
    let n = x.rows();
    let basis = wedge_basis(n);
    let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    let add = |out: &mut RationalMatrix, a: usize, b: usize, col: usize, c: &Rational| {
        // c · (e_a ∧ e_b)
        if a == b || c.is_zero() {
            return;
        }
        let (row, sign) = if a < b { (index[&(a, b)], c.clone()) } else { (index[&(b, a)], -c) };
        let v = out.get(row, col) + sign;
        out.set(row, col, v);
    };
    for (col, &(i, j)) in basis.iter().enumerate() {
        for s in 0..n {
            add(&mut out, s, j, col, x.get(s, i));
            add(&mut out, i, s, col, x.get(s, j));
        }
    }
    out
}

/// `Λ₂` of `sl(n)` on `V(n(n − 1)/2)`.
pub fn ext_square(n: usize) -> Representation {
    assert!(n >= 2, "ext_square needs n ≥ 2");
    let factor = FactorSpec::Sl(n);
    let matrices = factor.basis().iter().map(ext_square_matrix).collect();
    Representation::new(AlgebraSpec::new(vec![factor]), n * (n - 1) / 2, matrices)
}

/// Tensor product of representations of the summands of a direct sum:
/// a basis element of the `i`-th summand acts as `I ⊗ ρ_i(X) ⊗ I`.
pub fn general_tensor(reps: &[Representation]) -> Result<Representation, RepError> {
    if reps.is_empty() {
        return Err(RepError::EmptyTensor);
    }
    let degree: usize = reps.iter().map(|r| r.degree).product();
    let mut algebra = AlgebraSpec::default();
    let mut matrices = Vec::new();
    let mut before = 1;
    for r in reps {
        let after = degree / (before * r.degree);
        let left = RationalMatrix::identity(before);
        let right = RationalMatrix::identity(after);
        for m in &r.matrices {
            matrices.push(left.kron(m).kron(&right));
        }
        algebra = algebra.direct_sum(&r.algebra);
        before *= r.degree;
    }
    Ok(Representation::new(algebra, degree, matrices))
}

/// Builds the representation a DSL factor/rep pair denotes.
pub fn factor_rep(factor: FactorSpec, kind: RepKind) -> Result<Representation, RepError> {
    let unsupported = Err(RepError::UnsupportedRep { factor, rep: kind });
    match (factor, kind) {
        (FactorSpec::Gl1, RepKind::L1) => Ok(scalar_rep(false)),
        (FactorSpec::Gl1, RepKind::L1Dual) => Ok(scalar_rep(true)),
        (FactorSpec::Gl1, _) => unsupported,
        (FactorSpec::Sl(0), _) => unsupported,
        (FactorSpec::Sl(n), RepKind::L1) => Ok(identity_rep(n)),
        (FactorSpec::Sl(n), RepKind::L1Dual) => Ok(dual_rep(&identity_rep(n))),
        (FactorSpec::Sl(n), RepKind::Sym(d)) if n >= 2 && d >= 1 => Ok(sym_power(d as usize, n)),
        (FactorSpec::Sl(n), RepKind::L2) if n >= 2 => Ok(ext_square(n)),
        _ => unsupported,
    }
}

/// `(𝔤, ρ, V)`. The signature records the per-factor representations when the
/// triplet was built from named pieces; it is `None` for derived triplets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triplet {
    algebra: AlgebraSpec,
    rep: Representation,
    space_dim: usize,
    signature: Option<Vec<(FactorSpec, RepKind)>>,
}

impl Triplet {
    pub fn from_rep(rep: Representation) -> Self {
        Self {
            algebra: rep.algebra.clone(),
            space_dim: rep.degree,
            rep,
            signature: None,
        }
    }

    pub fn from_signature(signature: Vec<(FactorSpec, RepKind)>) -> Result<Self, RepError> {
        let reps = signature
            .iter()
            .map(|&(f, k)| factor_rep(f, k))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = general_tensor(&reps)?;
        Ok(Self {
            signature: Some(signature),
            ..Self::from_rep(rep)
        })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn signature(&self) -> Option<&[(FactorSpec, RepKind)]> {
        self.signature.as_deref()
    }
}

/// The representation `Λ` of degree `2a` of `sl(a)` for the supported `a`.
pub fn degree_2a_rep(a: u64) -> Option<RepKind> {
    match a {
        2 => Some(RepKind::Sym(3)),
        3 => Some(RepKind::Sym(2)),
        5 => Some(RepKind::L2),
        _ => None,
    }
}

/// `(gl(1) ⊕ sl(a) ⊕ sl(m₁) ⊕ ⋯, Λ₁ ⊗ Λ ⊗ Λ₁ ⊗ ⋯, V(1) ⊗ V(2a) ⊗ V(m₁) ⊗ ⋯)`.
///
/// Parts equal to 1 are zero summands on a one-dimensional slot and are left out.
pub fn tensor_triplet(sol: &Solution) -> Result<Triplet, RepError> {
    let a = sol.supported_a()?;
    let lambda = degree_2a_rep(a).expect("supported a");
    let space_dim: BigUint = BigUint::from(2 * a) * sol.parts().iter().product::<BigUint>();
    let limit = DESK_SCALE_LIMIT;
    if space_dim > BigUint::from(limit) {
        return Err(RepError::ExceedsDeskScale { space_dim, limit });
    }
    let mut signature = vec![(FactorSpec::Gl1, RepKind::L1), (FactorSpec::Sl(a as usize), lambda)];
    for m in sol.parts() {
        let m = m.to_usize().expect("bounded by the desk-scale limit");
        if m > 1 {
            signature.push((FactorSpec::Sl(m), RepKind::L1));
        }
    }
    let t = Triplet::from_signature(signature)?;
    debug_assert_eq!(BigUint::from(t.space_dim), space_dim);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::castle::{enumerate, residual};
    use crate::exactmat::rank_exact;

    /// The 4×4 matrix for the cubic representation of gl(2) written out entrywise.
    fn cubic_formula(al: i64, be: i64, ga: i64, de: i64) -> RationalMatrix {
        RationalMatrix::from_rows(&[
            vec![3 * al, be, 0, 0],
            vec![3 * ga, 2 * al + de, 2 * be, 0],
            vec![0, 2 * ga, al + 2 * de, 3 * be],
            vec![0, 0, ga, 3 * de],
        ])
    }

    #[test]
    fn cubic_matches_explicit_formula() {
        for (al, be, ga, de) in [(1, 0, 0, -1), (2, 3, -5, -2), (0, 1, 0, 0), (4, -1, 7, 9)] {
            let x = RationalMatrix::from_rows(&[vec![al, be], vec![ga, de]]);
            assert_eq!(sym_power_matrix(&x, 3), cubic_formula(al, be, ga, de));
        }
        assert_eq!(monomials(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn identity_rep_cases() {
        let r = identity_rep(1);
        assert_eq!(r.degree(), 1);
        assert!(r.matrices().is_empty());
        let r = identity_rep(2);
        assert_eq!(r.matrices()[0], RationalMatrix::from_rows(&[vec![0, 1], vec![0, 0]]));
        let r = identity_rep(3);
        assert_eq!(r.matrices().len(), 8);
        assert!(r.matrices().iter().all(|m| m.trace().is_zero()));
        assert_eq!(r.check_homomorphism(), Ok(()));
    }

    #[test]
    fn dual_rep_cases() {
        let r = identity_rep(2);
        let d = dual_rep(&r);
        assert_eq!(d.matrices()[0], RationalMatrix::from_rows(&[vec![0, 0], vec![-1, 0]]));
        assert_eq!(dual_rep(&d), r);
        let zero = identity_rep(1);
        assert_eq!(dual_rep(&zero), zero);
        for n in 2..=4 {
            assert_eq!(dual_rep(&identity_rep(n)).check_homomorphism(), Ok(()));
            assert_eq!(dual_rep(&sym_power(2, n)).check_homomorphism(), Ok(()));
        }
    }

    #[test]
    fn symmetric_power_cases() {
        for n in 2..=4 {
            assert_eq!(sym_power(1, n), identity_rep(n));
        }
        let r = sym_power(2, 3);
        assert_eq!(r.degree(), 6);
        for d in 1..=3 {
            for n in 2..=3 {
                let r = sym_power(d, n);
                assert!(r.matrices().iter().all(|m| m.trace().is_zero()));
                assert_eq!(r.check_homomorphism(), Ok(()));
            }
        }
    }

    #[test]
    fn exterior_square_cases() {
        let r = ext_square(2);
        assert_eq!(r.degree(), 1);
        assert!(r.matrices().iter().all(RationalMatrix::is_zero));
        assert_eq!(ext_square(5).degree(), 10);
        for n in 2..=5 {
            let r = ext_square(n);
            assert!(r.matrices().iter().all(|m| m.trace().is_zero()));
            assert_eq!(r.check_homomorphism(), Ok(()));
        }
    }

    #[test]
    fn homomorphism_check_detects_a_broken_rep() {
        let r = identity_rep(2);
        let mut mats = r.matrices().to_vec();
        mats[2] = mats[2].scale(&int(2));
        let broken = Representation::new(r.algebra().clone(), 2, mats);
        assert!(broken.check_homomorphism().is_err());
    }

    #[test]
    fn general_tensor_cases() {
        let r = sym_power(3, 2);
        assert_eq!(general_tensor(std::slice::from_ref(&r)).unwrap(), r);
        let t = general_tensor(&[identity_rep(2), identity_rep(3)]).unwrap();
        for (k, x) in FactorSpec::Sl(2).basis().iter().enumerate() {
            assert_eq!(t.matrices()[k], x.kron(&RationalMatrix::identity(3)));
        }
        let t = general_tensor(&[sym_power(3, 2), identity_rep(3), identity_rep(2)]).unwrap();
        assert_eq!(t.degree(), 24);
        assert_eq!(t.check_homomorphism(), Ok(()));
        assert_eq!(general_tensor(&[]), Err(RepError::EmptyTensor));
    }

    #[test]
    fn tensor_triplet_dimensions() {
        let t = tensor_triplet(&Solution::of(2, &[1])).unwrap();
        assert_eq!((t.algebra().dim(), t.space_dim()), (4, 4));
        let t = tensor_triplet(&Solution::of(3, &[2])).unwrap();
        assert_eq!((t.algebra().dim(), t.space_dim()), (12, 12));
        let t = tensor_triplet(&Solution::of(2, &[3, 11])).unwrap();
        assert_eq!((t.algebra().dim(), t.space_dim()), (132, 132));
        // gl(1) acts as the identity on the whole space.
        assert_eq!(t.rep().matrices()[0], RationalMatrix::identity(132));
        assert!(matches!(
            tensor_triplet(&Solution::of(7, &[6])),
            Err(RepError::Castle(CastleError::UnsupportedA(_)))
        ));
        assert!(matches!(
            tensor_triplet(&Solution::of(2, &[3, 11, 131])),
            Err(RepError::ExceedsDeskScale { .. })
        ));
    }

    #[test]
    fn dimension_balance_iff_residual_zero() {
        for a in [2u64, 3, 5] {
            for m1 in 1..8u64 {
                for m2 in 1..5u64 {
                    let s = Solution::of(a, &[m1, m2]);
                    let Ok(t) = tensor_triplet(&s) else { continue };
                    assert_eq!(t.space_dim() as u64, 2 * a * m1 * m2);
                    let balanced = t.algebra().dim() == t.space_dim();
                    assert_eq!(balanced, residual(&s).is_zero(), "{s}");
                }
            }
        }
        assert!(enumerate(2, 20, 2).unwrap().iter().all(|s| {
            let t = tensor_triplet(s).unwrap();
            t.algebra().dim() == t.space_dim()
        }));
    }

    #[test]
    fn factor_rep_rejections() {
        assert!(matches!(
            factor_rep(FactorSpec::Gl1, RepKind::L2),
            Err(RepError::UnsupportedRep { .. })
        ));
        assert!(matches!(
            factor_rep(FactorSpec::Sl(1), RepKind::L2),
            Err(RepError::UnsupportedRep { .. })
        ));
        assert_eq!(factor_rep(FactorSpec::Sl(2), RepKind::L2).unwrap().degree(), 1);
    }

    #[test]
    fn sym_power_basis_spans_full_rank_at_generic_element() {
        let x = RationalMatrix::from_rows(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(rank_exact(&sym_power_matrix(&x, 3)), 4);
    }
}
