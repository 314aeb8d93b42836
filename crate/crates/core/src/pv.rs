//! Prehomogeneity certificates.
//!
//! A point `v` is generic when the orbit map `X ↦ ρ(X)v` is onto `V`, i.e. the
//! orbit matrix (one column per algebra basis element) has rank `dim V`. Its
//! kernel is the isotropy subalgebra at `v`.
//!
//! Positive verdicts are always confirmed by exact rank. A failed search is a
//! verdict carrying its budget, never a proof that no generic point exists.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmat::{
    int, kernel_dim, rank_exact, rank_modular, Rational, RationalMatrix, DEFAULT_PRIME, SECONDARY_PRIME,
};
use crate::liealg::FactorSpec;
use crate::reps::{dual_rep, general_tensor, identity_rep, scalar_rep, RepKind, Representation, Triplet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvError {
    #[error("vector has length {found}, space has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("castling needs 1 ≤ n < m, got n = {n}, m = {m}")]
    InvalidSplit { n: usize, m: usize },
    #[error("no generic point found after {trials} trials (pre-screen prime {prime})")]
    NoGenericFound { trials: u32, prime: u64 },
}

/// Random search budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub trials: u32,
    /// Coordinates are drawn uniformly from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: u32,
    pub seed: u64,
    /// Pre-screen prime; negatives are re-screened with a second prime.
    pub prime: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            trials: 32,
            coeff_bound: 5,
            seed: 0,
            prime: DEFAULT_PRIME,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    GenericWitnessFound,
    NoWitnessFound { trials: u32, prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub algebra_dim: usize,
    pub space_dim: usize,
    /// The accepted point, or the best-ranked sample when the search failed.
    pub witness: Vec<Rational>,
    /// Exact rank of the orbit matrix at `witness`.
    pub orbit_rank: usize,
    pub isotropy_dim: usize,
    pub verdict: Verdict,
    pub seed: u64,
    pub trials_used: u32,
}

impl GenericityCertificate {
    pub fn found(&self) -> bool {
        self.verdict == Verdict::GenericWitnessFound
    }
}

fn check_len(t: &Triplet, v: &[Rational]) -> Result<(), PvError> {
    if v.len() != t.space_dim() {
        return Err(PvError::DimensionMismatch {
            expected: t.space_dim(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `space_dim × dim(algebra)` matrix whose column `j` is `ρ(X_j) v`.
pub fn orbit_matrix(t: &Triplet, v: &[Rational]) -> Result<RationalMatrix, PvError> {
    check_len(t, v)?;
    let columns: Vec<Vec<Rational>> = t
        .rep()
        .matrices()
        .iter()
        .map(|m| m.mul_vec(v).expect("length checked"))
        .collect();
    Ok(RationalMatrix::from_fn(t.space_dim(), columns.len(), |i, j| {
        columns[j][i].clone()
    }))
}

pub fn is_generic(t: &Triplet, v: &[Rational]) -> Result<bool, PvError> {
    Ok(rank_exact(&orbit_matrix(t, v)?) == t.space_dim())
}

/// Dimension of `{X : ρ(X) v = 0}`.
pub fn isotropy_dim(t: &Triplet, v: &[Rational]) -> Result<usize, PvError> {
    Ok(kernel_dim(&orbit_matrix(t, v)?))
}

/// Modular rank with a second prime on shortfall; falls back to exact rank if
/// a prime divides a denominator.
fn screened_rank(m: &RationalMatrix, prime: u64) -> usize {
    let full = m.rows();
    let second = if prime == SECONDARY_PRIME { DEFAULT_PRIME } else { SECONDARY_PRIME };
    let mut best = 0;
    for p in [prime, second] {
        match rank_modular(m, p) {
            Ok(r) if r == full => return r,
            Ok(r) => best = best.max(r),
            Err(_) => return rank_exact(m),
        }
    }
    best
}

/// Samples integer points until one is generic or the budget runs out.
pub fn find_generic(t: &Triplet, config: &SearchConfig) -> GenericityCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let bound = i64::from(config.coeff_bound);
    let mut best: Option<(usize, Vec<Rational>)> = None;
    for trial in 1..=config.trials {
        let v: Vec<Rational> = (0..t.space_dim()).map(|_| int(rng.random_range(-bound..=bound))).collect();
        let m = orbit_matrix(t, &v).expect("sampled with the right length");
        let screened = screened_rank(&m, config.prime);
        if screened == t.space_dim() {
            let exact = rank_exact(&m);
            if exact == t.space_dim() {
                return GenericityCertificate {
                    algebra_dim: t.algebra().dim(),
                    space_dim: t.space_dim(),
                    witness: v,
                    orbit_rank: exact,
                    isotropy_dim: m.cols() - exact,
                    verdict: Verdict::GenericWitnessFound,
                    seed: config.seed,
                    trials_used: trial,
                };
            }
        }
        if best.as_ref().is_none_or(|(r, _)| screened > *r) {
            best = Some((screened, v));
        }
    }
    let witness = best.map(|(_, v)| v).unwrap_or_else(|| vec![Rational::zero(); t.space_dim()]);
    let m = orbit_matrix(t, &witness).expect("right length");
    let orbit_rank = rank_exact(&m);
    GenericityCertificate {
        algebra_dim: t.algebra().dim(),
        space_dim: t.space_dim(),
        witness,
        orbit_rank,
        isotropy_dim: m.cols() - orbit_rank,
        verdict: Verdict::NoWitnessFound {
            trials: config.trials,
            prime: config.prime,
        },
        seed: config.seed,
        trials_used: config.trials,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IfpsAssessment {
    /// `dim 𝔤 = dim V` and a `gl(1)` summand is present.
    pub dimension_match: bool,
    pub certificate: GenericityCertificate,
}

impl IfpsAssessment {
    pub fn is_type_ifps(&self) -> bool {
        self.dimension_match && self.certificate.found()
    }
}

/// A triplet `(𝔩 ⊕ gl(1), ρ, V)` is of type IFPS when it is prehomogeneous and
/// `dim 𝔩 + 1 = dim V`. The search runs even when dimensions disagree so the
/// certificate is always populated.
pub fn is_pv_type_ifps(t: &Triplet, config: &SearchConfig) -> IfpsAssessment {
    let dimension_match = t.algebra().has_center() && t.algebra().dim() == t.space_dim();
    IfpsAssessment {
        dimension_match,
        certificate: find_generic(t, config),
    }
}

/// One side of a castling pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CastlingSide {
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub point: Vec<Rational>,
    pub generic: bool,
    pub isotropy_dim: usize,
    /// Dimension of the `𝔥`-elements whose image keeps the adapted flag:
    /// lower-left block zero on the first side, upper-right block zero on the second.
    pub h_isotropy_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CastlingReport {
    pub m: usize,
    pub n: usize,
    pub side1: CastlingSide,
    pub side2: CastlingSide,
    pub search: GenericityCertificate,
}

impl CastlingReport {
    pub fn both_generic(&self) -> bool {
        self.side1.generic && self.side2.generic
    }

    pub fn isotropy_agrees(&self) -> bool {
        self.side1.isotropy_dim == self.side2.isotropy_dim
    }

    pub fn h_isotropy_agrees(&self) -> bool {
        self.side1.h_isotropy_dim == self.side2.h_isotropy_dim
    }
}

/// `(𝔥 ⊕ gl(n), f ⊗ Λ₁, V(m) ⊗ V(n))`, with `gl(n)` realized as `sl(n) ⊕ gl(1)`.
pub fn castling_side(f: &Representation, n: usize) -> Triplet {
    let rep = general_tensor(&[f.clone(), identity_rep(n), scalar_rep(false)]).expect("nonempty");
    Triplet::from_rep(rep)
}

/// Finds a generic `w` for `(𝔥 ⊕ gl(n), f ⊗ Λ₁)`, puts it in standard position
/// `w = (e_1, …, e_n)` by completing its columns to a basis, and tests the dual
/// point `w⊥ = (e*_{n+1}, …, e*_m)` on `(𝔥 ⊕ gl(m − n), f* ⊗ Λ₁)`.
pub fn castling_check(h_rep: &Representation, n: usize, config: &SearchConfig) -> Result<CastlingReport, PvError> {
    let m = h_rep.degree();
    if n == 0 || n >= m {
        return Err(PvError::InvalidSplit { n, m });
    }
    let k = m - n;
    let side1 = castling_side(h_rep, n);
    let dual = dual_rep(h_rep);
    let side2 = castling_side(&dual, k);

    let search = find_generic(&side1, config);
    if let Verdict::NoWitnessFound { trials, prime } = search.verdict {
        return Err(PvError::NoGenericFound { trials, prime });
    }
    let w = search.witness.clone();
    // V(m) ⊗ V(n) is row-major with V(m) major, so w is an m × n matrix.
    let w_mat = RationalMatrix::from_vec(m, n, w.clone());
    let basis = w_mat.complete_basis().expect("a generic point has full column rank");
    let basis_inv = basis.inverse().expect("completed basis is invertible");
    // Column j of w⊥ is e*_{n+j}, i.e. row n + j of the inverse.
    let w_perp: Vec<Rational> = (0..m)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| basis_inv.get(n + j, i).clone())
        .collect();

    // 𝔥-side diagnostics in the adapted bases.
    let h_adapted: Vec<RationalMatrix> = h_rep
        .matrices()
        .iter()
        .map(|x| &(&basis_inv * x) * &basis)
        .collect();
    let dual_basis = basis_inv.transpose();
    let dual_basis_inv = basis.transpose();
    let h_dual_adapted: Vec<RationalMatrix> = dual
        .matrices()
        .iter()
        .map(|x| &(&dual_basis_inv * x) * &dual_basis)
        .collect();
    let h1 = block_kernel_dim(&h_adapted, n, 0, k, n);
    let h2 = block_kernel_dim(&h_dual_adapted, 0, n, n, k);

    let side = |t: &Triplet, point: Vec<Rational>, h_iso: usize| -> CastlingSide {
        let om = orbit_matrix(t, &point).expect("point sized to the space");
        let rank = rank_exact(&om);
        CastlingSide {
            algebra_dim: t.algebra().dim(),
            space_dim: t.space_dim(),
            point,
            generic: rank == t.space_dim(),
            isotropy_dim: om.cols() - rank,
            h_isotropy_dim: h_iso,
        }
    };
    Ok(CastlingReport {
        m,
        n,
        side1: side(&side1, w, h1),
        side2: side(&side2, w_perp, h2),
        search,
    })
}

/// Summands a sampled `𝔥` is built from.
const INSTANCE_FACTORS: [(FactorSpec, RepKind); 10] = [
    (FactorSpec::Gl1, RepKind::L1),
    (FactorSpec::Sl(2), RepKind::L1),
    (FactorSpec::Sl(2), RepKind::L1Dual),
    (FactorSpec::Sl(2), RepKind::Sym(2)),
    (FactorSpec::Sl(2), RepKind::Sym(3)),
    (FactorSpec::Sl(2), RepKind::L2),
    (FactorSpec::Sl(3), RepKind::L1),
    (FactorSpec::Sl(3), RepKind::L1Dual),
    (FactorSpec::Sl(3), RepKind::Sym(2)),
    (FactorSpec::Sl(3), RepKind::L2),
];

/// Seeded castling instances `(𝔥, f, n)` with `deg f ≤ max_degree`,
/// `dim 𝔥 ≤ max_algebra_dim` and `1 ≤ n < deg f`, keeping only those whose first
/// side has a generic point under `config`. Distinct up to signature and `n`.
pub fn random_castling_instances(
    seed: u64,
    count: usize,
    max_degree: usize,
    max_algebra_dim: usize,
    config: &SearchConfig,
) -> Vec<(Triplet, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let summands = rng.random_range(1..=3);
        let signature: Vec<(FactorSpec, RepKind)> = (0..summands)
            .map(|_| INSTANCE_FACTORS[rng.random_range(0..INSTANCE_FACTORS.len())])
            .collect();
        let degree: usize = signature.iter().map(|(f, k)| factor_degree(*f, *k)).product();
        let dim: usize = signature.iter().map(|(f, _)| f.dim()).sum();
        if degree < 2 || degree > max_degree || dim > max_algebra_dim {
            continue;
        }
        let n = rng.random_range(1..degree);
        let key = (signature.clone(), n);
        if !seen.insert(key) {
            continue;
        }
        let Ok(h) = Triplet::from_signature(signature) else {
            continue;
        };
        if dim + n * n < degree * n {
            continue;
        }
        if find_generic(&castling_side(h.rep(), n), config).found() {
            out.push((h, n));
        }
    }
    out
}

fn factor_degree(f: FactorSpec, k: RepKind) -> usize {
    let n = f.matrix_size();
    match k {
        RepKind::L1 | RepKind::L1Dual => n,
        RepKind::Sym(d) => (0..d as usize).fold(1, |acc, i| acc * (n + i) / (i + 1)),
        RepKind::L2 => n * (n - 1) / 2,
    }
}

/// Dimension of `{c : Σ c_i · block(mats_i) = 0}` for the given block.
fn block_kernel_dim(mats: &[RationalMatrix], r0: usize, c0: usize, rows: usize, cols: usize) -> usize {
    let flat: Vec<Vec<Rational>> = mats
        .iter()
        .map(|x| x.block(r0, c0, rows, cols).entries().to_vec())
        .collect();
    let m = RationalMatrix::from_fn(rows * cols, mats.len(), |i, j| flat[j][i].clone());
    kernel_dim(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::castle::Solution;
    use crate::dsl::parse_triplet;
    use crate::reps::tensor_triplet;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cubic_triplet_known_points() {
        let t = tensor_triplet(&Solution::of(2, &[1])).unwrap();
        let v = ints(&[1, 0, 0, 1]);
        assert_eq!(rank_exact(&orbit_matrix(&t, &v).unwrap()), 4);
        assert!(is_generic(&t, &v).unwrap());
        assert_eq!(isotropy_dim(&t, &v).unwrap(), 0);
        // x³ lies on the cone of perfect cubes.
        assert!(!is_generic(&t, &ints(&[1, 0, 0, 0])).unwrap());
        assert_eq!(isotropy_dim(&t, &ints(&[1, 0, 0, 0])).unwrap(), 2);
        let zero = ints(&[0, 0, 0, 0]);
        assert!(orbit_matrix(&t, &zero).unwrap().is_zero());
        assert!(!is_generic(&t, &zero).unwrap());
        assert_eq!(isotropy_dim(&t, &zero).unwrap(), 4);
        assert_eq!(
            orbit_matrix(&t, &ints(&[1, 2])),
            Err(PvError::DimensionMismatch { expected: 4, found: 2 })
        );
    }

    #[test]
    fn orbit_rank_is_scale_invariant() {
        let t = tensor_triplet(&Solution::of(3, &[2])).unwrap();
        let cert = find_generic(&t, &SearchConfig::default());
        assert!(cert.found());
        for c in [int(-3), Rational::new(2.into(), 7.into())] {
            let scaled: Vec<Rational> = cert.witness.iter().map(|x| x * &c).collect();
            assert!(is_generic(&t, &scaled).unwrap());
        }
    }

    #[test]
    fn search_outcomes() {
        let t = tensor_triplet(&Solution::of(2, &[1])).unwrap();
        let cert = find_generic(&t, &SearchConfig::default());
        assert!(cert.found());
        assert_eq!((cert.orbit_rank, cert.isotropy_dim), (4, 0));

        let sl2 = parse_triplet("sl(2) : L1").unwrap();
        assert!(find_generic(&sl2, &SearchConfig::default()).found());

        let gl1 = parse_triplet("gl(1)+sl(1) : L1#L1").unwrap();
        assert_eq!(gl1.space_dim(), 1);
        let gl1_on_2 = Triplet::from_rep(
            general_tensor(&[scalar_rep(false), identity_rep(2)]).unwrap(),
        );
        let gl1_only = Triplet::from_rep(
            Representation::new(
                crate::liealg::AlgebraSpec::new(vec![crate::liealg::FactorSpec::Gl1]),
                2,
                vec![RationalMatrix::identity(2)],
            ),
        );
        assert!(find_generic(&gl1_on_2, &SearchConfig::default()).found());
        let cert = find_generic(&gl1_only, &SearchConfig::default());
        assert_eq!(
            cert.verdict,
            Verdict::NoWitnessFound {
                trials: 32,
                prime: DEFAULT_PRIME
            }
        );
        assert!(cert.orbit_rank <= 1);
    }

    #[test]
    fn ifps_predicate() {
        let cfg = SearchConfig::default();
        assert!(is_pv_type_ifps(&tensor_triplet(&Solution::of(2, &[1])).unwrap(), &cfg).is_type_ifps());
        assert!(is_pv_type_ifps(&tensor_triplet(&Solution::of(5, &[4])).unwrap(), &cfg).is_type_ifps());
        let off = is_pv_type_ifps(&tensor_triplet(&Solution::of(2, &[2])).unwrap(), &cfg);
        assert!(!off.dimension_match);
        assert!(!off.is_type_ifps());
        assert_eq!((off.certificate.algebra_dim, off.certificate.space_dim), (7, 8));
        // Balanced dimensions but no gl(1) summand.
        let no_center = parse_triplet("sl(2) : 3L1").unwrap();
        assert!(!is_pv_type_ifps(&no_center, &cfg).dimension_match);
    }

    #[test]
    fn castling_worked_example() {
        let cfg = SearchConfig::default();
        let f = crate::reps::sym_power(3, 2);
        let r = castling_check(&f, 1, &cfg).unwrap();
        assert!(r.both_generic());
        assert_eq!((r.side1.algebra_dim, r.side1.space_dim), (4, 4));
        assert_eq!((r.side2.algebra_dim, r.side2.space_dim), (12, 12));
        assert_eq!((r.side1.isotropy_dim, r.side2.isotropy_dim), (0, 0));
        assert_eq!((r.side1.h_isotropy_dim, r.side2.h_isotropy_dim), (0, 0));

        let h = parse_triplet("gl(1)+sl(2) : L1#3L1").unwrap();
        let r = castling_check(h.rep(), 1, &cfg).unwrap();
        assert!(r.both_generic());
        assert_eq!((r.side1.algebra_dim, r.side2.algebra_dim), (5, 13));
        assert_eq!((r.side1.isotropy_dim, r.side2.isotropy_dim), (1, 1));
        assert!(r.h_isotropy_agrees());
        assert_eq!(r.side1.h_isotropy_dim, 1);
    }

    #[test]
    fn castling_twice_restores_dimensions() {
        let f = crate::reps::sym_power(3, 2);
        let m = f.degree();
        let once = castling_side(&dual_rep(&f), m - (m - 1));
        let twice = castling_side(&f, m - (m - (m - 1)));
        let start = castling_side(&f, m - 1);
        assert_eq!(
            (twice.algebra().dim(), twice.space_dim()),
            (start.algebra().dim(), start.space_dim())
        );
        assert_eq!(once.space_dim(), m);
    }

    #[test]
    fn sampled_instances_are_castling_pairs() {
        let cfg = SearchConfig::default();
        let inst = random_castling_instances(7, 6, 6, 12, &cfg);
        assert_eq!(inst.len(), 6);
        assert_eq!(inst, random_castling_instances(7, 6, 6, 12, &cfg));
        for (h, n) in &inst {
            assert!(h.space_dim() <= 6 && h.algebra().dim() <= 12);
            let r = castling_check(h.rep(), *n, &cfg).unwrap();
            assert!(r.both_generic() && r.isotropy_agrees(), "{h:?} n={n}");
        }
    }

    #[test]
    fn castling_rejects_bad_split() {
        let f = identity_rep(3);
        let cfg = SearchConfig::default();
        assert_eq!(castling_check(&f, 3, &cfg), Err(PvError::InvalidSplit { n: 3, m: 3 }));
        assert_eq!(castling_check(&f, 0, &cfg), Err(PvError::InvalidSplit { n: 0, m: 3 }));
        // sl(2) ⊕ gl(2) on V(4) ⊗ V(2): dimension 7 < 8, no generic point.
        let cubic = crate::reps::sym_power(3, 2);
        assert!(matches!(
            castling_check(&cubic, 2, &cfg),
            Err(PvError::NoGenericFound { trials: 32, .. })
        ));
    }
}
