//! Solutions of `a² + Σ m_i² − k − 2a·∏ m_i = 0` and the sc-transformations
//! acting on them. Descent reaches the reduced base; enumeration walks the
//! castling tree up to a bound.
//!
//! Positions are 1-based indices into the ascending list of parts; position
//! `k + 1` denotes the append move.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

/// The values of `a` for which an irreducible representation of degree `2a` is wired in.
pub const SUPPORTED_A: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CastleError {
    #[error("a must be at least 2, got {0}")]
    InvalidA(BigUint),
    #[error("a solution needs at least one part")]
    NoParts,
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("sc-transform at position {position} would produce a non-positive part")]
    NonPositiveResult { position: usize },
    #[error("not a solution: residual is {residual}")]
    NotASolution { residual: BigInt },
    #[error("a = {0} is not one of 2, 3, 5")]
    UnsupportedA(BigUint),
    #[error("descent bound violated at {0}")]
    DescentBoundViolation(Solution),
}

/// `(a; m_1, …, m_k)` with parts kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    a: BigUint,
    parts: Vec<BigUint>,
}

impl Solution {
    pub fn new(a: BigUint, mut parts: Vec<BigUint>) -> Result<Self, CastleError> {
        if a < BigUint::from(2u32) {
            return Err(CastleError::InvalidA(a));
        }
        if parts.is_empty() {
            return Err(CastleError::NoParts);
        }
        if parts.iter().any(Zero::is_zero) {
            return Err(CastleError::NonPositivePart);
        }
        parts.sort();
        Ok(Self { a, parts })
    }

    /// Convenience constructor for small literals.
    ///
    /// # Panics
    /// If the input violates the `Solution` invariants.
    pub fn of(a: u64, parts: &[u64]) -> Self {
        Self::new(BigUint::from(a), parts.iter().map(|&m| BigUint::from(m)).collect())
            .expect("valid solution literal")
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn parts(&self) -> &[BigUint] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn max_part(&self) -> &BigUint {
        self.parts.last().expect("nonempty")
    }

    /// `a` as a small integer when it is one of the supported values.
    pub fn supported_a(&self) -> Result<u64, CastleError> {
        SUPPORTED_A
            .iter()
            .copied()
            .find(|&v| self.a == BigUint::from(v))
            .ok_or_else(|| CastleError::UnsupportedA(self.a.clone()))
    }

    fn product_except(&self, skip: Option<usize>) -> BigUint {
        self.parts
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .fold(BigUint::one(), |acc, (_, m)| acc * m)
    }
}

impl Ord for Solution {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a
            .cmp(&other.a)
            .then(self.parts.len().cmp(&other.parts.len()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({}; {})", self.a, parts.join(", "))
    }
}

/// `a² + Σ m_i² − k − 2a·∏ m_i`.
pub fn residual(s: &Solution) -> BigInt {
    let a = BigInt::from(s.a.clone());
    let squares: BigInt = s.parts.iter().map(|m| BigInt::from(m * m)).sum();
    let product = BigInt::from(s.product_except(None));
    &a * &a + squares - BigInt::from(s.k()) - BigInt::from(2) * &a * product
}

pub fn is_solution(s: &Solution) -> bool {
    residual(s).is_zero()
}

/// sc-transform at a 1-based position. For `position ≤ k` the part `m_i` becomes
/// `2a·∏_{j≠i} m_j − m_i`; `position = k + 1` appends `2a·∏ m_j − 1`.
pub fn sc_transform(s: &Solution, position: usize) -> Result<Solution, CastleError> {
    Ok(sc_transform_tracked(s, position)?.0)
}

/// Like [`sc_transform`], also returning the 1-based position at which the new
/// value sits in the re-sorted result.
pub fn sc_transform_tracked(s: &Solution, position: usize) -> Result<(Solution, usize), CastleError> {
    let k = s.k();
    if position == 0 || position > k + 1 {
        return Err(CastleError::PositionOutOfRange { position, max: k + 1 });
    }
    let two_a = BigUint::from(2u32) * &s.a;
    let (kept, removed, added): (Vec<BigUint>, BigUint, BigUint) = if position == k + 1 {
        (s.parts.clone(), BigUint::one(), &two_a * s.product_except(None))
    } else {
        let i = position - 1;
        let mut kept = s.parts.clone();
        let old = kept.remove(i);
        (kept, old, &two_a * s.product_except(Some(i)))
    };
    if added <= removed {
        return Err(CastleError::NonPositiveResult { position });
    }
    let value = added - removed;
    // Insert after any equal parts so the tracked index is deterministic.
    let at = kept.partition_point(|m| m <= &value);
    let mut parts = kept;
    parts.insert(at, value);
    Ok((
        Solution {
            a: s.a.clone(),
            parts,
        },
        at + 1,
    ))
}

pub fn is_essential(s: &Solution) -> bool {
    s.parts.iter().all(|m| !m.is_one())
}

/// `2a·∏_{j<k} m_j − m_k`, the replacement of the largest part.
pub fn largest_part_replacement(s: &Solution) -> BigInt {
    let k = s.k();
    let two_a = BigInt::from(2u32) * BigInt::from(s.a.clone());
    two_a * BigInt::from(s.product_except(Some(k - 1))) - BigInt::from(s.max_part().clone())
}

/// Whether `0 < 2a·∏_{j<k} m_j − m_k < m_k`.
pub fn satisfies_descent_bound(s: &Solution) -> bool {
    let r = largest_part_replacement(s);
    r > BigInt::zero() && r < BigInt::from(s.max_part().clone())
}

/// One move of a descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentStep {
    /// Remove this many parts equal to 1 (each is a zero `sl(1)` summand).
    DropOnes(usize),
    /// sc-transform at `position` of the current solution; the new value lands at `landed`.
    Transform { position: usize, landed: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub start: Solution,
    pub reduced: Solution,
    pub steps: Vec<DescentStep>,
}

impl Descent {
    /// The sc-transform positions, in the order applied.
    pub fn path(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                DescentStep::Transform { position, .. } => Some(*position),
                DescentStep::DropOnes(_) => None,
            })
            .collect()
    }

    /// Every intermediate solution from `start` to `reduced`, one per step.
    pub fn chain(&self) -> Vec<Solution> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for step in &self.steps {
            cur = match *step {
                DescentStep::DropOnes(n) => Solution {
                    a: cur.a.clone(),
                    parts: cur.parts[n..].to_vec(),
                },
                DescentStep::Transform { position, .. } => {
                    sc_transform(&cur, position).expect("recorded steps are valid")
                }
            };
            out.push(cur.clone());
        }
        out
    }

    /// Replays the descent backwards from the reduced base: dropped ones are
    /// reinserted and each transform is undone by an sc-transform at the
    /// position where its value landed.
    pub fn replay(&self) -> Result<Solution, CastleError> {
        let mut cur = self.reduced.clone();
        for step in self.steps.iter().rev() {
            cur = match *step {
                DescentStep::DropOnes(n) => {
                    let mut parts = cur.parts.clone();
                    parts.extend(std::iter::repeat_n(BigUint::one(), n));
                    Solution::new(cur.a.clone(), parts)?
                }
                DescentStep::Transform { landed, .. } => sc_transform(&cur, landed)?,
            };
        }
        Ok(cur)
    }
}

/// Reduces a solution to the base `(a; a − 1)`.
///
/// Ones are dropped while other parts remain; with `k ≥ 2` the largest part is
/// replaced (the descent bound guarantees it shrinks and stays positive); with
/// `k = 1` the part `a + 1` is sent to `a − 1`.
pub fn descend(s: &Solution) -> Result<Descent, CastleError> {
    s.supported_a()?;
    let r = residual(s);
    if !r.is_zero() {
        return Err(CastleError::NotASolution { residual: r });
    }
    let base_part = &s.a - BigUint::one();
    let mut cur = s.clone();
    let mut steps = Vec::new();
    loop {
        let ones = cur.parts.iter().filter(|m| m.is_one()).count();
        let droppable = ones.min(cur.k() - 1);
        if droppable > 0 {
            cur.parts.drain(..droppable);
            steps.push(DescentStep::DropOnes(droppable));
        }
        if cur.k() == 1 {
            if cur.parts[0] == base_part {
                break;
            }
            let (next, landed) = sc_transform_tracked(&cur, 1)?;
            if next.parts[0] >= cur.parts[0] {
                return Err(CastleError::DescentBoundViolation(cur));
            }
            steps.push(DescentStep::Transform { position: 1, landed });
            cur = next;
            continue;
        }
        if !satisfies_descent_bound(&cur) {
            return Err(CastleError::DescentBoundViolation(cur));
        }
        let position = cur.k();
        let (next, landed) = sc_transform_tracked(&cur, position)?;
        steps.push(DescentStep::Transform { position, landed });
        cur = next;
    }
    Ok(Descent {
        start: s.clone(),
        reduced: cur,
        steps,
    })
}

/// Breadth-first expansion of the castling tree from `(a; a − 1)`, keeping
/// solutions with every part `≤ max_part` and at most `max_k` parts.
pub fn enumerate(a: u64, max_part: u64, max_k: usize) -> Result<BTreeSet<Solution>, CastleError> {
    if !SUPPORTED_A.contains(&a) {
        return Err(CastleError::UnsupportedA(BigUint::from(a)));
    }
    let bound = BigUint::from(max_part);
    let base = Solution::of(a, &[a - 1]);
    let mut seen = BTreeSet::new();
    if max_k == 0 || base.max_part() > &bound {
        return Ok(seen);
    }
    let mut queue = VecDeque::from([base.clone()]);
    seen.insert(base);
    while let Some(s) = queue.pop_front() {
        for position in 1..=s.k() + 1 {
            if position == s.k() + 1 && s.k() >= max_k {
                continue;
            }
            let Ok(child) = sc_transform(&s, position) else {
                continue;
            };
            if child.max_part() > &bound || seen.contains(&child) {
                continue;
            }
            seen.insert(child.clone());
            queue.push_back(child);
        }
    }
    Ok(seen)
}

/// For `a = 3`, drops solutions with a part equal to 2 (they repeat `a = 2`
/// solutions with the 2 and the 3 swapped). Identity for other `a`.
pub fn repetition_filter(solutions: &BTreeSet<Solution>, a: u64) -> BTreeSet<Solution> {
    let two = BigUint::from(2u32);
    solutions
        .iter()
        .filter(|s| a != 3 || !s.parts.contains(&two))
        .cloned()
        .collect()
}
