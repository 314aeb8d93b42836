//! Formal direct sums of `gl(1)` and `sl(n)` with a fixed standard basis.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactmat::{Rational, RationalMatrix};

/// One summand of a reductive algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSpec {
    Gl1,
    /// `sl(n)`; `sl(1)` is the zero algebra.
    Sl(usize),
}

impl FactorSpec {
    pub fn dim(&self) -> usize {
        match *self {
            FactorSpec::Gl1 => 1,
            FactorSpec::Sl(n) => (n * n).saturating_sub(1),
        }
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match *self {
            FactorSpec::Gl1 => 1,
            FactorSpec::Sl(n) => n,
        }
    }

    /// Standard basis. For `sl(n)`: off-diagonal `E_ij` in row-major order,
    /// then `E_ii - E_{i+1,i+1}` for `i = 1..n-1`.
    pub fn basis(&self) -> Vec<RationalMatrix> {
        match *self {
            FactorSpec::Gl1 => vec![RationalMatrix::identity(1)],
            FactorSpec::Sl(n) => {
                let mut out = Vec::with_capacity(self.dim());
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let mut e = RationalMatrix::zeros(n, n);
                            e.set(i, j, Rational::one());
                            out.push(e);
                        }
                    }
                }
                for i in 0..n.saturating_sub(1) {
                    let mut h = RationalMatrix::zeros(n, n);
                    h.set(i, i, Rational::one());
                    h.set(i + 1, i + 1, -Rational::one());
                    out.push(h);
                }
                out
            }
        }
    }

    /// Coordinates of `x` in [`FactorSpec::basis`]. `x` must lie in the factor
    /// (traceless for `sl(n)`); the diagonal coordinates are partial sums of
    /// the diagonal of `x`.
    pub fn coordinates(&self, x: &RationalMatrix) -> Vec<Rational> {
        let n = self.matrix_size();
        assert_eq!((x.rows(), x.cols()), (n, n), "matrix does not belong to this factor");
        match *self {
            FactorSpec::Gl1 => vec![x.get(0, 0).clone()],
            FactorSpec::Sl(_) => {
                debug_assert!(x.trace().is_zero(), "sl element must be traceless");
                let mut out = Vec::with_capacity(self.dim());
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push(x.get(i, j).clone());
                        }
                    }
                }
                let mut partial = Rational::zero();
                for i in 0..n.saturating_sub(1) {
                    partial += x.get(i, i);
                    out.push(partial.clone());
                }
                out
            }
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Gl1 => write!(f, "gl(1)"),
            FactorSpec::Sl(n) => write!(f, "sl({n})"),
        }
    }
}

/// Ordered direct sum of factors. The algebra basis is the concatenation of
/// the factor bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    factors: Vec<FactorSpec>,
}

impl AlgebraSpec {
    pub fn new(factors: Vec<FactorSpec>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(FactorSpec::dim).sum()
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &AlgebraSpec) -> AlgebraSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AlgebraSpec { factors }
    }

    /// Offset of each factor's first basis element in the algebra basis.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors
            .iter()
            .map(|f| {
                let o = acc;
                acc += f.dim();
                o
            })
            .collect()
    }

    /// `(factor index, index within factor)` for a global basis index.
    pub fn locate(&self, index: usize) -> (usize, usize) {
        let mut rest = index;
        for (fi, f) in self.factors.iter().enumerate() {
            if rest < f.dim() {
                return (fi, rest);
            }
            rest -= f.dim();
        }
        panic!("basis index {index} out of range for algebra of dimension {}", self.dim());
    }

    /// Structure constants: the bracket of basis elements `i` and `j` as a
    /// sparse list of `(basis index, coefficient)`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        let (fi, li) = self.locate(i);
        let (fj, lj) = self.locate(j);
        if fi != fj {
            return Vec::new();
        }
        let factor = self.factors[fi];
        let basis = factor.basis();
        let c = basis[li].commutator(&basis[lj]);
        let offset = self.offsets()[fi];
        factor
            .coordinates(&c)
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (offset + k, v))
            .collect()
    }

    /// Whether some `gl(1)` summand is present.
    pub fn has_center(&self) -> bool {
        self.factors.contains(&FactorSpec::Gl1)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::rank_exact;

    fn flatten(mats: &[RationalMatrix]) -> RationalMatrix {
        let n = mats.first().map_or(0, |m| m.rows() * m.cols());
        RationalMatrix::from_fn(mats.len(), n, |i, j| mats[i].entries()[j].clone())
    }

    #[test]
    fn dimensions() {
        assert_eq!(AlgebraSpec::new(vec![FactorSpec::Gl1]).dim(), 1);
        assert_eq!(AlgebraSpec::new(vec![FactorSpec::Gl1, FactorSpec::Sl(2)]).dim(), 4);
        let big = AlgebraSpec::new(vec![
            FactorSpec::Gl1,
            FactorSpec::Sl(2),
            FactorSpec::Sl(3),
            FactorSpec::Sl(11),
        ]);
        // a² + Σ m² − k with (2; 3, 11)
        assert_eq!(big.dim(), 4 + 9 + 121 - 2);
        assert_eq!(big.dim(), 132);
        assert_eq!(FactorSpec::Sl(1).dim(), 0);
    }

    #[test]
    fn small_bases() {
        assert_eq!(FactorSpec::Gl1.basis(), vec![RationalMatrix::identity(1)]);
        assert!(FactorSpec::Sl(1).basis().is_empty());
        let sl2 = FactorSpec::Sl(2).basis();
        assert_eq!(sl2.len(), 3);
        assert!(sl2.iter().all(|b| b.trace().is_zero()));
        assert_eq!(rank_exact(&flatten(&sl2)), 3);
        assert_eq!(sl2[0], RationalMatrix::from_rows(&[vec![0, 1], vec![0, 0]]));
        assert_eq!(sl2[1], RationalMatrix::from_rows(&[vec![0, 0], vec![1, 0]]));
        assert_eq!(sl2[2], RationalMatrix::from_rows(&[vec![1, 0], vec![0, -1]]));
    }

    #[test]
    fn bases_are_traceless_and_independent() {
        for n in 1..=6 {
            let f = FactorSpec::Sl(n);
            let b = f.basis();
            assert_eq!(b.len(), f.dim());
            assert!(b.iter().all(|m| m.trace().is_zero()));
            if !b.is_empty() {
                assert_eq!(rank_exact(&flatten(&b)), f.dim());
            }
        }
    }

    #[test]
    fn coordinates_invert_basis_expansion() {
        for n in 1..=5 {
            let f = FactorSpec::Sl(n);
            for (k, b) in f.basis().iter().enumerate() {
                let c = f.coordinates(b);
                for (idx, v) in c.iter().enumerate() {
                    assert_eq!(v.is_one(), idx == k);
                    assert!(idx == k || v.is_zero());
                }
            }
        }
    }

    #[test]
    fn bases_closed_under_commutator() {
        for n in 2..=5 {
            let b = FactorSpec::Sl(n).basis();
            let base_rank = rank_exact(&flatten(&b));
            for x in &b {
                for y in &b {
                    let mut ext = b.clone();
                    ext.push(x.commutator(y));
                    assert_eq!(rank_exact(&flatten(&ext)), base_rank);
                }
            }
        }
    }

    #[test]
    fn bracket_reconstructs_commutator() {
        let alg = AlgebraSpec::new(vec![FactorSpec::Gl1, FactorSpec::Sl(3), FactorSpec::Sl(2)]);
        let sl3 = FactorSpec::Sl(3).basis();
        // [E12, E21] = E11 - E22 = H1
        let e12 = 1; // offset 1 (after gl(1)), E_12 is the first sl(3) element
        let e21 = 1 + 2;
        assert_eq!(sl3[2], {
            let mut m = RationalMatrix::zeros(3, 3);
            m.set(1, 0, Rational::one());
            m
        });
        let br = alg.bracket(e12, e21);
        assert_eq!(br, vec![(1 + 6, Rational::one())]);
        // Different factors commute; gl(1) is central.
        assert!(alg.bracket(0, 3).is_empty());
        assert!(alg.bracket(2, 9).is_empty());
        assert_eq!(alg.to_string(), "gl(1)+sl(3)+sl(2)");
    }
}
