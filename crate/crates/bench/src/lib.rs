//! Fixtures shared by the criterion benches.

use ifps_core::exactmat::{int, RationalMatrix};
use ifps_core::pv::orbit_matrix;
use ifps_core::reps::tensor_triplet;
use ifps_core::{Solution, Triplet};

/// Tensor triplet of `(a; parts)`; panics outside desk scale.
pub fn triplet(a: u64, parts: &[u64]) -> Triplet {
    tensor_triplet(&Solution::of(a, parts)).expect("desk-scale solution")
}

/// Orbit matrix of the triplet at a fixed dense integer point.
pub fn orbit_fixture(a: u64, parts: &[u64]) -> RationalMatrix {
    let t = triplet(a, parts);
    let v: Vec<_> = (0..t.space_dim() as i64).map(|i| int((i * 7 + 3) % 11 - 5)).collect();
    orbit_matrix(&t, &v).expect("point sized to the space")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_shape() {
        let m = orbit_fixture(3, &[2]);
        assert_eq!((m.rows(), m.cols()), (12, 12));
    }
}
