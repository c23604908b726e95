//! Shared fixtures for unit tests.

use crate::coo::CooMatrix;

/// The 4x4 matrix used as the crate's worked example:
///
/// ```text
/// 2 1 0 0
/// 0 4 3 5
/// 7 0 6 0
/// 0 0 0 8
/// ```
pub fn demo_matrix() -> CooMatrix {
    CooMatrix::from_triplets(
        4,
        4,
        vec![
            (0, 0, 2.0),
            (0, 1, 1.0),
            (1, 1, 4.0),
            (1, 2, 3.0),
            (1, 3, 5.0),
            (2, 0, 7.0),
            (2, 2, 6.0),
            (3, 3, 8.0),
        ],
    )
    .unwrap()
}
