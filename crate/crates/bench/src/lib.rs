//! Fixed instances shared by the benchmarks.

use qmop_core::{IntMatrix, MmpInstance, PcpInstance};

/// Eight 3x3 generators with a nilpotent first generator and small
/// deterministic filler for the rest.
pub fn planted_instance() -> MmpInstance {
    let mut gens = vec![IntMatrix::from_i64_rows(&[[0, 2, -1], [0, 0, 3], [0, 0, 0]])];
    for j in 1..8i64 {
        gens.push(IntMatrix::from_i64_rows(&[
            [j % 3 + 1, -(j % 2), 1],
            [2, j % 4, -1],
            [1 - j % 2, 1, j % 5 - 2],
        ]));
    }
    MmpInstance::from_integer(gens).expect("eight 3x3 generators")
}

pub fn identity_instance() -> MmpInstance {
    MmpInstance::from_integer(vec![IntMatrix::identity(3); 8]).expect("eight 3x3 generators")
}

/// Non-negative 0/1 generators in dimension 3 with a large pattern closure.
pub fn pattern_instance() -> MmpInstance {
    MmpInstance::from_integer(vec![
        IntMatrix::from_i64_rows(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        IntMatrix::from_i64_rows(&[[1, 1, 0], [0, 0, 0], [0, 0, 1]]),
        IntMatrix::from_i64_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    ])
    .expect("three 3x3 generators")
}

pub fn small_pcp() -> PcpInstance {
    PcpInstance::from_pairs(&[("a", "2", "23"), ("b", "32", "2"), ("c", "3", "33")]).expect("valid images")
}
