//! Fixtures shared by the benchmarks.

use postnikov::graded::standard;
use postnikov::linalg::{q, Matrix};
use postnikov::sullivan::{formal_cdga, Cdga};

/// Dense `n x n` integer matrix with a fixed, irregular entry pattern.
pub fn dense_matrix(n: usize) -> Matrix {
    let data = (0..n * n)
        .map(|k| {
            let (i, j) = ((k / n) as i64, (k % n) as i64);
            q((i * 7 + j * j * 3 + i * j) % 11 - 5)
        })
        .collect();
    Matrix::new(n, n, data).expect("square data")
}

pub fn wedge_target(spheres: usize) -> Cdga {
    formal_cdga(&standard::wedge_of_spheres(spheres, 2, 8)).expect("wedge ring")
}
