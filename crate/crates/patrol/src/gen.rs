//! Random instance generation for experiments and fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::InstanceFile;
use crate::report::round12;

/// Environment variable holding the generator seed.
pub const SEED_VAR: &str = "PATROL_SEED";

/// `n` points drawn uniformly from `[0, scale)^dim`.
pub fn random_points(seed: u64, n: usize, dim: usize, scale: f64) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| (0..dim).map(|_| round12(rng.gen_range(0.0..scale))).collect())
        .collect();
    InstanceFile { points: Some(points), ..InstanceFile::default() }
}

/// An integer metric: uniform weights in `1..=max_weight` on all pairs,
/// closed under shortest paths.
pub fn random_integer_metric(seed: u64, n: usize, max_weight: u32) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = u64::from(rng.gen_range(1..=max_weight.max(1)));
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][m] + d[m][j]);
            }
        }
    }
    let matrix = d.into_iter().map(|row| row.into_iter().map(|x| x as f64).collect()).collect();
    InstanceFile { matrix: Some(matrix), ..InstanceFile::default() }
}
