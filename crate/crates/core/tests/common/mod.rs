//! Test-only oracles and random generators, independent of the library's
//! algebraic routes.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Maximum geometric mean over all simple cycles, found by enumerating every
/// cycle by depth-first search from its smallest vertex.
pub fn max_cycle_mean(a: &[Vec<f64>]) -> f64 {
    fn walk(a: &[Vec<f64>], start: usize, at: usize, product: f64, len: usize, on_path: &mut [bool], best: &mut f64) {
        let n = a.len();
        // Close the cycle back to start.
        let closed = product * a[at][start];
        if closed > 0.0 {
            *best = best.max(closed.powf(1.0 / len as f64));
        }
        for next in (start + 1)..n {
            if !on_path[next] && a[at][next] > 0.0 {
                on_path[next] = true;
                walk(a, start, next, product * a[at][next], len + 1, on_path, best);
                on_path[next] = false;
            }
        }
    }
    let n = a.len();
    let mut best = 0.0;
    let mut on_path = vec![false; n];
    for start in 0..n {
        on_path[start] = true;
        walk(a, start, start, 1.0, 1, &mut on_path, &mut best);
        on_path[start] = false;
    }
    best
}

/// Log-uniform sample in `[1/9, 9]`.
pub fn saaty_value(rng: &mut ChaCha8Rng) -> f64 {
    let l: f64 = rng.gen_range(-(9f64.ln())..=9f64.ln());
    l.exp()
}

pub fn random_positive(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..n).map(|_| saaty_value(rng)).collect()).collect()
}

pub fn random_reciprocal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut a = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = saaty_value(rng);
            a[i][j] = v;
            a[j][i] = 1.0 / v;
        }
    }
    a
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.05..20.0)).collect()
}

/// `max_ij a_ij x_j / x_i` evaluated directly.
pub fn objective(a: &[Vec<f64>], x: &[f64]) -> f64 {
    let n = a.len();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            best = best.max(a[i][j] * x[j] / x[i]);
        }
    }
    best
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// School-selection criteria matrix.
pub fn school_criteria() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, 4.0, 3.0, 1.0, 3.0, 4.0],
        vec![1.0 / 4.0, 1.0, 7.0, 3.0, 1.0 / 5.0, 1.0],
        vec![1.0 / 3.0, 1.0 / 7.0, 1.0, 1.0 / 5.0, 1.0 / 5.0, 1.0 / 6.0],
        vec![1.0, 1.0 / 3.0, 5.0, 1.0, 1.0, 1.0 / 3.0],
        vec![1.0 / 3.0, 5.0, 5.0, 1.0, 1.0, 3.0],
        vec![1.0 / 4.0, 1.0, 6.0, 3.0, 1.0 / 3.0, 1.0],
    ]
}

pub const SCHOOL_JSON: &str = include_str!("../data/school.json");

pub fn assert_vec_close(name: &str, got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{name}: length");
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= tol, "{name}[{k}]: got {g}, want {w} (tol {tol})");
    }
}
