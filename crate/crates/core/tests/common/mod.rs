#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylscope_core::linalg::{self, Mat, Mat4};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Random rotation: Gram-Schmidt of a uniform random matrix, fixed to det +1.
pub fn random_rotation<const N: usize>(rng: &mut ChaCha8Rng) -> Mat<N> {
    loop {
        let mut m = [[0.0; N]; N];
        for v in m.iter_mut().flatten() {
            *v = rng.random_range(-1.0..1.0);
        }
        let mut ok = true;
        for a in 0..N {
            for b in 0..a {
                let d: f64 = (0..N).map(|i| m[a][i] * m[b][i]).sum();
                for i in 0..N {
                    m[a][i] -= d * m[b][i];
                }
            }
            let n: f64 = m[a].iter().map(|v| v * v).sum::<f64>().sqrt();
            if n < 1e-3 {
                ok = false;
                break;
            }
            for v in m[a].iter_mut() {
                *v /= n;
            }
        }
        if !ok {
            continue;
        }
        if determinant_sign(&m) < 0.0 {
            for v in m[0].iter_mut() {
                *v = -*v;
            }
        }
        return m;
    }
}

/// Sign of the determinant, by elimination with partial pivoting.
fn determinant_sign<const N: usize>(m: &Mat<N>) -> f64 {
    let mut a = *m;
    let mut sign = 1.0;
    for c in 0..N {
        let p = (c..N).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        if a[c][c] < 0.0 {
            sign = -sign;
        }
        for r in (c + 1)..N {
            let f = a[r][c] / a[c][c];
            for k in c..N {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    sign
}

/// Random symmetric positive-definite `4×4` matrix with condition number
/// at most about 100.
pub fn random_metric(rng: &mut ChaCha8Rng) -> Mat4 {
    let q: Mat4 = random_rotation(rng);
    let mut d = [0.0; 4];
    for v in d.iter_mut() {
        *v = 0.1 + 9.9 * rng.random::<f64>();
    }
    let d = linalg::diag(d);
    linalg::symmetrize(&linalg::congruence(&d, &q))
}
