//! Floating-point experiment: a Haar-random pair of 2×2 unitaries should
//! accept each word uniquely. Nothing here feeds the exact code paths.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AutomataError, Word};

/// Longest word the experiment enumerates around.
pub const FLOAT_MAX_LEN: usize = 14;

pub type U2 = [[Complex64; 2]; 2];
type V2 = [Complex64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Two independent Haar samples.
    Independent,
    /// One Haar sample used for both letters.
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatReport {
    pub trials: usize,
    pub successes: usize,
    /// Smallest projective distance from `ω` over all other words and trials.
    pub min_margin: f64,
}

impl FloatReport {
    pub fn fraction(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.successes as f64 / self.trials as f64
    }
}

fn normal_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    // Box–Muller; 1 - u keeps the logarithm finite
    let u: f64 = 1.0 - rng.gen::<f64>();
    let t: f64 = rng.gen::<f64>() * core::f64::consts::TAU;
    let r = libm::sqrt(-2.0 * libm::log(u));
    (r * libm::cos(t), r * libm::sin(t))
}

/// A Haar-distributed element of U(2): a uniform unit quaternion (SU(2))
/// times a uniform phase.
pub fn haar_unitary<R: Rng>(rng: &mut R) -> U2 {
    let (w, x) = normal_pair(rng);
    let (y, z) = normal_pair(rng);
    let n = libm::sqrt(w * w + x * x + y * y + z * z);
    let (w, x, y, z) = (w / n, x / n, y / n, z / n);
    let theta = rng.gen::<f64>() * core::f64::consts::TAU;
    let phase = Complex64::new(libm::cos(theta), libm::sin(theta));
    [
        [Complex64::new(w, x) * phase, Complex64::new(y, z) * phase],
        [Complex64::new(-y, z) * phase, Complex64::new(w, -x) * phase],
    ]
}

fn apply(m: &U2, v: &V2) -> V2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// Fubini–Study distance `sqrt(1 - |⟨u,v⟩|² / (‖u‖²‖v‖²))`, computed as
/// `|u_1 v_2 - u_2 v_1| / (‖u‖‖v‖)` which avoids cancellation near 0.
pub fn projective_distance(u: &V2, v: &V2) -> f64 {
    let cross = (u[0] * v[1] - u[1] * v[0]).norm();
    let nu = libm::sqrt(u[0].norm_sqr() + u[1].norm_sqr());
    let nv = libm::sqrt(v[0].norm_sqr() + v[1].norm_sqr());
    cross / (nu * nv)
}

/// Distance from `ω` of the closest word `y ≠ x` of length `|x|`.
fn margin(u: &[U2; 2], x: &Word, omega: &V2) -> f64 {
    fn go(u: &[U2; 2], x: &[u8], path: &mut [u8], depth: usize, v: V2, omega: &V2, best: &mut f64) {
        let n = path.len();
        if depth == n {
            // path holds the letters in application order: path[k] = y(n - k)
            if !path.iter().rev().eq(x.iter()) {
                *best = best.min(projective_distance(&v, omega));
            }
            return;
        }
        for b in 0..2u8 {
            path[depth] = b;
            go(u, x, path, depth + 1, apply(&u[b as usize], &v), omega, best);
        }
    }
    let mut best = f64::INFINITY;
    let mut path = alloc::vec![0u8; x.len()];
    let e1 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    go(u, x.bits(), &mut path, 0, e1, omega, &mut best);
    best
}

/// Fraction of seeded Haar trials in which, with `α = e_1` and
/// `ω = U_x e_1`, every other word of length `|x|` lands farther than `tol`
/// from `ω`.
pub fn float_generic_check(
    x: &Word,
    trials: usize,
    tol: f64,
    seed: u64,
    sampling: Sampling,
) -> Result<FloatReport, AutomataError> {
    if x.len() > FLOAT_MAX_LEN {
        return Err(AutomataError::LengthCapExceeded {
            len: x.len(),
            max: FLOAT_MAX_LEN,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    let mut min_margin = f64::INFINITY;
    for _ in 0..trials {
        let u0 = haar_unitary(&mut rng);
        let u1 = match sampling {
            Sampling::Independent => haar_unitary(&mut rng),
            Sampling::Equal => u0,
        };
        let u = [u0, u1];
        let e1 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let omega = x.bits().iter().rev().fold(e1, |v, &b| apply(&u[b as usize], &v));
        let m = margin(&u, x, &omega);
        min_margin = min_margin.min(m);
        if m > tol {
            successes += 1;
        }
    }
    Ok(FloatReport {
        trials,
        successes,
        min_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(m: &U2) -> bool {
        (0..2).all(|i| {
            (0..2).all(|j| {
                let dot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                let want = if i == j { 1.0 } else { 0.0 };
                (dot - want).norm() < 1e-12
            })
        })
    }

    #[test]
    fn samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(is_unitary(&haar_unitary(&mut rng)));
        }
    }

    #[test]
    fn distance_is_projective() {
        let u = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
        let s = Complex64::new(-3.0, 0.7);
        let v = [u[0] * s, u[1] * s];
        assert!(projective_distance(&u, &v) < 1e-15);
        let e1 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e2 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!((projective_distance(&e1, &e2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equal_generators_fail_on_mixed_words() {
        let x: Word = "01".parse().unwrap();
        let r = float_generic_check(&x, 20, 1e-8, 1, Sampling::Equal).unwrap();
        assert_eq!(r.successes, 0);
        let r = float_generic_check(&x, 100, 1e-8, 1, Sampling::Independent).unwrap();
        assert_eq!(r.fraction(), 1.0);
    }
}
