use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{C64, ZERO};
use crate::{Error, Result};

/// Haar-random `N×N` unitary.
///
/// Orthonormalises the columns of a complex Ginibre matrix by modified
/// Gram–Schmidt. The implied `R` factor has a positive real diagonal, which is
/// the normalisation that makes `Q` Haar distributed.
pub fn haar_unitary<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [[C64; N]; N] {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    loop {
        let mut cols = [[ZERO; N]; N];
        for col in cols.iter_mut() {
            for z in col.iter_mut() {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *z = C64::new(re * scale, im * scale);
            }
        }
        let mut degenerate = false;
        for j in 0..N {
            for i in 0..j {
                let dot: C64 = (0..N).map(|r| cols[i][r].conj() * cols[j][r]).sum();
                for r in 0..N {
                    let v = cols[i][r];
                    cols[j][r] -= dot * v;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-12 {
                degenerate = true;
                break;
            }
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
        if degenerate {
            continue;
        }
        let mut u = [[ZERO; N]; N];
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                u[i][j] = *z;
            }
        }
        return u;
    }
}

/// Row-major Haar unitary of dimension 2 or 4.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Vec<Vec<C64>>> {
    match dim {
        2 => Ok(haar_unitary::<2, R>(rng).iter().map(|r| r.to_vec()).collect()),
        4 => Ok(haar_unitary::<4, R>(rng).iter().map(|r| r.to_vec()).collect()),
        d => Err(Error::domain(format!("Haar sampling supports dimensions 2 and 4, got {d}"))),
    }
}
