//! Matrix exponential via scaling-and-squaring with a Padé(13) approximant.

use ndarray::Array2;
use ndarray_linalg::Inverse;
use num_complex::Complex64;

use crate::Result;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which a single Padé(13) evaluation meets double precision.
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut best = 0.0f64;
    for col in a.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// exp(A) for a square complex matrix.
pub fn expm(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    crate::blas::single_thread();
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a1 = a * c(0.5f64.powi(squarings as i32));

    let a2 = a1.dot(&a1);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let eye: Array2<Complex64> = Array2::eye(n);

    let w1 = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let w2 = a6.dot(&w1) + &a6 * c(PADE13[7]) + &a4 * c(PADE13[5]) + &a2 * c(PADE13[3]) + &eye * c(PADE13[1]);
    let u = a1.dot(&w2);
    let z1 = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = a6.dot(&z1) + &a6 * c(PADE13[6]) + &a4 * c(PADE13[4]) + &a2 * c(PADE13[2]) + &eye * c(PADE13[0]);

    // exp(A1) ≈ (V − U)⁻¹ (V + U), then square back up.
    let num = &v + &u;
    let den = &v - &u;
    let mut f = den.inv()?.dot(&num);
    for _ in 0..squarings {
        f = f.dot(&f);
    }
    Ok(f)
}
