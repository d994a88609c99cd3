//! Point-wise measurement noise.
//!
//! Every node and Cartesian component receives
//! `δ ζ₁ max_θ|A(θ)| e^{i2πζ₂}` with independent `ζ₁, ζ₂ ~ U(−1, 1)`. The draws for node
//! `k` come from ChaCha stream `k` of the seeded generator, so the result does not
//! depend on evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sphquad::TangentField;
use crate::{CVec3, Error, Result};

pub fn add_noise(field: &TangentField, delta: f64, seed: u64) -> Result<TangentField> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid(format!(
            "noise level must be nonnegative, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(field.clone());
    }
    let amplitude = delta * field.max_magnitude();
    let values: Vec<CVec3> = field
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut out = *v;
            for c in out.iter_mut() {
                let z1: f64 = rng.gen_range(-1.0..1.0);
                let z2: f64 = rng.gen_range(-1.0..1.0);
                *c += Complex64::from_polar(amplitude * z1, 2.0 * std::f64::consts::PI * z2);
            }
            out
        })
        .collect();
    TangentField::new(field.grid().clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{mie_farfield, IncidentWave, Material};
    use crate::sphquad::{build_lebedev, t2_norm};

    fn sample() -> TangentField {
        let g = build_lebedev(590).unwrap();
        mie_farfield(0.2, &Material::Pec, &IncidentWave::standard(), &g).unwrap()
    }

    #[test]
    fn zero_level_is_identity() {
        let a = sample();
        assert_eq!(add_noise(&a, 0.0, 3).unwrap(), a);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let a = sample();
        let x = add_noise(&a, 0.2, 7).unwrap();
        let y = add_noise(&a, 0.2, 7).unwrap();
        assert_eq!(x, y);
        let z = add_noise(&a, 0.2, 8).unwrap();
        assert_ne!(x, z);
    }

    #[test]
    fn negative_level_is_rejected() {
        assert!(add_noise(&sample(), -0.1, 0).is_err());
        assert!(add_noise(&sample(), f64::NAN, 0).is_err());
    }

    #[test]
    fn perturbation_respects_worst_case_bound() {
        let a = sample();
        let delta = 0.2;
        let noisy = add_noise(&a, delta, 11).unwrap();
        let rel = t2_norm(&noisy.sub(&a).unwrap()) / t2_norm(&a);
        let bound =
            delta * (4.0 * std::f64::consts::PI * 3.0).sqrt() * a.max_magnitude() / t2_norm(&a);
        assert!(rel > 0.0 && rel <= bound, "{rel} vs {bound}");
        // per node and component |noise| ≤ δ max|A|
        let cap = delta * a.max_magnitude() * (1.0 + 1e-12);
        for (n, v) in noisy.values().iter().zip(a.values()) {
            for i in 0..3 {
                assert!((n[i] - v[i]).norm() <= cap);
            }
        }
    }
}
