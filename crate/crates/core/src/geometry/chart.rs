//! Stereographic chart of the sphere minus a pole.
//!
//! The chart identifies the sphere with the extended complex plane; the
//! antipodal map becomes `z ↦ -1/conj(z)`. The pole is ours to choose, so a
//! deterministic schedule proposes axis poles first, then seeded random
//! directions, rejecting anything close to a configuration point.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{cross, dot, normalize, random_unit, sphere_distance, GeometryError, SphereConfig};

#[derive(Clone, Copy, Debug)]
pub struct Chart {
    pub pole: [f64; 3],
    u: [f64; 3],
    v: [f64; 3],
}

impl Chart {
    pub fn new(pole: [f64; 3]) -> Self {
        let pole = normalize(pole);
        // any direction not parallel to the pole seeds the frame
        let seed = if pole[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let mut u = [0.0; 3];
        let d = dot(seed, pole);
        for i in 0..3 {
            u[i] = seed[i] - d * pole[i];
        }
        let u = normalize(u);
        let v = cross(pole, u);
        Chart { pole, u, v }
    }

    /// Projection from the pole: `z = (x·u + i x·v) / (1 - x·pole)`.
    pub fn to_plane(&self, x: [f64; 3]) -> Complex64 {
        let denom = 1.0 - dot(x, self.pole);
        Complex64::new(dot(x, self.u) / denom, dot(x, self.v) / denom)
    }

    pub fn to_sphere(&self, z: Complex64) -> [f64; 3] {
        let n2 = z.norm_sqr();
        let scale = 1.0 / (n2 + 1.0);
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = scale * (2.0 * z.re * self.u[i] + 2.0 * z.im * self.v[i] + (n2 - 1.0) * self.pole[i]);
        }
        out
    }

    /// The chart-side antipodal map `z ↦ -1/conj(z)`.
    pub fn antipode(z: Complex64) -> Complex64 {
        -Complex64::new(1.0, 0.0) / z.conj()
    }
}

/// Deterministic pole choice: fixed axis candidates, then seeded random
/// directions. A candidate needs spherical distance above 0.3 from every
/// configuration point; if none clears that, the floor drops to 1e-3.
pub fn pole_schedule(config: &SphereConfig, seed: u64) -> Result<Chart, GeometryError> {
    let mut candidates: Vec<[f64; 3]> = vec![
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x516_CC1D));
    for _ in 0..64 {
        candidates.push(random_unit(&mut rng));
    }
    let clearance = |pole: [f64; 3]| {
        config
            .points
            .iter()
            .map(|&p| sphere_distance(pole, p))
            .fold(f64::INFINITY, f64::min)
    };
    for floor in [0.3, 1e-3] {
        if let Some(&pole) = candidates.iter().find(|&&c| clearance(c) > floor) {
            return Ok(Chart::new(pole));
        }
    }
    Err(GeometryError::PoleScheduleExhausted)
}
