//! Numeric construction of the two geometric cross-sections: given `n`
//! points of the projective plane, produce `m = k·n(2n-1)(2n-2)` new points
//! by pulling a small regular value back through a product of Möbius
//! transformations, or `m = 2n(n-1)` new points by shrinking along
//! longitudes.
//!
//! Everything runs on the two-sheeted cover: a point of the projective
//! plane is an antipodal pair on the sphere, and both constructions are
//! performed antipodally-equivariantly so the results project back down.

mod chart;
mod mobius;
mod poly;
mod shrink;
mod svg;

pub use chart::{pole_schedule, Chart};
pub use mobius::{
    build_r, choose_regular_radius, preimage_points, section_mobius, section_mobius_scheduled,
    MobiusDiagnostics, RationalProduct,
};
pub use poly::{aberth_roots, poly_derivative, poly_eval};
pub use shrink::{section_shrink, ShrinkDiagnostics};
pub use svg::render_svg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeometryError {
    #[error("input points {0} and {1} coincide within tolerance")]
    DuplicateInput(usize, usize),
    #[error("configuration too degenerate: separation radius {sep:.3e} <= {min:.3e}")]
    NearDegenerate { sep: f64, min: f64 },
    #[error("no chart pole found away from the configuration")]
    PoleScheduleExhausted,
    #[error("regular radius search underflowed at base point {base}")]
    RadiusUnderflow { base: usize },
    #[error("root finder failed on the value polynomial at base point {base}: {reason}")]
    RootFinding { base: usize, reason: String },
    #[error("expected {expected} preimage points at base point {base}, found {found} distinct")]
    MultipleRoot {
        base: usize,
        expected: usize,
        found: usize,
    },
    #[error("output separation {sep:.3e} fell below the distinctness tolerance")]
    SeparationViolated { sep: f64 },
}

/// Numerical tolerances of the construction, overridable from the CLI.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// two inputs closer than this are duplicates
    pub duplicate: f64,
    /// lower bound on the separation radius of admissible configurations
    pub min_separation_radius: f64,
    /// normalized polynomial residual at accepted roots
    pub residual: f64,
    /// minimum pairwise chart distance between roots (simplicity)
    pub root_separation: f64,
    /// minimum derivative magnitude at roots (simplicity)
    pub derivative_floor: f64,
    /// minimum pairwise distance among outputs and inputs
    pub distinct: f64,
    /// antipodal closure residual on the sphere stage
    pub antipodal: f64,
    /// the regular-radius search fails below this
    pub radius_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            duplicate: 1e-9,
            min_separation_radius: 1e-3,
            residual: 1e-8,
            root_separation: 1e-8,
            derivative_floor: 1e-10,
            distinct: 1e-8,
            antipodal: 1e-10,
            radius_floor: 1e-12,
        }
    }
}

/// A point of the projective plane: a unit 3-vector, sign-normalized so the
/// first coordinate of magnitude above 1e-12 is positive.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RpPoint {
    pub v: [f64; 3],
}

impl RpPoint {
    pub fn new(v: [f64; 3]) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!(norm > 0.0, "zero vector is not a point");
        // unit inputs are left bit-exact so normalization is idempotent
        let mut v = if (norm - 1.0).abs() > 1e-12 {
            [v[0] / norm, v[1] / norm, v[2] / norm]
        } else {
            v
        };
        for i in 0..3 {
            if v[i].abs() > 1e-12 {
                if v[i] < 0.0 {
                    v = [-v[0], -v[1], -v[2]];
                }
                break;
            }
        }
        RpPoint { v }
    }

    /// Projective distance: the spherical distance to the closer lift.
    pub fn distance(&self, other: &RpPoint) -> f64 {
        let d = dot(self.v, other.v).abs().min(1.0);
        d.acos()
    }

    /// Chordal distance to the closer lift. Unlike the angular metric this
    /// has no arccos noise floor, so it is the right yardstick for
    /// comparisons at the 1e-9 scale and below.
    pub fn chordal_distance(&self, other: &RpPoint) -> f64 {
        chordal(self.v, other.v)
    }

    pub fn approx_eq(&self, other: &RpPoint, tol: f64) -> bool {
        self.chordal_distance(other) < tol
    }
}

/// `min(|a - b|, |a + b|)` for unit vectors.
pub fn chordal(a: [f64; 3], b: [f64; 3]) -> f64 {
    let mut diff = 0.0;
    let mut sum = 0.0;
    for i in 0..3 {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        sum += (a[i] + b[i]) * (a[i] + b[i]);
    }
    diff.min(sum).sqrt()
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn neg(a: [f64; 3]) -> [f64; 3] {
    [-a[0], -a[1], -a[2]]
}

pub fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Spherical (central-angle) distance between unit vectors.
pub fn sphere_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

/// The lifted configuration: `2n` unit vectors with the antipode of the
/// point at index `i` stored at `i ^ 1`, so pairing is exact.
#[derive(Clone, Debug)]
pub struct SphereConfig {
    pub points: Vec<[f64; 3]>,
}

impl SphereConfig {
    pub fn pairs(&self) -> usize {
        self.points.len() / 2
    }

    pub fn antipode_index(&self, i: usize) -> usize {
        i ^ 1
    }

    /// One third of the minimum pairwise spherical distance: the radius of
    /// the pairwise-disjoint discs around the lifted points.
    pub fn separation_radius(&self) -> f64 {
        let mut min = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                min = min.min(sphere_distance(self.points[i], self.points[j]));
            }
        }
        min / 3.0
    }
}

/// Lifts projective points to antipodal pairs. The projection back is the
/// identity on sign-normalized inputs, and the pairing is exact by
/// construction.
pub fn antipodal_lift(points: &[RpPoint], tol: &Tolerances) -> Result<SphereConfig, GeometryError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].approx_eq(&points[j], tol.duplicate) {
                return Err(GeometryError::DuplicateInput(i, j));
            }
        }
    }
    let mut out = Vec::with_capacity(points.len() * 2);
    for p in points {
        out.push(p.v);
        out.push(neg(p.v));
    }
    Ok(SphereConfig { points: out })
}

/// Deterministic well-separated random configurations for tests and the CLI.
pub fn seeded_config(n: usize, seed: u64) -> Vec<RpPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let min_sep = 0.35;
    loop {
        let pts: Vec<RpPoint> = (0..n).map(|_| RpPoint::new(random_unit(&mut rng))).collect();
        let mut ok = true;
        'sep: for i in 0..n {
            for j in i + 1..n {
                if pts[i].distance(&pts[j]) < min_sep {
                    ok = false;
                    break 'sep;
                }
            }
        }
        if ok {
            return pts;
        }
    }
}

pub(crate) fn random_unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2 = dot(v, v);
        if n2 > 0.05 && n2 <= 1.0 {
            return normalize(v);
        }
    }
}

/// Largest antipodal-closure defect of a sphere-stage point set: the
/// chordal distance from each point's negation to the nearest point of the
/// set (exact negations score zero).
pub fn antipodal_closure_residual(points: &[[f64; 3]]) -> f64 {
    let mut worst: f64 = 0.0;
    for &p in points {
        let np = neg(p);
        let nearest = points
            .iter()
            .map(|&q| {
                let mut d = 0.0;
                for t in 0..3 {
                    d += (np[t] - q[t]) * (np[t] - q[t]);
                }
                d.sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
    }
    worst
}

/// Minimum pairwise projective distance over a set of points.
pub fn min_pairwise_distance(points: &[RpPoint]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            min = min.min(points[i].distance(&points[j]));
        }
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_roundtrip() {
        let tol = Tolerances::default();
        let p = RpPoint::new([0.0, 0.0, 1.0]);
        let cfg = antipodal_lift(&[p], &tol).unwrap();
        assert_eq!(cfg.points.len(), 2);
        assert_eq!(cfg.points[0], [0.0, 0.0, 1.0]);
        assert_eq!(cfg.points[1], [0.0, 0.0, -1.0]);
        // projecting back yields the input
        assert!(RpPoint::new(cfg.points[1]).approx_eq(&p, 1e-15));
    }

    #[test]
    fn lift_pairing_is_involutive() {
        let tol = Tolerances::default();
        let pts = seeded_config(4, 0);
        let cfg = antipodal_lift(&pts, &tol).unwrap();
        assert_eq!(cfg.points.len(), 8);
        for i in 0..cfg.points.len() {
            let j = cfg.antipode_index(i);
            assert_eq!(cfg.antipode_index(j), i);
            assert_eq!(cfg.points[j], neg(cfg.points[i]));
        }
        assert_eq!(antipodal_closure_residual(&cfg.points), 0.0);
    }

    #[test]
    fn duplicate_inputs_rejected() {
        let tol = Tolerances::default();
        let p = RpPoint::new([1.0, 0.2, 0.3]);
        let q = RpPoint::new([-1.0, -0.2, -0.3]); // same projective point
        assert!(matches!(
            antipodal_lift(&[p, q], &tol),
            Err(GeometryError::DuplicateInput(0, 1))
        ));
    }

    #[test]
    fn sign_normalization_is_idempotent() {
        let p = RpPoint::new([-0.3, 0.4, -0.5]);
        let q = RpPoint::new(p.v);
        assert_eq!(p.v, q.v);
        assert!(p.v[0] > 0.0);
    }

    #[test]
    fn seeded_configs_are_separated_and_deterministic() {
        for n in [3usize, 4, 5] {
            let a = seeded_config(n, 0);
            let b = seeded_config(n, 0);
            assert_eq!(a.len(), n);
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.v, y.v);
            }
            assert!(min_pairwise_distance(&a) > 0.35);
        }
    }
}
