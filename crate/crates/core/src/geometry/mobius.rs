//! The Möbius-product construction: around each lifted point, the preimage
//! of a small regular value of a degree `(2n-1)(2n-2)` rational map supplies
//! the new points.
//!
//! For a base point `x_i`, the map is the product of every Möbius
//! transformation sending `(x_i, x_j, x_k)` to `(0, 1, ∞)` over ordered
//! pairs `j ≠ k` avoiding `i`. The base point is its only zero, and the map
//! commutes with the antipodal map, so preimages around `-x_i` are exactly
//! the negated preimages around `x_i`: only one representative per pair is
//! ever solved, and the other ring is its exact negation.

use num_complex::Complex64;
use serde::Serialize;

use super::chart::{pole_schedule, Chart};
use super::poly::{
    aberth_roots, poly_axpy, poly_derivative, poly_eval, poly_max_coeff, poly_mul, poly_shift, C64,
};
use super::{
    antipodal_closure_residual, antipodal_lift, min_pairwise_distance, neg, sphere_distance,
    GeometryError, RpPoint, SphereConfig, Tolerances,
};

/// Numerator/denominator of the product map for one base point, in the
/// chart. Degree = number of factor pairs = `(2n-1)(2n-2)`.
#[derive(Clone, Debug)]
pub struct RationalProduct {
    pub base: usize,
    /// chart coordinate of the base point; the preimage rings cluster here
    pub center: C64,
    pub pairs: Vec<(usize, usize)>,
    pub num: Vec<C64>,
    pub den: Vec<C64>,
}

impl RationalProduct {
    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn eval(&self, z: C64) -> C64 {
        poly_eval(&self.num, z) / poly_eval(&self.den, z)
    }

    /// The polynomial whose roots are the preimage of the value `r`.
    pub fn value_polynomial(&self, r: f64) -> Vec<C64> {
        poly_axpy(&self.num, C64::new(r, 0.0), &self.den)
    }
}

/// Builds the product map for base point `i`: numerator factors
/// `(z - z_i)(z_j - z_k)`, denominator factors `(z - z_k)(z_j - z_i)` over
/// all ordered pairs `j ≠ k` in the configuration minus `i`.
pub fn build_r(i: usize, config: &SphereConfig, chart: &Chart) -> RationalProduct {
    let z: Vec<C64> = config.points.iter().map(|&p| chart.to_plane(p)).collect();
    let zi = z[i];
    let mut pairs = Vec::new();
    let mut num = vec![C64::new(1.0, 0.0)];
    let mut den = vec![C64::new(1.0, 0.0)];
    for j in 0..z.len() {
        if j == i {
            continue;
        }
        for k in 0..z.len() {
            if k == i || k == j {
                continue;
            }
            pairs.push((j, k));
            num = poly_mul(&num, &[-zi * (z[j] - z[k]), z[j] - z[k]]);
            den = poly_mul(&den, &[-z[k] * (z[j] - zi), z[j] - zi]);
        }
    }
    // a common rescale keeps coefficients near unity without changing the map
    let scale = (poly_max_coeff(&num) * poly_max_coeff(&den)).sqrt();
    if scale > 0.0 {
        for c in num.iter_mut() {
            *c /= scale;
        }
        for c in den.iter_mut() {
            *c /= scale;
        }
    }
    RationalProduct {
        base: i,
        center: zi,
        pairs,
        num,
        den,
    }
}

/// Roots of `num - r·den` in the chart, checked for residual and
/// simplicity. Count must equal the degree.
///
/// The polynomial is recentered on the base point before solving: the whole
/// preimage ring sits near the new origin, where a degree-70 evaluation is
/// still well conditioned.
pub fn preimage_points(
    rp: &RationalProduct,
    r: f64,
    tol: &Tolerances,
) -> Result<(Vec<C64>, f64), GeometryError> {
    let p = poly_shift(&rp.value_polynomial(r), rp.center);
    let scale = poly_max_coeff(&p);
    if scale == 0.0 {
        return Err(GeometryError::RootFinding {
            base: rp.base,
            reason: "zero value polynomial".to_string(),
        });
    }
    let p: Vec<C64> = p.iter().map(|&c| c / scale).collect();
    if p[p.len() - 1].norm() < 1e-12 {
        return Err(GeometryError::RootFinding {
            base: rp.base,
            reason: "degenerate leading coefficient".to_string(),
        });
    }
    let shifted = aberth_roots(&p, 600, 1e-12).map_err(|reason| GeometryError::RootFinding {
        base: rp.base,
        reason,
    })?;
    if shifted.len() != rp.degree() {
        return Err(GeometryError::MultipleRoot {
            base: rp.base,
            expected: rp.degree(),
            found: shifted.len(),
        });
    }
    let dp = poly_derivative(&p);
    let mut max_residual: f64 = 0.0;
    for (a, &wa) in shifted.iter().enumerate() {
        let residual = poly_eval(&p, wa).norm();
        max_residual = max_residual.max(residual);
        if residual > tol.residual {
            return Err(GeometryError::RootFinding {
                base: rp.base,
                reason: format!("residual {residual:.2e} at root {a}"),
            });
        }
        if poly_eval(&dp, wa).norm() < tol.derivative_floor {
            return Err(GeometryError::MultipleRoot {
                base: rp.base,
                expected: rp.degree(),
                found: shifted.len(),
            });
        }
        for &wb in shifted.iter().take(a) {
            if (wa - wb).norm() < tol.root_separation {
                return Err(GeometryError::MultipleRoot {
                    base: rp.base,
                    expected: rp.degree(),
                    found: shifted.len() - 1,
                });
            }
        }
    }
    let roots = shifted.into_iter().map(|w| w + rp.center).collect();
    Ok((roots, max_residual))
}

/// The accepted radius plus the maps it was validated against.
pub struct RadiusChoice {
    pub radius: f64,
    pub halvings: u32,
    pub maps: Vec<RationalProduct>,
}

/// Searches a uniform regular value for every base point: starting at 0.5
/// and halving (at most 60 times) until, for one representative of each
/// antipodal pair, the preimage roots are simple and contained in the
/// separation disc of the base point.
pub fn choose_regular_radius(
    config: &SphereConfig,
    chart: &Chart,
    tol: &Tolerances,
) -> Result<RadiusChoice, GeometryError> {
    let sep = config.separation_radius();
    let maps: Vec<RationalProduct> = (0..config.points.len())
        .step_by(2)
        .map(|i| build_r(i, config, chart))
        .collect();
    let mut radius = 0.5;
    for halvings in 0..=60u32 {
        if radius < tol.radius_floor {
            break;
        }
        let ok = maps.iter().all(|rp| ring_ok(rp, radius, config, chart, sep, tol));
        if ok {
            return Ok(RadiusChoice {
                radius,
                halvings,
                maps,
            });
        }
        radius /= 2.0;
    }
    Err(GeometryError::RadiusUnderflow {
        base: maps
            .iter()
            .find(|rp| !ring_ok(rp, radius.max(tol.radius_floor), config, chart, sep, tol))
            .map_or(0, |rp| rp.base),
    })
}

fn ring_ok(
    rp: &RationalProduct,
    r: f64,
    config: &SphereConfig,
    chart: &Chart,
    sep: f64,
    tol: &Tolerances,
) -> bool {
    match preimage_points(rp, r, tol) {
        Err(_) => false,
        Ok((roots, _)) => roots.iter().all(|&z| {
            sphere_distance(chart.to_sphere(z), config.points[rp.base]) <= sep
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusDiagnostics {
    pub pole: [f64; 3],
    pub radius: f64,
    pub halvings: u32,
    pub separation_radius: f64,
    pub max_residual: f64,
    pub min_separation: f64,
    pub antipodal_residual: f64,
}

/// The Möbius cross-section: `k·n(2n-1)(2n-2)` new projective points around
/// `n` inputs, using the value rings `r, r/2, …, r/k`.
pub fn section_mobius(
    points: &[RpPoint],
    k: u32,
    seed: u64,
    tol: &Tolerances,
) -> Result<(Vec<RpPoint>, MobiusDiagnostics), GeometryError> {
    assert!(points.len() >= 3, "the construction needs n >= 3");
    assert!(k >= 1);
    let config = antipodal_lift(points, tol)?;
    let chart = pole_schedule(&config, seed)?;
    let choice = choose_regular_radius(&config, &chart, tol)?;
    let mut radius = choice.radius;
    let mut halvings = choice.halvings;
    // the ring radii r/t should stay regular; on a failure the whole search
    // restarts from a halved radius
    for _ in 0..8 {
        match assemble_rings(points, &config, &chart, &choice.maps, radius, k, tol) {
            Ok((outputs, mut diag)) => {
                diag.halvings = halvings;
                return Ok((outputs, diag));
            }
            Err(_) if radius / 2.0 >= tol.radius_floor => {
                radius /= 2.0;
                halvings += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Err(GeometryError::RadiusUnderflow { base: 0 })
}

/// Re-runs the construction with a fixed pole and radius (no schedule, no
/// search), for continuity experiments that must replay earlier decisions.
pub fn section_mobius_scheduled(
    points: &[RpPoint],
    k: u32,
    pole: [f64; 3],
    radius: f64,
    tol: &Tolerances,
) -> Result<(Vec<RpPoint>, MobiusDiagnostics), GeometryError> {
    let config = antipodal_lift(points, tol)?;
    let chart = Chart::new(pole);
    let maps: Vec<RationalProduct> = (0..config.points.len())
        .step_by(2)
        .map(|i| build_r(i, &config, &chart))
        .collect();
    assemble_rings(points, &config, &chart, &maps, radius, k, tol)
}

fn assemble_rings(
    points: &[RpPoint],
    config: &SphereConfig,
    chart: &Chart,
    maps: &[RationalProduct],
    radius: f64,
    k: u32,
    tol: &Tolerances,
) -> Result<(Vec<RpPoint>, MobiusDiagnostics), GeometryError> {
    let sep = config.separation_radius();
    if sep <= tol.min_separation_radius {
        return Err(GeometryError::NearDegenerate {
            sep,
            min: tol.min_separation_radius,
        });
    }
    let mut sphere_stage: Vec<[f64; 3]> = Vec::new();
    let mut outputs: Vec<RpPoint> = Vec::new();
    let mut max_residual: f64 = 0.0;
    for rp in maps {
        for t in 1..=k {
            let r = radius / f64::from(t);
            let (roots, residual) = preimage_points(rp, r, tol)?;
            max_residual = max_residual.max(residual);
            for &z in &roots {
                let p = chart.to_sphere(z);
                if sphere_distance(p, config.points[rp.base]) > sep {
                    return Err(GeometryError::RootFinding {
                        base: rp.base,
                        reason: format!("preimage escaped the separation disc at ring {t}"),
                    });
                }
                // the antipodal ring is the exact negation
                sphere_stage.push(p);
                sphere_stage.push(neg(p));
                outputs.push(RpPoint::new(p));
            }
        }
    }
    let expected = points.len() * (2 * points.len() - 1) * (2 * points.len() - 2) * k as usize;
    if outputs.len() != expected {
        return Err(GeometryError::MultipleRoot {
            base: 0,
            expected,
            found: outputs.len(),
        });
    }
    let mut everything = outputs.clone();
    everything.extend_from_slice(points);
    let min_separation = min_pairwise_distance(&everything);
    if min_separation <= tol.distinct {
        return Err(GeometryError::SeparationViolated {
            sep: min_separation,
        });
    }
    let antipodal_residual = antipodal_closure_residual(&sphere_stage);
    Ok((
        outputs,
        MobiusDiagnostics {
            pole: chart.pole,
            radius,
            halvings: 0,
            separation_radius: sep,
            max_residual,
            min_separation,
            antipodal_residual,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::seeded_config;
    use rand::{Rng, SeedableRng};

    #[test]
    fn degree_and_zero() {
        let tol = Tolerances::default();
        let pts = seeded_config(3, 0);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 0).unwrap();
        let rp = build_r(0, &config, &chart);
        // n = 3: degree (2n-1)(2n-2) = 20
        assert_eq!(rp.degree(), 20);
        assert_eq!(rp.num.len() - 1, 20);
        // the base point is a zero
        let z0 = chart.to_plane(config.points[0]);
        assert!(rp.eval(z0).norm() < 1e-10);
        // and the only one: the preimage of a small regular value stays
        // inside the separation disc around the base point
        let choice = choose_regular_radius(&config, &chart, &tol).unwrap();
        let sep = config.separation_radius();
        let (roots, _) = preimage_points(&choice.maps[0], choice.radius, &tol).unwrap();
        for z in roots {
            assert!(sphere_distance(chart.to_sphere(z), config.points[0]) <= sep);
        }
    }

    #[test]
    fn antipodal_identity_at_random_points() {
        // in the chart the antipodal map z ↦ -1/conj(z) is antiholomorphic,
        // so the product map around the antipodal base point evaluates to
        // the complex conjugate; for the real regular values used by the
        // construction the preimage rings are therefore exactly antipodal
        let tol = Tolerances::default();
        let pts = seeded_config(3, 1);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 1).unwrap();
        let rp = build_r(2, &config, &chart);
        let rp_anti = build_r(3, &config, &chart); // the antipodal base point
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let mut checked = 0;
        while checked < 100 {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() < 1e-3 {
                continue;
            }
            let za = Chart::antipode(z);
            if poly_eval(&rp.den, z).norm() < 1e-6 || poly_eval(&rp_anti.den, za).norm() < 1e-6 {
                continue;
            }
            let diff = (rp.eval(z).conj() - rp_anti.eval(za)).norm();
            let scale = 1.0 + rp.eval(z).norm();
            assert!(
                diff / scale < 1e-9,
                "antipodal identity violated by {diff:.2e}"
            );
            checked += 1;
        }
    }

    #[test]
    fn real_value_rings_are_antipodal() {
        // the ring around -x_i solved independently matches the negated
        // ring around x_i
        let tol = Tolerances::default();
        let pts = seeded_config(3, 1);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 1).unwrap();
        let choice = choose_regular_radius(&config, &chart, &tol).unwrap();
        let rp = build_r(0, &config, &chart);
        let rp_anti = build_r(1, &config, &chart);
        let (ring, _) = preimage_points(&rp, choice.radius, &tol).unwrap();
        let (ring_anti, _) = preimage_points(&rp_anti, choice.radius, &tol).unwrap();
        assert_eq!(ring.len(), ring_anti.len());
        for &z in &ring {
            let p = crate::geometry::neg(chart.to_sphere(z));
            let nearest = ring_anti
                .iter()
                .map(|&w| {
                    let q = chart.to_sphere(w);
                    let mut d = 0.0;
                    for t in 0..3 {
                        d += (p[t] - q[t]) * (p[t] - q[t]);
                    }
                    d.sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-7, "rings not antipodal: {nearest:.2e}");
        }
    }

    #[test]
    fn preimage_count_and_residuals() {
        let tol = Tolerances::default();
        let pts = seeded_config(3, 0);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 0).unwrap();
        let choice = choose_regular_radius(&config, &chart, &tol).unwrap();
        assert!(choice.radius > 0.0);
        let (roots, residual) = preimage_points(&choice.maps[0], choice.radius, &tol).unwrap();
        assert_eq!(roots.len(), 20);
        assert!(residual < tol.residual);
        // Vieta: sum of roots against the coefficient ratio
        let p = choice.maps[0].value_polynomial(choice.radius);
        let d = p.len() - 1;
        let sum: C64 = roots.iter().sum();
        let expected = -p[d - 1] / p[d];
        assert!((sum - expected).norm() / (1.0 + expected.norm()) < 1e-7);
    }

    #[test]
    fn radius_search_is_deterministic() {
        let tol = Tolerances::default();
        let pts = seeded_config(4, 3);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 3).unwrap();
        let a = choose_regular_radius(&config, &chart, &tol).unwrap();
        let b = choose_regular_radius(&config, &chart, &tol).unwrap();
        assert_eq!(a.radius, b.radius);
        assert_eq!(a.halvings, b.halvings);
    }

    #[test]
    fn golden_radius_n3_seed0() {
        // regression anchor for the seeded n = 3 configuration
        let tol = Tolerances::default();
        let pts = seeded_config(3, 0);
        let config = antipodal_lift(&pts, &tol).unwrap();
        let chart = pole_schedule(&config, 0).unwrap();
        let choice = choose_regular_radius(&config, &chart, &tol).unwrap();
        assert!(choice.radius > 0.0 && choice.radius <= 0.5);
        let again = choose_regular_radius(&config, &chart, &tol).unwrap();
        assert_eq!(choice.radius, again.radius);
    }

    #[test]
    fn section_counts_and_invariances() {
        let tol = Tolerances::default();
        for (n, k) in [(3usize, 1u32), (3, 2), (4, 1)] {
            let pts = seeded_config(n, 0);
            let (outputs, diag) = section_mobius(&pts, k, 0, &tol).unwrap();
            let expected = k as usize * n * (2 * n - 1) * (2 * n - 2);
            assert_eq!(outputs.len(), expected, "n={n} k={k}");
            assert!(diag.max_residual < tol.residual);
            assert!(diag.min_separation > tol.distinct);
            assert!(diag.antipodal_residual < tol.antipodal);

            // permutation invariance of the output set
            let mut permuted = pts.clone();
            permuted.rotate_left(1);
            permuted.reverse();
            let (outputs2, _) = section_mobius(&permuted, k, 0, &tol).unwrap();
            assert_eq!(outputs.len(), outputs2.len());
            for p in &outputs {
                let nearest = outputs2
                    .iter()
                    .map(|q| p.chordal_distance(q))
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-9, "n={n} k={k}: point moved by {nearest:.2e}");
            }
        }
    }

    #[test]
    fn continuity_proxy_with_replayed_schedule() {
        let tol = Tolerances::default();
        let pts = seeded_config(3, 0);
        let (base_out, diag) = section_mobius(&pts, 1, 0, &tol).unwrap();
        // perturb one input and replay the same pole and radius
        let delta = 1e-6;
        let mut moved = pts.clone();
        let mut v = moved[0].v;
        v[1] += delta;
        moved[0] = RpPoint::new(v);
        let (out2, _) =
            section_mobius_scheduled(&moved, 1, diag.pole, diag.radius, &tol).unwrap();
        assert_eq!(base_out.len(), out2.len());
        for p in &base_out {
            let nearest = out2
                .iter()
                .map(|q| p.chordal_distance(q))
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest < 1e3 * delta,
                "output jumped by {nearest:.2e} for a {delta:.0e} input move"
            );
        }
    }
}
