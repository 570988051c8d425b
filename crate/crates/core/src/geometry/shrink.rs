//! The shrinking construction: around each lifted point `x_i`, move every
//! other configuration point (except the antipode of `x_i`) along its
//! longitude toward `x_i`, rescaling angles linearly so the farthest point
//! lands on the boundary of the separation disc. This produces `2n-2` new
//! points per lifted point and `2n(n-1)` new projective points in total,
//! never using a chart.

use serde::Serialize;

use super::{
    antipodal_closure_residual, antipodal_lift, dot, min_pairwise_distance, neg, normalize,
    sphere_distance, GeometryError, RpPoint, Tolerances,
};

#[derive(Clone, Debug, Serialize)]
pub struct ShrinkDiagnostics {
    pub separation_radius: f64,
    pub min_separation: f64,
    pub antipodal_residual: f64,
    pub max_center_distance: f64,
}

/// `2n(n-1)` new projective points inside the pairwise-disjoint separation
/// discs around the lifted inputs.
pub fn section_shrink(
    points: &[RpPoint],
    tol: &Tolerances,
) -> Result<(Vec<RpPoint>, ShrinkDiagnostics), GeometryError> {
    assert!(points.len() >= 3, "the construction needs n >= 3");
    let config = antipodal_lift(points, tol)?;
    let sep = config.separation_radius();
    if sep <= tol.min_separation_radius {
        return Err(GeometryError::NearDegenerate {
            sep,
            min: tol.min_separation_radius,
        });
    }
    let total = config.points.len();
    let mut sphere_stage: Vec<[f64; 3]> = Vec::new();
    let mut outputs: Vec<RpPoint> = Vec::new();
    let mut max_center_distance: f64 = 0.0;
    // one representative per antipodal pair; the twin disc gets the exact
    // negations, which is the same shrinking process around the antipode
    for i in (0..total).step_by(2) {
        let xi = config.points[i];
        let anti = config.antipode_index(i);
        let reach = (0..total)
            .filter(|&j| j != anti)
            .map(|j| sphere_distance(xi, config.points[j]))
            .fold(0.0f64, f64::max);
        for j in (0..total).filter(|&j| j != i && j != anti) {
            let xj = config.points[j];
            let theta = sphere_distance(xi, xj);
            let scaled = theta * sep / reach;
            // unit tangent at x_i toward x_j
            let mut w = [0.0; 3];
            let d = dot(xi, xj);
            for t in 0..3 {
                w[t] = xj[t] - d * xi[t];
            }
            let w = normalize(w);
            let mut p = [0.0; 3];
            for t in 0..3 {
                p[t] = scaled.cos() * xi[t] + scaled.sin() * w[t];
            }
            let dist = sphere_distance(p, xi);
            max_center_distance = max_center_distance.max(dist);
            if dist > sep + 1e-12 {
                return Err(GeometryError::SeparationViolated { sep: dist });
            }
            sphere_stage.push(p);
            sphere_stage.push(neg(p));
            outputs.push(RpPoint::new(p));
        }
    }
    let n = points.len();
    let expected = 2 * n * (n - 1);
    debug_assert_eq!(outputs.len(), expected);
    let mut everything = outputs.clone();
    everything.extend_from_slice(points);
    let min_separation = min_pairwise_distance(&everything);
    if min_separation <= tol.distinct {
        return Err(GeometryError::SeparationViolated {
            sep: min_separation,
        });
    }
    Ok((
        outputs,
        ShrinkDiagnostics {
            separation_radius: sep,
            min_separation,
            antipodal_residual: antipodal_closure_residual(&sphere_stage),
            max_center_distance,
        },
    ))
}
