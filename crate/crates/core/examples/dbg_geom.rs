use crosscap::geometry::*;

fn main() {
    let tol = Tolerances::default();
    let pts = seeded_config(3, 0);
    let config = antipodal_lift(&pts, &tol).unwrap();
    let chart = pole_schedule(&config, 0).unwrap();
    let rp = build_r(0, &config, &chart);
    let sep = config.separation_radius();
    let mut r = 0.5f64;
    for _ in 0..20 {
        match preimage_points(&rp, r, &tol) {
            Err(e) => println!("r={r:.6e}: ERR {e}"),
            Ok((roots, res)) => {
                let maxd = roots.iter()
                    .map(|&z| sphere_distance(chart.to_sphere(z), config.points[0]))
                    .fold(0.0f64, f64::max);
                println!("r={r:.6e}: {} roots, res {res:.2e}, maxdist {maxd:.4} sep {sep:.4}", roots.len());
            }
        }
        r /= 2.0;
    }
}
