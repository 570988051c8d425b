//! Plot emission: two orthographic disc charts (upper and lower hemisphere)
//! with inputs and outputs marked. No interactive machinery, just an SVG
//! string for files or pipelines.

use super::RpPoint;

const DISC_R: f64 = 160.0;
const MARGIN: f64 = 20.0;

/// Renders both hemispheres side by side; every projective point is plotted
/// through both of its lifts, so each point appears exactly once per chart
/// pair.
pub fn render_svg(inputs: &[RpPoint], outputs: &[RpPoint]) -> String {
    let width = 4.0 * (DISC_R + MARGIN);
    let height = 2.0 * (DISC_R + MARGIN) + 30.0;
    let c1 = (MARGIN + DISC_R, MARGIN + DISC_R);
    let c2 = (3.0 * MARGIN + 3.0 * DISC_R, MARGIN + DISC_R);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (c, label) in [(c1, "upper hemisphere (z >= 0)"), (c2, "lower hemisphere (z < 0)")] {
        s.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"{DISC_R:.1}\" fill=\"none\" stroke=\"#888\"/>\n",
            c.0, c.1
        ));
        s.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"12\" \
             font-family=\"sans-serif\" fill=\"#444\">{label}</text>\n",
            c.0,
            c.1 + DISC_R + 24.0
        ));
    }
    let mut plot = |p: &RpPoint, color: &str, r: f64| {
        for v in [p.v, [-p.v[0], -p.v[1], -p.v[2]]] {
            let (cx, cy) = if v[2] >= 0.0 { c1 } else { c2 };
            let x = cx + DISC_R * v[0];
            let y = cy - DISC_R * v[1];
            s.push_str(&format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r}\" fill=\"{color}\"/>\n"
            ));
        }
    };
    for p in outputs {
        plot(p, "#2060c0", 1.6);
    }
    for p in inputs {
        plot(p, "#c03020", 3.5);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::seeded_config;

    #[test]
    fn renders_wellformed_svg() {
        let pts = seeded_config(3, 0);
        let svg = render_svg(&pts, &pts);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        // each input is drawn twice (both lifts) in each role
        assert_eq!(svg.matches("#c03020").count(), 6);
    }
}
