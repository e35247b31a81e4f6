//! SVG 1.1 drawings of point configurations.
//!
//! Output is byte-for-byte deterministic: points are emitted in sorted order
//! and every coordinate is printed with three decimals.

use std::fmt::Write as _;

use hexdist_core::hexagon::{hexagon_corners, hexagon_points, locate_within, HexagonSpec};
use hexdist_core::lattice::{LatticePoint, PointConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    /// Pixels per unit length.
    pub scale: f64,
    pub point_radius: f64,
    /// Draw the enclosing hexagon and its removed points, when known.
    pub show_removed_hull: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 40.0,
            point_radius: 6.0,
            show_removed_hull: true,
        }
    }
}

/// The hexagon a trimmed construction was cut from, in the construction's frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub corners: [LatticePoint; 6],
    pub points: PointConfig,
}

impl Hull {
    /// The copy of `spec` that contains `c`, if `c` fits in one.
    pub fn around(c: &PointConfig, spec: HexagonSpec) -> Option<Hull> {
        let container = hexagon_points(spec).ok()?;
        let (g, shift) = locate_within(c, &container)?;
        let corners = hexagon_corners(spec).ok()?.map(|p| g.apply(p) + shift);
        Some(Hull {
            corners,
            points: container.transformed(g).translated(shift),
        })
    }
}

/// Screen position: the lattice point's Cartesian coordinates with y flipped.
fn screen(p: LatticePoint, scale: f64) -> (f64, f64) {
    let (x, y) = p.to_cartesian();
    (x * scale, -y * scale)
}

pub fn render_svg(c: &PointConfig, opts: &RenderOptions) -> String {
    render_svg_with_hull(c, None, opts)
}

pub fn render_svg_with_hull(c: &PointConfig, hull: Option<&Hull>, opts: &RenderOptions) -> String {
    assert!(
        opts.scale > 0.0 && opts.point_radius > 0.0,
        "scale and radius must be positive"
    );
    let hull = hull.filter(|_| opts.show_removed_hull);
    let mut extent: Vec<(f64, f64)> = c.points().iter().map(|&p| screen(p, opts.scale)).collect();
    if let Some(h) = hull {
        extent.extend(h.points.points().iter().map(|&p| screen(p, opts.scale)));
    }
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = extent.first() {
        (min_x, max_x, min_y, max_y) = (x, x, y, y);
    }
    for &(x, y) in &extent {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let margin = opts.point_radius + opts.scale * 0.5;
    let width = max_x - min_x + 2.0 * margin;
    let height = max_y - min_y + 2.0 * margin;
    let place = |p: LatticePoint| {
        let (x, y) = screen(p, opts.scale);
        (x - min_x + margin, y - min_y + margin)
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{width:.3}\" height=\"{height:.3}\" fill=\"white\"/>"
    );
    if let Some(h) = hull {
        let corners: Vec<String> = h
            .corners
            .iter()
            .map(|&p| {
                let (x, y) = place(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>",
            corners.join(" ")
        );
        for &p in h.points.points() {
            if !c.contains(p) {
                let (x, y) = place(p);
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>",
                    opts.point_radius
                );
            }
        }
    }
    for &p in c.points() {
        let (x, y) = place(p);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{:.3}\" fill=\"black\"/>",
            opts.point_radius
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circles(svg: &str) -> Vec<(f64, f64)> {
        svg.lines()
            .filter(|l| l.contains("<circle") && l.contains("fill=\"black\""))
            .map(|l| {
                let grab = |key: &str| {
                    let start = l.find(key).unwrap() + key.len();
                    let end = start + l[start..].find('"').unwrap();
                    l[start..end].parse::<f64>().unwrap()
                };
                (grab("cx=\""), grab("cy=\""))
            })
            .collect()
    }

    #[test]
    fn single_point_is_centred() {
        let c = PointConfig::new([LatticePoint::ORIGIN]);
        let svg = render_svg(&c, &RenderOptions::default());
        let pts = circles(&svg);
        assert_eq!(pts.len(), 1);
        let margin = 6.0 + 20.0;
        assert_eq!(pts[0], (margin, margin));
        assert!(svg.contains("width=\"52.000\" height=\"52.000\""));
    }

    #[test]
    fn hexagon_circles_follow_lattice() {
        let opts = RenderOptions {
            scale: 10.0,
            point_radius: 1.0,
            show_removed_hull: false,
        };
        let c = hexagon_points(HexagonSpec::regular(2)).unwrap();
        let svg = render_svg(&c, &opts);
        let pts = circles(&svg);
        assert_eq!(pts.len(), 19);
        // the centre of the hexagon is drawn at the canvas centre
        let (w, h) = (40.0 + 2.0 * 6.0, 2.0 * 10.0 * 3f64.sqrt() + 2.0 * 6.0);
        assert!(pts
            .iter()
            .any(|&(x, y)| (x - w / 2.0).abs() < 1e-3 && (y - h / 2.0).abs() < 1e-3));
        // every pair of circles sits at a lattice distance times the scale
        for (i, p) in c.points().iter().enumerate() {
            for (j, q) in c.points().iter().enumerate().skip(i + 1) {
                let d2 = hexdist_core::lattice::delta_norm(*p, *q).get() as f64;
                let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
                assert!(((dx * dx + dy * dy).sqrt() - d2.sqrt() * 10.0).abs() < 0.01);
            }
        }
    }

    #[test]
    fn y_axis_points_up() {
        let c = PointConfig::new([LatticePoint::new(0, 0), LatticePoint::new(0, 1)]);
        let pts = circles(&render_svg(&c, &RenderOptions::default()));
        // (0, 1) is above (0, 0), so its screen y is smaller
        assert!(pts[1].1 < pts[0].1);
    }

    #[test]
    fn output_is_deterministic() {
        let c = hexagon_points(HexagonSpec::equiangular(2)).unwrap();
        let opts = RenderOptions::default();
        assert_eq!(render_svg(&c, &opts), render_svg(&c.clone(), &opts));
    }

    #[test]
    fn hull_draws_removed_points() {
        let spec = HexagonSpec::regular(2);
        let full = hexagon_points(spec).unwrap();
        let trimmed = full.without(LatticePoint::new(2, 0));
        let hull = Hull::around(&trimmed, spec).unwrap();
        assert_eq!(hull.points, full);
        let svg = render_svg_with_hull(&trimmed, Some(&hull), &RenderOptions::default());
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches("fill=\"none\" stroke").count(), 2);
        assert_eq!(circles(&svg).len(), 18);
    }

    #[test]
    fn hull_follows_moved_construction() {
        let spec = HexagonSpec::equiangular(2);
        let full = hexagon_points(spec).unwrap();
        let moved = full
            .transformed(hexdist_core::lattice::Symmetry {
                rotation: 1,
                reflect: true,
            })
            .translated(LatticePoint::new(4, -7));
        let hull = Hull::around(&moved, spec).unwrap();
        assert_eq!(hull.points, moved);
        for corner in hull.corners {
            assert!(moved.contains(corner));
        }
        assert!(Hull::around(&hexagon_points(HexagonSpec::regular(3)).unwrap(), spec).is_none());
    }
}
