//! Static SVG of the half-circle embedding: vertex dots on a baseline,
//! one upper half-circle per edge, and a small white circle at every
//! crossing point. Output is deterministic byte for byte.

use kasteleyn::embedding::{stembridge_profile, EmbeddingError, VertexOrder};
use kasteleyn::graph::Graph;

/// Horizontal distance between consecutive vertex positions, in pixels.
const UNIT: f64 = 40.0;
const MARGIN: f64 = 40.0;
const ARC_STROKE: &str = "#888";
const DOT_RADIUS: f64 = 4.0;
const MARKER_RADIUS: f64 = 3.0;

/// Renders `g` laid out along `ord`. Fails on multigraphs and on orders of
/// the wrong length, exactly as the half-circle profile itself does.
pub fn render_svg(g: &Graph, ord: &VertexOrder) -> Result<String, EmbeddingError> {
    let profile = stembridge_profile(g, ord)?;
    let n = g.vertex_count();
    let max_radius = UNIT * (n.saturating_sub(1)) as f64 / 2.0;
    let width = 2.0 * MARGIN + UNIT * (n.saturating_sub(1)) as f64;
    let height = 2.0 * MARGIN + max_radius;
    let baseline = MARGIN + max_radius;
    let x_of = |position: u32| MARGIN + UNIT * (position - 1) as f64;

    // center and radius of an edge's half-circle, by endpoint positions
    let geometry = |edge_id| {
        let e = g.edge(edge_id).expect("profile edges exist");
        let a = ord.position_of(e.u).min(ord.position_of(e.v));
        let b = ord.position_of(e.u).max(ord.position_of(e.v));
        let (xa, xb) = (x_of(a), x_of(b));
        ((xa + xb) / 2.0, (xb - xa) / 2.0)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" \
         height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{width:.2}\" height=\"{height:.2}\" fill=\"#fff\"/>\n"
    ));

    for e in g.edges() {
        let (c, r) = geometry(e.id);
        // sweep flag 1 traces the arc through the upper half-plane
        svg.push_str(&format!(
            "  <path d=\"M {:.2} {baseline:.2} A {r:.2} {r:.2} 0 0 1 {:.2} {baseline:.2}\" \
             fill=\"none\" stroke=\"{ARC_STROKE}\" stroke-width=\"1.5\"/>\n",
            c - r,
            c + r,
        ));
    }

    for ((e1, e2), _) in profile.cross_entries() {
        let (c1, r1) = geometry(e1);
        let (c2, r2) = geometry(e2);
        // interleaving circles have distinct centers; order them for the
        // intersection formula
        let ((c1, r1), (c2, r2)) = if c1 < c2 {
            ((c1, r1), (c2, r2))
        } else {
            ((c2, r2), (c1, r1))
        };
        let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
        let y = baseline - (r1 * r1 - (x - c1) * (x - c1)).max(0.0).sqrt();
        svg.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{MARKER_RADIUS:.2}\" \
             fill=\"#fff\" stroke=\"#000\" stroke-width=\"1\"/>\n"
        ));
    }

    for position in 1..=n {
        svg.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{baseline:.2}\" r=\"{DOT_RADIUS:.2}\" fill=\"#000\"/>\n",
            x_of(position)
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kasteleyn::graph::Edge;

    fn marker_count(svg: &str) -> usize {
        svg.matches("fill=\"#fff\" stroke=\"#000\"").count()
    }

    #[test]
    fn single_edge_has_one_arc_and_no_markers() {
        let g = Graph::path(2);
        let svg = render_svg(&g, &VertexOrder::identity(2)).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(marker_count(&svg), 0);
    }

    #[test]
    fn interleaving_pair_yields_one_marker() {
        let g = Graph::new(4, vec![Edge::new(1, 1, 3), Edge::new(2, 2, 4)]).unwrap();
        let svg = render_svg(&g, &VertexOrder::identity(4)).unwrap();
        assert_eq!(marker_count(&svg), 1);
    }

    #[test]
    fn k4_has_exactly_one_marker_at_the_circle_intersection() {
        let g = Graph::complete(4);
        let svg = render_svg(&g, &VertexOrder::identity(4)).unwrap();
        assert_eq!(svg.matches("<path").count(), 6);
        assert_eq!(marker_count(&svg), 1);
        // circles centered at 80 and 120 with radius 40 meet at
        // x = 100, y = baseline − √1200
        assert!(svg.contains("cx=\"100.00\" cy=\"65.36\""), "{svg}");
    }

    #[test]
    fn output_is_deterministic() {
        let g = Graph::complete_bipartite_alternating(3, 3);
        let ord = VertexOrder::identity(6);
        assert_eq!(render_svg(&g, &ord).unwrap(), render_svg(&g, &ord).unwrap());
    }

    #[test]
    fn multigraph_is_rejected() {
        let g = Graph::new(2, vec![Edge::new(1, 1, 2), Edge::new(2, 1, 2)]).unwrap();
        assert_eq!(
            render_svg(&g, &VertexOrder::identity(2)).unwrap_err(),
            EmbeddingError::NotSimpleGraph
        );
    }
}
