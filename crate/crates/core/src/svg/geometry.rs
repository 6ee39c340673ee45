use super::{parse_length, NodeId, SvgDoc, TextAnchor};
use crate::error::SvgError;

/// Axis-aligned box in user units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w: w.max(0.0), h: h.max(0.0) }
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    pub fn union(&self, other: &Rect) -> Rect {
        let x0 = self.x.min(other.x);
        let y0 = self.y.min(other.y);
        let x1 = (self.x + self.w).max(other.x + other.w);
        let y1 = (self.y + self.h).max(other.y + other.h);
        Rect::new(x0, y0, x1 - x0, y1 - y0)
    }

    pub fn contains(&self, other: &Rect) -> bool {
        const EPS: f64 = 1e-9;
        other.x >= self.x - EPS
            && other.y >= self.y - EPS
            && other.x + other.w <= self.x + self.w + EPS
            && other.y + other.h <= self.y + self.h + EPS
    }
}

const CONTAINERS: [&str; 4] = ["g", "svg", "a", "switch"];

/// Heuristic glyph advance, as a fraction of the font size.
pub const TEXT_ADVANCE: f64 = 0.6;
/// Heuristic line box height, as a fraction of the font size.
pub const TEXT_LINE_HEIGHT: f64 = 1.2;

/// Bounding box of an element in root user units (translations applied).
///
/// Containers report the union of their measurable descendants; text uses a
/// fixed-advance metric since no font shaping is available.
pub fn bounding_box(doc: &SvgDoc, id: NodeId) -> Result<Rect, SvgError> {
    let node = doc.node(id);
    let (tx, ty) = node.translate;
    let num = |name: &str| node.attr(name).and_then(parse_length);
    let first_num = |name: &str| {
        node.attr(name).and_then(|v| v.split(|c: char| c.is_whitespace() || c == ',').find(|s| !s.is_empty())).and_then(parse_length)
    };
    let unsupported = || SvgError::UnsupportedElement(node.tag.clone());

    match node.tag.as_str() {
        "rect" => Ok(Rect::new(
            num("x").unwrap_or(0.0) + tx,
            num("y").unwrap_or(0.0) + ty,
            num("width").unwrap_or(0.0),
            num("height").unwrap_or(0.0),
        )),
        "circle" => {
            let r = num("r").unwrap_or(0.0).max(0.0);
            let (cx, cy) = (num("cx").unwrap_or(0.0) + tx, num("cy").unwrap_or(0.0) + ty);
            Ok(Rect::new(cx - r, cy - r, 2.0 * r, 2.0 * r))
        }
        "ellipse" => {
            let (rx, ry) = (num("rx").unwrap_or(0.0).max(0.0), num("ry").unwrap_or(0.0).max(0.0));
            let (cx, cy) = (num("cx").unwrap_or(0.0) + tx, num("cy").unwrap_or(0.0) + ty);
            Ok(Rect::new(cx - rx, cy - ry, 2.0 * rx, 2.0 * ry))
        }
        "text" | "tspan" => {
            let fs = node.font_size;
            let chars = node.text_content.as_deref().map_or(0, |t| t.chars().count());
            let w = TEXT_ADVANCE * fs * chars as f64;
            let x = first_num("x").unwrap_or(0.0) + tx;
            let y = first_num("y").unwrap_or(0.0) + ty;
            let left = match node.text_anchor {
                TextAnchor::Start => x,
                TextAnchor::Middle => x - w / 2.0,
                TextAnchor::End => x - w,
            };
            // y is the baseline; the box spans one em above it plus descent.
            Ok(Rect::new(left, y - fs, w, TEXT_LINE_HEIGHT * fs))
        }
        tag if CONTAINERS.contains(&tag) => node
            .children
            .iter()
            .filter(|c| doc.node(**c).transform_supported || !node.transform_supported)
            .filter_map(|c| bounding_box(doc, *c).ok())
            .reduce(|a, b| a.union(&b))
            .ok_or_else(unsupported),
        _ => match (num("x"), num("y"), num("width"), num("height")) {
            (Some(x), Some(y), Some(w), Some(h)) => Ok(Rect::new(x + tx, y + ty, w, h)),
            _ => Err(unsupported()),
        },
    }
}
