//! Headless SVG document model: element tree, selector queries, bounding boxes
//! and anchor resolution against a rendered chart.

mod anchor;
mod geometry;
mod selector;

use std::collections::BTreeMap;
use std::ops::Range;

pub use anchor::{
    find_by_text, resolve_anchor, select_extremum, AnchorDirective, AnchorResolution, AnchorStrategy, Direction, Measure,
    Offset, ResolvedAnchor, Unresolved,
};
pub use geometry::{bounding_box, Rect};
pub use selector::{query_selector, Selector};

use crate::error::SvgError;

pub const DEFAULT_FONT_SIZE: f64 = 16.0;

/// Index of an element in document (pre-order) order; the root is `NodeId(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextAnchor {
    Start,
    Middle,
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgNode {
    pub tag: String,
    pub id: Option<String>,
    pub classes: Vec<String>,
    pub attributes: BTreeMap<String, String>,
    /// Trimmed text; for text-bearing elements this includes descendant text.
    pub text_content: Option<String>,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    /// Sum of `translate()` offsets of ancestors and self.
    pub translate: (f64, f64),
    /// False when this element or an ancestor uses rotate/scale/matrix/skew.
    pub transform_supported: bool,
    pub font_size: f64,
    pub text_anchor: TextAnchor,
    /// Byte range of the element in the source text.
    pub span: Range<usize>,
}

impl SvgNode {
    pub fn has_class(&self, class: &str) -> bool {
        self.classes.iter().any(|c| c == class)
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attributes.get(name).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgDoc {
    nodes: Vec<SvgNode>,
    width: f64,
    height: f64,
}

/// Tree shape used to compare documents while ignoring byte offsets.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureNode {
    pub tag: String,
    pub attributes: BTreeMap<String, String>,
    pub text_content: Option<String>,
    pub children: Vec<StructureNode>,
}

const TEXT_TAGS: [&str; 5] = ["text", "tspan", "textPath", "title", "desc"];

impl SvgDoc {
    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node(&self, id: NodeId) -> &SvgNode {
        &self.nodes[id.0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// All element ids in document order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn ancestors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.node(id).parent, |p| self.node(*p).parent)
    }

    pub fn element_by_id(&self, id: &str) -> Option<NodeId> {
        self.node_ids().find(|n| self.node(*n).id.as_deref() == Some(id))
    }

    /// Structural view of the tree, skipping any subtree whose root has element id `skip_id`.
    pub fn structure(&self, skip_id: Option<&str>) -> StructureNode {
        self.structure_of(self.root(), skip_id)
    }

    fn structure_of(&self, id: NodeId, skip_id: Option<&str>) -> StructureNode {
        let n = self.node(id);
        StructureNode {
            tag: n.tag.clone(),
            attributes: n.attributes.clone(),
            text_content: n.text_content.clone(),
            children: n
                .children
                .iter()
                .filter(|c| skip_id.is_none() || self.node(**c).id.as_deref() != skip_id)
                .map(|c| self.structure_of(*c, skip_id))
                .collect(),
        }
    }
}

/// Parses SVG text into an element tree with folded translations.
pub fn parse_svg(text: &str) -> Result<SvgDoc, SvgError> {
    let opts = roxmltree::ParsingOptions { allow_dtd: true, ..Default::default() };
    let xml = roxmltree::Document::parse_with_options(text, opts).map_err(|e| SvgError::MalformedSvg(e.to_string()))?;
    let root = xml.root_element();
    if root.tag_name().name() != "svg" {
        return Err(SvgError::MalformedSvg(format!("root element is <{}>, expected <svg>", root.tag_name().name())));
    }
    let (width, height) = dimensions(root)?;
    let mut doc = SvgDoc { nodes: Vec::new(), width, height };
    let inherited = Inherited { translate: (0.0, 0.0), supported: true, font_size: DEFAULT_FONT_SIZE, anchor: TextAnchor::Start };
    build(&mut doc, root, None, inherited);
    Ok(doc)
}

#[derive(Clone, Copy)]
struct Inherited {
    translate: (f64, f64),
    supported: bool,
    font_size: f64,
    anchor: TextAnchor,
}

fn build(doc: &mut SvgDoc, el: roxmltree::Node, parent: Option<NodeId>, inherited: Inherited) -> NodeId {
    let attributes: BTreeMap<String, String> =
        el.attributes().map(|a| (a.name().to_string(), a.value().to_string())).collect();
    let tag = el.tag_name().name().to_string();

    let (dx, dy, supported) = attributes.get("transform").map_or((0.0, 0.0, true), |t| parse_transform(t));
    let style = attributes.get("style").map(String::as_str).unwrap_or_default();
    let font_size = attributes
        .get("font-size")
        .map(String::as_str)
        .or_else(|| style_value(style, "font-size"))
        .and_then(parse_length)
        .filter(|v| *v > 0.0)
        .unwrap_or(inherited.font_size);
    let anchor = match attributes.get("text-anchor").map(String::as_str).or_else(|| style_value(style, "text-anchor")) {
        Some("middle") => TextAnchor::Middle,
        Some("end") => TextAnchor::End,
        Some("start") => TextAnchor::Start,
        _ => inherited.anchor,
    };
    let own = Inherited {
        translate: (inherited.translate.0 + dx, inherited.translate.1 + dy),
        supported: inherited.supported && supported,
        font_size,
        anchor,
    };

    let raw_text: String = if TEXT_TAGS.contains(&tag.as_str()) {
        el.descendants().filter(|n| n.is_text()).filter_map(|n| n.text()).collect()
    } else {
        el.children().filter(|n| n.is_text()).filter_map(|n| n.text()).collect()
    };
    let trimmed = raw_text.trim();

    let id = NodeId(doc.nodes.len());
    doc.nodes.push(SvgNode {
        tag,
        id: attributes.get("id").cloned(),
        classes: attributes.get("class").map(|c| c.split_whitespace().map(str::to_string).collect()).unwrap_or_default(),
        attributes,
        text_content: (!trimmed.is_empty()).then(|| trimmed.to_string()),
        children: Vec::new(),
        parent,
        translate: own.translate,
        transform_supported: own.supported,
        font_size: own.font_size,
        text_anchor: own.anchor,
        span: el.range(),
    });
    for child in el.children().filter(|c| c.is_element()) {
        let child_id = build(doc, child, Some(id), own);
        doc.nodes[id.0].children.push(child_id);
    }
    id
}

fn dimensions(root: roxmltree::Node) -> Result<(f64, f64), SvgError> {
    let attr = |name: &str| root.attribute(name).filter(|v| !v.trim_end().ends_with('%')).and_then(parse_length);
    if let (Some(w), Some(h)) = (attr("width"), attr("height")) {
        if w > 0.0 && h > 0.0 {
            return Ok((w, h));
        }
    }
    let view_box: Vec<f64> = root
        .attribute("viewBox")
        .map(|v| v.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).filter_map(|s| s.parse().ok()).collect())
        .unwrap_or_default();
    match view_box.as_slice() {
        [_, _, w, h] if *w > 0.0 && *h > 0.0 => Ok((*w, *h)),
        _ => Err(SvgError::MissingDimensions),
    }
}

/// Parses a length like `12`, `12.5px`; other units are rejected.
pub(crate) fn parse_length(s: &str) -> Option<f64> {
    let t = s.trim();
    let t = t.strip_suffix("px").unwrap_or(t).trim();
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn style_value<'a>(style: &'a str, key: &str) -> Option<&'a str> {
    style.split(';').find_map(|decl| {
        let (k, v) = decl.split_once(':')?;
        (k.trim() == key).then(|| v.trim())
    })
}

/// Folds a transform list into a translation; anything but `translate()` marks it unsupported.
fn parse_transform(t: &str) -> (f64, f64, bool) {
    let (mut dx, mut dy, mut ok) = (0.0, 0.0, true);
    let mut rest = t.trim();
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return (dx, dy, false);
        };
        let Some(close) = rest[open..].find(')').map(|c| c + open) else {
            return (dx, dy, false);
        };
        let name = rest[..open].trim();
        let args: Vec<f64> = rest[open + 1..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>().unwrap_or(f64::NAN))
            .collect();
        match (name, args.as_slice()) {
            ("translate", [x]) if x.is_finite() => dx += x,
            ("translate", [x, y]) if x.is_finite() && y.is_finite() => {
                dx += x;
                dy += y;
            }
            _ => ok = false,
        }
        rest = rest[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    (dx, dy, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_dimensions_and_children() {
        let doc = parse_svg(r#"<svg width="100" height="50"><rect x="1" y="2" width="3" height="4"/></svg>"#).unwrap();
        assert_eq!((doc.width(), doc.height()), (100.0, 50.0));
        assert_eq!(doc.node(doc.root()).children.len(), 1);
        assert_eq!(doc.node(NodeId(1)).tag, "rect");
    }

    #[test]
    fn view_box_fallback() {
        let doc = parse_svg(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 200 100"><g/></svg>"#).unwrap();
        assert_eq!((doc.width(), doc.height()), (200.0, 100.0));
        let pct = parse_svg(r#"<svg width="100%" height="100%" viewBox="0,0,30,40"/>"#).unwrap();
        assert_eq!((pct.width(), pct.height()), (30.0, 40.0));
    }

    #[test]
    fn translate_chain_is_additive() {
        let doc = parse_svg(
            r#"<svg width="10" height="10"><g transform="translate(5,5)"><g transform="translate(2,0)"><rect width="1" height="1"/></g></g></svg>"#,
        )
        .unwrap();
        assert_eq!(doc.node(NodeId(3)).translate, (7.0, 5.0));
        assert!(doc.node(NodeId(3)).transform_supported);
    }

    #[test]
    fn other_transforms_are_flagged() {
        assert_eq!(parse_transform("translate(3)"), (3.0, 0.0, true));
        assert_eq!(parse_transform("translate(1 2) translate(3,4)"), (4.0, 6.0, true));
        assert!(!parse_transform("rotate(-90)").2);
        assert!(!parse_transform("translate(1,2) scale(2)").2);
        assert!(!parse_transform("translate(1,2").2);
        let doc = parse_svg(r#"<svg width="10" height="10"><g transform="rotate(45)"><text>a</text></g></svg>"#).unwrap();
        assert!(!doc.node(NodeId(2)).transform_supported);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_svg("<svg"), Err(SvgError::MalformedSvg(_))));
        assert!(matches!(parse_svg(r#"<html width="1" height="1"/>"#), Err(SvgError::MalformedSvg(_))));
        assert_eq!(parse_svg("<svg><g/></svg>"), Err(SvgError::MissingDimensions));
        assert_eq!(parse_svg(r#"<svg width="0" height="5"/>"#), Err(SvgError::MissingDimensions));
    }

    #[test]
    fn text_content_and_inherited_font() {
        let doc = parse_svg(
            r#"<svg width="10" height="10" font-size="11"><g style="font-size: 20px; text-anchor: end">  <text><tspan>My</tspan> Title </text></g><text>x</text></svg>"#,
        )
        .unwrap();
        let g = doc.node(NodeId(1));
        assert_eq!(g.text_content, None);
        let text = doc.node(NodeId(2));
        assert_eq!(text.text_content.as_deref(), Some("My Title"));
        assert_eq!((text.font_size, text.text_anchor), (20.0, TextAnchor::End));
        assert_eq!(doc.node(NodeId(4)).font_size, 11.0);
    }

    #[test]
    fn structure_skips_by_id() {
        let a = parse_svg(r#"<svg width="1" height="1"><rect/></svg>"#).unwrap();
        let b = parse_svg(r#"<svg width="1" height="1"><rect/><g id="x"><circle/></g></svg>"#).unwrap();
        assert_ne!(a.structure(None), b.structure(None));
        assert_eq!(a.structure(None), b.structure(Some("x")));
    }
}
