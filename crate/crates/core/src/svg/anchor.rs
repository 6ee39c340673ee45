use std::fmt;

use serde::{Deserialize, Serialize};

use super::{bounding_box, NodeId, Selector, SvgDoc};
use crate::error::SvgError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Offset {
    pub left: f64,
    pub top: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Measure {
    Cx,
    Cy,
    RectHeight,
    RectArea,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    Min,
    Max,
}

/// How a marker attaches to the chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum AnchorDirective {
    /// Absolute position in user units.
    Coords { x: f64, y: f64 },
    /// Center of the first element matching `sel`.
    Selector { sel: String },
    /// Top-left of the first element whose text equals `value`, shifted by `offset`.
    FindByValue { value: String, offset: Offset },
    /// Center of the matching element whose `measure` is smallest/largest.
    MarkExtremum { sel: String, measure: Measure, direction: Direction },
}

impl AnchorDirective {
    pub fn strategy(&self) -> AnchorStrategy {
        match self {
            AnchorDirective::Coords { .. } => AnchorStrategy::Coords,
            AnchorDirective::Selector { .. } => AnchorStrategy::Selector,
            AnchorDirective::FindByValue { .. } => AnchorStrategy::FindByValue,
            AnchorDirective::MarkExtremum { .. } => AnchorStrategy::MarkExtremum,
        }
    }

    /// Checks the directive can be resolved at all: finite numbers, parseable selectors, non-empty search text.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            AnchorDirective::Coords { x, y } if !(x.is_finite() && y.is_finite()) => Err("non-finite coordinates".into()),
            AnchorDirective::Coords { .. } => Ok(()),
            AnchorDirective::Selector { sel } | AnchorDirective::MarkExtremum { sel, .. } => {
                Selector::parse(sel).map(|_| ()).map_err(|e| e.to_string())
            }
            AnchorDirective::FindByValue { value, offset } => {
                if value.trim().is_empty() {
                    Err("empty search value".into())
                } else if !(offset.left.is_finite() && offset.top.is_finite()) {
                    Err("non-finite offset".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AnchorStrategy {
    Coords,
    Selector,
    FindByValue,
    MarkExtremum,
}

/// Concrete marker position, clamped into the document's canvas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolvedAnchor {
    pub x: f64,
    pub y: f64,
    pub strategy: AnchorStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unresolved {
    NoMatch,
    UnsupportedTransform(NodeId),
    UnmeasurableElement(NodeId),
    NonFinite,
}

impl fmt::Display for Unresolved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unresolved::NoMatch => f.write_str("no matching element"),
            Unresolved::UnsupportedTransform(n) => write!(f, "element #{} uses an unsupported transform", n.0),
            Unresolved::UnmeasurableElement(n) => write!(f, "element #{} has no measurable geometry", n.0),
            Unresolved::NonFinite => f.write_str("non-finite coordinates"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnchorResolution {
    Resolved(ResolvedAnchor),
    Unresolved(Unresolved),
}

impl AnchorResolution {
    pub fn resolved(&self) -> Option<ResolvedAnchor> {
        match self {
            AnchorResolution::Resolved(r) => Some(*r),
            AnchorResolution::Unresolved(_) => None,
        }
    }
}

/// First element, in document order, whose trimmed text equals `value`.
pub fn find_by_text(doc: &SvgDoc, value: &str) -> Option<NodeId> {
    if value.is_empty() {
        return None;
    }
    doc.node_ids().find(|id| doc.node(*id).text_content.as_deref() == Some(value))
}

fn measure_of(doc: &SvgDoc, id: NodeId, measure: Measure) -> Option<f64> {
    if !doc.node(id).transform_supported {
        return None;
    }
    let r = bounding_box(doc, id).ok()?;
    Some(match measure {
        Measure::Cx => r.center().0,
        Measure::Cy => r.center().1,
        Measure::RectHeight => r.h,
        Measure::RectArea => r.area(),
    })
}

/// Among elements matching `sel`, the one with the extreme `measure`; ties keep the first in document order.
pub fn select_extremum(doc: &SvgDoc, sel: &str, measure: Measure, direction: Direction) -> Result<Option<NodeId>, SvgError> {
    let selector = Selector::parse(sel)?;
    let mut best: Option<(NodeId, f64)> = None;
    for id in selector.select(doc) {
        let Some(m) = measure_of(doc, id, measure) else {
            continue;
        };
        let better = match (best, direction) {
            (None, _) => true,
            (Some((_, b)), Direction::Min) => m < b,
            (Some((_, b)), Direction::Max) => m > b,
        };
        if better {
            best = Some((id, m));
        }
    }
    Ok(best.map(|(id, _)| id))
}

fn clamp(doc: &SvgDoc, x: f64, y: f64, strategy: AnchorStrategy) -> AnchorResolution {
    if !(x.is_finite() && y.is_finite()) {
        return AnchorResolution::Unresolved(Unresolved::NonFinite);
    }
    AnchorResolution::Resolved(ResolvedAnchor { x: x.clamp(0.0, doc.width()), y: y.clamp(0.0, doc.height()), strategy })
}

/// Resolves a directive against a parsed document. Lookup misses are reported
/// as [`AnchorResolution::Unresolved`]; only a malformed selector is an error.
pub fn resolve_anchor(doc: &SvgDoc, directive: &AnchorDirective) -> Result<AnchorResolution, SvgError> {
    let strategy = directive.strategy();
    let node = match directive {
        AnchorDirective::Coords { x, y } => return Ok(clamp(doc, *x, *y, strategy)),
        AnchorDirective::Selector { sel } => Selector::parse(sel)?.select(doc).into_iter().next(),
        AnchorDirective::FindByValue { value, .. } => find_by_text(doc, value),
        AnchorDirective::MarkExtremum { sel, measure, direction } => select_extremum(doc, sel, *measure, *direction)?,
    };
    let Some(node) = node else {
        return Ok(AnchorResolution::Unresolved(Unresolved::NoMatch));
    };
    if !doc.node(node).transform_supported {
        return Ok(AnchorResolution::Unresolved(Unresolved::UnsupportedTransform(node)));
    }
    let Ok(bbox) = bounding_box(doc, node) else {
        return Ok(AnchorResolution::Unresolved(Unresolved::UnmeasurableElement(node)));
    };
    let (x, y) = match directive {
        AnchorDirective::FindByValue { offset, .. } => (bbox.x + offset.left, bbox.y + offset.top),
        _ => bbox.center(),
    };
    Ok(clamp(doc, x, y, strategy))
}
