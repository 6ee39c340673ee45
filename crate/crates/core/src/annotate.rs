//! Writes onboarding markers into an SVG and renders a static HTML preview.

use crate::bundle::{serialize_bundle, OnboardingBundle};
use crate::error::SvgError;
use crate::svg::{parse_svg, resolve_anchor, AnchorResolution, ResolvedAnchor};

pub const OVERLAY_ID: &str = "visahoi-overlay";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkerStyle {
    pub radius: f64,
    pub fill_opacity: f64,
    pub font_size: f64,
}

impl Default for MarkerStyle {
    fn default() -> Self {
        MarkerStyle { radius: 12.0, fill_opacity: 0.85, font_size: 12.0 }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        let s = format!("{x:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Removes every element with id [`OVERLAY_ID`], returning the remaining text.
fn strip_overlay(text: &str) -> Result<String, SvgError> {
    let mut text = text.to_string();
    loop {
        let doc = parse_svg(&text)?;
        let Some(id) = doc.element_by_id(OVERLAY_ID) else {
            return Ok(text);
        };
        text.replace_range(doc.node(id).span.clone(), "");
    }
}

fn overlay(bundle: &OnboardingBundle, anchors: &[(usize, ResolvedAnchor)], style: &MarkerStyle, prefix: &str) -> String {
    let mut out = format!(r#"<{prefix}g id="{OVERLAY_ID}" pointer-events="none">"#);
    for (i, a) in anchors {
        let m = &bundle.messages[*i];
        let color = bundle.stage(&m.stage_id).map_or_else(|| "#000000".to_string(), |s| s.color.to_string());
        let (x, y) = (fmt_num(a.x), fmt_num(a.y));
        out.push_str(&format!(
            r#"<{prefix}g id="{}" class="visahoi-marker" data-stage="{}"><{prefix}circle cx="{x}" cy="{y}" r="{}" fill="{color}" fill-opacity="{}"/>"#,
            escape(&m.marker_id),
            escape(&m.stage_id),
            fmt_num(style.radius),
            fmt_num(style.fill_opacity),
        ));
        if let (true, Some(n)) = (bundle.marker_numbers, m.marker_number) {
            out.push_str(&format!(
                r##"<{prefix}text x="{x}" y="{y}" text-anchor="middle" dominant-baseline="central" fill="#ffffff" font-size="{}">{n}</{prefix}text>"##,
                fmt_num(style.font_size)
            ));
        }
        out.push_str(&format!("</{prefix}g>"));
    }
    out.push_str(&format!("</{prefix}g>"));
    out
}

/// Inserts the marker overlay as the last child of the root element.
///
/// Any previous overlay is removed first, so annotating twice gives the same
/// bytes as annotating once. Messages carrying a resolved anchor use it;
/// others are resolved against the document, and misses become warnings.
pub fn annotate_svg(svg: &str, bundle: &OnboardingBundle) -> Result<(String, Vec<String>), SvgError> {
    annotate_svg_with(svg, bundle, &MarkerStyle::default())
}

pub fn annotate_svg_with(svg: &str, bundle: &OnboardingBundle, style: &MarkerStyle) -> Result<(String, Vec<String>), SvgError> {
    let mut text = strip_overlay(svg)?;
    let doc = parse_svg(&text)?;
    let mut warnings = Vec::new();
    let mut anchors = Vec::new();
    for (i, m) in bundle.messages.iter().enumerate() {
        let resolved = match m.resolved_anchor {
            Some(a) => Some(a),
            None => match resolve_anchor(&doc, &m.anchor) {
                Ok(AnchorResolution::Resolved(a)) => Some(a),
                Ok(AnchorResolution::Unresolved(why)) => {
                    warnings.push(format!("message `{}` not placed: {why}", m.id));
                    None
                }
                Err(e) => {
                    warnings.push(format!("message `{}` not placed: {e}", m.id));
                    None
                }
            },
        };
        if let Some(a) = resolved {
            anchors.push((i, a));
        }
    }

    let root = doc.node(doc.root()).span.clone();
    let open = &text[root.start..];
    let qname_len = open[1..].find(|c: char| c.is_whitespace() || c == '>' || c == '/').unwrap_or(open.len() - 1);
    let qname = open[1..1 + qname_len].to_string();
    let prefix = qname.strip_suffix("svg").unwrap_or_default().to_string();
    let group = overlay(bundle, &anchors, style, &prefix);

    let body = &text[root.clone()];
    if body.ends_with("/>") && !body.contains("</") {
        text.replace_range(root.end - 2..root.end, &format!(">{group}</{qname}>"));
    } else {
        let close = root.start + body.rfind("</").expect("non-empty element has a closing tag");
        text.insert_str(close, &group);
    }
    Ok((text, warnings))
}

/// Self-contained HTML page with the SVG, stage navigation and message list.
pub fn emit_preview_html(svg: &str, bundle: &OnboardingBundle) -> String {
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    out.push_str(&format!("<title>Onboarding: {}</title>\n", escape(&bundle.context_key)));
    out.push_str(
        "<style>\nbody{font-family:sans-serif;margin:1.5rem}\n.stage{border-left:6px solid;padding-left:.75rem;margin:1rem 0}\n.marker{display:inline-block;width:1.4em;height:1.4em;border-radius:50%;color:#fff;text-align:center;margin-right:.4em}\n</style>\n",
    );
    out.push_str("</head>\n<body>\n<div class=\"chart\">\n");
    out.push_str(svg.trim_end());
    out.push_str("\n</div>\n");
    if bundle.messages.is_empty() {
        out.push_str("<p class=\"empty\">There is no onboarding available for this chart.</p>\n");
    } else {
        let nav_class = match bundle.nav.alignment {
            crate::onboarding::NavAlignment::Vertical => "vertical",
            crate::onboarding::NavAlignment::Horizontal => "horizontal",
        };
        out.push_str(&format!("<nav class=\"onboarding {nav_class}\">\n"));
        for stage in &bundle.stages {
            let messages: Vec<_> = bundle.messages.iter().filter(|m| m.stage_id == stage.id).collect();
            if messages.is_empty() {
                continue;
            }
            let color = stage.color.to_string();
            out.push_str(&format!(
                "<section class=\"stage\" id=\"stage-{}\" style=\"border-color:{color}\">\n<h2>{}</h2>\n<ol>\n",
                escape(&stage.id),
                escape(&stage.title)
            ));
            for m in messages {
                let marker = match (bundle.marker_numbers, m.marker_number) {
                    (true, Some(n)) => format!("<span class=\"marker\" style=\"background:{color}\">{n}</span>"),
                    _ => String::new(),
                };
                out.push_str(&format!(
                    "<li id=\"{}\"><strong>{}</strong> {marker}{}</li>\n",
                    escape(&m.id),
                    escape(&m.title),
                    m.text
                ));
            }
            out.push_str("</ol>\n</section>\n");
        }
        out.push_str("</nav>\n");
    }
    let data = serialize_bundle(bundle).replace("</", "<\\/");
    out.push_str("<script type=\"application/json\" id=\"visahoi-bundle\">\n");
    out.push_str(&data);
    out.push_str("</script>\n</body>\n</html>\n");
    out
}
