use std::collections::HashMap;

use super::{sort_messages, MessageTemplate, OnboardingMessage, OnboardingStage, OnboardingState, TooltipPlacement};
use crate::error::OnboardingError;
use crate::features::{ExtractionResult, FeatureKey};
use crate::svg::AnchorDirective;

pub fn message_id(context_key: &str, index: usize) -> String {
    format!("visahoi-message-{context_key}-{index}")
}

pub fn marker_id(context_key: &str, index: usize) -> String {
    format!("visahoi-marker-{context_key}-{index}")
}

/// Trailing numeric index of a message or marker id.
pub(crate) fn id_index(id: &str) -> Option<usize> {
    id.rsplit('-').next()?.parse().ok()
}

fn is_placeholder_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '.' || c == '_'
}

/// Scans `{name}` placeholders; `f` maps each name to its replacement (or `None` to keep it verbatim).
fn scan(text: &str, mut f: impl FnMut(&str) -> Option<String>) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let name_len = after.find(|c: char| !is_placeholder_char(c)).unwrap_or(after.len());
        let name = &after[..name_len];
        let closed = after[name_len..].starts_with('}');
        if closed && name.starts_with(|c: char| c.is_ascii_alphabetic()) {
            match f(name) {
                Some(rep) => out.push_str(&rep),
                None => {
                    out.push('{');
                    out.push_str(name);
                    out.push('}');
                }
            }
            rest = &after[name_len + 1..];
        } else {
            out.push('{');
            rest = after;
        }
    }
    out.push_str(rest);
    out
}

/// Placeholder names in `text`, in order of appearance.
pub fn placeholders(text: &str) -> Vec<String> {
    let mut names = Vec::new();
    scan(text, |n| {
        names.push(n.to_string());
        None
    });
    names
}

fn fill(text: &str, extraction: &ExtractionResult) -> String {
    scan(text, |name| {
        let key: FeatureKey = name.parse().ok()?;
        extraction.get(&key).map(|f| f.value.clone())
    })
}

fn number_within_stages(messages: &mut [OnboardingMessage]) {
    let mut counters: HashMap<String, u32> = HashMap::new();
    for m in messages {
        let n = counters.entry(m.stage_id.clone()).or_insert(0);
        *n += 1;
        m.marker_number = Some(*n);
    }
}

/// Instantiates every template whose required features were extracted.
///
/// Message indices are catalog positions, so filtered templates leave gaps
/// instead of renumbering the rest. Output is sorted by (stage order, message order).
pub fn generate_messages(
    extraction: &ExtractionResult,
    templates: &[MessageTemplate],
    stages: &[OnboardingStage],
    context_key: &str,
) -> Result<Vec<OnboardingMessage>, OnboardingError> {
    if let Some(t) = templates.iter().find(|t| !stages.iter().any(|s| s.id == t.stage_id)) {
        return Err(OnboardingError::UnknownStage(t.stage_id.clone()));
    }
    let mut messages = Vec::new();
    for (index, t) in templates.iter().enumerate() {
        if !t.requires.iter().all(|k| extraction.contains(k)) {
            continue;
        }
        let Some(anchor) = extraction.get(&t.anchor_feature).map(|f| f.anchor.clone()) else {
            continue;
        };
        if anchor.validate().is_err() {
            continue;
        }
        messages.push(OnboardingMessage {
            id: message_id(context_key, index),
            marker_id: marker_id(context_key, index),
            text: fill(&t.text_template, extraction),
            title: fill(&t.title_template, extraction),
            stage_id: t.stage_id.clone(),
            order: t.order,
            tooltip_placement: t.tooltip_placement,
            anchor,
            resolved_anchor: None,
            marker_number: None,
        });
    }
    sort_messages(&mut messages, stages);
    number_within_stages(&mut messages);
    Ok(messages)
}

/// Adds a hand-written message (taken verbatim) to `state` under the next free index.
pub fn create_basic_message(
    state: &mut OnboardingState,
    text: &str,
    title: &str,
    stage_id: &str,
    anchor: AnchorDirective,
    order: i64,
) -> Result<OnboardingMessage, OnboardingError> {
    if text.trim().is_empty() {
        return Err(OnboardingError::EmptyText);
    }
    if state.stage(stage_id).is_none() {
        return Err(OnboardingError::UnknownStage(stage_id.to_string()));
    }
    let used = state.messages.iter().filter_map(|m| id_index(&m.id)).max().map_or(0, |i| i + 1);
    let index = state.next_index.max(used);
    state.next_index = index + 1;
    let number = state.messages.iter().filter(|m| m.stage_id == stage_id).filter_map(|m| m.marker_number).max().unwrap_or(0) + 1;
    let message = OnboardingMessage {
        id: message_id(&state.context_key, index),
        marker_id: marker_id(&state.context_key, index),
        text: text.to_string(),
        title: title.to_string(),
        stage_id: stage_id.to_string(),
        order,
        tooltip_placement: TooltipPlacement::Bottom,
        anchor,
        resolved_anchor: None,
        marker_number: Some(number),
    };
    state.messages.push(message.clone());
    state.sort();
    Ok(message)
}

/// Message text with tags removed and basic entities decoded.
pub fn plain_text(html: &str) -> String {
    let mut out = String::with_capacity(html.len());
    let mut in_tag = false;
    for c in html.chars() {
        match c {
            '<' => in_tag = true,
            '>' if in_tag => in_tag = false,
            c if !in_tag => out.push(c),
            _ => {}
        }
    }
    out.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&#39;", "'")
        .replace("&nbsp;", " ")
        .replace("&amp;", "&")
}
