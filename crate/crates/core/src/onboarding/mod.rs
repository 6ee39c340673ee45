//! Onboarding stages, message templates, message generation and customization.

mod context;
mod generate;
mod patch;
mod templates;

use serde::{Deserialize, Serialize};

pub use context::ContextRegistry;
pub use generate::{create_basic_message, generate_messages, message_id, marker_id, plain_text, placeholders};
pub use patch::{apply_customization, CustomizationPatch, PatchIssue, PatchOp, PatchReport};
pub use templates::{default_templates, MessageTemplate, TemplateCatalog};

use crate::color::Rgb;
use crate::svg::{AnchorDirective, ResolvedAnchor};

pub const READING: &str = "reading";
pub const INTERACTING: &str = "interacting";
pub const ANALYZING: &str = "analyzing";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OnboardingStage {
    pub id: String,
    pub title: String,
    pub icon_name: String,
    pub color: Rgb,
    pub order: i64,
}

/// The three built-in stages: reading, interacting and analyzing the chart.
pub fn default_stages() -> Vec<OnboardingStage> {
    let stage = |id: &str, title: &str, icon: &str, color: Rgb, order| OnboardingStage {
        id: id.into(),
        title: title.into(),
        icon_name: icon.into(),
        color,
        order,
    };
    vec![
        stage(READING, "Reading the chart", "book", Rgb::new(0x7b, 0x61, 0xff), 1),
        stage(INTERACTING, "Interacting with the chart", "cursor", Rgb::new(0xff, 0x98, 0x00), 2),
        stage(ANALYZING, "Analyzing the chart", "chart", Rgb::new(0x4c, 0xaf, 0x50), 3),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TooltipPlacement {
    Top,
    Bottom,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OnboardingMessage {
    pub id: String,
    pub marker_id: String,
    pub text: String,
    pub title: String,
    pub stage_id: String,
    pub order: i64,
    pub tooltip_placement: TooltipPlacement,
    /// Directive kept verbatim so viewers can re-resolve against their live document.
    pub anchor: AnchorDirective,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolved_anchor: Option<ResolvedAnchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker_number: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NavAlignment {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NavConfig {
    pub show_stepper: bool,
    pub alignment: NavAlignment,
}

impl Default for NavConfig {
    fn default() -> Self {
        NavConfig { show_stepper: true, alignment: NavAlignment::Vertical }
    }
}

/// Everything the onboarding of one chart consists of.
#[derive(Debug, Clone, PartialEq)]
pub struct OnboardingState {
    pub context_key: String,
    pub stages: Vec<OnboardingStage>,
    pub messages: Vec<OnboardingMessage>,
    pub nav: NavConfig,
    pub marker_numbers: bool,
    /// Lowest index handed to the next custom message.
    pub next_index: usize,
}

impl OnboardingState {
    pub fn new(context_key: impl Into<String>) -> Self {
        OnboardingState {
            context_key: context_key.into(),
            stages: default_stages(),
            messages: Vec::new(),
            nav: NavConfig::default(),
            marker_numbers: true,
            next_index: 0,
        }
    }

    pub fn stage(&self, id: &str) -> Option<&OnboardingStage> {
        self.stages.iter().find(|s| s.id == id)
    }

    pub fn message(&self, id: &str) -> Option<&OnboardingMessage> {
        self.messages.iter().find(|m| m.id == id)
    }

    /// Stable sort of stages by order and messages by (stage order, message order).
    pub fn sort(&mut self) {
        sort_messages(&mut self.messages, &self.stages);
        self.stages.sort_by_key(|s| s.order);
    }
}

pub(crate) fn sort_messages(messages: &mut [OnboardingMessage], stages: &[OnboardingStage]) {
    let stage_order = |id: &str| stages.iter().find(|s| s.id == id).map_or(i64::MAX, |s| s.order);
    messages.sort_by_key(|m| (stage_order(&m.stage_id), m.order));
}
