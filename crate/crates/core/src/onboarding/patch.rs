use serde::{Deserialize, Serialize};

use super::generate::id_index;
use super::{NavAlignment, OnboardingMessage, OnboardingStage, OnboardingState};
use crate::color::Rgb;

/// One customization step. Serialized with an `op` tag, e.g. `{"op":"deleteMessage","messageId":"..."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum PatchOp {
    SetMessageText { message_id: String, text: String },
    SetTooltipTitle { message_id: String, title: String },
    DeleteMessage { message_id: String },
    AddMessage(OnboardingMessage),
    SetMessageStage { message_id: String, stage_id: String },
    SetMessageOrder { message_id: String, order: i64 },
    /// Removes the stage together with its messages.
    DeleteStage { stage_id: String },
    AddStage(OnboardingStage),
    SetStageTitle { stage_id: String, value: String },
    SetStageColor { stage_id: String, value: Rgb },
    SetStageIcon { stage_id: String, value: String },
    SetNav { show_stepper: bool, alignment: NavAlignment },
    SetMarkerNumbers { value: bool },
}

impl PatchOp {
    pub fn name(&self) -> &'static str {
        match self {
            PatchOp::SetMessageText { .. } => "setMessageText",
            PatchOp::SetTooltipTitle { .. } => "setTooltipTitle",
            PatchOp::DeleteMessage { .. } => "deleteMessage",
            PatchOp::AddMessage(_) => "addMessage",
            PatchOp::SetMessageStage { .. } => "setMessageStage",
            PatchOp::SetMessageOrder { .. } => "setMessageOrder",
            PatchOp::DeleteStage { .. } => "deleteStage",
            PatchOp::AddStage(_) => "addStage",
            PatchOp::SetStageTitle { .. } => "setStageTitle",
            PatchOp::SetStageColor { .. } => "setStageColor",
            PatchOp::SetStageIcon { .. } => "setStageIcon",
            PatchOp::SetNav { .. } => "setNav",
            PatchOp::SetMarkerNumbers { .. } => "setMarkerNumbers",
        }
    }
}

/// Ordered list of operations, stored as a JSON array.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CustomizationPatch(pub Vec<PatchOp>);

impl CustomizationPatch {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchIssue {
    pub index: usize,
    pub op: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PatchReport {
    pub applied: usize,
    pub issues: Vec<PatchIssue>,
}

fn next_marker_number(state: &OnboardingState, stage_id: &str) -> u32 {
    state.messages.iter().filter(|m| m.stage_id == stage_id).filter_map(|m| m.marker_number).max().unwrap_or(0) + 1
}

fn apply_op(state: &mut OnboardingState, op: &PatchOp) -> Result<(), String> {
    let unknown_message = |id: &str| format!("unknown message `{id}`");
    let unknown_stage = |id: &str| format!("unknown stage `{id}`");
    macro_rules! message {
        ($id:expr) => {
            state.messages.iter_mut().find(|m| m.id == *$id).ok_or_else(|| unknown_message($id))?
        };
    }
    macro_rules! stage {
        ($id:expr) => {
            state.stages.iter_mut().find(|s| s.id == *$id).ok_or_else(|| unknown_stage($id))?
        };
    }
    match op {
        PatchOp::SetMessageText { message_id, text } => {
            if text.trim().is_empty() {
                return Err("empty text".into());
            }
            message!(message_id).text = text.clone();
        }
        PatchOp::SetTooltipTitle { message_id, title } => message!(message_id).title = title.clone(),
        PatchOp::DeleteMessage { message_id } => {
            let before = state.messages.len();
            state.messages.retain(|m| m.id != *message_id);
            if state.messages.len() == before {
                return Err(unknown_message(message_id));
            }
        }
        PatchOp::AddMessage(m) => {
            if state.message(&m.id).is_some() {
                return Err(format!("duplicate message id `{}`", m.id));
            }
            if state.messages.iter().any(|x| x.marker_id == m.marker_id) {
                return Err(format!("duplicate marker id `{}`", m.marker_id));
            }
            if state.stage(&m.stage_id).is_none() {
                return Err(unknown_stage(&m.stage_id));
            }
            if m.text.trim().is_empty() {
                return Err("empty text".into());
            }
            if let Err(e) = m.anchor.validate() {
                return Err(format!("invalid anchor: {e}"));
            }
            let mut m = m.clone();
            if m.marker_number.is_none() {
                m.marker_number = Some(next_marker_number(state, &m.stage_id));
            }
            if let Some(i) = id_index(&m.id) {
                state.next_index = state.next_index.max(i + 1);
            }
            state.messages.push(m);
        }
        PatchOp::SetMessageStage { message_id, stage_id } => {
            if state.stage(stage_id).is_none() {
                return Err(unknown_stage(stage_id));
            }
            let number = next_marker_number(state, stage_id);
            let m = message!(message_id);
            if m.stage_id != *stage_id {
                m.stage_id = stage_id.clone();
                m.marker_number = Some(number);
            }
        }
        PatchOp::SetMessageOrder { message_id, order } => message!(message_id).order = *order,
        PatchOp::DeleteStage { stage_id } => {
            if state.stage(stage_id).is_none() {
                return Err(unknown_stage(stage_id));
            }
            state.stages.retain(|s| s.id != *stage_id);
            state.messages.retain(|m| m.stage_id != *stage_id);
        }
        PatchOp::AddStage(s) => {
            if state.stage(&s.id).is_some() {
                return Err(format!("duplicate stage id `{}`", s.id));
            }
            if state.stages.iter().any(|x| x.order == s.order) {
                return Err(format!("duplicate stage order {}", s.order));
            }
            state.stages.push(s.clone());
        }
        PatchOp::SetStageTitle { stage_id, value } => stage!(stage_id).title = value.clone(),
        PatchOp::SetStageColor { stage_id, value } => stage!(stage_id).color = *value,
        PatchOp::SetStageIcon { stage_id, value } => stage!(stage_id).icon_name = value.clone(),
        PatchOp::SetNav { show_stepper, alignment } => {
            state.nav.show_stepper = *show_stepper;
            state.nav.alignment = *alignment;
        }
        PatchOp::SetMarkerNumbers { value } => state.marker_numbers = *value,
    }
    Ok(())
}

/// Applies `patch` in order to a copy of `state`.
///
/// Operations that reference missing ids or would create duplicates are
/// skipped and reported; the rest still apply.
pub fn apply_customization(state: &OnboardingState, patch: &CustomizationPatch) -> (OnboardingState, PatchReport) {
    let mut next = state.clone();
    let mut report = PatchReport::default();
    for (index, op) in patch.0.iter().enumerate() {
        match apply_op(&mut next, op) {
            Ok(()) => report.applied += 1,
            Err(reason) => report.issues.push(PatchIssue { index, op: op.name(), reason }),
        }
    }
    next.sort();
    (next, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onboarding::{create_basic_message, TooltipPlacement};
    use crate::svg::AnchorDirective;

    fn state() -> OnboardingState {
        let mut s = OnboardingState::new("c");
        for (stage, text) in [("reading", "one"), ("reading", "two"), ("analyzing", "three")] {
            create_basic_message(&mut s, text, "t", stage, AnchorDirective::Coords { x: 1.0, y: 1.0 }, 1).unwrap();
        }
        s
    }

    #[test]
    fn op_json_shape() {
        let op: PatchOp = serde_json::from_str(r#"{"op":"setMessageText","messageId":"m","text":"x"}"#).unwrap();
        assert_eq!(op, PatchOp::SetMessageText { message_id: "m".into(), text: "x".into() });
        let op: PatchOp = serde_json::from_str(r##"{"op":"setStageColor","stageId":"reading","value":"#ff0000"}"##).unwrap();
        assert_eq!(op, PatchOp::SetStageColor { stage_id: "reading".into(), value: Rgb::new(255, 0, 0) });
        let op: PatchOp =
            serde_json::from_str(r##"{"op":"addStage","id":"x","title":"X","iconName":"i","color":"#000000","order":9}"##).unwrap();
        assert!(matches!(op, PatchOp::AddStage(_)));
        assert!(serde_json::from_str::<PatchOp>(r#"{"op":"explode"}"#).is_err());
    }

    #[test]
    fn edits_are_local() {
        let s = state();
        let patch = CustomizationPatch(vec![PatchOp::SetMessageText { message_id: "visahoi-message-c-1".into(), text: "new".into() }]);
        let (next, report) = apply_customization(&s, &patch);
        assert_eq!(report.applied, 1);
        for (a, b) in s.messages.iter().zip(&next.messages) {
            if a.id == "visahoi-message-c-1" {
                assert_eq!(b.text, "new");
            } else {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn unknown_ids_are_reported() {
        let s = state();
        let patch = CustomizationPatch(vec![
            PatchOp::DeleteMessage { message_id: "nope".into() },
            PatchOp::SetStageTitle { stage_id: "ghost".into(), value: "x".into() },
            PatchOp::SetMarkerNumbers { value: false },
        ]);
        let (next, report) = apply_customization(&s, &patch);
        assert_eq!(report.applied, 1);
        assert_eq!(report.issues.iter().map(|i| i.index).collect::<Vec<_>>(), [0, 1]);
        assert!(!next.marker_numbers);
        assert_eq!(next.messages, s.messages);
    }

    #[test]
    fn delete_stage_drops_its_messages() {
        let (next, _) = apply_customization(&state(), &CustomizationPatch(vec![PatchOp::DeleteStage { stage_id: "reading".into() }]));
        assert_eq!(next.stages.len(), 2);
        assert_eq!(next.messages.len(), 1);
        assert_eq!(next.messages[0].stage_id, "analyzing");
    }

    #[test]
    fn add_message_rejects_duplicates() {
        let s = state();
        let mut m = s.messages[0].clone();
        let (_, report) = apply_customization(&s, &CustomizationPatch(vec![PatchOp::AddMessage(m.clone())]));
        assert_eq!(report.issues.len(), 1);
        m.id = "visahoi-message-c-40".into();
        m.marker_id = "visahoi-marker-c-40".into();
        m.marker_number = None;
        m.tooltip_placement = TooltipPlacement::Left;
        let (next, report) = apply_customization(&s, &CustomizationPatch(vec![PatchOp::AddMessage(m)]));
        assert!(report.issues.is_empty());
        assert_eq!(next.message("visahoi-message-c-40").unwrap().marker_number, Some(3));
        assert_eq!(next.next_index, 41);
    }

    #[test]
    fn reorder_resorts() {
        let s = state();
        let first = s.messages[0].id.clone();
        let (next, _) =
            apply_customization(&s, &CustomizationPatch(vec![PatchOp::SetMessageOrder { message_id: first.clone(), order: 5 }]));
        assert_eq!(next.messages[1].id, first);
    }
}
