use std::collections::BTreeMap;

use super::{create_basic_message, OnboardingMessage, OnboardingState};
use crate::error::OnboardingError;
use crate::svg::AnchorDirective;

/// Per-chart onboarding state keyed by context key.
///
/// Mutation needs `&mut self`; share a snapshot (`clone`) for concurrent readers.
#[derive(Debug, Clone, Default)]
pub struct ContextRegistry {
    states: BTreeMap<String, OnboardingState>,
    counter: u64,
}

impl ContextRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `requested` (registering it if new) or a freshly generated `visahoi-ctx-N` key.
    pub fn register_context(&mut self, requested: Option<&str>) -> String {
        let key = match requested {
            Some(k) => k.to_string(),
            None => loop {
                self.counter += 1;
                let candidate = format!("visahoi-ctx-{}", self.counter);
                if !self.states.contains_key(&candidate) {
                    break candidate;
                }
            },
        };
        self.states.entry(key.clone()).or_insert_with(|| OnboardingState::new(key.clone()));
        key
    }

    pub fn state(&self, key: &str) -> Option<&OnboardingState> {
        self.states.get(key)
    }

    pub fn state_mut(&mut self, key: &str) -> Option<&mut OnboardingState> {
        self.states.get_mut(key)
    }

    /// Replaces the state for its context key.
    pub fn store(&mut self, state: OnboardingState) {
        self.states.insert(state.context_key.clone(), state);
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn create_basic_message(
        &mut self,
        key: &str,
        text: &str,
        title: &str,
        stage_id: &str,
        anchor: AnchorDirective,
        order: i64,
    ) -> Result<OnboardingMessage, OnboardingError> {
        let key = self.register_context(Some(key));
        let state = self.states.get_mut(&key).expect("registered above");
        create_basic_message(state, text, title, stage_id, anchor, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn requested_key_is_returned() {
        let mut r = ContextRegistry::new();
        assert_eq!(r.register_context(Some("abc")), "abc");
    }

    #[test]
    fn generated_keys_are_distinct() {
        let mut r = ContextRegistry::new();
        let a = r.register_context(None);
        let b = r.register_context(None);
        assert_ne!(a, b);
        assert!(a.starts_with("visahoi-ctx-"));
    }

    #[test]
    fn re_registration_is_idempotent() {
        let mut r = ContextRegistry::new();
        r.register_context(Some("abc"));
        r.state_mut("abc").unwrap().marker_numbers = false;
        assert_eq!(r.register_context(Some("abc")), "abc");
        assert_eq!(r.len(), 1);
        assert!(!r.state("abc").unwrap().marker_numbers);
    }

    #[test]
    fn generated_keys_skip_caller_keys() {
        let mut r = ContextRegistry::new();
        r.register_context(Some("visahoi-ctx-1"));
        assert_eq!(r.register_context(None), "visahoi-ctx-2");
    }

    #[test]
    fn messages_through_registry() {
        let mut r = ContextRegistry::new();
        let m = r.create_basic_message("c", "Text", "Title", "reading", AnchorDirective::Coords { x: 1.0, y: 2.0 }, 1).unwrap();
        assert_eq!(m.id, "visahoi-message-c-0");
        assert_eq!(r.state("c").unwrap().messages.len(), 1);
    }
}
