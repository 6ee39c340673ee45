use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::generate::placeholders;
use super::TooltipPlacement;
use crate::error::OnboardingError;
use crate::features::FeatureKey;
use crate::model::ChartType;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MessageTemplate {
    pub template_id: String,
    /// Filled from the catalog key when omitted in a catalog file.
    #[serde(default)]
    pub chart_types: Vec<ChartType>,
    pub requires: Vec<FeatureKey>,
    /// Message body with `{featureKey}` placeholders; inline HTML allowed.
    pub text_template: String,
    pub title_template: String,
    pub stage_id: String,
    pub order: i64,
    pub tooltip_placement: TooltipPlacement,
    /// Feature whose anchor directive positions the marker.
    pub anchor_feature: FeatureKey,
}

impl MessageTemplate {
    /// Every placeholder must name a known feature listed in `requires`, and so must the anchor feature.
    pub fn validate(&self) -> Result<(), OnboardingError> {
        let err = |msg: String| OnboardingError::InvalidCatalog(format!("template `{}`: {msg}", self.template_id));
        for name in placeholders(&self.text_template).into_iter().chain(placeholders(&self.title_template)) {
            let key: FeatureKey = name.parse().map_err(|e: String| err(e))?;
            if !self.requires.contains(&key) {
                return Err(err(format!("placeholder `{{{name}}}` is not listed in `requires`")));
            }
        }
        if !self.requires.contains(&self.anchor_feature) {
            return Err(err(format!("anchor feature `{}` is not listed in `requires`", self.anchor_feature)));
        }
        if self.text_template.trim().is_empty() {
            return Err(err("empty text template".into()));
        }
        Ok(())
    }
}

/// Templates per chart type, in catalog order (the order defines message indices).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TemplateCatalog {
    by_type: BTreeMap<ChartType, Vec<MessageTemplate>>,
}

const BUILTIN: &str = include_str!("../../templates/default.json");

impl TemplateCatalog {
    /// Parses a catalog file: a JSON object mapping chart-type names to template arrays.
    pub fn from_json(text: &str) -> Result<Self, OnboardingError> {
        let raw: BTreeMap<String, Vec<MessageTemplate>> =
            serde_json::from_str(text).map_err(|e| OnboardingError::InvalidCatalog(e.to_string()))?;
        let mut by_type = BTreeMap::new();
        for (name, mut templates) in raw {
            let chart_type: ChartType = name.parse().map_err(OnboardingError::InvalidCatalog)?;
            for t in templates.iter_mut() {
                if t.chart_types.is_empty() {
                    t.chart_types.push(chart_type);
                }
                t.validate()?;
            }
            by_type.insert(chart_type, templates);
        }
        Ok(TemplateCatalog { by_type })
    }

    pub fn builtin() -> &'static TemplateCatalog {
        static CATALOG: OnceLock<TemplateCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| TemplateCatalog::from_json(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn templates(&self, chart_type: ChartType) -> Option<&[MessageTemplate]> {
        self.by_type.get(&chart_type).map(Vec::as_slice)
    }
}

/// Built-in templates for `chart_type`; empty for [`ChartType::Generic`].
pub fn default_templates(chart_type: ChartType) -> Vec<MessageTemplate> {
    TemplateCatalog::builtin().templates(chart_type).map(<[_]>::to_vec).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizon_title_template() {
        let t = default_templates(ChartType::HorizonGraph);
        let title = t.iter().find(|t| t.requires == [FeatureKey::ChartTitle]).unwrap();
        assert!(title.text_template.starts_with("The horizon graph shows the <i>{chartTitle}</i>"));
        assert_eq!(title.stage_id, "reading");
        assert_eq!(title.order, 1);
        assert_eq!(t.iter().position(|x| x == title), Some(8));
    }

    #[test]
    fn treemap_size_sentence() {
        let t = default_templates(ChartType::Treemap);
        assert!(t.iter().any(|t| t.stage_id == "reading"
            && t.text_template
                == "The size of each rectangle represents a quantitative value associated with each element in the hierarchy."));
    }

    #[test]
    fn generic_is_empty() {
        assert!(default_templates(ChartType::Generic).is_empty());
    }

    #[test]
    fn every_builtin_type_covers_all_stages() {
        for ct in ChartType::ALL.into_iter().filter(|t| *t != ChartType::Generic) {
            let t = default_templates(ct);
            for stage in ["reading", "interacting", "analyzing"] {
                assert!(t.iter().any(|t| t.stage_id == stage), "{ct} lacks {stage}");
            }
            assert!(t.iter().all(|t| t.chart_types == [ct]));
        }
    }

    fn one(text: &str, requires: &str, anchor: &str) -> String {
        format!(
            r#"{{"generic":[{{"templateId":"x","requires":{requires},"anchorFeature":"{anchor}","stageId":"reading","order":1,"tooltipPlacement":"top","titleTemplate":"T","textTemplate":"{text}"}}]}}"#
        )
    }

    #[test]
    fn catalog_validation_fails_fast() {
        assert!(TemplateCatalog::from_json(&one("Hi {chartTitle}", r#"["chartTitle"]"#, "chartTitle")).is_ok());
        assert!(TemplateCatalog::from_json(&one("Hi {custom.note}", r#"["custom.note"]"#, "custom.note")).is_ok());
        for bad in [
            one("Hi {unknownKey}", r#"["chartTitle"]"#, "chartTitle"),
            one("Hi {maxValue}", r#"["chartTitle"]"#, "chartTitle"),
            one("Hi", r#"["chartTitle"]"#, "maxValue"),
            one("Hi", r#"["notAKey"]"#, "chartTitle"),
        ] {
            assert!(matches!(TemplateCatalog::from_json(&bad), Err(OnboardingError::InvalidCatalog(_))), "{bad}");
        }
        assert!(TemplateCatalog::from_json(r#"{"pie":[]}"#).is_err());
    }
}
