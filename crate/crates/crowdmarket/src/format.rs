//! On-disk formats: JSON market instances, reward files, scenario recipes,
//! and the `--set key.path=value` override mechanism shared by the CLI.

use std::fmt;

use crowdmarket_core::{
    ExpectationProfile, MarketError, MarketInstance, MarketParams, MuProfile, ScenarioConfig,
    SocialGraph,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A market instance document:
///
/// ```json
/// {
///   "profiles": [{"a": 2.0, "b": 1.0}, ...],
///   "graph": [[0.0, 0.5], [0.5, 0.0]],
///   "params": {"c": 1.0, "mu": 1.0, "s": 4.0, "t": 1.0}
/// }
/// ```
///
/// plus an optional `"expectation": {"e_a": .., "e_b": ..}` block giving the
/// population means used by the limited-information regime.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub profiles: Vec<ProfileDoc>,
    pub graph: Vec<Vec<f64>>,
    pub params: ParamsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<ExpectationDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub c: f64,
    pub mu: f64,
    pub s: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationDoc {
    pub e_a: f64,
    pub e_b: f64,
}

/// A reward file is either a flat array `[0.5, 0.7]` or an object
/// `{"reward": [0.5, 0.7]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RewardDoc {
    Flat(Vec<f64>),
    Wrapped { reward: Vec<f64> },
}

impl RewardDoc {
    pub fn into_vec(self) -> Vec<f64> {
        match self {
            RewardDoc::Flat(v) => v,
            RewardDoc::Wrapped { reward } => reward,
        }
    }
}

/// Scenario recipe document; every field has the reference-population
/// default, so `{}` (or an empty override list) reproduces it exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioDoc {
    pub n: usize,
    pub seed: u64,
    pub mean_a: f64,
    pub var_a: f64,
    pub mean_b: f64,
    pub var_b: f64,
    pub mean_g: f64,
    pub var_g: f64,
    pub b_floor: f64,
    pub params: ParamsDoc,
    pub enforce_assumption1: bool,
}

impl Default for ScenarioDoc {
    fn default() -> Self {
        let c = ScenarioConfig::default();
        ScenarioDoc {
            n: c.n,
            seed: c.seed,
            mean_a: c.mean_a,
            var_a: c.var_a,
            mean_b: c.mean_b,
            var_b: c.var_b,
            mean_g: c.mean_g,
            var_g: c.var_g,
            b_floor: c.b_floor,
            params: ParamsDoc {
                c: c.params.c,
                mu: c.params.mu,
                s: c.params.s,
                t: c.params.t,
            },
            enforce_assumption1: c.enforce_assumption1,
        }
    }
}

impl ScenarioDoc {
    pub fn into_config(self) -> ScenarioConfig {
        ScenarioConfig {
            n: self.n,
            seed: self.seed,
            mean_a: self.mean_a,
            var_a: self.var_a,
            mean_b: self.mean_b,
            var_b: self.var_b,
            mean_g: self.mean_g,
            var_g: self.var_g,
            b_floor: self.b_floor,
            params: MarketParams {
                c: self.params.c,
                mu: self.params.mu,
                s: self.params.s,
                t: self.params.t,
            },
            enforce_assumption1: self.enforce_assumption1,
        }
    }
}

/// Why a load failed, split by who is to blame: unreadable or malformed
/// input, an override that doesn't parse, or data that parses fine but
/// violates the model.
#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(serde_json::Error),
    Override(String),
    Model(MarketError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read input: {e}"),
            LoadError::Parse(e) => write!(f, "malformed document: {e}"),
            LoadError::Override(msg) => write!(f, "bad --set override: {msg}"),
            LoadError::Model(e) => write!(f, "invalid market data: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl From<MarketError> for LoadError {
    fn from(e: MarketError) -> Self {
        LoadError::Model(e)
    }
}

/// A parsed instance plus whatever expectation block accompanied it.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: MarketInstance,
    pub expectation: Option<ExpectationProfile>,
}

fn set_path(cur: &mut Value, segments: &[&str], v: Value) -> Result<(), String> {
    let seg = segments[0];
    if seg.is_empty() {
        return Err("empty path segment".to_string());
    }
    let last = segments.len() == 1;
    if let Ok(idx) = seg.parse::<usize>() {
        let arr = cur
            .as_array_mut()
            .ok_or_else(|| format!("'{seg}' indexes into a non-array"))?;
        let len = arr.len();
        let slot = arr
            .get_mut(idx)
            .ok_or_else(|| format!("index {idx} out of bounds (length {len})"))?;
        if last {
            *slot = v;
            Ok(())
        } else {
            set_path(slot, &segments[1..], v)
        }
    } else {
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| format!("'{seg}' traverses a non-object"))?;
        if last {
            obj.insert(seg.to_string(), v);
            Ok(())
        } else {
            let slot = obj
                .entry(seg.to_string())
                .or_insert_with(|| Value::Object(Default::default()));
            set_path(slot, &segments[1..], v)
        }
    }
}

/// Apply `key.path=value` overrides to a JSON tree. Values parse as JSON
/// when they can (numbers, booleans) and fall back to strings. Dotted paths
/// descend objects by key and arrays by index; missing objects along the
/// way are created, missing array slots are an error.
pub fn apply_overrides(root: &mut Value, sets: &[String]) -> Result<(), LoadError> {
    for s in sets {
        let (path, raw) = s
            .split_once('=')
            .ok_or_else(|| LoadError::Override(format!("expected key=value, got '{s}'")))?;
        let path = path.trim();
        if path.is_empty() {
            return Err(LoadError::Override(format!("empty key in '{s}'")));
        }
        let raw = raw.trim();
        let value: Value =
            serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        let segments: Vec<&str> = path.split('.').collect();
        set_path(root, &segments, value)
            .map_err(|msg| LoadError::Override(format!("{path}: {msg}")))?;
    }
    Ok(())
}

fn doc_to_instance(doc: InstanceDoc) -> Result<LoadedInstance, LoadError> {
    let profiles: Vec<MuProfile> = doc
        .profiles
        .iter()
        .map(|p| MuProfile { a: p.a, b: p.b })
        .collect();
    let graph = SocialGraph::from_rows(&doc.graph)?;
    let params = MarketParams::new(doc.params.c, doc.params.mu, doc.params.s, doc.params.t)?;
    let instance = MarketInstance::new(profiles, graph, params)?;
    let expectation = match doc.expectation {
        None => None,
        Some(e) => Some(ExpectationProfile::new(e.e_a, e.e_b)?),
    };
    Ok(LoadedInstance {
        instance,
        expectation,
    })
}

/// Parse an instance document, applying overrides before validation.
pub fn parse_instance(text: &str, sets: &[String]) -> Result<LoadedInstance, LoadError> {
    let mut value: Value = serde_json::from_str(text).map_err(LoadError::Parse)?;
    apply_overrides(&mut value, sets)?;
    let doc: InstanceDoc = serde_json::from_value(value).map_err(LoadError::Parse)?;
    doc_to_instance(doc)
}

/// Parse a reward file and check it against the market size.
pub fn parse_rewards(text: &str, n: usize) -> Result<Vec<f64>, LoadError> {
    let doc: RewardDoc = serde_json::from_str(text).map_err(LoadError::Parse)?;
    let rewards = doc.into_vec();
    if rewards.len() != n {
        return Err(LoadError::Model(MarketError::LengthMismatch {
            what: "reward vector",
            expected: n,
            found: rewards.len(),
        }));
    }
    Ok(rewards)
}

/// Build a scenario recipe from the defaults plus overrides.
pub fn scenario_config_from_sets(sets: &[String]) -> Result<ScenarioConfig, LoadError> {
    let mut value = serde_json::to_value(ScenarioDoc::default()).expect("defaults serialize");
    apply_overrides(&mut value, sets)?;
    let doc: ScenarioDoc = serde_json::from_value(value).map_err(LoadError::Parse)?;
    Ok(doc.into_config())
}

/// Render an instance back to its document form (e.g. for `scenario-dump`).
pub fn instance_to_doc(inst: &MarketInstance) -> InstanceDoc {
    let n = inst.n();
    let profiles = inst
        .profiles()
        .iter()
        .map(|p| ProfileDoc { a: p.a, b: p.b })
        .collect();
    let graph = (0..n)
        .map(|i| inst.graph().row(i).to_vec())
        .collect();
    let pr = inst.params();
    InstanceDoc {
        profiles,
        graph,
        params: ParamsDoc {
            c: pr.c,
            mu: pr.mu,
            s: pr.s,
            t: pr.t,
        },
        expectation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = r#"{
        "profiles": [{"a": 2.0, "b": 1.0}, {"a": 2.0, "b": 1.0}],
        "graph": [[0.0, 0.5], [0.5, 0.0]],
        "params": {"c": 1.0, "mu": 1.0, "s": 4.0, "t": 1.0}
    }"#;

    #[test]
    fn instance_round_trip() {
        let loaded = parse_instance(PAIR, &[]).unwrap();
        assert_eq!(loaded.instance.n(), 2);
        assert_eq!(loaded.instance.params().s, 4.0);
        assert!(loaded.expectation.is_none());
        let doc = instance_to_doc(&loaded.instance);
        let text = serde_json::to_string(&doc).unwrap();
        let again = parse_instance(&text, &[]).unwrap();
        assert_eq!(again.instance, loaded.instance);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = PAIR.replace("\"params\"", "\"extra\": 1, \"params\"");
        assert!(matches!(
            parse_instance(&text, &[]),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn model_violations_are_distinguished_from_parse_errors() {
        let asym = PAIR.replace("[[0.0, 0.5], [0.5, 0.0]]", "[[0.0, 0.5], [0.1, 0.0]]");
        assert!(matches!(
            parse_instance(&asym, &[]),
            Err(LoadError::Model(MarketError::AsymmetricTie { .. }))
        ));
        assert!(matches!(
            parse_instance("{not json", &[]),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn reward_files_accept_both_shapes() {
        assert_eq!(parse_rewards("[0.5, 0.75]", 2).unwrap(), vec![0.5, 0.75]);
        assert_eq!(
            parse_rewards(r#"{"reward": [0.5, 0.75]}"#, 2).unwrap(),
            vec![0.5, 0.75]
        );
        assert!(matches!(
            parse_rewards("[0.5]", 2),
            Err(LoadError::Model(MarketError::LengthMismatch { .. }))
        ));
        // Out-of-range numbers die in the JSON layer, not the model layer.
        assert!(matches!(
            parse_rewards("[1e999, 0.0]", 2),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn overrides_reach_nested_fields() {
        let sets = vec![
            "params.c=2.5".to_string(),
            "profiles.1.a=7".to_string(),
            "graph.0.1=0.25".to_string(),
            "graph.1.0=0.25".to_string(),
            "expectation.e_a=2".to_string(),
            "expectation.e_b=1".to_string(),
        ];
        let loaded = parse_instance(PAIR, &sets).unwrap();
        assert_eq!(loaded.instance.params().c, 2.5);
        assert_eq!(loaded.instance.profiles()[1].a, 7.0);
        assert_eq!(loaded.instance.graph().weight(0, 1), 0.25);
        let exp = loaded.expectation.unwrap();
        assert_eq!((exp.e_a, exp.e_b), (2.0, 1.0));
    }

    #[test]
    fn override_failures_are_reported() {
        assert!(matches!(
            parse_instance(PAIR, &["params.c".to_string()]),
            Err(LoadError::Override(_))
        ));
        assert!(matches!(
            parse_instance(PAIR, &["profiles.9.a=1".to_string()]),
            Err(LoadError::Override(_))
        ));
        assert!(matches!(
            parse_instance(PAIR, &["params.c.deep=1".to_string()]),
            Err(LoadError::Override(_))
        ));
        // Overriding an unknown key still hits the schema check.
        assert!(matches!(
            parse_instance(PAIR, &["tuning=3".to_string()]),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn scenario_defaults_and_overrides() {
        let config = scenario_config_from_sets(&[]).unwrap();
        assert_eq!(config, ScenarioConfig::default());
        let config = scenario_config_from_sets(&[
            "n=25".to_string(),
            "mean_g=0.2".to_string(),
            "params.t=0".to_string(),
            "enforce_assumption1=false".to_string(),
        ])
        .unwrap();
        assert_eq!(config.n, 25);
        assert_eq!(config.mean_g, 0.2);
        assert_eq!(config.params.t, 0.0);
        assert!(!config.enforce_assumption1);
        assert!(matches!(
            scenario_config_from_sets(&["typo=1".to_string()]),
            Err(LoadError::Parse(_))
        ));
    }
}
