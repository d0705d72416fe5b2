use serde::Serialize;

/// Quotients up to this many classes are certified on every subset.
pub const EXHAUSTIVE_CLASSES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateLevel {
    /// Every element compared.
    Exhaustive,
    /// Atoms compared; the operators are additive, so this covers all joins.
    AtomsAdditive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformReport {
    pub transform: String,
    pub params: serde_json::Value,
    pub certificate_level: CertificateLevel,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl TransformReport {
    pub(crate) fn new(
        transform: &str,
        params: serde_json::Value,
        level: CertificateLevel,
        counterexample: Option<String>,
    ) -> Self {
        TransformReport {
            transform: transform.to_string(),
            params,
            certificate_level: level,
            passed: counterexample.is_none(),
            counterexample,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}
