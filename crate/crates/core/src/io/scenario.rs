use serde::{Deserialize, Serialize};

use super::{from_toml, parse_q, q_to_string, to_toml, FormatError};
use crate::error::Result;
use crate::linalg::Q;
use crate::secondary::BlowupScenario;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub pg: usize,
    pub h11_z: usize,
    pub hh: i64,
    pub m: String,
    pub n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<(BlowupScenario, Option<Q>)> {
        let m = parse_q("m", &self.m)?;
        let n = parse_q("n", &self.n)?;
        let omega = self
            .omega
            .as_deref()
            .map(|w| parse_q("omega", w))
            .transpose()?;
        let s = BlowupScenario::new(self.pg, self.h11_z, self.hh, m, n)
            .map_err(|e| FormatError::field("h11_z", e))?;
        Ok((s, omega))
    }
}

pub fn parse_scenario(text: &str) -> Result<(BlowupScenario, Option<Q>)> {
    from_toml::<ScenarioFile>(text)?.into_scenario()
}

pub fn emit_scenario(s: &BlowupScenario, omega: Option<&Q>) -> String {
    to_toml(&ScenarioFile {
        pg: s.pg,
        h11_z: s.h11_z,
        hh: s.hh,
        m: q_to_string(&s.m),
        n: q_to_string(&s.n),
        omega: omega.map(q_to_string),
    })
}
