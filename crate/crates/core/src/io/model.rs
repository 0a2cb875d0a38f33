use serde::{Deserialize, Serialize};

use super::{from_toml, parse_q, parse_q_vec, q_strings, q_to_string, to_toml, FormatError};
use crate::error::Result;
use crate::graded::{Element, Generator, GeneratorList, Monomial};
use crate::sullivan::{MinimalModel, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub verified_through: usize,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: usize,
    /// `d` of the generator; an empty list means `d = 0`.
    #[serde(default)]
    pub d: Vec<Term>,
    /// Coordinates of the image in the target's basis of this degree.
    pub image: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    /// Product of generator powers such as `x2^2*y3`, or `1`.
    pub monomial: String,
}

pub fn model_file(m: &MinimalModel) -> ModelFile {
    let generators = m
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| GeneratorEntry {
            name: g.name.clone(),
            degree: g.degree,
            d: m.differential[i]
                .terms()
                .map(|(mono, c)| Term {
                    coeff: q_to_string(c),
                    monomial: m.generators.format_monomial(mono),
                })
                .collect(),
            image: q_strings(&m.target_map[i].coeffs),
        })
        .collect();
    ModelFile {
        verified_through: m.verified_through,
        generators,
    }
}

pub fn emit_model(m: &MinimalModel) -> String {
    to_toml(&model_file(m))
}

/// Parses `a^2*b` against a generator list; `1` is the empty product.
pub fn parse_monomial(
    gens: &GeneratorList,
    field: &str,
    text: &str,
) -> std::result::Result<Monomial, FormatError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut exps = vec![0u32; gens.len()];
    for factor in text.split('*') {
        let (name, power) = match factor.trim().split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim().parse::<u32>().map_err(|_| {
                    FormatError::field(field, format!("bad exponent in `{factor}`"))
                })?,
            ),
            None => (factor.trim(), 1),
        };
        let i = gens
            .index_of(name)
            .ok_or_else(|| FormatError::field(field, format!("unknown generator `{name}`")))?;
        exps[i] += power;
        if gens.get(i).is_odd() && exps[i] > 1 {
            return Err(FormatError::field(
                field,
                format!("odd generator `{name}` squared"),
            ));
        }
    }
    Ok(Monomial::new(exps))
}

impl ModelFile {
    pub fn into_model(self) -> Result<MinimalModel> {
        let mut gens = GeneratorList::default();
        for (k, g) in self.generators.iter().enumerate() {
            if g.name.contains(['*', '^'])
                || g.name.trim() != g.name
                || g.name.is_empty()
                || g.name == "1"
            {
                return Err(FormatError::field(
                    format!("generator[{k}].name"),
                    "invalid generator name",
                )
                .into());
            }
            if g.degree < 2 {
                return Err(FormatError::field(
                    format!("generator[{k}].degree"),
                    "degree must be at least 2",
                )
                .into());
            }
            gens.push(Generator::new(g.name.clone(), g.degree))
                .map_err(|e| FormatError::field(format!("generator[{k}].name"), e))?;
        }
        let mut differential = Vec::new();
        let mut target_map = Vec::new();
        for (k, g) in self.generators.into_iter().enumerate() {
            let mut p = Polynomial::zero();
            for (t, term) in g.d.iter().enumerate() {
                let field = format!("generator[{k}].d[{t}]");
                let mono = parse_monomial(&gens, &format!("{field}.monomial"), &term.monomial)?;
                if gens.degree_of(&mono) != g.degree + 1 {
                    return Err(FormatError::dimension(
                        field,
                        format!("term must have degree {}", g.degree + 1),
                    )
                    .into());
                }
                p.add_term(mono, parse_q(&format!("{field}.coeff"), &term.coeff)?);
            }
            differential.push(p);
            let image = parse_q_vec(&format!("generator[{k}].image"), &g.image)?;
            target_map.push(Element::new(g.degree, image));
        }
        Ok(MinimalModel {
            generators: gens,
            differential,
            target_map,
            verified_through: self.verified_through,
        })
    }
}

pub fn parse_model(text: &str) -> Result<MinimalModel> {
    from_toml::<ModelFile>(text)?.into_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::standard;
    use crate::sullivan::{build_minimal_model, formal_cdga};

    #[test]
    fn round_trips() {
        for r in [
            standard::sphere(2, 8),
            standard::projective_plane(8),
            standard::wedge_of_spheres(2, 2, 4),
            standard::point(4),
        ] {
            let m = build_minimal_model(&formal_cdga(&r).unwrap(), r.cutoff()).unwrap();
            let text = emit_model(&m);
            let back = parse_model(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(emit_model(&back), text);
        }
    }

    #[test]
    fn rejects_bad_terms() {
        let text = "verified_through = 4\n\n[[generator]]\nname = \"x\"\ndegree = 2\nimage = [\"1\"]\n\n[[generator]]\nname = \"y\"\ndegree = 3\nimage = []\nd = [{ coeff = \"1\", monomial = \"x^2*z\" }]\n";
        let err = parse_model(text).unwrap_err().to_string();
        assert!(err.contains("generator[1].d[0].monomial"), "{err}");
        let wrong_degree = text.replace("x^2*z", "x");
        assert!(parse_model(&wrong_degree).is_err());
        assert!(parse_model(&text.replace("x^2*z", "x^2")).is_ok());
    }
}
