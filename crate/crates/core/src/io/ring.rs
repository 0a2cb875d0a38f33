use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

use super::{from_toml, parse_q_vec, q_strings, to_toml, FormatError};
use crate::error::{Error, Result};
use crate::graded::{validate_ring, Bidegree, Element, GradedRing, RingBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub cutoff: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub unit: usize,
    /// Basis labels per degree, `basis[d]` for `d = 0..=cutoff`.
    pub basis: Vec<Vec<String>>,
    /// Hodge types per basis element; an empty entry leaves it untagged.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub names: BTreeMap<String, NamedClass>,
    #[serde(default, rename = "product")]
    pub products: Vec<ProductLine>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedClass {
    pub degree: usize,
    pub coeffs: Vec<String>,
}

/// `basis[left.0][left.1] * basis[right.0][right.1] = sum coeffs[k] basis[left.0 + right.0][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductLine {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub coeffs: Vec<String>,
}

fn located(field: String) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::DimensionMismatch(m) => FormatError::dimension(field.clone(), m).into(),
        Error::BeyondCutoff { degree, cutoff } => FormatError::dimension(
            field.clone(),
            format!("degree {degree} beyond cutoff {cutoff}"),
        )
        .into(),
        Error::Format(f) => f.into(),
        other => FormatError::field(field.clone(), other).into(),
    }
}

pub fn ring_file(r: &GradedRing) -> RingFile {
    let basis = (0..=r.cutoff()).map(|d| r.labels(d).to_vec()).collect();
    let hodge = r.has_hodge().then(|| {
        (0..=r.cutoff())
            .map(|d| {
                (0..r.dim(d))
                    .map(|i| r.hodge(d, i).map(|b| vec![b.p, b.q]).unwrap_or_default())
                    .collect()
            })
            .collect()
    });
    let names = r
        .names()
        .iter()
        .map(|(k, e)| {
            (
                k.clone(),
                NamedClass {
                    degree: e.degree,
                    coeffs: q_strings(&e.coeffs),
                },
            )
        })
        .collect();
    let products = r
        .canonical_products()
        .into_iter()
        .map(|p| ProductLine {
            left: p.left,
            right: p.right,
            coeffs: q_strings(&p.coeffs),
        })
        .collect();
    RingFile {
        cutoff: r.cutoff(),
        unit: r.unit_index(),
        basis,
        hodge,
        names,
        products,
    }
}

pub fn emit_ring(r: &GradedRing) -> String {
    to_toml(&ring_file(r))
}

impl RingFile {
    pub fn into_ring(self) -> Result<GradedRing> {
        let n = self.cutoff;
        if self.basis.len() != n + 1 {
            return Err(FormatError::dimension(
                "basis",
                format!(
                    "cutoff {n} needs {} degree lists, found {}",
                    n + 1,
                    self.basis.len()
                ),
            )
            .into());
        }
        let mut b = RingBuilder::new(n, self.basis).map_err(located("basis".into()))?;
        if self.unit >= b.dims()[0] {
            return Err(
                FormatError::field("unit", format!("index {} out of range", self.unit)).into(),
            );
        }
        b = b.unit(self.unit);
        if let Some(hodge) = self.hodge {
            if hodge.len() != n + 1 {
                return Err(FormatError::dimension("hodge", "one list per degree required").into());
            }
            for (d, tags) in hodge.into_iter().enumerate() {
                if tags.len() != b.dims()[d] {
                    return Err(FormatError::dimension(
                        format!("hodge[{d}]"),
                        format!("{} tags for {} basis elements", tags.len(), b.dims()[d]),
                    )
                    .into());
                }
                for (i, t) in tags.into_iter().enumerate() {
                    match t.as_slice() {
                        [] => {}
                        [p, q] => b = b.hodge(d, i, Bidegree::new(*p, *q)),
                        _ => {
                            return Err(FormatError::field(
                                format!("hodge[{d}][{i}]"),
                                "expected [] or [p, q]",
                            )
                            .into())
                        }
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        for (k, p) in self.products.into_iter().enumerate() {
            let field = format!("product[{k}]");
            let ((i, a), (j, c)) = (p.left, p.right);
            if i > n || j > n {
                return Err(FormatError::dimension(field, "degree beyond cutoff").into());
            }
            if !seen.insert((p.left, p.right))
                || (p.left != p.right && !seen.insert((p.right, p.left)))
            {
                return Err(FormatError::field(field, "product listed twice").into());
            }
            let coeffs = parse_q_vec(&format!("{field}.coeffs"), &p.coeffs)?;
            b = b.product(i, a, j, c, coeffs).map_err(located(field))?;
        }
        for (name, class) in self.names {
            let field = format!("names.{name}");
            let coeffs = parse_q_vec(&format!("{field}.coeffs"), &class.coeffs)?;
            let dim = b.dims().get(class.degree).copied().ok_or_else(|| {
                Error::from(FormatError::dimension(
                    field.clone(),
                    "degree beyond cutoff",
                ))
            })?;
            if coeffs.len() != dim {
                return Err(FormatError::dimension(
                    field,
                    format!("{} coefficients for dimension {dim}", coeffs.len()),
                )
                .into());
            }
            b = b.name(name, Element::new(class.degree, coeffs));
        }
        let ring = b.build().map_err(located("ring".into()))?;
        if let Some(f) = validate_ring(&ring).failures().next() {
            return Err(FormatError::Invariant {
                check: f.name.to_string(),
                counterexample: f.counterexample.clone().unwrap_or_default(),
            }
            .into());
        }
        Ok(ring)
    }
}

/// Parses and validates a ring file.
pub fn parse_ring(text: &str) -> Result<GradedRing> {
    from_toml::<RingFile>(text)?.into_ring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::standard;
    use crate::linalg::q;

    #[test]
    fn round_trips() {
        for r in [
            standard::sphere(2, 8),
            standard::projective_plane(8),
            standard::wedge_y(q(2), q(-3)),
            standard::kq2_times_kq3(7),
            standard::point(3),
        ] {
            let text = emit_ring(&r);
            let back = parse_ring(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(emit_ring(&back), text);
        }
    }

    #[test]
    fn diagnostics() {
        let missing = "cutoff = 2\n";
        match parse_ring(missing) {
            Err(Error::Format(FormatError::Syntax { message, .. })) => {
                assert!(message.contains("basis"))
            }
            other => panic!("{other:?}"),
        }
        let bad = "cutoff = 2\nbasis = [[\"1\"], [], [\"e\"]]\n\n[[product]]\nleft = [2, 0]\nright = [0, 0]\ncoeffs = [\"x\"]\n";
        assert!(matches!(
            parse_ring(bad),
            Err(Error::Format(FormatError::Field { field, .. })) if field == "product[0].coeffs[0]"
        ));
        let syntax = "cutoff = 2\nbasis = [[\"1\"], [], [\"e\"]\nfoo";
        assert!(matches!(
            parse_ring(syntax),
            Err(Error::Format(FormatError::Syntax { line: Some(_), .. }))
        ));
        let dims = "cutoff = 3\nbasis = [[\"1\"], [], [\"e\"]]\n";
        assert!(matches!(
            parse_ring(dims),
            Err(Error::Format(FormatError::Dimension { .. }))
        ));
    }

    #[test]
    fn invariant_failure_is_reported() {
        // A nonzero square of an odd class breaks graded commutativity.
        let text = "cutoff = 2\nbasis = [[\"1\"], [\"u\"], [\"v\"]]\n\n[[product]]\nleft = [1, 0]\nright = [1, 0]\ncoeffs = [\"1\"]\n";
        assert!(matches!(
            parse_ring(text),
            Err(Error::Format(FormatError::Invariant { .. }))
        ));
    }
}
