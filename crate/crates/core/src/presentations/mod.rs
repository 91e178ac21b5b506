//! Knot group presentations and the Fox calculus.

pub mod fox;
pub mod group_ring;
pub mod pd;
pub mod word;

pub use fox::{fox_derivative, fundamental_identity_defect};
pub use group_ring::GroupRingElement;
pub use pd::{parse_pd, pd_to_wirtinger};
pub use word::{abelianization_exponent, FreeWord};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<FreeWord>,
    /// All generators are meridians (conjugate to one another). Recorded,
    /// not verified.
    meridional: bool,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<FreeWord>, meridional: bool) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidInput(
                "presentation without generators".into(),
            ));
        }
        if let Some(r) = relators.iter().find(|r| r.alphabet_size() > names.len()) {
            return Err(Error::InvalidInput(format!(
                "relator {r} uses an undeclared generator"
            )));
        }
        Ok(Presentation {
            names,
            relators,
            meridional,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn is_deficiency_one(&self) -> bool {
        self.relators.len() + 1 == self.names.len()
    }

    pub fn is_meridional(&self) -> bool {
        self.meridional
    }

    /// Text in the presentation file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.names.join(" "));
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", r.render(&self.names)));
        }
        s
    }
}

/// Reads `gens: a b c` followed by `rel: <word>` lines. Blank lines and
/// lines starting with `#` are ignored. The presentation is marked
/// meridional when every relator has exponent sum zero.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {}: expected 'gens:' or 'rel:'", no + 1)))?;
        match key.trim() {
            "gens" => {
                if names.is_some() {
                    return Err(Error::Parse("duplicate gens line".into()));
                }
                let ns: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (i, n) in ns.iter().enumerate() {
                    let mut cs = n.chars();
                    let ok =
                        matches!((cs.next(), cs.next()), (Some(c), None) if c.is_ascii_lowercase());
                    if !ok {
                        return Err(Error::Parse(format!(
                            "generator name {n:?} is not a single lowercase letter"
                        )));
                    }
                    if ns[..i].contains(n) {
                        return Err(Error::Parse(format!("generator {n} declared twice")));
                    }
                }
                names = Some(ns);
            }
            "rel" => {
                let ns = names
                    .as_ref()
                    .ok_or_else(|| Error::Parse("rel before gens".into()))?;
                let w = FreeWord::parse(rest, ns)?;
                if w.is_empty() {
                    return Err(Error::Parse(format!(
                        "line {}: relator reduces to the identity",
                        no + 1
                    )));
                }
                relators.push(w);
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown key {other:?}",
                    no + 1
                )))
            }
        }
    }
    let names = names.ok_or_else(|| Error::Parse("missing gens line".into()))?;
    if names.is_empty() {
        return Err(Error::Parse("no generators".into()));
    }
    let meridional = relators.iter().all(|r| abelianization_exponent(r) == 0);
    Presentation::new(names, relators, meridional)
}
