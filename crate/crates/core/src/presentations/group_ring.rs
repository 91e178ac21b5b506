//! The integral group ring of a free group.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::FreeWord;

/// Finite formal sum `sum n_w w` with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        Self::from_terms([(w, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, i64)>) -> Self {
        let mut e = Self::default();
        for (w, n) in terms {
            e.add_term(w, n);
        }
        e
    }

    fn add_term(&mut self, w: FreeWord, n: i64) {
        if n == 0 {
            return;
        }
        let slot = self.terms.entry(w).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &n)| (w, n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &FreeWord) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, &n)) in self.terms.iter().enumerate() {
            let body = match (n.abs(), w.is_empty()) {
                (1, false) => w.render(names),
                (a, true) => a.to_string(),
                (a, false) => format!("{a}*{}", w.render(names)),
            };
            match (i, n < 0) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl Add<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, &n) in &rhs.terms {
            out.add_term(w.clone(), n);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &n)| (w.clone(), -n)).collect(),
        }
    }
}

impl Sub<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &rhs.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..26u8)
            .map(|i| ((b'a' + i) as char).to_string())
            .collect();
        write!(f, "{}", self.render(&names))
    }
}
