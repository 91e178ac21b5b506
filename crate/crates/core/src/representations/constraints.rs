//! Constraint files for the representation solver.
//!
//! Line forms (blank lines and `#` comments ignored):
//!
//! ```text
//! trace <word> = <re> [<im>]          fixed trace target
//! var <name> = <word> <word> ...      the traces of these words share a coordinate
//! curve <polynomial in the coordinates>
//! sweep <name> <re0> <im0> <re1> <im1> <steps>
//! ```
//!
//! A sweep moves one coordinate along a segment; with a curve, the one
//! remaining coordinate is solved from the curve equation, one sample per
//! root.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyalgebra::{complex_roots, parse_multipoly, MultiPoly};
use crate::presentations::{FreeWord, Presentation};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TraceConstraint {
    pub word: FreeWord,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub var: String,
    pub start: Complex64,
    pub end: Complex64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSet {
    pub traces: Vec<TraceConstraint>,
    pub vars: Vec<(String, Vec<FreeWord>)>,
    pub curve: Option<MultiPoly<BigRational>>,
    pub sweep: Option<Sweep>,
}

/// One point of a sweep: coordinate values and the full target list.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub coords: Vec<(String, Complex64)>,
    pub targets: Vec<TraceConstraint>,
}

fn num(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

pub fn parse_constraints(text: &str, p: &Presentation) -> Result<ConstraintSet> {
    let mut set = ConstraintSet {
        traces: Vec::new(),
        vars: Vec::new(),
        curve: None,
        sweep: None,
    };
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("incomplete line"))?;
        match key {
            "trace" => {
                let (w, v) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected 'trace <word> = <re> <im>'"))?;
                let parts: Vec<&str> = v.split_whitespace().collect();
                let value = match parts.as_slice() {
                    [re] => Complex64::new(num(re)?, 0.0),
                    [re, im] => Complex64::new(num(re)?, num(im)?),
                    _ => return Err(err("expected one or two numbers")),
                };
                set.traces.push(TraceConstraint {
                    word: FreeWord::parse(w, p.names())?,
                    value,
                });
            }
            "var" => {
                let (name, ws) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected 'var <name> = <words>'"))?;
                let words = ws
                    .split_whitespace()
                    .map(|w| FreeWord::parse(w, p.names()))
                    .collect::<Result<Vec<_>>>()?;
                if words.is_empty() {
                    return Err(err("variable without words"));
                }
                set.vars.push((name.trim().to_string(), words));
            }
            "curve" => {
                if set.curve.is_some() {
                    return Err(err("only one curve is supported"));
                }
                set.curve = Some(parse_multipoly(rest)?);
            }
            "sweep" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [var, a, b, c, d, steps] = parts.as_slice() else {
                    return Err(err(
                        "expected 'sweep <name> <re0> <im0> <re1> <im1> <steps>'",
                    ));
                };
                let steps: usize = steps.parse().map_err(|_| err("bad step count"))?;
                if steps == 0 {
                    return Err(err("step count must be positive"));
                }
                set.sweep = Some(Sweep {
                    var: var.to_string(),
                    start: Complex64::new(num(a)?, num(b)?),
                    end: Complex64::new(num(c)?, num(d)?),
                    steps,
                });
            }
            other => return Err(err(&format!("unknown key {other:?}"))),
        }
    }
    Ok(set)
}

impl ConstraintSet {
    fn bind(&self, coords: &[(String, Complex64)]) -> Result<Vec<TraceConstraint>> {
        let mut out = self.traces.clone();
        for (name, words) in &self.vars {
            let v = coords
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::InvalidInput(format!("coordinate {name} has no value")))?
                .1;
            out.extend(words.iter().map(|w| TraceConstraint {
                word: w.clone(),
                value: v,
            }));
        }
        Ok(out)
    }

    /// Expands the sweep (if any) into concrete target lists.
    pub fn samples(&self, tol: f64, cluster: f64) -> Result<Vec<Sample>> {
        let Some(sw) = &self.sweep else {
            return Ok(vec![Sample {
                coords: Vec::new(),
                targets: self.bind(&[])?,
            }]);
        };
        if !self.vars.iter().any(|(n, _)| *n == sw.var) {
            return Err(Error::InvalidInput(format!(
                "sweep over undeclared coordinate {}",
                sw.var
            )));
        }
        let others: Vec<&String> = self
            .vars
            .iter()
            .map(|(n, _)| n)
            .filter(|n| **n != sw.var)
            .collect();
        let mut out = Vec::new();
        for i in 0..sw.steps {
            let s = if sw.steps == 1 {
                0.0
            } else {
                i as f64 / (sw.steps - 1) as f64
            };
            let v = sw.start + (sw.end - sw.start) * s;
            let base = vec![(sw.var.clone(), v)];
            match (&self.curve, others.as_slice()) {
                (None, []) => out.push(Sample { targets: self.bind(&base)?, coords: base }),
                (Some(curve), [other]) => {
                    let cc = curve.map_coeffs(|c| c.to_complex());
                    let uni = cc.substitute_value(&sw.var, v)?;
                    let lp = uni.to_laurent(other)?.cleaned(tol);
                    if lp.span().unwrap_or(0) == 0 {
                        continue;
                    }
                    for r in complex_roots(&lp, 1e-8, cluster)? {
                        let mut coords = base.clone();
                        coords.push(((*other).clone(), r.value));
                        out.push(Sample { targets: self.bind(&coords)?, coords });
                    }
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "a sweep needs either no other coordinates or a curve and exactly one other coordinate".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn fixed_traces() {
        let p = parse_presentation("gens: a b\nrel: abaBAB").unwrap();
        let c = parse_constraints("trace a = 1.5 0\ntrace ab = 0.25\n", &p).unwrap();
        assert_eq!(c.traces.len(), 2);
        assert_eq!(c.traces[1].value, Complex64::new(0.25, 0.0));
        assert_eq!(c.samples(1e-10, 1e-8).unwrap().len(), 1);
        assert!(parse_constraints("trace q = 1 0", &p).is_err());
        assert!(parse_constraints("bogus a", &p).is_err());
    }

    #[test]
    fn curve_sweep() {
        let p = parse_presentation("gens: a b c\nrel: aBabAbCbCBcB\nrel: bCbcBcAcACaC").unwrap();
        let text = "var y = a b c\nvar z = ab bc ca\ncurve y^2 - z - 1\nsweep y 1 0.5 2 0.5 4\n";
        let c = parse_constraints(text, &p).unwrap();
        let s = c.samples(1e-10, 1e-8).unwrap();
        assert_eq!(s.len(), 4);
        for smp in &s {
            let y = smp.coords[0].1;
            let z = smp.coords[1].1;
            assert!((y * y - z - 1.0).norm() < 1e-9);
            assert_eq!(smp.targets.len(), 6);
        }
    }
}
