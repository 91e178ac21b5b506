//! One function per subcommand, each returning text and a JSON value.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use talex::charcurves::{pipeline, PipelineOptions};
use talex::polyalgebra::parse_laurent;
use talex::presentations::{parse_pd, parse_presentation, pd_to_wirtinger, Presentation};
use talex::representations::{
    abelian_rep, parse_constraints, satellite_alexander, solve_representation, Representation,
    Sample, SolveOptions,
};
use talex::scalar::parse_rational;
use talex::signature::{
    arc_samples, averaged_signature, is_identically_zero, lt_signature_detail, signature_jumps,
    SeifertMatrix,
};
use talex::twisted::{
    alexander as alexander_poly, determines_genus, genus_lower_bound, wada_invariant, TwistedAlex,
};
use talex::{BigRational, Error, LaurentPoly, LaurentRational, QLaurent, Scalar, Tolerances};

use crate::{Common, KnotInput};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }

    /// Exit status; 2 is left to argument parsing.
    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "usage" => 2,
            "parse" => 3,
            "invalid-input" => 4,
            "zero-determinant" => 5,
            "vanishing-denominator" => 6,
            "non-polynomial" => 7,
            "non-convergence" => 8,
            "reducible-solution" => 9,
            "inconsistent-constraints" => 10,
            "certification" => 11,
            "degree-exceeds-bound" => 12,
            "io" => 13,
            _ => 1,
        }
    }
}

pub struct Output {
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn tolerances(c: &Common) -> Result<Tolerances, CliError> {
    let tol = Tolerances {
        clean: c.tol_clean,
        cluster: c.tol_cluster,
        residual: c.tol_residual,
        ..Tolerances::default()
    };
    if !tol.is_valid() {
        return Err(Error::InvalidInput("tolerances must be positive and finite".into()).into());
    }
    Ok(tol)
}

fn solve_options(c: &Common) -> SolveOptions {
    SolveOptions {
        seed: c.seed,
        ..SolveOptions::default()
    }
}

fn presentation(knot: &KnotInput) -> Result<Presentation, CliError> {
    match (&knot.pres, &knot.pd) {
        (Some(p), None) => Ok(parse_presentation(&read(p)?)?),
        (None, Some(p)) => Ok(pd_to_wirtinger(&parse_pd(&read(p)?)?)?),
        _ => Err(CliError::Usage(
            "give exactly one of --pres and --pd".into(),
        )),
    }
}

fn alexander_file(path: &Path) -> Result<QLaurent, CliError> {
    let text = read(path)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::Parse(format!("{}: no polynomial", path.display())))?;
    Ok(parse_laurent(line, "t")?)
}

pub fn alexander(knot: &KnotInput) -> Result<Output, CliError> {
    let p = presentation(knot)?;
    let a = alexander_poly(&p)?;
    Ok(Output {
        text: format!("{a}\n"),
        json: json!({"alexander": a.to_string(), "coefficients": a.to_json(), "presentation": p.to_text()}),
    })
}

/// Floating coefficients are shown to 10 decimals, with parts below that
/// dropped.
fn show_poly<F: Scalar>(p: &LaurentPoly<F>) -> String {
    if F::EXACT {
        return p.to_string();
    }
    let round = |x: f64| {
        let r = (x * 1e10).round() / 1e10;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let c = p
        .to_complex()
        .map(|z| Complex64::new(round(z.re), round(z.im)));
    c.to_string()
}

fn show<F: Scalar>(r: &LaurentRational<F>) -> String {
    if r.is_polynomial() {
        show_poly(r.numerator())
    } else {
        format!(
            "({}) / ({})",
            show_poly(r.numerator()),
            show_poly(r.denominator())
        )
    }
}

fn fmt_c(z: Complex64) -> String {
    let c = show_poly(&LaurentPoly::constant(z));
    if c.contains(' ') {
        format!("({c})")
    } else {
        c
    }
}

fn twisted_entry<F: Scalar>(ta: &TwistedAlex<F>, rho: &Representation<F>) -> (String, Value) {
    let nontrivial = !rho.is_abelian(if F::EXACT { 0.0 } else { 1e-9 });
    let text = match ta.degree() {
        Some(d) => format!(
            "{}    (degree {d}, leading {}, monic {})\n",
            show(ta.value()),
            fmt_c(ta.leading()),
            ta.is_monic()
        ),
        None => format!("{}\n", show(ta.value())),
    };
    let mut v = ta.to_json(nontrivial);
    v["residual"] = json!(rho.residual());
    (text, v)
}

fn solve_sample(
    p: &Presentation,
    s: &Sample,
    c: &Common,
    tol: &Tolerances,
) -> Result<Representation<Complex64>, CliError> {
    let rho = solve_representation(p, &s.targets, &solve_options(c))?;
    if rho.residual() > tol.residual {
        return Err(
            Error::NonConvergence(format!("residual {:.3e} above bound", rho.residual())).into(),
        );
    }
    Ok(rho)
}

fn coords_json(s: &Sample) -> Value {
    Value::Object(
        s.coords
            .iter()
            .map(|(n, z)| (n.clone(), cjson(*z)))
            .collect(),
    )
}

fn coords_text(s: &Sample) -> String {
    s.coords
        .iter()
        .map(|(n, z)| format!("{n} = {}", fmt_c(*z)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn samples(p: &Presentation, path: &Path, tol: &Tolerances) -> Result<Vec<Sample>, CliError> {
    let set = parse_constraints(&read(path)?, p)?;
    Ok(set.samples(tol.clean, tol.cluster)?)
}

pub fn twisted(
    knot: &KnotInput,
    rep: Option<&Path>,
    constraints: Option<&Path>,
    lambda: Option<&str>,
    c: &Common,
    tol: &Tolerances,
) -> Result<Output, CliError> {
    let p = presentation(knot)?;
    match (rep, constraints, lambda) {
        (Some(path), None, None) => {
            let v: Value =
                serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{e}")))?;
            let exact = v["generators"].as_array().is_some_and(|g| {
                g.iter().all(|m| {
                    m.as_array()
                        .is_some_and(|es| es.iter().all(Value::is_string))
                })
            });
            let (text, json) = if exact {
                let rho = Representation::<BigRational>::from_json(&p, &v)?;
                twisted_entry(&wada_invariant(&p, &rho, None, tol)?, &rho)
            } else {
                let rho = Representation::<Complex64>::from_json(&p, &v)?;
                if rho.residual() > tol.residual {
                    return Err(Error::InvalidInput(format!(
                        "relator residual {:.3e}",
                        rho.residual()
                    ))
                    .into());
                }
                twisted_entry(&wada_invariant(&p, &rho, None, tol)?, &rho)
            };
            Ok(Output {
                text,
                json: json!({"twisted": json}),
            })
        }
        (None, Some(path), None) => {
            let mut text = String::new();
            let mut items = Vec::new();
            for s in samples(&p, path, tol)? {
                let rho = solve_sample(&p, &s, c, tol)?;
                let (t, mut v) = twisted_entry(&wada_invariant(&p, &rho, None, tol)?, &rho);
                v["coords"] = coords_json(&s);
                v["representation"] = rho.to_json();
                if !s.coords.is_empty() {
                    text.push_str(&format!("[{}] ", coords_text(&s)));
                }
                text.push_str(&t);
                items.push(v);
            }
            Ok(Output {
                text,
                json: json!({"twisted": items}),
            })
        }
        (None, None, Some(l)) => {
            let lam = parse_rational(l)?;
            let rho = abelian_rep(&p, lam)?;
            let (text, json) = twisted_entry(&wada_invariant(&p, &rho, None, tol)?, &rho);
            Ok(Output {
                text,
                json: json!({"twisted": json}),
            })
        }
        _ => Err(CliError::Usage(
            "give exactly one of --rep, --constraints and --lambda".into(),
        )),
    }
}

type Scanned<T> = Vec<(Sample, Result<T, CliError>)>;

/// Runs every sample; a sample whose solve fails is reported, not fatal.
fn scan<T>(
    p: &Presentation,
    path: &Path,
    c: &Common,
    tol: &Tolerances,
    mut each: impl FnMut(&Sample, &TwistedAlex<Complex64>) -> Result<T, CliError>,
) -> Result<Scanned<T>, CliError> {
    let mut out = Vec::new();
    for s in samples(p, path, tol)? {
        let r = solve_sample(p, &s, c, tol)
            .and_then(|rho| Ok(wada_invariant(p, &rho, None, tol)?))
            .and_then(|ta| each(&s, &ta));
        out.push((s, r));
    }
    Ok(out)
}

fn deg_text(d: Option<i32>) -> String {
    d.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn failure(e: &CliError) -> Value {
    json!({"error": e.kind(), "reason": e.to_string()})
}

pub fn monic_scan(
    knot: &KnotInput,
    path: &Path,
    c: &Common,
    tol: &Tolerances,
) -> Result<Output, CliError> {
    let p = presentation(knot)?;
    let rows = scan(&p, path, c, tol, |_, ta| {
        Ok((ta.leading(), ta.degree(), ta.is_monic()))
    })?;
    let mut text = String::new();
    let mut items = Vec::new();
    let mut hits = 0;
    for (s, r) in &rows {
        match r {
            Ok((lead, deg, monic)) => {
                hits += *monic as usize;
                let mark = if *monic { "  monic" } else { "" };
                text.push_str(&format!(
                    "[{}] leading {} degree {}{mark}\n",
                    coords_text(s),
                    fmt_c(*lead),
                    deg_text(*deg)
                ));
                items.push(json!({"coords": coords_json(s), "leading": cjson(*lead), "degree": deg, "monic": monic}));
            }
            Err(e) => {
                text.push_str(&format!("[{}] failed: {e}\n", coords_text(s)));
                items.push(json!({"coords": coords_json(s), "failure": failure(e)}));
            }
        }
    }
    text.push_str(&format!("{hits} monic of {} samples\n", rows.len()));
    Ok(Output {
        text,
        json: json!({"samples": items, "monic": hits}),
    })
}

pub fn genus(
    knot: &KnotInput,
    path: &Path,
    g: u32,
    c: &Common,
    tol: &Tolerances,
) -> Result<Output, CliError> {
    if g == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()).into());
    }
    let p = presentation(knot)?;
    let bound = 4 * g as i32 - 2;
    let rows = scan(&p, path, c, tol, |_, ta| {
        if let Some(d) = ta.degree().filter(|&d| d > bound) {
            return Err(Error::DegreeExceedsBound { degree: d, bound }.into());
        }
        Ok((
            ta.degree(),
            determines_genus(ta, g),
            genus_lower_bound(ta, true),
        ))
    })?;
    let mut text = String::new();
    let mut items = Vec::new();
    let (mut det, mut below) = (0, 0);
    for (s, r) in &rows {
        match r {
            Ok((deg, d, lb)) => {
                if *d {
                    det += 1;
                } else {
                    below += 1;
                }
                text.push_str(&format!(
                    "[{}] degree {} of {bound}, lower bound {lb}\n",
                    coords_text(s),
                    deg_text(*deg)
                ));
                items.push(json!({"coords": coords_json(s), "degree": deg, "determines_genus": d, "genus_lower_bound": lb}));
            }
            Err(e) => {
                text.push_str(&format!("[{}] failed: {e}\n", coords_text(s)));
                items.push(json!({"coords": coords_json(s), "failure": failure(e)}));
            }
        }
    }
    text.push_str(&format!("{det} determine the genus, {below} do not\n"));
    Ok(Output {
        text,
        json: json!({"genus": g, "bound": bound, "samples": items, "determines": det, "does_not_determine": below}),
    })
}

pub fn signature(path: &Path, angle: f64) -> Result<Output, CliError> {
    let v = SeifertMatrix::parse(&read(path)?)?;
    let delta = v.alexander();
    let omega = Complex64::from_polar(1.0, angle);
    let at = lt_signature_detail(&v, omega)?;
    let avg = averaged_signature(&v, omega, None)?;
    let jumps = signature_jumps(&v, &delta)?;
    let zero = is_identically_zero(&v, &delta)?;
    let mut arcs = Vec::new();
    for theta in arc_samples(&delta)? {
        let s = lt_signature_detail(&v, Complex64::from_polar(1.0, theta))?;
        arcs.push((theta, s.signature));
    }
    let mut text = format!(
        "alexander {delta}\nsignature at angle {angle} = {} (nullity {})\naveraged {avg}\n",
        at.signature, at.nullity
    );
    for j in &jumps {
        text.push_str(&format!(
            "jump {:+} at angle {} (root multiplicity {})\n",
            j.jump, j.angle, j.multiplicity
        ));
    }
    text.push_str(&format!("identically zero: {zero}\n"));
    Ok(Output {
        text,
        json: json!({
            "alexander": delta.to_string(),
            "angle": angle,
            "angle_over_pi": angle / PI,
            "signature": at.signature,
            "nullity": at.nullity,
            "averaged": avg,
            "jumps": jumps.iter().map(|j| j.to_json()).collect::<Vec<_>>(),
            "arcs": arcs.iter().map(|(t, s)| json!({"angle": t, "signature": s})).collect::<Vec<_>>(),
            "identically_zero": zero,
        }),
    })
}

pub fn satellite(pattern: &Path, companion: &Path, winding: u32) -> Result<Output, CliError> {
    let a = satellite_alexander(
        &alexander_file(pattern)?,
        &alexander_file(companion)?,
        winding,
    );
    Ok(Output {
        text: format!("{a}\n"),
        json: json!({"alexander": a.to_string(), "winding": winding}),
    })
}

pub fn pretzel935(samples: usize, c: &Common, tol: &Tolerances) -> Result<Output, CliError> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample per curve".into()).into());
    }
    let opts = PipelineOptions {
        samples_per_curve: samples,
        solve: solve_options(c),
        tol: *tol,
    };
    let r = pipeline(&opts)?;
    let json = r.to_json();
    let cens = &json["censuses"];
    let text = format!(
        "alexander {}\ncurves: C: {} = 0, C': {} = 0\npsi_2 = {} (max deviation {:.2e} over {} points)\n\
         monic characters on C': {}\ncharacters on C' not determining the genus: {}\npsi_2 on C: {}\n\
         closed loop: {} witnesses, max |leading - 1| = {:.2e}\n",
        r.alexander,
        r.curves[0].poly,
        r.curves[1].poly,
        talex::charcurves::psi2_polynomial(),
        r.psi2.max_deviation,
        r.psi2.samples.len(),
        cens["monic"],
        cens["non-genus"],
        cens["C"].as_str().unwrap_or_default(),
        r.closed_loop.len(),
        r.closed_loop.iter().map(|l| (l.leading - 1.0).norm()).fold(0.0, f64::max),
    );
    Ok(Output { text, json })
}
