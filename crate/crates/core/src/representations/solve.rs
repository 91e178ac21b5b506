//! Numerical solution of representation equations with trace targets.
//!
//! Unknowns are gauge-fixed: the first generator is `[[m, 1], [0, 1/m]]`,
//! the second `[[n, 0], [u, 1/n]]`, the rest are free 2x2 matrices whose
//! determinant enters the residual. The residual stacks the entries of
//! `rho(r) - I` for every relator, `tr rho(w) - tau` for every trace
//! target, and `det - 1` for every free generator. It is minimized by
//! Levenberg-Marquardt with a central-difference Jacobian, from seeded
//! random starts that already meet the trace targets linear in each
//! generator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::constraints::TraceConstraint;
use super::Representation;
use crate::error::{Error, Result};
use crate::polyalgebra::SquareMatrix;
use crate::presentations::{FreeWord, Presentation};

type C = Complex64;
type M2 = [C; 4];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Success threshold on the Euclidean norm of the residual vector.
    pub tolerance: f64,
    pub max_iter: usize,
    pub require_irreducible: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            restarts: 50,
            tolerance: 1e-10,
            max_iter: 300,
            require_irreducible: true,
        }
    }
}

fn mul(a: &M2, b: &M2) -> M2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn inv(a: &M2) -> M2 {
    let d = a[0] * a[3] - a[1] * a[2];
    [a[3] / d, -a[1] / d, -a[2] / d, a[0] / d]
}

const ONE: C = C::new(1.0, 0.0);
const ZERO: C = C::new(0.0, 0.0);
const ID: M2 = [ONE, ZERO, ZERO, ONE];

struct Problem<'a> {
    gens: usize,
    relators: &'a [FreeWord],
    targets: &'a [TraceConstraint],
}

impl Problem<'_> {
    fn params(&self) -> usize {
        match self.gens {
            1 => 1,
            n => 3 + 4 * (n - 2),
        }
    }

    fn images(&self, x: &[C]) -> Vec<M2> {
        let mut out = vec![[x[0], ONE, ZERO, ONE / x[0]]];
        if self.gens >= 2 {
            out.push([x[1], ZERO, x[2], ONE / x[1]]);
        }
        // a partial parameter vector yields the images it determines
        for g in (2..self.gens).take_while(|g| 3 + 4 * (g - 2) + 3 < x.len()) {
            let o = 3 + 4 * (g - 2);
            out.push([x[o], x[o + 1], x[o + 2], x[o + 3]]);
        }
        out
    }

    fn word(imgs: &[M2], invs: &[M2], w: &FreeWord) -> M2 {
        w.letters().iter().fold(ID, |acc, &(g, e)| {
            mul(&acc, if e > 0 { &imgs[g] } else { &invs[g] })
        })
    }

    fn residual(&self, x: &[C]) -> Vec<C> {
        let imgs = self.images(x);
        let invs: Vec<M2> = imgs.iter().map(inv).collect();
        let mut f = Vec::with_capacity(4 * self.relators.len() + self.targets.len() + imgs.len());
        for r in self.relators {
            let m = Self::word(&imgs, &invs, r);
            f.extend([m[0] - ONE, m[1], m[2], m[3] - ONE]);
        }
        for t in self.targets {
            let m = Self::word(&imgs, &invs, &t.word);
            f.push(m[0] + m[3] - t.value);
        }
        for m in imgs.iter().skip(2) {
            f.push(m[0] * m[3] - m[1] * m[2] - ONE);
        }
        f
    }

    fn jacobian(&self, x: &[C], rows: usize) -> DMatrix<C> {
        let mut j = DMatrix::zeros(rows, x.len());
        let mut xp = x.to_vec();
        for k in 0..x.len() {
            let h = 1e-6 * x[k].norm().max(1.0);
            xp[k] = x[k] + h;
            let fp = self.residual(&xp);
            xp[k] = x[k] - h;
            let fm = self.residual(&xp);
            xp[k] = x[k];
            for i in 0..rows {
                j[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        j
    }

    fn norm(f: &[C]) -> f64 {
        f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Levenberg-Marquardt from `x`; returns the final point and residual norm.
    fn minimize(&self, mut x: Vec<C>, opts: &SolveOptions) -> (Vec<C>, f64) {
        let mut f = self.residual(&x);
        let mut cost = Self::norm(&f);
        let mut mu = 1e-3;
        for _ in 0..opts.max_iter {
            if !cost.is_finite() || cost <= opts.tolerance * 1e-3 {
                break;
            }
            let j = self.jacobian(&x, f.len());
            let jh = j.adjoint();
            let a = &jh * &j;
            let g = &jh * DVector::from_vec(f.clone());
            let mut improved = false;
            while mu < 1e12 {
                let mut lhs = a.clone();
                for d in 0..lhs.nrows() {
                    lhs[(d, d)] += C::new(mu, 0.0);
                }
                let Some(step) = lhs.lu().solve(&(-&g)) else {
                    mu *= 10.0;
                    continue;
                };
                let xn: Vec<C> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let fn_ = self.residual(&xn);
                let cn = Self::norm(&fn_);
                if cn.is_finite() && cn < cost {
                    x = xn;
                    f = fn_;
                    cost = cn;
                    mu = (mu * 0.3).max(1e-15);
                    improved = true;
                    break;
                }
                mu *= 10.0;
            }
            if !improved {
                break;
            }
        }
        (x, cost)
    }

    fn start(&self, rng: &mut ChaCha8Rng) -> Vec<C> {
        let rc = |rng: &mut ChaCha8Rng, s: f64| C::new(rng.gen_range(-s..s), rng.gen_range(-s..s));
        let eig = |tau: C| {
            let disc = (tau * tau - 4.0).sqrt();
            (tau + disc) / 2.0
        };
        let gen_trace = |g: usize| {
            self.targets
                .iter()
                .find(|t| t.word.letters().len() == 1 && t.word.letters()[0].0 == g)
                .map(|t| t.value)
        };
        let t0 = gen_trace(0);
        let m = t0
            .map(eig)
            .filter(|z| z.norm() > 1e-12)
            .unwrap_or_else(|| ONE + rc(rng, 1.0));
        let mut x = vec![m];
        if self.gens >= 2 {
            let mut n = gen_trace(1)
                .or(t0)
                .map(eig)
                .filter(|z| z.norm() > 1e-12)
                .unwrap_or_else(|| ONE + rc(rng, 1.0));
            if rng.gen_bool(0.5) {
                n = ONE / n;
            }
            // tr(ab) = mn + u + 1/(mn) in this gauge
            let product = self.targets.iter().find(|t| {
                let l = t.word.letters();
                l.len() == 2
                    && l.iter().all(|&(_, e)| e == 1)
                    && l[0].0 != l[1].0
                    && l[0].0 + l[1].0 == 1
            });
            let u = match product {
                Some(t) => t.value - m * n - ONE / (m * n),
                None => rc(rng, 2.0),
            };
            x.push(n);
            x.push(u);
        }
        let a: M2 = [m, ONE, ZERO, ONE / m];
        for g in 2..self.gens {
            // a random SL(2) conjugate of the first generator, moved onto the
            // trace targets that are linear in this generator
            let (p, q, r) = (ONE + rc(rng, 1.0), rc(rng, 1.0), rc(rng, 1.0));
            let h: M2 = [p, q, r, (ONE + q * r) / p];
            let c0 = mul(&mul(&h, &a), &inv(&h));
            let c = self.fit_linear_targets(g, &self.images(&x), c0, rng.gen_bool(0.5));
            x.extend(c);
        }
        x
    }

    /// Targets `tr(X c Y) = tau` where `c` is generator `g` occurring once and
    /// `X`, `Y` involve earlier generators only; as rows of `tr(YX c)`.
    fn linear_rows(&self, g: usize, imgs: &[M2]) -> Vec<([C; 4], C)> {
        let invs: Vec<M2> = imgs.iter().map(inv).collect();
        let mut rows = Vec::new();
        for t in self.targets {
            let l = t.word.letters();
            let hits: Vec<usize> = (0..l.len()).filter(|&i| l[i].0 == g).collect();
            if hits.len() != 1 || l[hits[0]].1 != 1 || l.iter().any(|&(h, _)| h > g) {
                continue;
            }
            let i = hits[0];
            let w = |part: &[(usize, i8)]| {
                part.iter().fold(ID, |acc, &(h, e)| {
                    mul(&acc, if e > 0 { &imgs[h] } else { &invs[h] })
                })
            };
            let mm = mul(&w(&l[i + 1..]), &w(&l[..i]));
            rows.push(([mm[0], mm[2], mm[1], mm[3]], t.value));
        }
        rows
    }

    /// Least-change correction of `c0` onto the linear targets; with three
    /// independent targets the remaining line is intersected with `det = 1`.
    fn fit_linear_targets(&self, g: usize, imgs: &[M2], c0: M2, other_root: bool) -> M2 {
        let rows = self.linear_rows(g, imgs);
        if rows.is_empty() || rows.len() > 3 {
            return c0;
        }
        let k = rows.len();
        let a = DMatrix::from_fn(k, 4, |i, j| rows[i].0[j]);
        let b = DVector::from_fn(k, |i, _| rows[i].1);
        let x0 = DVector::from_column_slice(&c0);
        let ah = a.adjoint();
        let Some(y) = (&a * &ah).lu().solve(&(b - &a * &x0)) else {
            return c0;
        };
        let x = x0 + ah * y;
        let mut c = [x[0], x[1], x[2], x[3]];
        if k == 3 {
            // kernel of the 3x4 system from signed maximal minors
            let minor = |skip: usize| {
                let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
                let e = |i: usize, j: usize| a[(i, cols[j])];
                e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                    - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                    + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
            };
            let d: [C; 4] = [minor(0), -minor(1), minor(2), -minor(3)];
            let qa = d[0] * d[3] - d[1] * d[2];
            let qb = c[0] * d[3] + c[3] * d[0] - c[1] * d[2] - c[2] * d[1];
            let qc = c[0] * c[3] - c[1] * c[2] - ONE;
            let s = if qa.norm() > 1e-12 {
                let disc = (qb * qb - 4.0 * qa * qc).sqrt();
                let sign = if other_root { -1.0 } else { 1.0 };
                (-qb + sign * disc) / (2.0 * qa)
            } else if qb.norm() > 1e-12 {
                -qc / qb
            } else {
                ZERO
            };
            for (ci, di) in c.iter_mut().zip(d) {
                *ci += s * di;
            }
        }
        c
    }
}

/// Restarts are run in parallel batches; the lowest-index success wins, so
/// the result depends only on the inputs and the seed.
pub fn solve_representation(
    p: &Presentation,
    targets: &[TraceConstraint],
    opts: &SolveOptions,
) -> Result<Representation<Complex64>> {
    check_consistency(p, targets)?;
    let prob = Problem {
        gens: p.generator_count(),
        relators: p.relators(),
        targets,
    };
    let attempt = |idx: usize| -> Option<(Vec<C>, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(idx as u64);
        let x0 = prob.start(&mut rng);
        debug_assert_eq!(x0.len(), prob.params());
        let (x, cost) = prob.minimize(x0, opts);
        (cost <= opts.tolerance).then_some((x, cost))
    };
    let batch = rayon::current_num_threads().max(1);
    let mut converged = 0;
    let mut best = f64::INFINITY;
    let mut start = 0;
    while start < opts.restarts {
        let end = (start + batch).min(opts.restarts);
        let results: Vec<Option<(Vec<C>, f64)>> =
            (start..end).into_par_iter().map(attempt).collect();
        for (x, cost) in results.into_iter().flatten() {
            converged += 1;
            best = best.min(cost);
            let imgs = prob.images(&x);
            let mats = imgs
                .iter()
                .map(|m| SquareMatrix::from_rows(vec![vec![m[0], m[1]], vec![m[2], m[3]]]))
                .collect();
            let rep = Representation::new(p, mats)?;
            if opts.require_irreducible && rep.is_reducible(1e-6) {
                continue;
            }
            return Ok(rep);
        }
        start = end;
    }
    if converged > 0 {
        Err(Error::ReducibleSolution(opts.restarts))
    } else {
        Err(Error::NonConvergence(format!(
            "no start out of {} reached residual {:.1e}",
            opts.restarts, opts.tolerance
        )))
    }
}

/// Conjugate generators have equal traces; contradictory single-generator
/// targets on a meridional presentation, or one word given two different
/// targets, cannot be met.
fn check_consistency(p: &Presentation, targets: &[TraceConstraint]) -> Result<()> {
    for (i, a) in targets.iter().enumerate() {
        for b in &targets[i + 1..] {
            if a.word == b.word && (a.value - b.value).norm() > 1e-9 {
                return Err(Error::InconsistentConstraints(format!(
                    "two targets for {}",
                    a.word.render(p.names())
                )));
            }
            let single = |t: &TraceConstraint| t.word.len() == 1;
            if p.is_meridional() && single(a) && single(b) && (a.value - b.value).norm() > 1e-9 {
                return Err(Error::InconsistentConstraints(format!(
                    "meridians {} and {} are conjugate, so their traces must agree",
                    a.word.render(p.names()),
                    b.word.render(p.names())
                )));
            }
        }
    }
    Ok(())
}
