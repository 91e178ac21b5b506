//! The trace polynomials `r_m(y1, y2, v)`, the change of variables to
//! `(y, b, w)` and the elimination of `w`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::rat;
use crate::QMultiPoly;

type P = QMultiPoly;

const T: [i64; 5] = [1, -1, 1, -1, 1];

fn c(n: i64) -> P {
    P::constant(rat(n, 1))
}

fn v(name: &str) -> P {
    P::var(name)
}

fn swap(p: &P) -> P {
    p.swap_vars("y1", "y2")
}

/// `r_m` for `0 <= m <= 6`. Intermediate values live in the localization at
/// `y1`; `r_6` itself is polynomial.
pub fn hlm_r(m: u32) -> Result<P> {
    if m > 6 {
        return Err(Error::InvalidInput(format!(
            "r_{m} is only defined for m <= 6"
        )));
    }
    let mut r = vec![P::zero(), P::one(), v("v")];
    let y1 = v("y1");
    let y2 = v("y2");
    let y1_inv = y1.pow_i(-1)?;
    let half = P::constant(rat(1, 2));
    for k in 3..=m as usize {
        let tk = c(T[k - 2]);
        let e = &(&y1_inv * &y2) * &tk;
        let first = -(&e * &swap(&r[k - 3]));
        let two_v_minus = &(&c(2) * &v("v")) - &(&y1 * &y2);
        let second_coeff = &half * &(&(&c(-2) + &y2.pow(2)) + &(&e * &two_v_minus));
        let third_coeff = &half * &(&(&(&c(-2) * &e) + &(&(&y1 * &y2) * &tk)) + &two_v_minus);
        let next = &(&first + &(&second_coeff * &r[k - 2])) + &(&third_coeff * &swap(&r[k - 1]));
        r.push(next);
    }
    Ok(r.swap_remove(m as usize))
}

/// The two factors of `r_6`.
pub fn r6_factors() -> (P, P) {
    let (y1, y2, vv) = (v("y1"), v("y2"), v("v"));
    let y12 = &y1 * &y2;
    let quad = &(&(&(&vv.pow(2) - &(&vv * &y12)) + &y1.pow(2)) + &y2.pow(2)) - &c(3);
    let cubic = &(&(&(&(&vv.pow(3) - &(&vv.pow(2) * &y12)) + &(&vv * &y1.pow(2)))
        + &(&vv * &y2.pow(2)))
        - &vv)
        - &y12;
    (quad, cubic)
}

/// Exact check of the factorization of `r_6`: successive exact division by
/// both factors leaves the constant 1.
pub fn r6_factorization_holds() -> Result<bool> {
    let r6 = hlm_r(6)?;
    let (f, g) = r6_factors();
    Ok(match r6.exact_divide(&f).and_then(|q| q.exact_divide(&g)) {
        Some(q) => q.support_vars().is_empty() && q.constant_term().is_one(),
        None => false,
    })
}

/// `y1^5 r_6` rewritten in `y = y2`, `b = y1^2 - 2`, `w = y1 v`.
pub fn change_of_variables() -> Result<P> {
    let g = (&v("y1").pow(5) * &hlm_r(6)?).with_vars(&["y1", "y2", "v"])?;
    let b2 = &v("b") + &c(2);
    let mut f = P::zero();
    for (e, coeff) in g.terms() {
        let (a, ey, k) = (e[0], e[1], e[2]);
        let rest = a - k;
        if rest < 0 || rest % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "monomial y1^{a} y2^{ey} v^{k} leaves an unpaired power of y1"
            )));
        }
        let mono = P::monomial(coeff.clone(), &[("y", ey), ("w", k)]);
        f = &f + &(&mono * &b2.pow((rest / 2) as u32));
    }
    Ok(f)
}

/// Inverse substitution `y -> y2`, `b -> y1^2 - 2`, `w -> y1 v`.
pub fn undo_change_of_variables(f: &P) -> Result<P> {
    let back = f.substitute("y", &v("y2"))?;
    let back = back.substitute("b", &(&v("y1").pow(2) - &c(2)))?;
    back.substitute("w", &(&v("y1") * &v("v")))
}

/// The two factors of `f` at `b = -1`.
pub fn b_minus_one_factors() -> (P, P) {
    let (y, w) = (v("y"), v("w"));
    let quad = &(&(&w.pow(2) - &(&w * &y)) + &y.pow(2)) - &c(2);
    let cubic = &(&(&w.pow(3) - &(&w.pow(2) * &y)) + &(&w * &y.pow(2))) - &y;
    (quad, cubic)
}

/// `(b + 2)(w y - b - z) - w^2`, the equation relating `z` to the others.
pub fn product_trace_relation() -> P {
    let (y, b, w, z) = (v("y"), v("b"), v("w"), v("z"));
    &(&(&b + &c(2)) * &(&(&(&w * &y) - &b) - &z)) - &w.pow(2)
}

/// The defining polynomial of `C`.
pub fn curve_c_poly() -> P {
    let (y, z) = (v("y"), v("z"));
    &(&y.pow(2) - &z) - &c(1)
}

/// The defining polynomial of `C'`.
pub fn curve_c_prime_poly() -> P {
    let (y, z) = (v("y"), v("z"));
    let terms: [(i64, i32, i32); 9] = [
        (1, 4, 1),
        (-2, 4, 0),
        (-2, 2, 2),
        (5, 2, 1),
        (-2, 2, 0),
        (1, 0, 3),
        (-3, 0, 2),
        (3, 0, 1),
        (-1, 0, 0),
    ];
    terms.iter().fold(P::zero(), |acc, &(k, a, b)| {
        &acc + &(&c(k) * &(&y.pow(a as u32) * &z.pow(b as u32)))
    })
}

/// Result of eliminating `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    /// `f(y, -1, w)`.
    pub at_b_minus_one: P,
    /// `f(y, -1, w)` agrees with the product of its two known factors up to a
    /// nonzero rational constant.
    pub factors_match: bool,
    pub resultant: P,
    /// `Res_w / ((y^2 - z - 1)^2 C')`, a nonzero rational constant.
    pub scalar: BigRational,
}

/// Resultant in `w` of `f(y, -1, w)` and the product-trace relation at
/// `b = -1`, certified against `(y^2 - z - 1)^2 C'` by exact division in
/// both directions.
pub fn eliminate_w() -> Result<Elimination> {
    let minus_one = rat(-1, 1);
    let f = change_of_variables()?.substitute_value("b", minus_one.clone())?;
    let (qa, qb) = b_minus_one_factors();
    let factors_match = f.equal_up_to_scalar(&(&qa * &qb));
    let q = product_trace_relation().substitute_value("b", minus_one)?;
    let res = f.resultant(&q, "w")?;
    let expected = &curve_c_poly().pow(2) * &curve_c_prime_poly();
    let fwd = res.exact_divide(&expected);
    let back = expected.exact_divide(&res);
    let scalar = match (fwd, back) {
        (Some(a), Some(_)) if a.support_vars().is_empty() && !a.is_zero() => a.constant_term(),
        _ => {
            return Err(Error::Certification(
                "resultant does not match (y^2 - z - 1)^2 C'".into(),
            ))
        }
    };
    Ok(Elimination {
        at_b_minus_one: f,
        factors_match,
        resultant: res,
        scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::parse_multipoly;
    use num_complex::Complex64;

    #[test]
    fn base_cases_and_small_terms() {
        assert!(hlm_r(0).unwrap().is_zero());
        assert!(hlm_r(1).unwrap().is_one());
        assert_eq!(hlm_r(2).unwrap(), v("v"));
        assert_eq!(
            hlm_r(3).unwrap(),
            parse_multipoly("v^2 - v y1 y2 + y2^2 - 1").unwrap()
        );
        assert_eq!(
            hlm_r(4).unwrap(),
            parse_multipoly("v^3 - v^2 y1 y2 + v y1^2 + v y2^2 - 2v - y1 y2").unwrap()
        );
        assert!(hlm_r(7).is_err());
    }

    #[test]
    fn third_term_uses_swapped_arguments() {
        // By hand: with r_1 = 1 and r_2 = v symmetric in y1, y2, only the y1^-1
        // factors make the swap visible, and they cancel to v^2 - v y1 y2 + y2^2 - 1.
        let r3 = hlm_r(3).unwrap();
        assert_ne!(r3, swap(&r3));
        assert_eq!(
            swap(&r3),
            parse_multipoly("v^2 - v y1 y2 + y1^2 - 1").unwrap()
        );
    }

    #[test]
    fn r6_factors_exactly() {
        assert!(r6_factorization_holds().unwrap());
        let (f, g) = r6_factors();
        assert_eq!(hlm_r(6).unwrap(), &f * &g);
    }

    #[test]
    fn change_of_variables_round_trip() {
        let f = change_of_variables().unwrap();
        let mut vars = f.support_vars();
        vars.sort();
        assert_eq!(vars, vec!["b", "w", "y"]);
        let back = undo_change_of_variables(&f).unwrap();
        assert_eq!(back, &v("y1").pow(5) * &hlm_r(6).unwrap());
    }

    #[test]
    fn elimination_matches() {
        let e = eliminate_w().unwrap();
        assert!(e.factors_match);
        assert!(!e.scalar.is_zero());
        let y = Complex64::new(0.7, -0.4);
        let z = y * y - 1.0;
        let val = e.resultant.eval_complex(&[("y", y), ("z", z)]).unwrap();
        assert!(val.norm() < 1e-10);
    }
}
