//! Fox free differential calculus.

use super::group_ring::GroupRingElement;
use super::word::FreeWord;

/// `∂w/∂x_j`: an occurrence of `x_j` at position `i` contributes the prefix
/// before it, an occurrence of `x_j^-1` minus the prefix including it.
pub fn fox_derivative(w: &FreeWord, j: usize) -> GroupRingElement {
    let mut terms = Vec::new();
    for (i, &(g, e)) in w.letters().iter().enumerate() {
        if g != j {
            continue;
        }
        if e > 0 {
            terms.push((w.prefix(i), 1));
        } else {
            terms.push((w.prefix(i + 1), -1));
        }
    }
    GroupRingElement::from_terms(terms)
}

/// Left-hand side minus right-hand side of `sum_j ∂w/∂x_j (x_j - 1) = w - 1`
/// over `n` generators; zero exactly when the identity holds.
pub fn fundamental_identity_defect(w: &FreeWord, n: usize) -> GroupRingElement {
    let one = GroupRingElement::one();
    let mut lhs = GroupRingElement::zero();
    for j in 0..n {
        let xj = &GroupRingElement::from_word(FreeWord::generator(j)) - &one;
        lhs = &lhs + &(&fox_derivative(w, j) * &xj);
    }
    &lhs - &(&GroupRingElement::from_word(w.clone()) - &one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, &names()).unwrap()
    }

    #[test]
    fn basic_rules() {
        assert_eq!(fox_derivative(&w("ab"), 0), GroupRingElement::one());
        assert_eq!(
            fox_derivative(&w("A"), 0),
            -&GroupRingElement::from_word(w("A"))
        );
        assert!(fox_derivative(&w("bc"), 0).is_zero());
    }

    #[test]
    fn commutator() {
        let d = fox_derivative(&w("abAB"), 0);
        let expect = &GroupRingElement::one() - &GroupRingElement::from_word(w("abA"));
        assert_eq!(d, expect);
        assert!(fundamental_identity_defect(&w("abAB"), 2).is_zero());
    }

    #[test]
    fn relator_of_nine_thirty_five() {
        // ∂r/∂a for r = aBabAbCbCBcB
        let r = w("aBabAbCbCBcB");
        let expect = GroupRingElement::from_terms([(w(""), 1), (w("aB"), 1), (w("aBabA"), -1)]);
        assert_eq!(fox_derivative(&r, 0), expect);
        let db = GroupRingElement::from_terms([
            (w("aB"), -1),
            (w("aBa"), 1),
            (w("aBabA"), 1),
            (w("aBabAbC"), 1),
            (w("aBabAbCbCB"), -1),
            (w("aBabAbCbCBcB"), -1),
        ]);
        assert_eq!(fox_derivative(&r, 1), db);
    }
}
