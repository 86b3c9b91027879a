//! Equality modulo the ideal generated by z·D − 1, decided by clearing the
//! determinant.  z commutes with the coordinates only, so a normal word
//! carries its z letters as a leading block.

use crate::algebra::{Element, Generator, Word};
use crate::expr::determinant;

use super::normal::Normalizer;
use super::ruleset::RuleSet;
use super::RewriteError;

fn split_z(w: &Word) -> Result<(usize, Word), RewriteError> {
    let j = w.letters().iter().take_while(|&&g| g == Generator::Z).count();
    let rest = Word(w.letters()[j..].to_vec());
    if rest.count(Generator::Z) > 0 {
        return Err(RewriteError::Unreducible(w.clone()));
    }
    Ok((j, rest))
}

/// Returns (k, D^k·x) in z-free normal form, where k is the largest z-degree
/// occurring in the normal form of x.
pub fn clear_det(x: &Element, rs: &RuleSet) -> Result<(usize, Element), RewriteError> {
    let mut nz = Normalizer::new(rs);
    let n = nz.normalize(x)?;
    let mut parts = Vec::new();
    let mut k = 0;
    for (w, c) in n.terms() {
        let (j, rest) = split_z(w)?;
        k = k.max(j);
        parts.push((j, Element::term(rest, c.clone())));
    }
    let det = determinant();
    let mut out = Element::zero();
    for (j, e) in parts {
        let lifted = &det.pow((k - j) as u32) * &e;
        out = &out + &nz.normalize(&lifted)?;
    }
    Ok((k, out))
}

pub fn equal_mod_det(x: &Element, y: &Element, rs: &RuleSet) -> Result<bool, RewriteError> {
    Ok(clear_det(&(x - y), rs)?.1.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::rewrite::config::CalculusConfig;
    use crate::rewrite::ruleset::standard_ruleset;

    fn el(s: &str) -> Element {
        parse_element(s, &CalculusConfig::standard().scope()).unwrap()
    }

    #[test]
    fn examples() {
        let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
        assert!(equal_mod_det(&el("z*(a*d - q*b*g)"), &Element::one(), &rs).unwrap());
        assert!(equal_mod_det(&el("a*d - q*b*g"), &el("d*a - b*g"), &rs).unwrap());
        assert!(!equal_mod_det(&el("a"), &el("d"), &rs).unwrap());
        assert!(equal_mod_det(&el("z^2*D^2*a"), &el("a"), &rs).unwrap());
        assert!(equal_mod_det(&el("D^-1*b*D"), &el("b"), &rs).unwrap());
        assert!(!equal_mod_det(&el("z"), &Element::one(), &rs).unwrap());
    }
}
