use std::collections::HashMap;

use rug::Float;

use super::{Atom, ZetaExpr};
use crate::error::Result;

/// Supplies numeric values of atoms at a given binary precision.
pub trait AtomEval {
    fn eval_atom(&self, atom: Atom, bits: u32) -> Result<Float>;
}

/// Working precision in bits for `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Evaluate `e` to roughly `digits` decimal digits.
pub fn eval_expr(e: &ZetaExpr, digits: u32, atom_eval: &dyn AtomEval) -> Result<Float> {
    let bits = bits_for_digits(digits);
    let mut values: HashMap<Atom, Float> = HashMap::new();
    let mut acc = Float::with_val(bits, 0);
    for (atoms, c) in e.terms() {
        let mut term = Float::with_val(bits, c);
        for a in atoms {
            if !values.contains_key(a) {
                values.insert(*a, atom_eval.eval_atom(*a, bits)?);
            }
            term *= &values[a];
        }
        acc += term;
    }
    Ok(acc)
}
