//! Symmetrization surface: the embedding of a carrier into its pair
//! carrier, the twist product, and evaluation of polynomial pairs at
//! symmetrized points. The pair carrier itself is `System::Sym`; finite
//! tables come from `finsys::fin_symmetrize`.

use crate::error::{Error, Result};
use crate::poly::{eval, Poly};
use crate::system::System;
use crate::value::Value;

/// `a -> (a, 0)`; preserves sums and products.
pub fn embed(base: &System, a: &Value) -> Result<Value> {
    base.validate(a)?;
    Ok(Value::pair(a.clone(), base.zero()))
}

/// Twist product on the symmetrized carrier.
pub fn twist_mul(sym: &System, x: &Value, y: &Value) -> Result<Value> {
    match sym {
        System::Sym(_) => {
            sym.validate(x)?;
            sym.validate(y)?;
            Ok(sym.mul(x, y))
        }
        _ => Err(Error::BadInput(format!(
            "{} is not a symmetrized carrier",
            sym.label()
        ))),
    }
}

/// `(f,g)(b0,b1) = (f(b0) + g(b1), f(b1) + g(b0))` over the base carrier.
pub fn sym_eval(base: &System, f: &Poly, g: &Poly, b: &Value) -> Result<Value> {
    let (b0, b1) = match b {
        Value::Pair(p, n) => ((**p).clone(), (**n).clone()),
        _ => return Err(Error::ForeignElement(format!("{b} is not a pair"))),
    };
    if f.nvars != 1 || g.nvars != 1 {
        return Err(Error::BadInput("symmetrized evaluation is univariate".into()));
    }
    let f_b0 = eval(base, f, std::slice::from_ref(&b0))?;
    let f_b1 = eval(base, f, std::slice::from_ref(&b1))?;
    let g_b0 = eval(base, g, std::slice::from_ref(&b0))?;
    let g_b1 = eval(base, g, std::slice::from_ref(&b1))?;
    Ok(Value::pair(base.add(&f_b0, &g_b1), base.add(&f_b1, &g_b0)))
}

/// A symmetrized root is a pair where the evaluation has equal components;
/// for `b1 = 0` this reduces to `f(b0) = g(b0)`.
pub fn is_symmetrized_root(base: &System, f: &Poly, g: &Poly, b: &Value) -> Result<bool> {
    match sym_eval(base, f, g, b)? {
        Value::Pair(p, n) => Ok(p == n),
        _ => unreachable!("sym_eval returns pairs"),
    }
}
