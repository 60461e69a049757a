//! Exact rational scalars. Every numeric carrier in this crate is built on
//! `Q`; floating point never appears.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Ratio::from_integer(n)
}

/// Parse `"p/q"` or `"p"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => {
            let n: i128 = s.parse().map_err(|_| bad())?;
            Ok(Ratio::from_integer(n))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.denom().is_one() && !x.numer().is_negative()
}

pub fn q_zero() -> Q {
    Q::zero()
}
