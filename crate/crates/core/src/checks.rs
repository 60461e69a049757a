//! Structural predicates on finite carriers: unique negation,
//! meta-tangibility, bipotence, element height, the characteristic
//! sub-carrier generated by the unit, and the null set. All checks are
//! exhaustive scans returning witnesses on failure.

use crate::error::{Error, Result};
use crate::finsys::{FinSys, SurpassSpec};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    /// Pair of element names witnessing failure, when `holds` is false.
    pub witness: Option<(String, String)>,
}

impl CheckOutcome {
    fn ok() -> Self {
        CheckOutcome { holds: true, witness: None }
    }
    fn fail(sys: &FinSys, a: usize, b: usize) -> Self {
        CheckOutcome {
            holds: false,
            witness: Some((sys.names[a].clone(), sys.names[b].clone())),
        }
    }
}

/// Unique negation: tangibles `a0, a1` with `a0 + a1` a quasi-zero force
/// `a1 = (-)a0`.
pub fn check_unique_negation(sys: &FinSys) -> CheckOutcome {
    let qz = sys.quasi_zeros();
    for &a0 in &sys.tangibles {
        for &a1 in &sys.tangibles {
            if qz.contains(&sys.a(a0, a1)) && a1 != sys.ng(a0) {
                return CheckOutcome::fail(sys, a0, a1);
            }
        }
    }
    CheckOutcome::ok()
}

/// Meta-tangibility: `a0 + a1` tangible whenever `a1 != (-)a0` are tangible.
pub fn check_meta_tangible(sys: &FinSys) -> CheckOutcome {
    for &a0 in &sys.tangibles {
        for &a1 in &sys.tangibles {
            if a1 != sys.ng(a0) && !sys.is_tangible(sys.a(a0, a1)) {
                return CheckOutcome::fail(sys, a0, a1);
            }
        }
    }
    CheckOutcome::ok()
}

/// (-)-bipotence: `a + b` lies in `{a, b}` for tangibles with `b != (-)a`.
pub fn check_bipotent(sys: &FinSys) -> CheckOutcome {
    for &a in &sys.tangibles {
        for &b in &sys.tangibles {
            if b != sys.ng(a) {
                let s = sys.a(a, b);
                if s != a && s != b {
                    return CheckOutcome::fail(sys, a, b);
                }
            }
        }
    }
    CheckOutcome::ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Finite(usize),
    ExceedsBound,
}

/// Minimal number of tangibles summing to `b`, by breadth-first search over
/// tangible sums; zero has height 0.
pub fn height(sys: &FinSys, b: usize, bound: usize) -> Height {
    if b == sys.zero {
        return Height::Finite(0);
    }
    let mut reached: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &t in &sys.tangibles {
        if reached.insert(t, 1).is_none() {
            queue.push_back(t);
        }
    }
    while let Some(x) = queue.pop_front() {
        let d = reached[&x];
        if x == b {
            return Height::Finite(d);
        }
        if d >= bound {
            continue;
        }
        for &t in &sys.tangibles {
            let y = sys.a(x, t);
            if let std::collections::btree_map::Entry::Vacant(e) = reached.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    match reached.get(&b) {
        Some(&d) => Height::Finite(d),
        None => Height::ExceedsBound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharClass {
    Boolean,
    IntegerLike,
    KrasnerLike,
    SignLike,
    Char4Like,
    Other,
}

impl CharClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CharClass::Boolean => "boolean",
            CharClass::IntegerLike => "integer-like",
            CharClass::KrasnerLike => "krasner-like",
            CharClass::SignLike => "sign-like",
            CharClass::Char4Like => "char-4-like",
            CharClass::Other => "other",
        }
    }
}

pub struct CharSubtriple {
    pub carrier: FinSys,
    pub class: CharClass,
    /// Names of the closure elements in the parent carrier.
    pub elements: Vec<String>,
}

/// Closure of `{1, (-)1}` under addition and negation, restricted to a
/// sub-carrier, with the height-2 case analysis: Boolean when `e = 1`,
/// integer-like when `e + 1 = 1`, Krasner-like for negation of the first
/// kind, sign-like for the bipotent second kind, char-4-like when
/// `e + 1 = (-)1`.
pub fn characteristic_subtriple(sys: &FinSys) -> Result<CharSubtriple> {
    let one = sys.one.ok_or(Error::NoUnit)?;
    let mone = sys.ng(one);
    let mut closure: BTreeSet<usize> = [one, mone, sys.zero].into();
    loop {
        let cur: Vec<usize> = closure.iter().copied().collect();
        let mut grew = false;
        for &x in &cur {
            for &y in &cur {
                grew |= closure.insert(sys.a(x, y));
            }
            grew |= closure.insert(sys.ng(x));
        }
        if !grew {
            break;
        }
    }
    let e = sys.a(one, mone);
    let class = if e == one {
        CharClass::Boolean
    } else if sys.a(e, one) == one {
        CharClass::IntegerLike
    } else if mone == one {
        if sys.a(e, one) == e {
            CharClass::KrasnerLike
        } else {
            CharClass::Other
        }
    } else if sys.a(e, one) == e && sys.a(one, one) == one {
        CharClass::SignLike
    } else if sys.a(e, one) == mone {
        CharClass::Char4Like
    } else {
        CharClass::Other
    };

    let elems: Vec<usize> = closure.iter().copied().collect();
    // products of signed units are signed units, so distributivity keeps
    // the closure multiplicatively closed as well; verify before tabling
    for &x in &elems {
        for &y in &elems {
            if !closure.contains(&sys.m(x, y)) {
                return Err(Error::IllDefined(format!(
                    "characteristic closure of {} not closed under product at ({},{})",
                    sys.label, sys.names[x], sys.names[y]
                )));
            }
        }
    }
    let reindex: BTreeMap<usize, usize> =
        elems.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let carrier = FinSys {
        label: format!("char({})", sys.label),
        names: elems.iter().map(|&i| sys.names[i].clone()).collect(),
        add: elems
            .iter()
            .map(|&x| elems.iter().map(|&y| reindex[&sys.a(x, y)]).collect())
            .collect(),
        mul: elems
            .iter()
            .map(|&x| elems.iter().map(|&y| reindex[&sys.m(x, y)]).collect())
            .collect(),
        zero: reindex[&sys.zero],
        one: Some(reindex[&one]),
        tangibles: [one, mone]
            .into_iter()
            .filter(|t| sys.is_tangible(*t))
            .map(|t| reindex[&t])
            .collect(),
        neg: elems.iter().map(|&x| reindex[&sys.ng(x)]).collect(),
        surpass: SurpassSpec::Circ,
    };
    Ok(CharSubtriple {
        carrier,
        class,
        elements: elems.iter().map(|&i| sys.names[i].clone()).collect(),
    })
}

/// `A_Null` with the cross-check of the simpler description `{b : 0 <| b}`
/// available once a zero is present.
pub fn compute_null_set(sys: &FinSys) -> Result<BTreeSet<usize>> {
    let null = sys.null_set();
    let simple: BTreeSet<usize> = (0..sys.n()).filter(|&b| sys.leq(sys.zero, b)).collect();
    if null != simple {
        return Err(Error::IllDefined(format!(
            "null set {:?} disagrees with {{b : 0 <| b}} = {:?} on {}",
            null, simple, sys.label
        )));
    }
    Ok(null)
}
