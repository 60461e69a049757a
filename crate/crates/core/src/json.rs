//! Wire formats. Every carrier, element, polynomial, matrix, congruence,
//! module and series has a JSON form with rationals carried as `"p/q"`
//! strings; serialization is deterministic (object keys are sorted by the
//! underlying map).

use crate::error::{Error, Result};
use crate::finsys::{FinSys, SurpassSpec};
use crate::hyperfield::Hyperfield;
use crate::linalg::Matrix;
use crate::modsys::ModSys;
use crate::poly::Poly;
use crate::puiseux::{MatroidCandidate, Puiseux, PuiseuxPoly};
use crate::rat::{fmt_q, parse_q};
use crate::system::System;
use crate::value::{TropSet, Value};
use serde_json::{json, Map, Value as J};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}

fn as_str<'a>(j: &'a J, what: &str) -> Result<&'a str> {
    j.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_arr<'a>(j: &'a J, what: &str) -> Result<&'a Vec<J>> {
    j.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_obj<'a>(j: &'a J, what: &str) -> Result<&'a Map<String, J>> {
    j.as_object().ok_or_else(|| bad(format!("{what} must be an object")))
}

fn field<'a>(o: &'a Map<String, J>, k: &str) -> Result<&'a J> {
    o.get(k).ok_or_else(|| bad(format!("missing field `{k}`")))
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// Parse an element literal in the context of its carrier.
pub fn parse_elem(sys: &System, j: &J) -> Result<Value> {
    // bare string shorthand for finite carriers
    if let Some(name) = j.as_str() {
        if let System::Finite(fs) = sys {
            return Ok(Value::Sym(fs.index_of(name)?));
        }
        return Err(bad(format!("bare element name `{name}` needs a finite carrier")));
    }
    let o = as_obj(j, "element")?;
    let kind = as_str(field(o, "kind")?, "kind")?;
    let v = match kind {
        "zero" => Value::Zero,
        "tangible" => Value::Tangible(parse_q(as_str(field(o, "value")?, "value")?)?),
        "ghost" => Value::Ghost(parse_q(as_str(field(o, "value")?, "value")?)?),
        "sym" => match sys {
            System::Finite(fs) => Value::Sym(fs.index_of(as_str(field(o, "value")?, "value")?)?),
            _ => return Err(bad("`sym` elements need a finite carrier")),
        },
        "pair" => {
            let base = match sys {
                System::Sym(b) => b,
                _ => return Err(bad("`pair` elements need a symmetrized carrier")),
            };
            Value::pair(
                parse_elem(base, field(o, "pos")?)?,
                parse_elem(base, field(o, "neg")?)?,
            )
        }
        "val" => Value::Trop(TropSet::Single(parse_q(as_str(field(o, "value")?, "value")?)?)),
        "interval" => Value::Trop(TropSet::Interval(parse_q(as_str(field(o, "value")?, "value")?)?)),
        "neginf" => Value::Trop(TropSet::NegInf),
        other => return Err(bad(format!("unknown element kind `{other}`"))),
    };
    sys.validate(&v)?;
    Ok(v)
}

pub fn render_elem(sys: &System, v: &Value) -> J {
    match v {
        Value::Zero => json!({"kind": "zero"}),
        Value::Tangible(q) => json!({"kind": "tangible", "value": fmt_q(q)}),
        Value::Ghost(q) => json!({"kind": "ghost", "value": fmt_q(q)}),
        Value::Sym(i) => match sys {
            System::Finite(fs) => json!({"kind": "sym", "value": fs.names[*i]}),
            _ => json!({"kind": "sym", "value": i}),
        },
        Value::Pair(p, n) => match sys {
            System::Sym(b) => {
                json!({"kind": "pair", "pos": render_elem(b, p), "neg": render_elem(b, n)})
            }
            _ => json!({"kind": "pair"}),
        },
        Value::Trop(TropSet::NegInf) => json!({"kind": "neginf"}),
        Value::Trop(TropSet::Single(q)) => json!({"kind": "val", "value": fmt_q(q)}),
        Value::Trop(TropSet::Interval(q)) => json!({"kind": "interval", "value": fmt_q(q)}),
    }
}

// ---------------------------------------------------------------------------
// Finite carriers
// ---------------------------------------------------------------------------

pub fn parse_finsys(j: &J) -> Result<FinSys> {
    let o = as_obj(j, "finite carrier")?;
    let names: Vec<String> = as_arr(field(o, "names")?, "names")?
        .iter()
        .map(|n| Ok(as_str(n, "name")?.to_string()))
        .collect::<Result<_>>()?;
    let index = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| bad(format!("unknown element `{name}`")))
    };
    let table = |j: &J, what: &str| -> Result<Vec<Vec<usize>>> {
        as_arr(j, what)?
            .iter()
            .map(|row| {
                as_arr(row, what)?
                    .iter()
                    .map(|c| index(as_str(c, what)?))
                    .collect()
            })
            .collect()
    };
    let add = table(field(o, "add")?, "add")?;
    let mul = table(field(o, "mul")?, "mul")?;
    let zero = index(as_str(field(o, "zero")?, "zero")?)?;
    let one = match o.get("one") {
        None | Some(J::Null) => None,
        Some(v) => Some(index(as_str(v, "one")?)?),
    };
    let tangibles: BTreeSet<usize> = as_arr(field(o, "tangibles")?, "tangibles")?
        .iter()
        .map(|t| index(as_str(t, "tangible")?))
        .collect::<Result<_>>()?;
    let neg_obj = as_obj(field(o, "neg")?, "neg")?;
    let mut neg = vec![usize::MAX; names.len()];
    for (k, v) in neg_obj {
        neg[index(k)?] = index(as_str(v, "neg")?)?;
    }
    if neg.contains(&usize::MAX) {
        return Err(bad("neg table must cover every element"));
    }
    let surpass = match field(o, "surpass")? {
        J::String(s) if s == "circ" => SurpassSpec::Circ,
        J::Array(pairs) => {
            let mut set = BTreeSet::new();
            for p in pairs {
                let p = as_arr(p, "surpass pair")?;
                if p.len() != 2 {
                    return Err(bad("surpass pairs are two-element arrays"));
                }
                set.insert((index(as_str(&p[0], "surpass")?)?, index(as_str(&p[1], "surpass")?)?));
            }
            SurpassSpec::Explicit(set)
        }
        _ => return Err(bad("surpass must be \"circ\" or a pair list")),
    };
    let label = o
        .get("label")
        .and_then(|l| l.as_str())
        .unwrap_or("finsys")
        .to_string();
    let fs = FinSys { label, names, add, mul, zero, one, tangibles, neg, surpass };
    fs.validate_shape()?;
    Ok(fs)
}

pub fn render_finsys(fs: &FinSys) -> J {
    let nm = |i: usize| J::String(fs.names[i].clone());
    let table = |t: &Vec<Vec<usize>>| -> J {
        J::Array(
            t.iter()
                .map(|row| J::Array(row.iter().map(|&c| nm(c)).collect()))
                .collect(),
        )
    };
    let mut o = Map::new();
    o.insert("label".into(), J::String(fs.label.clone()));
    o.insert("names".into(), J::Array(fs.names.iter().cloned().map(J::String).collect()));
    o.insert("zero".into(), nm(fs.zero));
    if let Some(one) = fs.one {
        o.insert("one".into(), nm(one));
    }
    o.insert("add".into(), table(&fs.add));
    o.insert("mul".into(), table(&fs.mul));
    o.insert(
        "tangibles".into(),
        J::Array(fs.tangibles.iter().map(|&t| nm(t)).collect()),
    );
    o.insert(
        "neg".into(),
        J::Object(
            fs.neg
                .iter()
                .enumerate()
                .map(|(i, &n)| (fs.names[i].clone(), nm(n)))
                .collect(),
        ),
    );
    o.insert(
        "surpass".into(),
        match &fs.surpass {
            SurpassSpec::Circ => J::String("circ".into()),
            SurpassSpec::Explicit(pairs) => J::Array(
                pairs
                    .iter()
                    .map(|&(a, b)| J::Array(vec![nm(a), nm(b)]))
                    .collect(),
            ),
        },
    );
    J::Object(o)
}

// ---------------------------------------------------------------------------
// Carrier specifications
// ---------------------------------------------------------------------------

/// A carrier given either by a builtin name, an inline finite table, a
/// symmetrization, or a power-set construction.
pub fn parse_system(j: &J) -> Result<System> {
    if let Some(name) = j.as_str() {
        return builtin_system(name);
    }
    let o = as_obj(j, "carrier spec")?;
    if let Some(b) = o.get("builtin") {
        return builtin_system(as_str(b, "builtin")?);
    }
    if let Some(f) = o.get("finite") {
        return System::finite(parse_finsys(f)?);
    }
    if let Some(inner) = o.get("symmetrize") {
        return Ok(System::symmetrize(&parse_system(inner)?));
    }
    if let Some(h) = o.get("s_of_h") {
        if let Some(name) = h.as_str() {
            return match name {
                "krasner" => {
                    let s = crate::hyperfield::build_s_of_h(&crate::hyperfield::make_krasner())?;
                    Ok(System::Finite(s.carrier))
                }
                "signs" => {
                    let s = crate::hyperfield::build_s_of_h(&crate::hyperfield::make_signs())?;
                    Ok(System::Finite(s.carrier))
                }
                "tropical" => Ok(System::TropPowerSet),
                other => Err(bad(format!("unknown hyperfield `{other}`"))),
            };
        }
        let s = crate::hyperfield::build_s_of_h(&parse_hyperfield(h)?)?;
        return Ok(System::Finite(s.carrier));
    }
    if let Some(k) = o.get("supertropical_chain") {
        let k = k.as_u64().ok_or_else(|| bad("supertropical_chain takes a bound"))?;
        return System::finite(crate::finsys::supertropical_chain(k as u32));
    }
    if let Some(k) = o.get("maxplus_chain") {
        let k = k.as_u64().ok_or_else(|| bad("maxplus_chain takes a bound"))?;
        return System::finite(crate::finsys::maxplus_chain(k as u32));
    }
    Err(bad("unrecognized carrier spec"))
}

fn builtin_system(name: &str) -> Result<System> {
    match name {
        "supertropical" => Ok(System::supertropical()),
        "maxplus" => Ok(System::maxplus()),
        "minplus" => Ok(System::minplus()),
        "boolean" => Ok(System::boolean()),
        "nat" => Ok(System::nat()),
        "trop_power_set" => Ok(System::TropPowerSet),
        "char4" => System::finite(crate::finsys::char4_carrier()),
        other => Err(bad(format!("unknown builtin carrier `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// Hyperfields
// ---------------------------------------------------------------------------

pub fn parse_hyperfield(j: &J) -> Result<Hyperfield> {
    if let Some(name) = j.as_str() {
        return match name {
            "krasner" => Ok(crate::hyperfield::make_krasner()),
            "signs" => Ok(crate::hyperfield::make_signs()),
            other => Err(bad(format!("unknown hyperfield `{other}`"))),
        };
    }
    let o = as_obj(j, "hyperfield")?;
    let names: Vec<String> = as_arr(field(o, "elements")?, "elements")?
        .iter()
        .map(|n| Ok(as_str(n, "element")?.to_string()))
        .collect::<Result<_>>()?;
    let n = names.len();
    let index = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| bad(format!("unknown hyperfield element `{name}`")))
    };
    let mut hyperadd = vec![vec![BTreeSet::new(); n]; n];
    for (k, v) in as_obj(field(o, "hyperadd")?, "hyperadd")? {
        let (a, b) = k
            .split_once(',')
            .ok_or_else(|| bad("hyperadd keys look like \"a,b\""))?;
        let set: BTreeSet<usize> = as_arr(v, "hypersum")?
            .iter()
            .map(|x| index(as_str(x, "hypersum")?))
            .collect::<Result<_>>()?;
        hyperadd[index(a.trim())?][index(b.trim())?] = set;
    }
    let mut mul = vec![vec![usize::MAX; n]; n];
    for (k, v) in as_obj(field(o, "mul")?, "mul")? {
        let (a, b) = k.split_once(',').ok_or_else(|| bad("mul keys look like \"a,b\""))?;
        mul[index(a.trim())?][index(b.trim())?] = index(as_str(v, "product")?)?;
    }
    if mul.iter().flatten().any(|&x| x == usize::MAX) {
        return Err(bad("mul table must be total"));
    }
    let mut neg = vec![usize::MAX; n];
    for (k, v) in as_obj(field(o, "neg")?, "neg")? {
        neg[index(k)?] = index(as_str(v, "neg")?)?;
    }
    if neg.contains(&usize::MAX) {
        return Err(bad("neg table must be total"));
    }
    // infer zero (a + 0 = {a} for all a) and one (mul unit)
    let zero = (0..n)
        .find(|&z| (0..n).all(|a| hyperadd[a][z] == BTreeSet::from([a])))
        .ok_or_else(|| bad("no additive zero found"))?;
    let one = (0..n)
        .find(|&e| (0..n).all(|a| mul[a][e] == a && mul[e][a] == a))
        .ok_or_else(|| bad("no multiplicative unit found"))?;
    let h = Hyperfield {
        label: "hyperfield".into(),
        names,
        hyperadd,
        mul,
        zero,
        one,
        neg,
    };
    h.validate()?;
    Ok(h)
}

// ---------------------------------------------------------------------------
// Matrices and polynomials
// ---------------------------------------------------------------------------

pub fn parse_matrix(sys: &System, j: &J) -> Result<Matrix> {
    let o = as_obj(j, "matrix")?;
    let n = field(o, "n")?
        .as_u64()
        .ok_or_else(|| bad("matrix `n` must be a number"))? as usize;
    let rows: Vec<Vec<Value>> = as_arr(field(o, "rows")?, "rows")?
        .iter()
        .map(|row| {
            as_arr(row, "row")?
                .iter()
                .map(|e| parse_elem(sys, e))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(bad("matrix rows do not match `n`"));
    }
    Matrix::new(sys.clone(), rows)
}

pub fn render_matrix(m: &Matrix) -> J {
    json!({
        "n": m.n(),
        "rows": m.entries.iter().map(|row| {
            J::Array(row.iter().map(|e| render_elem(&m.sys, e)).collect())
        }).collect::<Vec<J>>(),
    })
}

pub fn parse_poly(sys: &System, j: &J) -> Result<Poly> {
    let o = as_obj(j, "polynomial")?;
    let nvars = field(o, "nvars")?
        .as_u64()
        .ok_or_else(|| bad("`nvars` must be a number"))? as usize;
    let laurent = o.get("laurent").and_then(|l| l.as_bool()).unwrap_or(false);
    let mut terms = Vec::new();
    for t in as_arr(field(o, "terms")?, "terms")? {
        let t = as_obj(t, "term")?;
        let exp: Vec<i64> = as_arr(field(t, "exp")?, "exp")?
            .iter()
            .map(|e| e.as_i64().ok_or_else(|| bad("exponents are integers")))
            .collect::<Result<_>>()?;
        terms.push((exp, parse_elem(sys, field(t, "coef")?)?));
    }
    Poly::new(sys, nvars, laurent, terms)
}

pub fn render_poly(sys: &System, p: &Poly) -> J {
    json!({
        "nvars": p.nvars,
        "laurent": p.laurent,
        "terms": p.terms.iter().map(|(e, c)| {
            json!({"exp": e, "coef": render_elem(sys, c)})
        }).collect::<Vec<J>>(),
    })
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

pub fn parse_pairs(fs: &FinSys, j: &J) -> Result<Vec<(usize, usize)>> {
    as_arr(j, "pairs")?
        .iter()
        .map(|p| {
            let p = as_arr(p, "pair")?;
            if p.len() != 2 {
                return Err(bad("pairs are two-element arrays"));
            }
            Ok((
                fs.index_of(as_str(&p[0], "pair")?)?,
                fs.index_of(as_str(&p[1], "pair")?)?,
            ))
        })
        .collect()
}

pub fn render_pairs(fs: &FinSys, pairs: &BTreeSet<(usize, usize)>) -> J {
    J::Array(
        pairs
            .iter()
            .map(|&(a, b)| {
                J::Array(vec![
                    J::String(fs.names[a].clone()),
                    J::String(fs.names[b].clone()),
                ])
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Module carriers
// ---------------------------------------------------------------------------

pub fn parse_modsys(ground: &Arc<FinSys>, j: &J) -> Result<ModSys> {
    let o = as_obj(j, "module")?;
    let names: Vec<String> = as_arr(field(o, "names")?, "names")?
        .iter()
        .map(|n| Ok(as_str(n, "name")?.to_string()))
        .collect::<Result<_>>()?;
    let index = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| bad(format!("unknown module element `{name}`")))
    };
    let add: Vec<Vec<usize>> = as_arr(field(o, "add")?, "add")?
        .iter()
        .map(|row| {
            as_arr(row, "add")?
                .iter()
                .map(|c| index(as_str(c, "add")?))
                .collect()
        })
        .collect::<Result<_>>()?;
    // action rows are keyed by ground element name
    let mut action = vec![Vec::new(); ground.n()];
    for (k, row) in as_obj(field(o, "action")?, "action")? {
        let a = ground.index_of(k)?;
        action[a] = as_arr(row, "action row")?
            .iter()
            .map(|c| index(as_str(c, "action")?))
            .collect::<Result<_>>()?;
    }
    if action.iter().any(|r| r.len() != names.len()) {
        return Err(bad("action table must cover every ground element"));
    }
    let zero = index(as_str(field(o, "zero")?, "zero")?)?;
    let tangibles: BTreeSet<usize> = as_arr(field(o, "tangibles")?, "tangibles")?
        .iter()
        .map(|t| index(as_str(t, "tangible")?))
        .collect::<Result<_>>()?;
    let mut neg = vec![usize::MAX; names.len()];
    for (k, v) in as_obj(field(o, "neg")?, "neg")? {
        neg[index(k)?] = index(as_str(v, "neg")?)?;
    }
    if neg.contains(&usize::MAX) {
        return Err(bad("neg table must cover every element"));
    }
    let m = ModSys {
        ground: ground.clone(),
        label: o
            .get("label")
            .and_then(|l| l.as_str())
            .unwrap_or("module")
            .to_string(),
        names,
        add,
        action,
        zero,
        tangibles,
        neg,
    };
    m.validate()?;
    Ok(m)
}

pub fn render_modsys(m: &ModSys) -> J {
    let nm = |i: usize| J::String(m.names[i].clone());
    json!({
        "label": m.label,
        "ground": m.ground.label,
        "names": m.names,
        "zero": nm(m.zero),
        "add": m.add.iter().map(|row| J::Array(row.iter().map(|&c| nm(c)).collect())).collect::<Vec<J>>(),
        "action": m.action.iter().enumerate().map(|(a, row)| {
            (m.ground.names[a].clone(), J::Array(row.iter().map(|&c| nm(c)).collect()))
        }).collect::<Map<String, J>>(),
        "tangibles": m.tangibles.iter().map(|&t| nm(t)).collect::<Vec<J>>(),
        "neg": m.neg.iter().enumerate().map(|(i, &n)| (m.names[i].clone(), nm(n))).collect::<Map<String, J>>(),
    })
}

// ---------------------------------------------------------------------------
// Puiseux series
// ---------------------------------------------------------------------------

pub fn parse_puiseux(j: &J) -> Result<Puiseux> {
    let o = as_obj(j, "series")?;
    let mut terms = Vec::new();
    for t in as_arr(field(o, "terms")?, "terms")? {
        let t = as_obj(t, "series term")?;
        terms.push((
            parse_q(as_str(field(t, "exp")?, "exp")?)?,
            parse_q(as_str(field(t, "coef")?, "coef")?)?,
        ));
    }
    Ok(Puiseux::new(terms))
}

pub fn render_puiseux(p: &Puiseux) -> J {
    json!({
        "terms": p.terms.iter().map(|(e, c)| {
            json!({"exp": fmt_q(e), "coef": fmt_q(c)})
        }).collect::<Vec<J>>(),
    })
}

pub fn parse_puiseux_poly(j: &J) -> Result<PuiseuxPoly> {
    let o = as_obj(j, "series polynomial")?;
    let nvars = field(o, "nvars")?
        .as_u64()
        .ok_or_else(|| bad("`nvars` must be a number"))? as usize;
    let mut terms = Vec::new();
    for t in as_arr(field(o, "terms")?, "terms")? {
        let t = as_obj(t, "term")?;
        let exp: Vec<i64> = as_arr(field(t, "exp")?, "exp")?
            .iter()
            .map(|e| e.as_i64().ok_or_else(|| bad("exponents are integers")))
            .collect::<Result<_>>()?;
        terms.push((exp, parse_puiseux(field(t, "coef")?)?));
    }
    PuiseuxPoly::new(nvars, terms)
}

// ---------------------------------------------------------------------------
// Matroid candidates
// ---------------------------------------------------------------------------

pub fn parse_matroid(j: &J) -> Result<MatroidCandidate> {
    let o = as_obj(j, "matroid")?;
    let ground = field(o, "ground")?
        .as_u64()
        .ok_or_else(|| bad("`ground` must be a number"))? as usize;
    let rank = field(o, "rank")?
        .as_u64()
        .ok_or_else(|| bad("`rank` must be a number"))? as usize;
    let mut values = BTreeMap::new();
    for (k, v) in as_obj(field(o, "values")?, "values")? {
        let tuple: Vec<usize> = k
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad tuple entry `{x}`")))
            })
            .collect::<Result<_>>()?;
        if tuple.len() != rank {
            return Err(bad(format!("tuple `{k}` does not have rank {rank}")));
        }
        if tuple.iter().any(|&e| e >= ground) {
            return Err(bad(format!("tuple `{k}` leaves the ground set")));
        }
        let s = as_str(v, "matroid value")?;
        let val = if s == "zero" {
            Value::Zero
        } else {
            Value::Tangible(parse_q(s)?)
        };
        values.insert(tuple, val);
    }
    Ok(MatroidCandidate { ground, rank, values })
}
