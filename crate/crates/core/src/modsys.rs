//! Finite module carriers over a finite ground carrier: Hom enumeration,
//! dual pairings, morphism classification, spanning/independence, tensor
//! products through congruence closure on a free carrier, kernels,
//! cokernels and exactness at the null-module level.

use crate::congruence::{self, Congruence};
use crate::error::{Error, Result};
use crate::finsys::FinSys;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct ModSys {
    pub ground: Arc<FinSys>,
    pub label: String,
    pub names: Vec<String>,
    pub add: Vec<Vec<usize>>,
    /// action[a][x] for every ground element a (the tangible action is its
    /// restriction)
    pub action: Vec<Vec<usize>>,
    pub zero: usize,
    pub tangibles: BTreeSet<usize>,
    pub neg: Vec<usize>,
}

pub const MODULE_CARRIER_BOUND: usize = 4096;
pub const HOM_TABLE_BOUND: usize = 2_000_000;
pub const TENSOR_FREE_BOUND: usize = 100_000;
pub const DECOMPOSITION_LEN: usize = 4;

impl ModSys {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn a(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    pub fn ng(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn quasi_zero(&self, x: usize) -> usize {
        self.a(x, self.ng(x))
    }

    pub fn quasi_zeros(&self) -> BTreeSet<usize> {
        (0..self.n()).map(|x| self.quasi_zero(x)).collect()
    }

    /// Derived surpassing relation `x <| y iff y = x + c + (-)c`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.quasi_zeros().iter().any(|&c| self.a(x, c) == y)
    }

    pub fn null_set(&self) -> BTreeSet<usize> {
        (0..self.n())
            .filter(|&x| (0..self.n()).all(|y| self.leq(y, self.a(x, y))))
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::ForeignElement(format!("`{name}` not in {}", self.label)))
    }

    /// Module axioms, checked exhaustively; returns the first failure.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let g = &self.ground;
        let err = |m: String| Err(Error::BadInput(format!("{}: {m}", self.label)));
        if self.add.len() != n
            || self.add.iter().any(|r| r.len() != n)
            || self.action.len() != g.n()
            || self.action.iter().any(|r| r.len() != n)
            || self.neg.len() != n
        {
            return err("tables malformed".into());
        }
        for x in 0..n {
            if self.a(self.zero, x) != x {
                return err(format!("zero not additive identity at {}", self.names[x]));
            }
            if self.ng(self.ng(x)) != x {
                return err(format!("negation not involutive at {}", self.names[x]));
            }
            for y in 0..n {
                if self.a(x, y) != self.a(y, x) {
                    return err("addition not commutative".into());
                }
                if self.ng(self.a(x, y)) != self.a(self.ng(x), self.ng(y)) {
                    return err("negation not additive".into());
                }
                for z in 0..n {
                    if self.a(self.a(x, y), z) != self.a(x, self.a(y, z)) {
                        return err("addition not associative".into());
                    }
                }
            }
        }
        for a in 0..g.n() {
            if self.act(a, self.zero) != self.zero {
                return err("action does not absorb the module zero".into());
            }
            for x in 0..n {
                if self.act(g.zero, x) != self.zero {
                    return err("ground zero does not annihilate".into());
                }
                if let Some(one) = g.one {
                    if self.act(one, x) != x {
                        return err("unit does not act trivially".into());
                    }
                }
                // ((-)a)x = a((-)x) = (-)(ax)
                if self.act(g.ng(a), x) != self.act(a, self.ng(x))
                    || self.act(g.ng(a), x) != self.ng(self.act(a, x))
                {
                    return err("negation does not slide through the action".into());
                }
                for y in 0..n {
                    if self.act(a, self.a(x, y)) != self.a(self.act(a, x), self.act(a, y)) {
                        return err("action not additive in the module".into());
                    }
                }
                for b in 0..g.n() {
                    if self.act(g.a(a, b), x) != self.a(self.act(a, x), self.act(b, x)) {
                        return err("action not additive in the ground".into());
                    }
                    if self.act(g.m(a, b), x) != self.act(a, self.act(b, x)) {
                        return err("action not multiplicative".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// All multisets of tangibles (length-bounded) summing to each element.
    pub fn decompositions(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.n()];
        out[self.zero].push(Vec::new());
        let tang: Vec<usize> = self.tangibles.iter().copied().collect();
        let mut layer: Vec<(usize, Vec<usize>)> = vec![(self.zero, Vec::new())];
        for _ in 0..DECOMPOSITION_LEN {
            let mut next = Vec::new();
            let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
            for (sum, ms) in &layer {
                for &t in &tang {
                    if ms.last().is_some_and(|&l| t < l) {
                        continue; // keep multisets sorted
                    }
                    let mut ms2 = ms.clone();
                    ms2.push(t);
                    let s2 = self.a(*sum, t);
                    if seen.insert((s2, ms2.clone())) {
                        out[s2].push(ms2.clone());
                        next.push((s2, ms2));
                    }
                }
            }
            layer = next;
        }
        out
    }
}

/// The ground carrier as a module over itself, tangibles included.
pub fn ground_module(ground: &Arc<FinSys>) -> ModSys {
    let n = ground.n();
    ModSys {
        ground: ground.clone(),
        label: format!("{}-mod", ground.label),
        names: ground.names.clone(),
        add: ground.add.clone(),
        action: (0..n).map(|a| (0..n).map(|x| ground.m(a, x)).collect()).collect(),
        zero: ground.zero,
        tangibles: ground.tangibles.clone(),
        neg: ground.neg.clone(),
    }
}

/// Componentwise direct sum; tangibles are the injected tangibles of the
/// summands.
pub fn direct_sum(mods: &[&ModSys]) -> Result<ModSys> {
    if mods.is_empty() {
        return Err(Error::BadInput("direct sum needs at least one summand".into()));
    }
    let ground = mods[0].ground.clone();
    if mods.iter().any(|m| m.ground != ground) {
        return Err(Error::BadInput("summands live over different grounds".into()));
    }
    let sizes: Vec<usize> = mods.iter().map(|m| m.n()).collect();
    let total: usize = sizes.iter().product();
    if total > MODULE_CARRIER_BOUND {
        return Err(Error::CarrierTooLarge(format!("{total} elements")));
    }
    let dec = |mut i: usize| -> Vec<usize> {
        let mut c = Vec::with_capacity(sizes.len());
        for &s in &sizes {
            c.push(i % s);
            i /= s;
        }
        c
    };
    let enc = |c: &[usize]| -> usize {
        let mut i = 0;
        for (k, &x) in c.iter().enumerate().rev() {
            i = i * sizes[k] + x;
        }
        i
    };
    let names: Vec<String> = (0..total)
        .map(|i| {
            let c = dec(i);
            let inner: Vec<&str> = c
                .iter()
                .enumerate()
                .map(|(k, &x)| mods[k].names[x].as_str())
                .collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let mut add = vec![vec![0; total]; total];
    let mut action = vec![vec![0; total]; ground.n()];
    let mut neg = vec![0; total];
    for i in 0..total {
        let ci = dec(i);
        neg[i] = enc(&ci.iter().enumerate().map(|(k, &x)| mods[k].ng(x)).collect::<Vec<_>>());
        for (a, row) in action.iter_mut().enumerate() {
            row[i] = enc(
                &ci.iter()
                    .enumerate()
                    .map(|(k, &x)| mods[k].act(a, x))
                    .collect::<Vec<_>>(),
            );
        }
        for j in 0..total {
            let cj = dec(j);
            add[i][j] = enc(
                &ci.iter()
                    .zip(cj.iter())
                    .enumerate()
                    .map(|(k, (&x, &y))| mods[k].a(x, y))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let zero = enc(&mods.iter().map(|m| m.zero).collect::<Vec<_>>());
    let mut tangibles = BTreeSet::new();
    for (k, m) in mods.iter().enumerate() {
        for &t in &m.tangibles {
            let mut c: Vec<usize> = mods.iter().map(|m| m.zero).collect();
            c[k] = t;
            tangibles.insert(enc(&c));
        }
    }
    Ok(ModSys {
        ground,
        label: format!("sum({})", mods.iter().map(|m| m.label.as_str()).collect::<Vec<_>>().join("+")),
        names,
        add,
        action,
        zero,
        tangibles,
        neg,
    })
}

pub fn free_module(ground: &Arc<FinSys>, k: usize) -> Result<ModSys> {
    let g = ground_module(ground);
    let parts: Vec<&ModSys> = (0..k).map(|_| &g).collect();
    let mut m = direct_sum(&parts)?;
    m.label = format!("free({},{})", ground.label, k);
    Ok(m)
}

/// Pair module with componentwise addition, diagonal ground action, and
/// the switch negation; tangibles sit in either slot against zero.
pub fn sym_module(m: &ModSys) -> Result<ModSys> {
    let n = m.n();
    let total = n * n;
    if total > MODULE_CARRIER_BOUND {
        return Err(Error::CarrierTooLarge(format!("{total} elements")));
    }
    let idx = |x: usize, y: usize| x * n + y;
    let names: Vec<String> = (0..total)
        .map(|i| format!("({},{})", m.names[i / n], m.names[i % n]))
        .collect();
    let mut add = vec![vec![0; total]; total];
    let mut action = vec![vec![0; total]; m.ground.n()];
    let mut neg = vec![0; total];
    for x0 in 0..n {
        for x1 in 0..n {
            let i = idx(x0, x1);
            neg[i] = idx(x1, x0);
            for (a, row) in action.iter_mut().enumerate() {
                row[i] = idx(m.act(a, x0), m.act(a, x1));
            }
            for y0 in 0..n {
                for y1 in 0..n {
                    add[i][idx(y0, y1)] = idx(m.a(x0, y0), m.a(x1, y1));
                }
            }
        }
    }
    let mut tangibles = BTreeSet::new();
    for &t in &m.tangibles {
        tangibles.insert(idx(t, m.zero));
        tangibles.insert(idx(m.zero, t));
    }
    Ok(ModSys {
        ground: m.ground.clone(),
        label: format!("sym({})", m.label),
        names,
        add,
        action,
        zero: idx(m.zero, m.zero),
        tangibles,
        neg,
    })
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// Total element table from source to target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismTable {
    pub map: Vec<usize>,
}

pub fn is_module_homomorphism(src: &ModSys, dst: &ModSys, f: &[usize]) -> bool {
    if f[src.zero] != dst.zero {
        return false;
    }
    for x in 0..src.n() {
        if f[src.ng(x)] != dst.ng(f[x]) {
            return false;
        }
        for y in 0..src.n() {
            if f[src.a(x, y)] != dst.a(f[x], f[y]) {
                return false;
            }
        }
        for a in 0..src.ground.n() {
            if f[src.act(a, x)] != dst.act(a, f[x]) {
                return false;
            }
        }
    }
    true
}

/// Every additive, action- and negation-compatible table, by filtered
/// enumeration.
pub fn all_homomorphisms(src: &ModSys, dst: &ModSys) -> Result<Vec<MorphismTable>> {
    let count = (dst.n() as u128).checked_pow(src.n() as u32);
    if count.is_none_or(|c| c > HOM_TABLE_BOUND as u128) {
        return Err(Error::CarrierTooLarge(format!(
            "{}^{} candidate tables",
            dst.n(),
            src.n()
        )));
    }
    let mut out = Vec::new();
    let n = src.n();
    let m = dst.n();
    let mut f = vec![0usize; n];
    loop {
        if is_module_homomorphism(src, dst, &f) {
            out.push(MorphismTable { map: f.clone() });
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            f[pos] += 1;
            if f[pos] < m {
                break;
            }
            f[pos] = 0;
            pos += 1;
        }
    }
}

pub struct HomModule {
    pub module: ModSys,
    pub tables: Vec<MorphismTable>,
}

/// The carrier of homomorphisms with elementwise structure; tangible
/// morphisms carry tangibles to tangibles.
pub fn hom_module(src: &ModSys, dst: &ModSys) -> Result<HomModule> {
    if src.ground != dst.ground {
        return Err(Error::BadInput("hom needs a shared ground".into()));
    }
    let g = &src.ground;
    for a in 0..g.n() {
        for b in 0..g.n() {
            if g.m(a, b) != g.m(b, a) {
                return Err(Error::BadInput(
                    "hom carrier needs a commutative ground".into(),
                ));
            }
        }
    }
    let tables = all_homomorphisms(src, dst)?;
    let index: BTreeMap<&[usize], usize> =
        tables.iter().enumerate().map(|(i, t)| (t.map.as_slice(), i)).collect();
    let k = tables.len();
    let find = |map: Vec<usize>| -> Result<usize> {
        index
            .get(map.as_slice())
            .copied()
            .ok_or_else(|| Error::IllDefined("hom carrier not closed".into()))
    };
    let mut add = vec![vec![0; k]; k];
    let mut action = vec![vec![0; k]; g.n()];
    let mut neg = vec![0; k];
    for i in 0..k {
        neg[i] = find((0..src.n()).map(|x| dst.ng(tables[i].map[x])).collect())?;
        for (a, row) in action.iter_mut().enumerate() {
            row[i] = find((0..src.n()).map(|x| dst.act(a, tables[i].map[x])).collect())?;
        }
        for j in 0..k {
            add[i][j] = find(
                (0..src.n())
                    .map(|x| dst.a(tables[i].map[x], tables[j].map[x]))
                    .collect(),
            )?;
        }
    }
    let zero = find(vec![dst.zero; src.n()])?;
    let tangibles: BTreeSet<usize> = (0..k)
        .filter(|&i| {
            src.tangibles
                .iter()
                .all(|&t| dst.tangibles.contains(&tables[i].map[t]))
        })
        .collect();
    let names: Vec<String> = (0..k).map(|i| format!("h{i}")).collect();
    Ok(HomModule {
        module: ModSys {
            ground: g.clone(),
            label: format!("hom({},{})", src.label, dst.label),
            names,
            add,
            action,
            zero,
            tangibles,
            neg,
        },
        tables,
    })
}

pub struct DualSystem {
    pub hom: HomModule,
    /// index of `a*` in the hom carrier for each element of the source
    pub pairing: Vec<usize>,
    pub onto: bool,
}

/// The dual of the rank-`k` free module, with the pairing
/// `a*(b) = sum a_i b_i` and its surjectivity witness.
pub fn dual_system(ground: &Arc<FinSys>, k: usize) -> Result<DualSystem> {
    let free = free_module(ground, k)?;
    let gm = ground_module(ground);
    let hom = hom_module(&free, &gm)?;
    // decompose indices of the free module back into coordinates
    let sizes = vec![ground.n(); k];
    let dec = |mut i: usize| -> Vec<usize> {
        let mut c = Vec::with_capacity(k);
        for &s in &sizes {
            c.push(i % s);
            i /= s;
        }
        c
    };
    let mut pairing = Vec::with_capacity(free.n());
    for a in 0..free.n() {
        let ca = dec(a);
        let table: Vec<usize> = (0..free.n())
            .map(|b| {
                let cb = dec(b);
                let mut acc = ground.zero;
                for i in 0..k {
                    acc = ground.a(acc, ground.m(ca[i], cb[i]));
                }
                acc
            })
            .collect();
        let idx = hom
            .tables
            .iter()
            .position(|t| t.map == table)
            .ok_or_else(|| Error::IllDefined("pairing is not a homomorphism".into()))?;
        pairing.push(idx);
    }
    let onto = (0..hom.tables.len()).all(|i| pairing.contains(&i));
    Ok(DualSystem { hom, pairing, onto })
}

// ---------------------------------------------------------------------------
// Morphism classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorphismClass {
    NotAMorphism,
    Preceq,
    TAdmissible,
    Homomorphism,
}

impl MorphismClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MorphismClass::NotAMorphism => "none",
            MorphismClass::Preceq => "preceq-morphism",
            MorphismClass::TAdmissible => "t-admissible",
            MorphismClass::Homomorphism => "homomorphism",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub class: MorphismClass,
    pub violations: Vec<String>,
}

/// Classify a table against the morphism clauses: the relaxed clauses give
/// a `<|`-morphism, summand-wise stability upgrades it to tangible
/// admissibility, and equalities plus tangibility preservation give a
/// homomorphism.
pub fn classify_morphism(
    src: &ModSys,
    dst: &ModSys,
    f: &[usize],
    admissible_sum_bound: usize,
) -> MorphismReport {
    let mut violations = Vec::new();
    let src_null = src.null_set();
    let dst_null = dst.null_set();
    let mut relaxed_ok = true;
    let mut equalities_ok = true;
    if f[src.zero] != dst.zero {
        relaxed_ok = false;
        violations.push("f(0) != 0".into());
    }
    for x in 0..src.n() {
        if !dst.leq(f[src.ng(x)], dst.ng(f[x])) {
            relaxed_ok = false;
            violations.push(format!("f((-){}) not <| (-)f({0})", src.names[x]));
        }
        if f[src.ng(x)] != dst.ng(f[x]) {
            equalities_ok = false;
        }
        for y in 0..src.n() {
            if !dst.leq(f[src.a(x, y)], dst.a(f[x], f[y])) {
                relaxed_ok = false;
                violations.push(format!(
                    "f({} + {}) not <| f(..) + f(..)",
                    src.names[x], src.names[y]
                ));
            }
            if f[src.a(x, y)] != dst.a(f[x], f[y]) {
                equalities_ok = false;
            }
            if src.leq(x, y) && !dst.leq(f[x], f[y]) {
                relaxed_ok = false;
                violations.push(format!(
                    "f not monotone at {} <| {}",
                    src.names[x], src.names[y]
                ));
            }
        }
        for &a in &src.ground.tangibles {
            if !dst.leq(f[src.act(a, x)], dst.act(a, f[x])) {
                relaxed_ok = false;
                violations.push(format!(
                    "f({} . {}) not <| {0} . f({1})",
                    src.ground.names[a], src.names[x]
                ));
            }
            if f[src.act(a, x)] != dst.act(a, f[x]) {
                equalities_ok = false;
            }
        }
        if src_null.contains(&x) && !dst_null.contains(&f[x]) {
            relaxed_ok = false;
            violations.push(format!("f({}) leaves the null set", src.names[x]));
        }
    }
    if !relaxed_ok {
        return MorphismReport { class: MorphismClass::NotAMorphism, violations };
    }
    let tangibility = src
        .tangibles
        .iter()
        .all(|&t| dst.tangibles.contains(&f[t]) || f[t] == dst.zero);
    if equalities_ok && tangibility {
        return MorphismReport { class: MorphismClass::Homomorphism, violations };
    }
    // tangible admissibility: equal tangible sums stay equal after mapping
    let tang: Vec<usize> = src.tangibles.iter().copied().collect();
    let mut sums: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new(); // value -> (sum of images, witness len)
    let mut layer: Vec<(usize, usize)> = vec![(src.zero, dst.zero)];
    let mut admissible = true;
    'adm: for _ in 0..admissible_sum_bound {
        let mut next = Vec::new();
        for &(s, fs) in &layer {
            for &t in &tang {
                let s2 = src.a(s, t);
                let fs2 = dst.a(fs, f[t]);
                next.push((s2, fs2));
                let entry = sums.entry(s2).or_default();
                if entry.iter().any(|&(img, _)| img != fs2) {
                    admissible = false;
                    violations.push(format!(
                        "two tangible decompositions of {} map to different sums",
                        src.names[s2]
                    ));
                    break 'adm;
                }
                entry.push((fs2, 0));
            }
        }
        layer = next;
    }
    let class = if admissible {
        MorphismClass::TAdmissible
    } else {
        MorphismClass::Preceq
    };
    MorphismReport { class, violations }
}

#[derive(Clone, Debug)]
pub struct DerivedLawsReport {
    pub negation_compatible: bool,
    pub action_compatible: Option<bool>,
    pub collapses_intervals: bool,
}

/// Laws every `<|`-morphism must satisfy once the relation is a partial
/// order; failures indicate an implementation bug rather than a property
/// of the input.
pub fn derived_morphism_laws(src: &ModSys, dst: &ModSys, f: &[usize]) -> DerivedLawsReport {
    let negation_compatible = (0..src.n()).all(|x| f[src.ng(x)] == dst.ng(f[x]));
    // the action law needs invertible tangible scalars
    let g = &src.ground;
    let group = g
        .tangibles
        .iter()
        .all(|&a| g.inverse(a).is_some_and(|i| g.tangibles.contains(&i)));
    let action_compatible = group.then(|| {
        (0..src.n()).all(|x| {
            g.tangibles
                .iter()
                .all(|&a| f[src.act(a, x)] == dst.act(a, f[x]))
        })
    });
    let mut collapses = true;
    for b0 in 0..src.n() {
        for b1 in 0..src.n() {
            if f[b0] != f[b1] {
                continue;
            }
            for b in 0..src.n() {
                if src.leq(b0, b) && src.leq(b, b1) && f[b] != f[b0] {
                    collapses = false;
                }
            }
        }
    }
    DerivedLawsReport {
        negation_compatible,
        action_compatible,
        collapses_intervals: collapses,
    }
}

// ---------------------------------------------------------------------------
// Spanning, independence, bases
// ---------------------------------------------------------------------------

pub const COEFF_SPACE_BOUND: usize = 200_000;

/// Every target element is surpassed by some tangible combination of the
/// given vectors (zero coefficients allowed).
pub fn span_check(m: &ModSys, vs: &[usize], targets: &[usize]) -> Result<bool> {
    let coeffs = m.ground.tangibles0();
    let total = (coeffs.len() as u128).checked_pow(vs.len() as u32);
    if total.is_none_or(|t| t > COEFF_SPACE_BOUND as u128) {
        return Err(Error::CoefficientSpaceTooLarge(format!(
            "{}^{}",
            coeffs.len(),
            vs.len()
        )));
    }
    let combos = enumerate_combinations(m, vs, &coeffs);
    Ok(targets
        .iter()
        .all(|&x| combos.iter().any(|&(_, s)| m.leq(x, s))))
}

fn enumerate_combinations(
    m: &ModSys,
    vs: &[usize],
    coeffs: &[usize],
) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    let k = vs.len();
    let mut idx = vec![0usize; k];
    loop {
        let mut s = m.zero;
        let mut cs = Vec::with_capacity(k);
        for (i, &v) in vs.iter().enumerate() {
            let a = coeffs[idx[i]];
            cs.push(a);
            s = m.a(s, m.act(a, v));
        }
        out.push((cs, s));
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < coeffs.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub independent: bool,
    /// coefficients witnessing a null combination with a non-null scalar
    pub witness: Option<Vec<usize>>,
}

/// A null combination forces every coefficient into the ground null set;
/// coefficients range over the whole ground carrier.
pub fn independence_check(m: &ModSys, vs: &[usize]) -> Result<IndependenceReport> {
    let all: Vec<usize> = (0..m.ground.n()).collect();
    let total = (all.len() as u128).checked_pow(vs.len() as u32);
    if total.is_none_or(|t| t > COEFF_SPACE_BOUND as u128) {
        return Err(Error::CoefficientSpaceTooLarge(format!(
            "{}^{}",
            all.len(),
            vs.len()
        )));
    }
    let m_null = m.null_set();
    let g_null = m.ground.null_set();
    for (cs, s) in enumerate_combinations(m, vs, &all) {
        if m_null.contains(&s) && cs.iter().any(|c| !g_null.contains(c)) {
            return Ok(IndependenceReport { independent: false, witness: Some(cs) });
        }
    }
    Ok(IndependenceReport { independent: true, witness: None })
}

pub fn is_base(m: &ModSys, vs: &[usize]) -> Result<bool> {
    let targets: Vec<usize> = (0..m.n()).collect();
    Ok(span_check(m, vs, &targets)? && independence_check(m, vs)?.independent)
}

/// The same checks inside the symmetrized module, with the vectors
/// embedded in the first slot.
pub fn is_symmetric_base(m: &ModSys, vs: &[usize]) -> Result<bool> {
    let sm = sym_module(m)?;
    let embedded: Vec<usize> = vs.iter().map(|&v| v * m.n() + m.zero).collect();
    is_base(&sm, &embedded)
}

// ---------------------------------------------------------------------------
// Module congruences, kernels, quotients
// ---------------------------------------------------------------------------

/// Union-find closure of a module congruence from seed pairs: closed under
/// addition with every element, the full ground action, and negation.
pub fn close_module_congruence(m: &ModSys, seeds: &[(usize, usize)]) -> Vec<usize> {
    let n = m.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    let union = |parent: &mut Vec<usize>, work: &mut VecDeque<(usize, usize)>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra] = rb;
            work.push_back((a, b));
        }
    };
    for &(a, b) in seeds {
        union(&mut parent, &mut work, a, b);
    }
    while let Some((x, y)) = work.pop_front() {
        union(&mut parent, &mut work, m.ng(x), m.ng(y));
        for z in 0..n {
            union(&mut parent, &mut work, m.a(x, z), m.a(y, z));
        }
        for a in 0..m.ground.n() {
            union(&mut parent, &mut work, m.act(a, x), m.act(a, y));
        }
    }
    let mut root_to_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = vec![0usize; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        let next = root_to_class.len();
        out[x] = *root_to_class.entry(r).or_insert(next);
    }
    out
}

/// Congruence kernel of a homomorphism: the full equalizer.
pub fn congruence_kernel(src: &ModSys, f: &[usize]) -> BTreeSet<(usize, usize)> {
    (0..src.n())
        .flat_map(|x| (0..src.n()).map(move |y| (x, y)))
        .filter(|&(x, y)| f[x] == f[y])
        .collect()
}

pub struct ModuleQuotient {
    pub module: ModSys,
    pub projection: Vec<usize>,
}

pub fn quotient_module(m: &ModSys, class_of: &[usize]) -> Result<ModuleQuotient> {
    let k = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut rep = vec![usize::MAX; k];
    for x in 0..m.n() {
        if rep[class_of[x]] == usize::MAX {
            rep[class_of[x]] = x;
        }
    }
    let mut add = vec![vec![0; k]; k];
    let mut action = vec![vec![0; k]; m.ground.n()];
    let mut neg = vec![0; k];
    for ci in 0..k {
        neg[ci] = class_of[m.ng(rep[ci])];
        for (a, row) in action.iter_mut().enumerate() {
            row[ci] = class_of[m.act(a, rep[ci])];
        }
        for cj in 0..k {
            add[ci][cj] = class_of[m.a(rep[ci], rep[cj])];
        }
    }
    // well-definedness across all representatives
    for x in 0..m.n() {
        for y in 0..m.n() {
            if add[class_of[x]][class_of[y]] != class_of[m.a(x, y)] {
                return Err(Error::IllDefined("quotient addition conflicts".into()));
            }
        }
        if neg[class_of[x]] != class_of[m.ng(x)] {
            return Err(Error::IllDefined("quotient negation conflicts".into()));
        }
        for a in 0..m.ground.n() {
            if action[a][class_of[x]] != class_of[m.act(a, x)] {
                return Err(Error::IllDefined("quotient action conflicts".into()));
            }
        }
    }
    let names: Vec<String> = (0..k).map(|c| format!("[{}]", m.names[rep[c]])).collect();
    let tangibles: BTreeSet<usize> = m.tangibles.iter().map(|&t| class_of[t]).collect();
    Ok(ModuleQuotient {
        module: ModSys {
            ground: m.ground.clone(),
            label: format!("{}/C", m.label),
            names,
            add,
            action,
            zero: class_of[m.zero],
            tangibles,
            neg,
        },
        projection: class_of.to_vec(),
    })
}

pub struct Factorization {
    pub quotient: ModuleQuotient,
    /// the induced injective map on classes
    pub monic: Vec<usize>,
}

/// Factor a homomorphism through its congruence kernel; the second leg is
/// injective exactly because the kernel collapses to the diagonal.
pub fn factor_through(src: &ModSys, dst: &ModSys, f: &[usize]) -> Result<Factorization> {
    if !is_module_homomorphism(src, dst, f) {
        return Err(Error::NotHomomorphism("factorization needs a homomorphism".into()));
    }
    let ker = congruence_kernel(src, f);
    let seeds: Vec<(usize, usize)> = ker.iter().copied().collect();
    let class_of = close_module_congruence(src, &seeds);
    // the kernel of a homomorphism is already closed; the closure must not
    // merge anything extra
    for (x, y) in (0..src.n()).flat_map(|x| (0..src.n()).map(move |y| (x, y))) {
        if (class_of[x] == class_of[y]) != ker.contains(&(x, y)) {
            return Err(Error::IllDefined("kernel closure mismatch".into()));
        }
    }
    let quotient = quotient_module(src, &class_of)?;
    let k = quotient.module.n();
    let mut monic = vec![usize::MAX; k];
    for x in 0..src.n() {
        let c = class_of[x];
        if monic[c] == usize::MAX {
            monic[c] = f[x];
        } else if monic[c] != f[x] {
            return Err(Error::IllDefined("induced map not single-valued".into()));
        }
    }
    Ok(Factorization { quotient, monic })
}

/// Image congruence of a homomorphism applied to a module congruence:
/// the diagonal together with the mapped pairs, closed in the target.
pub fn congruence_image(
    src: &ModSys,
    dst: &ModSys,
    f: &[usize],
    pairs: &BTreeSet<(usize, usize)>,
) -> Result<Vec<usize>> {
    if !is_module_homomorphism(src, dst, f) {
        return Err(Error::NotHomomorphism(
            "the congruence image is only defined for homomorphisms here".into(),
        ));
    }
    let seeds: Vec<(usize, usize)> = pairs.iter().map(|&(x, y)| (f[x], f[y])).collect();
    Ok(close_module_congruence(dst, &seeds))
}

// ---------------------------------------------------------------------------
// Null kernels, exactness
// ---------------------------------------------------------------------------

pub fn t_kernel(src: &ModSys, dst: &ModSys, f: &[usize]) -> BTreeSet<usize> {
    let null = dst.null_set();
    src.tangibles
        .iter()
        .copied()
        .filter(|&t| null.contains(&f[t]))
        .collect()
}

pub fn is_null_morphism(src: &ModSys, dst: &ModSys, f: &[usize]) -> bool {
    t_kernel(src, dst, f) == src.tangibles
}

#[derive(Clone, Debug)]
pub struct MonicReport {
    pub null_monic: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn null_monic(src: &ModSys, _dst: &ModSys, f: &[usize]) -> MonicReport {
    let null = src.null_set();
    for x in 0..src.n() {
        for y in 0..src.n() {
            if f[x] == f[y] && !null.contains(&src.a(x, src.ng(y))) {
                return MonicReport { null_monic: false, witness: Some((x, y)) };
            }
        }
    }
    MonicReport { null_monic: true, witness: None }
}

/// Tangible image submodule: the closure of the tangible images under
/// addition and the ground action.
fn tangible_image_span(src: &ModSys, dst: &ModSys, f: &[usize]) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = src.tangibles.iter().map(|&t| f[t]).collect();
    out.insert(dst.zero);
    loop {
        let mut grew = false;
        let cur: Vec<usize> = out.iter().copied().collect();
        for &x in &cur {
            for &y in &cur {
                grew |= out.insert(dst.a(x, y));
            }
            for a in 0..dst.ground.n() {
                grew |= out.insert(dst.act(a, x));
            }
        }
        if !grew {
            return out;
        }
    }
}

pub fn null_onto(src: &ModSys, dst: &ModSys, f: &[usize]) -> bool {
    let span = tangible_image_span(src, dst, f);
    let null = dst.null_set();
    let mut reach: BTreeSet<usize> = BTreeSet::new();
    for &s in &span {
        for &v in &null {
            reach.insert(dst.a(s, v));
        }
    }
    reach.len() == dst.n()
}

/// Exactness of `K -g-> M -f-> N` at `M`: the image set of `g` is exactly
/// the preimage of the null set of `N`.
pub fn exact_at(
    k: &ModSys,
    m: &ModSys,
    n: &ModSys,
    g: &[usize],
    f: &[usize],
) -> Result<bool> {
    let n_null = n.null_set();
    for x in 0..k.n() {
        if !n_null.contains(&f[g[x]]) {
            return Err(Error::BadInput(
                "not a chain: the composite leaves the null set".into(),
            ));
        }
    }
    let image: BTreeSet<usize> = (0..k.n()).map(|x| g[x]).collect();
    let preimage: BTreeSet<usize> = (0..m.n()).filter(|&b| n_null.contains(&f[b])).collect();
    Ok(image == preimage)
}

// ---------------------------------------------------------------------------
// Annihilators
// ---------------------------------------------------------------------------

/// Tangible congruence on the ground generated by the pairs acting equally
/// on every element of the subset.
pub fn annihilator(m: &ModSys, subset: &[usize]) -> Congruence {
    let t0 = m.ground.tangibles0();
    let gens: Vec<(usize, usize)> = t0
        .iter()
        .flat_map(|&a0| t0.iter().map(move |&a1| (a0, a1)))
        .filter(|&(a0, a1)| subset.iter().all(|&s| m.act(a0, s) == m.act(a1, s)))
        .collect();
    congruence::generate(&m.ground, gens)
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

/// Structure-preserving bijection found by permuting tangibles and
/// extending additively.
pub fn find_isomorphism(a: &ModSys, b: &ModSys) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.tangibles.len() != b.tangibles.len() || a.ground != b.ground {
        return None;
    }
    let ta: Vec<usize> = a.tangibles.iter().copied().collect();
    let tb: Vec<usize> = b.tangibles.iter().copied().collect();
    let mut perm: Vec<usize> = (0..tb.len()).collect();
    loop {
        if let Some(iso) = try_extend(a, b, &ta, &tb, &perm) {
            return Some(iso);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn try_extend(
    a: &ModSys,
    b: &ModSys,
    ta: &[usize],
    tb: &[usize],
    perm: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.n()];
    map[a.zero] = b.zero;
    for (i, &t) in ta.iter().enumerate() {
        map[t] = tb[perm[i]];
    }
    // breadth-first additive closure from mapped elements
    let mut frontier: Vec<usize> = ta.to_vec();
    frontier.push(a.zero);
    while let Some(x) = frontier.pop() {
        for &t in ta {
            let y = a.a(x, t);
            let fy = b.a(map[x], map[t]);
            if map[y] == usize::MAX {
                map[y] = fy;
                frontier.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    let mut seen = vec![false; b.n()];
    for &y in &map {
        if seen[y] {
            return None;
        }
        seen[y] = true;
    }
    // full table preservation
    for x in 0..a.n() {
        if map[a.ng(x)] != b.ng(map[x]) {
            return None;
        }
        for y in 0..a.n() {
            if map[a.a(x, y)] != b.a(map[x], map[y]) {
                return None;
            }
        }
        for g in 0..a.ground.n() {
            if map[a.act(g, x)] != b.act(g, map[x]) {
                return None;
            }
        }
    }
    if !a.tangibles.iter().all(|&t| b.tangibles.contains(&map[t])) {
        return None;
    }
    Some(map)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Reversibility, submodules and the congruence correspondence
// ---------------------------------------------------------------------------

/// `a1 <| a2 + b` reverses to `a2 <| a1 (-) b` for tangible a1, a2.
pub fn is_t_reversible(m: &ModSys) -> bool {
    m.tangibles.iter().all(|&a1| {
        m.tangibles.iter().all(|&a2| {
            (0..m.n()).all(|b| {
                !m.leq(a1, m.a(a2, b)) || m.leq(a2, m.a(a1, m.ng(b)))
            })
        })
    })
}

/// Tangible submodules: subsets containing the quasi-zeros, closed under
/// addition, the ground action and negation, additively generated by
/// their tangibles-with-zero, and satisfying the witness-interpolation
/// condition.
pub fn t_submodules(m: &ModSys) -> Result<Vec<BTreeSet<usize>>> {
    let n = m.n();
    if n > 10 {
        return Err(Error::CarrierTooLarge(format!("{n} elements")));
    }
    let qz = m.quasi_zeros();
    let mut out = Vec::new();
    'subsets: for mask in 0..(1u32 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !set.contains(&m.zero) || !qz.is_subset(&set) {
            continue;
        }
        for &x in &set {
            if !set.contains(&m.ng(x)) {
                continue 'subsets;
            }
            for &y in &set {
                if !set.contains(&m.a(x, y)) {
                    continue 'subsets;
                }
            }
            for a in 0..m.ground.n() {
                if !set.contains(&m.act(a, x)) {
                    continue 'subsets;
                }
            }
        }
        // tangibles-with-zero of the subset generate it additively
        let tn0: Vec<usize> = set
            .iter()
            .copied()
            .filter(|i| m.tangibles.contains(i) || *i == m.zero)
            .collect();
        let mut span: BTreeSet<usize> = tn0.iter().copied().collect();
        loop {
            let mut grew = false;
            let cur: Vec<usize> = span.iter().copied().collect();
            for &x in &cur {
                for &t in &tn0 {
                    grew |= span.insert(m.a(x, t));
                }
            }
            if !grew {
                break;
            }
        }
        if span != set {
            continue;
        }
        // interpolation for tangible a: a <| b + v with v in the subset
        // admits a witness from the subset's tangibles-with-zero
        for &a in &m.tangibles {
            for b in 0..n {
                for &v in &set {
                    if m.leq(a, m.a(b, v)) && !tn0.iter().any(|&w| m.leq(a, m.a(b, w))) {
                        continue 'subsets;
                    }
                }
            }
        }
        out.push(set);
    }
    Ok(out)
}

/// The congruence attached to a tangible submodule: both sides decompose
/// into equally many tangibles-with-zero, each left part surpassed by its
/// right part bumped by a witness from the submodule.
pub fn cong_of_submodule(m: &ModSys, sub: &BTreeSet<usize>) -> BTreeSet<(usize, usize)> {
    let t0: Vec<usize> = m
        .tangibles
        .iter()
        .copied()
        .chain(std::iter::once(m.zero))
        .collect();
    let tn0: Vec<usize> = sub
        .iter()
        .copied()
        .filter(|i| m.tangibles.contains(i) || *i == m.zero)
        .collect();
    // pairs of equal-length decompositions up to the global bound,
    // accumulated as pairs of (left sum, right sum)
    let mut related: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut layer: Vec<(usize, usize)> = vec![(m.zero, m.zero)];
    related.insert((m.zero, m.zero));
    for _ in 0..DECOMPOSITION_LEN {
        let mut next = Vec::new();
        for &(l, r) in &layer {
            for &aj in &t0 {
                for &bj in &t0 {
                    if !tn0.iter().any(|&v| m.leq(aj, m.a(bj, v))) {
                        continue;
                    }
                    let pair = (m.a(l, aj), m.a(r, bj));
                    related.insert(pair);
                    next.push(pair);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        layer = next;
    }
    related
}

/// The submodule attached to a congruence: the additive span of the
/// tangible-with-zero differences of related tangible pairs.
pub fn submodule_of_cong(m: &ModSys, pairs: &BTreeSet<(usize, usize)>) -> BTreeSet<usize> {
    let t0: BTreeSet<usize> = m
        .tangibles
        .iter()
        .copied()
        .chain(std::iter::once(m.zero))
        .collect();
    let gens: Vec<usize> = pairs
        .iter()
        .filter(|(a, b)| t0.contains(a) && t0.contains(b))
        .map(|&(a, b)| m.a(a, m.ng(b)))
        .filter(|c| t0.contains(c))
        .collect();
    let mut span: BTreeSet<usize> = gens.iter().copied().collect();
    span.insert(m.zero);
    loop {
        let mut grew = false;
        let cur: Vec<usize> = span.iter().copied().collect();
        for &x in &cur {
            for &g in &gens {
                grew |= span.insert(m.a(x, g));
            }
        }
        if !grew {
            return span;
        }
    }
}

#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub reversible: bool,
    /// every tangible congruence is contained in the congruence of its
    /// submodule
    pub cong_recovers: bool,
    /// every tangible submodule is recovered from its congruence
    pub submodule_recovers: bool,
}

/// The correspondence between tangible submodules and tangible
/// congruences on a reversible module: `C` sits inside the congruence of
/// its submodule, and a submodule is exactly recovered from its own
/// congruence.
pub fn galois_check(m: &ModSys) -> Result<GaloisReport> {
    let reversible = is_t_reversible(m);
    let subs = t_submodules(m)?;
    let mut submodule_recovers = true;
    for sub in &subs {
        let c = cong_of_submodule(m, sub);
        let back = submodule_of_cong(m, &c);
        if &back != sub {
            submodule_recovers = false;
        }
    }
    // tangible congruences from tangible-pair seeds
    let t0: Vec<usize> = m
        .tangibles
        .iter()
        .copied()
        .chain(std::iter::once(m.zero))
        .collect();
    let mut cong_recovers = true;
    for &a in &t0 {
        for &b in &t0 {
            if a == b {
                continue;
            }
            let class_of = close_module_congruence(m, &[(a, b)]);
            let pairs: BTreeSet<(usize, usize)> = (0..m.n())
                .flat_map(|x| (0..m.n()).map(move |y| (x, y)))
                .filter(|&(x, y)| class_of[x] == class_of[y])
                .collect();
            let sub = submodule_of_cong(m, &pairs);
            let c2 = cong_of_submodule(m, &sub);
            if !pairs.iter().all(|p| c2.contains(p)) {
                cong_recovers = false;
            }
        }
    }
    Ok(GaloisReport { reversible, cong_recovers, submodule_recovers })
}

