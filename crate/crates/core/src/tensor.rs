//! Tensor products of finite module carriers, computed as honest
//! congruence quotients of a free carrier over the tangible pairs.
//! Tensor length is unbounded in general, which is exactly why every entry
//! point is guarded by a hard element-count bound.

use crate::error::{Error, Result};
use crate::modsys::{is_module_homomorphism, ModSys, TENSOR_FREE_BOUND};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A tensor product together with its canonical bilinear map data.
pub struct TensorBuild {
    pub module: ModSys,
    pub m1: Arc<ModSys>,
    pub m2: Arc<ModSys>,
    /// tangible pair (in M1, M2) backing each free-carrier slot
    pub slots: Vec<(usize, usize)>,
    /// free-carrier element -> tensor class
    pub class_of: Vec<usize>,
    /// ground-coefficient radix bookkeeping for the free carrier
    radix: usize,
    pub negated: bool,
}

fn free_index_decode(mut i: usize, radix: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(i % radix);
        i /= radix;
    }
    out
}

fn free_index_encode(coeffs: &[usize], radix: usize) -> usize {
    let mut i = 0;
    for &c in coeffs.iter().rev() {
        i = i * radix + c;
    }
    i
}

/// The tensor product of two finite modules over a shared ground carrier.
/// The free carrier is the ground-linear span of the tangible pairs; the
/// defining relations identify, slotwise, all tangible decompositions of
/// the same module element, move tangible scalars across the pairing, and
/// (for the negated product) slide the negation between the slots.
pub fn tensor(m1: &Arc<ModSys>, m2: &Arc<ModSys>, negated: bool) -> Result<TensorBuild> {
    if m1.ground != m2.ground {
        return Err(Error::BadInput("tensor needs a shared ground".into()));
    }
    let ground = &m1.ground;
    let t1: Vec<usize> = m1.tangibles.iter().copied().collect();
    let t2: Vec<usize> = m2.tangibles.iter().copied().collect();
    let slots: Vec<(usize, usize)> = t1
        .iter()
        .flat_map(|&a| t2.iter().map(move |&b| (a, b)))
        .collect();
    let k = slots.len();
    let radix = ground.n();
    let size = (radix as u128).checked_pow(k as u32);
    let Some(size) = size.filter(|&s| s <= TENSOR_FREE_BOUND as u128) else {
        return Err(Error::QuotientTooLarge(format!(
            "free carrier {}^{k}",
            radix
        )));
    };
    let size = size as usize;
    let slot_index = |a: usize, b: usize| -> Result<usize> {
        slots
            .iter()
            .position(|&(x, y)| x == a && y == b)
            .ok_or_else(|| Error::IllDefined("missing tangible slot".into()))
    };

    // free carrier as a module: coefficients per slot
    let f_add = |x: usize, y: usize| -> usize {
        let cx = free_index_decode(x, radix, k);
        let cy = free_index_decode(y, radix, k);
        let cz: Vec<usize> = cx.iter().zip(cy.iter()).map(|(&a, &b)| ground.a(a, b)).collect();
        free_index_encode(&cz, radix)
    };
    let f_act = |a: usize, x: usize| -> usize {
        let cx = free_index_decode(x, radix, k);
        let cz: Vec<usize> = cx.iter().map(|&c| ground.m(a, c)).collect();
        free_index_encode(&cz, radix)
    };
    // negation permutes slots by the first component and negates nothing
    // else: (-)(x (x) y) = ((-)x) (x) y
    let mut neg_slot = vec![0usize; k];
    for (i, &(a, b)) in slots.iter().enumerate() {
        let na = m1.ng(a);
        if !m1.tangibles.contains(&na) {
            return Err(Error::UnsupportedCarrier(format!(
                "negation leaves the tangibles of {}",
                m1.label
            )));
        }
        neg_slot[i] = slot_index(na, b)?;
    }
    let f_neg = |x: usize| -> usize {
        let cx = free_index_decode(x, radix, k);
        let mut cz = vec![0usize; k];
        for (i, &c) in cx.iter().enumerate() {
            cz[neg_slot[i]] = c;
        }
        free_index_encode(&cz, radix)
    };

    let one = ground.one.ok_or(Error::NoUnit)?;
    // a formal sum of tangible slots as a free-carrier element
    let formal = |terms: &[(usize, usize)]| -> Result<usize> {
        let mut coeffs = vec![ground.zero; k];
        for &(a, b) in terms {
            let s = slot_index(a, b)?;
            coeffs[s] = ground.a(coeffs[s], one);
        }
        Ok(free_index_encode(&coeffs, radix))
    };

    let dec1 = m1.decompositions();
    let dec2 = m2.decompositions();
    for x in 0..m1.n() {
        if dec1[x].is_empty() {
            return Err(Error::UnsupportedCarrier(format!(
                "{} in {} is not a bounded sum of tangibles",
                m1.names[x], m1.label
            )));
        }
    }
    for y in 0..m2.n() {
        if dec2[y].is_empty() {
            return Err(Error::UnsupportedCarrier(format!(
                "{} in {} is not a bounded sum of tangibles",
                m2.names[y], m2.label
            )));
        }
    }

    let mut seeds: Vec<(usize, usize)> = Vec::new();
    // slotwise: all tangible decompositions of one element agree
    for x in 0..m1.n() {
        if dec1[x].len() < 2 {
            continue;
        }
        for &b in &t2 {
            let base = formal(&dec1[x][0].iter().map(|&s| (s, b)).collect::<Vec<_>>())?;
            for d in &dec1[x][1..] {
                let other = formal(&d.iter().map(|&s| (s, b)).collect::<Vec<_>>())?;
                seeds.push((base, other));
            }
        }
    }
    for y in 0..m2.n() {
        if dec2[y].len() < 2 {
            continue;
        }
        for &a in &t1 {
            let base = formal(&dec2[y][0].iter().map(|&s| (a, s)).collect::<Vec<_>>())?;
            for d in &dec2[y][1..] {
                let other = formal(&d.iter().map(|&s| (a, s)).collect::<Vec<_>>())?;
                seeds.push((base, other));
            }
        }
    }
    // tangible scalars move across the pairing and absorb into
    // coefficients: c.(a (x) b) = (c a) (x) b = a (x) (c b)
    for &c in &ground.tangibles {
        for &(a, b) in &slots {
            let slot = slot_index(a, b)?;
            let mut coeffs = vec![ground.zero; k];
            coeffs[slot] = c;
            let scaled = free_index_encode(&coeffs, radix);
            let left = formal(&dec1[m1.act(c, a)][0].iter().map(|&s| (s, b)).collect::<Vec<_>>())?;
            let right = formal(&dec2[m2.act(c, b)][0].iter().map(|&s| (a, s)).collect::<Vec<_>>())?;
            seeds.push((scaled, left));
            seeds.push((scaled, right));
        }
    }
    if negated {
        for &(a, b) in &slots {
            let nb = m2.ng(b);
            if !m2.tangibles.contains(&nb) {
                return Err(Error::UnsupportedCarrier(format!(
                    "negation leaves the tangibles of {}",
                    m2.label
                )));
            }
            let lhs = formal(&[(m1.ng(a), b)])?;
            let rhs = formal(&[(a, nb)])?;
            seeds.push((lhs, rhs));
        }
    }

    // close as a module congruence on the free carrier
    let class_of = close_congruence_raw(size, &f_add, ground.n(), &f_act, &f_neg, &seeds);

    // quotient tables
    let nclasses = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut rep = vec![usize::MAX; nclasses];
    for x in 0..size {
        if rep[class_of[x]] == usize::MAX {
            rep[class_of[x]] = x;
        }
    }
    let mut add = vec![vec![0; nclasses]; nclasses];
    let mut action = vec![vec![0; nclasses]; ground.n()];
    let mut neg = vec![0; nclasses];
    for c in 0..nclasses {
        neg[c] = class_of[f_neg(rep[c])];
        for (a, row) in action.iter_mut().enumerate() {
            row[c] = class_of[f_act(a, rep[c])];
        }
        for d in 0..nclasses {
            add[c][d] = class_of[f_add(rep[c], rep[d])];
        }
    }
    for x in 0..size {
        for a in 0..ground.n() {
            if action[a][class_of[x]] != class_of[f_act(a, x)] {
                return Err(Error::IllDefined("tensor action conflicts".into()));
            }
        }
        if neg[class_of[x]] != class_of[f_neg(x)] {
            return Err(Error::IllDefined("tensor negation conflicts".into()));
        }
    }
    let zero_free = free_index_encode(&vec![ground.zero; k], radix);
    let mut tangibles = BTreeSet::new();
    for &(a, b) in &slots {
        tangibles.insert(class_of[formal(&[(a, b)])?]);
    }
    let names: Vec<String> = (0..nclasses).map(|c| format!("c{c}")).collect();
    let module = ModSys {
        ground: ground.clone(),
        label: format!("{}(x){}", m1.label, m2.label),
        names,
        add,
        action,
        zero: class_of[zero_free],
        tangibles,
        neg,
    };
    Ok(TensorBuild {
        module,
        m1: m1.clone(),
        m2: m2.clone(),
        slots,
        class_of,
        radix,
        negated,
    })
}

fn close_congruence_raw(
    n: usize,
    add: &impl Fn(usize, usize) -> usize,
    ground_n: usize,
    act: &impl Fn(usize, usize) -> usize,
    neg: &impl Fn(usize) -> usize,
    seeds: &[(usize, usize)],
) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut work: std::collections::VecDeque<(usize, usize)> = Default::default();
    macro_rules! union {
        ($a:expr, $b:expr) => {{
            let ra = find(&mut parent, $a);
            let rb = find(&mut parent, $b);
            if ra != rb {
                parent[ra] = rb;
                work.push_back(($a, $b));
            }
        }};
    }
    for &(a, b) in seeds {
        union!(a, b);
    }
    while let Some((x, y)) = work.pop_front() {
        union!(neg(x), neg(y));
        for z in 0..n {
            union!(add(x, z), add(y, z));
        }
        for a in 0..ground_n {
            union!(act(a, x), act(a, y));
        }
    }
    let mut root_to_class: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut out = vec![0usize; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        let next = root_to_class.len();
        out[x] = *root_to_class.entry(r).or_insert(next);
    }
    out
}

impl TensorBuild {
    fn slot_index(&self, a: usize, b: usize) -> Result<usize> {
        self.slots
            .iter()
            .position(|&(x, y)| x == a && y == b)
            .ok_or_else(|| Error::IllDefined("missing tangible slot".into()))
    }

    /// Free-carrier element of a formal sum of tangible slots.
    pub fn formal(&self, terms: &[(usize, usize)]) -> Result<usize> {
        let ground = &self.m1.ground;
        let one = ground.one.ok_or(Error::NoUnit)?;
        let mut coeffs = vec![ground.zero; self.slots.len()];
        for &(a, b) in terms {
            let s = self.slot_index(a, b)?;
            coeffs[s] = ground.a(coeffs[s], one);
        }
        Ok(free_index_encode(&coeffs, self.radix))
    }

    /// The canonical bilinear map on arbitrary module elements, through
    /// one tangible decomposition of each side. Representative
    /// independence is exactly what the defining congruence provides.
    pub fn simple_tensor(&self, x: usize, y: usize) -> Result<usize> {
        let dec1 = self.m1.decompositions();
        let dec2 = self.m2.decompositions();
        let dx = dec1[x]
            .first()
            .ok_or_else(|| Error::UnsupportedCarrier("no tangible decomposition".into()))?;
        let dy = dec2[y]
            .first()
            .ok_or_else(|| Error::UnsupportedCarrier("no tangible decomposition".into()))?;
        let terms: Vec<(usize, usize)> = dx
            .iter()
            .flat_map(|&a| dy.iter().map(move |&b| (a, b)))
            .collect();
        Ok(self.class_of[self.formal(&terms)?])
    }

    /// Verify the bilinear map is independent of the chosen decompositions.
    pub fn verify_bilinear_well_defined(&self) -> Result<()> {
        let dec1 = self.m1.decompositions();
        let dec2 = self.m2.decompositions();
        for x in 0..self.m1.n() {
            for y in 0..self.m2.n() {
                let mut value: Option<usize> = None;
                for dx in &dec1[x] {
                    for dy in &dec2[y] {
                        let terms: Vec<(usize, usize)> = dx
                            .iter()
                            .flat_map(|&a| dy.iter().map(move |&b| (a, b)))
                            .collect();
                        let c = self.class_of[self.formal(&terms)?];
                        match value {
                            None => value = Some(c),
                            Some(v) if v == c => {}
                            Some(v) => {
                                return Err(Error::IllDefined(format!(
                                    "bilinear map depends on the decomposition at ({},{}) ({v} vs {c})",
                                    self.m1.names[x], self.m2.names[y]
                                )))
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum TensorHomOutcome {
    /// The induced map on classes, well-defined on every representative.
    WellDefined(Vec<usize>),
    /// Two free-carrier representatives of one class with distinct images.
    Conflict { class: usize, images: (usize, usize) },
}

/// Apply `f1 (x) f2` slotwise on the free carrier and check the result is
/// constant on congruence classes. Homomorphisms always pass; the collapse
/// map of the nonfunctoriality example does not.
pub fn tensor_of_maps(
    src: &TensorBuild,
    dst: &TensorBuild,
    f1: &[usize],
    f2: &[usize],
) -> Result<TensorHomOutcome> {
    let ground = &src.m1.ground;
    let size = src.class_of.len();
    let mut image: Vec<Option<usize>> = vec![None; src.module.n()];
    for u in 0..size {
        let coeffs = free_index_decode(u, src.radix, src.slots.len());
        // sum over slots: coeff . (f1 a (x) f2 b)
        let mut acc = dst.module.zero;
        for (slot, &c) in coeffs.iter().enumerate() {
            if c == ground.zero {
                continue;
            }
            let (a, b) = src.slots[slot];
            let t = dst.simple_tensor(f1[a], f2[b])?;
            acc = dst.module.a(acc, dst.module.act(c, t));
        }
        let cls = src.class_of[u];
        match image[cls] {
            None => image[cls] = Some(acc),
            Some(prev) if prev == acc => {}
            Some(prev) => {
                return Ok(TensorHomOutcome::Conflict { class: cls, images: (prev, acc) })
            }
        }
    }
    Ok(TensorHomOutcome::WellDefined(
        image.into_iter().map(|o| o.expect("all classes inhabited")).collect(),
    ))
}

/// Verified tensor of two homomorphisms.
pub fn tensor_of_homomorphisms(
    src: &TensorBuild,
    dst: &TensorBuild,
    f1: &[usize],
    f2: &[usize],
) -> Result<Vec<usize>> {
    if !is_module_homomorphism(&src.m1, &dst.m1, f1)
        || !is_module_homomorphism(&src.m2, &dst.m2, f2)
    {
        return Err(Error::NotHomomorphism("tensor factors must be homomorphisms".into()));
    }
    match tensor_of_maps(src, dst, f1, f2)? {
        TensorHomOutcome::WellDefined(map) => Ok(map),
        TensorHomOutcome::Conflict { .. } => Err(Error::IllDefined(
            "tensor of homomorphisms produced a conflict".into(),
        )),
    }
}

/// Truncated tensor powers: `M, M(x)M, (M(x)M)(x)M, ...`.
pub fn tensor_power(m: &Arc<ModSys>, k: usize) -> Result<Vec<TensorBuild>> {
    if k < 1 {
        return Err(Error::BadInput("tensor power needs k >= 1".into()));
    }
    let mut out = Vec::new();
    let mut cur = m.clone();
    for _ in 2..=k {
        let t = tensor(&cur, m, true)?;
        cur = Arc::new(t.module.clone());
        out.push(t);
    }
    Ok(out)
}

/// The collapse map on the rank-2 free module over the booleans: identity
/// on the two generators, zero on their sum. It is order-compatible but
/// not additive, and its tensor square is not single-valued: one tensor
/// element has regroupings mapping to two different classes.
pub struct NonfunctorialityWitness {
    pub tensor: TensorBuild,
    pub collapse: Vec<usize>,
    /// two regroupings of the same element, as lists of (M, M) pairs
    pub regroup_a: Vec<(usize, usize)>,
    pub regroup_b: Vec<(usize, usize)>,
    pub class: usize,
    pub image_a: usize,
    pub image_b: usize,
}

pub fn nonfunctoriality_witness() -> Result<NonfunctorialityWitness> {
    let ground = Arc::new(crate::finsys::fin_boolean());
    let m = Arc::new(crate::modsys::free_module(&ground, 2)?);
    let tb = tensor(&m, &m, true)?;
    let e1 = m.index_of("(1,0)")?;
    let e2 = m.index_of("(0,1)")?;
    let both = m.a(e1, e2);
    // identity on the generators, zero on the two-monomial sum
    let mut collapse = vec![0usize; m.n()];
    collapse[m.zero] = m.zero;
    collapse[e1] = e1;
    collapse[e2] = e2;
    collapse[both] = m.zero;

    let regroup_a = vec![(e1, both), (e2, e2)];
    let regroup_b = vec![(e1, e1), (both, e2)];
    let eval = |groups: &[(usize, usize)], f: &[usize]| -> Result<usize> {
        let mut acc = tb.module.zero;
        for &(x, y) in groups {
            let t = tb.simple_tensor(f[x], f[y])?;
            acc = tb.module.a(acc, t);
        }
        Ok(acc)
    };
    // both regroupings denote the same tensor element
    let id: Vec<usize> = (0..m.n()).collect();
    let class_a = eval(&regroup_a, &id)?;
    let class_b = eval(&regroup_b, &id)?;
    if class_a != class_b {
        return Err(Error::IllDefined("regroupings should agree before mapping".into()));
    }
    let image_a = eval(&regroup_a, &collapse)?;
    let image_b = eval(&regroup_b, &collapse)?;
    if image_a == image_b {
        return Err(Error::IllDefined(
            "collapse map unexpectedly single-valued on the witness".into(),
        ));
    }
    Ok(NonfunctorialityWitness {
        tensor: tb,
        collapse,
        regroup_a,
        regroup_b,
        class: class_a,
        image_a,
        image_b,
    })
}
