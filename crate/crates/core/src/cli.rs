//! Command-line frontend. Every public operation is reachable from exactly
//! one canonical subcommand (see `OPERATION_REGISTRY`); inputs are JSON
//! (inline or `@file`), outputs are deterministic for a fixed seed, and
//! precondition violations exit with code 2 carrying a machine-readable
//! error object.

use crate::error::Error;
use crate::finsys::FinSys;
use crate::json::*;
use crate::system::System;
use crate::value::Value;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as J};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Canonical subcommand for each public library operation; the coverage
/// test keeps this list aligned with the library surface.
pub const OPERATION_REGISTRY: &[(&str, &str)] = &[
    ("make_supertropical", "sys-check"),
    ("make_maxplus", "sys-check"),
    ("make_minplus", "sys-check"),
    ("make_boolean", "sys-check"),
    ("make_nat", "sys-check"),
    ("check_unique_negation", "sys-check"),
    ("check_meta_tangible", "sys-check"),
    ("check_bipotent", "sys-check"),
    ("check_surpassing_axioms", "sys-check"),
    ("compute_null_set", "sys-check"),
    ("characteristic_subtriple", "classify-char"),
    ("quasi_zero", "elem"),
    ("height", "elem"),
    ("negation_from_epsilon", "elem"),
    ("symmetrize", "elem"),
    ("embed", "elem"),
    ("twist_mul", "elem"),
    ("sym_eval", "elem"),
    ("neg_det", "det"),
    ("laplace_expansion_check", "det"),
    ("neg_adjoint", "adj"),
    ("vandermonde", "vandermonde"),
    ("vandermonde_identity_check", "vandermonde"),
    ("eval", "eval"),
    ("conv_mul", "poly-mul"),
    ("circ_supp", "poly-mul"),
    ("circ_roots", "roots"),
    ("check_root_bound", "roots"),
    ("is_functionally_tangible", "roots"),
    ("bend_generators", "bend-equiv"),
    ("bend_equiv", "bend-equiv"),
    ("circ_equiv", "circ-equiv"),
    ("generate_congruence", "cong closure"),
    ("quotient", "cong quotient"),
    ("twist_product", "cong product"),
    ("is_prime", "cong prime"),
    ("radical", "cong radical"),
    ("chain_height", "cong height"),
    ("localize", "cong localize"),
    ("localize_congruence", "cong localize"),
    ("spectrum", "cong spectrum"),
    ("hom_triple", "mod hom"),
    ("free_module", "mod hom"),
    ("direct_sum", "mod hom"),
    ("dual_system", "mod dual"),
    ("classify_morphism", "mod classify"),
    ("derived_morphism_laws", "mod classify"),
    ("span_check", "mod span"),
    ("independence_check", "mod span"),
    ("is_base", "mod span"),
    ("tensor", "mod tensor"),
    ("tensor_of_homomorphisms", "mod tensor"),
    ("tensor_power", "mod tensor"),
    ("nonfunctoriality_witness", "mod tensor"),
    ("t_kernel", "mod exact"),
    ("null_monic", "mod exact"),
    ("null_onto", "mod exact"),
    ("exactness", "mod exact"),
    ("congruence_kernel", "mod kernel"),
    ("congruence_image", "mod kernel"),
    ("factor_through", "mod kernel"),
    ("annihilator", "mod annihilator"),
    ("make_krasner", "hyper build"),
    ("make_signs", "hyper build"),
    ("make_tropical_hyperfield", "hyper build"),
    ("build_s_of_h", "hyper build"),
    ("functor_c", "hyper build"),
    ("functor_t", "hyper functors"),
    ("functor_e", "hyper functors"),
    ("check_valuation", "valuation-check"),
    ("val", "trop"),
    ("trop", "trop"),
    ("val_arith_check", "trop"),
    ("trop_ideal_to_bend", "trop"),
    ("tropical_ideal_pair_check", "ideal-pair-check"),
    ("valuated_matroid_check", "matroid-check"),
];

pub const SUBCOMMANDS: &[&str] = &[
    "sys-check",
    "classify-char",
    "elem",
    "det",
    "adj",
    "vandermonde",
    "eval",
    "poly-mul",
    "roots",
    "bend-equiv",
    "circ-equiv",
    "cong closure",
    "cong quotient",
    "cong product",
    "cong prime",
    "cong radical",
    "cong spectrum",
    "cong height",
    "cong localize",
    "mod hom",
    "mod dual",
    "mod classify",
    "mod span",
    "mod tensor",
    "mod exact",
    "mod kernel",
    "mod annihilator",
    "hyper build",
    "hyper functors",
    "trop",
    "matroid-check",
    "ideal-pair-check",
    "valuation-check",
];

#[derive(Parser)]
#[command(name = "tsys", version, about = "exact tropical and supertropical computer algebra")]
struct Cli {
    /// Output format
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search and summand bound
    #[arg(long, global = true, default_value_t = 8)]
    bound: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SysArg {
    /// Carrier spec: builtin name, JSON, or @file
    #[arg(long)]
    system: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Axiom report for a carrier (tables, negation, surpassing relation,
    /// triple classification, structural predicates)
    SysCheck(SysArg),
    /// Characteristic sub-carrier generated by the unit, with its class
    ClassifyChar(SysArg),
    /// Element operations: quasi-zero, height, epsilon negation, embed,
    /// twist product, symmetrized evaluation
    Elem {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        op: String,
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        poly2: Option<String>,
    },
    /// Signed determinant and row expansions
    Det {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        matrix: String,
    },
    /// Signed adjoint
    Adj {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        matrix: String,
    },
    /// Vandermonde matrix and the factorization identity
    Vandermonde {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        points: String,
    },
    /// Polynomial evaluation
    Eval {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        point: String,
    },
    /// Convolution product, with the tangible support of the result
    PolyMul {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        other: String,
    },
    /// Quasi-zero roots over a finite domain; optional degree-bound scan
    /// and functional-tangibility report
    Roots {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        check_bound: Option<usize>,
        #[arg(long)]
        pool: Option<String>,
        #[arg(long, default_value_t = false)]
        tangibility: bool,
    },
    /// Bounded bidirectional bend search; lists the deletion generators
    BendEquiv {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        other: String,
    },
    /// Pointwise quasi-zero agreement on a domain
    CircEquiv {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        domain: String,
    },
    /// Congruence machinery on finite carriers
    Cong {
        #[arg(value_name = "MODE")]
        mode: String,
        #[command(flatten)]
        sys: SysArg,
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        pairs2: Option<String>,
        #[arg(long)]
        denoms: Option<String>,
    },
    /// Module machinery over a finite ground carrier
    Mod {
        #[arg(value_name = "MODE")]
        mode: String,
        #[arg(long)]
        ground: String,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        map2: Option<String>,
        #[arg(long)]
        vectors: Option<String>,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        power: Option<usize>,
        #[arg(long, default_value_t = false)]
        witness: bool,
        #[arg(long, default_value_t = false)]
        negated: bool,
    },
    /// Hyperfield constructions and the carrier functors
    Hyper {
        #[arg(value_name = "MODE")]
        mode: String,
        #[arg(long)]
        hyperfield: Option<String>,
        #[arg(long)]
        system: Option<String>,
    },
    /// Tropicalization: series valuation, coefficient-wise tropicalization,
    /// valuation arithmetic, bend generators of tropicalized generators
    Trop {
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value_t = false)]
        bend: bool,
    },
    /// Valuated-matroid axioms with witnesses
    MatroidCheck {
        #[arg(long)]
        matroid: String,
    },
    /// Finite tropical-ideal elimination certificate
    IdealPairCheck {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        candidates: Option<String>,
    },
    /// Valuation axioms for a named valuation on a carrier
    ValuationCheck {
        #[command(flatten)]
        sys: SysArg,
        #[arg(long, default_value = "identity")]
        nu: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

fn load(text: &str) -> Result<J, Error> {
    let raw = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::BadInput(format!("cannot read {path}: {e}")))?
    } else {
        text.to_string()
    };
    serde_json::from_str(&raw).map_err(|e| Error::BadInput(format!("malformed JSON: {e}")))
}

fn load_system(spec: &str) -> Result<System, Error> {
    // builtin names may be given bare
    if !spec.trim_start().starts_with(['{', '[', '"', '@']) {
        return parse_system(&J::String(spec.to_string()));
    }
    parse_system(&load(spec)?)
}

fn finite_of(sys: &System) -> Result<Arc<FinSys>, Error> {
    match sys {
        System::Finite(fs) => Ok(fs.clone()),
        _ => Err(Error::NotFinite),
    }
}

fn elems(sys: &System, j: &J) -> Result<Vec<Value>, Error> {
    j.as_array()
        .ok_or_else(|| Error::BadInput("expected an array of elements".into()))?
        .iter()
        .map(|e| parse_elem(sys, e))
        .collect()
}

/// Run the CLI against parsed arguments; returns the exit code and writes
/// the serialized result to the given sink.
pub fn run(argv: &[String], out: &mut dyn std::io::Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(out, "{e}");
            return 2;
        }
    };
    match dispatch(&cli) {
        Ok(result) => {
            emit(out, &cli.format, &result);
            0
        }
        Err(err) => {
            let code = match err {
                Error::IllDefined(_) => 1,
                _ => 2,
            };
            let obj = json!({"error": {"code": err.code(), "message": err.to_string()}});
            emit(out, &cli.format, &obj);
            code
        }
    }
}

fn emit(out: &mut dyn std::io::Write, format: &str, value: &J) {
    if format == "text" {
        match value.as_object() {
            Some(o) => {
                for (k, v) in o {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
            None => {
                let _ = writeln!(out, "{value}");
            }
        }
    } else {
        let _ = writeln!(out, "{value}");
    }
}

fn dispatch(cli: &Cli) -> Result<J, Error> {
    match &cli.cmd {
        Cmd::SysCheck(sys) => sys_check(&load_system(&sys.system)?, cli.seed),
        Cmd::ClassifyChar(sys) => {
            let fs = finite_of(&load_system(&sys.system)?)?;
            let out = crate::checks::characteristic_subtriple(&fs)?;
            Ok(json!({
                "class": out.class.as_str(),
                "elements": out.elements,
                "carrier": render_finsys(&out.carrier),
            }))
        }
        Cmd::Elem { sys, op, elem, other, poly, poly2 } => {
            elem_cmd(&load_system(&sys.system)?, op, elem, other, poly, poly2, cli.bound)
        }
        Cmd::Det { sys, matrix } => {
            let sys = load_system(&sys.system)?;
            let m = parse_matrix(&sys, &load(matrix)?)?;
            let det = crate::linalg::neg_det(&m)?;
            let rows: Vec<bool> = (0..m.n())
                .map(|r| crate::linalg::laplace_expansion_check(&m, r))
                .collect::<Result<_, _>>()?;
            Ok(json!({
                "det": render_elem(&sys, &det),
                "laplace_rows_agree": rows,
            }))
        }
        Cmd::Adj { sys, matrix } => {
            let sys = load_system(&sys.system)?;
            let m = parse_matrix(&sys, &load(matrix)?)?;
            let adj = crate::linalg::neg_adjoint(&m)?;
            Ok(json!({"adjoint": render_matrix(&adj)}))
        }
        Cmd::Vandermonde { sys, points } => {
            let sys = load_system(&sys.system)?;
            let pts = elems(&sys, &load(points)?)?;
            let v = crate::linalg::vandermonde(&sys, &pts)?;
            let det = crate::linalg::neg_det(&v)?;
            let identity = crate::linalg::vandermonde_identity_check(&sys, &pts)?;
            Ok(json!({
                "matrix": render_matrix(&v),
                "det": render_elem(&sys, &det),
                "identity_holds": identity,
            }))
        }
        Cmd::Eval { sys, poly, point } => {
            let sys = load_system(&sys.system)?;
            let p = parse_poly(&sys, &load(poly)?)?;
            let at = elems(&sys, &load(point)?)?;
            let v = crate::poly::eval(&sys, &p, &at)?;
            Ok(json!({"value": render_elem(&sys, &v)}))
        }
        Cmd::PolyMul { sys, poly, other } => {
            let sys = load_system(&sys.system)?;
            let f = parse_poly(&sys, &load(poly)?)?;
            let g = parse_poly(&sys, &load(other)?)?;
            let prod = crate::poly::conv_mul(&sys, &f, &g)?;
            Ok(json!({
                "product": render_poly(&sys, &prod),
                "circ_supp": prod.circ_supp(&sys).into_iter().collect::<Vec<_>>(),
            }))
        }
        Cmd::Roots { sys, poly, domain, check_bound, pool, tangibility } => {
            let sys = load_system(&sys.system)?;
            let dom = elems(&sys, &load(domain)?)?;
            let mut o = serde_json::Map::new();
            if let Some(p) = poly {
                let p = parse_poly(&sys, &load(p)?)?;
                let roots = crate::poly::circ_roots(&sys, &p, &dom)?;
                o.insert(
                    "roots".into(),
                    J::Array(roots.iter().map(|r| render_elem(&sys, r)).collect()),
                );
                if *tangibility {
                    let sample: Vec<Vec<Value>> = dom.iter().map(|d| vec![d.clone()]).collect();
                    let rep = crate::poly::is_functionally_tangible(&sys, &p, &sample, 90)?;
                    o.insert(
                        "functionally_tangible".into(),
                        json!({
                            "verdict": rep.verdict,
                            "exceptions": rep.exceptions.iter()
                                .map(|p| J::Array(p.iter().map(|v| render_elem(&sys, v)).collect()))
                                .collect::<Vec<J>>(),
                        }),
                    );
                }
            }
            if let Some(n) = check_bound {
                let pool = elems(
                    &sys,
                    &load(pool.as_deref().ok_or_else(|| {
                        Error::BadInput("--check-bound needs --pool".into())
                    })?)?,
                )?;
                let rep = crate::poly::check_root_bound(&sys, *n, &pool, &dom)?;
                o.insert(
                    "root_bound".into(),
                    json!({
                        "holds": rep.holds,
                        "polynomials_checked": rep.polynomials_checked,
                        "counterexample": rep.counterexample.map(|(f, roots)| json!({
                            "poly": render_poly(&sys, &f),
                            "roots": roots.iter().map(|r| render_elem(&sys, r)).collect::<Vec<J>>(),
                        })),
                    }),
                );
            }
            Ok(J::Object(o))
        }
        Cmd::BendEquiv { sys, poly, other } => {
            let sys = load_system(&sys.system)?;
            let f = parse_poly(&sys, &load(poly)?)?;
            let g = parse_poly(&sys, &load(other)?)?;
            let gens = crate::poly::bend_generators(&f);
            let outcome = crate::poly::bend_equiv(&sys, &f, &g, cli.bound)?;
            let (equiv, steps) = match outcome {
                crate::poly::BendOutcome::Equivalent { steps } => (json!(true), json!(steps)),
                crate::poly::BendOutcome::Inconclusive => (json!("inconclusive"), J::Null),
            };
            Ok(json!({
                "equiv": equiv,
                "steps": steps,
                "generators": gens.iter()
                    .map(|(a, b)| json!([render_poly(&sys, a), render_poly(&sys, b)]))
                    .collect::<Vec<J>>(),
            }))
        }
        Cmd::CircEquiv { sys, poly, other, domain } => {
            let sys = load_system(&sys.system)?;
            let f = parse_poly(&sys, &load(poly)?)?;
            let g = parse_poly(&sys, &load(other)?)?;
            let dom: Vec<Vec<Value>> = load(domain)?
                .as_array()
                .ok_or_else(|| Error::BadInput("domain must be an array of points".into()))?
                .iter()
                .map(|p| elems(&sys, p))
                .collect::<Result<_, _>>()?;
            Ok(json!({"equiv": crate::poly::circ_equiv(&sys, &f, &g, &dom)?}))
        }
        Cmd::Cong { mode, sys, pairs, pairs2, denoms } => {
            cong_cmd(mode, &load_system(&sys.system)?, pairs, pairs2, denoms)
        }
        Cmd::Mod {
            mode,
            ground,
            module,
            other,
            map,
            map2,
            vectors,
            subset,
            pairs,
            power,
            witness,
            negated,
        } => mod_cmd(ModCmdArgs {
            mode,
            ground,
            module,
            other,
            map,
            map2,
            vectors,
            subset,
            pairs,
            power: *power,
            witness: *witness,
            negated: *negated,
            bound: cli.bound,
        }),
        Cmd::Hyper { mode, hyperfield, system } => hyper_cmd(mode, hyperfield, system),
        Cmd::Trop { series, other, poly, bend } => trop_cmd(series, other, poly, *bend),
        Cmd::MatroidCheck { matroid } => {
            let c = parse_matroid(&load(matroid)?)?;
            let verdict = crate::puiseux::valuated_matroid_check(&c)?;
            let (ok, axiom, witness) = match &verdict {
                crate::puiseux::MatroidVerdict::Valuated => (true, J::Null, J::Null),
                crate::puiseux::MatroidVerdict::FailsNontriviality => {
                    (false, json!("nontriviality"), J::Null)
                }
                crate::puiseux::MatroidVerdict::FailsSymmetry { witness } => {
                    (false, json!("symmetry"), json!(witness))
                }
                crate::puiseux::MatroidVerdict::FailsRepeats { witness } => {
                    (false, json!("repeats"), json!(witness))
                }
                crate::puiseux::MatroidVerdict::FailsExchange { left, right } => {
                    (false, json!("exchange"), json!({"left": left, "right": right}))
                }
            };
            Ok(json!({"valuated": ok, "violated_axiom": axiom, "witness": witness}))
        }
        Cmd::IdealPairCheck { f, g, candidates } => {
            let minplus = System::minplus();
            let f = parse_poly(&minplus, &load(f)?)?;
            let g = parse_poly(&minplus, &load(g)?)?;
            let cands: Vec<crate::poly::Poly> = match candidates {
                None => Vec::new(),
                Some(c) => load(c)?
                    .as_array()
                    .ok_or_else(|| Error::BadInput("candidates must be an array".into()))?
                    .iter()
                    .map(|p| parse_poly(&minplus, p))
                    .collect::<Result<_, _>>()?,
            };
            let rep = crate::puiseux::tropical_ideal_pair_check(&f, &g, &cands)?;
            Ok(json!({
                "ok": rep.ok,
                "witnesses": rep.witnesses.iter().map(|(i, w)| json!({
                    "monomial": i,
                    "witness": w.as_ref().map(|p| render_poly(&minplus, p)),
                })).collect::<Vec<J>>(),
            }))
        }
        Cmd::ValuationCheck { sys, nu, samples } => {
            let sys = load_system(&sys.system)?;
            let mut rng = crate::seeded(cli.seed);
            let sample: Vec<Value> = (0..*samples).map(|_| sys.sample(&mut rng)).collect();
            let nu_fn: Box<dyn Fn(&Value) -> crate::hyperfield::THVal> = match nu.as_str() {
                "identity" => Box::new(|v: &Value| match v {
                    Value::Zero => crate::hyperfield::THVal::NegInf,
                    Value::Tangible(q) | Value::Ghost(q) => {
                        crate::hyperfield::THVal::V(q.clone())
                    }
                    _ => crate::hyperfield::THVal::NegInf,
                }),
                "constant-one" => {
                    let zero = sys.zero();
                    Box::new(move |v: &Value| {
                        if *v == zero {
                            crate::hyperfield::THVal::NegInf
                        } else {
                            crate::hyperfield::THVal::V(crate::rat::qi(0))
                        }
                    })
                }
                "neginf" => Box::new(|_: &Value| crate::hyperfield::THVal::NegInf),
                other => {
                    return Err(Error::BadInput(format!("unknown valuation `{other}`")))
                }
            };
            let rep = crate::hyperfield::check_valuation(&sys, &sample, nu_fn);
            Ok(json!({"ok": rep.ok, "violations": rep.violations}))
        }
    }
}

fn sys_check(sys: &System, seed: u64) -> Result<J, Error> {
    let mut o = serde_json::Map::new();
    o.insert("carrier".into(), json!(sys.label()));
    o.insert("is_triple".into(), json!(sys.is_triple()));
    match sys {
        System::Finite(fs) => {
            let report = fs.axiom_report();
            let checks: Vec<J> = report
                .iter()
                .map(|c| {
                    json!({
                        "axiom": c.name,
                        "pass": c.pass,
                        "structural": c.structural,
                        "witness": c.witness,
                    })
                })
                .collect();
            o.insert("axioms".into(), J::Array(checks));
            let un = crate::checks::check_unique_negation(fs);
            let mt = crate::checks::check_meta_tangible(fs);
            let bp = crate::checks::check_bipotent(fs);
            let null = crate::checks::compute_null_set(fs)?;
            o.insert(
                "unique_negation".into(),
                json!({"holds": un.holds, "witness": un.witness}),
            );
            o.insert(
                "meta_tangible".into(),
                json!({"holds": mt.holds, "witness": mt.witness}),
            );
            o.insert(
                "bipotent".into(),
                json!({"holds": bp.holds, "witness": bp.witness}),
            );
            o.insert(
                "null_set".into(),
                J::Array(null.iter().map(|&i| json!(fs.names[i])).collect()),
            );
            if let Some(v) = report.iter().find(|c| c.structural && !c.pass) {
                return Err(Error::BadInput(format!(
                    "axiom `{}` fails at {}",
                    v.name,
                    v.witness.clone().unwrap_or_default()
                )));
            }
        }
        _ => {
            // sampled laws on parametric carriers
            let mut rng = crate::seeded(seed);
            let mut ok = true;
            for _ in 0..2000 {
                let a = sys.sample(&mut rng);
                let b = sys.sample(&mut rng);
                let c = sys.sample(&mut rng);
                ok &= sys.add(&sys.add(&a, &b), &c) == sys.add(&a, &sys.add(&b, &c));
                ok &= sys.add(&a, &b) == sys.add(&b, &a);
                ok &= sys.mul(&a, &sys.add(&b, &c))
                    == sys.add(&sys.mul(&a, &b), &sys.mul(&a, &c));
                ok &= sys.negate(&sys.negate(&a)) == a;
                ok &= sys.negate(&sys.mul(&a, &b)) == sys.mul(&sys.negate(&a), &b);
            }
            o.insert("sampled_laws_hold".into(), json!(ok));
            if !ok {
                return Err(Error::IllDefined("sampled carrier laws failed".into()));
            }
        }
    }
    Ok(J::Object(o))
}

fn elem_cmd(
    sys: &System,
    op: &str,
    elem: &Option<String>,
    other: &Option<String>,
    poly: &Option<String>,
    poly2: &Option<String>,
    bound: usize,
) -> Result<J, Error> {
    let need = |o: &Option<String>, what: &str| -> Result<J, Error> {
        load(o.as_deref().ok_or_else(|| Error::BadInput(format!("missing --{what}")))?)
    };
    match op {
        "quasi-zero" => {
            let v = parse_elem(sys, &need(elem, "elem")?)?;
            Ok(json!({"result": render_elem(sys, &sys.quasi_zero(&v))}))
        }
        "height" => {
            let fs = finite_of(sys)?;
            let v = parse_elem(sys, &need(elem, "elem")?)?;
            let i = match v {
                Value::Sym(i) => i,
                _ => return Err(Error::NotFinite),
            };
            let h = crate::checks::height(&fs, i, bound);
            Ok(match h {
                crate::checks::Height::Finite(d) => json!({"height": d}),
                crate::checks::Height::ExceedsBound => json!({"height": "exceeds-bound"}),
            })
        }
        "neg-from-eps" => {
            let eps = parse_elem(sys, &need(elem, "elem")?)?;
            let out = crate::system::negation_from_epsilon(sys, &eps)?;
            Ok(json!({"carrier": out.label(), "unchanged": out == *sys}))
        }
        "embed" => {
            let base = match sys {
                System::Sym(b) => b.as_ref().clone(),
                other => other.clone(),
            };
            let v = parse_elem(&base, &need(elem, "elem")?)?;
            let sym = System::symmetrize(&base);
            let e = crate::symmetrize::embed(&base, &v)?;
            Ok(json!({"result": render_elem(&sym, &e)}))
        }
        "twist-mul" => {
            let x = parse_elem(sys, &need(elem, "elem")?)?;
            let y = parse_elem(sys, &need(other, "other")?)?;
            let p = crate::symmetrize::twist_mul(sys, &x, &y)?;
            Ok(json!({"result": render_elem(sys, &p)}))
        }
        "sym-eval" => {
            let base = match sys {
                System::Sym(b) => b.as_ref().clone(),
                _ => return Err(Error::BadInput("sym-eval needs a symmetrized carrier".into())),
            };
            let f = parse_poly(&base, &need(poly, "poly")?)?;
            let g = parse_poly(&base, &need(poly2, "poly2")?)?;
            let b = parse_elem(sys, &need(elem, "elem")?)?;
            let v = crate::symmetrize::sym_eval(&base, &f, &g, &b)?;
            let root = crate::symmetrize::is_symmetrized_root(&base, &f, &g, &b)?;
            Ok(json!({"value": render_elem(sys, &v), "is_root": root}))
        }
        other => Err(Error::BadInput(format!("unknown elem op `{other}`"))),
    }
}

fn cong_cmd(
    mode: &str,
    sys: &System,
    pairs: &Option<String>,
    pairs2: &Option<String>,
    denoms: &Option<String>,
) -> Result<J, Error> {
    use crate::congruence as cg;
    let fs = finite_of(sys)?;
    let parse = |p: &Option<String>| -> Result<cg::Congruence, Error> {
        let gens = match p {
            None => Vec::new(),
            Some(p) => parse_pairs(&fs, &load(p)?)?,
        };
        Ok(cg::generate(&fs, gens))
    };
    match mode {
        "closure" => {
            let c = parse(pairs)?;
            c.verify_closed(&fs)?;
            Ok(json!({
                "pairs": render_pairs(&fs, &c.pairs),
                "is_t_congruence": c.is_t_congruence(&fs),
            }))
        }
        "quotient" => {
            let c = parse(pairs)?;
            let q = cg::quotient(&fs, &c)?;
            Ok(json!({
                "carrier": render_finsys(&q.carrier),
                "projection": fs.names.iter().enumerate()
                    .map(|(i, n)| (n.clone(), json!(q.class_names[q.projection[i]])))
                    .collect::<serde_json::Map<String, J>>(),
            }))
        }
        "product" => {
            let c1 = parse(pairs)?;
            let c2 = parse(pairs2)?;
            let p = cg::twist_product(&fs, &c1, &c2);
            Ok(json!({"pairs": render_pairs(&fs, &p.pairs)}))
        }
        "prime" => {
            let c = parse(pairs)?;
            let lattice = cg::all_congruences(&fs)?;
            let t_lattice = cg::all_t_congruences(&fs)?;
            Ok(json!({
                "prime": cg::is_prime_in(&fs, &c, &lattice),
                "t_prime": cg::is_prime_in(&fs, &c, &t_lattice),
                "semiprime": cg::is_semiprime_in(&fs, &c, &t_lattice),
                "maximal": cg::is_maximal_in(&fs, &c, &t_lattice)?,
                "tangible_criterion": cg::primecrit_tangible(&fs, &c),
            }))
        }
        "radical" => {
            let c = parse(pairs)?;
            let r = cg::radical(&fs, &c);
            let t_lattice = cg::all_t_congruences(&fs)?;
            let inter = cg::intersection_of_primes_above(&fs, &c, &t_lattice);
            Ok(json!({
                "radical": render_pairs(&fs, &r.pairs),
                "equals_intersection_of_primes": r == inter,
            }))
        }
        "spectrum" => {
            let t_lattice = cg::all_t_congruences(&fs)?;
            let list: Vec<J> = t_lattice
                .iter()
                .map(|c| {
                    Ok(json!({
                        "pairs": render_pairs(&fs, &c.pairs),
                        "t_prime": cg::is_prime_in(&fs, c, &t_lattice),
                        "maximal": cg::is_maximal_in(&fs, c, &t_lattice)?,
                    }))
                })
                .collect::<Result<_, Error>>()?;
            Ok(json!({"t_congruences": list}))
        }
        "height" => Ok(json!({
            "height": cg::chain_height(&fs)?,
            "height_dfs": cg::chain_height_dfs(&fs)?,
        })),
        "localize" => {
            let denoms = denoms
                .as_deref()
                .ok_or_else(|| Error::BadInput("localize needs --denoms".into()))?;
            let s_set: BTreeSet<usize> = load(denoms)?
                .as_array()
                .ok_or_else(|| Error::BadInput("denoms must be an array".into()))?
                .iter()
                .map(|d| {
                    fs.index_of(
                        d.as_str()
                            .ok_or_else(|| Error::BadInput("denoms are names".into()))?,
                    )
                })
                .collect::<Result<_, _>>()?;
            let loc = cg::localize(&fs, &s_set)?;
            let kernel = loc.kernel(&fs);
            let saturation = cg::saturation_kernel(&fs, &s_set);
            let mut o = serde_json::Map::new();
            o.insert("carrier".into(), render_finsys(&loc.carrier));
            o.insert("kernel".into(), render_pairs(&fs, &kernel.pairs));
            o.insert("kernel_matches_saturation".into(), json!(kernel == saturation));
            o.insert("regular".into(), json!(cg::is_regular_set(&fs, &s_set)));
            if let Some(p) = pairs {
                let c = cg::generate(&fs, parse_pairs(&fs, &load(p)?)?);
                let lc = cg::localize_congruence(&fs, &c, &loc);
                o.insert("localized_congruence".into(), render_pairs(&loc.carrier, &lc.pairs));
            }
            Ok(J::Object(o))
        }
        other => Err(Error::BadInput(format!("unknown cong mode `{other}`"))),
    }
}

struct ModCmdArgs<'a> {
    mode: &'a str,
    ground: &'a str,
    module: &'a Option<String>,
    other: &'a Option<String>,
    map: &'a Option<String>,
    map2: &'a Option<String>,
    vectors: &'a Option<String>,
    subset: &'a Option<String>,
    pairs: &'a Option<String>,
    power: Option<usize>,
    witness: bool,
    negated: bool,
    bound: usize,
}

fn load_module(
    ground: &Arc<FinSys>,
    spec: &Option<String>,
    what: &str,
) -> Result<crate::modsys::ModSys, Error> {
    let spec = spec
        .as_deref()
        .ok_or_else(|| Error::BadInput(format!("missing --{what}")))?;
    let j = load(spec)?;
    if let Some(o) = j.as_object() {
        if let Some(k) = o.get("free") {
            let k = k.as_u64().ok_or_else(|| Error::BadInput("free rank".into()))? as usize;
            return crate::modsys::free_module(ground, k);
        }
        if o.get("ground").is_some_and(|g| g.as_bool() == Some(true)) {
            return Ok(crate::modsys::ground_module(ground));
        }
        if let Some(parts) = o.get("sum") {
            let mods: Vec<crate::modsys::ModSys> = parts
                .as_array()
                .ok_or_else(|| Error::BadInput("sum takes an array".into()))?
                .iter()
                .map(|p| load_module(ground, &Some(p.to_string()), what))
                .collect::<Result<_, _>>()?;
            let refs: Vec<&crate::modsys::ModSys> = mods.iter().collect();
            return crate::modsys::direct_sum(&refs);
        }
    }
    parse_modsys(ground, &j)
}

fn parse_map(m: &crate::modsys::ModSys, j: &J) -> Result<Vec<usize>, Error> {
    let o = j
        .as_object()
        .ok_or_else(|| Error::BadInput("maps are objects of element names".into()))?;
    let mut out = vec![usize::MAX; m.n()];
    for (k, v) in o {
        out[m.index_of(k)?] = m.index_of(
            v.as_str()
                .ok_or_else(|| Error::BadInput("map values are names".into()))?,
        )?;
    }
    if out.contains(&usize::MAX) {
        return Err(Error::BadInput("map must be total".into()));
    }
    Ok(out)
}

fn mod_cmd(a: ModCmdArgs<'_>) -> Result<J, Error> {
    use crate::modsys as ms;
    let ground = finite_of(&load_system(a.ground)?)?;
    match a.mode {
        "hom" => {
            let src = load_module(&ground, a.module, "module")?;
            let dst = load_module(&ground, a.other, "other")?;
            let hom = ms::hom_module(&src, &dst)?;
            Ok(json!({
                "count": hom.tables.len(),
                "tangible_count": hom.module.tangibles.len(),
                "carrier": render_modsys(&hom.module),
            }))
        }
        "dual" => {
            let rank = a.power.unwrap_or(1);
            let d = ms::dual_system(&ground, rank)?;
            Ok(json!({
                "count": d.hom.tables.len(),
                "pairing_onto": d.onto,
            }))
        }
        "classify" => {
            let src = load_module(&ground, a.module, "module")?;
            let dst = load_module(&ground, a.other, "other")?;
            let f = parse_map(
                &src,
                &load(a.map.as_deref().ok_or_else(|| Error::BadInput("missing --map".into()))?)?,
            )?;
            // target indices were parsed against src names; re-resolve
            let f_json = load(a.map.as_deref().unwrap())?;
            let f = resolve_map(&src, &dst, &f_json).unwrap_or(f);
            let rep = ms::classify_morphism(&src, &dst, &f, a.bound.min(4));
            let laws = ms::derived_morphism_laws(&src, &dst, &f);
            Ok(json!({
                "class": rep.class.as_str(),
                "violations": rep.violations,
                "derived_laws": {
                    "negation_compatible": laws.negation_compatible,
                    "action_compatible": laws.action_compatible,
                    "collapses_intervals": laws.collapses_intervals,
                },
            }))
        }
        "span" => {
            let m = load_module(&ground, a.module, "module")?;
            let vs: Vec<usize> = load(
                a.vectors
                    .as_deref()
                    .ok_or_else(|| Error::BadInput("missing --vectors".into()))?,
            )?
            .as_array()
            .ok_or_else(|| Error::BadInput("vectors must be an array".into()))?
            .iter()
            .map(|v| m.index_of(v.as_str().ok_or_else(|| Error::BadInput("names".into()))?))
            .collect::<Result<_, _>>()?;
            let targets: Vec<usize> = (0..m.n()).collect();
            let indep = ms::independence_check(&m, &vs)?;
            Ok(json!({
                "spans": ms::span_check(&m, &vs, &targets)?,
                "independent": indep.independent,
                "base": ms::is_base(&m, &vs)?,
                "symmetric_base": ms::is_symmetric_base(&m, &vs)?,
            }))
        }
        "tensor" => {
            if a.witness {
                let w = crate::tensor::nonfunctoriality_witness()?;
                let nm = |groups: &[(usize, usize)]| -> Vec<J> {
                    groups
                        .iter()
                        .map(|&(x, y)| json!([w.tensor.m1.names[x], w.tensor.m2.names[y]]))
                        .collect()
                };
                return Ok(json!({
                    "regroup_a": nm(&w.regroup_a),
                    "regroup_b": nm(&w.regroup_b),
                    "same_class": w.class,
                    "image_a": w.tensor.module.names[w.image_a],
                    "image_b": w.tensor.module.names[w.image_b],
                    "well_defined": false,
                }));
            }
            let m1 = Arc::new(load_module(&ground, a.module, "module")?);
            if let Some(k) = a.power {
                let powers = crate::tensor::tensor_power(&m1, k)?;
                let sizes: Vec<usize> = std::iter::once(m1.n())
                    .chain(powers.iter().map(|t| t.module.n()))
                    .collect();
                return Ok(json!({"power_sizes": sizes}));
            }
            let m2 = Arc::new(load_module(&ground, a.other, "other")?);
            let t = crate::tensor::tensor(&m1, &m2, a.negated)?;
            t.verify_bilinear_well_defined()?;
            Ok(json!({
                "classes": t.module.n(),
                "tangible_classes": t.module.tangibles.len(),
            }))
        }
        "exact" => {
            let k = load_module(&ground, a.module, "module")?;
            let m = load_module(&ground, a.other, "other")?;
            let g = resolve_map(
                &k,
                &m,
                &load(a.map.as_deref().ok_or_else(|| Error::BadInput("missing --map".into()))?)?,
            )?;
            match (a.map2, a.subset) {
                (Some(map2), Some(third)) => {
                    let n = load_module(&ground, &Some(third.clone()), "subset")?;
                    let f = resolve_map(&m, &n, &load(map2)?)?;
                    Ok(json!({
                        "exact_at_middle": ms::exact_at(&k, &m, &n, &g, &f)?,
                    }))
                }
                _ => {
                    let rep = ms::null_monic(&k, &m, &g);
                    Ok(json!({
                        "t_kernel": ms::t_kernel(&k, &m, &g).iter()
                            .map(|&t| json!(k.names[t])).collect::<Vec<J>>(),
                        "null": ms::is_null_morphism(&k, &m, &g),
                        "null_monic": rep.null_monic,
                        "null_onto": ms::null_onto(&k, &m, &g),
                    }))
                }
            }
        }
        "kernel" => {
            let src = load_module(&ground, a.module, "module")?;
            let dst = load_module(&ground, a.other, "other")?;
            let f = resolve_map(
                &src,
                &dst,
                &load(a.map.as_deref().ok_or_else(|| Error::BadInput("missing --map".into()))?)?,
            )?;
            let ker = ms::congruence_kernel(&src, &f);
            let fact = ms::factor_through(&src, &dst, &f)?;
            let recomposes = (0..src.n())
                .all(|x| fact.monic[fact.quotient.projection[x]] == f[x]);
            let mut o = serde_json::Map::new();
            o.insert(
                "kernel_pairs".into(),
                J::Array(
                    ker.iter()
                        .map(|&(x, y)| json!([src.names[x], src.names[y]]))
                        .collect(),
                ),
            );
            o.insert("quotient_classes".into(), json!(fact.quotient.module.n()));
            o.insert("recomposes".into(), json!(recomposes));
            if let Some(p) = a.pairs {
                let seed_pairs: Vec<(usize, usize)> = load(p)?
                    .as_array()
                    .ok_or_else(|| Error::BadInput("pairs".into()))?
                    .iter()
                    .map(|pr| {
                        let pr = pr.as_array().ok_or_else(|| Error::BadInput("pair".into()))?;
                        Ok((
                            src.index_of(pr[0].as_str().unwrap_or_default())?,
                            src.index_of(pr[1].as_str().unwrap_or_default())?,
                        ))
                    })
                    .collect::<Result<_, Error>>()?;
                let closed = ms::close_module_congruence(&src, &seed_pairs);
                let all: BTreeSet<(usize, usize)> = (0..src.n())
                    .flat_map(|x| (0..src.n()).map(move |y| (x, y)))
                    .filter(|&(x, y)| closed[x] == closed[y])
                    .collect();
                let img = ms::congruence_image(&src, &dst, &f, &all)?;
                let img_classes = img.iter().collect::<BTreeSet<_>>().len();
                o.insert("image_classes".into(), json!(img_classes));
            }
            Ok(J::Object(o))
        }
        "annihilator" => {
            let m = load_module(&ground, a.module, "module")?;
            let subset: Vec<usize> = match a.subset {
                None => (0..m.n()).collect(),
                Some(s) => load(s)?
                    .as_array()
                    .ok_or_else(|| Error::BadInput("subset must be an array".into()))?
                    .iter()
                    .map(|v| {
                        m.index_of(v.as_str().ok_or_else(|| Error::BadInput("names".into()))?)
                    })
                    .collect::<Result<_, _>>()?,
            };
            let ann = ms::annihilator(&m, &subset);
            Ok(json!({
                "pairs": render_pairs(&ground, &ann.pairs),
                "is_t_congruence": ann.is_t_congruence(&ground),
            }))
        }
        other => Err(Error::BadInput(format!("unknown mod mode `{other}`"))),
    }
}

/// Maps are written with source names as keys and target names as values.
fn resolve_map(
    src: &crate::modsys::ModSys,
    dst: &crate::modsys::ModSys,
    j: &J,
) -> Result<Vec<usize>, Error> {
    let o = j
        .as_object()
        .ok_or_else(|| Error::BadInput("maps are objects of element names".into()))?;
    let mut out = vec![usize::MAX; src.n()];
    for (k, v) in o {
        out[src.index_of(k)?] = dst.index_of(
            v.as_str()
                .ok_or_else(|| Error::BadInput("map values are names".into()))?,
        )?;
    }
    if out.contains(&usize::MAX) {
        return Err(Error::BadInput("map must be total".into()));
    }
    Ok(out)
}

fn hyper_cmd(
    mode: &str,
    hyperfield: &Option<String>,
    system: &Option<String>,
) -> Result<J, Error> {
    use crate::hyperfield as hf;
    match mode {
        "build" => {
            let spec = hyperfield
                .as_deref()
                .ok_or_else(|| Error::BadInput("missing --hyperfield".into()))?;
            if spec == "tropical" {
                // the power-set carrier of the tropical hyperfield is the
                // parametric carrier; report the isomorphism with the
                // supertropical carrier on a deterministic sample
                let sys = System::TropPowerSet;
                let st = System::supertropical();
                let mut rng = crate::seeded(1);
                let mut iso = true;
                for _ in 0..500 {
                    let a = sys.sample(&mut rng);
                    let b = sys.sample(&mut rng);
                    let fa = hf::trop_powerset_to_supertropical(&a)?;
                    let fb = hf::trop_powerset_to_supertropical(&b)?;
                    iso &= hf::trop_powerset_to_supertropical(&sys.add(&a, &b))?
                        == st.add(&fa, &fb);
                    iso &= hf::trop_powerset_to_supertropical(&sys.mul(&a, &b))?
                        == st.mul(&fa, &fb);
                    iso &= sys.is_tangible(&a) == st.is_tangible(&fa);
                    iso &= sys.leq(&a, &b) == st.leq(&fa, &fb);
                }
                return Ok(json!({
                    "carrier": "trop_power_set",
                    "isomorphic_to_supertropical": iso,
                }));
            }
            let h = if spec.trim_start().starts_with(['{', '@']) {
                parse_hyperfield(&load(spec)?)?
            } else {
                parse_hyperfield(&J::String(spec.to_string()))?
            };
            let s = hf::build_s_of_h(&h)?;
            let c = hf::functor_c(&h)?;
            hf::verify_product_well_defined(&h, 3)?;
            Ok(json!({
                "carrier": render_finsys(&s.carrier),
                "functor_c_agrees": *c.carrier == *s.carrier,
            }))
        }
        "functors" => {
            let sys = load_system(
                system
                    .as_deref()
                    .ok_or_else(|| Error::BadInput("missing --system".into()))?,
            )?;
            let fs = finite_of(&sys)?;
            let pair = hf::functor_t(&fs)?;
            let e = hf::functor_e(&pair)?;
            Ok(json!({
                "monoid": pair.monoid.iter().map(|&i| json!(fs.names[i])).collect::<Vec<J>>(),
                "systemized": e.label(),
                "is_triple": e.is_triple(),
            }))
        }
        other => Err(Error::BadInput(format!("unknown hyper mode `{other}`"))),
    }
}

fn trop_cmd(
    series: &Option<String>,
    other: &Option<String>,
    poly: &Option<String>,
    bend: bool,
) -> Result<J, Error> {
    use crate::puiseux as pz;
    let minplus = System::minplus();
    let mut o = serde_json::Map::new();
    if let Some(s) = series {
        let p = parse_puiseux(&load(s)?)?;
        o.insert("val".into(), render_elem(&minplus, &pz::val(&p)));
        if let Some(s2) = other {
            let q = parse_puiseux(&load(s2)?)?;
            let rep = pz::val_arith_check(&p, &q);
            o.insert(
                "arith".into(),
                json!({"mult_ok": rep.mult_ok, "sum_ok": rep.sum_ok, "detail": rep.detail}),
            );
        }
    }
    if let Some(p) = poly {
        let pp = parse_puiseux_poly(&load(p)?)?;
        let tp = pz::trop(&pp);
        o.insert("trop".into(), render_poly(&minplus, &tp));
        if bend {
            let gens = pz::trop_ideal_to_bend(std::slice::from_ref(&pp));
            o.insert(
                "bend_generators".into(),
                J::Array(
                    gens.iter()
                        .map(|(a, b)| {
                            json!([render_poly(&minplus, a), render_poly(&minplus, b)])
                        })
                        .collect(),
                ),
            );
        }
    }
    if o.is_empty() {
        return Err(Error::BadInput("trop needs --series or --poly".into()));
    }
    Ok(J::Object(o))
}
