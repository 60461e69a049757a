//! Golden-file CLI tests: every subcommand fixture must reproduce its
//! recorded output byte for byte under a fixed seed.
//!
//! Regenerate with `TSYS_BLESS=1 cargo test -p tsys --test cli_golden`.

use std::fs;
use std::path::{Path, PathBuf};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Case {
    name: String,
    expected_exit: i32,
    args: Vec<String>,
}

fn load_cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.splitn(3, '\t');
        let name = cols.next().unwrap().to_string();
        let expected_exit: i32 = cols.next().unwrap().parse().unwrap();
        let args: Vec<String> = cols
            .next()
            .unwrap()
            .split('|')
            .map(|a| {
                // file references are relative to the golden directory
                if let Some(rest) = a.strip_prefix("@fixtures/") {
                    format!("@{}", golden_dir().join("fixtures").join(rest).display())
                } else if let Some(rest) = a.strip_prefix("{\"finite\":@fixtures/") {
                    // inline spec with a file payload: splice the file in
                    let path = golden_dir().join("fixtures").join(rest.trim_end_matches('}'));
                    let payload = fs::read_to_string(path).unwrap();
                    format!("{{\"finite\":{}}}", payload.trim())
                } else {
                    a.to_string()
                }
            })
            .collect();
        out.push(Case { name, expected_exit, args });
    }
    out
}

fn run_case(case: &Case) -> (i32, String) {
    let mut argv = vec!["tsys".to_string()];
    argv.extend(case.args.iter().cloned());
    let mut buf = Vec::new();
    let code = tsys::cli::run(&argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn golden_outputs_are_stable() {
    let bless = std::env::var("TSYS_BLESS").is_ok();
    let mut failures = Vec::new();
    for case in load_cases() {
        let (code, output) = run_case(&case);
        let golden = golden_dir().join(format!("{}.out", case.name));
        if bless {
            fs::write(&golden, &output).unwrap();
        }
        if code != case.expected_exit {
            failures.push(format!(
                "{}: exit {} (expected {})",
                case.name, code, case.expected_exit
            ));
            continue;
        }
        let expected = fs::read_to_string(&golden)
            .unwrap_or_else(|_| panic!("missing golden file for {}", case.name));
        if expected != output {
            failures.push(format!(
                "{}: output drift\n--- expected\n{expected}\n--- actual\n{output}",
                case.name
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn runs_are_deterministic() {
    for case in load_cases().iter().take(12) {
        let a = run_case(case);
        let b = run_case(case);
        assert_eq!(a, b, "{} is not deterministic", case.name);
    }
}

#[test]
fn operation_registry_covers_the_surface() {
    use std::collections::{BTreeMap, BTreeSet};
    let mut by_op: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (op, sub) in tsys::cli::OPERATION_REGISTRY {
        by_op.entry(op).or_default().push(sub);
    }
    // exactly one subcommand per operation
    for (op, subs) in &by_op {
        assert_eq!(subs.len(), 1, "operation {op} mapped to {subs:?}");
        let valid: BTreeSet<&str> = tsys::cli::SUBCOMMANDS.iter().copied().collect();
        assert!(valid.contains(subs[0]), "unknown subcommand {} for {op}", subs[0]);
    }
    // every documented public operation appears
    let documented = [
        "make_supertropical",
        "make_maxplus",
        "make_minplus",
        "make_boolean",
        "make_nat",
        "negation_from_epsilon",
        "quasi_zero",
        "check_unique_negation",
        "check_meta_tangible",
        "check_bipotent",
        "height",
        "characteristic_subtriple",
        "check_surpassing_axioms",
        "compute_null_set",
        "make_krasner",
        "make_signs",
        "make_tropical_hyperfield",
        "build_s_of_h",
        "functor_t",
        "functor_e",
        "functor_c",
        "check_valuation",
        "twist_mul",
        "symmetrize",
        "embed",
        "sym_eval",
        "neg_det",
        "neg_adjoint",
        "vandermonde",
        "laplace_expansion_check",
        "conv_mul",
        "eval",
        "circ_roots",
        "check_root_bound",
        "circ_equiv",
        "bend_generators",
        "bend_equiv",
        "circ_supp",
        "is_functionally_tangible",
        "generate_congruence",
        "quotient",
        "twist_product",
        "is_prime",
        "radical",
        "annihilator",
        "chain_height",
        "localize",
        "localize_congruence",
        "classify_morphism",
        "derived_morphism_laws",
        "hom_triple",
        "dual_system",
        "direct_sum",
        "free_module",
        "span_check",
        "independence_check",
        "is_base",
        "tensor",
        "tensor_of_homomorphisms",
        "nonfunctoriality_witness",
        "tensor_power",
        "t_kernel",
        "null_monic",
        "null_onto",
        "exactness",
        "congruence_kernel",
        "congruence_image",
        "factor_through",
        "val",
        "trop",
        "val_arith_check",
        "tropical_ideal_pair_check",
        "valuated_matroid_check",
        "trop_ideal_to_bend",
    ];
    for op in documented {
        assert!(by_op.contains_key(op), "operation {op} missing from the registry");
    }
}
