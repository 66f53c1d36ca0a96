//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! Runs without the libtest harness so every verdict is printed even when an
//! earlier criterion fails; the process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::Instant;

use common::*;
use lsalgebroid::checks::{
    check_compatible, check_hn, check_hn_via_squares, check_koszul_vinberg,
    check_kvb, check_kvn, check_nijenhuis, check_pseudo_hessian, hierarchy, HierarchyBase,
};
use lsalgebroid::document::Tensor;
use lsalgebroid::expr::{parse_expr, print_expr};
use lsalgebroid::tensors::dual_algebroid;
use lsalgebroid::{Algebroid, BundleMap, Error, RatFunc, SymTensorCo, SymTensorContra};
use rand::Rng;

type Failures = Vec<String>;
type Criterion = (&'static str, fn(&mut Failures));

macro_rules! require {
    ($f:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $f.push(format!($($msg)+));
        }
    };
}

const H1: &[&[&str]] = &[&["(x^2+y^2)/2", "x*y"], &["x*y", "(x^2+y^2)/2"]];
const N_OMEGA: &[&[&str]] = &[&["(x^2+y^2)/(2*x)", "x"], &["y", "(x^2+y^2)/(2*y)"]];

fn criterion_1(f: &mut Failures) {
    let a = flat(2);
    let h = SymTensorContra::identity(2, 2);
    let h1 = SymTensorContra::new(parse_matrix(&a, H1)).unwrap();
    let n = BundleMap::new(parse_matrix(&a, H1));
    require!(f, check_koszul_vinberg(&a, &h).unwrap().holds(), "H = I is not KV");
    require!(f, check_koszul_vinberg(&a, &h1).unwrap().holds(), "H1 is not KV");
    require!(f, check_compatible(&a, &h, &h1).unwrap().holds(), "H, H1 not compatible");
    require!(f, check_nijenhuis(&a, &n).unwrap().holds(), "N not Nijenhuis");
    require!(f, check_kvn(&a, &h, &n).unwrap().holds(), "(H, N) not KVN");
    require!(f, check_kvn(&a, &h1, &n).unwrap().holds(), "(H1, N) not KVN");
    require!(f, oracle_is_kv(h1.matrix()), "oracle disagrees on H1");
    require!(f, oracle_is_nijenhuis(n.matrix()), "oracle disagrees on N");
}

fn criterion_2(f: &mut Failures) {
    let a = flat(2);
    let h = SymTensorContra::new(parse_matrix(&a, &[&["x", "0"], &["0", "y"]])).unwrap();
    let h1 = SymTensorContra::new(parse_matrix(&a, H1)).unwrap();
    let compat = check_compatible(&a, &h, &h1).unwrap();
    require!(f, !compat.holds(), "diag(x, y) and H1 reported compatible");
    let printed: Vec<String> = compat.residuals().iter().map(|r| a.chart().print(&r.value)).collect();
    require!(f, printed.iter().any(|p| p != "0"), "no printed nonzero bracket residual");
    let n = BundleMap::new(parse_matrix(&a, N_OMEGA));
    let nij = check_nijenhuis(&a, &n).unwrap();
    require!(f, !nij.holds(), "N_Ω reported Nijenhuis");
    let printed: Vec<String> = nij.residuals().iter().map(|r| a.chart().print(&r.value)).collect();
    require!(f, printed.iter().any(|p| p != "0"), "no printed nonzero torsion residual");
    require!(f, !oracle_is_nijenhuis(n.matrix()), "oracle says N_Ω is Nijenhuis");
    // Sample witness: T(e_0, e_0) has ∂x-component y²/x.
    let w = nij.residuals().iter().find(|r| r.index == vec![0, 0, 0]);
    require!(f, w.map(|r| a.chart().print(&r.value)) == Some("y^2/x".into()), "torsion[0,0,0] ≠ y^2/x");
    require!(f, oracle_torsion(n.matrix(), 0, 0, 0) == a.chart().parse("y^2/x").unwrap(), "oracle torsion[0,0,0]");
}

fn criterion_3(f: &mut Failures) {
    let a = flat(3);
    let h = SymTensorContra::new(parse_matrix(&a, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]])).unwrap();
    let b = SymTensorCo::new(parse_matrix(&a, &[&["x", "0", "0"], &["0", "y", "0"], &["0", "0", "z"]])).unwrap();
    let cert = check_kvb(&a, &h, &b).unwrap();
    require!(f, cert.holds(), "KVB fails: {:?}", cert.residuals());
    let n = parse_matrix(&a, &[&["x", "0", "0"], &["0", "y", "0"], &["0", "0", "0"]]);
    let bn = parse_matrix(&a, &[&["x^2", "0", "0"], &["0", "y^2", "0"], &["0", "0", "0"]]);
    require!(f, cert.derived_tensor("N") == Some(&n), "derived N ≠ diag(x, y, 0)");
    require!(f, cert.derived_tensor("B_N") == Some(&bn), "derived B_N ≠ diag(x², y², 0)");
    require!(f, oracle_is_cocycle(&bn), "oracle: B_N not a cocycle");
}

fn criterion_4(f: &mut Failures) {
    let a = flat(2);
    let n = BundleMap::new(parse_matrix(&a, H1));
    require!(f, check_hn(&a, &SymTensorCo::identity(2, 2), &n).unwrap().holds(), "(I, N) not HN");
    let b1 = SymTensorContra::new(parse_matrix(&a, H1)).unwrap().invert().unwrap();
    let expected = parse_matrix(
        &a,
        &[
            &["2*(x^2+y^2)/(x^2-y^2)^2", "-4*x*y/(x^2-y^2)^2"],
            &["-4*x*y/(x^2-y^2)^2", "2*(x^2+y^2)/(x^2-y^2)^2"],
        ],
    );
    require!(f, b1.matrix() == &expected, "invert(H1) ≠ B1");
    let product = oracle_mul(b1.matrix(), &parse_matrix(&a, H1));
    let id = lsalgebroid::Matrix::identity(2, 2);
    require!(f, product.as_slice() == id.rows(), "oracle: B1·H1 ≠ I");
    require!(f, check_hn(&a, &b1, &n).unwrap().holds(), "(B1, N) not HN");
}

#[derive(Default)]
struct Tally {
    instances: usize,
    positive: usize,
    negative: usize,
}

fn criterion_5(f: &mut Failures) {
    let mut rng = rng();
    let kv = kv_corpus(&mut rng, 12);
    let kvb = kvb_corpus(&mut rng, 6);
    let hn = hn_corpus(&mut rng, 6);
    let mut fixtures_kv = Vec::new();
    let mut fixtures_kvb = Vec::new();
    let mut fixtures_hn = Vec::new();
    for name in fixture_names() {
        let doc = load_fixture(&name);
        let a = doc.algebroid.clone();
        for (tn, t) in &doc.tensors {
            if let Tensor::Contravariant(h) = t {
                fixtures_kv.push(KvInstance { name: format!("{name}:{tn}"), algebroid: a.clone(), h: h.clone() });
                for (bn, u) in &doc.tensors {
                    if let Tensor::Covariant(b) = u {
                        fixtures_kvb.push(KvbInstance {
                            name: format!("{name}:{tn},{bn}"),
                            algebroid: a.clone(),
                            h: h.clone(),
                            b: b.clone(),
                        });
                    }
                }
            }
            if let Tensor::Covariant(b) = t {
                for (nn, u) in &doc.tensors {
                    if let Tensor::Endomorphism(n) = u {
                        fixtures_hn.push(HnInstance {
                            name: format!("{name}:{tn},{nn}"),
                            algebroid: a.clone(),
                            b: b.clone(),
                            n: n.clone(),
                        });
                    }
                }
            }
        }
    }
    let random = kv.len() + kvb.len() + hn.len();
    require!(f, random >= 50, "only {random} randomized instances");

    // (a), (b), (f) on contravariant tensors.
    let mut ta = Tally::default();
    for inst in kv.iter().chain(&fixtures_kv) {
        let a = &inst.algebroid;
        let is_kv = match check_koszul_vinberg(a, &inst.h) {
            Ok(c) => c.holds(),
            Err(e) => {
                f.push(format!("(f) {}: {e}", inst.name));
                continue;
            }
        };
        ta.instances += 1;
        if a.is_flat_tangent() {
            require!(f, is_kv == oracle_is_kv(inst.h.matrix()), "(f) KV oracle disagrees on {}", inst.name);
        }
        if is_kv {
            ta.positive += 1;
            let dual = dual_algebroid(a, &inst.h).unwrap();
            require!(f, dual.check_axioms().holds(), "(b) dual algebroid of {} fails axioms", inst.name);
        } else {
            ta.negative += 1;
        }
        if let Ok(b) = inst.h.invert() {
            match check_pseudo_hessian(a, &b) {
                Ok(c) => {
                    require!(f, c.holds() == is_kv, "(a) KV ⇔ pseudo-Hessian(H⁻¹) fails on {}", inst.name);
                    if a.is_flat_tangent() {
                        require!(f, c.holds() == oracle_is_cocycle(b.matrix()), "(f) cocycle oracle disagrees on {}", inst.name);
                    }
                }
                Err(e) => f.push(format!("(f) {}: {e}", inst.name)),
            }
        }
    }
    require!(f, ta.positive >= 5 && ta.negative >= 5, "(a) corpus not balanced: {} KV, {} not", ta.positive, ta.negative);

    // (c) on KVB candidates.
    let mut tc = Tally::default();
    for inst in kvb.iter().chain(&fixtures_kvb) {
        let a = &inst.algebroid;
        tc.instances += 1;
        let kvb_holds = check_kvb(a, &inst.h, &inst.b).unwrap().holds();
        if a.is_flat_tangent() {
            require!(f, check_pseudo_hessian(a, &inst.b).unwrap().holds() == oracle_is_cocycle(inst.b.matrix()), "(f) cocycle oracle on {}", inst.name);
        }
        if kvb_holds {
            tc.positive += 1;
            let n = BundleMap::new(inst.h.matrix().mul(inst.b.matrix()));
            require!(f, check_kvn(a, &inst.h, &n).unwrap().holds(), "(c) KVB ⇏ KVN on {}", inst.name);
        } else {
            tc.negative += 1;
        }
    }
    require!(f, tc.positive >= 5 && tc.negative >= 3, "(c) corpus not balanced: {} KVB, {} not", tc.positive, tc.negative);

    // (d), (e) on nondegenerate covariant tensors with bundle maps.
    let mut td = Tally::default();
    for inst in hn.iter().chain(&fixtures_hn) {
        let a = &inst.algebroid;
        if !is_nondegenerate(inst.b.matrix()) {
            continue;
        }
        td.instances += 1;
        let hn_holds = check_hn(a, &inst.b, &inst.n).unwrap().holds();
        if hn_holds {
            td.positive += 1;
        } else {
            td.negative += 1;
        }
        let h = inst.b.invert().unwrap();
        let kvn_holds = check_kvn(a, &h, &inst.n).unwrap().holds();
        require!(f, hn_holds == kvn_holds, "(d) HN ⇔ KVN(B⁻¹, N) fails on {}: hn {hn_holds}, kvn {kvn_holds}", inst.name);
        match check_hn_via_squares(a, &inst.b, &inst.n) {
            Ok(c) => require!(f, c.holds() == hn_holds, "(e) squares criterion disagrees on {}", inst.name),
            Err(Error::PreconditionFailed(_)) => {
                require!(f, !hn_holds, "(e) {} holds HN but fails the squares preconditions", inst.name)
            }
            Err(e) => f.push(format!("(e) {}: {e}", inst.name)),
        }
    }
    require!(f, td.positive >= 5 && td.negative >= 5, "(d) corpus not balanced: {} HN, {} not", td.positive, td.negative);

    println!(
        "    corpus: {random} randomized + {} fixture instances; KV {}/{}, KVB {}/{}, HN {}/{} (holds/total)",
        fixtures_kv.len() + fixtures_kvb.len() + fixtures_hn.len(),
        ta.positive,
        ta.instances,
        tc.positive,
        tc.instances,
        td.positive,
        td.instances
    );
}

fn criterion_6(f: &mut Failures) {
    let doc = load_fixture("r2_kvn");
    let a = &doc.algebroid;
    let h = doc.contravariant("H").unwrap().clone();
    let n = doc.endomorphism("N").unwrap();
    let hier = hierarchy(a, &HierarchyBase::Contravariant(h), n, 4).unwrap();
    require!(f, hier.members.len() == 5, "{} members", hier.members.len());
    require!(f, hier.member_certificates.iter().all(|c| c.holds()), "a member is not KV");
    let mut pairs = 0;
    for k in 0..5 {
        for l in k..5 {
            pairs += 1;
            let (hk, hl) = (
                SymTensorContra::new(hier.members[k].clone()).unwrap(),
                SymTensorContra::new(hier.members[l].clone()).unwrap(),
            );
            require!(f, check_compatible(a, &hk, &hl).unwrap().holds(), "pair ({k}, {l}) not compatible");
            require!(f, hier.pairwise[k][l].holds() && hier.pairwise[l][k].holds(), "table entry ({k}, {l}) fails");
        }
    }
    require!(f, pairs == 15 && hier.pair_count() == 15, "pair count {pairs}");
    for m in &hier.members {
        require!(f, oracle_is_kv(m), "oracle: member not KV");
    }

    let doc = load_fixture("separable_r2");
    let a = &doc.algebroid;
    let b = doc.covariant("B").unwrap().clone();
    let n = doc.endomorphism("N").unwrap();
    let hier = hierarchy(a, &HierarchyBase::Covariant(b), n, 3).unwrap();
    for (k, m) in hier.members.iter().enumerate() {
        let expected = parse_matrix(a, &[&[&format!("x^{k}"), "0"], &["0", &format!("y^{}", 2 * k)]]);
        require!(f, m == &expected, "B_N^{k} ≠ diag(x^k, y^2k)");
        let c = check_pseudo_hessian(a, &SymTensorCo::new(m.clone()).unwrap()).unwrap();
        require!(f, c.holds() && oracle_is_cocycle(m), "B_N^{k} not pseudo-Hessian");
    }
    require!(f, hier.holds(), "covariant hierarchy fails");
}

fn criterion_7(f: &mut Failures) {
    let doc = load_fixture("r2_kvn");
    let a = &doc.algebroid;
    let n = doc.endomorphism("N").unwrap();
    for k in 0..=3u32 {
        for l in 0..=(3 - k) {
            let composed = a.deform(&n.power(k).compose(&n.power(l))).unwrap();
            let iterated = a.deform(&n.power(k)).unwrap().deform(&n.power(l)).unwrap();
            require!(f, composed == iterated, "deform(A, N^{k}∘N^{l}) ≠ iterated deform");
        }
    }

    let mut rng = rng();
    let mut corpus: Vec<(String, Algebroid, BundleMap)> = nijenhuis_corpus(&mut rng, 9)
        .into_iter()
        .map(|i| (i.name, i.algebroid, i.n))
        .collect();
    for name in fixture_names() {
        let doc = load_fixture(&name);
        for (tn, t) in &doc.tensors {
            if let Tensor::Endomorphism(n) = t {
                corpus.push((format!("{name}:{tn}"), doc.algebroid.clone(), n.clone()));
            }
        }
    }
    let mut nijenhuis = 0;
    for (name, a, n) in &corpus {
        let holds = check_nijenhuis(a, n).unwrap().holds();
        if a.is_flat_tangent() {
            require!(f, holds == oracle_is_nijenhuis(n.matrix()), "Nijenhuis oracle disagrees on {name}");
        }
        if holds {
            nijenhuis += 1;
            let d = a.deform(n).unwrap();
            require!(f, d.check_axioms().holds(), "deform(A, N) fails axioms for {name}");
        }
    }
    require!(f, nijenhuis >= 5, "only {nijenhuis} Nijenhuis operators in the corpus");
    println!("    {} operators, {nijenhuis} Nijenhuis", corpus.len());
}

fn random_expression(rng: &mut impl Rng, depth: u32) -> String {
    let vars = ["x", "y", "z"];
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            vars[rng.gen_range(0..3)].to_string()
        } else {
            rng.gen_range(0..=9).to_string()
        };
    }
    match rng.gen_range(0..6) {
        0 => format!("{} + {}", random_expression(rng, depth - 1), random_expression(rng, depth - 1)),
        1 => format!("{} - ({})", random_expression(rng, depth - 1), random_expression(rng, depth - 1)),
        2 => format!("({})*({})", random_expression(rng, depth - 1), random_expression(rng, depth - 1)),
        3 => format!("({})/({})", random_expression(rng, depth - 1), random_expression(rng, depth - 1)),
        4 => format!("({})^{}", random_expression(rng, depth - 1), rng.gen_range(0..=3)),
        _ => format!("-({})", random_expression(rng, depth - 1)),
    }
}

fn lsacheck(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_lsacheck")).args(args).output().unwrap()
}

fn criterion_8(f: &mut Failures) {
    let vars = ["x", "y", "z"];
    let mut rng = rng();
    let mut tested = 0;
    while tested < 500 {
        let text = random_expression(&mut rng, 4);
        let value: RatFunc = match parse_expr(&text, &vars) {
            Ok(v) => v,
            Err(Error::Syntax { .. } | Error::ZeroDenominatorLiteral { .. }) => continue,
            Err(e) => {
                f.push(format!("`{text}`: {e}"));
                continue;
            }
        };
        tested += 1;
        let printed = print_expr(&value, &vars);
        match parse_expr(&printed, &vars) {
            Ok(back) => {
                require!(f, back == value, "round trip changed `{text}` (printed `{printed}`)");
                require!(f, print_expr(&back, &vars) == printed, "printing unstable for `{text}`");
            }
            Err(e) => f.push(format!("printed `{printed}` does not parse: {e}")),
        }
    }

    for (args, code) in [
        (&["kvn", "r2_kvn", "H", "N"][..], 0),
        (&["compatible", "omega", "H", "H1"][..], 1),
        (&["kv", "asymmetric", "B"][..], 2),
        (&["hierarchy", "r2_kvn", "H", "N", "--depth", "4"][..], 0),
    ] {
        let out = lsacheck(args);
        require!(f, out.status.code() == Some(code), "`{}` exited {:?}, expected {code}", args.join(" "), out.status.code());
    }
    let out = lsacheck(&["hierarchy", "r2_kvn", "H", "N", "--depth", "4", "--machine"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let pairs = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("pair")).count();
    let members = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("member")).count();
    require!(f, pairs == 15 && members == 5, "hierarchy report has {members} members, {pairs} pairs");

    for args in [
        &["compatible", "omega", "H", "H1", "--machine"][..],
        &["hn", "hn_omega", "B1", "N", "--machine"][..],
        &["hierarchy", "r2_kvn", "H", "N", "--depth", "4", "--machine"][..],
    ] {
        let (first, second) = (lsacheck(args), lsacheck(args));
        require!(f, first.stdout == second.stdout && !first.stdout.is_empty(), "`{}` output differs between runs", args.join(" "));
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("R² KV, compatibility, Nijenhuis and KVN example", criterion_1),
        ("Ω negative example with printed residuals", criterion_2),
        ("R³ KVB example with derived N and B_N", criterion_3),
        ("HN examples and inverse of H1", criterion_4),
        ("equivalence suite on randomized corpus and fixtures", criterion_5),
        ("contravariant and covariant hierarchies", criterion_6),
        ("deformation laws", criterion_7),
        ("parser round trip and CLI contract", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut failures = Failures::new();
        if let Err(p) = catch_unwind(AssertUnwindSafe(|| run(&mut failures))) {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            failures.push(format!("panicked: {msg}"));
        }
        let ms = start.elapsed().as_millis();
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({ms} ms) {title}", i + 1);
        for msg in &failures {
            println!("    {msg}");
        }
        if !failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
