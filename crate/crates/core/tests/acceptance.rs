//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed};
use rand::Rng;
use sepsys::dsep::SeparabilityLevel;
use sepsys::graph::{
    classify, reliability_closed_form, reliability_polynomial, spanning_tree_count, utility_and_difficulty,
};
use sepsys::partition::partition_decide_capped;
use sepsys::scalar::Scalar;
use sepsys::{
    is_separable, level_of_separability, mincut_certificate, partition_reduction, verify_certificate, Category,
    Comparison, Graph, HyperplaneCertificate, NamedGraph, PartitionInstance, Rational, Side, StateWord, System,
    Threshold,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn graph_verdict_separable(g: &Graph) -> bool {
    is_separable(&System::from_graph(g.clone()).unwrap())
        .unwrap()
        .is_separable()
}

fn ac1_classifier_matches_lp() -> Outcome {
    let mut graphs = all_connected_graphs(5);
    let exhaustive = graphs.len();
    let mut rng = rng(1);
    graphs.extend((0..500).map(|_| random_connected_graph(&mut rng, 6)));
    for g in &graphs {
        let by_class = classify(g).category.is_separable();
        ensure!(
            by_class == graph_verdict_separable(g),
            "disagreement on {:?}",
            g.edges()
        );
    }
    Ok(format!("{exhaustive} exhaustive n<=5, 500 random n=6, 0 disagreements"))
}

fn ac2_closed_form_matches_enumeration() -> Outcome {
    let mut rng = rng(2);
    let mut largest = 0;
    for _ in 0..200 {
        let g = random_separable_graph(&mut rng, 18);
        let probs: Vec<Rational> = (0..g.edge_count()).map(|_| random_prob(&mut rng, 12)).collect();
        largest = largest.max(g.edge_count());
        let closed = reliability_closed_form(&g, &probs).unwrap();
        ensure!(closed == brute_reliability(&g, &probs), "mismatch on {:?}", g.edges());
    }
    Ok(format!("200 graphs, up to {largest} edges, exact equality"))
}

fn check_partition<T: sepsys::Exact>(values: &[u64]) -> Result<(), String> {
    let instance = PartitionInstance::new(values.to_vec()).unwrap();
    let decision = partition_decide_capped::<T>(&instance, 16).unwrap();
    ensure!(
        decision.is_yes() == has_partition(values),
        "answer differs on {values:?}"
    );
    let s = instance.total();
    let count = if s.is_multiple_of(2) {
        subset_sum_count(values, s / 2)
    } else {
        0
    };
    ensure!(decision.half_sum_count == count, "half-sum count differs on {values:?}");
    let (s1, s2) = partition_reduction::<T>(&instance).unwrap();
    let difference = s2.reliability().unwrap() - s1.reliability().unwrap();
    let expected = T::from_int(count as i64) / T::from_int(1 << values.len());
    ensure!(
        difference == expected && decision.difference == expected,
        "difference differs on {values:?}"
    );
    if let Some(w) = &decision.witness {
        let half: u64 = w.iter().map(|&i| values[i - 1]).sum();
        ensure!(2 * half == s, "bad witness {w:?} for {values:?}");
    }
    Ok(())
}

/// Non-decreasing sequences of length `n` over `1..=max`.
fn multisets(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                let lo = v.last().copied().unwrap_or(1);
                (lo..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn ac3_partition_matches_dp() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=8 {
        for values in multisets(n, 9) {
            check_partition::<Ratio<i64>>(&values)?;
            exhaustive += 1;
        }
    }
    let mut rng = rng(3);
    let mut yes = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let max = if rng.gen_bool(0.5) { 20 } else { 1 << 12 };
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max)).collect();
        check_partition::<Rational>(&values)?;
        yes += has_partition(&values) as usize;
    }
    Ok(format!("{exhaustive} exhaustive multisets, 1000 random ({yes} YES)"))
}

fn ac4_fixtures() -> Outcome {
    for n in 4..=12 {
        let s = System::sn_family(n).unwrap();
        let verdict = is_separable(&s).unwrap();
        let cert = verdict.certificate().ok_or(format!("S_{n} reported separable"))?;
        ensure!(cert.verify(&s).unwrap(), "S_{n} certificate does not verify");
        if n % 2 == 0 {
            ensure!(cert.point.iter().all(|x| *x == q(1, 2)), "S_{n} point is not all-1/2");
        }
    }
    let mut k7_time = 0.0;
    for n in 4..=7 {
        let start = Instant::now();
        let g: Graph = NamedGraph::Complete(n).build().unwrap();
        let verdict = is_separable(&System::from_graph(g).unwrap()).unwrap();
        ensure!(!verdict.is_separable(), "K_{n} reported separable");
        ensure!(
            verdict.certificate().unwrap().is_consistent(),
            "K_{n} certificate inconsistent"
        );
        k7_time = start.elapsed().as_secs_f64();
    }
    let separable = [
        NamedGraph::Path(5),
        NamedGraph::Star(6),
        NamedGraph::Cycle(2),
        NamedGraph::Cycle(7),
    ];
    for named in separable {
        let verdict = is_separable(&System::from_graph(named.build().unwrap()).unwrap()).unwrap();
        ensure!(
            verdict.is_separable() && verdict.margin().is_positive(),
            "{named:?} not separable"
        );
    }
    let mut rng = rng(4);
    for _ in 0..30 {
        let g = random_separable_graph(&mut rng, 10);
        let verdict = is_separable(&System::from_graph(g.clone()).unwrap()).unwrap();
        ensure!(
            verdict.is_separable() && verdict.margin().is_positive(),
            "{:?} not separable",
            g.edges()
        );
    }
    let nonseparable = [
        NamedGraph::Butterfly,
        NamedGraph::Glasses,
        NamedGraph::KissingCycles(4, 3),
        NamedGraph::TwoCyclesWithPath(3, 5, 2),
        NamedGraph::Monma(2, 2, 1),
    ];
    for named in nonseparable {
        let g: Graph = named.build().unwrap();
        ensure!(
            classify(&g).category == Category::Nonseparable,
            "{named:?} misclassified"
        );
        let s = System::from_graph(g).unwrap();
        let verdict = is_separable(&s).unwrap();
        ensure!(!verdict.is_separable(), "{named:?} LP says separable");
        ensure!(
            verdict.certificate().unwrap().verify(&s).unwrap(),
            "{named:?} certificate fails"
        );
    }
    Ok(format!(
        "S_4..S_12, K_4..K_7 (K_7 LP {k7_time:.1}s), trees/cycles, named graphs"
    ))
}

fn ac5_small_monotone_systems_separable() -> Outcome {
    let mut checked = 0;
    for n in 1..=3usize {
        let size = 1usize << n;
        for bits in 0u32..1 << size {
            let table: Vec<bool> = (0..size).map(|i| bits >> i & 1 == 1).collect();
            let monotone = (0..size).all(|a| (0..size).all(|b| a & b != a || !table[a] || table[b]));
            if !monotone || table[0] || !table[size - 1] {
                continue;
            }
            let s = System::from_truth_table(n, table.clone()).unwrap();
            let verdict = is_separable(&s).unwrap();
            let h = verdict.hyperplane().ok_or(format!("table {table:?} nonseparable"))?;
            for (i, &up) in table.iter().enumerate() {
                let w = StateWord::from_index(n, i as u64).unwrap();
                ensure!(h.eval(&w).unwrap() == up, "hyperplane wrong on {w} for {table:?}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} monotone functions on 1..3 components"))
}

fn integer_cert(rows: &[(&[i64], i64)]) -> HyperplaneCertificate<Rational> {
    let hyperplanes = rows
        .iter()
        .map(|(w, a)| {
            Threshold::new(
                w.iter().map(|&x| Rational::from_int(x)).collect(),
                Rational::from_int(*a),
                Comparison::NonStrict,
            )
            .unwrap()
        })
        .collect();
    HyperplaneCertificate {
        side: Side::Pathset,
        hyperplanes,
    }
}

fn graph_system(named: NamedGraph) -> System {
    System::from_graph(named.build().unwrap()).unwrap()
}

fn ac6_d_separability() -> Outcome {
    let worked = [
        (
            NamedGraph::Butterfly,
            integer_cert(&[(&[1, 1, 1, 0, 0, 0], 2), (&[0, 0, 0, 1, 1, 1], 2)]),
        ),
        (
            NamedGraph::Glasses,
            integer_cert(&[(&[1, 1, 1, 0, 0, 0, 3], 5), (&[0, 0, 0, 1, 1, 1, 0], 2)]),
        ),
        (
            NamedGraph::Monma(2, 2, 1),
            integer_cert(&[(&[10, 10, 1, 1, 1], 12), (&[1, 1, 10, 10, 1], 12)]),
        ),
    ];
    for (named, cert) in &worked {
        ensure!(
            verify_certificate(&graph_system(*named), cert).unwrap().is_valid(),
            "{named:?} certificate invalid"
        );
    }
    for named in [NamedGraph::Butterfly, NamedGraph::Glasses, NamedGraph::Monma(2, 2, 1)] {
        let s = graph_system(named);
        match level_of_separability(&s, 3).unwrap() {
            SeparabilityLevel::Level { d: 2, certificate } => {
                ensure!(
                    verify_certificate(&s, &certificate).unwrap().is_valid(),
                    "{named:?} search cert invalid"
                )
            }
            other => return Err(format!("{named:?} level {:?}", other.d())),
        }
    }
    let separable: Vec<Graph> = fixtures()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| classify(g).category.is_separable())
        .collect();
    for g in &separable {
        let d = level_of_separability(&System::from_graph(g.clone()).unwrap(), 3)
            .unwrap()
            .d();
        ensure!(d == Some(1), "separable fixture {:?} has level {d:?}", g.edges());
    }
    let mut rng = rng(6);
    for _ in 0..100 {
        let n = rng.gen_range(2..=10);
        let s = random_monotone_system(&mut rng, n);
        let cert = mincut_certificate(&s).unwrap();
        ensure!(
            cert.d() == s.mincuts().unwrap().len(),
            "mincut certificate size differs from mu"
        );
        ensure!(
            verify_certificate(&s, &cert).unwrap().is_valid(),
            "mincut certificate invalid"
        );
    }
    Ok(format!(
        "3 worked certificates, d=2 searches, {} separable fixtures at d=1, 100 mincut bounds",
        separable.len()
    ))
}

fn ac7_kirchhoff() -> Outcome {
    let mut rng = rng(7);
    let mut graphs = 0;
    for (name, g) in fixtures() {
        if g.edge_count() > 16 {
            continue;
        }
        let trees = spanning_tree_count(&g);
        ensure!(
            trees == BigInt::from(brute_tree_count(&g)),
            "{name}: tree count {trees}"
        );
        let expected = match name {
            "butterfly" => Some(9),
            "K4" => Some(16),
            _ => None,
        };
        if let Some(t) = expected {
            ensure!(trees == BigInt::from(t), "{name}: expected {t} trees, got {trees}");
        }
        let poly = reliability_polynomial(&g, 20).unwrap();
        ensure!(poly.eval(&Rational::one()).is_one(), "{name}: R(1) != 1");
        let table = System::from_truth_table(g.edge_count(), connectivity_table(&g)).unwrap();
        for _ in 0..10 {
            let r = random_prob(&mut rng, 30);
            let brute = table
                .clone()
                .with_probs(vec![r.clone(); g.edge_count()])
                .unwrap()
                .reliability()
                .unwrap();
            ensure!(poly.eval(&r) == brute, "{name}: R({r}) differs");
        }
        graphs += 1;
    }
    Ok(format!(
        "{graphs} fixtures, Butterfly 9 and K_4 16 trees, 10 points each"
    ))
}

fn ac8_hereditarity() -> Outcome {
    let mut rng = rng(8);
    let (mut edges, mut nodes) = (0, 0);
    for _ in 0..1000 {
        let g = random_separable_graph(&mut rng, 14);
        let smaller = if g.node_count() > 1 && rng.gen_bool(0.5) {
            nodes += 1;
            g.remove_node(rng.gen_range(0..g.node_count())).unwrap()
        } else {
            edges += 1;
            g.remove_edge(rng.gen_range(0..g.edge_count())).unwrap()
        };
        ensure!(
            classify(&smaller).category != Category::Nonseparable,
            "deletion from {:?}",
            g.edges()
        );
    }
    Ok(format!("{edges} edge and {nodes} node deletions"))
}

fn ac9_utility_sweep() -> Outcome {
    let graphs = all_connected_graphs(6);
    let mut unit = 0;
    for g in &graphs {
        let ud = utility_and_difficulty(g).unwrap();
        let category = classify(g).category;
        let tree_or_cycle = matches!(category, Category::Tree | Category::ElementaryCycle);
        ensure!(
            (ud.utility == 1) == tree_or_cycle,
            "utility {} on {:?}",
            ud.utility,
            g.edges()
        );
        ensure!(ud.utility <= 1, "utility above 1 on {:?}", g.edges());
        if category.is_separable() {
            ensure!(ud.difficulty <= 0, "separable graph with difficulty {}", ud.difficulty);
        }
        unit += (ud.utility == 1) as usize;
    }
    Ok(format!("{} connected graphs, {unit} with u=1", graphs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1", "classifier agrees with LP", ac1_classifier_matches_lp),
        (
            "AC2",
            "closed-form reliability exact",
            ac2_closed_form_matches_enumeration,
        ),
        ("AC3", "partition reduction vs subset-sum DP", ac3_partition_matches_dp),
        ("AC4", "fixture verdicts and certificates", ac4_fixtures),
        ("AC5", "monotone N<=3 separable", ac5_small_monotone_systems_separable),
        ("AC6", "d-separability certificates", ac6_d_separability),
        ("AC7", "tree counts and reliability polynomial", ac7_kirchhoff),
        ("AC8", "deletions keep graphs separable", ac8_hereditarity),
        ("AC9", "utility and difficulty sweep", ac9_utility_sweep),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {title}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {title}: {why} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
