// Temporary exploration harness; will be replaced by the real suites.

use xplan_core::ground::{ground, GroundingLimits};
use xplan_core::lang::{parse_domain, parse_instance, validate};
use xplan_core::planner::*;
use xplan_core::scenario::*;

fn grounded(config: &LibrarianConfig) -> xplan_core::ground::GroundedModel {
    let (dt, it) = build_librarian(config).unwrap();
    let d = parse_domain(&dt).unwrap();
    let i = parse_instance(&it).unwrap();
    ground(&validate(&d, &i).unwrap(), &GroundingLimits::default()).unwrap()
}

#[test]
fn probe_walkthrough_plan() {
    let m = grounded(&LibrarianConfig::walkthrough());
    let t0 = std::time::Instant::now();
    let sol = value_iteration(&m, &ViLimits::default()).unwrap();
    println!("VI took {:?}, V(s0) = {}", t0.elapsed(), sol.root_value(&m));
    let trace = extract_plan(&m, &sol.policy, &m.init, ExtractMode::MostLikely).unwrap();
    for line in trace.action_texts(&m) {
        println!("  {line}");
    }
    println!("return = {}", trace.total_return);
}

#[test]
fn probe_vi_vs_expectimax_default() {
    let m = grounded(&LibrarianConfig::default());
    let t0 = std::time::Instant::now();
    let sol = value_iteration(&m, &ViLimits::default()).unwrap();
    println!("VI took {:?}, V(s0) = {}", t0.elapsed(), sol.root_value(&m));
    let t0 = std::time::Instant::now();
    let v = Expectimax::default().value(&m, &m.init, m.horizon).unwrap();
    println!("expectimax took {:?}, v = {}", t0.elapsed(), v);
    println!("diff = {}", (v - sol.root_value(&m)).abs());
}

#[test]
fn probe_uct_agreement() {
    let m = grounded(&LibrarianConfig::default());
    let sol = value_iteration(&m, &ViLimits::default()).unwrap();
    let reference = sol.root_action(&m).unwrap();
    println!(
        "VI root action: {} ({})",
        reference, m.actions[reference]
    );
    for budget in [100u32, 1000, 10_000] {
        let t0 = std::time::Instant::now();
        let mut agree = 0;
        for seed in 1..=20u64 {
            let a = sampling_plan(
                &m,
                &m.init,
                m.horizon,
                &UctConfig {
                    budget,
                    ..Default::default()
                },
                seed,
            )
            .unwrap();
            if a == reference {
                agree += 1;
            }
        }
        println!(
            "budget {budget}: agreement {agree}/20 ({:?} total)",
            t0.elapsed()
        );
    }
}

#[test]
fn probe_uct_choice_detail() {
    let m = grounded(&LibrarianConfig::default());
    for seed in 1..=3u64 {
        let a = sampling_plan(
            &m,
            &m.init,
            m.horizon,
            &UctConfig { budget: 10_000, ..Default::default() },
            seed,
        )
        .unwrap();
        println!("seed {seed}: picked {} ({})", a, m.actions[a]);
    }
}

#[test]
fn probe_uct_walkthrough() {
    let m = grounded(&LibrarianConfig::walkthrough());
    let sol = value_iteration(&m, &ViLimits::default()).unwrap();
    let reference = sol.root_action(&m).unwrap();
    println!("VI root action: {} ({})", reference, m.actions[reference]);
    for budget in [100u32, 1000, 10_000] {
        let mut agree = 0;
        let t0 = std::time::Instant::now();
        for seed in 1..=20u64 {
            let a = sampling_plan(&m, &m.init, m.horizon,
                &UctConfig { budget, ..Default::default() }, seed).unwrap();
            if a == reference { agree += 1; }
        }
        println!("budget {budget}: agreement {agree}/20 ({:?})", t0.elapsed());
    }
}
