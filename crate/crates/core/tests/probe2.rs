// temporary probe, will be removed
use std::time::Instant;
use oramsey_core::digraph::{make_grid, make_transitive_pattern};
use oramsey_core::params::{compute_parameters, ParamMode, Shrink};
use oramsey_core::pipeline::{find_embedding, Budgets};
use oramsey_core::ratio;
use oramsey_core::tournament::Tournament;
use oramsey_core::exact;

#[test]
#[ignore]
fn probe_theoretical_transitive() {
    let d = make_grid(1, 3).unwrap();
    let shrink = Shrink {
        sigma_s: ratio::ratio(1, 32),
        sigma_b: ratio::ratio(1, 2000),
        sigma_a: ratio::ratio(1, 2),
    };
    let p = compute_parameters(&d, ParamMode::Scaled(shrink)).unwrap();
    println!("c_s={} c_b={} c_a={} N={}", p.c_s, p.c_b, p.c_a, p.host_bound);
    let n = ratio::ceil_u64(&p.host_bound);
    println!("host n = {n}");
    let t0 = Instant::now();
    let t = Tournament::transitive(n as u32);
    println!("host built in {:?}", t0.elapsed());
    let t1 = Instant::now();
    let rep = find_embedding(&d, &t, &p, 5, &Budgets::default());
    println!("pipeline: success={} in {:?}, warnings={:?}", rep.outcome.is_ok(), t1.elapsed(), rep.warnings);
    if let Ok(emb) = &rep.outcome {
        println!("phi = {:?}", emb.phi);
    }
}

#[test]
#[ignore]
fn probe_witness_tt4() {
    let tt4 = make_transitive_pattern(4);
    let t0 = Instant::now();
    let w = exact::extremal_witness(&tt4, 7, 200_000, 3);
    println!("witness tt4@7: found={} in {:?}", w.is_some(), t0.elapsed());
}

#[test]
#[ignore]
fn probe_canonical8() {
    let t0 = Instant::now();
    let reps = exact::canonical_tournaments(8);
    println!("canonical n=8: {} reps in {:?}", reps.len(), t0.elapsed());
}
