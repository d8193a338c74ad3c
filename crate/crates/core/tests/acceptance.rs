//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spexcess::analysis::{analyze_batch, Analysis, Config};
use spexcess::classify;
use spexcess::fixtures;
use spexcess::graph::Graph;
use spexcess::poly::{inner_product, InnerProductContext, Poly};
use spexcess::theorems;

type Outcome = Result<String, String>;

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * y.abs().max(f64::MIN_POSITIVE)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyze(g: Graph) -> Analysis {
    Analysis::new(g, Config::default()).expect("fixture analysis")
}

fn k23_headline() -> Outcome {
    let start = Instant::now();
    let an = analyze(fixtures::complete_bipartite(2, 3));
    let _ = theorems::all_reports(&an);
    let elapsed = start.elapsed();
    let st = &an.stats;
    let (e, h, d) = (st.spectral_excess, st.n_minus_harmonic, st.delta_star_d());
    ensure(rel_close(e, 1.5, 1e-9), || format!("spectralExcess = {e}"))?;
    ensure(rel_close(h, 25.0 / 17.0, 1e-9), || format!("n - H* = {h}"))?;
    ensure(rel_close(d, 35.0 / 24.0, 1e-9), || format!("delta*_D = {d}"))?;
    ensure(d < h && h < e, || "chain is not strict".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{e:.10} > {h:.10} > {d:.10} in {elapsed:.2?}"))
}

fn k23_perron() -> Outcome {
    let an = analyze(fixtures::complete_bipartite(2, 3));
    let mut worst: f64 = 0.0;
    for (u, &a) in an.perron.alpha.iter().enumerate() {
        let want = if an.graph.neighbors(u).len() == 3 {
            5f64.sqrt() / 2.0
        } else {
            5f64.sqrt() / 6f64.sqrt()
        };
        worst = worst.max((a - want).abs());
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn distance_regular_equality() -> Outcome {
    let mut names = Vec::new();
    for (name, g) in fixtures::distance_regular() {
        let an = analyze(g);
        let r = theorems::check_lee_weng(&an);
        let cert = r.certificates[0].residual;
        ensure(r.equality_holds && cert <= 1e-6, || {
            format!("{name}: equality {} residual {cert:e}", r.equality_holds)
        })?;
        let dr = classify::is_distance_regular(&an.graph, &an.distances);
        ensure(dr.holds, || format!("{name}: not recognized as distance-regular"))?;
        let arr = dr.intersection_array.as_ref().unwrap().to_string();
        let want = match name {
            "petersen" => Some("{3,2;1,1}"),
            "c4" => Some("{2,1;1,2}"),
            "c5" => Some("{2,1;1,1}"),
            "c6" => Some("{2,1,1;1,1,2}"),
            "c7" => Some("{2,1,1;1,1,1}"),
            "c8" => Some("{2,1,1,1;1,1,1,2}"),
            "k2" => Some("{1;1}"),
            "k3" => Some("{2;1}"),
            "k4" => Some("{3;1}"),
            "k5" => Some("{4;1}"),
            _ => None,
        };
        ensure(want.is_some_and(|w| w == arr), || format!("{name}: intersection array {arr}"))?;
        names.push(name);
    }
    ensure(names.len() == 10, || format!("only {} fixtures", names.len()))?;
    Ok(format!("{} graphs, Petersen {{3,2;1,1}}", names.len()))
}

fn path_negative_control() -> Outcome {
    let an = analyze(fixtures::path(3));
    let r = theorems::check_distance_polynomial_sufficient(&an);
    ensure(r.certificates.is_empty() && !r.equality_holds, || {
        format!("hypotheses unexpectedly hold: {}", r.verdict)
    })?;
    let dp = classify::is_distance_polynomial(&an.distances, &an.spectrum, &an.idempotents, 1e-7);
    let res = dp.residuals[2];
    ensure(!dp.holds && res > 0.1, || format!("A_2 residual {res}"))?;
    Ok(format!("hypotheses fail, A_2 residual {res:.6}"))
}

/// Seeded corpus: connected Erdős–Rényi graphs and random trees, `n <= 12`.
fn random_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let mut graphs = Vec::new();
    for _ in 0..120 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.2..0.8);
        graphs.push(fixtures::random_connected_gnp(n, p, &mut rng));
    }
    for _ in 0..80 {
        let n = rng.gen_range(2..=12);
        graphs.push(fixtures::random_tree(n, &mut rng));
    }
    graphs
}

/// Random polynomial of degree at most `max_degree` in the scaled variable `x / lambda_0`.
fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, lambda0: f64) -> Poly {
    let degree = rng.gen_range(0..=max_degree);
    Poly::new(
        (0..=degree)
            .map(|k| rng.gen_range(-1.0..1.0) / lambda0.powi(k as i32))
            .collect(),
    )
}

fn eq3_identity(corpus: &[Analysis]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for an in corpus {
        let global = InnerProductContext::global(&an.spectrum);
        let locals: Vec<_> = an
            .local_spectra
            .iter()
            .map(|ls| InnerProductContext::local(ls, &an.spectrum))
            .collect();
        for _ in 0..5 {
            // up to min d_u through the checked product, beyond it on raw values
            let low = random_poly(&mut rng, an.min_du(), an.spectrum.lambda0());
            let p = random_poly(&mut rng, an.d(), an.spectrum.lambda0());
            let q = random_poly(&mut rng, an.d(), an.spectrum.lambda0());
            let lhs = inner_product(&low, &low, &global).map_err(|e| e.to_string())?;
            let mut avg = 0.0;
            for ctx in &locals {
                avg += inner_product(&low, &low, ctx).map_err(|e| e.to_string())?;
            }
            worst = worst.max((lhs - avg / an.n() as f64).abs());

            let lhs = global.dot(&global.values(&p), &global.values(&q));
            let avg: f64 = locals.iter().map(|c| c.dot(&c.values(&p), &c.values(&q))).sum();
            worst = worst.max((lhs - avg / an.n() as f64).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn multiplicity_sums(corpus: &[Analysis]) -> Outcome {
    let mut worst: f64 = 0.0;
    for an in corpus {
        for (i, &m) in an.spectrum.multiplicities().iter().enumerate() {
            let s: f64 = an.local_spectra.iter().map(|ls| ls.local_mults[i]).sum();
            worst = worst.max((s - m as f64).abs());
        }
        for ls in &an.local_spectra {
            worst = worst.max((ls.local_mults.iter().sum::<f64>() - 1.0).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn eccentricity_bound(corpus: &[Analysis]) -> Outcome {
    let mut count = 0;
    for an in corpus {
        for ls in &an.local_spectra {
            ensure(ls.eccentricity <= ls.du, || {
                format!("vertex {} has eccentricity {} > d_u {}", ls.vertex, ls.eccentricity, ls.du)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} vertices"))
}

fn inequality_slacks(corpus: &[Analysis]) -> Outcome {
    let mut worst = f64::INFINITY;
    let mut count = 0;
    let mut track = |label: &str, slack: f64| -> Result<(), String> {
        count += 1;
        worst = worst.min(slack);
        ensure(slack >= -1e-7, || format!("{label}: slack {slack:e}"))
    };
    for an in corpus {
        track("T33", theorems::check_lee_weng(an).slack)?;
        for j in 0..=an.min_du() {
            let r = theorems::check_harmonic_bound(an, j).map_err(|e| e.to_string())?;
            track("T34", r.slack)?;
        }
        for m in 1..=an.diameter().min(an.d()) {
            let r = theorems::check_partial_drg(an, m).map_err(|e| e.to_string())?;
            track("P36", r.bound.slack)?;
        }
        let chain = theorems::check_chain(an);
        for c in &chain.comparisons {
            track("T37", c.slack)?;
        }
    }
    Ok(format!("{count} inequalities, min slack {worst:.1e}"))
}

fn polynomial_sums(corpus: &[Analysis]) -> Outcome {
    let mut worst: f64 = 0.0;
    for an in corpus {
        let n = an.n() as f64;
        let top = an.global.top();
        worst = worst.max((an.global.q_at_lambda0(top) - n).abs());
        let h = &an.global.sum_values[top];
        for (i, &v) in h.iter().enumerate() {
            let want = if i == 0 { n } else { 0.0 };
            worst = worst.max((v - want).abs());
        }
    }
    ensure(worst <= 1e-8, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn perron_weighted_degree(corpus: &[Analysis]) -> Outcome {
    let mut worst: f64 = 0.0;
    for an in corpus {
        let lambda0 = an.spectrum.lambda0();
        for u in 0..an.n() {
            let s: f64 = an.graph.neighbors(u).iter().map(|&v| an.perron.alpha[v]).sum();
            worst = worst.max((s / an.perron.alpha[u] - lambda0).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn oracle_agreement(corpus: &[Analysis]) -> Outcome {
    let mut vertices = 0;
    let mut levels = 0;
    for an in corpus {
        let tol = an.config.tol;
        for u in 0..an.n() {
            let spectral = theorems::check_local_spet(an, u).equality_holds;
            let comb = classify::is_pseudo_dr_around(&an.graph, u, &an.distances, &an.perron, tol.constancy);
            ensure(spectral == comb.holds, || {
                format!("T32 at vertex {u} of {:?}: spectral {spectral}, combinatorial {}", an.graph.edges(), comb.holds)
            })?;
            vertices += 1;
        }
        let level = classify::partial_dr_level(&an.distances, &an.global, &an.idempotents, tol.cert);
        for m in 1..=an.diameter().min(an.d()) {
            let eq = theorems::check_partial_drg(an, m).map_err(|e| e.to_string())?.conditions.equality_holds;
            ensure(eq == (level >= m), || {
                format!("P35 m={m} on {:?}: equality {eq}, level {level}", an.graph.edges())
            })?;
            levels += 1;
        }
    }
    Ok(format!("{vertices} vertex verdicts, {levels} level verdicts"))
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 K23 headline values and strict chain", k23_headline()),
        ("2 K23 Perron vector", k23_perron()),
        ("3 equality on distance-regular fixtures", distance_regular_equality()),
        ("4 P3 negative control", path_negative_control()),
    ];

    let start = Instant::now();
    let graphs = random_corpus();
    let analyses: Result<Vec<Analysis>, String> = analyze_batch(&graphs, Config::default())
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string());
    match analyses {
        Ok(random) => {
            let fixtures: Vec<Analysis> = fixtures::bundled().into_iter().map(|(_, g)| analyze(g)).collect();
            results.push(("5a inner product averaging identity", eq3_identity(&random)));
            results.push(("5b local multiplicity sums", multiplicity_sums(&random)));
            results.push(("5c eccentricity at most d_u", eccentricity_bound(&random)));
            results.push(("5d inequality slacks", inequality_slacks(&random)));
            results.push(("5e predistance sums and Hoffman values", polynomial_sums(&random)));
            results.push(("5f Perron-weighted degree", perron_weighted_degree(&random)));
            let all: Vec<Analysis> = fixtures.into_iter().chain(random).collect();
            results.push(("6 oracle agreement", oracle_agreement(&all)));
            let elapsed = start.elapsed();
            let verdict = ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))
                .map(|_| format!("{} random graphs in {elapsed:.2?}", graphs.len()));
            results.push(("7 randomized suite runtime", verdict));
        }
        Err(e) => results.push(("5-7 randomized suite", Err(format!("analysis failed: {e}")))),
    }

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
