//! Acceptance suite. Each test writes one `PASS`/`FAIL`/`WARN` line for its
//! criterion straight to stderr (uncaptured), followed by indented detail
//! lines, then asserts. Tests hold a shared lock so timings run alone.

use std::io::Write as _;
use std::process::Command;
use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

use dfr_core::overflow_model::{
    overflow_fraction, overflow_fraction_enumerated, overflow_fraction_mc, OverflowModel,
};
use dfr_core::{estimate_top_passes, oracle_sort, Record, SortStats};
use radixbench::bench::{summarize, InputSpec};
use radixbench::csv_io::{load_csv, write_csv};
use radixbench::plot::{log256, parse_points};
use radixbench::{algo::run_sort, run_benchmark, Algo, DistKind, SortParams};

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(criterion: u32, title: &str, status: &str, details: &[String]) {
    let mut out = format!("[acceptance] {status} criterion {criterion}: {title}\n");
    for d in details {
        out.push_str("    ");
        out.push_str(d);
        out.push('\n');
    }
    let _ = std::io::stderr().write_all(out.as_bytes());
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn tagged(keys: impl IntoIterator<Item = u64>) -> Vec<Record> {
    keys.into_iter()
        .enumerate()
        .map(|(i, k)| Record::new(k, i as u64))
        .collect()
}

fn sorted_with(algo: Algo, input: &[Record], params: &SortParams) -> (Vec<Record>, SortStats) {
    let mut records = input.to_vec();
    let mut stats = SortStats::new();
    run_sort(algo, &mut records, params, &mut stats).unwrap();
    (records, stats)
}

#[test]
fn criterion_1_oracle_equivalence() {
    let _g = serial();
    let started = Instant::now();
    let params = SortParams::default();
    let mut failures = Vec::new();
    let mut cases = 0;
    for dist in DistKind::ALL {
        for n in [0, 1, 2, 10, 1_000, 100_000, 1_000_000] {
            for seed in 0..5 {
                let input = InputSpec::new(dist, n, seed).gen_spec(seed).generate().unwrap();
                let want = oracle_sort(&input);
                for algo in Algo::RADIX {
                    cases += 1;
                    if sorted_with(algo, &input, &params).0 != want {
                        failures.push(format!("{algo} {dist} n={n} seed={seed}"));
                    }
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let ok = failures.is_empty() && secs < 300.0;
    let mut details = vec![format!("{cases} cases, {} mismatches, {secs:.1}s (budget 300s)", failures.len())];
    details.extend(failures.iter().take(10).cloned());
    report(1, "oracle equivalence", verdict(ok), &details);
    assert!(ok, "{details:?}");
}

#[test]
fn criterion_2_stability() {
    let _g = serial();
    let params = SortParams::default();
    let mut failures = Vec::new();
    for seed in 0..5u64 {
        let keys = dfr_core::datagen::gen_uniform(10_000, seed)
            .into_iter()
            .map(|r| (r.key % 16).wrapping_mul(0x1357_9bdf_0246_8ace));
        let input = tagged(keys);
        for algo in Algo::RADIX {
            let (out, _) = sorted_with(algo, &input, &params);
            let distinct = {
                let mut k: Vec<u64> = out.iter().map(|r| r.key).collect();
                k.dedup();
                k.len()
            };
            let stable = out
                .windows(2)
                .all(|w| w[0].key < w[1].key || (w[0].key == w[1].key && w[0].tag < w[1].tag));
            if !stable || distinct != 16 {
                failures.push(format!("{algo} seed={seed} stable={stable} distinct={distinct}"));
            }
        }
    }
    let ok = failures.is_empty();
    let mut details = vec!["4 algorithms x 5 seeds, N=10000, 16 keys".to_owned()];
    details.extend(failures);
    report(2, "stability", verdict(ok), &details);
    assert!(ok, "{details:?}");
}

#[test]
fn criterion_3_counting_economy() {
    let _g = serial();
    let params = SortParams::default();
    let n = 1_000_000usize;
    let input = InputSpec::new(DistKind::Uniform, n, 2024).gen_spec(2024).generate().unwrap();
    let (_, lsd) = sorted_with(Algo::Lsd, &input, &params);
    let (_, dfr) = sorted_with(Algo::Dfr, &input, &params);

    let counted_passes = dfr.passes.saturating_sub(1).max(1);
    let overflow = dfr.overflow_records as f64 / n as f64;
    let bound = n as f64 * (counted_passes as f64 + overflow + 1.0);

    let lsd_exact = lsd.count_ops == 8 * n as u64;
    let below_lsd = dfr.count_ops < lsd.count_ops;
    let within = dfr.count_ops as f64 <= bound;
    let ok = lsd_exact && below_lsd && within;
    let details = vec![
        format!("{} lsd count_ops = {} (want {})", verdict(lsd_exact), lsd.count_ops, 8 * n),
        format!("{} dfr count_ops = {} < lsd", verdict(below_lsd), dfr.count_ops),
        format!(
            "{} dfr count_ops <= N x ({counted_passes} counted top passes + {overflow:.5} overflow + 1) = {bound:.0}",
            verdict(within)
        ),
    ];
    report(3, "counting economy", verdict(ok), &details);
    assert!(ok, "{details:?}");
}

#[test]
fn criterion_4_pass_estimation() {
    let _g = serial();
    let cube = 256usize.pow(3);
    let a = estimate_top_passes(cube, 256, 64);
    let b = estimate_top_passes(cube, 256, 1024);
    let ok = a == 3 && b == 2;
    let details = vec![
        format!("estimate_top_passes(256^3, 256, 64) = {a} (want 3)"),
        format!("estimate_top_passes(256^3, 256, 1024) = {b} (want 2)"),
    ];
    report(4, "pass estimation", verdict(ok), &details);
    assert!(ok, "{details:?}");
}

#[test]
fn criterion_5_overflow_model() {
    let _g = serial();
    const TRIALS: u64 = 100_000;
    const SEED: u64 = 7;
    let mut details = Vec::new();
    let mut ok = true;
    let mut sub = |pass: bool, line: String, details: &mut Vec<String>| {
        ok &= pass;
        details.push(format!("{} {line}", verdict(pass)));
    };

    for (n, m) in [(64, 16), (256, 64), (1000, 256), (4096, 256)] {
        let model = overflow_fraction(n, m).unwrap();
        let mc = overflow_fraction_mc(n, m, TRIALS, SEED).unwrap();
        let tol = (3.0 * mc.half_width).max(0.01);
        let diff = (model - mc.mean).abs();
        sub(
            diff <= tol,
            format!(
                "agreement ({n},{m}): model {model:.6} mc {:.6} +- {:.2e}, |diff| {diff:.6} <= {tol:.6}",
                mc.mean, mc.half_width
            ),
            &mut details,
        );
    }

    let model = overflow_fraction(4, 2).unwrap();
    let exact = overflow_fraction_enumerated(4, 2).unwrap();
    let mc = overflow_fraction_mc(4, 2, TRIALS, SEED).unwrap();
    sub(
        model == exact,
        format!("exhaustive (4,2): model {model:.6} == enumeration {exact:.6}"),
        &mut details,
    );
    sub(
        (mc.mean - exact).abs() <= mc.half_width,
        format!("exhaustive (4,2): mc {:.6} within {:.2e} of {exact:.6}", mc.mean, mc.half_width),
        &mut details,
    );

    let mut recursion = OverflowModel::new(256).unwrap();
    let seq = recursion.sequence(2000).unwrap().to_vec();
    let first_rise = (256..seq.len()).find(|&i| seq[i] > seq[i - 1]);
    sub(
        first_rise.is_none(),
        format!("monotone non-increasing tail for n in 256..2000, m=256 (first rise: {first_rise:?})"),
        &mut details,
    );

    for (n, limit) in [(1_000u64, 0.05), (100_000, 0.01)] {
        let model = overflow_fraction(n, 256).unwrap();
        let mc = overflow_fraction_mc(n, 256, TRIALS, SEED).unwrap();
        sub(model < limit, format!("model at n={n}, m=256: {model:.6} < {limit}"), &mut details);
        sub(
            mc.mean < limit,
            format!("mc at n={n}, m=256: {:.6} +- {:.2e} < {limit}", mc.mean, mc.half_width),
            &mut details,
        );
    }

    report(5, "overflow model vs simulation", verdict(ok), &details);
    assert!(ok, "{details:#?}");
}

#[test]
fn criterion_6_degenerate_inputs() {
    let _g = serial();
    let params = SortParams::default();
    let n = 100_000u64;
    let cases: Vec<(&str, Vec<Record>)> = vec![
        ("all-equal", tagged((0..n).map(|_| 0x0123_4567_89ab_cdef))),
        ("sorted", tagged((0..n).map(|i| i * 0x0000_a1b2_c3d4))),
        ("reverse", tagged((0..n).rev().map(|i| i * 0x0000_a1b2_c3d4))),
        ("single-bucket", tagged((0..n).map(|i| 0x7700_0000_0000_0000 | (i * 2_654_435_761 % (1 << 56))))),
    ];
    let depth_limit = params.plan.digit_count() as u64;
    let mut details = Vec::new();
    let mut ok = true;
    for (name, input) in &cases {
        let want = oracle_sort(input);
        for algo in Algo::RADIX {
            let (out, stats) = sorted_with(algo, input, &params);
            let pass = out == want && stats.max_recursion_depth <= depth_limit;
            ok &= pass;
            if !pass {
                details.push(format!("{algo} {name}: verified={} depth={}", out == want, stats.max_recursion_depth));
            }
        }
    }
    details.insert(0, format!("4 inputs x 4 algorithms at N={n}, depth limit {depth_limit}"));
    report(6, "degenerate-input robustness", verdict(ok), &details);
    assert!(ok, "{details:?}");
}

#[test]
fn criterion_7_performance_smoke() {
    let _g = serial();
    let params = SortParams::default();
    let input = InputSpec::new(DistKind::Uniform, 10_000_000, 99);
    let mut medians = Vec::new();
    for algo in [Algo::Lsd, Algo::Dfr] {
        let rows = run_benchmark(&input, algo, 5, &params).unwrap();
        medians.push(summarize(&rows)[0].median_ns * 1e-9);
    }
    let ratio = medians[1] / medians[0];
    let status = if ratio <= 1.05 { "PASS" } else { "WARN" };
    report(
        7,
        "performance smoke (informative)",
        status,
        &[format!(
            "N=1e7 uniform, median of 5: lsd {:.3}s, dfr {:.3}s, ratio {ratio:.3} (limit 1.05)",
            medians[0], medians[1]
        )],
    );
}

#[test]
fn criterion_8_harness_integrity() {
    let _g = serial();
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let svg_path = dir.path().join("plot.svg");
    let output = Command::new(env!("CARGO_BIN_EXE_radixbench"))
        .args(["sort", "--algo", "lsd,msd,fast,dfr", "--csv"])
        .arg(&csv_path)
        .arg("--plot")
        .arg(&svg_path)
        .output()
        .unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    let mut sub = |pass: bool, line: String, details: &mut Vec<String>| {
        ok &= pass;
        details.push(format!("{} {line}", verdict(pass)));
    };
    sub(
        output.status.success(),
        format!("radixbench sort exit status {}", output.status),
        &mut details,
    );
    if output.status.success() {
        let grid = [1_000usize, 10_000, 100_000, 1_000_000, 10_000_000];
        let text = std::fs::read(&csv_path).unwrap();
        let rows = load_csv(&csv_path).unwrap();
        let mut rewritten = Vec::new();
        write_csv(&rows, &mut rewritten).unwrap();
        sub(
            rewritten == text,
            format!("CSV round-trip: {} rows, {} bytes re-serialized identically", rows.len(), text.len()),
            &mut details,
        );
        sub(
            rows.len() == grid.len() * 4 * 3 && rows.iter().all(|r| r.verified),
            format!("{} rows, all verified", rows.len()),
            &mut details,
        );

        let svg = std::fs::read_to_string(&svg_path).unwrap();
        let points = parse_points(&svg);
        let worst = points
            .iter()
            .map(|(_, x, _)| grid.iter().map(|&n| (x - log256(n)).abs()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max);
        let per_algo = Algo::RADIX.iter().all(|a| {
            let mut xs: Vec<f64> = points.iter().filter(|p| p.0 == a.name()).map(|p| p.1).collect();
            xs.sort_by(f64::total_cmp);
            xs.len() == grid.len() && xs.iter().zip(grid).all(|(x, n)| (x - log256(n)).abs() <= 1e-9)
        });
        sub(
            per_algo && worst <= 1e-9,
            format!("{} plot points, max |x - log_256(N)| = {worst:.1e} (limit 1e-9)", points.len()),
            &mut details,
        );
    } else {
        details.push(String::from_utf8_lossy(&output.stderr).into_owned());
    }
    report(8, "harness integrity", verdict(ok), &details);
    assert!(ok, "{details:?}");
}
