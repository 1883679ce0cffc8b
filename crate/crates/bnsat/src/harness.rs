//! Benchmark harness: seeded solver-comparison runs over generated corpora,
//! with raw per-run CSV, summary CSV, and a markdown comparison table, plus
//! the mixing-probability sweep.
//!
//! Everything derives from a single master seed. Rerunning a plan reproduces
//! the raw CSV byte for byte except the wall-clock column; runs are
//! parallelized per instance without affecting results (each run owns its
//! RNG).

use std::hash::{DefaultHasher, Hash, Hasher};
use std::io::{self, Write};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::formula::Formula;
use crate::formula::generate::{GenSpec, generate};
use crate::solvers::{SolveBudget, SolveOutcome, Solver};

/// One table row: a corpus shape and how many instances to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub instances: usize,
}

/// A full benchmark: rows × algorithms, one run per (instance, algorithm).
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub rows: Vec<BenchRow>,
    pub algorithms: Vec<Solver>,
    pub budget: SolveBudget,
    pub master_seed: u64,
    pub clause_width: usize,
    /// Draw satisfiable (planted) instances; unforced corpora are also
    /// supported for qualitative comparison.
    pub forced: bool,
}

impl BenchPlan {
    pub fn new(rows: Vec<BenchRow>, algorithms: Vec<Solver>, budget: SolveBudget, master_seed: u64) -> Self {
        BenchPlan { rows, algorithms, budget, master_seed, clause_width: 3, forced: true }
    }

    /// Stable fingerprint of the configuration, for report headers.
    pub fn config_hash(&self) -> u64 {
        let mut hasher = DefaultHasher::new();
        format!("{self:?}").hash(&mut hasher);
        hasher.finish()
    }
}

/// One solver run with its provenance.
#[derive(Debug, Clone)]
pub struct RawRun {
    pub algorithm: String,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub instance: usize,
    pub gen_seed: u64,
    pub solve_seed: u64,
    pub outcome: SolveOutcome,
}

/// Aggregates of one (row, algorithm) cell. Medians are taken over solved and
/// unsolved runs alike; an unsolved run contributes the iterations it
/// consumed, which sit at the budget cap.
#[derive(Debug, Clone)]
pub struct BenchCell {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub algorithm: String,
    pub instances: usize,
    pub solved_pct: f64,
    pub median_iterations: f64,
    pub median_micro_updates: f64,
    pub median_elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub cells: Vec<BenchCell>,
    pub master_seed: u64,
    pub config_hash: u64,
}

impl BenchReport {
    pub fn cell(&self, num_vars: usize, num_clauses: usize, algorithm: &str) -> Option<&BenchCell> {
        self.cells
            .iter()
            .find(|c| c.num_vars == num_vars && c.num_clauses == num_clauses && c.algorithm == algorithm)
    }
}

/// Runs the whole plan. Returns the aggregated report plus every raw run in
/// deterministic (row, instance, algorithm) order.
pub fn run_bench(plan: &BenchPlan) -> (BenchReport, Vec<RawRun>) {
    let mut seeder = ChaCha8Rng::seed_from_u64(plan.master_seed);
    // Draw all seeds up front, in plan order, so parallel scheduling cannot
    // perturb them.
    let mut units: Vec<(usize, usize, u64, u64)> = Vec::new();
    for (row_index, row) in plan.rows.iter().enumerate() {
        for instance in 0..row.instances {
            let gen_seed = seeder.next_u64();
            let solve_seed = seeder.next_u64();
            units.push((row_index, instance, gen_seed, solve_seed));
        }
    }

    let runs: Vec<Vec<RawRun>> = units
        .par_iter()
        .map(|&(row_index, instance, gen_seed, solve_seed)| {
            let row = &plan.rows[row_index];
            let formula = generate_instance(plan, row, gen_seed);
            plan.algorithms
                .iter()
                .map(|solver| RawRun {
                    algorithm: solver.label(),
                    num_vars: row.num_vars,
                    num_clauses: row.num_clauses,
                    instance,
                    gen_seed,
                    solve_seed,
                    outcome: solver.run(&formula, &plan.budget, solve_seed),
                })
                .collect()
        })
        .collect();
    let runs: Vec<RawRun> = runs.into_iter().flatten().collect();

    let mut cells = Vec::new();
    for row in &plan.rows {
        for solver in &plan.algorithms {
            let label = solver.label();
            let cell_runs: Vec<&RawRun> = runs
                .iter()
                .filter(|r| r.num_vars == row.num_vars && r.num_clauses == row.num_clauses && r.algorithm == label)
                .collect();
            cells.push(aggregate(row, &label, &cell_runs));
        }
    }

    (BenchReport { cells, master_seed: plan.master_seed, config_hash: plan.config_hash() }, runs)
}

fn generate_instance(plan: &BenchPlan, row: &BenchRow, gen_seed: u64) -> Formula {
    let mut spec = GenSpec::new(row.num_vars, row.num_clauses, gen_seed).with_width(plan.clause_width);
    if plan.forced {
        spec = spec.forced();
    }
    generate(&spec)
}

fn aggregate(row: &BenchRow, label: &str, runs: &[&RawRun]) -> BenchCell {
    let solved = runs.iter().filter(|r| r.outcome.is_solved()).count();
    BenchCell {
        num_vars: row.num_vars,
        num_clauses: row.num_clauses,
        algorithm: label.to_string(),
        instances: runs.len(),
        solved_pct: 100.0 * solved as f64 / runs.len().max(1) as f64,
        median_iterations: median(runs.iter().map(|r| r.outcome.counters.transitions as f64)),
        median_micro_updates: median(runs.iter().map(|r| r.outcome.counters.micro_updates as f64)),
        median_elapsed_ms: median(runs.iter().map(|r| r.outcome.elapsed.as_secs_f64() * 1e3)),
    }
}

/// Median with the usual midpoint convention for even counts; NaN-free
/// because counters are finite.
fn median(values: impl Iterator<Item = f64>) -> f64 {
    let mut values: Vec<f64> = values.collect();
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 { values[mid] } else { (values[mid - 1] + values[mid]) / 2.0 }
}

/// Raw per-run CSV; the `elapsed_ms` column is the only non-reproducible one.
pub fn write_raw_csv(runs: &[RawRun], out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "algorithm,n,m,instance,gen_seed,solve_seed,solved,iterations,micro_updates,restarts,elapsed_ms"
    )?;
    for run in runs {
        let c = &run.outcome.counters;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{:.3}",
            run.algorithm,
            run.num_vars,
            run.num_clauses,
            run.instance,
            run.gen_seed,
            run.solve_seed,
            run.outcome.is_solved(),
            c.transitions,
            c.micro_updates,
            c.restarts,
            run.outcome.elapsed.as_secs_f64() * 1e3,
        )?;
    }
    Ok(())
}

/// Per-cell summary CSV, recomputable from the raw CSV.
pub fn write_summary_csv(report: &BenchReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "algorithm,n,m,instances,solved_pct,median_iterations,median_micro_updates,median_elapsed_ms")?;
    for cell in &report.cells {
        writeln!(
            out,
            "{},{},{},{},{:.1},{:.1},{:.1},{:.3}",
            cell.algorithm,
            cell.num_vars,
            cell.num_clauses,
            cell.instances,
            cell.solved_pct,
            cell.median_iterations,
            cell.median_micro_updates,
            cell.median_elapsed_ms,
        )?;
    }
    Ok(())
}

/// Markdown comparison table: one line per (n, m), a `time | iter | solved`
/// column group per algorithm. Cells of fully unsolved groups print `-`.
pub fn write_summary_markdown(report: &BenchReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "# Solver comparison\n")?;
    writeln!(out, "- master seed: {}", report.master_seed)?;
    writeln!(out, "- config hash: {:016x}", report.config_hash)?;
    writeln!(out, "- host: {} / {}", std::env::consts::OS, std::env::consts::ARCH)?;
    writeln!(out, "- medians over all runs; unsolved runs contribute their budget-capped counts\n")?;

    let mut algorithms: Vec<String> = Vec::new();
    for cell in &report.cells {
        if !algorithms.contains(&cell.algorithm) {
            algorithms.push(cell.algorithm.clone());
        }
    }
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for cell in &report.cells {
        if !shapes.contains(&(cell.num_vars, cell.num_clauses)) {
            shapes.push((cell.num_vars, cell.num_clauses));
        }
    }

    write!(out, "| n | m |")?;
    for algorithm in &algorithms {
        write!(out, " {algorithm} time (ms) | {algorithm} iter. | {algorithm} solved |")?;
    }
    writeln!(out)?;
    write!(out, "|---|---|")?;
    for _ in &algorithms {
        write!(out, "---|---|---|")?;
    }
    writeln!(out)?;

    for (n, m) in shapes {
        write!(out, "| {n} | {m} |")?;
        for algorithm in &algorithms {
            match report.cell(n, m, algorithm) {
                Some(cell) if cell.solved_pct > 0.0 => write!(
                    out,
                    " {:.0} | {:.0} | {:.1}% |",
                    cell.median_elapsed_ms, cell.median_iterations, cell.solved_pct
                )?,
                Some(cell) => write!(out, " - | - | {:.1}% |", cell.solved_pct)?,
                None => write!(out, " - | - | - |")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// One sweep cell: the probabilistic solver at a single mixing probability.
#[derive(Debug, Clone)]
pub struct PSweepCell {
    pub p: f64,
    pub instances: usize,
    pub solved_pct: f64,
    pub median_iterations: f64,
    pub median_micro_updates: f64,
    pub median_elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct PSweepReport {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub master_seed: u64,
    pub cells: Vec<PSweepCell>,
}

impl PSweepReport {
    /// Best cell by solved percentage, ties broken by lower median
    /// iterations.
    pub fn best_cell(&self) -> Option<&PSweepCell> {
        self.cells.iter().reduce(|best, cell| {
            if cell.solved_pct > best.solved_pct
                || (cell.solved_pct == best.solved_pct && cell.median_iterations < best.median_iterations)
            {
                cell
            } else {
                best
            }
        })
    }
}

/// Runs the probabilistic solver over a grid of mixing probabilities on one
/// shared forced corpus, so cells differ only in `p`.
pub fn run_p_sweep(
    num_vars: usize,
    num_clauses: usize,
    grid: &[f64],
    instances: usize,
    budget: &SolveBudget,
    master_seed: u64,
) -> (PSweepReport, Vec<RawRun>) {
    let mut seeder = ChaCha8Rng::seed_from_u64(master_seed);
    let units: Vec<(usize, u64, u64)> =
        (0..instances).map(|i| (i, seeder.next_u64(), seeder.next_u64())).collect();

    let mut cells = Vec::with_capacity(grid.len());
    let mut all_runs = Vec::with_capacity(grid.len() * instances);
    for &p in grid {
        let params = crate::dynamics::PbnParams::new(p).expect("grid probabilities must lie in (0, 1]");
        let solver = Solver::Pbn(params);
        let runs: Vec<RawRun> = units
            .par_iter()
            .map(|&(instance, gen_seed, solve_seed)| {
                let spec = GenSpec::new(num_vars, num_clauses, gen_seed).forced();
                let formula = generate(&spec);
                RawRun {
                    algorithm: solver.label(),
                    num_vars,
                    num_clauses,
                    instance,
                    gen_seed,
                    solve_seed,
                    outcome: solver.run(&formula, budget, solve_seed),
                }
            })
            .collect();
        let refs: Vec<&RawRun> = runs.iter().collect();
        let row = BenchRow { num_vars, num_clauses, instances };
        let aggregate = aggregate(&row, &solver.label(), &refs);
        cells.push(PSweepCell {
            p,
            instances,
            solved_pct: aggregate.solved_pct,
            median_iterations: aggregate.median_iterations,
            median_micro_updates: aggregate.median_micro_updates,
            median_elapsed_ms: aggregate.median_elapsed_ms,
        });
        all_runs.extend(runs);
    }

    (PSweepReport { num_vars, num_clauses, master_seed, cells }, all_runs)
}

pub fn write_psweep_csv(report: &PSweepReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "p,n,m,instances,solved_pct,median_iterations,median_micro_updates,median_elapsed_ms")?;
    for cell in &report.cells {
        writeln!(
            out,
            "{},{},{},{},{:.1},{:.1},{:.1},{:.3}",
            cell.p,
            report.num_vars,
            report.num_clauses,
            cell.instances,
            cell.solved_pct,
            cell.median_iterations,
            cell.median_micro_updates,
            cell.median_elapsed_ms,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::PbnParams;
    use crate::solvers::GsatParams;

    fn small_plan() -> BenchPlan {
        BenchPlan::new(
            vec![BenchRow { num_vars: 10, num_clauses: 20, instances: 8 }],
            vec![Solver::Abn, Solver::Pbn(PbnParams::default()), Solver::Gsat(GsatParams::default())],
            SolveBudget::with_max_iterations(10_000),
            99,
        )
    }

    #[test]
    fn bench_solves_easy_corpus_everywhere() {
        let (report, runs) = run_bench(&small_plan());
        assert_eq!(report.cells.len(), 3);
        assert_eq!(runs.len(), 24);
        for cell in &report.cells {
            assert_eq!(cell.solved_pct, 100.0, "{}", cell.algorithm);
            assert_eq!(cell.instances, 8);
        }
    }

    #[test]
    fn rerun_reproduces_everything_but_timing() {
        let plan = small_plan();
        let (_, a) = run_bench(&plan);
        let (_, b) = run_bench(&plan);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.algorithm, y.algorithm);
            assert_eq!(x.gen_seed, y.gen_seed);
            assert_eq!(x.solve_seed, y.solve_seed);
            assert_eq!(x.outcome.result, y.outcome.result);
            assert_eq!(x.outcome.counters, y.outcome.counters);
        }
    }

    #[test]
    fn empty_plan_yields_empty_report() {
        let plan = BenchPlan::new(vec![], vec![Solver::Abn], SolveBudget::default(), 1);
        let (report, runs) = run_bench(&plan);
        assert!(report.cells.is_empty());
        assert!(runs.is_empty());
    }

    #[test]
    fn csv_and_markdown_have_expected_shape() {
        let (report, runs) = run_bench(&small_plan());
        let mut raw = Vec::new();
        write_raw_csv(&runs, &mut raw).unwrap();
        let raw = String::from_utf8(raw).unwrap();
        assert_eq!(raw.lines().count(), 25); // header + 24 runs
        assert!(raw.starts_with("algorithm,n,m,"));

        let mut summary = Vec::new();
        write_summary_csv(&report, &mut summary).unwrap();
        assert_eq!(String::from_utf8(summary).unwrap().lines().count(), 4);

        let mut md = Vec::new();
        write_summary_markdown(&report, &mut md).unwrap();
        let md = String::from_utf8(md).unwrap();
        assert!(md.contains("| 10 | 20 |"));
        assert!(md.contains("abn time (ms)"));
    }

    #[test]
    fn medians_follow_the_midpoint_convention() {
        assert_eq!(median([3.0, 1.0, 2.0].into_iter()), 2.0);
        assert_eq!(median([4.0, 1.0, 2.0, 3.0].into_iter()), 2.5);
        assert_eq!(median(std::iter::empty()), 0.0);
    }

    #[test]
    fn p_sweep_reports_best_cell() {
        let budget = SolveBudget::with_max_iterations(5_000);
        let (report, runs) = run_p_sweep(10, 20, &[0.2, 0.9], 6, &budget, 7);
        assert_eq!(report.cells.len(), 2);
        assert_eq!(runs.len(), 12);
        assert!(report.best_cell().is_some());
        let mut csv = Vec::new();
        write_psweep_csv(&report, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 3);
    }
}
