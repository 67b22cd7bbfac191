//! Randomized end-to-end exercise of the coloring pipeline: random subcubic
//! graphs, random 7-color lists, construct, then re-verify independently.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::colorer::{self, ColoringStats, ListAssignment};
use crate::error::{Error, Result};
use crate::gen;
use crate::verifier;

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub instance_count: usize,
    pub max_vertices: usize,
    /// Lists are drawn as 7-subsets of `{1, ..., palette_size}`.
    pub palette_size: u32,
    pub seed: u64,
    pub allow_parallel: bool,
}

impl FuzzConfig {
    fn validate(&self) -> Result<()> {
        if self.palette_size < 7 {
            return Err(Error::Input(format!(
                "palette of {} colors cannot fill 7-color lists",
                self.palette_size
            )));
        }
        if self.max_vertices < 4 {
            return Err(Error::Input(
                "need at least 4 vertices to generate graphs".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceOutcome {
    Passed,
    Failed {
        message: String,
        bundle_path: Option<PathBuf>,
    },
}

#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub duration: Duration,
    pub stats: ColoringStats,
    pub outcome: InstanceOutcome,
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub instances: Vec<InstanceReport>,
}

impl FuzzReport {
    pub fn failures(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| i.outcome != InstanceOutcome::Passed)
            .count()
    }

    pub fn bodies_processed(&self) -> usize {
        self.instances.iter().map(|i| i.stats.bodies).sum()
    }

    fn percentile(&self, sorted: &[Duration], p: usize) -> Duration {
        if sorted.is_empty() {
            return Duration::ZERO;
        }
        sorted[(sorted.len() - 1) * p / 100]
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<Duration> = self.instances.iter().map(|i| i.duration).collect();
        sorted.sort();
        writeln!(
            f,
            "instances {} failures {}",
            self.instances.len(),
            self.failures()
        )?;
        writeln!(
            f,
            "bodies processed {} cactus cycles {} connectors {}",
            self.bodies_processed(),
            self.instances
                .iter()
                .map(|i| i.stats.cactus_cycles)
                .sum::<usize>(),
            self.instances
                .iter()
                .map(|i| i.stats.connectors_colored)
                .sum::<usize>()
        )?;
        writeln!(
            f,
            "timing p50 {:?} p90 {:?} p99 {:?} max {:?}",
            self.percentile(&sorted, 50),
            self.percentile(&sorted, 90),
            self.percentile(&sorted, 99),
            sorted.last().copied().unwrap_or(Duration::ZERO)
        )?;
        for i in &self.instances {
            if let InstanceOutcome::Failed {
                message,
                bundle_path,
            } = &i.outcome
            {
                write!(f, "instance {}: {message}", i.index)?;
                match bundle_path {
                    Some(p) => writeln!(f, " (bundle at {})", p.display())?,
                    None => writeln!(f)?,
                }
            }
        }
        Ok(())
    }
}

/// Where failing instances get persisted: `STARLIT_DIAG_DIR` if set, the
/// system temp directory otherwise.
pub(crate) fn diagnostics_dir() -> PathBuf {
    std::env::var_os("STARLIT_DIAG_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir)
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_seven_subset(rng: &mut ChaCha8Rng, palette_size: u32) -> std::collections::BTreeSet<u32> {
    rand::seq::index::sample(rng, palette_size as usize, 7)
        .into_iter()
        .map(|i| i as u32 + 1)
        .collect()
}

fn run_instance(config: &FuzzConfig, index: usize) -> InstanceReport {
    let mut rng = instance_rng(config.seed, index);
    let n = rng.gen_range(4..=config.max_vertices);
    let g = gen::random_subcubic(n, rng.gen(), config.allow_parallel)
        .expect("generator arguments are valid");
    let lists = ListAssignment::from_sets(
        (0..g.edge_count())
            .map(|_| random_seven_subset(&mut rng, config.palette_size))
            .collect(),
    );
    let start = Instant::now();
    let attempt = colorer::star_edge_color_list_traced(&g, &lists);
    let duration = start.elapsed();
    let (stats, outcome) = match attempt {
        Ok(outcome) => {
            // The pipeline self-verifies; re-check here anyway so the fuzz
            // verdict does not depend on the code under test.
            let verdict = verifier::find_violation(&g, &outcome.coloring);
            let respects = verifier::respects_lists(&outcome.coloring, &lists);
            match (verdict, respects) {
                (Ok(None), Ok(true)) => (outcome.stats, InstanceOutcome::Passed),
                (Ok(Some(v)), _) => (
                    outcome.stats,
                    InstanceOutcome::Failed {
                        message: format!("verifier found {v}"),
                        bundle_path: None,
                    },
                ),
                (_, Ok(false)) => (
                    outcome.stats,
                    InstanceOutcome::Failed {
                        message: "coloring leaves its lists".into(),
                        bundle_path: None,
                    },
                ),
                (Err(e), _) | (_, Err(e)) => (
                    outcome.stats,
                    InstanceOutcome::Failed {
                        message: format!("verification errored: {e}"),
                        bundle_path: None,
                    },
                ),
            }
        }
        Err(err) => {
            let bundle_path = match &err {
                Error::Internal {
                    bundle: Some(bundle),
                    ..
                } => bundle.persist(&diagnostics_dir()).ok(),
                _ => None,
            };
            (
                ColoringStats::default(),
                InstanceOutcome::Failed {
                    message: err.to_string(),
                    bundle_path,
                },
            )
        }
    };
    InstanceReport {
        index,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        duration,
        stats,
        outcome,
    }
}

/// Runs the configured number of instances in parallel. The report order
/// and contents depend only on the config, not on scheduling.
pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let instances: Vec<InstanceReport> = (0..config.instance_count)
        .into_par_iter()
        .map(|i| run_instance(config, i))
        .collect();
    Ok(FuzzReport { instances })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(count: usize, seed: u64) -> FuzzConfig {
        FuzzConfig {
            instance_count: count,
            max_vertices: 16,
            palette_size: 21,
            seed,
            allow_parallel: true,
        }
    }

    #[test]
    fn small_runs_pass_and_accumulate_stats() {
        let report = run_fuzz(&config(40, 7)).unwrap();
        assert_eq!(report.failures(), 0, "{report}");
        assert_eq!(report.instances.len(), 40);
        assert!(report.bodies_processed() > 0);
        assert!(report.instances.iter().all(|i| i.edges > 0));
    }

    #[test]
    fn reports_are_deterministic_for_a_seed() {
        let a = run_fuzz(&config(12, 99)).unwrap();
        let b = run_fuzz(&config(12, 99)).unwrap();
        let key = |r: &FuzzReport| -> Vec<(usize, usize, ColoringStats)> {
            r.instances
                .iter()
                .map(|i| (i.vertices, i.edges, i.stats.clone()))
                .collect()
        };
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn narrow_palettes_are_rejected() {
        let mut c = config(1, 0);
        c.palette_size = 6;
        assert!(matches!(run_fuzz(&c), Err(Error::Input(_))));
    }

    #[test]
    fn tiny_vertex_limits_are_rejected() {
        let mut c = config(1, 0);
        c.max_vertices = 3;
        assert!(matches!(run_fuzz(&c), Err(Error::Input(_))));
    }

    #[test]
    fn display_mentions_counts_and_timing() {
        let report = run_fuzz(&config(5, 3)).unwrap();
        let text = report.to_string();
        assert!(text.contains("instances 5 failures 0"), "{text}");
        assert!(text.contains("timing p50"), "{text}");
    }
}
