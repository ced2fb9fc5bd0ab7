//! Full acceptance battery. Runs without the libtest harness so that every
//! criterion prints its own line even when the run succeeds.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use milnor::suite::{self, Outcome, Pools, SuiteConfig};

const MINUTE: Duration = Duration::from_secs(60);

struct Criterion {
    outcome: Outcome,
    limit: Option<Duration>,
    /// Time spent building shared instances, charged to this criterion.
    setup: Duration,
}

impl Criterion {
    fn report(&self) -> bool {
        let total = self.outcome.elapsed + self.setup;
        let in_time = self.limit.is_none_or(|limit| total < limit);
        println!("{}", self.outcome);
        if let Some(limit) = self.limit {
            println!(
                "    time {:.2?} (setup {:.2?}), limit {:?}: {}",
                total,
                self.setup,
                limit,
                if in_time { "ok" } else { "EXCEEDED" }
            );
        }
        self.outcome.passed() && in_time
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let pools = match Pools::build(&cfg) {
        Ok(pools) => pools,
        Err(err) => {
            println!("FAIL building instance pools: {err}");
            return ExitCode::FAILURE;
        }
    };
    let setup = start.elapsed();
    println!("instance pools built in {setup:.2?}");

    let criteria = [
        Criterion {
            outcome: suite::hilbert_profiles(),
            limit: Some(Duration::from_secs(1)),
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::jacobian_dimensions(&cfg),
            limit: Some(2 * MINUTE),
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::generator_round_trip(&cfg, &pools),
            limit: Some(5 * MINUTE),
            setup,
        },
        Criterion {
            outcome: suite::form_round_trip(&pools),
            limit: Some(5 * MINUTE),
            setup,
        },
        Criterion {
            outcome: suite::sebastiani_thom_fibers(&cfg),
            limit: None,
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::inverse_systems(&pools),
            limit: None,
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::immersion_differentials(&pools),
            limit: Some(10 * MINUTE),
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::containment(&cfg, &pools),
            limit: None,
            setup: Duration::ZERO,
        },
        Criterion {
            outcome: suite::well_definedness(&cfg, &pools),
            limit: None,
            setup: Duration::ZERO,
        },
    ];

    let failed = criteria.iter().filter(|c| !c.report()).count();
    println!(
        "acceptance: {} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
