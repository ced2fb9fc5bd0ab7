//! The property battery: reconstruction round trips, fiber dimensions,
//! inverse systems and injectivity of differentials on seeded random
//! instances.
//!
//! Each check returns an [`Outcome`] instead of panicking so the same code
//! serves the acceptance tests and the `suite` subcommand.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deformation::{combine, dpsi_f_kernel, dpsi_w_kernel, PieceRepresentation};
use crate::error::Result;
use crate::ideal::{hilbert_profile, ideal_piece, jacobian_gens, jacobian_piece, socle_degree};
use crate::inverse::{associated_form, verify_inverse_system};
use crate::linalg::Subspace;
use crate::monomial::basis_dim;
use crate::reconstruct::{fiber, reconstruct_poly, recover_generators, ContainmentTest};
use crate::st::{fermat, random_ci_tuple, random_form, random_smooth, DEFAULT_COEFF_BOUND};
use crate::{Generators, Poly, Rational, Scalar};

/// Sizes at which the battery runs by default.
pub const DEFAULT_CASES: [(usize, u32); 5] = [(1, 4), (2, 3), (2, 4), (2, 5), (3, 3)];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub cases: Vec<(usize, u32)>,
    /// Random smooth forms per case for the dimension check.
    pub smooth_count: usize,
    /// Complete-intersection tuples per case.
    pub tuple_count: usize,
    /// Distinct pairs of tuples per case.
    pub pair_count: usize,
    /// Smooth forms with one-dimensional fiber per case.
    pub non_st_count: usize,
    /// Random competitors per form and degree in the containment check.
    pub competitor_count: usize,
    /// Random representation pairs in the well-definedness check.
    pub representation_pairs: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cases: DEFAULT_CASES.to_vec(),
            smooth_count: 20,
            tuple_count: 10,
            pair_count: 10,
            non_st_count: 20,
            competitor_count: 30,
            representation_pairs: 20,
            seed: 2024,
            coeff_bound: DEFAULT_COEFF_BOUND,
        }
    }
}

impl SuiteConfig {
    fn instance_seed(&self, salt: u64, n: usize, d: u32, i: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(salt << 48)
            .wrapping_add((n as u64) << 32)
            .wrapping_add(u64::from(d) << 24)
            .wrapping_add(i as u64)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.instance_seed(salt, 0, 0, 0))
    }
}

/// Result of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub skipped: bool,
}

impl Outcome {
    fn new(id: u32, name: &'static str) -> Self {
        Outcome {
            id,
            name,
            checks: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
            skipped: false,
        }
    }

    pub fn skipped(id: u32, name: &'static str) -> Self {
        Outcome {
            skipped: true,
            ..Self::new(id, name)
        }
    }

    pub fn passed(&self) -> bool {
        !self.skipped && self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record_error(&mut self, context: impl fmt::Display, err: crate::Error) {
        self.checks += 1;
        self.failures.push(format!("{context}: {err}"));
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.skipped, self.failures.is_empty()) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        write!(
            f,
            "{status} [{}] {}: {} checks, {} failures, {:.2?}",
            self.id,
            self.name,
            self.checks,
            self.failures.len(),
            self.elapsed
        )?;
        for failure in self.failures.iter().take(5) {
            write!(f, "\n    {failure}")?;
        }
        Ok(())
    }
}

fn timed(mut outcome: Outcome, start: Instant) -> Outcome {
    outcome.elapsed = start.elapsed();
    outcome
}

/// Seeded instances shared between criteria.
#[derive(Debug, Clone)]
pub struct Pools {
    pub tuples: Vec<((usize, u32), Vec<Generators>)>,
    pub non_st: Vec<((usize, u32), Vec<Poly>)>,
}

impl Pools {
    pub fn build(cfg: &SuiteConfig) -> Result<Self> {
        let mut tuples = Vec::new();
        let mut non_st = Vec::new();
        for &(n, d) in &cfg.cases {
            let ws = (0..cfg.tuple_count)
                .map(|i| random_ci_tuple(n, d, cfg.instance_seed(3, n, d, i), cfg.coeff_bound))
                .collect::<Result<Vec<_>>>()?;
            tuples.push(((n, d), ws));
            let fs = (0..cfg.non_st_count)
                .map(|i| random_smooth(n, d, cfg.instance_seed(4, n, d, i), true, cfg.coeff_bound))
                .collect::<Result<Vec<_>>>()?;
            non_st.push(((n, d), fs));
        }
        Ok(Pools { tuples, non_st })
    }
}

fn reconstruction_range(n: usize, d: u32) -> std::ops::RangeInclusive<u32> {
    (d - 1)..=socle_degree(n, d)
}

/// Hilbert profiles of the small cases, Gorenstein symmetry and total length.
pub fn hilbert_profiles() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(1, "Hilbert profiles");
    let expected: [(usize, u32, &[u64]); 3] = [
        (2, 3, &[1, 3, 3, 1]),
        (2, 4, &[1, 3, 6, 7, 6, 3, 1]),
        (1, 3, &[1, 2, 1]),
    ];
    for (n, d, values) in expected {
        match hilbert_profile(n, d) {
            Ok(h) => {
                let got = &h.values()[..h.values().len() - 1];
                out.check(got == values, || {
                    format!("a_{{{n},{d}}} = {got:?}, expected {values:?}")
                });
            }
            Err(e) => out.record_error(format!("({n},{d})"), e),
        }
    }
    for n in 1..=3 {
        for d in 2..=6 {
            let h = match hilbert_profile(n, d) {
                Ok(h) => h,
                Err(e) => {
                    out.record_error(format!("({n},{d})"), e);
                    continue;
                }
            };
            let t = h.socle_degree();
            let symmetric = (0..=t).all(|k| h.a(k) == h.a(t - k));
            out.check(symmetric, || format!("({n},{d}) not symmetric"));
            let total = u64::from(d - 1).pow(n as u32 + 1);
            out.check(h.total() == total, || {
                format!("({n},{d}) total {} != {total}", h.total())
            });
            out.check(h.a(0) == 1 && h.a(t) == 1 && h.a(t + 1) == 0, || {
                format!("({n},{d}) boundary values")
            });
        }
    }
    timed(out, start)
}

/// `dim E_k(f) = dim S_k - a_{n,d}(k)` for random smooth forms, all `0 <= k <= T + 1`.
pub fn jacobian_dimensions(cfg: &SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(2, "Jacobian piece dimensions");
    for &(n, d) in &cfg.cases {
        let profile = match hilbert_profile(n, d) {
            Ok(p) => p,
            Err(e) => {
                out.record_error(format!("({n},{d})"), e);
                continue;
            }
        };
        for i in 0..cfg.smooth_count {
            let seed = cfg.instance_seed(2, n, d, i);
            let f: Poly = match random_smooth(n, d, seed, false, cfg.coeff_bound) {
                Ok(f) => f,
                Err(e) => {
                    out.record_error(format!("({n},{d}) seed {seed}"), e);
                    continue;
                }
            };
            for k in 0..=profile.socle_degree() + 1 {
                match jacobian_piece(&f, k) {
                    Ok(piece) => {
                        let expected = basis_dim(n, k) - profile.a(k) as usize;
                        out.check(piece.dim() == expected, || {
                            format!("f = {f}, k = {k}: dim {} != {expected}", piece.dim())
                        });
                    }
                    Err(e) => out.record_error(format!("f = {f}, k = {k}"), e),
                }
            }
        }
    }
    timed(out, start)
}

/// Recovering `W` from `(I_W)_k`, and distinct tuples giving distinct pieces.
pub fn generator_round_trip(cfg: &SuiteConfig, pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(3, "generator recovery and separation");
    for ((n, d), ws) in &pools.tuples {
        let (n, d) = (*n, *d);
        for w in ws {
            let span = w.span();
            for k in reconstruction_range(n, d) {
                match recover_generators(&ideal_piece(w, k), d) {
                    Ok(recovered) => out.check(recovered.span() == span, || {
                        format!(
                            "({n},{d}) k = {k}: recovered span differs for {:?}",
                            w.gens()
                        )
                    }),
                    Err(e) => out.record_error(format!("({n},{d}) k = {k}"), e),
                }
            }
        }
        let pairs = cfg
            .pair_count
            .min(ws.len().saturating_sub(1) * ws.len() / 2);
        let mut taken = 0;
        'pairs: for gap in 1..ws.len() {
            for i in 0..ws.len() - gap {
                if taken == pairs {
                    break 'pairs;
                }
                let (u, w) = (&ws[i], &ws[i + gap]);
                if u.span() == w.span() {
                    continue;
                }
                taken += 1;
                for k in reconstruction_range(n, d) {
                    out.check(ideal_piece(u, k) != ideal_piece(w, k), || {
                        format!(
                            "({n},{d}) k = {k}: distinct tuples {i}, {} share a piece",
                            i + gap
                        )
                    });
                }
            }
        }
        out.check(taken == pairs, || {
            format!("({n},{d}): only {taken} distinct pairs")
        });
    }
    timed(out, start)
}

/// Reconstructing a form with one-dimensional fiber from each admissible piece.
pub fn form_round_trip(pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(4, "form reconstruction");
    for ((n, d), fs) in &pools.non_st {
        let (n, d) = (*n, *d);
        for f in fs {
            for k in reconstruction_range(n, d) {
                let result = jacobian_piece(f, k).and_then(|e| reconstruct_poly(&e, d));
                match result {
                    Ok(fib) => out.check(
                        fib.s() == 1 && fib.unique().is_some_and(|g| g.is_scalar_multiple_of(f)),
                        || format!("f = {f}, k = {k}: s = {}", fib.s()),
                    ),
                    Err(e) => out.record_error(format!("f = {f}, k = {k}"), e),
                }
            }
        }
    }
    timed(out, start)
}

/// Fiber of the Fermat cubic, and of a sum of two binary quartics in
/// disjoint variables.
pub fn sebastiani_thom_fibers(cfg: &SuiteConfig) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(5, "fiber of Sebastiani-Thom sums");
    let cubic: Poly = fermat(2, 3);
    let cubes: Vec<Poly> = (0..3)
        .map(|i| Poly::monomial(crate::ExponentVector::power(2, i, 3), Rational::from_i64(1)))
        .collect();
    match jacobian_gens(&cubic) {
        Ok(w) => {
            let fib = fiber(&w);
            let expected = Subspace::span_polys(2, 3, &cubes).expect("cubes");
            out.check(fib.s() == 3 && fib.space() == &expected, || {
                format!(
                    "Fermat cubic fiber: s = {}, basis {:?}",
                    fib.s(),
                    fib.basis()
                )
            });
        }
        Err(e) => out.record_error("Fermat cubic", e),
    }
    let binary = |salt: u64| {
        random_smooth::<Rational>(
            1,
            4,
            cfg.instance_seed(salt, 1, 4, 0),
            true,
            cfg.coeff_bound,
        )
    };
    let built = binary(5).and_then(|g| {
        let h = binary(6)?;
        let (g, h) = (g.embed(3, 0)?, h.embed(3, 2)?);
        Ok((g.checked_add(&h)?, g, h))
    });
    match built {
        Ok((f, g, h)) => match jacobian_gens(&f) {
            Ok(w) => {
                let fib = fiber(&w);
                let expected = Subspace::span_polys(3, 4, [&g, &h]).expect("same space");
                out.check(fib.s() == 2 && fib.space() == &expected, || {
                    format!("f = {f}: s = {}, basis {:?}", fib.s(), fib.basis())
                });
            }
            Err(e) => out.record_error(format!("f = {f}"), e),
        },
        Err(e) => out.record_error("binary quartics", e),
    }
    timed(out, start)
}

/// Associated form of the squares; `I_W` is the apolar ideal of `B_W`.
pub fn inverse_systems(pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(6, "inverse systems");
    let squares: Vec<Poly> = (0..3)
        .map(|i| Poly::monomial(crate::ExponentVector::power(2, i, 2), Rational::from_i64(1)))
        .collect();
    let expected = Poly::parse("x0*x1*x2", Some(2)).expect("literal");
    match Generators::new(squares).and_then(|w| associated_form(&w)) {
        Ok(b) => out.check(b.form() == &expected, || format!("B_W = {}", b.form())),
        Err(e) => out.record_error("squares", e),
    }
    for ((n, d), ws) in &pools.tuples {
        for w in ws {
            match verify_inverse_system(w) {
                Ok(ok) => out.check(ok, || format!("({n},{d}) {:?}", w.gens())),
                Err(e) => out.record_error(format!("({n},{d})"), e),
            }
        }
    }
    timed(out, start)
}

/// Kernels of the differentials vanish on the pools; the Fermat cubic has
/// a kernel of dimension at least two in degree 2.
pub fn immersion_differentials(pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(7, "injective differentials");
    for ((n, d), ws) in &pools.tuples {
        for w in ws {
            for k in reconstruction_range(*n, *d) {
                match dpsi_w_kernel(w, k) {
                    Ok(r) => out.check(r.kernel_dim == 0, || {
                        format!("({n},{d}) k = {k}: W-kernel dim {}", r.kernel_dim)
                    }),
                    Err(e) => out.record_error(format!("({n},{d}) k = {k}"), e),
                }
            }
        }
    }
    for ((n, d), fs) in &pools.non_st {
        for f in fs {
            for k in reconstruction_range(*n, *d) {
                match dpsi_f_kernel(f, k) {
                    Ok(r) => out.check(r.kernel_dim == 0, || {
                        format!("f = {f}, k = {k}: kernel dim {}", r.kernel_dim)
                    }),
                    Err(e) => out.record_error(format!("f = {f}, k = {k}"), e),
                }
            }
        }
    }
    match dpsi_f_kernel(&fermat::<Rational>(2, 3), 2) {
        Ok(r) => out.check(r.kernel_dim >= 2, || {
            format!("Fermat cubic kernel dim {}", r.kernel_dim)
        }),
        Err(e) => out.record_error("Fermat cubic", e),
    }
    timed(out, start)
}

/// `E_k(h) ⊆ E_k(f)` only for multiples `h` of `f`.
pub fn containment(cfg: &SuiteConfig, pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(8, "containment forces equality");
    for ((n, d), fs) in &pools.non_st {
        let (n, d) = (*n, *d);
        for (i, f) in fs.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.instance_seed(8, n, d, i));
            let competitors: Vec<Poly> = (0..cfg.competitor_count)
                .map(|_| random_form(n, d, &mut rng, cfg.coeff_bound))
                .collect();
            for k in reconstruction_range(n, d) {
                let test = match ContainmentTest::new(f, k) {
                    Ok(t) => t,
                    Err(e) => {
                        out.record_error(format!("f = {f}, k = {k}"), e);
                        continue;
                    }
                };
                for h in &competitors {
                    match test.check(h) {
                        Ok(c) => out.check(c.implication_holds(), || {
                            format!("f = {f}, h = {h}, k = {k}: containment without equality")
                        }),
                        Err(e) => out.record_error(format!("h = {h}"), e),
                    }
                }
                // positive control
                let scaled = f.scale(&Rational::from_i64(-2));
                match test.check(&scaled) {
                    Ok(c) => out.check(c.hypothesis && c.conclusion, || {
                        format!("f = {f}, k = {k}: multiple of f not detected")
                    }),
                    Err(e) => out.record_error(format!("f = {f}"), e),
                }
            }
        }
    }
    timed(out, start)
}

/// Two representations `b = sum u_i g_i` give tangent images that agree
/// modulo `(I_W)_k`.
pub fn well_definedness(cfg: &SuiteConfig, pools: &Pools) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(9, "tangent map well-definedness");
    // degrees where syzygies exist, so the two representations can differ
    let eligible: Vec<(usize, u32, &Vec<Generators>)> = pools
        .tuples
        .iter()
        .filter(|((n, d), ws)| 2 * (d - 1) <= socle_degree(*n, *d) && !ws.is_empty())
        .map(|((n, d), ws)| (*n, *d, ws))
        .collect();
    if eligible.is_empty() {
        // nothing to compare at these sizes
        return timed(Outcome::skipped(out.id, out.name), start);
    }
    let mut rng = cfg.rng(9);
    for trial in 0..cfg.representation_pairs {
        let &(n, d, ws) = eligible.choose(&mut rng).expect("nonempty");
        let w = ws.choose(&mut rng).expect("nonempty");
        let k = rng.gen_range(2 * (d - 1)..=socle_degree(n, d));
        let h: Vec<Poly> = (0..=n)
            .map(|_| random_form(n, d - 1, &mut rng, cfg.coeff_bound))
            .collect();
        let rep = match PieceRepresentation::new(w.gens(), k) {
            Ok(r) => r,
            Err(e) => {
                out.record_error(format!("trial {trial}"), e);
                continue;
            }
        };
        let piece = rep.piece();
        let j = rng.gen_range(0..piece.dim());
        let b = &piece.basis_polys()[j];
        let first = rep.representation(j).to_vec();
        let syzygies = rep.syzygies();
        let mut second = first.clone();
        for z in &syzygies {
            let c = Rational::from_i64(rng.gen_range(-3..=3));
            for (slot, part) in second.iter_mut().zip(z) {
                *slot = slot.checked_add(&part.scale(&c)).expect("same space");
            }
        }
        let check = || -> Result<(bool, bool, bool)> {
            let both_represent =
                &combine(&first, w.gens())? == b && &combine(&second, w.gens())? == b;
            let differ = first != second;
            let gap = combine(&first, &h)?.checked_sub(&combine(&second, &h)?)?;
            Ok((both_represent, differ, piece.contains_poly(&gap)?))
        };
        match check() {
            Ok((represent, differ, inside)) => {
                out.check(represent, || format!("trial {trial}: not a representation"));
                out.check(!syzygies.is_empty() && differ, || {
                    format!("trial {trial}: ({n},{d}) k = {k} produced identical representations")
                });
                out.check(inside, || {
                    format!("trial {trial}: images differ outside (I_W)_{k}")
                });
            }
            Err(e) => out.record_error(format!("trial {trial}"), e),
        }
    }
    timed(out, start)
}

/// Runs every criterion in order. Once `budget` is exhausted the remaining
/// criteria are reported as skipped.
pub fn run_all(cfg: &SuiteConfig, budget: Option<Duration>) -> Result<Vec<Outcome>> {
    let start = Instant::now();
    let pools = Pools::build(cfg)?;
    type Step<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);
    let steps: Vec<Step<'_>> = vec![
        (1, "Hilbert profiles", Box::new(hilbert_profiles)),
        (
            2,
            "Jacobian piece dimensions",
            Box::new(|| jacobian_dimensions(cfg)),
        ),
        (
            3,
            "generator recovery and separation",
            Box::new(|| generator_round_trip(cfg, &pools)),
        ),
        (
            4,
            "form reconstruction",
            Box::new(|| form_round_trip(&pools)),
        ),
        (
            5,
            "fiber of Sebastiani-Thom sums",
            Box::new(|| sebastiani_thom_fibers(cfg)),
        ),
        (6, "inverse systems", Box::new(|| inverse_systems(&pools))),
        (
            7,
            "injective differentials",
            Box::new(|| immersion_differentials(&pools)),
        ),
        (
            8,
            "containment forces equality",
            Box::new(|| containment(cfg, &pools)),
        ),
        (
            9,
            "tangent map well-definedness",
            Box::new(|| well_definedness(cfg, &pools)),
        ),
    ];
    Ok(steps
        .into_iter()
        .map(|(id, name, run)| match budget {
            Some(limit) if start.elapsed() >= limit => Outcome::skipped(id, name),
            _ => run(),
        })
        .collect())
}
