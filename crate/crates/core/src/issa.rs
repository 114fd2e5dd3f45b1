//! Improved sparrow search: chaotic initialization, linearly decaying producer
//! weight, an opposition/Cauchy refresh of the elite after every iteration,
//! and an iterated-local-search outer loop with Metropolis acceptance.
//!
//! Round 1 runs the improved SSA from a chaotic population. Every later round
//! kicks the incumbent with a Cauchy mutation, seeds a fresh population with
//! the kicked point plus chaotic members (the logistic orbit continues across
//! rounds), runs the improved SSA again and accepts the round's best if it is
//! no worse, or otherwise with probability `exp(-delta / temperature)`. The
//! returned optimum is the best point ever evaluated, whatever was accepted.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ssa::{
    evaluate_positions, finish, ssa_step, uniform_positions, Evaluator, Fitness, OptimizationResult,
    OptimizationTrace, OptimizeError, SearchSpace, Sparrow, SsaConfig,
};

/// Logistic-map seeds whose orbit collapses onto a fixed point.
pub const DEGENERATE_CHAOS_SEEDS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IssaConfig {
    pub base: SsaConfig,
    pub chaos_seed: f64,
    pub weight_max: f64,
    pub weight_min: f64,
    /// Cauchy scale as a fraction of each box width.
    pub cauchy_scale: f64,
    pub ils_restarts: usize,
    pub acceptance_temperature: f64,
    /// Test hook: `false` initializes uniformly, exactly like plain SSA.
    pub chaotic_init: bool,
    /// Test hook: `false` skips the opposition/Cauchy refresh.
    pub elite_refresh: bool,
}

impl Default for IssaConfig {
    fn default() -> Self {
        Self {
            base: SsaConfig::default(),
            chaos_seed: 0.3,
            weight_max: 0.9,
            weight_min: 0.4,
            cauchy_scale: 0.1,
            ils_restarts: 5,
            acceptance_temperature: 0.01,
            chaotic_init: true,
            elite_refresh: true,
        }
    }
}

impl IssaConfig {
    /// Configuration with every improvement switched off; runs exactly as plain SSA.
    pub fn reduced_to_ssa(base: SsaConfig) -> Self {
        Self {
            base,
            weight_max: 1.0,
            weight_min: 1.0,
            cauchy_scale: 0.0,
            ils_restarts: 1,
            chaotic_init: false,
            elite_refresh: false,
            ..Self::default()
        }
    }

    /// Copy with `base.seed = seed` and a chaos seed derived from it.
    pub fn reseeded(&self, seed: u64) -> Self {
        Self {
            base: SsaConfig {
                seed,
                ..self.base.clone()
            },
            chaos_seed: chaos_seed_from(seed),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        self.base.validate()?;
        let bad = |m: String| Err(OptimizeError::InvalidConfig(m));
        if self.chaotic_init {
            LogisticMap::new(self.chaos_seed)?;
        }
        if !(self.weight_min.is_finite() && self.weight_max.is_finite() && self.weight_min <= self.weight_max) {
            return bad(format!(
                "weight range [{}, {}] is not ordered",
                self.weight_min, self.weight_max
            ));
        }
        if !(self.cauchy_scale >= 0.0 && self.cauchy_scale.is_finite()) {
            return bad(format!("cauchy_scale {} must be >= 0", self.cauchy_scale));
        }
        if self.ils_restarts == 0 {
            return bad("ils_restarts must be at least 1".into());
        }
        if !(self.acceptance_temperature > 0.0) {
            return bad(format!(
                "acceptance_temperature {} must be > 0",
                self.acceptance_temperature
            ));
        }
        Ok(())
    }

    /// Fitness evaluations per improved-SSA iteration.
    pub fn evaluations_per_iteration(&self) -> usize {
        self.base.evaluations_per_iteration() + if self.elite_refresh { 2 } else { 0 }
    }

    /// Total fitness evaluations of [`ils_optimize`].
    pub fn evaluation_budget(&self) -> usize {
        self.ils_restarts
            * (self.base.population_size + self.base.max_iterations * self.evaluations_per_iteration())
    }
}

/// Maps an integer seed to a valid logistic-map seed in (0.05, 0.95).
pub fn chaos_seed_from(seed: u64) -> f64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    let u = (z >> 11) as f64 / (1u64 << 53) as f64;
    let v = 0.05 + 0.9 * u;
    if DEGENERATE_CHAOS_SEEDS.contains(&v) {
        v + 1e-3
    } else {
        v
    }
}

/// Orbit of `x -> 4 x (1 - x)`.
///
/// If rounding ever drives the orbit onto 0, 1 or a fixed point, it is nudged
/// by the golden-ratio fraction and continues.
#[derive(Debug, Clone)]
pub struct LogisticMap {
    state: f64,
}

impl LogisticMap {
    const NUDGE: f64 = 0.618_033_988_749_894_9;

    pub fn new(seed: f64) -> Result<Self, OptimizeError> {
        if !(seed > 0.0 && seed < 1.0) || DEGENERATE_CHAOS_SEEDS.contains(&seed) {
            return Err(OptimizeError::InvalidConfig(format!(
                "chaos seed {seed} gives a degenerate logistic orbit"
            )));
        }
        Ok(Self { state: seed })
    }

    /// Returns the current orbit value and advances.
    pub fn next_value(&mut self) -> f64 {
        let current = self.state;
        let mut next = 4.0 * current * (1.0 - current);
        if !(next > 0.0 && next < 1.0) || DEGENERATE_CHAOS_SEEDS.contains(&next) {
            next = (next + Self::NUDGE).fract();
            if !(next > 0.0 && next < 1.0) || DEGENERATE_CHAOS_SEEDS.contains(&next) {
                next = Self::NUDGE;
            }
        }
        self.state = next;
        current
    }

    /// `n` positions filled row-major from the orbit, mapped affinely onto the box.
    pub fn positions(&mut self, space: &SearchSpace, n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| {
                (0..space.dimension())
                    .map(|j| space.lower()[j] + self.next_value() * space.width(j))
                    .collect()
            })
            .collect()
    }
}

/// Chaotic initial positions from the logistic orbit started at `chaos_seed`.
pub fn chaotic_init(space: &SearchSpace, n: usize, chaos_seed: f64) -> Result<Vec<Vec<f64>>, OptimizeError> {
    if n < 4 {
        return Err(OptimizeError::InvalidConfig(format!("population size {n} < 4")));
    }
    Ok(LogisticMap::new(chaos_seed)?.positions(space, n))
}

/// Linear decay from `w_max` at `t = 0` to `w_min` at `t = t_max`.
pub fn adaptive_weight(t: usize, t_max: usize, w_min: f64, w_max: f64) -> f64 {
    let t_max = t_max.max(1);
    w_max - (w_max - w_min) * (t.min(t_max) as f64 / t_max as f64)
}

/// Point mirrored through the box center: `lower + upper - x`.
pub fn opposition(x: &[f64], space: &SearchSpace) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, v)| space.lower()[i] + space.upper()[i] - v)
        .collect()
}

/// Standard Cauchy draw by inversion.
pub fn standard_cauchy<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    (PI * (u - 0.5)).tan()
}

/// `x + scale * width * C` per component with `C` standard Cauchy, clamped to the box.
pub fn cauchy_mutate<R: Rng + ?Sized>(x: &[f64], scale: f64, rng: &mut R, space: &SearchSpace) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let c = standard_cauchy(rng);
            space.settle(i, v, v + scale * space.width(i) * c)
        })
        .collect()
}

/// Greedy choice among the elite, its opposite and a Cauchy mutant.
///
/// Returns the replacement when one of the two candidates is strictly better.
pub fn elite_refresh<R: Rng + ?Sized>(
    elite: &Sparrow,
    space: &SearchSpace,
    cauchy_scale: f64,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
) -> Result<Option<Sparrow>, OptimizeError> {
    let opposite = opposition(&elite.position, space);
    let mutant = cauchy_mutate(&elite.position, cauchy_scale, rng, space);
    let f = eval.evaluate_batch(&[&opposite, &mutant])?;
    let mut best: Option<Sparrow> = None;
    let mut best_fitness = elite.fitness;
    for (position, fitness) in [(opposite, f[0]), (mutant, f[1])] {
        if fitness < best_fitness {
            best_fitness = fitness;
            best = Some(Sparrow { position, fitness });
        }
    }
    Ok(best)
}

/// Probability of accepting a candidate that is `delta` worse than the incumbent.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-delta / temperature).exp()
    }
}

fn run_round<R: Rng>(
    pop: &mut [Sparrow],
    space: &SearchSpace,
    config: &IssaConfig,
    eval: &mut Evaluator<'_>,
    rng: &mut R,
    round: usize,
    trace: &mut OptimizationTrace,
) -> Result<(), OptimizeError> {
    let t_max = config.base.max_iterations;
    for t in 0..t_max {
        let w = adaptive_weight(t, t_max, config.weight_min, config.weight_max);
        ssa_step(pop, space, &config.base, eval, w, rng)?;
        if config.elite_refresh {
            if let Some(better) = elite_refresh(&pop[0], space, config.cauchy_scale, eval, rng)? {
                pop[0] = better;
            }
        }
        trace.push(eval.best_fitness(), round);
    }
    Ok(())
}

/// Iterated local search around the improved SSA.
///
/// The trace concatenates the rounds, `max_iterations + 1` entries each.
pub fn ils_optimize(
    fitness: &dyn Fitness,
    space: &SearchSpace,
    config: &IssaConfig,
) -> Result<OptimizationResult, OptimizeError> {
    config.validate()?;
    let n = config.base.population_size;
    let mut rng = ChaCha8Rng::seed_from_u64(config.base.seed);
    let mut chaos = if config.chaotic_init {
        Some(LogisticMap::new(config.chaos_seed)?)
    } else {
        None
    };
    let mut fresh = |rng: &mut ChaCha8Rng, k: usize| match chaos.as_mut() {
        Some(map) => map.positions(space, k),
        None => uniform_positions(space, k, rng),
    };

    let mut eval = Evaluator::new(fitness);
    let mut trace = OptimizationTrace::default();

    eval.begin_window();
    let mut pop = evaluate_positions(fresh(&mut rng, n), &mut eval)?;
    trace.push(eval.best_fitness(), 0);
    run_round(&mut pop, space, config, &mut eval, &mut rng, 0, &mut trace)?;
    let mut incumbent = eval.window_best().cloned().expect("round evaluated");

    for round in 1..config.ils_restarts {
        let kicked = cauchy_mutate(&incumbent.position, config.cauchy_scale, &mut rng, space);
        let mut positions = vec![kicked];
        positions.extend(fresh(&mut rng, n - 1));
        eval.begin_window();
        pop = evaluate_positions(positions, &mut eval)?;
        trace.push(eval.best_fitness(), round);
        run_round(&mut pop, space, config, &mut eval, &mut rng, round, &mut trace)?;

        let candidate = eval.window_best().cloned().expect("round evaluated");
        let delta = candidate.fitness - incumbent.fitness;
        let accept = delta <= 0.0
            || rng.random::<f64>() < acceptance_probability(delta, config.acceptance_temperature);
        if accept {
            incumbent = candidate;
        }
    }

    Ok(finish(trace, &eval))
}
