//! Canonical sparrow search algorithm over a box-bounded search space.
//!
//! The population is kept sorted best-first. Each iteration runs three phases,
//! each followed by a fitness evaluation of the individuals it moved:
//!
//! * producers (the best `ceil(producer_fraction * n)`) either contract toward
//!   the origin, `x * exp(-i / (alpha * T))`, when no alarm is raised
//!   (`R2 < safety_threshold`), or take a Gaussian step `x + Q`;
//! * scroungers in the worse half jump by `Q * exp((x_worst - x) / i^2)`; the
//!   rest land next to the best producer `x_p + |x - x_p| A+ L`, where `A` is a
//!   random ±1 row and `A+ L` spreads the mean signed gap over every component;
//! * scouts (`ceil(scout_fraction * n)` random individuals) move toward the
//!   best position seen so far if they are worse than it, otherwise step away
//!   from the current worst.
//!
//! Positions are clamped to the box after every move and non-finite fitness
//! values count as `+inf`. The best point ever evaluated is tracked by the
//! [`Evaluator`], which makes every run elitist.
//!
//! All random draws happen on the calling thread; only fitness evaluations fan
//! out (via rayon), so results do not depend on the thread count.

use std::fmt;
use std::io;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type BoxError = Box<dyn std::error::Error + Send + Sync>;

/// Guards the scout step against a zero fitness gap.
pub const SCOUT_EPSILON: f64 = 1e-50;

#[derive(Debug, Error)]
pub enum OptimizeError {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("fitness evaluation #{evaluation} failed: {source}")]
    Fitness { evaluation: usize, source: BoxError },
}

/// A black-box objective to minimize. Must tolerate concurrent calls.
pub trait Fitness: Sync {
    fn evaluate(&self, position: &[f64]) -> Result<f64, BoxError>;
}

impl<F> Fitness for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, position: &[f64]) -> Result<f64, BoxError> {
        Ok(self(position))
    }
}

/// Adapts a fallible closure into a [`Fitness`].
pub struct TryFitness<F>(pub F);

impl<F, E> Fitness for TryFitness<F>
where
    F: Fn(&[f64]) -> Result<f64, E> + Sync,
    E: Into<BoxError>,
{
    fn evaluate(&self, position: &[f64]) -> Result<f64, BoxError> {
        (self.0)(position).map_err(Into::into)
    }
}

/// Axis-aligned box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, OptimizeError> {
        if lower.is_empty() {
            return Err(OptimizeError::InvalidSpace("dimension must be positive".into()));
        }
        if lower.len() != upper.len() {
            return Err(OptimizeError::InvalidSpace(format!(
                "{} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(OptimizeError::InvalidSpace(format!(
                    "bounds [{l}, {u}] of component {i} are not a finite, non-empty interval"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The cube `[lo, hi]^dimension`.
    pub fn cube(dimension: usize, lo: f64, hi: f64) -> Result<Self, OptimizeError> {
        Self::new(vec![lo; dimension], vec![hi; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    pub fn clamp(&self, x: &mut [f64]) {
        for (i, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[i], self.upper[i]);
        }
    }

    /// A uniform draw inside the box.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dimension())
            .map(|i| self.lower[i] + rng.random::<f64>() * self.width(i))
            .collect()
    }

    /// New coordinate `i` after a move from `old`: NaN keeps `old`, the rest is clamped.
    #[inline]
    pub(crate) fn settle(&self, i: usize, old: f64, new: f64) -> f64 {
        if new.is_nan() {
            old
        } else {
            new.clamp(self.lower[i], self.upper[i])
        }
    }
}

/// One candidate solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sparrow {
    pub position: Vec<f64>,
    pub fitness: f64,
}

/// SSA settings. Role fractions are of the population size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SsaConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    pub producer_fraction: f64,
    pub scout_fraction: f64,
    pub safety_threshold: f64,
    pub seed: u64,
}

impl Default for SsaConfig {
    fn default() -> Self {
        Self {
            population_size: 30,
            max_iterations: 40,
            producer_fraction: 0.2,
            scout_fraction: 0.1,
            safety_threshold: 0.8,
            seed: 0,
        }
    }
}

impl SsaConfig {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        let bad = |m: String| Err(OptimizeError::InvalidConfig(m));
        if self.population_size < 4 {
            return bad(format!("population_size {} < 4", self.population_size));
        }
        for (name, v) in [
            ("producer_fraction", self.producer_fraction),
            ("scout_fraction", self.scout_fraction),
            ("safety_threshold", self.safety_threshold),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return bad(format!("{name} {v} outside (0, 1)"));
            }
        }
        if self.producer_count() >= self.population_size {
            return bad("no scroungers left after producers".into());
        }
        Ok(())
    }

    pub fn producer_count(&self) -> usize {
        ((self.producer_fraction * self.population_size as f64).ceil() as usize).max(1)
    }

    pub fn scout_count(&self) -> usize {
        ((self.scout_fraction * self.population_size as f64).ceil() as usize)
            .clamp(1, self.population_size)
    }

    /// Fitness evaluations per iteration: every individual once, scouts twice.
    pub fn evaluations_per_iteration(&self) -> usize {
        self.population_size + self.scout_count()
    }

    /// Total fitness evaluations of [`optimize`] with this configuration.
    pub fn evaluation_budget(&self) -> usize {
        self.population_size + self.max_iterations * self.evaluations_per_iteration()
    }

    /// Copy whose iteration count brings the total evaluation count closest to `budget`.
    pub fn with_budget(&self, budget: usize) -> Self {
        let per = self.evaluations_per_iteration() as f64;
        let iterations = ((budget as f64 - self.population_size as f64) / per).round().max(0.0);
        Self {
            max_iterations: iterations as usize,
            ..self.clone()
        }
    }
}

/// Counts fitness calls and remembers the best point ever evaluated.
pub struct Evaluator<'a> {
    fitness: &'a dyn Fitness,
    count: usize,
    best: Option<Sparrow>,
    window_best: Option<Sparrow>,
}

impl<'a> Evaluator<'a> {
    pub fn new(fitness: &'a dyn Fitness) -> Self {
        Self {
            fitness,
            count: 0,
            best: None,
            window_best: None,
        }
    }

    pub fn evaluations(&self) -> usize {
        self.count
    }

    /// Best sparrow seen so far (earliest wins ties).
    pub fn best(&self) -> Option<&Sparrow> {
        self.best.as_ref()
    }

    /// Starts a new observation window; see [`Evaluator::window_best`].
    pub fn begin_window(&mut self) {
        self.window_best = None;
    }

    /// Best sparrow evaluated since the last [`Evaluator::begin_window`].
    pub fn window_best(&self) -> Option<&Sparrow> {
        self.window_best.as_ref()
    }

    pub fn best_fitness(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.fitness)
    }

    /// Evaluates positions, possibly in parallel; results are in input order.
    pub fn evaluate_batch(&mut self, positions: &[&[f64]]) -> Result<Vec<f64>, OptimizeError> {
        let fitness = self.fitness;
        let raw: Vec<Result<f64, BoxError>> = if positions.len() > 1 {
            positions.par_iter().map(|p| fitness.evaluate(p)).collect()
        } else {
            positions.iter().map(|p| fitness.evaluate(p)).collect()
        };
        let mut out = Vec::with_capacity(raw.len());
        for (k, r) in raw.into_iter().enumerate() {
            match r {
                Ok(v) => out.push(sanitize(v)),
                Err(source) => {
                    return Err(OptimizeError::Fitness {
                        evaluation: self.count + k + 1,
                        source,
                    })
                }
            }
        }
        self.count += out.len();
        for (p, &f) in positions.iter().zip(&out) {
            self.offer(p, f);
        }
        Ok(out)
    }

    pub fn evaluate_one(&mut self, position: &[f64]) -> Result<f64, OptimizeError> {
        Ok(self.evaluate_batch(&[position])?[0])
    }

    fn offer(&mut self, position: &[f64], fitness: f64) {
        for slot in [&mut self.best, &mut self.window_best] {
            if slot.as_ref().is_none_or(|b| fitness < b.fitness) {
                *slot = Some(Sparrow {
                    position: position.to_vec(),
                    fitness,
                });
            }
        }
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Stable sort, best first.
pub fn sort_population(pop: &mut [Sparrow]) {
    pop.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
}

/// Evaluates the given positions into a sorted population.
pub fn evaluate_positions(positions: Vec<Vec<f64>>, eval: &mut Evaluator<'_>) -> Result<Vec<Sparrow>, OptimizeError> {
    let refs: Vec<&[f64]> = positions.iter().map(Vec::as_slice).collect();
    let fitness = eval.evaluate_batch(&refs)?;
    let mut pop: Vec<Sparrow> = positions
        .into_iter()
        .zip(fitness)
        .map(|(position, fitness)| Sparrow { position, fitness })
        .collect();
    sort_population(&mut pop);
    Ok(pop)
}

/// `n` uniform positions inside the box.
pub fn uniform_positions<R: Rng + ?Sized>(space: &SearchSpace, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..n).map(|_| space.sample_uniform(rng)).collect()
}

/// Uniform random population, evaluated and sorted best first.
pub fn init_population<R: Rng + ?Sized>(
    space: &SearchSpace,
    n: usize,
    fitness: &dyn Fitness,
    rng: &mut R,
) -> Result<Vec<Sparrow>, OptimizeError> {
    if n < 4 {
        return Err(OptimizeError::InvalidConfig(format!("population size {n} < 4")));
    }
    let mut eval = Evaluator::new(fitness);
    evaluate_positions(uniform_positions(space, n, rng), &mut eval)
}

fn evaluate_range(
    pop: &mut [Sparrow],
    range: std::ops::Range<usize>,
    eval: &mut Evaluator<'_>,
) -> Result<(), OptimizeError> {
    let refs: Vec<&[f64]> = pop[range.clone()].iter().map(|s| s.position.as_slice()).collect();
    let values = eval.evaluate_batch(&refs)?;
    for (s, f) in pop[range].iter_mut().zip(values) {
        s.fitness = f;
    }
    Ok(())
}

/// One SSA iteration. `weight` scales the producer displacement (1 for canonical SSA).
///
/// On return the population is sorted best first.
pub fn ssa_step<R: Rng + ?Sized>(
    pop: &mut [Sparrow],
    space: &SearchSpace,
    config: &SsaConfig,
    eval: &mut Evaluator<'_>,
    weight: f64,
    rng: &mut R,
) -> Result<(), OptimizeError> {
    let n = pop.len();
    if n < 4 {
        return Err(OptimizeError::InvalidConfig(format!("population size {n} < 4")));
    }
    sort_population(pop);
    let dim = space.dimension();
    let producers = config.producer_count().min(n - 1);
    let scouts = config.scout_count().min(n);
    let t_max = config.max_iterations.max(1) as f64;
    let worst = pop[n - 1].position.clone();

    // Producers.
    for (i, s) in pop[..producers].iter_mut().enumerate() {
        let rank = (i + 1) as f64;
        let r2: f64 = rng.random();
        if r2 < config.safety_threshold {
            let alpha = 1.0 - rng.random::<f64>();
            let factor = (-rank / (alpha * t_max)).exp();
            for j in 0..dim {
                let x = s.position[j];
                s.position[j] = space.settle(j, x, x + weight * (x * factor - x));
            }
        } else {
            let q: f64 = rng.sample(StandardNormal);
            for j in 0..dim {
                let x = s.position[j];
                s.position[j] = space.settle(j, x, x + weight * q);
            }
        }
    }
    evaluate_range(pop, 0..producers, eval)?;
    let lead = (0..producers)
        .min_by(|&a, &b| pop[a].fitness.total_cmp(&pop[b].fitness))
        .expect("at least one producer");
    let lead_pos = pop[lead].position.clone();

    // Scroungers.
    for (i, s) in pop.iter_mut().enumerate().skip(producers) {
        let rank = (i + 1) as f64;
        if rank > n as f64 / 2.0 {
            let q: f64 = rng.sample(StandardNormal);
            for j in 0..dim {
                let x = s.position[j];
                s.position[j] = space.settle(j, x, q * ((worst[j] - x) / (rank * rank)).exp());
            }
        } else {
            let mut step = 0.0;
            for j in 0..dim {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                step += sign * (s.position[j] - lead_pos[j]).abs();
            }
            step /= dim as f64;
            for j in 0..dim {
                let x = s.position[j];
                s.position[j] = space.settle(j, x, lead_pos[j] + step);
            }
        }
    }
    evaluate_range(pop, producers..n, eval)?;

    // Scouts.
    let mut chosen = index::sample(rng, n, scouts).into_vec();
    chosen.sort_unstable();
    let best = eval.best().cloned().expect("population evaluated");
    let worst_idx = (0..n)
        .max_by(|&a, &b| pop[a].fitness.total_cmp(&pop[b].fitness))
        .expect("non-empty population");
    let (worst_fit, worst_pos) = (pop[worst_idx].fitness, pop[worst_idx].position.clone());
    for &k in &chosen {
        let s = &mut pop[k];
        if s.fitness > best.fitness {
            let beta: f64 = rng.sample(StandardNormal);
            for j in 0..dim {
                let x = s.position[j];
                let b = best.position[j];
                s.position[j] = space.settle(j, x, b + beta * (x - b).abs());
            }
        } else {
            let k_step: f64 = rng.random_range(-1.0..=1.0);
            let gap = s.fitness - worst_fit + SCOUT_EPSILON;
            for j in 0..dim {
                let x = s.position[j];
                s.position[j] = space.settle(j, x, x + k_step * ((x - worst_pos[j]).abs() / gap));
            }
        }
    }
    let refs: Vec<&[f64]> = chosen.iter().map(|&k| pop[k].position.as_slice()).collect();
    let values = eval.evaluate_batch(&refs)?;
    for (&k, f) in chosen.iter().zip(values) {
        pop[k].fitness = f;
    }

    sort_population(pop);
    debug_assert!(pop.iter().all(|s| space.contains(&s.position)));
    Ok(())
}

/// Best-so-far fitness per iteration plus the final elite.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub best_so_far: Vec<f64>,
    /// Restart round of each entry (all zero for plain SSA).
    pub rounds: Vec<usize>,
    pub best_position: Vec<f64>,
    pub evaluations: usize,
}

impl OptimizationTrace {
    /// Appends an entry. The best-so-far sequence may never increase.
    pub fn push(&mut self, best: f64, round: usize) {
        if let Some(&last) = self.best_so_far.last() {
            assert!(best <= last, "best-so-far increased from {last} to {best}");
        }
        self.best_so_far.push(best);
        self.rounds.push(round);
    }

    pub fn is_monotone(&self) -> bool {
        self.best_so_far.windows(2).all(|w| w[1] <= w[0])
    }

    /// `iteration,best_fitness` rows.
    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "iteration,best_fitness")?;
        for (i, b) in self.best_so_far.iter().enumerate() {
            writeln!(w, "{i},{b}")?;
        }
        Ok(())
    }

    /// `iteration,best_fitness,round` rows.
    pub fn write_csv_with_rounds<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "iteration,best_fitness,round")?;
        for (i, (b, r)) in self.best_so_far.iter().zip(&self.rounds).enumerate() {
            writeln!(w, "{i},{b},{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub trace: OptimizationTrace,
}

impl fmt::Display for OptimizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "best {:.6e} after {} evaluations",
            self.best_fitness, self.trace.evaluations
        )
    }
}

pub(crate) fn finish(mut trace: OptimizationTrace, eval: &Evaluator<'_>) -> OptimizationResult {
    let best = eval.best().cloned().expect("at least one evaluation");
    trace.best_position = best.position.clone();
    trace.evaluations = eval.evaluations();
    OptimizationResult {
        best_position: best.position,
        best_fitness: best.fitness,
        trace,
    }
}

/// Runs uniform initialization plus `max_iterations` SSA steps.
///
/// The trace holds `max_iterations + 1` entries, the first being the best of
/// the initial population.
pub fn optimize(
    fitness: &dyn Fitness,
    space: &SearchSpace,
    config: &SsaConfig,
) -> Result<OptimizationResult, OptimizeError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut eval = Evaluator::new(fitness);
    let mut pop = evaluate_positions(uniform_positions(space, config.population_size, &mut rng), &mut eval)?;
    let mut trace = OptimizationTrace::default();
    trace.push(eval.best_fitness(), 0);
    for _ in 0..config.max_iterations {
        ssa_step(&mut pop, space, config, &mut eval, 1.0, &mut rng)?;
        trace.push(eval.best_fitness(), 0);
    }
    Ok(finish(trace, &eval))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn space_invariants() {
        assert!(SearchSpace::new(vec![0.0], vec![0.0]).is_err());
        assert!(SearchSpace::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![], vec![]).is_err());
        assert!(SearchSpace::new(vec![0.0], vec![1e-9]).is_ok());
        assert!(SearchSpace::new(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn init_in_bounds_and_deterministic() {
        let space = SearchSpace::cube(2, 0.0, 1.0).unwrap();
        let a = init_population(&space, 4, &sphere, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = init_population(&space, 4, &sphere, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.iter().all(|s| space.contains(&s.position)));
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].fitness <= w[1].fitness));
    }

    #[test]
    fn budget_accounting_matches_count() {
        let space = SearchSpace::cube(3, -5.0, 5.0).unwrap();
        let cfg = SsaConfig {
            population_size: 12,
            max_iterations: 7,
            seed: 1,
            ..SsaConfig::default()
        };
        let r = optimize(&sphere, &space, &cfg).unwrap();
        assert_eq!(r.trace.evaluations, cfg.evaluation_budget());
        assert_eq!(r.trace.best_so_far.len(), 8);
        let matched = cfg.with_budget(1000);
        assert!((matched.evaluation_budget() as f64 - 1000.0).abs() <= matched.evaluations_per_iteration() as f64 / 2.0);
    }

    #[test]
    fn constant_function_flat_trace() {
        let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
        let r = optimize(&|_: &[f64]| 7.0, &space, &SsaConfig { population_size: 8, max_iterations: 10, ..SsaConfig::default() }).unwrap();
        assert_eq!(r.best_fitness, 7.0);
        assert!(r.trace.best_so_far.iter().all(|&b| b == 7.0));
    }

    #[test]
    fn optimum_kept() {
        // The origin is inside the initial population via an injected member.
        let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
        let cfg = SsaConfig { population_size: 6, ..SsaConfig::default() };
        let mut eval = Evaluator::new(&sphere);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut positions = uniform_positions(&space, 5, &mut rng);
        positions.push(vec![0.0, 0.0]);
        let mut pop = evaluate_positions(positions, &mut eval).unwrap();
        assert_eq!(eval.best_fitness(), 0.0);
        ssa_step(&mut pop, &space, &cfg, &mut eval, 1.0, &mut rng).unwrap();
        assert_eq!(eval.best_fitness(), 0.0);
    }

    #[test]
    fn non_finite_fitness_is_worst() {
        let space = SearchSpace::cube(1, -1.0, 1.0).unwrap();
        let f = |x: &[f64]| if x[0] > 0.0 { f64::NAN } else { -x[0] };
        let r = optimize(&f, &space, &SsaConfig { population_size: 10, max_iterations: 5, seed: 2, ..SsaConfig::default() }).unwrap();
        assert!(r.best_fitness.is_finite());
    }

    #[test]
    fn fitness_errors_are_wrapped() {
        let space = SearchSpace::cube(1, -1.0, 1.0).unwrap();
        let f = TryFitness(|_: &[f64]| -> Result<f64, String> { Err("boom".into()) });
        let err = optimize(&f, &space, &SsaConfig { population_size: 4, ..SsaConfig::default() }).unwrap_err();
        assert!(matches!(err, OptimizeError::Fitness { evaluation: 1, .. }));
        assert!(err.to_string().contains("boom"));
    }

    #[test]
    fn config_validation() {
        assert!(SsaConfig { population_size: 3, ..SsaConfig::default() }.validate().is_err());
        assert!(SsaConfig { producer_fraction: 1.0, ..SsaConfig::default() }.validate().is_err());
        assert!(SsaConfig::default().validate().is_ok());
        let c = SsaConfig { population_size: 10, ..SsaConfig::default() };
        assert_eq!((c.producer_count(), c.scout_count()), (2, 1));
    }

    #[test]
    fn trace_csv() {
        let mut t = OptimizationTrace::default();
        t.push(3.0, 0);
        t.push(1.5, 1);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "iteration,best_fitness\n0,3\n1,1.5\n");
        let mut buf = Vec::new();
        t.write_csv_with_rounds(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "iteration,best_fitness,round\n0,3,0\n1,1.5,1\n");
    }
}
