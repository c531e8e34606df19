use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexPolygon, Point2};
use crate::ot::{dual_ascent, AscentConfig, DiscreteMeasure, DualPotential};

use super::{objective_vertex_gradient, renyi_energy, ShapeError};

/// Knobs for the alternating solver. `tau1`/`delta1`/`max_inner` drive the
/// inner potential ascent, `tau2`/`delta2`/`max_outer` the outer vertex
/// descent, `epsilon`/`m_exponent` the area penalty. `area_floor` is an
/// absolute lower bound on iterate areas (0 keeps the default relative
/// floor). `k` and `seed` matter to [`initialize_polygon`] and to callers
/// that sweep configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub k: usize,
    pub epsilon: f64,
    pub m_exponent: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub max_outer: usize,
    pub max_inner: usize,
    pub area_floor: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            k: 3,
            epsilon: 0.0,
            m_exponent: 2.0,
            tau1: 0.5,
            tau2: 0.1,
            delta1: 1e-3,
            delta2: 1e-5,
            max_outer: 1000,
            max_inner: 50_000,
            area_floor: 0.0,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ShapeError> {
        let bad = |msg: &str| Err(ShapeError::InvalidConfig(msg.into()));
        if self.k < 3 {
            return bad("k must be at least 3");
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad("epsilon must be finite and nonnegative");
        }
        if !(self.m_exponent >= 1.0 && self.m_exponent.is_finite()) {
            return bad("m_exponent must be finite and at least 1");
        }
        if !(self.tau1 > 0.0 && self.tau1.is_finite())
            || !(self.tau2 > 0.0 && self.tau2.is_finite())
        {
            return bad("step sizes tau1 and tau2 must be finite and positive");
        }
        if !(self.delta1 > 0.0 && self.delta1.is_finite())
            || !(self.delta2 > 0.0 && self.delta2.is_finite())
        {
            return bad("tolerances delta1 and delta2 must be finite and positive");
        }
        if self.max_outer == 0 || self.max_inner == 0 {
            return bad("iteration caps must be positive");
        }
        if !(self.area_floor >= 0.0 && self.area_floor.is_finite()) {
            return bad("area_floor must be finite and nonnegative");
        }
        Ok(())
    }

    fn ascent(&self) -> AscentConfig {
        AscentConfig {
            tau1: self.tau1,
            delta1: self.delta1,
            max_iter: self.max_inner,
        }
    }
}

/// One accepted outer iteration: the polygon it produced and the numbers
/// describing how. `step`/`halvings` describe the descent step that led
/// here (zero on the initial record, which describes the starting polygon).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OuterRecord {
    pub iteration: usize,
    pub vertices: Vec<Point2>,
    pub objective: f64,
    pub w2: f64,
    pub entropy: f64,
    pub inner_iterations: usize,
    pub step: f64,
    pub halvings: u32,
}

/// Full history of a solve. `records` always holds at least the initial
/// state; `final_polygon` duplicates the last record's vertices for
/// convenience.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveTrace {
    pub records: Vec<OuterRecord>,
    pub final_polygon: Vec<Point2>,
    pub converged: bool,
    pub outer_iterations: usize,
}

impl SolveTrace {
    /// Rebuilds the final polygon (e.g. after deserializing a trace).
    pub fn final_region(&self) -> Result<ConvexPolygon, ShapeError> {
        Ok(ConvexPolygon::try_new(self.final_polygon.clone())?)
    }
}

/// Starting polygon: a regular `k`-gon at the weighted mean of `mu`, sized
/// to twice the standard deviation along the most spread direction (unit
/// circumradius when the data has no spread), with the first vertex at a
/// seeded-random angle in `[0, 2π/k)` so that repeated runs explore
/// different orientations deterministically.
///
/// Panics if `k < 3`: there is no such polygon.
pub fn initialize_polygon(mu: &DiscreteMeasure, k: usize, seed: u64) -> ConvexPolygon {
    assert!(k >= 3, "a polygon needs at least 3 vertices");
    let lam = mu.covariance_top_eigenvalue();
    let radius = if lam > 1e-24 { 2.0 * lam.sqrt() } else { 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta0 = rng.random_range(0.0..std::f64::consts::TAU / k as f64);
    ConvexPolygon::regular(k, mu.mean(), radius, theta0)
        .expect("a regular polygon with positive radius is valid")
}

/// Alternating minimization: at the current polygon, ascend the transport
/// potential to (approximate) optimality, then take one explicit descent
/// step on the vertices along the objective gradient, backtracking the
/// step until the new polygon is valid and the objective does not
/// increase. Stops when the vertex displacement falls below `delta2` in
/// the max norm, when a backtracked step can no longer move (stationary),
/// or at `max_outer`.
///
/// The potential is warm-started across outer iterations; this changes
/// only the inner iteration counts, not the fixed point.
pub fn solve(
    mu: &DiscreteMeasure,
    omega0: &ConvexPolygon,
    cfg: &SolverConfig,
) -> Result<SolveTrace, ShapeError> {
    cfg.validate()?;
    if omega0.len() != cfg.k {
        return Err(ShapeError::InvalidConfig(format!(
            "initial polygon has {} vertices but cfg.k is {}",
            omega0.len(),
            cfg.k
        )));
    }
    let acfg = cfg.ascent();
    let mut omega = omega0.clone();
    let mut report = dual_ascent(&omega, mu, DualPotential::zeros(mu.len()), &acfg)?;
    let mut entropy = renyi_energy(&omega, cfg.epsilon, cfg.m_exponent);
    let mut objective = report.w2_squared + entropy;
    // Tolerance for "did not increase": scaled to the starting objective so
    // inner-ascent truncation noise never masquerades as ascent failure.
    let rise_slack = 1e-6 * objective.abs().max(1e-12);

    let mut records = vec![OuterRecord {
        iteration: 0,
        vertices: omega.vertices().to_vec(),
        objective,
        w2: report.w2(),
        entropy,
        inner_iterations: report.iterations,
        step: 0.0,
        halvings: 0,
    }];
    let mut converged = false;
    let mut outer_iterations = 0;

    'outer: for s in 1..=cfg.max_outer {
        let grads = objective_vertex_gradient(mu, &omega, &report.phi_star, cfg)?;
        let mut step = cfg.tau2;
        let mut halvings = 0u32;
        let mut saw_feasible = false;
        let accepted = loop {
            let verts: Vec<Point2> = omega
                .vertices()
                .iter()
                .zip(&grads)
                .map(|(v, g)| *v - *g * step)
                .collect();
            let built = if cfg.area_floor > 0.0 {
                ConvexPolygon::try_new_with_floor(verts, cfg.area_floor)
            } else {
                ConvexPolygon::try_new(verts)
            };
            if let Ok(cand) = built {
                saw_feasible = true;
                let rep = dual_ascent(&cand, mu, report.phi_star.clone(), &acfg)?;
                let ent = renyi_energy(&cand, cfg.epsilon, cfg.m_exponent);
                let obj = rep.w2_squared + ent;
                if obj <= objective + rise_slack {
                    break (cand, rep, ent, obj);
                }
            }
            halvings += 1;
            if halvings > 30 {
                if saw_feasible {
                    // Feasible but no descent at any scale: stationary.
                    converged = true;
                    break 'outer;
                }
                return Err(ShapeError::DegeneratePolygon { iteration: s });
            }
            step *= 0.5;
        };
        let (cand, rep, ent, obj) = accepted;
        let displacement = omega
            .vertices()
            .iter()
            .zip(cand.vertices())
            .map(|(a, b)| (a.x - b.x).abs().max((a.y - b.y).abs()))
            .fold(0.0, f64::max);
        omega = cand;
        report = rep;
        entropy = ent;
        objective = obj;
        outer_iterations = s;
        records.push(OuterRecord {
            iteration: s,
            vertices: omega.vertices().to_vec(),
            objective,
            w2: report.w2(),
            entropy,
            inner_iterations: report.iterations,
            step,
            halvings,
        });
        if displacement < cfg.delta2 {
            converged = true;
            break;
        }
    }

    Ok(SolveTrace {
        final_polygon: omega.vertices().to_vec(),
        records,
        converged,
        outer_iterations,
    })
}
