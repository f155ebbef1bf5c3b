//! Check orchestration: classify, necessary, structural, sufficient, certify,
//! falsify, then optional simulation of the surviving verdict.

use std::time::Instant;

use matstab_core::dstability::{
    necessary_p0plus, sufficient_suite, total_stability_scan, vertex_schur_check, BinOp, Convention, GClass, Mode,
};
use matstab_core::lyapunov::diagonal_stability_search;
use matstab_core::matrix::classify;
use matstab_core::special_forms::{
    arcak_diagonal_stability, detect_cyclic, li_wang, secant_criterion, single_circuit_criterion,
};
use matstab_core::spectra::{
    decay_horizon, default_step, eigenvalues, gershgorin, region_stable, simulate_decay, Decay, DEFAULT_TOL,
};
use matstab_core::{dstability, Error, Matrix, Region, Verdict, Witness};
use serde_json::{json, Value};

use crate::report::{summarize, Bearing, Record, Report, SCHEMA};
use crate::request::{AnalysisRequest, Check};

/// Decay ratio demanded at the derived horizon.
pub const DECAY_TARGET: f64 = 1e-6;
/// Growth `e^{Re z·T}` aimed for when simulating a refutation witness.
const GROWTH_TARGET: f64 = 1e6;
const MAX_HORIZON: f64 = 1e4;
const MAX_STEPS: f64 = 1e6;

/// Which question the class, operation and region pose, when it is one the
/// dedicated criteria speak to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    /// `σ(DA)` in the convention's half-plane for all positive diagonal `D`.
    Multiplicative,
    /// `A - D` Hurwitz for all positive diagonal `D`.
    Additive,
    /// `ρ(DA) < 1` over diagonal `|d| <= 1` (or `±1`) matrices.
    Schur,
    Other,
}

fn target(class: &GClass, op: BinOp, region: &Region, convention: Convention) -> Target {
    match (class, op) {
        (GClass::PositiveDiagonal, BinOp::Multiply) if *region == convention.region() => Target::Multiplicative,
        (GClass::NegativeDiagonal, BinOp::Add) if *region == Region::HalfPlaneLeft => Target::Additive,
        (GClass::DiagonalNormLt1 | GClass::VertexDiagonal, BinOp::Multiply) if *region == Region::unit_disk() => {
            Target::Schur
        }
        _ => Target::Other,
    }
}

/// The member `e` with `e ∘ A = A`.
fn neutral(op: BinOp, n: usize) -> Matrix {
    match op {
        BinOp::Multiply => Matrix::identity(n),
        BinOp::Add => Matrix::zeros(n),
        BinOp::Hadamard | BinOp::BlockHadamard { .. } => Matrix::ones(n),
    }
}

/// Moves half-plane certificates to `region`. A right half-plane certificate
/// of `-A` and a left half-plane certificate of `A` share one operator.
fn relabel(v: Verdict, region: &Region) -> Verdict {
    match v.certificate() {
        Some(c) if matches!(c.region, Region::HalfPlaneLeft | Region::HalfPlaneRight) => {
            let mut c = c.clone();
            c.region = region.clone();
            v.with_witness(Witness::Certificate(c))
        }
        _ => v,
    }
}

struct Recorder {
    timings: bool,
    records: Vec<Record>,
}

impl Recorder {
    fn push(
        &mut self,
        check: &str,
        anchor: &str,
        bearing: Bearing,
        f: impl FnOnce() -> Result<(Verdict, Option<Value>), Error>,
    ) {
        let start = Instant::now();
        let out = f();
        let wall_ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (verdict, data, error) = match out {
            Ok((v, d)) => (v, d, None),
            Err(e) => (Verdict::unknown("check_failed"), None, Some(e.to_string())),
        };
        self.records.push(Record { check: check.into(), anchor: anchor.into(), bearing, verdict, data, error, wall_ms });
    }
}

fn plain(v: Result<Verdict, Error>) -> Result<(Verdict, Option<Value>), Error> {
    v.map(|v| (v, None))
}

fn anchor(criterion: &str) -> &'static str {
    match criterion {
        "diagonal_stability" => "Lyapunov diagonal stability implies D-stability",
        "m_matrix" => "nonsingular M-matrices are D-stable",
        "strict_diagonal_dominance" => "diagonal dominance with positive diagonal",
        "triangular_positive_diagonal" => "triangular with positive diagonal",
        "tridiagonal_p_matrix" => "tridiagonal P-matrices (Carlson)",
        "sign_symmetric_p_matrix" => "sign-symmetric P-matrices",
        "kosov_w_map" => "Kosov comparison-matrix test",
        _ => "sufficient condition",
    }
}

/// Runs the requested checks in pipeline order. Module errors become records
/// with an `error` field and an Unknown verdict, so a report is always
/// produced.
pub fn run(req: &AnalysisRequest) -> Report {
    let a = &req.matrix;
    let n = a.n();
    let region = req.region();
    let convention = match region {
        Region::HalfPlaneLeft => Convention::Hurwitz,
        Region::HalfPlaneRight => Convention::Positive,
        _ => req.convention,
    };
    let tgt = target(&req.class, req.op, &region, convention);
    // Hurwitz form of the input
    let h = convention.to_hurwitz(a);
    let half = convention.region();
    let mut rec = Recorder { timings: req.timings, records: Vec::new() };
    let has = |c: Check| req.modes.contains(c);

    if has(Check::Classify) {
        let bearing = if req.class.contains(&neutral(req.op, n), 1e-12) { Bearing::Necessary } else { Bearing::Informational };
        rec.push("region_stability", "spectral location of A itself", bearing, || {
            let spec = eigenvalues(a)?;
            let classes = serde_json::to_value(classify(a)?).expect("class report serializes");
            let held: Vec<&String> = classes
                .as_object()
                .into_iter()
                .flatten()
                .filter(|(_, f)| f.get("value") == Some(&Value::Bool(true)))
                .map(|(k, _)| k)
                .collect();
            let data = json!({
                "eigenvalues": spec.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "gershgorin": gershgorin(a).0,
                "classes": held,
            });
            Ok((region_stable(a, &region, DEFAULT_TOL), Some(data)))
        });
    }

    if has(Check::Necessary) {
        match tgt {
            Target::Multiplicative => rec.push("necessary_p0plus", "P0+ necessity (Quirk-Ruppert, Cross)", Bearing::Necessary, || {
                plain(necessary_p0plus(&h, Mode::Multiplicative))
            }),
            Target::Additive => rec.push("necessary_p0", "P0 necessity for additive D-stability", Bearing::Necessary, || {
                plain(necessary_p0plus(a, Mode::Additive))
            }),
            _ => {}
        }
    }

    if has(Check::Structural) {
        match tgt {
            Target::Multiplicative => {
                rec.push("li_wang", "Li-Wang additive compound test", Bearing::Necessary, || plain(li_wang(&h)));
                if let Some(f) = detect_cyclic(&h) {
                    rec.push("secant_criterion", "secant criterion for cyclic feedback", Bearing::Sufficient, || {
                        plain(secant_criterion(&f))
                    });
                } else if n >= 2 {
                    match single_circuit_criterion(&h) {
                        Err(Error::Precondition(_)) => {}
                        v => rec.push("single_circuit", "single-circuit criterion", Bearing::Sufficient, || plain(v)),
                    }
                }
            }
            Target::Schur => {
                let bearing = if req.class == GClass::VertexDiagonal { Bearing::Exact } else { Bearing::Necessary };
                rec.push("vertex_schur", "vertex stability over ±1 diagonals", bearing, || plain(vertex_schur_check(a)));
            }
            _ => {}
        }
    }

    if has(Check::Sufficient) {
        match tgt {
            Target::Multiplicative => {
                match sufficient_suite(&h.scale(-1.0), req.budget) {
                    Ok(items) => {
                        for it in items {
                            let v = relabel(it.verdict, &half);
                            rec.push(&it.criterion, anchor(&it.criterion), Bearing::Sufficient, || Ok((v, None)));
                        }
                    }
                    Err(e) => rec.push("sufficient_suite", "sufficient conditions", Bearing::Sufficient, || Err(e)),
                }
                rec.push("block_diagonal_stability", "Arcak block decomposition", Bearing::Sufficient, || {
                    plain(arcak_diagonal_stability(&h, req.budget).map(|v| relabel(v, &half)))
                });
            }
            Target::Additive => rec.push("diagonal_stability", anchor("diagonal_stability"), Bearing::Sufficient, || {
                plain(diagonal_stability_search(a, &Region::HalfPlaneLeft, req.budget))
            }),
            _ => {}
        }
    }

    if has(Check::Certify) {
        let bearing = if tgt == Target::Other { Bearing::Informational } else { Bearing::Sufficient };
        rec.push("diagonal_certificate", "diagonal Lyapunov-type certificate for the region", bearing, || {
            plain(diagonal_stability_search(a, &region, req.budget))
        });
    }

    if has(Check::Falsify) {
        rec.push("falsify", "randomized sampling of the class", Bearing::Necessary, || {
            plain(dstability::falsify(a, &req.class, req.op, &region, req.samples, req.seed))
        });
    }

    if has(Check::TotalScan) && tgt == Target::Multiplicative {
        rec.push("total_scan", "total D-stability over principal submatrices", Bearing::Sufficient, || {
            let scan = total_stability_scan(a, n, convention, req.samples, req.seed, req.budget)?;
            let entries: Vec<Value> = scan
                .entries
                .iter()
                .map(|(idx, v)| json!({ "indices": idx.one_based(), "status": v.status() }))
                .collect();
            Ok((scan.overall, Some(json!({ "entries": entries }))))
        });
    }

    // simulation is informational and never changes the summary
    let (summary, decided_by) = summarize(&rec.records);

    if has(Check::Simulate) {
        let bearing = Bearing::Informational;
        let anchor = "fourth-order Runge-Kutta trajectories";
        if !matches!(region, Region::HalfPlaneLeft | Region::HalfPlaneRight) {
            rec.push("simulate", anchor, bearing, || Ok((Verdict::unknown("simulation_needs_half_plane"), None)));
        } else if summary.is_proved() {
            rec.push("simulate", anchor, bearing, || simulate_proved(&h, req.simulate_horizon));
        } else if let Some(cx) = summary.counterexample() {
            let m = convention.to_hurwitz(&cx.realized);
            rec.push("simulate", anchor, bearing, || simulate_refuted(&m, req.simulate_horizon));
        } else {
            rec.push("simulate", anchor, bearing, || Ok((Verdict::unknown("nothing_to_simulate"), None)));
        }
    }

    Report {
        schema: SCHEMA.into(),
        matrix: a.clone(),
        region,
        class: req.class.clone(),
        op: req.op,
        convention,
        seed: req.seed,
        records: rec.records,
        summary,
        decided_by,
    }
}

fn decay_data(t: f64, d: &Decay) -> Value {
    json!({ "horizon": t, "ratio": d.ratio, "steps": d.steps, "diverged": d.diverged })
}

fn simulate_proved(h: &Matrix, horizon: Option<f64>) -> Result<(Verdict, Option<Value>), Error> {
    let (t, threshold) = match horizon {
        Some(t) => (t, 1.0),
        None => (decay_horizon(h, DECAY_TARGET)?, DECAY_TARGET),
    };
    let d = simulate_decay(h, t, default_step(h))?;
    if d.diverged {
        let v = Verdict::unknown("decay_not_confirmed").with_detail("trajectory overflowed");
        return Ok((v, Some(decay_data(t, &d))));
    }
    let w = Witness::Bound { value: d.ratio, threshold };
    let v = if d.ratio < threshold {
        Verdict::proved_with("decay_confirmed", w)
    } else {
        Verdict::unknown("decay_not_confirmed").with_witness(w)
    };
    Ok((v, Some(decay_data(t, &d))))
}

/// Integrates the Hurwitz form `m` of a refuting `G ∘ A` long enough for its
/// abscissa to grow trajectories by about [`GROWTH_TARGET`].
fn simulate_refuted(m: &Matrix, horizon: Option<f64>) -> Result<(Verdict, Option<Value>), Error> {
    let step = default_step(m);
    let t = match horizon {
        Some(t) => t,
        None => (GROWTH_TARGET.ln() / eigenvalues(m)?.abscissa().max(1e-12)).min(MAX_HORIZON).min(MAX_STEPS * step),
    };
    let d = simulate_decay(m, t, step)?;
    let v = if d.diverged {
        Verdict::proved("witness_growth_confirmed").with_detail("trajectory overflowed")
    } else if d.ratio > 1.0 {
        Verdict::proved_with("witness_growth_confirmed", Witness::Bound { value: d.ratio, threshold: 1.0 })
    } else {
        Verdict::unknown("witness_growth_not_observed").with_witness(Witness::Bound { value: d.ratio, threshold: 1.0 })
    };
    Ok((v, Some(decay_data(t, &d))))
}
