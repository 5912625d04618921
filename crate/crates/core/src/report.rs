//! End-to-end pipelines and the serializable report they produce.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, AlgebraSlices, HilbertMatrix};
use crate::diagnostics::{
    betti_duality_check, gk_estimate, homological_data, tensor_recognize, twisted_cy_from, DualityMismatch, Growth,
    NakayamaData, Status, TensorRecognition, Verdict,
};
use crate::linalg::{Field, FieldSpec, PrimeField, Rationals};
use crate::presentation::Presentation;
use crate::resolution::{BettiTable, ExtTable, GlobalDimension};

pub const SCHEMA_VERSION: u32 = 1;

/// Runs a computation generic over the field chosen at runtime.
pub trait FieldTask {
    type Output;
    fn run<F: Field>(self, field: &F) -> Self::Output;
}

pub fn with_field<T: FieldTask>(spec: FieldSpec, task: T) -> T::Output {
    match spec {
        FieldSpec::Rationals => task.run(&Rationals),
        FieldSpec::PrimeField(p) => task.run(&PrimeField::new(p)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub truncation: usize,
    pub maxstep: usize,
    pub field: FieldSpec,
    pub duality_check: bool,
    pub seed: u64,
}

impl Parameters {
    pub fn new(field: FieldSpec, truncation: usize) -> Self {
        Parameters { truncation, maxstep: truncation, field, duality_check: true, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleCheck {
    /// Degrees `0..=window` are certified.
    pub window: usize,
    pub dimensions: Vec<usize>,
    /// A certified verdict of positive dimension comes with a zero socle.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub applicable: bool,
    pub mismatch: Option<DualityMismatch>,
}

impl DualityCheck {
    pub fn passed(&self) -> bool {
        self.applicable && self.mismatch.is_none()
    }
}

/// Classification of the opposite algebra, compared with the original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OppositeCheck {
    pub verdict: Verdict,
    /// Same dimension and inverse Nakayama permutation (vacuous unless both
    /// verdicts are certified).
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityCheck {
    pub seed: u64,
    pub samples: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub socle: SocleCheck,
    pub duality: DualityCheck,
    pub opposite: OppositeCheck,
    pub growth: Growth,
    pub tensor: TensorRecognition,
    pub associativity: AssociativityCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub presentation: String,
    pub parameters: Parameters,
    pub hilbert: HilbertMatrix,
    pub betti: BettiTable,
    pub ext: ExtTable,
    pub global_dimension: GlobalDimension,
    pub verdict: Verdict,
    pub checks: Checks,
    pub timings: Vec<Timing>,
}

impl Status {
    /// 0 certified, 2 refuted, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::CertifiedUpTo { .. } => 0,
            Status::Refuted { .. } => 2,
            Status::Inconclusive { .. } => 3,
        }
    }
}

struct Clock {
    start: Instant,
    timings: Vec<Timing>,
}

impl Clock {
    fn new() -> Self {
        Clock { start: Instant::now(), timings: Vec::new() }
    }

    fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        self.timings.push(Timing { phase: phase.into(), seconds: (now - self.start).as_secs_f64() });
        self.start = now;
    }
}

/// Samples `(ab)c = a(bc)` on random basis triples.
pub fn associativity_spot_check<F: Field>(alg: &AlgebraSlices<F>, seed: u64, samples: usize) -> AssociativityCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = alg.truncation();
    let mut done = 0;
    let mut failures = 0;
    for _ in 0..samples * 4 {
        if done == samples {
            break;
        }
        let d1 = rng.gen_range(0..=top);
        let d2 = rng.gen_range(0..=top - d1);
        let d3 = rng.gen_range(0..=top - d1 - d2);
        if alg.dim(d1) == 0 || alg.dim(d2) == 0 || alg.dim(d3) == 0 {
            continue;
        }
        let a = alg.unit(d1, rng.gen_range(0..alg.dim(d1)));
        let b = alg.unit(d2, rng.gen_range(0..alg.dim(d2)));
        let c = alg.unit(d3, rng.gen_range(0..alg.dim(d3)));
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        done += 1;
        if left != right {
            failures += 1;
        }
    }
    AssociativityCheck { seed, samples: done, failures }
}

fn classify<F: Field>(alg: &AlgebraSlices<F>, maxstep: usize) -> Verdict {
    twisted_cy_from(alg, &homological_data(alg, maxstep), &tensor_recognize(alg))
}

/// Dimensions agree and the Nakayama permutations are mutually inverse.
pub fn opposite_agrees(verdict: &Verdict, opposite: &Verdict) -> bool {
    match (&verdict.nakayama, &opposite.nakayama) {
        (Some(a), Some(b)) if verdict.is_certified() && opposite.is_certified() => {
            verdict.dimension == opposite.dimension && a.inverse().permutation == b.permutation
        }
        _ => verdict.is_certified() == opposite.is_certified(),
    }
}

struct CheckTask<'a> {
    presentation: &'a Presentation,
    parameters: &'a Parameters,
}

impl FieldTask for CheckTask<'_> {
    type Output = Result<Report, AlgebraError>;

    fn run<F: Field>(self, field: &F) -> Self::Output {
        let (p, params) = (self.presentation, self.parameters);
        let mut clock = Clock::new();
        let alg = AlgebraSlices::expand(field, p, params.truncation)?;
        clock.lap("expand");
        let hilbert = alg.hilbert();
        let data = homological_data(&alg, params.maxstep);
        clock.lap("resolve");
        let tensor = tensor_recognize(&alg);
        let verdict = twisted_cy_from(&alg, &data, &tensor);
        clock.lap("classify");

        let soc = alg.socle();
        let dimensions = soc.dimensions();
        let positive = verdict.is_certified() && verdict.dimension.is_some_and(|d| d > 0);
        let socle = SocleCheck { window: soc.window, consistent: !positive || dimensions.iter().all(|&d| d == 0), dimensions };

        let duality = match (&verdict.nakayama, verdict.dimension) {
            (Some(nak), Some(d)) if verdict.is_certified() && params.duality_check => {
                DualityCheck { applicable: true, mismatch: betti_duality_check(&data.betti, nak, d).err() }
            }
            _ => DualityCheck { applicable: false, mismatch: None },
        };
        clock.lap("checks");

        let op = AlgebraSlices::expand(field, &p.opposite(), params.truncation)?;
        let op_verdict = classify(&op, params.maxstep);
        let opposite = OppositeCheck { agrees: opposite_agrees(&verdict, &op_verdict), verdict: op_verdict };
        clock.lap("opposite");

        let checks = Checks {
            socle,
            duality,
            opposite,
            growth: gk_estimate(&hilbert),
            tensor,
            associativity: associativity_spot_check(&alg, params.seed, 64),
        };
        Ok(Report {
            schema: SCHEMA_VERSION,
            presentation: p.to_text(),
            parameters: params.clone(),
            hilbert,
            betti: data.betti,
            ext: data.ext,
            global_dimension: data.global_dimension,
            verdict,
            checks,
            timings: clock.timings,
        })
    }
}

/// The full pipeline: expansion, resolutions, verdict and every cross-check.
pub fn run_check(presentation: &Presentation, parameters: &Parameters) -> Result<Report, AlgebraError> {
    with_field(parameters.field, CheckTask { presentation, parameters })
}

struct HilbertTask<'a>(&'a Presentation, usize);

impl FieldTask for HilbertTask<'_> {
    type Output = Result<HilbertMatrix, AlgebraError>;
    fn run<F: Field>(self, field: &F) -> Self::Output {
        Ok(AlgebraSlices::expand(field, self.0, self.1)?.hilbert())
    }
}

pub fn run_hilbert(presentation: &Presentation, field: FieldSpec, truncation: usize) -> Result<HilbertMatrix, AlgebraError> {
    with_field(field, HilbertTask(presentation, truncation))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub schema: u32,
    pub parameters: Parameters,
    pub betti: BettiTable,
    pub ext: ExtTable,
    pub global_dimension: GlobalDimension,
    pub exhausted_at: Option<usize>,
}

struct ResolveTask<'a>(&'a Presentation, &'a Parameters);

impl FieldTask for ResolveTask<'_> {
    type Output = Result<ResolveReport, AlgebraError>;
    fn run<F: Field>(self, field: &F) -> Self::Output {
        let alg = AlgebraSlices::expand(field, self.0, self.1.truncation)?;
        let data = homological_data(&alg, self.1.maxstep);
        Ok(ResolveReport {
            schema: SCHEMA_VERSION,
            parameters: self.1.clone(),
            betti: data.betti,
            ext: data.ext,
            global_dimension: data.global_dimension,
            exhausted_at: data.exhausted_at,
        })
    }
}

pub fn run_resolve(presentation: &Presentation, parameters: &Parameters) -> Result<ResolveReport, AlgebraError> {
    with_field(parameters.field, ResolveTask(presentation, parameters))
}

/// Nakayama data of a certified verdict, if any.
pub fn certified_nakayama(v: &Verdict) -> Option<&NakayamaData> {
    v.is_certified().then_some(v.nakayama.as_ref()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{mckay_z2, polynomial};

    #[test]
    fn report_round_trips_through_json() {
        let p = mckay_z2(FieldSpec::Rationals);
        let report = run_check(&p, &Parameters::new(FieldSpec::Rationals, 5)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(json.starts_with("{\"schema\":1,"));
    }

    #[test]
    fn check_pipeline_on_polynomial_ring() {
        let p = polynomial(2, FieldSpec::Rationals).unwrap();
        let r = run_check(&p, &Parameters::new(FieldSpec::Rationals, 6)).unwrap();
        assert_eq!(r.verdict.status.exit_code(), 0);
        assert_eq!(r.verdict.dimension, Some(2));
        assert!(r.checks.duality.passed());
        assert!(r.checks.socle.consistent);
        assert!(r.checks.opposite.agrees);
        assert_eq!(r.checks.associativity.failures, 0);
        assert!(r.checks.associativity.samples > 0);
    }

    #[test]
    fn prime_field_dispatch() {
        let p = polynomial(2, FieldSpec::PrimeField(3)).unwrap();
        let h = run_hilbert(&p, FieldSpec::PrimeField(3), 5).unwrap();
        assert_eq!(h.totals(), vec![1, 2, 3, 4, 5, 6]);
        let mut params = Parameters::new(FieldSpec::PrimeField(3), 6);
        params.maxstep = 4;
        let r = run_resolve(&p, &params).unwrap();
        assert_eq!(r.betti.rows[0].totals(), vec![1, 2, 1, 0, 0]);
        assert_eq!(r.global_dimension, GlobalDimension::ExactlyD(2));
    }
}
