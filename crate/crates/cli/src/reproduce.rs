//! Re-computation of the two worked examples against their exact values.

use std::time::Instant;

use livsic_core::extension::{clark_measure, ext_char, pochar_verify};
use livsic_core::golden::*;
use livsic_core::inner::{divides, livsic_char, CharacteristicFn};
use livsic_core::numeric::eigenvalues;
use livsic_core::{Error, Extension, Inner, C64};
use serde_json::{json, Value};

use crate::compare::{multiset_deviation, scalar_weight_deviation};
use crate::error::CliError;
use crate::report::{Item, Report};
use crate::schema::{
    complex_to_json, inner_to_json, measure_to_json, samples_to_json, to_value, JsonWitness,
};
use crate::Example;

/// Tolerance for eigenvalues and measure weights.
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Tolerance for zeros of characteristic functions (double roots clustered).
pub const ZERO_TOL: f64 = 1e-8;
/// Tolerance for the moment sums of the order witness.
pub const MOMENT_TOL: f64 = 1e-10;
/// Pseudo-hyperbolic matching radius for divisibility.
pub const DIVIDES_TOL: f64 = 1e-6;
/// Runtime budget per example, in seconds.
pub const RUNTIME_BUDGET: f64 = 1.0;
/// Structural tolerance used to build the examples.
const BUILD_TOL: f64 = 1e-9;

fn points(z: &[C64]) -> Value {
    Value::Array(z.iter().map(|&p| to_value(&complex_to_json(p))).collect())
}

fn weights(w: &[(C64, f64)]) -> Value {
    Value::Array(
        w.iter()
            .map(|(p, x)| json!({ "point": to_value(&complex_to_json(*p)), "weight": x }))
            .collect(),
    )
}

/// Builds a report; `tol` overrides every per-item tolerance when given.
struct Checker {
    report: Report,
    tol: Option<f64>,
}

impl Checker {
    fn new(name: &str, tol: Option<f64>) -> Self {
        Checker {
            report: Report::new(name, tol.unwrap_or(SPECTRAL_TOL)),
            tol,
        }
    }

    fn measured(
        &mut self,
        name: &str,
        deviation: f64,
        default_tol: f64,
        computed: Value,
        expected: Value,
    ) {
        let tol = self.tol.unwrap_or(default_tol);
        self.report.push(Item::measured(
            name,
            deviation,
            tol,
            computed,
            Some(expected),
        ));
    }

    fn boolean(&mut self, name: &str, computed: bool, expected: bool) {
        self.report.push(Item::boolean(name, computed, expected));
    }

    fn failed(&mut self, name: &str, err: &Error) {
        self.report
            .push(Item::boolean(name, false, true).with_note(err.to_string()));
    }

    fn zeros(
        &mut self,
        name: &str,
        f: Result<CharacteristicFn<f64>, Error>,
        want: &[C64],
    ) -> Option<Inner> {
        match f.map(|f| f.as_scalar().cloned()) {
            Ok(Some(s)) => {
                let dev = multiset_deviation(s.zeros(), want);
                self.measured(
                    name,
                    dev,
                    ZERO_TOL,
                    to_value(&inner_to_json(&s)),
                    points(want),
                );
                Some(s)
            }
            Ok(None) => {
                self.failed(
                    name,
                    &Error::InvalidInput("characteristic function is not scalar".into()),
                );
                None
            }
            Err(e) => {
                self.failed(name, &e);
                None
            }
        }
    }

    fn clark_weights(&mut self, name: &str, ext: &Extension, want: &[(C64, f64)]) {
        match clark_measure(ext) {
            Ok(s) => {
                let dev = scalar_weight_deviation(&s, want, 1e-8);
                self.measured(
                    name,
                    dev,
                    SPECTRAL_TOL,
                    to_value(&measure_to_json(&s)),
                    weights(want),
                );
            }
            Err(e) => self.failed(name, &e),
        }
    }

    fn eigenvalues(&mut self, name: &str, m: &livsic_core::Matrix, want: &[C64]) {
        match eigenvalues(m) {
            Ok(eig) => self.measured(
                name,
                multiset_deviation(&eig, want),
                SPECTRAL_TOL,
                points(&eig),
                points(want),
            ),
            Err(e) => self.failed(name, &e),
        }
    }

    fn finish(mut self, start: Instant) -> Report {
        let secs = start.elapsed().as_secs_f64();
        self.report.push(Item {
            name: format!("runtime below {RUNTIME_BUDGET} s"),
            pass: secs < RUNTIME_BUDGET,
            deviation: None,
            tol: None,
            computed: json!(secs),
            expected: Some(json!(RUNTIME_BUDGET)),
            note: None,
        });
        self.report
    }
}

/// Runs the named example. Failures of individual steps become failing items.
pub fn reproduce(example: Example, tol: Option<f64>) -> Report {
    let start = Instant::now();
    match example {
        Example::Fdeg => fdeg(tol, start),
        Example::Fdeg2 => fdeg2(tol, start),
    }
}

fn fdeg(tol: Option<f64>, start: Instant) -> Report {
    let mut c = Checker::new("reproduce fdeg", tol);
    let ext = match fdeg_extension::<f64>(BUILD_TOL) {
        Ok(e) => e,
        Err(e) => {
            c.failed("build the example", &e);
            return c.finish(start);
        }
    };
    c.eigenvalues("eigenvalues of U", ext.u(), &fdeg_eigenvalues());
    c.clark_weights("Clark measure weights of U", &ext, &fdeg_clark_weights());
    let theta = c.zeros(
        "zeros of theta_B",
        livsic_char(ext.base(), ext.frame(), None),
        &fdeg_theta_zeros(),
    );
    let phi = c.zeros("zeros of phi_A", ext_char(&ext), &fdeg_phi_zeros());
    if let (Some(t), Some(p)) = (theta, phi) {
        c.boolean("theta_B divides phi_A", divides(&t, &p, DIVIDES_TOL), true);
    }
    c.finish(start)
}

fn fdeg2(tol: Option<f64>, start: Instant) -> Report {
    let mut c = Checker::new("reproduce fdeg2", tol);
    let (small, big) = match (
        fdeg2_extension::<f64>(BUILD_TOL),
        fdeg2_t_extension::<f64>(BUILD_TOL),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            c.failed("build the example", &e);
            return c.finish(start);
        }
    };
    c.eigenvalues("roots of det(z - X)", &fdeg2_x(), &fdeg2_eigenvalues());
    c.report
        .set("lambda", to_value(&complex_to_json(fdeg2_lambda())));
    c.clark_weights("Clark measure weights of X", &big, &fdeg2_sigma_x());
    c.clark_weights("Clark measure weights of V", &small, &fdeg2_sigma_v());
    let theta_t = c.zeros(
        "zeros of theta_T",
        livsic_char(big.base(), big.frame(), None),
        &fdeg2_theta_t_zeros(),
    );
    c.zeros("zeros of phi[A;B]", ext_char(&small), &fdeg2_phi_zeros());
    match (livsic_char(small.base(), small.frame(), None), theta_t) {
        (Ok(CharacteristicFn::Scalar(tb)), Some(tt)) => {
            c.boolean(
                "theta_B divides theta_T",
                divides(&tb, &tt, DIVIDES_TOL),
                false,
            );
        }
        (Err(e), _) => c.failed("theta_B divides theta_T", &e),
        _ => {}
    }
    match fdeg2_witness::<f64>(BUILD_TOL)
        .and_then(|w| pochar_verify(&w, &[fdeg2_f()], c.tol.unwrap_or(MOMENT_TOL)))
    {
        Ok(rep) => {
            c.boolean("order condition 1 (divisibility)", rep.cond1, true);
            c.boolean("order condition 2 (weights and support)", rep.cond2, true);
            c.boolean("order condition 3 (moments)", rep.cond3, true);
            c.measured(
                "moment sum over sigma_small",
                rep.moment_small,
                MOMENT_TOL,
                json!(rep.moment_small),
                json!(0.0),
            );
            c.measured(
                "moment sum over sigma_big",
                rep.moment_big,
                MOMENT_TOL,
                json!(rep.moment_big),
                json!(0.0),
            );
            c.report.set("order_notes", json!(rep.notes));
        }
        Err(e) => c.failed("order conditions", &e),
    }
    c.finish(start)
}

/// The witness of the second example in the `order-check` input format,
/// tabulated at the atoms of its larger measure, with the domain image `f`.
pub fn fdeg2_witness_json() -> Result<JsonWitness, CliError> {
    let w = fdeg2_witness::<f64>(BUILD_TOL)?;
    let ts: Vec<f64> = w.sigma_big.atoms().iter().map(|a| a.point.re).collect();
    Ok(JsonWitness {
        theta_small: inner_to_json(&w.theta_small),
        phi: inner_to_json(&w.phi),
        sigma_small: measure_to_json(&w.sigma_small),
        sigma_big: measure_to_json(&w.sigma_big),
        d: samples_to_json(&ts, &w.d)?,
        images: vec![samples_to_json(&ts, &fdeg2_f())?],
    })
}
