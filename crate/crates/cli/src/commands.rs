//! One function per subcommand.

use std::path::Path;

use livsic_core::extension::{
    ac_check, big_kernel, big_kernel_from_measure, clark_measure, cyclic_expansion, ext_char,
    ext_char_matrix, lambda_identity, pochar_verify, small_kernel, small_kernel_from_livsic,
    synthesize_extension, tabulated, OrderWitness,
};
use livsic_core::herglotz::{
    inverse_measure_transform, measure_transform, Domain, HerglotzData, KernelGram,
};
use livsic_core::inner::{
    coincide, divides, divides_matrix, frostman_shift, is_inner, livsic_char, livsic_matrix,
    recover_scalar_inner, CharacteristicFn, MatrixContractive,
};
use livsic_core::numeric::{identity, op_norm, CLUSTER_TOL};
use livsic_core::operator::deficiency_data;
use livsic_core::scalar::cx;
use livsic_core::{Extension, Matrix, System, C64};
use serde_json::{json, Value};

use crate::compare::{measure_deviation, relative_deviation};
use crate::error::CliError;
use crate::report::{Item, Report};
use crate::schema::*;
use crate::{Command, JobConfig};

/// Accuracy floor for located zeros of computed inner functions: multiple
/// zeros are only resolved to about the square root of machine precision.
pub const ZERO_TOL: f64 = 1e-7;
/// Accuracy floor for identities that hold to rounding.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Runs the command of `cfg`.
pub fn dispatch(cfg: &JobConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Livsic { v } => livsic(cfg, v),
        Command::Clark { v, u } => clark(cfg, v, u),
        Command::TransformMeasure { measure } => transform_measure(cfg, measure),
        Command::ExtChar { v, u } => ext_char_cmd(cfg, v, u),
        Command::Divides { theta, phi } => divides_cmd(cfg, theta, phi),
        Command::Frostman { theta } => frostman(cfg, theta),
        Command::AcCheck { v, uparam } => ac_check_cmd(cfg, v, uparam),
        Command::Kernels { v, u } => kernels(cfg, v, u),
        Command::Cyclic { v, u, h, w, k } => cyclic(cfg, v, u, h, w, *k),
        Command::Synthesize { theta, phi } => synthesize(cfg, theta, phi),
        Command::OrderCheck { witness } => order_check(cfg, witness),
        Command::Reproduce { example } => Ok(crate::reproduce::reproduce(
            *example,
            cfg.tol_explicit.then_some(cfg.tol),
        )),
    }
}

fn read_square(path: &Path, what: &str) -> Result<Matrix, CliError> {
    let m: JsonMatrix = read_json(path)?;
    square_from_json(&m, what)
}

fn read_inner(path: &Path, what: &str) -> Result<livsic_core::Inner, CliError> {
    let f: JsonInner = read_json(path)?;
    inner_from_json(&f, what)
}

fn read_system(cfg: &JobConfig, v: &Path) -> Result<System, CliError> {
    Ok(deficiency_data(
        &read_square(v, "V")?,
        cfg.structural_tol(),
    )?)
}

fn read_extension(cfg: &JobConfig, v: &Path, u: &Path) -> Result<Extension, CliError> {
    let sys = read_system(cfg, v)?;
    let u = read_square(u, "U")?;
    if u.nrows() < sys.dim() {
        return Err(CliError::Field {
            field: "U".into(),
            message: format!("U is {0}×{0} but V acts on C^{1}", u.nrows(), sys.dim()),
        });
    }
    Ok(Extension::new(u, sys, cfg.structural_tol())?)
}

fn i() -> C64 {
    cx(0.0, 1.0)
}

fn upper(grid: &[C64]) -> Vec<C64> {
    grid.iter().copied().filter(|z| z.im > 0.0).collect()
}

/// Values of a matrix function at the grid points where it is defined.
fn grid_values(f: &MatrixContractive<f64>, grid: &[C64]) -> Value {
    let rows: Vec<Value> = grid
        .iter()
        .filter_map(|&z| {
            f.eval(z)
                .ok()
                .map(|v| json!({ "point": complex_to_json(z), "value": matrix_to_json(&v) }))
        })
        .collect();
    Value::Array(rows)
}

fn char_fn_value(f: &CharacteristicFn<f64>, grid: &[C64]) -> Value {
    match f {
        CharacteristicFn::Scalar(s) => to_value(&inner_to_json(s)),
        CharacteristicFn::Matrix(m) => json!({ "on_grid": grid_values(m, grid) }),
    }
}

fn livsic(cfg: &JobConfig, v: &Path) -> Result<Report, CliError> {
    let sys = read_system(cfg, v)?;
    let theta = livsic_char(&sys, &sys.frame(), Some(&cfg.grid))?;
    let mut r = Report::new("livsic", cfg.tol);
    r.set("index", json!(sys.index()));
    r.set("theta", char_fn_value(&theta, &cfg.grid));
    let at_i = theta.eval(i())?.norm();
    r.push(Item::measured(
        "theta(i) = 0",
        at_i,
        cfg.tol_for(IDENTITY_TOL),
        json!(at_i),
        Some(json!(0.0)),
    ));
    r.push(Item::boolean(
        "theta is inner",
        is_inner(&theta, cfg.tol_for(IDENTITY_TOL)),
        true,
    ));
    Ok(r)
}

fn clark(cfg: &JobConfig, v: &Path, u: &Path) -> Result<Report, CliError> {
    let ext = read_extension(cfg, v, u)?;
    let sigma = clark_measure(&ext)?;
    let mut r = Report::new("clark", cfg.tol);
    r.set("measure", to_value(&measure_to_json(&sigma)));
    let eig: Vec<JsonComplex> = ext
        .spectrum()
        .eigenvalues
        .iter()
        .map(|&z| z.into())
        .collect();
    r.set("eigenvalues", to_value(&eig));
    r.set("one_is_eigenvalue", json!(ext.one_is_eigenvalue()));
    let dev = (sigma.total_mass() - identity::<f64>(ext.index())).norm();
    r.push(Item::measured(
        "total mass = I",
        dev,
        cfg.tol_for(IDENTITY_TOL),
        json!(dev),
        Some(json!(0.0)),
    ));
    Ok(r)
}

fn transform_measure(cfg: &JobConfig, path: &Path) -> Result<Report, CliError> {
    let input: JsonMeasureInput = read_json(path)?;
    let mut r = Report::new("transform-measure", cfg.tol);
    let tol = cfg.tol_for(IDENTITY_TOL);
    let herglotz = match input {
        JsonMeasureInput::Measure(m) => {
            let m = measure_from_json(&m, "measure")?;
            if m.domain() == Domain::Circle {
                let h = measure_transform(&m)?;
                r.set("herglotz", to_value(&herglotz_to_json(&h)));
                let back = inverse_measure_transform(&h)?;
                let dev = measure_deviation(&back, &m);
                r.push(Item::measured(
                    "round trip",
                    dev,
                    tol,
                    json!(dev),
                    Some(json!(0.0)),
                ));
                return Ok(r);
            }
            let n = m.dim();
            HerglotzData::new(Matrix::zeros(n, n), m, cfg.structural_tol())?
        }
        JsonMeasureInput::Herglotz(h) => herglotz_from_json(&h, "herglotz")?,
    };
    let circle = inverse_measure_transform(&herglotz)?;
    r.set("measure", to_value(&measure_to_json(&circle)));
    let back = measure_transform(&circle)?;
    let dev = measure_deviation(back.measure(), herglotz.measure())
        .max(relative_deviation(back.p(), herglotz.p()));
    r.push(Item::measured(
        "round trip",
        dev,
        tol,
        json!(dev),
        Some(json!(0.0)),
    ));
    Ok(r)
}

fn ext_char_cmd(cfg: &JobConfig, v: &Path, u: &Path) -> Result<Report, CliError> {
    let ext = read_extension(cfg, v, u)?;
    let phi = ext_char(&ext)?;
    let theta = livsic_char(ext.base(), ext.frame(), Some(&cfg.grid))?;
    let mut r = Report::new("ext-char", cfg.tol);
    r.set("phi", char_fn_value(&phi, &cfg.grid));
    r.set("theta", char_fn_value(&theta, &cfg.grid));
    let phi_m = ext_char_matrix(&ext)?;
    let at_i = phi_m.eval(i())?.norm();
    r.push(Item::measured(
        "phi(i) = 0",
        at_i,
        cfg.tol_for(IDENTITY_TOL),
        json!(at_i),
        Some(json!(0.0)),
    ));
    let contr = upper(&cfg.grid)
        .into_iter()
        .filter_map(|z| phi_m.eval(z).ok())
        .map(|v| (op_norm(&v) - 1.0).max(0.0))
        .fold(0.0, f64::max);
    r.push(Item::measured(
        "phi contractive on grid",
        contr,
        cfg.tol_for(IDENTITY_TOL),
        json!(contr),
        Some(json!(0.0)),
    ));
    match (&theta, &phi) {
        (CharacteristicFn::Scalar(t), CharacteristicFn::Scalar(p)) => {
            r.push(Item::boolean(
                "theta divides phi",
                divides(t, p, cfg.tol_for(ZERO_TOL)),
                true,
            ));
        }
        _ => {
            let verdict = divides_matrix(
                &livsic_matrix(ext.base(), ext.frame()),
                &phi_m,
                &cfg.grid,
                &[],
                cfg.tol_for(ZERO_TOL),
            )?;
            let excess = (verdict.max_norm - 1.0).max(0.0);
            r.push(
                Item::measured(
                    "theta^-1 phi contractive on grid (sampled)",
                    excess,
                    cfg.tol_for(ZERO_TOL),
                    json!(verdict.max_norm),
                    Some(json!(1.0)),
                )
                .with_note(format!("{} points used", verdict.points_used)),
            );
        }
    }
    Ok(r)
}

fn divides_cmd(cfg: &JobConfig, theta: &Path, phi: &Path) -> Result<Report, CliError> {
    let t = read_inner(theta, "theta")?;
    let p = read_inner(phi, "phi")?;
    let mut r = Report::new("divides", cfg.tol);
    r.set("theta_degree", json!(t.degree()));
    r.set("phi_degree", json!(p.degree()));
    let holds = divides(&t, &p, cfg.tol);
    r.set("divides", json!(holds));
    r.push(Item::boolean("theta divides phi", holds, true));
    Ok(r)
}

fn frostman(cfg: &JobConfig, theta: &Path) -> Result<Report, CliError> {
    let t = read_inner(theta, "theta")?;
    let shifted = frostman_shift(&MatrixContractive::from_scalar(&t))?;
    let rec = recover_scalar_inner(
        |z| Ok(shifted.eval(z)?[(0, 0)]),
        t.degree().max(1),
        CLUSTER_TOL,
    )?;
    let mut r = Report::new("frostman", cfg.tol);
    r.set("theta_at_i", to_value(&complex_to_json(t.eval(i())?)));
    r.set("shifted", to_value(&inner_to_json(&rec)));
    let at_i = rec.eval(i())?.norm();
    r.push(Item::measured(
        "shifted(i) = 0",
        at_i,
        cfg.tol_for(ZERO_TOL),
        json!(at_i),
        Some(json!(0.0)),
    ));
    let fit = upper(&cfg.grid)
        .into_iter()
        .filter_map(|z| Some((shifted.eval(z).ok()?[(0, 0)] - rec.eval(z).ok()?).norm()))
        .fold(0.0, f64::max);
    r.push(Item::measured(
        "recovered function matches the shift",
        fit,
        cfg.tol_for(ZERO_TOL),
        json!(fit),
        Some(json!(0.0)),
    ));
    Ok(r)
}

fn ac_check_cmd(cfg: &JobConfig, v: &Path, uparam: &Path) -> Result<Report, CliError> {
    let sys = read_system(cfg, v)?;
    let up = read_square(uparam, "uparam")?;
    if up.nrows() != sys.index() {
        return Err(CliError::Field {
            field: "uparam".into(),
            message: format!(
                "parameter is {0}×{0}, deficiency index is {1}",
                up.nrows(),
                sys.index()
            ),
        });
    }
    let tol = cfg.tol_for(IDENTITY_TOL);
    let rep = ac_check(&sys, &up, &cfg.grid, tol)?;
    let mut r = Report::new("ac-check", cfg.tol);
    r.set("usable_points", json!(rep.usable));
    r.set("total_points", json!(rep.total));
    let mut item = Item::measured(
        "phi = theta * conj(uparam) on grid",
        rep.deviation,
        tol,
        json!(rep.deviation),
        Some(json!(0.0)),
    );
    item.pass &= rep.holds;
    r.push(item);
    Ok(r)
}

fn kernels(cfg: &JobConfig, v: &Path, u: &Path) -> Result<Report, CliError> {
    let ext = read_extension(cfg, v, u)?;
    let n = ext.index();
    let tol = cfg.tol_for(IDENTITY_TOL);
    let pts: Vec<C64> = cfg
        .grid
        .iter()
        .copied()
        .filter(|&z| big_kernel(&ext, z, z).is_ok() && small_kernel(&ext, z, z).is_ok())
        .collect();
    let mut r = Report::new("kernels", cfg.tol);
    r.set("points_used", json!(pts.len()));
    let grams = [
        (
            "Gram of K_w is PSD",
            KernelGram::block(&pts, n, |w, z| big_kernel(&ext, w, z))?,
        ),
        (
            "Gram of k_w is PSD",
            KernelGram::block(&pts, n, |w, z| small_kernel(&ext, w, z))?,
        ),
        (
            "Gram of K_w - k_w is PSD",
            KernelGram::block(&pts, n, |w, z| {
                Ok(big_kernel(&ext, w, z)? - small_kernel(&ext, w, z)?)
            })?,
        ),
    ];
    for (name, g) in grams {
        let rep = g.certify(tol)?;
        let neg = (-rep.min_eigenvalue).max(0.0);
        r.push(Item::measured(
            name,
            neg,
            tol,
            json!(rep.min_eigenvalue),
            None,
        ));
    }
    let (mut small_dev, mut big_dev): (f64, f64) = (0.0, 0.0);
    for &z in &pts {
        for &w in &pts {
            if let (Ok(a), Ok(b)) = (
                small_kernel(&ext, w, z),
                small_kernel_from_livsic(&ext, w, z),
            ) {
                small_dev = small_dev.max(relative_deviation(&a, &b));
            }
            if let (Ok(a), Ok(b)) = (big_kernel(&ext, w, z), big_kernel_from_measure(&ext, w, z)) {
                big_dev = big_dev.max(relative_deviation(&a, &b));
            }
        }
    }
    r.push(Item::measured(
        "k_w agrees with the Livsic closed form",
        small_dev,
        tol,
        json!(small_dev),
        Some(json!(0.0)),
    ));
    r.push(Item::measured(
        "K_w agrees with the measure formula",
        big_dev,
        tol,
        json!(big_dev),
        Some(json!(0.0)),
    ));
    let lam = lambda_identity(&ext, &cfg.grid, tol)?;
    let dev = lam
        .lambda_deviation
        .max(lam.lambda_tilde_deviation)
        .max(lam.mutual_deviation);
    let mut item = Item::measured(
        "Lambda identities reproduce phi",
        dev,
        tol,
        json!(dev),
        Some(json!(0.0)),
    );
    item.pass &= lam.holds;
    r.push(item.with_note(format!(
        "{} of {} upper grid points usable",
        lam.usable, lam.total
    )));
    Ok(r)
}

fn cyclic(
    cfg: &JobConfig,
    v: &Path,
    u: &Path,
    h: &Path,
    w: &str,
    k: usize,
) -> Result<Report, CliError> {
    let ext = read_extension(cfg, v, u)?;
    let hv: Vec<JsonComplex> = read_json(h)?;
    let hv = vector_from_json(&hv);
    let w: C64 = parse_json::<JsonComplex>(w, "--w")?.into();
    let e = cyclic_expansion(&ext, &hv, w, k)?;
    let mut r = Report::new("cyclic", cfg.tol);
    r.set("spectral_radius", json!(e.spectral_radius));
    r.set("tails", json!(e.tails));
    r.set("identity_residuals", json!(e.identity_residuals));
    if let Some(last) = e.partial_sums.last() {
        r.set("partial_sum", to_value(&vector_to_json(last)));
    }
    let scale = hv.norm().max(1.0);
    let worst = e.identity_residuals.iter().copied().fold(0.0, f64::max) / scale;
    let tol = cfg.tol_for(IDENTITY_TOL);
    r.push(Item::measured(
        "expansion identity residual (relative)",
        worst,
        tol,
        json!(worst),
        Some(json!(0.0)),
    ));
    r.push(Item::boolean(
        "spectral radius of V_w < 1",
        e.spectral_radius < 1.0,
        true,
    ));
    Ok(r)
}

fn synthesize(cfg: &JobConfig, theta: &Path, phi: &Path) -> Result<Report, CliError> {
    let t = read_inner(theta, "theta")?;
    let p = read_inner(phi, "phi")?;
    let out = synthesize_extension(&t, &p, cfg.structural_tol())?;
    let tol = cfg.tol_for(ZERO_TOL);
    let mut r = Report::new("synthesize", cfg.tol);
    r.set("U", to_value(&matrix_to_json(out.extension.u())));
    r.set("V", to_value(&matrix_to_json(out.extension.base().v())));
    r.set("model_V", to_value(&matrix_to_json(out.model.v())));
    r.set("embedding", to_value(&matrix_to_json(&out.embedding)));
    let got = ext_char(&out.extension)?;
    r.set("phi", char_fn_value(&got, &cfg.grid));
    let want = CharacteristicFn::Scalar(p.clone());
    let c = coincide(&got, &want, &cfg.grid, tol)?;
    let mut item = Item::measured(
        "ext_char coincides with phi",
        c.deviation,
        tol,
        json!(c.deviation),
        Some(json!(0.0)),
    );
    item.pass &= c.holds;
    r.push(item);
    if let Some(s) = got.as_scalar() {
        let dc = (s.constant() - p.constant()).norm();
        r.push(Item::measured(
            "constant of phi",
            dc,
            tol,
            to_value(&complex_to_json(s.constant())),
            Some(to_value(&complex_to_json(p.constant()))),
        ));
    }
    let base = out.extension.base();
    let th = livsic_char(base, &base.frame(), Some(&cfg.grid))?;
    let c = coincide(&th, &CharacteristicFn::Scalar(t), &cfg.grid, tol)?;
    let mut item = Item::measured(
        "Livsic function of the base coincides with theta",
        c.deviation,
        tol,
        json!(c.deviation),
        Some(json!(0.0)),
    );
    item.pass &= c.holds;
    r.push(item);
    Ok(r)
}

fn order_check(cfg: &JobConfig, path: &Path) -> Result<Report, CliError> {
    let w: JsonWitness = read_json(path)?;
    let witness = OrderWitness {
        theta_small: inner_from_json(&w.theta_small, "theta_small")?,
        phi: inner_from_json(&w.phi, "phi")?,
        d: tabulated(samples_from_json(&w.d, "d")?),
        sigma_small: measure_from_json(&w.sigma_small, "sigma_small")?,
        sigma_big: measure_from_json(&w.sigma_big, "sigma_big")?,
    };
    let mut images = Vec::with_capacity(w.images.len());
    for (k, img) in w.images.iter().enumerate() {
        images.push(tabulated(samples_from_json(img, &format!("images[{k}]"))?));
    }
    let tol = cfg.tol_for(IDENTITY_TOL);
    let rep = pochar_verify(&witness, &images, tol)?;
    let mut r = Report::new("order-check", cfg.tol);
    r.set("notes", json!(rep.notes));
    r.push(Item::boolean(
        "condition 1: theta_small divides phi",
        rep.cond1,
        true,
    ));
    let mut c2 = Item::measured(
        "condition 2: sigma_small = D* sigma_big D",
        rep.weight_deviation,
        tol,
        json!(rep.weight_deviation),
        Some(json!(0.0)),
    );
    c2.pass &= rep.cond2;
    r.push(c2);
    let moment = rep.moment_small.max(rep.moment_big);
    let mut c3 = Item::measured(
        "condition 3: moment sums vanish",
        moment,
        tol,
        json!([rep.moment_small, rep.moment_big]),
        Some(json!([0.0, 0.0])),
    );
    c3.pass &= rep.cond3;
    r.push(c3);
    Ok(r)
}
