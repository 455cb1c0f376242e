use std::f64::consts::PI;
use std::fs;

use procore::analysis::{
    concat_cost, cost_of_program, quadratic_fit, robustness_fit, switched_qft_cost, switched_transfer_time,
    ConcatCost, CostReport, RobustnessReport,
};
use procore::applications::{
    bit_reversal, data_positions, dft_matrix, hamsim_program, qft_program, trotter_error_sweep, HamSimVariant,
    PauliString, TrotterPlan,
};
use procore::chain::{mirror_certificate, reconstruct_profile, reconstruction_residual, validate_profile};
use procore::dynamics::{evolve as evolve_state, full_propagator, mirror_map, BasisState};
use procore::gates::{
    cat_fidelity, make_cat, program_v, reflection, program_w, program_z, program_z_uncorrected, Census, TargetSpec,
};
use procore::io::{self, CostRow};
use procore::linalg::{hermitian_expm, loglog_slope, pauli_z, phase_aligned_distance};
use procore::{CouplingProfile, GateProgram, Layout, MirrorCertificate, ProcessorCore, StateVector};
use serde::Serialize;

use crate::output::{prepare, sci, short, usage, CliError, OutputFile};
use crate::{
    parse, ChainSource, CostArgs, DesignArgs, EvolveArgs, GateArgs, GateKind, HamsimArgs, QftArgs, RobustnessArgs,
    Variant, VerifyArgs,
};

fn load_profile(src: &ChainSource) -> Result<CouplingProfile, CliError> {
    let profile: CouplingProfile = match (src.christandl, &src.profile) {
        (Some(n), _) => CouplingProfile::christandl(n)?,
        (None, Some(path)) => io::read_document(path, "profile")?,
        (None, None) => return usage("one of --christandl or --profile is required"),
    };
    profile.ensure_shape()?;
    Ok(profile)
}

fn write_json<T: Serialize>(out: Option<OutputFile>, kind: &str, data: &T) -> Result<(), CliError> {
    if let Some(out) = out {
        let text = io::document_string(kind, data)?;
        let path = out.path().display().to_string();
        out.write(text.as_bytes())?;
        println!("wrote {path}");
    }
    Ok(())
}

fn census_line(c: &Census) -> String {
    format!(
        "census: {} free evolutions, {} swaps, {} local gates",
        c.free_evolutions, c.swaps, c.locals
    )
}

fn check_deviation(what: &str, deviation: f64, tol: f64) -> Result<(), CliError> {
    println!("max |Δ| vs {what}: {}", short(deviation));
    if deviation <= tol {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "deviation {} from {what} exceeds tolerance {}",
            sci(deviation),
            sci(tol)
        )))
    }
}

fn certificate_line(cert: &MirrorCertificate) -> String {
    format!(
        "certificate: {}, phi_N={}, max_deviation={}",
        if cert.is_valid() { "valid" } else { "invalid" },
        cert.phi_n,
        short(cert.max_deviation)
    )
}

pub fn design(a: DesignArgs) -> Result<(), CliError> {
    parse::positive("tau", a.tau)?;
    let out = OutputFile::prepare(&a.out)?;
    let profile = match (a.source.christandl, &a.source.spectrum) {
        (Some(n), _) => CouplingProfile::christandl(n)?,
        (None, Some(path)) => {
            let spectrum = io::parse_spectrum(&fs::read_to_string(path)?)?;
            let profile = reconstruct_profile(&spectrum)?;
            let (_, residual) = reconstruction_residual(&spectrum, &profile);
            println!("reconstruction residual: {}", short(residual));
            profile
        }
        (None, None) => return usage("one of --christandl or --spectrum is required"),
    };
    let cert = mirror_certificate(&profile, a.tau)?;
    let path = out.path().display().to_string();
    out.write(io::document_string("profile", &profile)?.as_bytes())?;
    println!("profile: {} sites -> {path}", profile.n_sites);
    println!("{}", certificate_line(&cert));
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    n_sites: usize,
    tau: f64,
    profile_valid: bool,
    mirror_symmetric: bool,
    certificate: MirrorCertificate,
    certificate_valid: bool,
    dense_deviation: Option<f64>,
    tolerance: f64,
    passed: bool,
}

pub fn verify(a: VerifyArgs) -> Result<(), CliError> {
    parse::positive("tau", a.tau)?;
    parse::positive("tol", a.tol)?;
    let out = prepare(a.out.as_ref())?;
    let profile = load_profile(&a.chain)?;
    let diagnostics = validate_profile(&profile);
    let cert = mirror_certificate(&profile, a.tau)?;
    println!(
        "profile: {} sites, {}",
        profile.n_sites,
        if diagnostics.is_valid() { "valid" } else { "invalid" }
    );
    println!("{}", certificate_line(&cert));

    let dense_deviation = if a.no_dense {
        None
    } else {
        let dense = full_propagator(&profile, a.tau)?.matrix;
        let layout = Layout::core_only(profile.n_sites)?;
        let mut mirror = dense.clone();
        for j in 0..layout.dim() {
            let image = mirror_map(&StateVector::basis(layout, j)?, cert.phi_n);
            for (i, amp) in image.amplitudes.iter().enumerate() {
                mirror[(i, j)] = *amp;
            }
        }
        let d = phase_aligned_distance(&mirror, &dense);
        println!("max |Δ| dense vs mirror map: {}", short(d));
        Some(d)
    };
    let passed = diagnostics.is_valid() && cert.is_valid() && dense_deviation.is_none_or(|d| d <= a.tol);
    let report = VerifyReport {
        n_sites: profile.n_sites,
        tau: a.tau,
        profile_valid: diagnostics.is_valid(),
        mirror_symmetric: diagnostics.mirror_symmetric(),
        certificate: cert,
        certificate_valid: cert.is_valid(),
        dense_deviation,
        tolerance: a.tol,
        passed,
    };
    write_json(out, "verify", &report)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Check("mirror inversion not verified".into()))
    }
}

pub fn evolve(a: EvolveArgs) -> Result<(), CliError> {
    if !a.time.is_finite() {
        return usage("--time must be finite");
    }
    let out = prepare(a.out.as_ref())?;
    let profile = load_profile(&a.chain)?;
    let n = profile.n_sites;
    let state = match (&a.initial.state, &a.initial.state_file, a.initial.random) {
        (Some(bits), _, _) => {
            let b = BasisState::parse(bits)?;
            if b.bits.len() != n {
                return usage(format!("--state needs {n} bits, got {}", b.bits.len()));
            }
            StateVector::from_basis(Layout::core_only(n)?, &b)?
        }
        (None, Some(path), _) => {
            let s: StateVector = io::read_document(path, "state")?;
            StateVector::from_amplitudes(s.layout, s.amplitudes)?
        }
        (None, None, Some(seed)) => StateVector::random_seeded(Layout::core_only(n)?, seed)?,
        _ => return usage("one of --state, --state-file or --random is required"),
    };
    let evolved = evolve_state(&profile, &state, a.time)?;
    println!("evolved {n}-site chain to t={}: norm {}", a.time, sci(evolved.norm()));
    let weights: Vec<String> = evolved.weight_distribution().iter().map(|w| short(*w)).collect();
    println!("excitation-number distribution: [{}]", weights.join(", "));
    write_json(out, "state", &evolved)
}

fn processor(chain: &ChainSource, tau: f64) -> Result<ProcessorCore, CliError> {
    parse::positive("tau", tau)?;
    Ok(ProcessorCore::new(load_profile(chain)?, tau)?)
}

pub fn gate(a: GateArgs) -> Result<(), CliError> {
    parse::positive("tol", a.tol)?;
    let out = prepare(a.out.as_ref())?;
    let core = processor(&a.chain, a.tau)?;
    let n = core.n_sites();
    let layout = Layout::new(n, 1, 0)?;
    let x = a.control;
    if x == 0 || x > n {
        return usage(format!("--control {x} outside 1..={n}"));
    }

    let (program, reference) = match a.kind {
        GateKind::Z => {
            let p = if a.uncorrected {
                program_z_uncorrected(&core, x, layout)?
            } else {
                program_z(&core, x, layout)?
            };
            (p, Some(TargetSpec::uniform(n, x, pauli_z())))
        }
        GateKind::W => {
            let spec = match (&a.target, &a.targets) {
                (Some(t), _) => TargetSpec::uniform(n, x, parse::gate(t)?),
                (None, Some(list)) => {
                    let targets = parse::gate_list(list)?;
                    if targets.len() != n {
                        return usage(format!("--targets needs {n} entries, got {}", targets.len()));
                    }
                    TargetSpec::new(x, targets)
                }
                (None, None) => return usage("--kind w needs --target or --targets"),
            };
            (program_w(&core, &spec, layout)?, Some(spec))
        }
        GateKind::V => {
            let Some(text) = &a.angles else {
                return usage("--kind v needs --angles");
            };
            let angles = parse::angle_pairs(text)?;
            if angles.len() != n {
                return usage(format!("--angles needs {n} pairs, got {}", angles.len()));
            }
            let targets = angles.iter().map(|&(t, p)| Some(reflection(t, p))).collect();
            (program_v(&core, x, &angles, layout)?, Some(TargetSpec::new(x, targets)))
        }
        GateKind::Cat => (make_cat(&core)?.0, None),
    };
    println!("{}", census_line(&program.census()));

    if a.check {
        match reference {
            Some(spec) => {
                let logical: Vec<usize> = (0..n).collect();
                let u = core.logical_unitary(&program, &logical)?;
                check_deviation("directly assembled gate", phase_aligned_distance(&spec.controlled_unitary(), &u), a.tol)?;
            }
            None => {
                let (program, state) = make_cat(&core)?;
                let fidelity = cat_fidelity(&program, &state)?;
                println!("cat-state fidelity: {}", sci(fidelity));
                if 1.0 - fidelity > a.tol {
                    return Err(CliError::Check(format!("cat-state infidelity {} exceeds {}", sci(1.0 - fidelity), sci(a.tol))));
                }
            }
        }
    }
    write_json(out, "program", &program)
}

pub fn qft(a: QftArgs) -> Result<(), CliError> {
    parse::positive("tol", a.tol)?;
    let out = prepare(a.out.as_ref())?;
    let core = match a.n {
        0 => return usage("--n must be at least 1"),
        1 => ProcessorCore::trivial(),
        n => ProcessorCore::christandl(n)?,
    };
    let program = qft_program(&core, a.n, a.finish)?;
    println!("{}", census_line(&program.census()));
    if a.check {
        let register: Vec<usize> = (0..a.n).collect();
        let u = if a.finish {
            core.register_unitary(&program, &register)?
        } else {
            bit_reversal(a.n) * core.logical_unitary(&program, &register)?
        };
        check_deviation("DFT", phase_aligned_distance(&dft_matrix(a.n), &u), a.tol)?;
    }
    write_json(out, "program", &program)
}

#[derive(Serialize)]
struct TrotterReport {
    terms: Vec<(PauliString, f64)>,
    total_time: f64,
    dts: Vec<f64>,
    steps: Vec<usize>,
    errors: Vec<f64>,
    fitted_order: f64,
}

pub fn hamsim(a: HamsimArgs) -> Result<(), CliError> {
    parse::positive("tol", a.tol)?;
    let out = prepare(a.out.as_ref())?;
    let variant = match a.variant {
        Variant::Ancilla => HamSimVariant::Ancilla,
        Variant::Direct => HamSimVariant::Direct,
    };
    if let Some(text) = &a.mode.mask {
        let mask = parse::mask(text)?;
        let Some(dt) = a.dt else {
            return usage("--mask needs --dt");
        };
        let core = ProcessorCore::christandl(mask.len() + 1)?;
        let program = hamsim_program(&core, &mask, a.coefficient, dt, variant)?;
        println!("{}", census_line(&program.census()));
        if a.check {
            let u = core.logical_unitary(&program, &data_positions(mask.len()))?;
            let exact = hermitian_expm(&mask.matrix().map(|z| z * a.coefficient), dt);
            check_deviation("exact exponential", phase_aligned_distance(&exact, &u), a.tol)?;
        }
        return write_json(out, "program", &program);
    }

    let terms = parse::terms(a.mode.terms.as_deref().unwrap_or_default())?;
    parse::positive("time", a.time)?;
    let dts = parse::floats(&a.dts)?;
    if dts.len() < 2 {
        return usage("--dts needs at least two step sizes");
    }
    for dt in &dts {
        parse::positive("dts", *dt)?;
    }
    let n_data = terms[0].0.len();
    let core = ProcessorCore::christandl(n_data + 1)?;
    let errors = trotter_error_sweep(&core, &terms, a.time, &dts, procore::Parallelism::default())?;
    let steps: Vec<usize> = dts
        .iter()
        .map(|dt| TrotterPlan::for_total_time(terms.clone(), a.time, *dt).map(|p| p.steps))
        .collect::<Result<_, _>>()?;
    let fitted_order = loglog_slope(&dts, &errors);
    for ((dt, s), e) in dts.iter().zip(&steps).zip(&errors) {
        println!("dt={dt} steps={s} error={}", short(*e));
    }
    println!("fitted order: {fitted_order:.4}");
    let report = TrotterReport {
        terms,
        total_time: a.time,
        dts,
        steps,
        errors,
        fitted_order,
    };
    if let Some(out) = out {
        if out.is_csv() {
            let mut buf = Vec::new();
            let rows: Vec<(f64, usize, f64)> = (0..report.dts.len())
                .map(|i| (report.dts[i], report.steps[i], report.errors[i]))
                .collect();
            io::write_trotter_csv(&mut buf, &rows)?;
            out.write(&buf)?;
        } else {
            write_json(Some(out), "trotter", &report)?;
        }
    }
    let order_tol = 0.1;
    if a.check && (fitted_order - 1.0).abs() > order_tol {
        return Err(CliError::Check(format!("Trotter order {fitted_order:.4} not within {order_tol} of 1")));
    }
    Ok(())
}

#[derive(Serialize)]
struct QftCostTable {
    rows: Vec<CostRow>,
    quadratic_coefficient: f64,
    quadratic_residual: f64,
}

pub fn cost(a: CostArgs) -> Result<(), CliError> {
    let out = prepare(a.out.as_ref())?;
    if let Some(path) = &a.mode.program {
        parse::positive("tau", a.tau)?;
        let program: GateProgram = io::read_document(path, "program")?;
        program.check()?;
        let report: CostReport = cost_of_program(&program, a.tau);
        println!("{}", census_line(&program.census()));
        println!("core time: {}", sci(report.core_time));
        return write_json(out, "cost", &report);
    }
    if let Some(levels) = &a.mode.concat {
        let range = parse::range(levels)?;
        let rows = range
            .map(|l| concat_cost(l as u32))
            .collect::<Result<Vec<ConcatCost>, _>>()?;
        println!("levels,targets_per_gate,w_gate_count,switched_ops");
        for r in &rows {
            println!("{},{},{},{}", r.levels, r.targets_per_gate, r.w_gate_count, r.switched_ops);
        }
        if let Some(out) = out {
            if out.is_csv() {
                let mut buf = Vec::new();
                io::write_concat_csv(&mut buf, &rows)?;
                out.write(&buf)?;
            } else {
                write_json(Some(out), "concat_cost", &rows)?;
            }
        }
        return Ok(());
    }

    parse::positive("tol", a.tol)?;
    let range = parse::range(&a.n_range)?;
    if *range.start() == 0 {
        return usage("--n-range must start at 1 or above");
    }
    let mut rows = Vec::new();
    for n in range {
        let report = switched_qft_cost(n)?;
        let transfer = if n >= 2 {
            switched_transfer_time(&CouplingProfile::christandl(n)?)?.time
        } else {
            0.0
        };
        rows.push(CostRow::new(n, &report, transfer));
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let events: Vec<f64> = rows.iter().map(|r| r.switch_events as f64).collect();
    let (c, residual) = if events.iter().any(|e| *e > 0.0) {
        quadratic_fit(&ns, &events)?
    } else {
        (0.0, 0.0)
    };
    let mut buf = Vec::new();
    io::write_cost_csv(&mut buf, &rows)?;
    print!("{}", String::from_utf8_lossy(&buf));
    println!("switched events ~ {c:.4} N^2, relative residual {residual:.4}");
    let linear = rows.iter().all(|r| r.core_events == 6 * (r.n - 1));
    println!("core events = 6(N-1): {}", if linear { "yes" } else { "no" });
    if let Some(out) = out {
        if out.is_csv() {
            out.write(&buf)?;
        } else {
            let table = QftCostTable {
                rows,
                quadratic_coefficient: c,
                quadratic_residual: residual,
            };
            write_json(Some(out), "qft_cost", &table)?;
        }
    }
    if a.check {
        if ns.len() < 3 {
            return usage("--check needs at least three sizes in --n-range");
        }
        if !linear || residual > a.tol {
            return Err(CliError::Check(format!(
                "cost scaling check failed: linear core events {linear}, quadratic residual {residual:.4}"
            )));
        }
    }
    Ok(())
}

pub fn robustness(a: RobustnessArgs) -> Result<(), CliError> {
    parse::positive("scale", a.scale)?;
    parse::positive("tol", a.tol)?;
    let out = prepare(a.out.as_ref())?;
    let dts = parse::floats(&a.dts)?;
    let profile = CouplingProfile::christandl(a.n)?.with_scaled_couplings(a.scale);
    let tau = PI / a.scale;
    let cert = mirror_certificate(&profile, tau)?;
    let layout = Layout::core_only(a.n)?;
    let state = match &a.state {
        Some(bits) => {
            let b = BasisState::parse(bits)?;
            if b.bits.len() != a.n {
                return usage(format!("--state needs {} bits, got {}", a.n, b.bits.len()));
            }
            StateVector::from_basis(layout, &b)?
        }
        None => StateVector::random_seeded(layout, a.seed)?,
    };
    let report: RobustnessReport = robustness_fit(&profile, &state, tau, cert.phi_n, &dts)?;
    for (dt, e) in report.delta_ts.iter().zip(&report.errors) {
        println!("dt={dt} epsilon={}", short(*e));
    }
    println!("fitted order: {:.4}", report.fitted_order);
    if let Some(out) = out {
        if out.is_csv() {
            let mut buf = Vec::new();
            io::write_robustness_csv(&mut buf, &report)?;
            out.write(&buf)?;
        } else {
            write_json(Some(out), "robustness", &report)?;
        }
    }
    if a.check && (report.fitted_order - 2.0).abs() > a.tol {
        return Err(CliError::Check(format!(
            "fitted order {:.4} not within {} of 2",
            report.fitted_order, a.tol
        )));
    }
    Ok(())
}
