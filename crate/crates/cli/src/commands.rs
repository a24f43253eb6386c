//! Dispatch from parsed arguments to the core library.

use crate::report::Report;
use crate::{Cli, CodesCommand, Command, Model, MpsCommand, Source, StateInput};
use anyhow::{bail, Context, Result};
use entangle_core::codes::{format_bits, parse_bits, KL_TOL};
use entangle_core::invariants3::TAU3_AGREEMENT;
use entangle_core::linalg::singular_values;
use entangle_core::mps::format::format_mps;
use entangle_core::polytope::{polytope_vertices, w_pyramid_test, POLYGON_TOL};
use entangle_core::stellar::forms::form_coeffs_of;
use entangle_core::stellar::{form_invariants, format_partition, to_constellation, Star, DEFAULT_CLUSTER_TOL, ORBIT_FLAG_TOL};
use entangle_core::{
    catalog_state, classify_sym, dmrg_ground_state, knill_laflamme_check, lu_invariants, overlap, parse_code,
    scaling_experiment, slocc_classify3, tangle_report, uniformity_report, LinearCode, MpsState, NnHamiltonian, PureState,
    ScalingSource, SymmetricState,
};
use std::path::Path;

/// Decisions closer than this factor to their cutoff raise a warning.
const WARN_FACTOR: f64 = 100.0;

/// Dense exact diagonalization is attempted up to this many sites.
const EXACT_SITES: usize = 14;

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Analyze { input, tol } => analyze(input, *tol),
        Command::Classify { input, tol } => classify(input, *tol),
        Command::Polytope { input } => polytope(input),
        Command::Uniformity { input, max_k, tol } => uniformity(input, *max_k, *tol),
        Command::Stellar { input, tol } => stellar(input, *tol),
        Command::Codes { action } => match action {
            CodesCommand::Demo { hamming, repetition, code, message } => codes_demo(*hamming, *repetition, code.as_deref(), message.as_deref()),
            CodesCommand::Kl { input, weight } => codes_kl(input, *weight),
        },
        Command::Mps { action } => match action {
            MpsCommand::Compress { input, max_bond, mps_out } => mps_compress(input, *max_bond, mps_out.as_deref()),
            MpsCommand::Dmrg { model, g, sites, bond, seed, sweeps, tol } => mps_dmrg(*model, *g, *sites, *bond, *seed, *sweeps, *tol),
            MpsCommand::Scaling { source, sites, local_dim, bond, samples, seed } => {
                mps_scaling(*source, *sites, *local_dim, *bond, *samples, *seed, cli.threads)
            }
        },
    }
}

pub fn parse_state_file(path: &Path) -> Result<PureState> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    entangle_core::io::parse_state(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load(input: &StateInput, report: &mut Report) -> Result<PureState> {
    let state = match (&input.path, &input.state, &input.catalog) {
        (Some(p), None, None) | (None, Some(p), None) => {
            report.push("source", p.display().to_string());
            let state = parse_state_file(p)?;
            let input_norm = 1.0 / state.normalization_factor();
            if (input_norm - 1.0).abs() > 1e-12 {
                eprintln!("warning: input norm {input_norm} rescaled to 1");
                report.push_noted("input_norm", input_norm, "state was normalized on load");
            }
            state
        }
        (None, None, Some(name)) => {
            report.push("source", name.as_str());
            catalog_state(name).with_context(|| format!("catalog state {name}"))?
        }
        (None, None, None) => bail!("no input state: pass FILE, --state FILE or --catalog NAME"),
        _ => bail!("give exactly one of FILE, --state FILE, --catalog NAME"),
    };
    report.push("dims", state.dims());
    Ok(state)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be a positive number, got {tol}");
    }
    Ok(())
}

fn near(value: f64, cutoff: f64) -> bool {
    value >= cutoff / WARN_FACTOR && value <= cutoff * WARN_FACTOR
}

/// SLOCC class with warnings when a rank or the hyperdeterminant sits near `tol`.
fn slocc_section(state: &PureState, tol: f64, report: &mut Report) -> Result<()> {
    let class = slocc_classify3(state, tol)?;
    report.push("slocc", class.label.as_str());
    report.push("local_ranks", class.local_ranks.to_vec());
    report.push("det3_abs", class.det3_abs);
    report.push("slocc_tol", tol);
    for site in 0..3 {
        let s = singular_values(&state.matricize(&[site])?);
        if near(s[1], tol) {
            report.warn(format!("site {site} singular value {:.3e} near tolerance {tol:e}", s[1]));
        }
    }
    if class.local_ranks == [2, 2, 2] && near(class.det3_abs, tol) {
        report.warn(format!("|Det3| {:.3e} near tolerance {tol:e}", class.det3_abs));
    }
    Ok(())
}

fn analyze(input: &StateInput, tol: f64) -> Result<Report> {
    check_tol(tol)?;
    let mut r = Report::new("analyze");
    let state = load(input, &mut r)?;
    let k = state.num_sites();
    if k > 1 {
        let entropies = (0..k).map(|s| entangle_core::entanglement_entropy(&state, &[s])).collect::<entangle_core::Result<Vec<_>>>()?;
        r.push_noted("site_entropy", entropies, "nats");
        let half: Vec<usize> = (0..k / 2).collect();
        r.push("half_chain_entropy", entangle_core::entanglement_entropy(&state, &half)?);
    }
    if state.is_qubits() && k == 3 {
        let lu = lu_invariants(&state)?;
        r.push("I1", lu.i1);
        r.push("I2", lu.i2);
        r.push("I3", lu.i3);
        r.push("I4", lu.i4);
        r.push("I5", lu.i5);
        r.push("I6", lu.i6);
        r.push("det3", lu.det3);
        let t = tangle_report(&state)?;
        r.push("tau_A_BC", t.tau_a_bc);
        r.push("tau_B_AC", t.tau_b_ac);
        r.push("tau_C_AB", t.tau_c_ab);
        r.push("tau_AB", t.tau_ab);
        r.push("tau_BC", t.tau_bc);
        r.push("tau_AC", t.tau_ac);
        r.push("tau1", t.tau1);
        r.push("tau2", t.tau2);
        r.push("tau3", t.tau3);
        r.push("tau3_det", t.tau3_det);
        r.push("tau3_agreement_tol", TAU3_AGREEMENT);
        r.push("monogamy_residuals", t.monogamy_residuals.to_vec());
        slocc_section(&state, tol, &mut r)?;
    }
    Ok(r)
}

fn classify(input: &StateInput, tol: f64) -> Result<Report> {
    check_tol(tol)?;
    let mut r = Report::new("classify");
    let state = load(input, &mut r)?;
    let k = state.num_sites();
    let qubits = state.is_qubits();
    if qubits && k == 3 {
        slocc_section(&state, tol, &mut r)?;
    }
    let symmetric = if qubits && (k == 3 || k == 4) { SymmetricState::from_pure_state(&state, 1e-9).ok() } else { None };
    match symmetric {
        Some(sym) => {
            let c = classify_sym(&sym)?;
            r.push("symmetric", true);
            r.push("stellar_class", c.label());
            r.push("degeneracy", format_partition(&c.degeneracy));
            r.push("cluster_tol", DEFAULT_CLUSTER_TOL);
        }
        None if qubits && k == 3 => r.push("symmetric", false),
        None => bail!("classify needs three qubits or a symmetric 3- or 4-qubit state, got dims {:?}", state.dims()),
    }
    Ok(r)
}

fn polytope(input: &StateInput) -> Result<Report> {
    let mut r = Report::new("polytope");
    let state = load(input, &mut r)?;
    let spectra = entangle_core::local_spectra(&state)?;
    let check = entangle_core::polygon_check(&spectra);
    r.push_noted("lambda_min", spectra.lambdas.clone(), "smallest eigenvalue of each one-qubit reduction");
    r.push("polygon_pass", check.pass);
    r.push("polygon_slack", check.slack);
    r.push("on_boundary", check.on_boundary);
    r.push("polygon_tol", POLYGON_TOL);
    if state.num_sites() == 3 {
        r.push("in_w_pyramid", w_pyramid_test(&spectra)?);
    }
    if state.num_sites() <= 6 {
        r.push("polytope_vertices", polytope_vertices(state.num_sites())?.len());
    }
    Ok(r)
}

fn uniformity(input: &StateInput, max_k: Option<usize>, tol: f64) -> Result<Report> {
    check_tol(tol)?;
    let mut r = Report::new("uniformity");
    let state = load(input, &mut r)?;
    let rep = uniformity_report(&state, max_k, tol)?;
    for (i, q) in rep.q_values.iter().enumerate() {
        r.push(format!("Q{}", i + 1), *q);
    }
    r.push("k_uniform", rep.k_uniform_level);
    r.push("is_ame", rep.is_ame);
    r.push("uniform_tol", tol);
    Ok(r)
}

fn star_value(s: Star) -> Result<String> {
    Ok(match s {
        Star::Finite(z) => format!("{} {}", crate::format_float(z.re)?, crate::format_float(z.im)?),
        Star::Infinity => "inf".into(),
    })
}

fn stellar(input: &StateInput, tol: f64) -> Result<Report> {
    check_tol(tol)?;
    let mut r = Report::new("stellar");
    let state = load(input, &mut r)?;
    let sym = SymmetricState::from_pure_state(&state, tol)?;
    let k = sym.num_qubits();
    r.push("symmetry_tol", tol);
    r.push("dicke", sym.dicke_coeffs().iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>());
    let cons = to_constellation(&sym);
    for (i, s) in cons.stars().into_iter().enumerate() {
        r.push(format!("star{}", i + 1), star_value(s).with_context(|| format!("star {}", i + 1))?);
    }
    r.push("degeneracy", format_partition(&entangle_core::stellar::degeneracy_type(&cons, DEFAULT_CLUSTER_TOL)));
    r.push("cluster_tol", DEFAULT_CLUSTER_TOL);
    if k == 3 || k == 4 {
        let c = classify_sym(&sym)?;
        r.push("stellar_class", c.label());
        if let Some(l) = c.cross_ratio {
            r.push("cross_ratio", l);
            r.push("ghz_equivalent", c.ghz_equivalent);
            r.push("tetrahedral", c.tetrahedral);
            r.push("concyclic", c.concyclic);
            r.push("orbit_flag_tol", ORBIT_FLAG_TOL);
        }
    }
    if (2..=4).contains(&k) {
        let inv = form_invariants(&form_coeffs_of(&sym), k)?;
        r.push("discriminant", inv.discriminant);
        if let Some(res) = inv.syzygy_residual {
            r.push("syzygy_residual", res);
        }
        if let (Some(i1), Some(i2)) = (inv.i1, inv.i2) {
            r.push("quartic_I", i1);
            r.push("quartic_J", i2);
        }
    }
    Ok(r)
}

fn codes_demo(hamming: bool, repetition: bool, code_path: Option<&Path>, message: Option<&str>) -> Result<Report> {
    let mut r = Report::new("codes demo");
    let code = match (hamming, repetition, code_path) {
        (_, false, None) => {
            r.push("code", "hamming[7,4]");
            LinearCode::hamming74()
        }
        (false, true, None) => {
            r.push("code", "repetition[12,4]");
            LinearCode::repetition_12_4()
        }
        (false, false, Some(p)) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            r.push("code", p.display().to_string());
            parse_code(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        _ => bail!("choose one of --hamming, --repetition, --code FILE"),
    };
    r.push("n", code.n());
    r.push("k", code.k());
    match code.min_distance()? {
        Some(d) => r.push("min_distance", d),
        None => r.push("min_distance", "none"),
    }
    let msg = match message {
        Some(m) => parse_bits(m)?,
        None => (0..code.k()).map(|i| [0u8, 1, 0, 1].get(i).copied().unwrap_or(0)).collect(),
    };
    let word = code.encode(&msg)?;
    r.push("message", format_bits(&msg));
    r.push("codeword", format_bits(&word));
    r.push("syndrome", format_bits(&code.syndrome(&word)?));
    let mut corrected = 0;
    for pos in 0..code.n() {
        let mut received = word.clone();
        received[pos] ^= 1;
        if let Ok((fixed, Some(found))) = code.syndrome_decode_weight1(&received) {
            if fixed == word && found == pos {
                corrected += 1;
            }
        }
    }
    r.push("single_errors_corrected", format!("{corrected}/{}", code.n()));
    Ok(r)
}

fn codes_kl(input: &StateInput, weight: usize) -> Result<Report> {
    let mut r = Report::new("codes kl");
    let state = load(input, &mut r)?;
    let kl = knill_laflamme_check(&state, weight)?;
    r.push("weight", weight);
    r.push("num_errors", kl.num_errors);
    r.push("worst_violation", kl.worst_violation);
    r.push("kl_pass", kl.pass);
    r.push("kl_tol", KL_TOL);
    Ok(r)
}

fn mps_compress(input: &StateInput, max_bond: usize, mps_out: Option<&Path>) -> Result<Report> {
    if max_bond == 0 {
        bail!("--max-bond must be at least 1");
    }
    let mut r = Report::new("mps compress");
    let state = load(input, &mut r)?;
    let exact = MpsState::from_dense(&state);
    r.push("exact_bond_dims", exact.bond_dims());
    let trunc = exact.truncate(max_bond)?;
    let mps = trunc.mps;
    r.push("max_bond", max_bond);
    r.push("bond_dims", mps.bond_dims());
    r.push("discarded_weight", trunc.discarded);
    let fidelity = overlap(&exact, &mps)?.norm_sqr() / mps.norm()?.powi(2);
    r.push("fidelity", fidelity);
    r.push("bond_entropies", mps.bond_entropies()?);
    r.push("canonical_residual", mps.check_canonical()?.max());
    if let Some(p) = mps_out {
        let text = format_mps(&mps)?;
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        r.push("mps_out", p.display().to_string());
    }
    Ok(r)
}

fn mps_dmrg(model: Model, g: f64, sites: usize, bond: usize, seed: u64, sweeps: usize, tol: f64) -> Result<Report> {
    check_tol(tol)?;
    if !g.is_finite() {
        bail!("--g must be finite");
    }
    let mut r = Report::new("mps dmrg");
    let h = match model {
        Model::Ising => {
            r.push("model", "ising");
            r.push("g", g);
            NnHamiltonian::transverse_ising(sites, g)?
        }
        Model::Heisenberg => {
            r.push("model", "heisenberg");
            NnHamiltonian::heisenberg(sites)?
        }
    };
    r.push("sites", sites);
    r.push("bond", bond);
    r.push("seed", seed);
    r.push("sweep_tol", tol);
    let res = dmrg_ground_state(&h, bond, sweeps, tol, seed)?;
    r.push("energy", res.energy);
    r.push("sweeps", res.rayleigh_history.len());
    r.push("converged", res.converged);
    r.push("sweep_energies", res.rayleigh_history.clone());
    r.push("bond_dims", res.mps.bond_dims());
    r.push("bond_entropies", res.mps.bond_entropies()?);
    if sites <= EXACT_SITES {
        let exact = h.exact_ground_energy()?;
        r.push("exact_energy", exact);
        r.push("energy_error", res.energy - exact);
    }
    Ok(r)
}

fn mps_scaling(source: Source, sites: usize, local_dim: usize, bond: usize, samples: usize, seed: u64, threads: usize) -> Result<Report> {
    let mut r = Report::new("mps scaling");
    let src = match source {
        Source::Dense => ScalingSource::RandomDense,
        Source::Ghz => ScalingSource::Ghz,
        Source::Mps => ScalingSource::RandomMps { bond },
    };
    let table = scaling_experiment(sites, local_dim, src, samples, seed, threads)?;
    r.push("source", format!("{source:?}").to_lowercase());
    r.push("sites", sites);
    r.push("local_dim", local_dim);
    if source == Source::Mps {
        r.push("bond", bond);
        r.push("entropy_cap", (bond as f64).ln());
    }
    r.push("samples", table.samples);
    r.push("seed", seed);
    for row in &table.rows {
        let x = row.region;
        r.push(format!("mean_{x}"), row.mean);
        r.push(format!("stderr_{x}"), row.std_err);
        r.push(format!("max_{x}"), row.max);
        if let Some(p) = row.page_estimate {
            r.push(format!("page_{x}"), p);
        }
        if let Some(p) = row.page_exact {
            r.push(format!("page_exact_{x}"), p);
        }
    }
    Ok(r)
}
