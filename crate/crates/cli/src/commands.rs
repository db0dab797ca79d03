//! The four subcommands. Each returns its table plus the exit code.

use witness_lab::{
    build_hamiltonian, certify_entanglement_on_path, default_fd_step, detect_anticrossing,
    diagonalize, eigenvalues, run_sweep, witness_lambda, witness_report, Sweep, DEFAULT_VAR_TOL,
};

use crate::config::RunConfig;
use crate::csv::{float, Table};
use crate::error::CliError;

pub struct Output {
    pub table: String,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
    pub code: u8,
}

impl Output {
    fn ok(table: Table) -> Self {
        Output {
            table: table.into_string(),
            notes: Vec::new(),
            code: 0,
        }
    }
}

fn check_levels(levels: usize, dim: usize, min: usize) -> Result<(), CliError> {
    if levels < min || levels > dim {
        return Err(CliError::Input(format!(
            "levels must be in {min}..={dim}, got {levels}"
        )));
    }
    Ok(())
}

pub fn spectrum(config: &RunConfig) -> Result<Output, CliError> {
    let system = config.system()?;
    let dim = system.dim();
    let levels = config.options.levels.unwrap_or(dim);
    check_levels(levels, dim, 1)?;
    let h = build_hamiltonian(&system);
    let (energies, gap) = if config.options.ground {
        let spec = diagonalize(&h)?;
        let tol = spec.resolve_deg_tol(config.options.deg_tol);
        spec.check_nondegenerate(tol)?;
        (spec.energies().to_vec(), Some(spec.gap()))
    } else {
        (eigenvalues(h)?, None)
    };
    let mut table = Table::new(["level", "energy"]);
    for (k, &e) in energies.iter().take(levels).enumerate() {
        table.row([k.to_string(), float(e)]);
    }
    if let Some(gap) = gap {
        table.row(["gap".to_string(), float(gap)]);
    }
    Ok(Output::ok(table))
}

pub fn witness(config: &RunConfig) -> Result<Output, CliError> {
    let system = config.system()?;
    let spec = diagonalize(&build_hamiltonian(&system))?;
    let tol = spec.resolve_deg_tol(config.options.deg_tol);
    let report = witness_report(&spec, &system, tol)?;
    let mut table = Table::new(["mask_hex", "n_ab", "w_tilde", "w_ab"]);
    for cut in &report.cuts {
        table.row([
            format!("{:#x}", cut.partition.mask()),
            cut.n_ab.to_string(),
            float(cut.w_tilde),
            float(cut.w_ab),
        ]);
    }
    table.row(["global", "", "", &float(report.w_global)]);
    if let Some(path) = config.witness_path()? {
        let step = config
            .options
            .fd_step
            .unwrap_or_else(|| default_fd_step(&system));
        let w = witness_lambda(&path, 0.0, step, config.options.deg_tol)?;
        table.row(["w_lambda", "", "", &float(w)]);
    }
    Ok(Output::ok(table))
}

fn sweep_config(config: &RunConfig, default_levels: usize) -> Result<Sweep, CliError> {
    let path = config.sweep_path()?;
    let dim = path.base().dim();
    let mut sweep = Sweep::new(path, config.grid()?);
    sweep.track_levels = config.options.levels.unwrap_or(default_levels.min(dim));
    check_levels(sweep.track_levels, dim, 2)?;
    sweep.deg_tol = config.options.deg_tol;
    Ok(sweep)
}

pub fn sweep(config: &RunConfig) -> Result<Output, CliError> {
    let mut sweep = sweep_config(config, 2)?;
    sweep.compute_witnesses = config.options.witnesses && sweep.path.n() >= 2;
    let result = run_sweep(&sweep)?;
    let n = result.n;
    let k = sweep.track_levels;

    let mut header = vec!["lambda".to_string()];
    header.extend((0..k).map(|l| format!("E{l}")));
    header.push("gap".into());
    header.extend((0..n).map(|q| format!("sz_{q}")));
    header.push("degenerate".into());
    if sweep.compute_witnesses {
        header.push("w_global".into());
    }
    let mut table = Table::new(header);
    for p in &result.points {
        let mut row = vec![float(p.lambda)];
        row.extend(p.energies.iter().map(|&e| float(e)));
        row.push(float(p.gap));
        row.extend(p.sz.iter().map(|&s| float(s)));
        row.push(p.degenerate.to_string());
        if sweep.compute_witnesses {
            row.push(
                p.witness
                    .as_ref()
                    .map_or(String::new(), |w| float(w.w_global)),
            );
        }
        table.row(row);
    }
    let notes = detect_anticrossing(&result)?
        .iter()
        .map(|a| {
            format!(
                "anticrossing at lambda={} gap={}",
                float(a.lambda),
                float(a.gap)
            )
        })
        .collect();
    Ok(Output {
        table: table.into_string(),
        notes,
        code: 0,
    })
}

pub fn certify(config: &RunConfig) -> Result<Output, CliError> {
    let sweep = sweep_config(config, 2)?;
    let result = run_sweep(&sweep)?;
    let var_tol = config.options.var_tol.unwrap_or(DEFAULT_VAR_TOL);
    let report =
        certify_entanglement_on_path(&result, &sweep.path, var_tol, config.options.deg_tol)?;

    let mut table = Table::new(["i", "j", "var_i", "var_j", "certified"]);
    for p in &report.coupled_pairs {
        let certified = report
            .certified_pairs
            .iter()
            .any(|c| (c.i, c.j) == (p.i, p.j));
        table.row([
            p.i.to_string(),
            p.j.to_string(),
            float(p.var_i),
            float(p.var_j),
            certified.to_string(),
        ]);
    }
    let confirm = report.oracle_confirmation;
    table.row([
        "path_nondegenerate",
        "",
        "",
        "",
        &report.path_nondegenerate.to_string(),
    ]);
    table.row([
        "oracle_lambda",
        "",
        "",
        "",
        &confirm.map_or(String::new(), |c| float(c.lambda)),
    ]);
    table.row([
        "oracle_schmidt",
        "",
        "",
        "",
        &confirm.map_or(String::new(), |c| float(c.schmidt_coefficient)),
    ]);

    let (code, note) = if !report.path_nondegenerate {
        (
            3,
            "DegenerateGround: the ground state is degenerate somewhere on the path",
        )
    } else if report.is_certified() {
        (0, "entanglement certified")
    } else {
        (1, "no pair certified")
    };
    Ok(Output {
        table: table.into_string(),
        notes: vec![note.to_string()],
        code,
    })
}
