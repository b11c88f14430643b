use std::sync::Arc;

use xychain_core::criticality::{
    self, critical_temperatures, entangled_field, phase_boundary, sweep, tc_max,
    ENTANGLED_THRESHOLD,
};
use xychain_core::pair::ELEMENT_TOLERANCE;
use xychain_core::spectrum::quadrature_points;
use xychain_core::{concurrence_closed, concurrence_wootters, ChainParams, CorrelatorTable};
use xychain_ed::ground::DEGENERACY_GAP;
use xychain_ed::lanczos::LanczosOptions;
use xychain_ed::{pair_elements, spin_correlators, SectorLadder, ThermalSpectrum};

use crate::config::{Command, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{emit, render, Cell, Header, Table};
use crate::verify;

fn base_header(config: &RunConfig) -> Header {
    Header::new(config.command.name())
        .param("J", config.coupling)
        .tolerance("witness", ENTANGLED_THRESHOLD)
        .tolerance("elements", ELEMENT_TOLERANCE)
}

fn grid_label(g: &[f64]) -> String {
    match g {
        [only] => only.to_string(),
        [first, .., last] => format!("{first}..{last}({})", g.len()),
        [] => String::new(),
    }
}

/// Builds the output of one command without writing it.
pub fn execute(config: &RunConfig) -> Result<(Header, Table)> {
    let j = config.coupling;
    let header = base_header(config);
    Ok(match &config.command {
        Command::FnTable { params, n_max } => {
            let table = CorrelatorTable::compute(*n_max, params);
            let header = header
                .param("h", params.field())
                .param("T", params.temperature())
                .param("n_max", n_max)
                .param(
                    "quadrature_points",
                    quadrature_points(params).map_or("closed-form".into(), |n| n.to_string()),
                );
            let mut t = Table::new(&["n", "f_n"]);
            for (n, &f) in table.values().iter().enumerate() {
                t.push(vec![n.into(), f.into()]);
            }
            (header, t)
        }
        Command::Concurrence { m, params } => {
            let e = criticality::pair_state(*m, params)?;
            let c = concurrence_closed(&e)?;
            let header = header
                .param("m", m)
                .param("h", params.field())
                .param("T", params.temperature());
            let mut t = Table::new(&[
                "m",
                "h",
                "T",
                "concurrence",
                "witness",
                "x_plus",
                "x_minus",
                "y_plus",
                "y_minus",
                "z",
            ]);
            t.push(vec![
                (*m).into(),
                params.field().into(),
                params.temperature().into(),
                c.value.into(),
                c.witness.into(),
                e.x_plus.into(),
                e.x_minus.into(),
                e.y_plus.into(),
                e.y_minus.into(),
                e.z.into(),
            ]);
            (header, t)
        }
        Command::CriticalField { m } => {
            let p = entangled_field(*m, j)?;
            let mut t = Table::new(&[
                "m",
                "h_entangled",
                "bracket_lo",
                "bracket_hi",
                "residual_witness",
            ]);
            t.push(vec![
                (*m).into(),
                p.location.into(),
                p.bracket.0.into(),
                p.bracket.1.into(),
                p.residual_witness.into(),
            ]);
            (header.param("m", m), t)
        }
        Command::CriticalTemps { m, field } => {
            let roots = critical_temperatures(*m, *field, j)?;
            let mut t = Table::new(&[
                "m",
                "h",
                "kind",
                "T",
                "bracket_lo",
                "bracket_hi",
                "residual_witness",
            ]);
            for r in roots {
                t.push(vec![
                    (*m).into(),
                    (*field).into(),
                    r.kind.label().into(),
                    r.location.into(),
                    r.bracket.0.into(),
                    r.bracket.1.into(),
                    r.residual_witness.into(),
                ]);
            }
            (header.param("m", m).param("h", field), t)
        }
        Command::TcMax { m } => {
            let peak = tc_max(*m, j)?;
            let mut t = Table::new(&[
                "m",
                "h_star",
                "tc_star",
                "single_branch_lo",
                "single_branch_hi",
            ]);
            t.push(vec![
                (*m).into(),
                peak.field.into(),
                peak.temperature.into(),
                peak.single_branch.0.into(),
                peak.single_branch.1.into(),
            ]);
            (header.param("m", m), t)
        }
        Command::Sweep {
            m,
            fields,
            temperatures,
        }
        | Command::Surface {
            m,
            fields,
            temperatures,
        } => {
            let points = sweep(*m, fields, temperatures, j)?;
            let mut t = Table::new(&["m", "h", "T", "concurrence", "witness", "status"]);
            for p in points {
                let (c, w, status) = match p.outcome {
                    Ok((c, w)) => (c, w, "ok".to_string()),
                    Err(e) => (f64::NAN, f64::NAN, e.to_string().replace(',', ";")),
                };
                t.push(vec![
                    p.distance.into(),
                    p.field.into(),
                    p.temperature.into(),
                    c.into(),
                    w.into(),
                    status.into(),
                ]);
            }
            let header = header
                .param("m", m)
                .param("h", grid_label(fields))
                .param("T", grid_label(temperatures));
            (header, t)
        }
        Command::PhaseDiagram { m, fields } => {
            let boundary = phase_boundary(*m, fields, j)?;
            let mut t = Table::new(&["m", "h", "branch", "T", "residual_witness"]);
            for p in boundary.points() {
                t.push(vec![
                    (*m).into(),
                    p.field.into(),
                    p.branch.label().into(),
                    p.temperature.into(),
                    p.residual_witness.into(),
                ]);
            }
            (header.param("m", m).param("h", grid_label(fields)), t)
        }
        Command::Ed {
            sites,
            boundary,
            field,
            temperature,
            pair,
            dump,
        } => {
            let (i, jj) = *pair;
            let header = header
                .param("n", sites)
                .param("bc", boundary.label())
                .param("h", field)
                .param("pair", format!("{i}-{jj}"));
            let mut t = Table::new(&[
                "n",
                "bc",
                "i",
                "j",
                "h",
                "T",
                "energy",
                "n_up",
                "degenerate",
                "concurrence",
                "concurrence_wootters",
                "x_plus",
                "x_minus",
                "y_plus",
                "y_minus",
                "z",
                "sxsx",
                "szsz",
            ]);
            let row = |e: xychain_core::PairElements,
                       wootters: f64,
                       corr: xychain_ed::SpinCorrelators,
                       temp: f64,
                       energy: f64,
                       n_up: Cell,
                       degenerate: Cell|
             -> Result<Vec<Cell>> {
                Ok(vec![
                    (*sites).into(),
                    boundary.label().into(),
                    i.into(),
                    jj.into(),
                    (*field).into(),
                    temp.into(),
                    energy.into(),
                    n_up,
                    degenerate,
                    concurrence_closed(&e)?.value.into(),
                    wootters.into(),
                    e.x_plus.into(),
                    e.x_minus.into(),
                    e.y_plus.into(),
                    e.y_minus.into(),
                    e.z.into(),
                    corr.xx.into(),
                    corr.zz.into(),
                ])
            };
            let header = match temperature {
                None => {
                    let options = LanczosOptions {
                        tolerance: config.lanczos_tolerance,
                        ..LanczosOptions::default()
                    };
                    let ladder = SectorLadder::compute_with(*sites, *boundary, j, &options)?;
                    let g = ladder.ground_at(*field);
                    let e = pair_elements(&g, i, jj)?;
                    let w = concurrence_wootters(&xychain_ed::reduced_pair_rho(&g, i, jj)?)?.value;
                    let corr = spin_correlators(&g, i, jj)?;
                    if let Some(path) = dump {
                        let file =
                            std::fs::File::create(path).map_err(|source| CliError::Output {
                                path: path.clone(),
                                source,
                            })?;
                        g.state.write_to(std::io::BufWriter::new(file))?;
                    }
                    t.push(row(
                        e,
                        w,
                        corr,
                        0.0,
                        g.state.energy(),
                        g.n_up.into(),
                        g.degenerate.into(),
                    )?);
                    header
                        .param("state", "ground")
                        .tolerance("lanczos_residual", config.lanczos_tolerance)
                        .tolerance("degeneracy_gap", DEGENERACY_GAP)
                }
                Some(temp) => {
                    ChainParams::new(j, *field, *temp)?;
                    let spectrum = Arc::new(ThermalSpectrum::compute(*sites, *boundary, j)?);
                    let ens = spectrum.ensemble(*field, *temp)?;
                    let e = pair_elements(&ens, i, jj)?;
                    let w =
                        concurrence_wootters(&xychain_ed::reduced_pair_rho(&ens, i, jj)?)?.value;
                    let corr = spin_correlators(&ens, i, jj)?;
                    t.push(row(
                        e,
                        w,
                        corr,
                        *temp,
                        ens.mean_energy(),
                        "mixed".into(),
                        "n/a".into(),
                    )?);
                    header.param("state", "thermal").param("T", temp)
                }
            };
            (header, t)
        }
        Command::Verify { only } => {
            // progress goes to stderr so stdout stays a clean table
            let reports = verify::run(only.as_deref(), |r| eprintln!("{}", verify::line(r)))?;
            (header, verify::table(&reports))
        }
    })
}

pub fn run(config: &RunConfig) -> Result<()> {
    let (header, table) = execute(config)?;
    emit(
        &render(&header, &table, config.format),
        config.out.as_deref(),
    )?;
    if let Command::Verify { .. } = config.command {
        verify::check(&table)?;
    }
    Ok(())
}
