//! Seeded verification sweeps. Sweeps fan out over worker threads keyed by
//! seed; results are collected in seed order, so output is deterministic for
//! a fixed base seed.

use rayon::prelude::*;

use spirallog::bounds::{
    coefficient_bounds, fekete_szego_bound, fekete_szego_check, gamma_bounds_st_ss,
    gamma_conjecture_g, gamma_sums_g, growth_envelopes, hankel_check, inverse_functional_bound,
    inverse_functional_check,
};
use spirallog::families::{
    member_g, member_n, member_st_ss, verify_condition, FamilyTag, SchwarzFunction,
};
use spirallog::functions::{extremal_f, koebe, transform_g, transform_n, NormalizedFunction};
use spirallog::report::IndexBound;
use spirallog::{BoundReport, EvaluationGrid, Tolerances};

use crate::config::{FamilyKind, RunConfig};
use crate::CliError;

/// Highest coefficient index checked by family coefficient bounds.
pub const COEFF_MAX_N: usize = 16;
/// Extremal witnesses are generated for indices `1..=ATTAINMENT_MAX_N`.
pub const ATTAINMENT_MAX_N: usize = 8;
/// Envelope checks run at this order so their truncation error stays far
/// below the pass tolerance even where the envelope is attained.
pub const ENVELOPE_ORDER: usize = 192;
const ENVELOPE_RADII: [f64; 4] = [0.25, 0.5, 0.75, 0.9];
const ENVELOPE_ANGLES: usize = 120;

/// Deterministic Schwarz witness for a sweep seed: the Blaschke degree cycles
/// through 1..=6 so rotations (the tight cases) and high-degree products both
/// appear.
pub fn schwarz_for_seed(seed: u64, order: usize) -> SchwarzFunction {
    let degree = 1 + (seed % 6) as usize;
    SchwarzFunction::sample(seed, degree, order).expect("degree is always in 1..=6")
}

pub fn sample_member(
    family: FamilyKind,
    lam: f64,
    seed: u64,
    order: usize,
) -> Result<NormalizedFunction, CliError> {
    let omega = schwarz_for_seed(seed, order.saturating_sub(1));
    let member = match family {
        FamilyKind::StSs => member_st_ss(lam, &omega, order)?,
        FamilyKind::G => member_g(lam, &omega, order)?,
        FamilyKind::N => member_n(lam, &omega, order)?,
    };
    Ok(member)
}

fn collect_seeded<F>(
    seeds: usize,
    base_seed: u64,
    per_seed: F,
) -> Result<Vec<BoundReport>, CliError>
where
    F: Fn(u64) -> Result<Vec<BoundReport>, CliError> + Sync,
{
    let nested: Vec<Vec<BoundReport>> = (0..seeds)
        .into_par_iter()
        .map(|i| per_seed(base_seed.wrapping_add(i as u64)))
        .collect::<Result<_, _>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Full check set for one spiral-starlike member.
fn st_ss_member_checks(
    f: &NormalizedFunction,
    lam: f64,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<Vec<BoundReport>, CliError> {
    let mut out = vec![verify_condition(f, FamilyTag::StSs { lam }, grid, tol)?];
    out.extend(gamma_bounds_st_ss(f, lam, tol)?);
    out.push(hankel_check(f, lam, tol)?);
    out.push(fekete_szego_check(f, lam, 1.0, tol)?);
    Ok(out)
}

fn g_member_checks(
    f: &NormalizedFunction,
    lam: f64,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<Vec<BoundReport>, CliError> {
    let mut out = vec![verify_condition(f, FamilyTag::GFamily { lam }, grid, tol)?];
    out.push(gamma_conjecture_g(f, lam, tol)?);
    out.extend(gamma_sums_g(f, lam, tol)?);
    out.push(coefficient_bounds(
        f,
        lam,
        FamilyTag::GFamily { lam },
        COEFF_MAX_N,
        tol,
    )?);
    Ok(out)
}

fn n_member_checks(
    f: &NormalizedFunction,
    lam: f64,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<Vec<BoundReport>, CliError> {
    let mut out = vec![verify_condition(f, FamilyTag::NFamily { lam }, grid, tol)?];
    out.push(coefficient_bounds(
        f,
        lam,
        FamilyTag::NFamily { lam },
        COEFF_MAX_N,
        tol,
    )?);
    Ok(out)
}

/// Extremal-witness reports: the functions that attain each sharp bound.
fn extremal_witness_reports(
    family: FamilyKind,
    lam: f64,
    order: usize,
    tol: &Tolerances,
) -> Result<Vec<BoundReport>, CliError> {
    let mut out = Vec::new();
    match family {
        FamilyKind::StSs => {
            for n in 1..=ATTAINMENT_MAX_N {
                let f = extremal_f(lam, 1, n, order.max(4 * n + 4))?;
                out.extend(gamma_bounds_st_ss(&f, lam, tol)?);
            }
            let f2 = extremal_f(lam, 1, 2, order.max(16))?;
            out.push(hankel_check(&f2, lam, tol)?);
            out.push(fekete_szego_check(&f2, lam, 1.0, tol)?);
        }
        FamilyKind::G => {
            for n in 1..=ATTAINMENT_MAX_N {
                let f = transform_g(&extremal_f(lam, n, n, order.max(4 * n + 4))?)?;
                out.push(gamma_conjecture_g(&f, lam, tol)?);
            }
            for n in 2..=ATTAINMENT_MAX_N {
                let f = transform_g(&extremal_f(lam, n - 1, n - 1, order.max(4 * n + 4))?)?;
                out.push(coefficient_bounds(
                    &f,
                    lam,
                    FamilyTag::GFamily { lam },
                    COEFF_MAX_N,
                    tol,
                )?);
            }
        }
        FamilyKind::N => {
            for n in 2..=ATTAINMENT_MAX_N {
                let f = transform_n(&extremal_f(lam, n - 1, n - 1, order.max(4 * n + 4))?)?;
                out.push(coefficient_bounds(
                    &f,
                    lam,
                    FamilyTag::NFamily { lam },
                    COEFF_MAX_N,
                    tol,
                )?);
            }
        }
    }
    Ok(out)
}

/// The Koebe function: univalent but outside every family here; its reports
/// must fail, which exercises the violation path end to end.
fn negative_control_reports(
    family: FamilyKind,
    lam: f64,
    order: usize,
    grid: &EvaluationGrid,
    tol: &Tolerances,
) -> Result<Vec<BoundReport>, CliError> {
    let k = koebe(0.0, order);
    let mut out = Vec::new();
    match family {
        FamilyKind::StSs => {
            out.push(verify_condition(&k, FamilyTag::StSs { lam }, grid, tol)?);
            out.extend(gamma_bounds_st_ss(&k, lam, tol)?);
            out.push(hankel_check(&k, lam, tol)?);
        }
        FamilyKind::G => {
            out.push(verify_condition(&k, FamilyTag::GFamily { lam }, grid, tol)?);
            out.push(gamma_conjecture_g(&k, lam, tol)?);
        }
        FamilyKind::N => {
            out.push(verify_condition(&k, FamilyTag::NFamily { lam }, grid, tol)?);
            out.push(coefficient_bounds(
                &k,
                lam,
                FamilyTag::NFamily { lam },
                COEFF_MAX_N,
                tol,
            )?);
        }
    }
    Ok(out)
}

/// The `verify` sweep: per-seed member checks, extremal witnesses, and
/// optionally the negative control.
pub fn verify_sweep(config: &RunConfig) -> Result<Vec<BoundReport>, CliError> {
    let family = config.family.expect("validated");
    let lam = config.lam;
    let order = config.order;
    let grid = config.grid()?;
    let tol = config.tolerances;

    let mut reports = collect_seeded(config.seeds, config.base_seed, |seed| {
        let f = sample_member(family, lam, seed, order)?;
        match family {
            FamilyKind::StSs => st_ss_member_checks(&f, lam, &grid, &tol),
            FamilyKind::G => g_member_checks(&f, lam, &grid, &tol),
            FamilyKind::N => {
                let mut out = n_member_checks(&f, lam, &grid, &tol)?;
                let tall = sample_member(family, lam, seed, order.max(ENVELOPE_ORDER))?;
                out.extend(growth_envelopes(
                    &tall,
                    lam,
                    FamilyTag::NFamily { lam },
                    &ENVELOPE_RADII,
                    ENVELOPE_ANGLES,
                    &tol,
                )?);
                Ok(out)
            }
        }
    })?;

    reports.extend(extremal_witness_reports(family, lam, order, &tol)?);
    if config.include_negative_controls {
        reports.extend(negative_control_reports(family, lam, order, &grid, &tol)?);
    }
    Ok(reports)
}

/// The `gamma` sweep: logarithmic-coefficient checks only.
pub fn gamma_sweep(config: &RunConfig) -> Result<Vec<BoundReport>, CliError> {
    let family = config.family.expect("validated");
    let lam = config.lam;
    let order = config.order;
    let tol = config.tolerances;

    let mut reports = collect_seeded(config.seeds, config.base_seed, |seed| {
        let f = sample_member(family, lam, seed, order)?;
        match family {
            FamilyKind::StSs => Ok(gamma_bounds_st_ss(&f, lam, &tol)?),
            FamilyKind::G => {
                let mut out = vec![gamma_conjecture_g(&f, lam, &tol)?];
                out.extend(gamma_sums_g(&f, lam, &tol)?);
                Ok(out)
            }
            FamilyKind::N => unreachable!("rejected by validation"),
        }
    })?;

    match family {
        FamilyKind::StSs => {
            for n in 1..=ATTAINMENT_MAX_N {
                let f = extremal_f(lam, 1, n, order.max(4 * n + 4))?;
                reports.extend(gamma_bounds_st_ss(&f, lam, &tol)?);
            }
        }
        FamilyKind::G => {
            for n in 1..=ATTAINMENT_MAX_N {
                let f = transform_g(&extremal_f(lam, n, n, order.max(4 * n + 4))?)?;
                reports.push(gamma_conjecture_g(&f, lam, &tol)?);
            }
        }
        FamilyKind::N => unreachable!(),
    }
    if config.include_negative_controls {
        let k = koebe(0.0, order);
        match family {
            FamilyKind::StSs => reports.extend(gamma_bounds_st_ss(&k, lam, &tol)?),
            FamilyKind::G => reports.push(gamma_conjecture_g(&k, lam, &tol)?),
            FamilyKind::N => unreachable!(),
        }
    }
    Ok(reports)
}

/// The `hankel` sweep over the spiral-starlike family.
pub fn hankel_sweep(config: &RunConfig) -> Result<Vec<BoundReport>, CliError> {
    let lam = config.lam;
    let order = config.order;
    let tol = config.tolerances;
    let mut reports = collect_seeded(config.seeds, config.base_seed, |seed| {
        let f = sample_member(FamilyKind::StSs, lam, seed, order)?;
        Ok(vec![hankel_check(&f, lam, &tol)?])
    })?;
    let f2 = extremal_f(lam, 1, 2, order.max(16))?;
    reports.push(hankel_check(&f2, lam, &tol)?);
    if config.include_negative_controls {
        reports.push(hankel_check(&koebe(0.0, order), lam, &tol)?);
    }
    Ok(reports)
}

/// The Fekete-Szego sweep: a delta grid spanning all three branches, checked
/// against every seeded member plus the attaining extremals, with the
/// reciprocal-functional bound consistency verified on the same grid.
pub fn fs_sweep(config: &RunConfig) -> Result<Vec<BoundReport>, CliError> {
    let lam = config.lam;
    let order = config.order;
    let tol = config.tolerances;

    let members: Vec<NormalizedFunction> = (0..config.seeds)
        .into_par_iter()
        .map(|i| {
            sample_member(
                FamilyKind::StSs,
                lam,
                config.base_seed.wrapping_add(i as u64),
                order,
            )
        })
        .collect::<Result<_, _>>()?;
    let mid_witness = extremal_f(lam, 1, 2, order.max(16))?;
    let outer_witness = extremal_f(lam, 1, 1, order.max(16))?;

    let lo = 3.0 * (lam - 1.0) / (4.0 * lam);
    let hi = (1.0 + 3.0 * lam) / (4.0 * lam);
    let (from, to) = (lo - 1.5, hi + 1.5);

    let mut reports = Vec::new();
    for k in 0..config.deltas {
        let delta = from + (to - from) * k as f64 / (config.deltas - 1) as f64;
        let branch = fekete_szego_bound(lam, delta)?;

        // one aggregated report per delta: entry n is the seed offset
        let entries = members
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let check = fekete_szego_check(f, lam, delta, &tol)?;
                let e = &check.per_index[0];
                Ok(IndexBound::upper(i + 1, e.value, e.bound))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        reports.push(
            BoundReport::from_entries(
                format!("st_ss_fekete_szego[delta={delta:.6}]"),
                format!("seed_sweep[{}]", members.len()),
                lam,
                entries,
                &tol,
            )
            .with_note(format!("branch={:?}", branch.branch)),
        );

        // the branch-appropriate extremal witness
        let witness = if delta >= lo && delta <= hi {
            &mid_witness
        } else {
            &outer_witness
        };
        reports.push(fekete_szego_check(witness, lam, delta, &tol)?);
        reports.push(inverse_functional_check(witness, lam, 1.0 - delta, &tol)?);

        // dual-route bound consistency at the reflected argument
        let inv = inverse_functional_bound(lam, 1.0 - delta)?;
        reports.push(BoundReport::from_entries(
            format!("fs_inverse_bound_consistency[delta={delta:.6}]"),
            "piecewise_bounds",
            lam,
            vec![IndexBound::upper(
                1,
                (inv.bound - branch.bound).abs(),
                1e-14,
            )],
            &tol,
        ));
    }
    Ok(reports)
}
