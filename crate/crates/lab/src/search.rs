//! Extremal search: how many obtuse dihedral angles can a simplex with
//! nonobtuse facets accumulate? Hill climbing over grid perturbations with
//! random restarts; the proven ceiling `floor((n+1)/2)` is asserted on every
//! sample and the best witness is reported.

use rand::Rng;
use serde::{Deserialize, Serialize};

use simplicia::scalar::Rat;
use simplicia::simplex::{dihedral_report, Simplex, SimplexLiteral};

use crate::gen::{derive_seed, facets_nonobtuse, generate, rng_for, Family, GenParams};
use crate::record::{log_record, LogSink, TrialRecord, Verdict, Witness};
use crate::LabError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub budget: usize,
    pub evaluations: usize,
    /// Largest obtuse-angle count reached under the nonobtuse-facet
    /// constraint.
    pub best_count: usize,
    /// Hard ceiling from the pairing theorem.
    pub bound: usize,
    pub witness: Option<SimplexLiteral>,
}

fn obtuse_count(s: &Simplex) -> Result<usize, LabError> {
    Ok(dihedral_report(s.gramian(0)?.matrix())?.obtuse.len())
}

pub fn extremal_search(
    n: usize,
    budget: usize,
    seed: u64,
    mut log: LogSink<'_>,
) -> Result<SearchReport, LabError> {
    assert!(n >= 2, "search needs n >= 2");
    let bound = (n + 1) / 2;
    let params = GenParams {
        force_obtuse: n >= 3,
        ..GenParams::default()
    };
    let mut best_count = 0usize;
    let mut witness: Option<Simplex> = None;
    let mut evaluations = 0usize;
    let mut restart = 0u64;
    while evaluations < budget {
        let restart_seed = derive_seed(seed, restart);
        restart += 1;
        let family = if n == 2 { Family::Grid } else { Family::NonobtuseFacets };
        let Ok(mut current) = generate(&family, n, restart_seed, &params) else {
            continue;
        };
        if n == 2 && !facets_nonobtuse(&current)? {
            // facets of a triangle are segments, formally nonobtuse; this
            // only filters degenerate corner cases
            continue;
        }
        let mut current_count = obtuse_count(&current)?;
        evaluations += 1;
        consider(
            &current,
            current_count,
            bound,
            &mut best_count,
            &mut witness,
            &mut log,
            n,
            restart_seed,
        )?;
        let mut rng = rng_for(derive_seed(restart_seed, 0x5EA7));
        let climb_len = (budget / 10).clamp(8, 200);
        for _ in 0..climb_len {
            if evaluations >= budget {
                break;
            }
            let vtx = rng.gen_range(0..=n);
            let coord = rng.gen_range(0..n);
            let delta = Rat::new(rng.gen_range(-16..=16i64), 64);
            let mut verts: Vec<Vec<Rat>> = current.vertices().to_vec();
            verts[vtx][coord] = verts[vtx][coord].clone() + delta;
            let Ok(cand) = Simplex::with_metric(verts, current.metric().to_vec()) else {
                continue;
            };
            evaluations += 1;
            if !facets_nonobtuse(&cand)? {
                continue;
            }
            let count = obtuse_count(&cand)?;
            if count >= current_count {
                current = cand;
                current_count = count;
                consider(
                    &current,
                    current_count,
                    bound,
                    &mut best_count,
                    &mut witness,
                    &mut log,
                    n,
                    restart_seed,
                )?;
            }
        }
    }
    if let Some(l) = log.as_mut() {
        l.flush().expect("flush jsonl");
    }
    Ok(SearchReport {
        n,
        budget,
        evaluations,
        best_count,
        bound,
        witness: witness.map(|s| s.to_literal()),
    })
}

#[allow(clippy::too_many_arguments)]
fn consider(
    s: &Simplex,
    count: usize,
    bound: usize,
    best: &mut usize,
    witness: &mut Option<Simplex>,
    log: &mut LogSink<'_>,
    n: usize,
    seed: u64,
) -> Result<(), LabError> {
    if count > bound {
        let record = TrialRecord {
            seed,
            n,
            k: None,
            family: "search".into(),
            verdict: Verdict::Counterexample,
            note: Some(format!("{count} obtuse angles exceed the ceiling {bound}")),
            witness: Some(Witness {
                simplex: s.to_literal(),
                report: None,
            }),
        };
        log_record(log, &record);
        return Err(LabError::TheoremViolation(Box::new(record)));
    }
    if count > *best {
        *best = count;
        *witness = Some(s.clone());
        log_record(
            log,
            &TrialRecord {
                seed,
                n,
                k: None,
                family: "search".into(),
                verdict: Verdict::Pass,
                note: Some(format!("new maximum: {count} obtuse angles")),
                witness: Some(Witness {
                    simplex: s.to_literal(),
                    report: None,
                }),
            },
        );
    }
    Ok(())
}
