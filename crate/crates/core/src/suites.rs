//! Named verification suites over a single (r, q): every structural
//! identity the library exposes, run exactly and reported as one record per
//! check. Deterministic for a fixed configuration; sampled checks split one
//! seed into per-sample streams.

use crate::cell::MinimalSchubertDatum;
use crate::charts::{
    apply_transition_blocks, b_value, chart_inverse, chart_map, chart_points_agree, cocycle_check,
    tower_dimensions, transition, transition_matrix,
};
use crate::field::{FieldError, FieldSpec, Value};
use crate::lattice::WeightVector;
use crate::peaks::{all_witness_tuples, beta_pair_table, d_index, e_sequence, WitnessTuple};
use crate::report::CheckRecord;
use crate::sample;
use crate::sections::{assemble_invariant, chain, evaluate, monomial_mprime, monomial_mr};
use crate::stability::{
    hm_pairing, is_semistable, minimality_floor_check, orbit_solve, stabilizer_trivial, torus_act,
    OrbitOutcome,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use rand::Rng;
use serde_json::json;
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

/// Above this many witness tuples the exhaustive sweeps switch to seeded
/// sampling; everything at desk scale stays exhaustive.
const EXHAUSTIVE_TUPLE_CAP: u128 = 20_000;
/// Chart triples beyond this count are sampled (20 seeded triples).
const EXHAUSTIVE_TRIPLE_CAP: usize = 64;
const SAMPLED_TRIPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Orbits,
    Sections,
    Charts,
    Tower,
    All,
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "orbits" => Ok(Suite::Orbits),
            "sections" => Ok(Suite::Sections),
            "charts" => Ok(Suite::Charts),
            "tower" => Ok(Suite::Tower),
            "all" => Ok(Suite::All),
            other => Err(ConfigError::UnknownSuite(other.to_string())),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Orbits => "orbits",
            Suite::Sections => "sections",
            Suite::Charts => "charts",
            Suite::Tower => "tower",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("q must be at least 2 (got {0})")]
    QTooSmall(usize),
    #[error("r must be at least 1 (got {0})")]
    RTooSmall(usize),
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub r: usize,
    pub q: usize,
    pub suite: Suite,
    pub samples: u64,
    pub seed: u64,
    pub field: FieldSpec,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.q < 2 {
            return Err(ConfigError::QTooSmall(self.q));
        }
        if self.r < 1 {
            return Err(ConfigError::RTooSmall(self.r));
        }
        if self.samples < 1 {
            return Err(ConfigError::NoSamples);
        }
        self.field.validate()?;
        Ok(())
    }
}

/// Runs the selected suite and returns its records in canonical sorted
/// order (check name, then parameters).
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, ConfigError> {
    cfg.validate()?;
    let datum = MinimalSchubertDatum::shared(cfg.r, cfg.q).expect("config validated");
    let mut records = Vec::new();
    let extend = |suite: Suite, records: &mut Vec<CheckRecord>| match suite {
        Suite::Lemmas => records.extend(suite_lemmas(cfg, &datum)),
        Suite::Orbits => records.extend(suite_orbits(cfg, &datum)),
        Suite::Sections => records.extend(suite_sections(cfg, &datum)),
        Suite::Charts => records.extend(suite_charts(cfg, &datum)),
        Suite::Tower => records.extend(suite_tower(cfg, &datum)),
        Suite::All => unreachable!(),
    };
    match cfg.suite {
        Suite::All => {
            for s in [
                Suite::Lemmas,
                Suite::Orbits,
                Suite::Sections,
                Suite::Charts,
                Suite::Tower,
            ] {
                extend(s, &mut records);
            }
        }
        s => extend(s, &mut records),
    }
    records.sort_by(|a, b| {
        (a.check.as_str(), a.params.to_string()).cmp(&(b.check.as_str(), b.params.to_string()))
    });
    Ok(records)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn base_params(cfg: &SuiteConfig) -> serde_json::Value {
    json!({"r": cfg.r, "q": cfg.q})
}

/// Witness tuples to sweep: exhaustive when the product of column sizes is
/// small, otherwise a seeded selection. The boolean reports exhaustiveness.
fn tuples_to_sweep(
    cfg: &SuiteConfig,
    datum: &Arc<MinimalSchubertDatum>,
    m: usize,
) -> (Vec<WitnessTuple>, bool) {
    let total: u128 = (1..=m).map(|j| datum.c_set(j).len() as u128).product();
    if total <= EXHAUSTIVE_TUPLE_CAP {
        (all_witness_tuples(datum, m), true)
    } else {
        let mut out = Vec::with_capacity(cfg.samples as usize);
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed ^ 0x7f4a_u64, s);
            let indices: Vec<usize> = (1..=m)
                .map(|j| {
                    let set = datum.c_set(j);
                    set[rng.gen_range(0..set.len())]
                })
                .collect();
            out.push(WitnessTuple::new(datum, indices).expect("indices drawn from C_j"));
        }
        (out, false)
    }
}

fn sweep_record(
    cfg: &SuiteConfig,
    check: &str,
    exhaustive: bool,
    extra: serde_json::Value,
    failure: Option<serde_json::Value>,
) -> CheckRecord {
    let mut params = base_params(cfg);
    params["tuples"] = json!(if exhaustive { "exhaustive" } else { "sampled" });
    if let serde_json::Value::Object(extra) = extra {
        for (k, v) in extra {
            params[k] = v;
        }
    }
    let mut record = CheckRecord::new(check, params, failure.is_none());
    if !exhaustive {
        record = record.with_sampling(cfg.samples, cfg.seed);
    }
    match failure {
        Some(cx) => record.with_counterexample(cx),
        None => record,
    }
}

// ---------------------------------------------------------------------------
// lemmas
// ---------------------------------------------------------------------------

fn suite_lemmas(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> Vec<CheckRecord> {
    let (r, q, n) = (datum.r(), datum.q(), datum.n());
    let mut records = Vec::new();

    // Extremal pairing values along the peaks: must be -(n-j).
    {
        let chi = WeightVector::fundamental_weight(r, n)
            .expect("r < n")
            .scale_int(n as i64);
        let mut vals = Vec::with_capacity(r);
        let mut ok = true;
        for j in 1..=r {
            let hm = hm_pairing(datum.one_line(), &chi, j * q).expect("jq < n");
            ok &= hm == rat((n - j) as i64);
            vals.push((-hm).to_string());
        }
        records.push(
            CheckRecord::new("hm_pairing_closed_form", base_params(cfg), ok)
                .with_witness(json!({"pairings": vals})),
        );
    }

    // Reduced word against one-line data.
    {
        let perm = datum.word().to_permutation();
        let expected_len: usize = (1..=r).map(|j| j * q - j + 1).sum();
        let ok = perm == *datum.one_line()
            && datum.minimal_rep() == (1..=r).map(|j| j * q + 1).collect::<Vec<_>>()
            && perm.is_minimal_rep(r)
            && perm.length() == expected_len
            && datum.word().len() == expected_len;
        records.push(
            CheckRecord::new("word_one_line_consistency", base_params(cfg), ok)
                .with_witness(json!({"one_line": datum.minimal_rep(), "length": expected_len})),
        );
    }

    // Inversion set of the one-line word equals the interval roots.
    {
        let inversions = datum.one_line().inversion_roots();
        let ok = inversions.len() == datum.betas().len()
            && datum.betas().values().all(|beta| inversions.contains(beta));
        records.push(
            CheckRecord::new("inversion_set_matches_interval_roots", base_params(cfg), ok)
                .with_witness(json!({"count": inversions.len()})),
        );
    }

    records.push(CheckRecord::new(
        "floor_minimality",
        base_params(cfg),
        minimality_floor_check(r, q),
    ));

    // Block partition of each column set.
    {
        let mut failure = None;
        'outer: for j in 1..=r {
            let mut covered = Vec::new();
            for p in 1..=j {
                let block: Vec<usize> = if p == 1 {
                    (1..=q).collect()
                } else {
                    ((p - 1) * q + 2..=p * q).collect()
                };
                for i in block {
                    if covered.contains(&i) || d_index(i, j, q) != Ok(p) {
                        failure = Some(json!({"i": i, "j": j, "p": p}));
                        break 'outer;
                    }
                    covered.push(i);
                }
            }
            covered.sort_unstable();
            if covered != datum.c_set(j) {
                failure = Some(json!({"j": j}));
                break;
            }
        }
        let mut record = CheckRecord::new("column_partition", base_params(cfg), failure.is_none());
        if let Some(cx) = failure {
            record = record.with_counterexample(cx);
        }
        records.push(record);
    }

    // Pairing table: lattice partial sums against the block closed form.
    {
        let table = beta_pair_table(datum);
        let mut failure = None;
        'table: for (&(i, j), pairings) in &table {
            let d = d_index(i, j, q).expect("table key");
            for l in 1..=r {
                let expected = if d <= l && l <= j { rat(1) } else { rat(0) };
                if pairings[l - 1] != expected {
                    failure = Some(json!({"i": i, "j": j, "l": l}));
                    break 'table;
                }
            }
        }
        let mut record = CheckRecord::new(
            "pairing_table_closed_form",
            base_params(cfg),
            failure.is_none(),
        );
        if let Some(cx) = failure {
            record = record.with_counterexample(cx);
        }
        records.push(record);
    }

    // Descent sequences and the gamma pairing contract over witness tuples.
    {
        let (tuples, exhaustive) = tuples_to_sweep(cfg, datum, r);
        let mut descent_failure = None;
        let mut gamma_failure = None;
        for t in &tuples {
            for j in 1..=r {
                let seq = e_sequence(t, j, q).expect("tuple from datum");
                let v = seq.values();
                let decreasing = v.windows(2).all(|w| w[1] < w[0]);
                if v[0] != j || *v.last().unwrap() != 0 || !decreasing {
                    descent_failure
                        .get_or_insert_with(|| json!({"tuple": t.indices(), "j": j, "values": v}));
                }
                let gamma = crate::peaks::gamma_sum(t, j, datum).expect("tuple from datum");
                for l in 1..=r {
                    let expected = if l <= j { rat(1) } else { rat(0) };
                    if gamma.coweight_pair(l * q).expect("lq < n") != expected {
                        gamma_failure
                            .get_or_insert_with(|| json!({"tuple": t.indices(), "j": j, "l": l}));
                    }
                }
            }
        }
        records.push(sweep_record(
            cfg,
            "descent_sequences_terminate",
            exhaustive,
            json!({}),
            descent_failure,
        ));
        records.push(sweep_record(
            cfg,
            "gamma_pairing_contract",
            exhaustive,
            json!({}),
            gamma_failure,
        ));
    }

    records
}

// ---------------------------------------------------------------------------
// orbits
// ---------------------------------------------------------------------------

fn suite_orbits(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> Vec<CheckRecord> {
    let r = datum.r();
    let mut records = Vec::new();

    // Semistability is constant on orbits.
    {
        let mut failure = None;
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed, s);
            let p = sample::sample_point(datum, cfg.field, &[], &mut rng);
            let t = sample::sample_torus(r, cfg.field, &mut rng);
            let tp = torus_act(&t, &p).expect("same field and rank");
            if is_semistable(&p).semistable != is_semistable(&tp).semistable {
                failure = Some(json!({"sample": s}));
                break;
            }
        }
        records.push(
            CheckRecord::new(
                "semistability_torus_invariant",
                base_params(cfg),
                failure.is_none(),
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Free action: the solver recovers the acting element exactly.
    {
        let mut failure = None;
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed, s);
            let p = sample::sample_semistable_point(datum, cfg.field, &mut rng);
            let t = sample::sample_torus(r, cfg.field, &mut rng);
            let tp = torus_act(&t, &p).expect("same field and rank");
            match orbit_solve(&p, &tp) {
                Ok(OrbitOutcome::Equivalent(got)) if got == t => {}
                other => {
                    failure = Some(json!({"sample": s, "outcome": format!("{other:?}")}));
                    break;
                }
            }
            match orbit_solve(&p, &p) {
                Ok(OrbitOutcome::Equivalent(got)) if got.components().iter().all(Value::is_one) => {
                }
                other => {
                    failure = Some(json!({"sample": s, "outcome": format!("{other:?}")}));
                    break;
                }
            }
        }
        records.push(
            CheckRecord::new(
                "orbit_roundtrip_recovers_torus",
                base_params(cfg),
                failure.is_none(),
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Constructed non-equivalent pairs are rejected for the right reason.
    {
        let mut failure = None;
        let (i1, i2) = (datum.c_set(1)[0], datum.c_set(1)[1]);
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed, s);
            let mut required = vec![(i1, 1), (i2, 1)];
            for j in 2..=r {
                required.push((datum.c_set(j)[0], j));
            }
            let a = sample::sample_point(datum, cfg.field, &required, &mut rng);
            let t = sample::sample_torus(r, cfg.field, &mut rng);
            let moved = torus_act(&t, &a).expect("same field and rank");
            let two = Value::from_i64(cfg.field, 2);
            let broken = moved
                .with_value(i1, 1, two.mul(moved.get(i1, 1).expect("required key")))
                .expect("valid key");
            if !matches!(
                orbit_solve(&a, &broken),
                Ok(OrbitOutcome::RatioMismatch { .. })
            ) {
                failure = Some(json!({"sample": s, "kind": "ratio"}));
                break;
            }
            let erased = moved
                .with_value(i1, 1, Value::zero(cfg.field))
                .expect("valid key");
            if !matches!(
                orbit_solve(&a, &erased),
                Ok(OrbitOutcome::ZeroPatternMismatch { .. })
            ) {
                failure = Some(json!({"sample": s, "kind": "zero-pattern"}));
                break;
            }
        }
        records.push(
            CheckRecord::new(
                "orbit_rejects_perturbed_points",
                base_params(cfg),
                failure.is_none(),
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Column dropping preserves semistability.
    if r >= 2 {
        let mut failure = None;
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed, s);
            let p = sample::sample_semistable_point(datum, cfg.field, &mut rng);
            let restricted = p.restrict().expect("r >= 2");
            if !is_semistable(&restricted).semistable {
                failure = Some(json!({"sample": s}));
                break;
            }
        }
        records.push(
            CheckRecord::new(
                "restrict_preserves_semistability",
                base_params(cfg),
                failure.is_none(),
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Lattice certificate for stabilizer triviality.
    {
        let (tuples, exhaustive) = tuples_to_sweep(cfg, datum, r);
        let mut failure = None;
        for t in &tuples {
            if !stabilizer_trivial(t, datum).expect("full tuple") {
                failure = Some(json!({"tuple": t.indices()}));
                break;
            }
        }
        records.push(sweep_record(
            cfg,
            "stabilizer_lattice_index_one",
            exhaustive,
            json!({}),
            failure,
        ));
    }

    records
}

// ---------------------------------------------------------------------------
// sections
// ---------------------------------------------------------------------------

fn suite_sections(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> Vec<CheckRecord> {
    let (r, q, n) = (datum.r(), datum.q(), datum.n());
    let mut records = Vec::new();
    let (tuples, exhaustive) = tuples_to_sweep(cfg, datum, r);

    // Chains decrease to 1 and the factor monomials stay column-distinct
    // (construction fails otherwise).
    {
        let mut failure = None;
        'chains: for t in &tuples {
            for start in 1..=r {
                match chain(t, start, q) {
                    Ok(ks) => {
                        if *ks.last().unwrap() != 1 || !ks.windows(2).all(|w| w[1] < w[0]) {
                            failure = Some(json!({"tuple": t.indices(), "start": start}));
                            break 'chains;
                        }
                    }
                    Err(e) => {
                        failure = Some(json!({"tuple": t.indices(), "error": e.to_string()}));
                        break 'chains;
                    }
                }
            }
            if assemble_invariant(t, datum).is_err() {
                failure = Some(json!({"tuple": t.indices(), "error": "construction"}));
                break;
            }
        }
        records.push(sweep_record(
            cfg,
            "chain_descends_to_one",
            exhaustive,
            json!({}),
            failure,
        ));
    }

    // Weight contracts of the three monomial layers.
    {
        let mut mr_failure = None;
        let mut mp_failure = None;
        let mut certificate_failure = None;
        let chi = WeightVector::fundamental_weight(r, n)
            .expect("r < n")
            .scale_int(n as i64);
        for t in &tuples {
            let mr = monomial_mr(t, datum).expect("full tuple");
            let w = mr.weight(datum).expect("datum keys");
            for j in 1..=r {
                if w.coweight_pair(j * q).expect("jq < n") != rat(-((n - r) as i64)) {
                    mr_failure.get_or_insert_with(|| json!({"tuple": t.indices(), "j": j}));
                }
            }
            for level in 1..r {
                let wp = monomial_mprime(t, level, datum)
                    .expect("level below r")
                    .weight(datum)
                    .expect("datum keys");
                let gamma = crate::peaks::gamma_sum(t, level, datum).expect("tuple from datum");
                if wp != gamma.neg() {
                    mp_failure.get_or_insert_with(|| json!({"tuple": t.indices(), "level": level}));
                }
                for l in 1..=r {
                    let expected = if l <= level { rat(-1) } else { rat(0) };
                    if wp.coweight_pair(l * q).expect("lq < n") != expected {
                        mp_failure.get_or_insert_with(
                            || json!({"tuple": t.indices(), "level": level, "l": l}),
                        );
                    }
                }
            }
            // Certificate: the monomial weight plus the extremal pairing of
            // the ambient character vanishes peak by peak; the two sides are
            // computed through independent routes.
            let mu = assemble_invariant(t, datum)
                .expect("full tuple")
                .weight(datum)
                .expect("datum keys");
            for j in 1..=r {
                let hm = hm_pairing(datum.one_line(), &chi, j * q).expect("jq < n");
                if mu.coweight_pair(j * q).expect("jq < n") + hm != rat(0) {
                    certificate_failure
                        .get_or_insert_with(|| json!({"tuple": t.indices(), "j": j}));
                }
            }
        }
        records.push(sweep_record(
            cfg,
            "top_monomial_weight_constant",
            exhaustive,
            json!({}),
            mr_failure,
        ));
        if r >= 2 {
            records.push(sweep_record(
                cfg,
                "correction_monomial_weight_steps",
                exhaustive,
                json!({}),
                mp_failure,
            ));
        }
        records.push(sweep_record(
            cfg,
            "invariant_weight_certificate",
            exhaustive,
            json!({}),
            certificate_failure,
        ));
    }

    // Numeric shadow of invariance: evaluation scales by the predicted
    // character, and never vanishes on the witness locus.
    {
        let mut failure = None;
        let mut nonvanish_failure = None;
        'outer: for t in &tuples {
            let m = assemble_invariant(t, datum).expect("full tuple");
            for s in 0..cfg.samples {
                let mut rng = sample::sample_rng(cfg.seed, s);
                let required: Vec<(usize, usize)> = (1..=r).map(|j| (t.index(j), j)).collect();
                let p = sample::sample_point(datum, cfg.field, &required, &mut rng);
                let tor = sample::sample_torus(r, cfg.field, &mut rng);

                let value = evaluate(&m, &p).expect("same field");
                if value.is_zero() {
                    nonvanish_failure = Some(json!({"tuple": t.indices(), "sample": s}));
                    break 'outer;
                }
                let lhs = evaluate(&m, &torus_act(&tor, &p).expect("same rank")).expect("field");
                let mut scale = Value::one(cfg.field);
                for j in 1..=r {
                    scale = scale.mul(&tor.component(j).pow((n - j) as u64));
                }
                if lhs != scale.mul(&value) {
                    failure = Some(json!({"tuple": t.indices(), "sample": s}));
                    break 'outer;
                }
            }
        }
        records.push(
            sweep_record(
                cfg,
                "invariant_evaluation_equivariance",
                exhaustive,
                json!({}),
                failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
        records.push(
            sweep_record(
                cfg,
                "invariant_nonvanishing_on_witness_locus",
                exhaustive,
                json!({}),
                nonvanish_failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    records
}

// ---------------------------------------------------------------------------
// charts
// ---------------------------------------------------------------------------

fn chart_tuples(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> (Vec<WitnessTuple>, bool) {
    tuples_to_sweep(cfg, datum, datum.r() - 1)
}

fn required_for(tuples: &[&WitnessTuple]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for t in tuples {
        for l in 1..=t.m() {
            let key = (t.index(l), l);
            if !out.contains(&key) {
                out.push(key);
            }
        }
    }
    out
}

fn suite_charts(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> Vec<CheckRecord> {
    let (r, q) = (datum.r(), datum.q());
    let mut records = Vec::new();

    // Fiber size and block multiplicities (q, q-1, ..., q-1).
    {
        let c_r = datum.c_set(r);
        let mut sizes = vec![0usize; r];
        for &k in c_r {
            sizes[d_index(k, r, q).expect("k in C_r") - 1] += 1;
        }
        let ok =
            c_r.len() == r * (q - 1) + 1 && sizes[0] == q && sizes[1..].iter().all(|&s| s == q - 1);
        records.push(
            CheckRecord::new("fiber_block_multiplicities", base_params(cfg), ok)
                .with_witness(json!({"sizes": sizes})),
        );
    }

    if r == 1 {
        // Height-1 roundtrip: the single (empty) chart is the fiber itself.
        let empty = WitnessTuple::empty();
        let mut failure = None;
        for s in 0..cfg.samples {
            let mut rng = sample::sample_rng(cfg.seed, s);
            let x = sample::sample_semistable_point(datum, cfg.field, &mut rng);
            let c = chart_map(&empty, &x).expect("height one");
            let back = chart_inverse(datum, &empty, None, &c.fiber).expect("nonzero fiber");
            if back != x {
                failure = Some(json!({"sample": s}));
                break;
            }
        }
        records.push(
            CheckRecord::new("chart_roundtrip", base_params(cfg), failure.is_none())
                .with_sampling(cfg.samples, cfg.seed),
        );
        return records;
    }

    let base_datum = MinimalSchubertDatum::shared(r - 1, q).expect("r >= 2");
    let (tuples, exhaustive) = chart_tuples(cfg, datum);

    // Cocycle, inverse and identity laws over chart triples.
    {
        let total = tuples.len().pow(3);
        let triples: Vec<(usize, usize, usize)> = if total <= EXHAUSTIVE_TRIPLE_CAP {
            let mut v = Vec::with_capacity(total);
            for a in 0..tuples.len() {
                for b in 0..tuples.len() {
                    for c in 0..tuples.len() {
                        v.push((a, b, c));
                    }
                }
            }
            v
        } else {
            (0..SAMPLED_TRIPLES as u64)
                .map(|s| {
                    let mut rng = sample::sample_rng(cfg.seed ^ 0x3c1_u64, s);
                    (
                        rng.gen_range(0..tuples.len()),
                        rng.gen_range(0..tuples.len()),
                        rng.gen_range(0..tuples.len()),
                    )
                })
                .collect()
        };
        let mut failure = None;
        'triples: for &(a, b, c) in &triples {
            for level in 0..r {
                let report = cocycle_check(
                    &base_datum,
                    &tuples[a],
                    &tuples[b],
                    &tuples[c],
                    level,
                    cfg.samples,
                    cfg.seed,
                    cfg.field,
                )
                .expect("tuples valid on base datum");
                if !report.passed {
                    failure = Some(json!({
                        "triple": [tuples[a].indices(), tuples[b].indices(), tuples[c].indices()],
                        "level": level,
                        "failure": format!("{:?}", report.failure),
                    }));
                    break 'triples;
                }
            }
        }
        let mut params = base_params(cfg);
        params["triples"] = json!(triples.len());
        let mut record = CheckRecord::new("cocycle_laws", params, failure.is_none())
            .with_sampling(cfg.samples, cfg.seed);
        if let Some(cx) = failure {
            record = record.with_counterexample(cx);
        }
        records.push(record);
    }

    // Transition ratios are constant on orbits of the smaller torus, and
    // chart functions scale by the prefix character.
    {
        let mut transition_failure = None;
        let mut b_failure = None;
        'pairs: for (idx, t1) in tuples.iter().enumerate() {
            let t2 = &tuples[(idx + 1) % tuples.len()];
            for s in 0..cfg.samples {
                let mut rng = sample::sample_rng(cfg.seed, s);
                let y = sample::sample_point(
                    &base_datum,
                    cfg.field,
                    &required_for(&[t1, t2]),
                    &mut rng,
                );
                let tor = sample::sample_torus(r - 1, cfg.field, &mut rng);
                let ty = torus_act(&tor, &y).expect("same rank");
                for level in 0..r {
                    let a = transition(t1, t2, level, &y).expect("overlap point");
                    let moved = transition(t1, t2, level, &ty).expect("orbit stays in overlap");
                    if a != moved {
                        transition_failure = Some(json!({
                            "pair": [t1.indices(), t2.indices()],
                            "level": level,
                            "sample": s,
                        }));
                        break 'pairs;
                    }
                }
                for level in 1..r {
                    let mut prefix = Value::one(cfg.field);
                    for l in 1..=level {
                        prefix = prefix.mul(tor.component(l));
                    }
                    let lhs = b_value(t1, level, &ty).expect("overlap point");
                    let rhs = prefix.mul(&b_value(t1, level, &y).expect("overlap point"));
                    if lhs != rhs {
                        b_failure = Some(json!({
                            "tuple": t1.indices(),
                            "level": level,
                            "sample": s,
                        }));
                        break 'pairs;
                    }
                }
            }
        }
        records.push(
            sweep_record(
                cfg,
                "transition_orbit_constancy",
                exhaustive,
                json!({}),
                transition_failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
        records.push(
            sweep_record(
                cfg,
                "chart_function_prefix_equivariance",
                exhaustive,
                json!({}),
                b_failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Chart bijectivity at sample scale: roundtrips and separation.
    {
        let mut roundtrip_failure = None;
        let mut separation_failure = None;
        'charts: for t in &tuples {
            let required: Vec<(usize, usize)> = {
                let mut req = required_for(&[t]);
                // force a witness in the top column so samples are semistable
                req.push((datum.c_set(r)[0], r));
                req
            };
            for s in 0..cfg.samples {
                let mut rng = sample::sample_rng(cfg.seed, s);
                let x = sample::sample_point(datum, cfg.field, &required, &mut rng);
                let c = chart_map(t, &x).expect("witnesses forced nonzero");
                let back = chart_inverse(datum, t, c.base.as_ref(), &c.fiber)
                    .expect("chart data from chart_map");
                match orbit_solve(&x, &back) {
                    Ok(OrbitOutcome::Equivalent(_)) => {}
                    other => {
                        roundtrip_failure = Some(json!({
                            "tuple": t.indices(),
                            "sample": s,
                            "outcome": format!("{other:?}"),
                        }));
                        break 'charts;
                    }
                }
                let again = chart_map(t, &back).expect("reconstructed point in chart");
                if again.base != c.base || !again.fiber.projectively_equal(&c.fiber) {
                    roundtrip_failure = Some(json!({"tuple": t.indices(), "sample": s}));
                    break 'charts;
                }

                // Same orbit -> same chart image; fresh sample -> agreement
                // of the oracle and the chart comparison.
                let tor = sample::sample_torus(r, cfg.field, &mut rng);
                let moved = torus_act(&tor, &x).expect("same rank");
                let c_moved = chart_map(t, &moved).expect("orbit stays in chart");
                if !chart_points_agree(&c, &c_moved).expect("comparable") {
                    separation_failure =
                        Some(json!({"tuple": t.indices(), "sample": s, "kind": "orbit"}));
                    break 'charts;
                }
                let other = sample::sample_point(datum, cfg.field, &required, &mut rng);
                let c_other = chart_map(t, &other).expect("witnesses forced nonzero");
                let charts_equal = chart_points_agree(&c, &c_other).expect("comparable");
                let orbits_equal =
                    matches!(orbit_solve(&x, &other), Ok(OrbitOutcome::Equivalent(_)));
                if charts_equal != orbits_equal {
                    separation_failure =
                        Some(json!({"tuple": t.indices(), "sample": s, "kind": "separation"}));
                    break 'charts;
                }
            }
        }
        records.push(
            sweep_record(
                cfg,
                "chart_roundtrip",
                exhaustive,
                json!({}),
                roundtrip_failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
        records.push(
            sweep_record(
                cfg,
                "chart_separation",
                exhaustive,
                json!({}),
                separation_failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    // Two-chart compatibility through the block-diagonal description.
    {
        let mut failure = None;
        'blocks: for (idx, t1) in tuples.iter().enumerate() {
            let t2 = &tuples[(idx + 1) % tuples.len()];
            let mut required = required_for(&[t1, t2]);
            required.push((datum.c_set(r)[0], r));
            for s in 0..cfg.samples {
                let mut rng = sample::sample_rng(cfg.seed, s);
                let x = sample::sample_point(datum, cfg.field, &required, &mut rng);
                let c1 = chart_map(t1, &x).expect("witnesses forced");
                let c2 = chart_map(t2, &x).expect("witnesses forced");
                let base = c1.base.as_ref().expect("r >= 2");
                let blocks = transition_matrix(datum, t1, t2, base).expect("overlap");
                if !blocks[0].scalar.is_one() {
                    failure = Some(json!({"pair": [t1.indices(), t2.indices()], "sample": s}));
                    break 'blocks;
                }
                let moved = apply_transition_blocks(datum, &blocks, &c2.fiber).expect("aligned");
                if moved != c1.fiber {
                    failure = Some(json!({"pair": [t1.indices(), t2.indices()], "sample": s}));
                    break 'blocks;
                }
            }
        }
        records.push(
            sweep_record(
                cfg,
                "two_chart_fiber_compatibility",
                exhaustive,
                json!({}),
                failure,
            )
            .with_sampling(cfg.samples, cfg.seed),
        );
    }

    records
}

// ---------------------------------------------------------------------------
// tower
// ---------------------------------------------------------------------------

fn suite_tower(cfg: &SuiteConfig, datum: &Arc<MinimalSchubertDatum>) -> Vec<CheckRecord> {
    let (r, q) = (datum.r(), datum.q());
    let mut records = Vec::new();
    let dims = tower_dimensions(r, q).expect("config validated");

    {
        let ok = dims[0] == 0
            && dims.len() == r + 1
            && (1..=r).all(|k| dims[k] - dims[k - 1] == k * (q - 1));
        records.push(
            CheckRecord::new("tower_dimension_recurrence", base_params(cfg), ok)
                .with_witness(json!({"dims": dims})),
        );
    }

    {
        let mut failure = None;
        for (k, &dim) in dims.iter().enumerate().skip(1) {
            let stage = MinimalSchubertDatum::shared(k, q).expect("q validated");
            if dim != stage.word().len() - k {
                failure = Some(json!({"k": k}));
                break;
            }
        }
        let mut record = CheckRecord::new(
            "tower_dimension_word_length",
            base_params(cfg),
            failure.is_none(),
        )
        .with_witness(json!({"dims": dims}));
        if let Some(cx) = failure {
            record = record.with_counterexample(cx);
        }
        records.push(record);
    }

    {
        let ok = datum.c_set(r).len() == r * (q - 1) + 1;
        records.push(
            CheckRecord::new("tower_fiber_projective_dimension", base_params(cfg), ok)
                .with_witness(json!({"fiber_dim": r * (q - 1)})),
        );
    }

    records
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r: usize, q: usize, suite: Suite) -> SuiteConfig {
        SuiteConfig {
            r,
            q,
            suite,
            samples: 8,
            seed: 5,
            field: FieldSpec::Rational,
        }
    }

    #[test]
    fn all_suites_pass_on_small_data() {
        for (r, q) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let records = run_suite(&cfg(r, q, Suite::All)).unwrap();
            assert!(!records.is_empty());
            for record in &records {
                assert!(record.passed(), "({r},{q}) failed: {}", record.check);
            }
        }
    }

    #[test]
    fn lemma_suite_reports_extremal_pairings() {
        let records = run_suite(&cfg(3, 3, Suite::Lemmas)).unwrap();
        let hm = records
            .iter()
            .find(|r| r.check == "hm_pairing_closed_form")
            .unwrap();
        assert_eq!(
            hm.witness.as_ref().unwrap()["pairings"],
            serde_json::json!(["-9", "-8", "-7"])
        );
    }

    #[test]
    fn determinism_given_seed() {
        let a = run_suite(&cfg(2, 2, Suite::All)).unwrap();
        let b = run_suite(&cfg(2, 2, Suite::All)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prime_field_suites_pass() {
        let mut c = cfg(2, 2, Suite::All);
        c.field = FieldSpec::Fp(2147483647);
        let records = run_suite(&c).unwrap();
        for record in &records {
            assert!(record.passed(), "fp failed: {}", record.check);
        }
    }

    #[test]
    fn config_validation_errors() {
        assert!(matches!(
            run_suite(&cfg(2, 1, Suite::All)),
            Err(ConfigError::QTooSmall(1))
        ));
        let mut c = cfg(2, 2, Suite::All);
        c.samples = 0;
        assert!(matches!(run_suite(&c), Err(ConfigError::NoSamples)));
        assert!("bogus".parse::<Suite>().is_err());
        assert!(matches!("charts".parse::<Suite>(), Ok(Suite::Charts)));
    }
}
