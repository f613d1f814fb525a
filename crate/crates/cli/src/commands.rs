//! One function per subcommand. Each returns its result fields and any
//! oracle comparisons; `run` in the crate root assembles the report.

use std::collections::BTreeSet;

use acyclo_core::census::{
    check_budget, ehrhart, hyperforest_bound, hypertree_bound, hypertree_census,
    hypertree_census_parallel, kalai_formula, zonotope_dimension, CensusReport,
};
use acyclo_core::complex::{binomial, complete_hypergraph, cycle_space_dim};
use acyclo_core::faces::{
    enumerate_vertices, enumerate_vertices_shard, face_lattice, is_acyclic_hypertournament,
    is_partition_induced, Vertex,
};
use acyclo_core::oracle::{
    ehrhart_fit_check, kirchhoff_tree_count, lattice_points_direct, signpattern_bruteforce,
    volume_bruteforce, BRUTEFORCE_EDGE_CAP, DEFAULT_GENERATOR_CAP,
};
use acyclo_core::{
    BigInt, Error, Hypergraph, Hypertournament, OracleReport, ShardSpec, SignPattern,
};

use crate::config::{Command, RunConfig};
use crate::report::Value;

pub type Fields = Vec<(String, Value)>;

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub fields: Fields,
    pub oracles: Vec<OracleReport>,
    /// Built-in theorem checks that failed, by name.
    pub failed_checks: Vec<String>,
}

impl Outcome {
    fn put(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.push((key.to_string(), v.into()));
    }

    /// Records a theorem-side equality as a boolean field.
    fn check(&mut self, key: &str, holds: bool) {
        self.put(key, holds);
        if !holds {
            self.failed_checks.push(key.to_string());
        }
    }
}

pub fn dispatch(cmd: Command, h: &Hypergraph, cfg: &RunConfig) -> Result<Outcome, Error> {
    let mut out = Outcome::default();
    match cmd {
        Command::Volume => volume(h, cfg, &mut out)?,
        Command::Ehrhart => ehrhart_cmd(h, cfg, &mut out)?,
        Command::LatticePoints => lattice_points(h, cfg, &mut out)?,
        Command::KalaiCensus => kalai(h, cfg, &mut out)?,
        Command::DualityCheck => duality(h, cfg, &mut out)?,
        Command::Vertices => vertices(h, cfg, &mut out)?,
        Command::Faces => faces(h, cfg, &mut out)?,
        Command::Facets => facets(h, cfg, &mut out)?,
        Command::TournamentCheck => tournaments(h, cfg, &mut out)?,
        Command::Oracle => oracle_suite(h, cfg, &mut out)?,
    }
    Ok(out)
}

fn census(h: &Hypergraph, cfg: &RunConfig) -> Result<CensusReport, Error> {
    check_budget("hypertree census", hypertree_bound(h), cfg.budget)?;
    Ok(match cfg.shard {
        Some(s) => hypertree_census(h, s),
        None => {
            let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
            hypertree_census_parallel(h, 4 * workers)
        }
    })
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn volume(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let c = census(h, cfg)?;
    out.put("dimension", zonotope_dimension(h));
    out.put("volume", c.weighted_volume.clone());
    out.put("hypertree_count", c.hypertree_count);
    if cfg.oracle {
        if h.d() == 1 {
            out.oracles.push(OracleReport::compare(
                "volume vs spanning tree count",
                &c.weighted_volume,
                kirchhoff_tree_count(h)?,
            ));
        }
        out.oracles.push(OracleReport::compare(
            "volume vs brute-force torsion sum",
            &c.weighted_volume,
            volume_bruteforce(h, cfg.budget)?,
        ));
    }
    Ok(())
}

fn ehrhart_cmd(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    check_budget("hyperforest enumeration", hyperforest_bound(h), cfg.budget)?;
    let p = ehrhart(h);
    out.put("degree", p.degree());
    out.put("coefficients", Value::bigs(&p.coefficients));
    out.put("polynomial", p.to_string());
    out.put("lattice_points", p.coefficient_sum());
    if cfg.oracle {
        out.oracles
            .push(ehrhart_fit_check(h, DEFAULT_GENERATOR_CAP)?);
    }
    Ok(())
}

fn lattice_points(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    check_budget("hyperforest enumeration", hyperforest_bound(h), cfg.budget)?;
    let count = ehrhart(h).coefficient_sum();
    out.put("lattice_points", count.clone());
    if cfg.oracle {
        out.oracles.push(OracleReport::compare(
            "lattice points vs direct count",
            count,
            lattice_points_direct(h, 1, DEFAULT_GENERATOR_CAP)?,
        ));
    }
    Ok(())
}

fn histogram(c: &CensusReport) -> Value {
    Value::List(
        c.torsion_histogram
            .iter()
            .map(|(order, &count)| {
                Value::record([
                    ("order", Value::Big(order.clone())),
                    ("count", Value::from(count)),
                ])
            })
            .collect(),
    )
}

fn kalai(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let c = census(h, cfg)?;
    out.put("hypertree_count", c.hypertree_count);
    out.put("weighted_volume", c.weighted_volume.clone());
    out.put("kalai_sum", c.kalai_sum.clone());
    out.put("torsion_histogram", histogram(&c));
    out.check("histogram_consistent", c.is_consistent());
    if h.is_complete() && cfg.shard.is_none() {
        let formula = kalai_formula(h.n(), h.d());
        out.put("kalai_formula", formula.clone());
        out.check("kalai_sum_matches_formula", c.kalai_sum == formula);
        if cfg.oracle {
            out.oracles.push(OracleReport::compare(
                "kalai sum vs closed form",
                &c.kalai_sum,
                formula,
            ));
            out.oracles.push(OracleReport::compare(
                "weighted volume vs brute-force torsion sum",
                &c.weighted_volume,
                volume_bruteforce(h, cfg.budget)?,
            ));
        }
    }
    Ok(())
}

fn duality(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let (n, d) = (h.n(), h.d());
    if !h.is_complete() {
        return Err(Error::Domain(
            "duality-check needs a complete hypergraph".into(),
        ));
    }
    if n < d + 3 {
        return Err(Error::Domain(format!(
            "duality needs n >= d + 3, got n = {n}, d = {d}"
        )));
    }
    let dual = complete_hypergraph(n, n - d - 2)?;
    let primal_census = census(h, cfg)?;
    let dual_census = census(&dual, cfg)?;
    out.put("dual_d", n - d - 2);
    out.put("dimension", cycle_space_dim(n, d)?);
    out.put("dual_dimension", cycle_space_dim(n, n - d - 2)?);
    out.put("volume", primal_census.weighted_volume.clone());
    out.put("dual_volume", dual_census.weighted_volume.clone());
    out.check(
        "volumes_equal",
        primal_census.weighted_volume == dual_census.weighted_volume,
    );
    if cfg.oracle {
        out.oracles.push(OracleReport::compare(
            "volume vs brute-force torsion sum",
            &primal_census.weighted_volume,
            volume_bruteforce(h, cfg.budget)?,
        ));
        out.oracles.push(OracleReport::compare(
            "dual volume vs brute-force torsion sum",
            &dual_census.weighted_volume,
            volume_bruteforce(&dual, cfg.budget)?,
        ));
    }
    Ok(())
}

fn vertex_value(v: &Vertex) -> Value {
    Value::record([
        ("pattern", Value::from(v.pattern.to_string())),
        ("point", Value::bigs(&v.point)),
    ])
}

fn pattern_set_report(
    quantity: &str,
    theorem: &BTreeSet<SignPattern>,
    oracle: &BTreeSet<SignPattern>,
) -> OracleReport {
    let mut r = OracleReport::compare(quantity, theorem.len(), oracle.len());
    r.agreement = theorem == oracle;
    r
}

fn vertices(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let vs = enumerate_vertices_shard(h, cfg.budget, cfg.shard.unwrap_or_else(ShardSpec::whole))?;
    out.put("vertex_count", vs.len());
    out.put(
        "vertices",
        Value::List(vs.iter().map(vertex_value).collect()),
    );
    if cfg.oracle {
        oracle_vertex_checks(h, &vs, out)?;
    }
    Ok(())
}

fn oracle_vertex_checks(h: &Hypergraph, vs: &[Vertex], out: &mut Outcome) -> Result<(), Error> {
    let ours: BTreeSet<SignPattern> = vs.iter().map(|v| v.pattern.clone()).collect();
    let brute = signpattern_bruteforce(h)?;
    out.oracles.push(pattern_set_report(
        "vertex patterns vs brute force",
        &ours,
        &brute,
    ));
    if h.d() == 1 && h.is_complete() {
        out.oracles.push(OracleReport::compare(
            "vertex count vs n!",
            vs.len(),
            factorial(h.n()),
        ));
    }
    Ok(())
}

fn faces(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let lattice = face_lattice(h, cfg.budget)?;
    let f = lattice.f_vector();
    out.put("dimension", lattice.dimension);
    out.put("f_vector", Value::nums(f.iter().copied()));
    out.put(
        "faces",
        Value::List(
            lattice
                .faces
                .iter()
                .map(|face| {
                    Value::record([
                        ("pattern", Value::from(face.pattern.to_string())),
                        ("dimension", Value::from(face.dimension)),
                    ])
                })
                .collect(),
        ),
    );
    if cfg.oracle {
        let brute = signpattern_bruteforce(h)?;
        out.oracles.push(OracleReport::compare(
            "vertex count vs brute force",
            f[0],
            brute.len(),
        ));
    }
    Ok(())
}

fn facets(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let lattice = face_lattice(h, cfg.budget)?;
    let Some(k) = lattice.dimension.checked_sub(1) else {
        out.put("dimension", 0usize);
        out.put("facet_count", 0usize);
        out.put("facets", Value::List(Vec::new()));
        return Ok(());
    };
    let complete = h.is_complete();
    let mut rows = Vec::new();
    let mut all_induced = true;
    for (i, face) in lattice.faces.iter().enumerate() {
        if face.dimension != k {
            continue;
        }
        let mut fields = vec![
            ("pattern".to_string(), Value::from(face.pattern.to_string())),
            (
                "vertex_count".to_string(),
                Value::from(lattice.vertices_of(i).len()),
            ),
        ];
        if complete {
            let induced = is_partition_induced(h, &face.pattern);
            all_induced &= induced;
            fields.push(("partition_induced".to_string(), Value::from(induced)));
        }
        rows.push(Value::Record(fields));
    }
    let count = rows.len();
    out.put("dimension", lattice.dimension);
    out.put("facet_count", count);
    if complete {
        out.put("all_partition_induced", all_induced);
    }
    out.put("facets", Value::List(rows));
    if cfg.oracle && complete && h.d() == 1 {
        // facets of the permutohedron are the proper nonempty vertex subsets
        out.oracles.push(OracleReport::compare(
            "facet count vs 2^n - 2",
            count,
            (BigInt::from(1) << h.n()) - 2,
        ));
    }
    Ok(())
}

fn tournaments(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    if !h.is_complete() {
        return Err(Error::Domain(
            "tournament-check needs a complete hypergraph".into(),
        ));
    }
    let (n, d, m) = (h.n(), h.d(), h.edge_count());
    let total = binomial(m, 0) << m;
    check_budget("hypertournament enumeration", total.clone(), cfg.budget)?;
    let mut acyclic = BTreeSet::new();
    for bits in 0..1u64 << m {
        let t = Hypertournament::from_bits(n, d, bits)?;
        if is_acyclic_hypertournament(&t) {
            acyclic.insert(t.to_sign_pattern());
        }
    }
    let vs = enumerate_vertices(h, cfg.budget)?;
    let vertex_patterns: BTreeSet<SignPattern> = vs.iter().map(|v| v.pattern.clone()).collect();
    out.put("orientations", BigInt::from(total));
    out.put("acyclic_count", acyclic.len());
    out.put("vertex_count", vs.len());
    out.check("bijection", acyclic == vertex_patterns);
    if cfg.oracle {
        oracle_vertex_checks(h, &vs, out)?;
    }
    Ok(())
}

/// Every oracle that applies to `h` within its cap; the rest are listed
/// as skipped.
fn oracle_suite(h: &Hypergraph, cfg: &RunConfig, out: &mut Outcome) -> Result<(), Error> {
    let mut skipped: Vec<Value> = Vec::new();
    let c = census(h, cfg)?;

    if h.d() == 1 {
        out.oracles.push(OracleReport::compare(
            "volume vs spanning tree count",
            &c.weighted_volume,
            kirchhoff_tree_count(h)?,
        ));
    } else {
        skipped.push("spanning tree count (needs d = 1)".into());
    }

    match volume_bruteforce(h, cfg.budget) {
        Ok(v) => out.oracles.push(OracleReport::compare(
            "volume vs brute-force torsion sum",
            &c.weighted_volume,
            v,
        )),
        Err(Error::Budget { .. }) => skipped.push("brute-force volume (over budget)".into()),
        Err(e) => return Err(e),
    }

    if h.edge_count() <= DEFAULT_GENERATOR_CAP {
        check_budget("hyperforest enumeration", hyperforest_bound(h), cfg.budget)?;
        let count = ehrhart(h).coefficient_sum();
        out.oracles.push(OracleReport::compare(
            "lattice points vs direct count",
            count,
            lattice_points_direct(h, 1, DEFAULT_GENERATOR_CAP)?,
        ));
        out.oracles
            .push(ehrhart_fit_check(h, DEFAULT_GENERATOR_CAP)?);
    } else {
        skipped.push(
            format!("direct lattice points (more than {DEFAULT_GENERATOR_CAP} edges)").into(),
        );
    }

    if h.edge_count() <= BRUTEFORCE_EDGE_CAP {
        let vs = enumerate_vertices(h, cfg.budget)?;
        oracle_vertex_checks(h, &vs, out)?;
    } else {
        skipped.push(
            format!("brute-force sign patterns (more than {BRUTEFORCE_EDGE_CAP} edges)").into(),
        );
    }

    out.put("volume", c.weighted_volume);
    out.put("oracles_run", out.oracles.len());
    out.put(
        "skipped",
        Value::List(
            skipped
                .into_iter()
                .map(|s| Value::record([("oracle", s)]))
                .collect(),
        ),
    );
    Ok(())
}
