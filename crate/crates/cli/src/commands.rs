use comax_core::decomp::{self, ConditionEntry, Verdict, DEFAULT_MAX_EXPONENT};
use comax_core::nilary::{self, NilaryDecomposition};
use comax_core::oracle::Budget;
use comax_core::rings;
use comax_core::torsion;
use comax_core::{Decomposition, FPModule, Ideal, PartitionOfUnity, RingDescriptor};
use serde_json::{json, Map, Value};

use crate::codec::*;
use crate::oracle_check;
use crate::{CliError, Overrides};

pub const COMMANDS: &[&str] = &[
    "decompose",
    "crt",
    "pcomp",
    "nilary",
    "gamma",
    "split",
    "check-stability",
    "verify",
    "primes",
];

type CmdResult = Result<(Value, Option<Value>), CliError>;

struct Ctx<'a> {
    job: &'a Value,
    ring: RingDescriptor,
    ov: &'a Overrides,
}

impl Ctx<'_> {
    fn module(&self) -> Result<FPModule, CliError> {
        match self.job.get("module") {
            Some(m) => parse_module(&self.ring, m),
            None => Err(CliError::Input("this command needs a \"module\"".into())),
        }
    }

    fn ideals(&self) -> Result<Vec<Ideal>, CliError> {
        match self.job.get("ideals") {
            Some(v) => parse_ideals(&self.ring, v),
            None => Err(CliError::Input("this command needs \"ideals\"".into())),
        }
    }

    fn max_exponent(&self, default: u32) -> Result<u32, CliError> {
        if let Some(k) = self.ov.max_exponent {
            return Ok(k);
        }
        match self.job.get("max_exponent") {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| CliError::Input(format!("max_exponent must be a small nonnegative integer, got {v}"))),
        }
    }

    fn oracle(&self) -> bool {
        self.ov.oracle || self.job.get("oracle").and_then(Value::as_bool).unwrap_or(false)
    }

    fn ideals_json(&self, xs: &[Ideal]) -> Value {
        Value::Array(xs.iter().map(|x| ideal_json(&self.ring, x)).collect())
    }
}

pub fn dispatch(command: &str, job: &Value, ov: &Overrides) -> CmdResult {
    let ring = parse_ring(job.get("ring").ok_or_else(|| CliError::Input("missing \"ring\"".into()))?)?;
    let cx = Ctx { job, ring, ov };
    match command {
        "decompose" => decompose(&cx),
        "crt" => crt(&cx),
        "pcomp" => pcomp(&cx),
        "nilary" => nilary(&cx),
        "gamma" => gamma(&cx),
        "split" => split(&cx),
        "check-stability" => check_stability(&cx),
        "verify" => verify(&cx),
        "primes" => primes(&cx),
        other => Err(CliError::Input(format!(
            "unknown command \"{other}\"; expected one of {}",
            COMMANDS.join(", ")
        ))),
    }
}

fn unity_json(ring: &RingDescriptor, w: &PartitionOfUnity) -> Value {
    json!({
        "ideals": w.ideals.iter().map(|x| ideal_json(ring, x)).collect::<Vec<_>>(),
        "exponents": w.exponents,
        "witnesses": w.witnesses.iter().map(element_json).collect::<Vec<_>>(),
        "verified": w.verify(ring).is_ok(),
    })
}

fn condition_json(ring: &RingDescriptor, table: &[ConditionEntry]) -> Value {
    Value::Array(
        table
            .iter()
            .map(|c| {
                json!({
                    "generator": c.generator,
                    "annihilator": ideal_json(ring, &c.annihilator),
                    "subset": c.subset,
                    "exponents": c.exponents,
                })
            })
            .collect(),
    )
}

fn decomposition_json(d: &Decomposition) -> Result<Value, CliError> {
    let m = &d.module;
    let ring = m.ring();
    let parts: Vec<Value> = d
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "index": i,
                "ideal": ideal_json(ring, &p.ideal),
                "exponent": p.exponent,
                "stabilization": p.stabilization,
                "zero": p.zero,
                "component": submodule_json(m, &p.component),
            })
        })
        .collect();
    let projections: Vec<Value> = d
        .projections
        .iter()
        .map(|ps| Value::Array(ps.iter().map(coords_json).collect()))
        .collect();
    Ok(json!({
        "module": module_json(m),
        "parts": parts,
        "partition_of_unity": unity_json(ring, &d.witness),
        "condition_table": condition_json(ring, &d.condition_table),
        "reverse_condition": condition_json(ring, &d.reverse_condition()?),
        "projections": projections,
        "verified": d.verified,
    }))
}

fn oracle_for(cx: &Ctx, m: &FPModule, f: impl FnOnce(&oracle_check::Checker) -> Result<(), CliError>) -> Result<Option<Value>, CliError> {
    if !cx.oracle() {
        return Ok(None);
    }
    oracle_check::run(m, f).map(Some)
}

fn decompose(cx: &Ctx) -> CmdResult {
    let m = cx.module()?;
    let xs = cx.ideals()?;
    let k = cx.max_exponent(DEFAULT_MAX_EXPONENT)?;
    let d = decomp::decompose(&m, &xs, k)?;
    let mut r = decomposition_json(&d)?;
    if d.parts.iter().all(|p| p.exponent == 1) {
        let certs: Vec<Value> = decomp::nontrivial_components(&m, &xs)?
            .into_iter()
            .map(|c| match c.verdict {
                Verdict::Zero => json!({"index": c.index, "verdict": "zero"}),
                Verdict::Nonzero { witness, subset } => json!({
                    "index": c.index,
                    "verdict": "nonzero",
                    "witness": coords_json(&witness),
                    "subset": subset,
                }),
            })
            .collect();
        r["certificates"] = Value::Array(certs);
    }
    let oracle = oracle_for(cx, &m, |c| c.check_decomposition(&d))?;
    Ok((r, oracle))
}

fn crt(cx: &Ctx) -> CmdResult {
    let m = cx.module()?;
    let xs = cx.ideals()?;
    let q = decomp::decompose_crt(&m, &xs)?;
    let r = json!({
        "intersection": ideal_json(&cx.ring, &q.intersection),
        "quotient_taken": q.reduced_by.is_some(),
        "reduced_by": q.reduced_by.as_ref().map(|s| submodule_json(&m, s)),
        "decomposition": decomposition_json(&q.decomposition)?,
    });
    let oracle = oracle_for(cx, &q.decomposition.module, |c| c.check_decomposition(&q.decomposition))?;
    Ok((r, oracle))
}

fn pcomp(cx: &Ctx) -> CmdResult {
    let m = cx.module()?;
    let d = decomp::p_component_decompose(&m)?;
    let r = decomposition_json(&d)?;
    let oracle = oracle_for(cx, &m, |c| c.check_decomposition(&d))?;
    Ok((r, oracle))
}

fn nilary_json(ring: &RingDescriptor, nd: &NilaryDecomposition) -> Value {
    let ideals = |xs: &[Ideal]| xs.iter().map(|x| ideal_json(ring, x)).collect::<Vec<_>>();
    json!({
        "ideal": ideal_json(ring, &nd.ideal),
        "factors": ideals(&nd.factors),
        "pseudo_radicals": ideals(&nd.pseudo_radicals),
        "exponents": nd.exponents,
        "minimal": nd.minimal,
        "radicals_comaximal": nd.radicals_comaximal,
    })
}

fn nilary(cx: &Ctx) -> CmdResult {
    let ring = &cx.ring;
    let mut r = Map::new();
    let mut oracle = None;
    if let Some(v) = cx.job.get("ideal") {
        let ideal = parse_ideal(ring, v)?;
        let nd = nilary::minimal_nilary_decomposition(ring, &ideal)?;
        if cx.oracle() {
            oracle = Some(oracle_check::check_radicals(ring, &nd)?);
        }
        r.insert("ideal_decomposition".into(), nilary_json(ring, &nd));
    }
    if cx.job.get("module").is_some() {
        let m = cx.module()?;
        let nm = nilary::nilary_module_decompose(&m)?;
        r.insert(
            "module_decomposition".into(),
            json!({
                "primes": cx.ideals_json(&nm.primes),
                "exponents": nm.exponents,
                "generators": nm.generator_decompositions.iter().map(|nd| nilary_json(ring, nd)).collect::<Vec<_>>(),
                "decomposition": decomposition_json(&nm.decomposition)?,
            }),
        );
        if let Some(o) = oracle_for(cx, &m, |c| c.check_decomposition(&nm.decomposition))? {
            oracle = Some(o);
        }
    }
    if r.is_empty() {
        return Err(CliError::Input("nilary needs an \"ideal\" or a \"module\"".into()));
    }
    Ok((Value::Object(r), oracle))
}

fn gamma(cx: &Ctx) -> CmdResult {
    let m = cx.module()?;
    let xs = cx.ideals()?;
    let rep = torsion::torsion_report(&m, &xs, false)?;
    let r = json!({
        "ideals": cx.ideals_json(&xs),
        "gamma": submodule_json(&m, &rep.gamma),
        "rho": submodule_json(&m, &rep.rho),
        "pretorsion_free": rep.pretorsion_free,
        "gamma_equals_rho": rep.gamma == rep.rho,
    });
    let oracle = oracle_for(cx, &m, |c| c.check_gamma(&xs, &rep.gamma, &rep.rho))?;
    Ok((r, oracle))
}

fn split(cx: &Ctx) -> CmdResult {
    let m = cx.module()?;
    let xs = cx.ideals()?;
    let (t, f) = torsion::torsion_split(&m, &xs)?;
    let r = json!({
        "ideals": cx.ideals_json(&xs),
        "torsion": submodule_json(&m, &t),
        "complement": submodule_json(&m, &f),
    });
    let oracle = oracle_for(cx, &m, |c| c.check_split(&xs, &t, &f))?;
    Ok((r, oracle))
}

fn check_stability(cx: &Ctx) -> CmdResult {
    let xs = cx.ideals()?;
    let bound = cx.max_exponent(3)?;
    let rep = torsion::stability_condition_check(&cx.ring, &xs, bound, &Budget::from_env())?;
    let r = json!({
        "ideals": cx.ideals_json(&xs),
        "right_ideal_count": rep.right_ideal_count,
        "essential_count": rep.essential_count,
        "exponent_bound": rep.exponent_bound,
        "holds": rep.holds,
        "failure": rep.failure.map(|(s, e)| json!({"subset": s, "exponents": e})),
        "socle_condition": rep.socle_condition,
        "idempotent_in_socle": rep.idempotent_in_socle,
    });
    Ok((r, None))
}

fn verify(cx: &Ctx) -> CmdResult {
    let ring = &cx.ring;
    let xs = cx.ideals()?;
    let exponents: Vec<u32> = match cx.job.get("exponents") {
        None => vec![1; xs.len()],
        Some(v) => serde_json::from_value(v.clone())
            .map_err(|e| CliError::Input(format!("exponents must be a list of integers: {e}")))?,
    };
    if exponents.len() != xs.len() {
        return Err(CliError::Input("one exponent per ideal is required".into()));
    }
    ring.require_comaximal(&xs)?;
    let unity = match cx.job.get("witnesses") {
        Some(Value::Array(ws)) => {
            let witnesses = ws.iter().map(|w| parse_element(ring, w)).collect::<Result<Vec<_>, _>>()?;
            if witnesses.len() != xs.len() {
                return Err(CliError::Input("one witness per ideal is required".into()));
            }
            let w = PartitionOfUnity {
                ideals: xs.clone(),
                exponents: exponents.clone(),
                witnesses,
            };
            if let Err(e) = w.verify(ring) {
                return Err(CliError::Core(comax_core::Error::ConditionNotEstablished {
                    generator: 0,
                    reason: format!("supplied witnesses are not a partition of unity ({e})"),
                }));
            }
            w
        }
        Some(v) => return Err(CliError::Input(format!("witnesses must be an array, got {v}"))),
        None => {
            let w = ring.partition_of_unity(&xs, &exponents)?;
            w.verify(ring)?;
            w
        }
    };
    let mut r = Map::new();
    r.insert("comaximal".into(), json!(true));
    r.insert("partition_of_unity".into(), unity_json(ring, &unity));
    let mut oracle = None;
    if cx.job.get("module").is_some() {
        let m = cx.module()?;
        let d = decomp::decompose(&m, &xs, cx.max_exponent(DEFAULT_MAX_EXPONENT)?)?;
        r.insert("condition_table".into(), condition_json(ring, &d.condition_table));
        r.insert("reverse_condition".into(), condition_json(ring, &d.reverse_condition()?));
        r.insert("verified".into(), json!(d.verified));
        oracle = oracle_for(cx, &m, |c| c.check_decomposition(&d))?;
    }
    Ok((Value::Object(r), oracle))
}

fn primes(cx: &Ctx) -> CmdResult {
    let ring = &cx.ring;
    let mp = rings::minimal_primes(ring)?;
    let mut r = Map::new();
    r.insert("minimal_primes".into(), cx.ideals_json(&mp.primes));
    r.insert("pairwise_comaximal".into(), json!(mp.pairwise_comaximal));
    if ring.is_finite() {
        let rep = rings::check_prime_comaximality_equivalence(ring, &Budget::from_env())?;
        r.insert(
            "enumeration".into(),
            json!({
                "prime_count": rep.prime_count,
                "minimal_prime_count": rep.minimal_prime_count,
                "unique_minimal_below_each_prime": rep.unique_minimal_below_each_prime,
                "minimal_primes_comaximal": rep.minimal_primes_comaximal,
                "equivalent": rep.equivalent,
                "structured_agrees": rep.structured_agrees,
            }),
        );
        if !rep.structured_agrees {
            return Err(CliError::OracleMismatch("minimal primes differ from enumeration".into()));
        }
    }
    Ok((Value::Object(r), None))
}
