//! JSON encodings of rings, elements, ideals and modules.

use comax_core::arith::Poly;
use comax_core::modules::FPModule;
use comax_core::{Ideal, Invariants, ModuleElement, RingDescriptor, RingElement, Scalar, Submodule};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\" in {v}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64().ok_or_else(|| bad(format!("{what} must be a nonnegative integer, got {v}")))
}

pub fn parse_bigint(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("\"{s}\" is not an integer"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn parse_ring(v: &Value) -> Result<RingDescriptor, CliError> {
    let kind = field(v, "type")?
        .as_str()
        .ok_or_else(|| bad("ring \"type\" must be a string"))?;
    let ring = match kind {
        "integers" => RingDescriptor::Integers,
        "modular" => RingDescriptor::Modular(as_u64(field(v, "modulus")?, "modulus")?),
        "poly" => RingDescriptor::Poly(as_u64(field(v, "p")?, "p")?),
        "product" => RingDescriptor::Product(
            field(v, "factors")?
                .as_array()
                .ok_or_else(|| bad("\"factors\" must be an array"))?
                .iter()
                .map(parse_ring)
                .collect::<Result<_, _>>()?,
        ),
        "triangular" => RingDescriptor::Triangular {
            n: as_u64(field(v, "n")?, "n")? as usize,
            base: Box::new(parse_ring(field(v, "base")?)?),
        },
        other => return Err(bad(format!("unknown ring type \"{other}\""))),
    };
    ring.validate()?;
    Ok(ring)
}

pub fn ring_json(r: &RingDescriptor) -> Value {
    match r {
        RingDescriptor::Integers => json!({"type": "integers"}),
        RingDescriptor::Modular(m) => json!({"type": "modular", "modulus": m}),
        RingDescriptor::Poly(p) => json!({"type": "poly", "p": p}),
        RingDescriptor::Product(fs) => json!({"type": "product", "factors": fs.iter().map(ring_json).collect::<Vec<_>>()}),
        RingDescriptor::Triangular { n, base } => json!({"type": "triangular", "n": n, "base": ring_json(base)}),
    }
}

fn parse_poly(v: &Value, p: u64) -> Result<Poly, CliError> {
    let coeffs: Vec<BigInt> = match v {
        Value::Array(cs) => cs.iter().map(parse_bigint).collect::<Result<_, _>>()?,
        _ => vec![parse_bigint(v)?],
    };
    let pb = BigInt::from(p);
    let reduced = coeffs
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            r.to_u64().expect("reduced coefficient")
        })
        .collect();
    Ok(Poly::new(reduced, p))
}

pub fn parse_element(ring: &RingDescriptor, v: &Value) -> Result<RingElement, CliError> {
    let e = match ring {
        RingDescriptor::Integers => RingElement::Int(parse_bigint(v)?),
        RingDescriptor::Modular(m) => {
            let mb = BigInt::from(*m);
            let x = ((parse_bigint(v)? % &mb) + &mb) % &mb;
            RingElement::Mod(x.to_u64().expect("residue"))
        }
        RingDescriptor::Poly(p) => RingElement::Poly(parse_poly(v, *p)?),
        RingDescriptor::Product(fs) => {
            let xs = v.as_array().ok_or_else(|| bad(format!("product element must be an array, got {v}")))?;
            if xs.len() != fs.len() {
                return Err(bad(format!("product element {v} has the wrong number of entries")));
            }
            RingElement::Tuple(fs.iter().zip(xs).map(|(f, x)| parse_element(f, x)).collect::<Result<_, _>>()?)
        }
        RingDescriptor::Triangular { n, base } => {
            let rows = v.as_array().ok_or_else(|| bad(format!("matrix must be an array of rows, got {v}")))?;
            if rows.len() != *n {
                return Err(bad(format!("matrix {v} must have {n} rows")));
            }
            let mut m = vec![vec![base.zero(); *n]; *n];
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
                // full rows, or only the entries on and above the diagonal
                let offset = match row.len() {
                    l if l == *n => 0,
                    l if l == n - i => i,
                    _ => return Err(bad(format!("row {i} of {v} has the wrong length"))),
                };
                for (t, x) in row.iter().enumerate() {
                    let j = t + offset;
                    let e = parse_element(base, x)?;
                    if j < i && !base.is_zero(&e) {
                        return Err(bad(format!("entry ({i},{j}) below the diagonal must be zero")));
                    }
                    m[i][j] = e;
                }
            }
            RingElement::Matrix(m)
        }
    };
    ring.check_element(&e)?;
    Ok(e)
}

pub fn element_json(e: &RingElement) -> Value {
    match e {
        RingElement::Int(v) => bigint_json(v),
        RingElement::Mod(v) => json!(v),
        RingElement::Poly(f) => json!(f.coeffs()),
        RingElement::Tuple(xs) => Value::Array(xs.iter().map(element_json).collect()),
        RingElement::Matrix(rows) => Value::Array(
            rows.iter()
                .map(|r| Value::Array(r.iter().map(element_json).collect()))
                .collect(),
        ),
    }
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Int(v) => bigint_json(v),
        Scalar::Poly(f) => json!(f.coeffs()),
    }
}

pub fn parse_ideal(ring: &RingDescriptor, v: &Value) -> Result<Ideal, CliError> {
    let obj = v.as_object().ok_or_else(|| bad(format!("ideal must be an object, got {v}")))?;
    if obj.len() != 1 {
        return Err(bad(format!("ideal {v} must have exactly one key")));
    }
    let (key, val) = obj.iter().next().unwrap();
    let ideal = match (key.as_str(), ring) {
        ("gen", RingDescriptor::Integers) | ("div" | "gen", RingDescriptor::Modular(_)) => {
            ring.basic_ideal(&Scalar::Int(parse_bigint(val)?))
        }
        ("poly", RingDescriptor::Poly(p)) => ring.basic_ideal(&Scalar::Poly(parse_poly(val, *p)?)),
        ("product", RingDescriptor::Product(fs)) => {
            let xs = val.as_array().ok_or_else(|| bad("\"product\" must be an array"))?;
            if xs.len() != fs.len() {
                return Err(bad(format!("product ideal {v} has the wrong number of factors")));
            }
            Ideal::Product(fs.iter().zip(xs).map(|(f, x)| parse_ideal(f, x)).collect::<Result<_, _>>()?)
        }
        ("tri", RingDescriptor::Triangular { n, base }) => {
            let rows = val.as_array().ok_or_else(|| bad("\"tri\" must be an array of rows"))?;
            if rows.len() != *n {
                return Err(bad(format!("triangular ideal {v} must have {n} rows")));
            }
            let mut out = Vec::with_capacity(*n);
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| bad("\"tri\" rows must be arrays"))?;
                if row.len() != n - i {
                    return Err(bad(format!("row {i} of a triangular ideal needs {} entries", n - i)));
                }
                out.push(row.iter().map(|x| parse_ideal(base, x)).collect::<Result<Vec<_>, _>>()?);
            }
            Ideal::Triangular(out)
        }
        ("generated", _) => {
            let gens = val
                .as_array()
                .ok_or_else(|| bad("\"generated\" must be an array of elements"))?
                .iter()
                .map(|x| parse_element(ring, x))
                .collect::<Result<Vec<_>, _>>()?;
            ring.ideal_generated(&gens)
        }
        (k, r) => return Err(bad(format!("ideal key \"{k}\" does not apply to {r}"))),
    };
    ring.check_ideal(&ideal)?;
    Ok(ideal)
}

/// A list of ideals, or one of the named families.
pub fn parse_ideals(ring: &RingDescriptor, v: &Value) -> Result<Vec<Ideal>, CliError> {
    match v {
        Value::String(s) if s == "diagonal-vanishing" => Ok(ring.diagonal_vanishing_ideals()?),
        Value::String(s) if s == "minimal-primes" => Ok(comax_core::rings::minimal_primes(ring)?.primes),
        Value::Array(xs) => xs.iter().map(|x| parse_ideal(ring, x)).collect(),
        _ => Err(bad(format!("ideals must be an array or a named family, got {v}"))),
    }
}

pub fn ideal_json(ring: &RingDescriptor, ideal: &Ideal) -> Value {
    match (ring, ideal) {
        (RingDescriptor::Product(fs), Ideal::Product(xs)) => {
            json!({"product": fs.iter().zip(xs).map(|(f, x)| ideal_json(f, x)).collect::<Vec<_>>()})
        }
        (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(rows)) => json!({
            "tri": rows
                .iter()
                .map(|r| r.iter().map(|x| ideal_json(base, x)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        }),
        (RingDescriptor::Modular(_), Ideal::Principal(g)) => json!({"div": scalar_json(g)}),
        (RingDescriptor::Poly(_), Ideal::Principal(g)) => json!({"poly": scalar_json(g)}),
        (_, Ideal::Principal(g)) => json!({"gen": scalar_json(g)}),
        _ => Value::String(ideal.to_string()),
    }
}

pub fn parse_module(ring: &RingDescriptor, v: &Value) -> Result<FPModule, CliError> {
    if let Some(cyc) = v.get("cyclic") {
        let ideals = parse_ideals(ring, cyc)?;
        let free = match v.get("free") {
            Some(f) => as_u64(f, "free")? as usize,
            None => 0,
        };
        let mut m = FPModule::direct_sum_of_cyclics(ring.clone(), &ideals)?;
        if free > 0 {
            m = m.direct_sum(&FPModule::free(ring.clone(), free)?)?;
        }
        return Ok(m);
    }
    let g = as_u64(field(v, "generators")?, "generators")? as usize;
    let rels = match v.get("relations") {
        None => Vec::new(),
        Some(r) => r
            .as_array()
            .ok_or_else(|| bad("\"relations\" must be an array of rows"))?
            .iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| bad("relation rows must be arrays"))?;
                if row.len() != g {
                    return Err(bad(format!("relation rows need {g} entries")));
                }
                row.iter().map(|x| parse_element(ring, x)).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(FPModule::new(ring.clone(), g, rels)?)
}

pub fn module_json(m: &FPModule) -> Value {
    json!({
        "generators": m.num_generators(),
        "relations": m.relations().iter().map(|r| r.iter().map(element_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn coords_json(e: &ModuleElement) -> Value {
    Value::Array(e.coords.iter().map(element_json).collect())
}

pub fn invariants_json(inv: &Invariants) -> Value {
    json!({
        "divisors": inv.divisors.iter().map(scalar_json).collect::<Vec<_>>(),
        "free_rank": inv.free_rank,
        "cardinality": inv.cardinality.as_ref().map(bigint_json),
    })
}

pub fn submodule_json(m: &FPModule, s: &Submodule) -> Value {
    let mut o = Map::new();
    o.insert(
        "generators".into(),
        Value::Array(m.submodule_generators(s).iter().map(coords_json).collect()),
    );
    o.insert("invariants".into(), invariants_json(&m.invariants(s)));
    Value::Object(o)
}
