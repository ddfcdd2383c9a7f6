//! One function per subcommand, each returning the input echo and the result as JSON.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use redei_core::classify;
use redei_core::classify::{
    classify_eps2, extend_search, predict_n, standard_conic, trichotomy, Extension, NStructure,
    QuadricKind,
};
use redei_core::directions::{determined_directions, empty_lines_through};
use redei_core::pgeo::{
    build_t2star, conic_plus_nucleus, denniston_arc, extend_partial_ovoid, random_partial_ovoid,
    verify_pg_axioms, Arc, T2Star,
};
use redei_core::redei::{build_f_surface, tangent_point, verify_star_all};
use redei_core::{AffineSet, Gf, Point, Subspace};

use crate::{ArcSpec, CliError, GlobalOpts, Outcome, PgOpts, PointFile, Target};

/// Largest `q^n` for which every tuple `x` is checked.
const MAX_STAR_TUPLES: usize = 1 << 16;
/// Ovoid completions and chains listed in full.
const MAX_CERTIFICATES: usize = 10;

fn codes(p: &Point) -> Vec<u32> {
    p.codes()
}

fn point_list(pts: &[Point]) -> Value {
    pts.iter().map(codes).collect::<Vec<_>>().into()
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": point_list(&s.basis()) })
}

fn load(global: &GlobalOpts) -> Result<(AffineSet, Value), CliError> {
    let path = global
        .points
        .as_ref()
        .ok_or_else(|| CliError::Usage("--points FILE is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let u = PointFile::from_json(&text)?.to_set(global.field, global.dim)?;
    let echo = serde_json::to_value(PointFile::from_set(&u)).expect("point file serializes");
    Ok((u, echo))
}

pub fn analyze(global: &GlobalOpts) -> Result<Outcome, CliError> {
    let (u, echo) = load(global)?;
    let report = determined_directions(&u);
    let mut violations = Vec::new();
    let mut empty_lines = Vec::new();
    if u.eps() >= 0 {
        for alpha in &report.non_determined {
            let k = empty_lines_through(&u, alpha)?.len();
            if k as i64 != u.eps() {
                violations.push(format!(
                    "direction {:?} has {k} empty lines, expected {}",
                    alpha.codes(),
                    u.eps()
                ));
            }
            empty_lines.push(k);
        }
    }
    Ok(Outcome {
        input: json!({ "points": echo }),
        result: json!({
            "size": u.len(),
            "eps": u.eps(),
            "num_determined": report.determined.len(),
            "num_non_determined": report.non_determined.len(),
            "determined": point_list(&report.determined),
            "non_determined": point_list(&report.non_determined),
            "empty_lines": empty_lines,
        }),
        violations,
    })
}

pub fn derive_f(global: &GlobalOpts, expand: bool) -> Result<Outcome, CliError> {
    let (u, echo) = load(global)?;
    let f = build_f_surface(&u)?;
    let monomials: Vec<Value> = f
        .poly()
        .terms()
        .map(|(m, c)| json!({ "exp": m.exps(), "coef": c.code() }))
        .collect();
    let tuples = (u.field().q() as usize).checked_pow(u.dim() as u32);
    let mut violations = Vec::new();
    let (checked, star_ok, splits) = match tuples {
        Some(t) if t <= MAX_STAR_TUPLES => {
            let s = verify_star_all(&u)?;
            for x in &s.failures {
                violations.push(format!(
                    "product identity fails at x = {:?}",
                    x.iter().map(|c| c.code()).collect::<Vec<_>>()
                ));
            }
            (
                json!(s.checked),
                json!(s.failures.is_empty()),
                json!(s.splits),
            )
        }
        _ => (Value::Null, Value::Null, Value::Null),
    };
    let mut result = json!({
        "eps": u.eps(),
        "f_monomials": monomials,
        "qualifying_x_checked": checked,
        "star_ok": star_ok,
        "splitting_x": splits,
    });
    if expand {
        result["f_expanded"] = json!(f.poly().display().to_string());
    }
    Ok(Outcome {
        input: json!({ "points": echo, "expand": expand }),
        result,
        violations,
    })
}

fn kind_name(k: QuadricKind) -> &'static str {
    match k {
        QuadricKind::TwoHyperplanes { repeated: false } => "two-hyperplanes",
        QuadricKind::TwoHyperplanes { repeated: true } => "repeated-hyperplane",
        QuadricKind::ConicCone => "conic-cone",
        QuadricKind::HyperbolicCone => "hyperbolic-cone",
        QuadricKind::Other => "other",
    }
}

fn n_structure_json(s: &NStructure) -> Value {
    match s {
        NStructure::Extendable { points } => {
            json!({ "type": "extendable", "points": point_list(points) })
        }
        NStructure::CollinearLine {
            line,
            members,
            secants,
            tangents,
            bound,
        } => json!({
            "type": "collinear",
            "line": subspace_json(line),
            "members": point_list(members),
            "secants": secants,
            "tangents": tangents,
            "bound": bound,
        }),
        NStructure::PlanarConic {
            plane,
            coefficients,
            members,
        } => json!({
            "type": "conic",
            "plane": subspace_json(plane),
            "coefficients": coefficients.iter().map(|c| c.code()).collect::<Vec<_>>(),
            "members": point_list(members),
        }),
        NStructure::Unpredicted => json!({ "type": "unpredicted" }),
    }
}

pub fn classify(global: &GlobalOpts) -> Result<Outcome, CliError> {
    let (u, echo) = load(global)?;
    let gf = u.field();
    let nd = determined_directions(&u).non_determined;
    let ext = extend_search(&u)?;
    let mut violations = Vec::new();
    let extensions: Value = match &ext.outcome {
        Extension::Complete => json!({ "type": "complete" }),
        Extension::Unconstrained => json!({ "type": "unconstrained" }),
        Extension::Searched {
            candidates,
            completions,
        } => json!({
            "type": "searched",
            "candidates": point_list(candidates),
            "num_completions": completions.len(),
            "completions": completions.iter().take(MAX_CERTIFICATES).map(|c| point_list(c)).collect::<Vec<_>>(),
        }),
    };
    let mut result = json!({
        "eps": u.eps(),
        "non_determined": point_list(&nd),
        "extendable": ext.is_extendable(),
        "maximal": ext.is_maximal(),
        "extensions": extensions,
        "quadric_class": Value::Null,
        "n_structure": Value::Null,
        "trichotomy": Value::Null,
    });
    if u.eps() == 2 && !nd.is_empty() {
        let f = build_f_surface(&u)?;
        let qc = classify_eps2(&f)?;
        result["quadric_class"] = json!({
            "kind": kind_name(qc.kind),
            "vertex": subspace_json(&qc.vertex),
            "factors": qc.factors.iter().map(|h| h.codes()).collect::<Vec<_>>(),
            "num_points": qc.num_points,
            "base_size": qc.base_size,
        });
        result["n_structure"] = n_structure_json(&predict_n(&qc, &f)?);
        if u.dim() >= 3 {
            let t = trichotomy(&u)?;
            if t.case.is_none() {
                violations.push("set is neither extendable, collinear nor conic".into());
            }
            if !t.prediction_holds {
                violations.push("non-determined directions escape the quadric prediction".into());
            }
            result["trichotomy"] = json!({
                "case": t.case.map(|c| format!("{c:?}").to_lowercase()),
                "prediction_holds": t.prediction_holds,
            });
        }
    }
    let eps = u.eps();
    if eps >= 2 && eps < gf.q() as i64 && !nd.is_empty() && u.dim() <= 4 {
        let f = build_f_surface(&u)?;
        let mut tangency = Vec::new();
        for alpha in &nd {
            let p = tangent_point(gf, f.poly(), &alpha.dual())?;
            if p.is_none() {
                violations.push(format!(
                    "[{:?}] is not a tangent hyperplane of f",
                    alpha.codes()
                ));
            }
            tangency
                .push(json!({ "direction": alpha.codes(), "tangent_at": p.map(|p| p.codes()) }));
        }
        result["tangency"] = tangency.into();
    }
    Ok(Outcome {
        input: json!({ "points": echo }),
        result,
        violations,
    })
}

pub fn search_maximal(
    global: &GlobalOpts,
    q: u32,
    target: Target,
    size: Option<usize>,
) -> Result<Outcome, CliError> {
    let gf = field_of_order(q)?;
    let n = 3;
    let size = size.unwrap_or((q * q) as usize - 2);
    let target_pts = match target {
        Target::Conic => standard_conic(&gf),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let start = Instant::now();
    let limit = Duration::from_secs(global.budget);
    let res = classify::search_maximal(&gf, n, &target_pts, size, &mut rng, || {
        start.elapsed() < limit
    })?;
    let mut violations = Vec::new();
    let found = match &res.found {
        Some(u) => {
            let nd = determined_directions(u).non_determined;
            if nd != target_pts || extend_search(u)?.is_extendable() {
                violations.push("search returned a set that fails its own certificate".into());
            }
            let case = if u.eps() == 2 {
                trichotomy(u)?.case.map(|c| format!("{c:?}").to_lowercase())
            } else {
                None
            };
            json!({
                "points": serde_json::to_value(PointFile::from_set(u)).expect("serializes"),
                "non_determined": point_list(&nd),
                "trichotomy_case": case,
            })
        }
        None => Value::Null,
    };
    Ok(Outcome {
        input: json!({
            "q": q,
            "target": target,
            "size": size,
            "seed": global.seed,
            "budget": global.budget,
        }),
        result: json!({
            "target_points": point_list(&target_pts),
            "found": found,
            "nodes": res.nodes,
            "exhausted": res.exhausted,
        }),
        violations,
    })
}

fn field_of_order(q: u32) -> Result<Gf, CliError> {
    for p in 2..=q {
        if q % p == 0 {
            let mut h = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                h += 1;
            }
            if r != 1 {
                break;
            }
            return Ok(Gf::new(p, h)?);
        }
    }
    Err(CliError::Usage(format!("{q} is not a prime power")))
}

fn build_arc(opts: &PgOpts) -> Result<Arc, CliError> {
    let gf = field_of_order(opts.q)?;
    Ok(match opts.arc {
        ArcSpec::Hyperoval => conic_plus_nucleus(&gf)?,
        ArcSpec::Denniston(d) => denniston_arc(&gf, d)?,
    })
}

fn pg_input(opts: &PgOpts) -> Value {
    json!({ "q": opts.q, "arc": opts.arc })
}

fn t2star(opts: &PgOpts) -> Result<T2Star, CliError> {
    Ok(build_t2star(&build_arc(opts)?)?)
}

pub fn pg_build(opts: &PgOpts) -> Result<Outcome, CliError> {
    let t = t2star(opts)?;
    let params = t.params();
    Ok(Outcome {
        input: pg_input(opts),
        result: json!({
            "arc_points": point_list(t.arc().points()),
            "arc_degree": t.arc().degree(),
            "num_points": t.geometry().num_points(),
            "num_lines": t.geometry().num_lines(),
            "s": params.s,
            "t": params.t,
            "alpha": params.alpha,
        }),
        violations: Vec::new(),
    })
}

pub fn pg_verify(opts: &PgOpts) -> Result<Outcome, CliError> {
    let t = t2star(opts)?;
    let (result, violations) = match verify_pg_axioms(t.geometry()) {
        Ok(p) => {
            let mut v = Vec::new();
            if p != t.params() {
                v.push(format!(
                    "axioms give {p:?}, construction expects {:?}",
                    t.params()
                ));
            }
            (json!({ "s": p.s, "t": p.t, "alpha": p.alpha }), v)
        }
        Err(e) => (
            json!({ "violation": format!("{e:?}") }),
            vec![format!("{e:?}")],
        ),
    };
    Ok(Outcome {
        input: pg_input(opts),
        result,
        violations,
    })
}

pub fn pg_ovoid_search(
    global: &GlobalOpts,
    opts: &PgOpts,
    deficiency: usize,
    trials: usize,
) -> Result<Outcome, CliError> {
    let t = t2star(opts)?;
    let params = t.params();
    let full = params.ovoid_size();
    if deficiency > full {
        return Err(CliError::Usage(format!(
            "deficiency exceeds the ovoid size {full}"
        )));
    }
    let size = full - deficiency;
    let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
    let mut generated = 0;
    let mut extendable = 0;
    let mut in_regime = 0;
    let mut cross_checked = 0;
    let mut chains = Vec::new();
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    for _ in 0..trials {
        let Some(b) = random_partial_ovoid(t.geometry(), size, &mut rng, 100) else {
            continue;
        };
        generated += 1;
        let ext = extend_partial_ovoid(&t, &b, 2)?;
        if let Some(u) = ext.unique_in_regime {
            in_regime += 1;
            if !u {
                violations.push(format!(
                    "partial ovoid {:?} does not extend uniquely",
                    b.points()
                ));
            }
        }
        if let Some(ok) = ext.cross_check_ok {
            cross_checked += 1;
            if !ok {
                violations.push(format!("direction cross-check fails for {:?}", b.points()));
            }
        }
        if ext.is_extendable() {
            extendable += 1;
            if chains.len() < MAX_CERTIFICATES {
                chains.push(json!({ "partial": b.points(), "completion": ext.chain }));
            }
        } else {
            witnesses.push(json!({ "partial": b.points(), "candidates": ext.candidates }));
        }
    }
    Ok(Outcome {
        input: json!({
            "q": opts.q,
            "arc": opts.arc,
            "deficiency": deficiency,
            "trials": trials,
            "seed": global.seed,
        }),
        result: json!({
            "s": params.s,
            "t": params.t,
            "alpha": params.alpha,
            "ovoid_size": full,
            "partial_size": size,
            "generated": generated,
            "extendable": extendable,
            "in_unique_regime": in_regime,
            "cross_checked": cross_checked,
            "extension_chains": chains,
            "non_extendable_witnesses": witnesses,
        }),
        violations,
    })
}
