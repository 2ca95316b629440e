use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use simflow_core::dual::{max_flow_shortest_path, min_cut_via_min_cost_flow};
use simflow_core::flow::{
    brute_max_flow, brute_min_combinatorial_cut, find_supporting_cochain, flow_violation,
    gamma_cut_violation, is_combinatorial_cut, max_flow_lp, min_cut_lp,
    verify_directed_combinatorial_cut, FlowNetwork, FlowResult,
};
use simflow_core::ford_fulkerson::{max_flow_ff, FfOptions};
use simflow_core::generators::{self, InstanceBundle};
use simflow_core::{Chain, Cochain, Rational};

use crate::args::{
    BruteArgs, BruteKind, CutMethod, FlowMethod, GenArgs, MaxflowArgs, MincutArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::format::{read_instance, to_json, unq, Q};

/// Default cut size for the opportunistic comparison in `mincut`.
const COMPARE_MAX_SIZE: usize = 4;

/// What a successful command prints: one JSON object on stdout and
/// diagnostics on stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub summary: String,
    pub warnings: Vec<String>,
}

fn s(r: &Rational) -> String {
    r.to_string()
}

fn support(v: &[Rational]) -> Vec<usize> {
    (0..v.len()).filter(|&i| !v[i].is_zero()).collect()
}

fn weight(set: &[usize], w: &[Rational]) -> Rational {
    set.iter().map(|&i| w[i].clone()).sum()
}

/// Runs `f` on every path, `jobs` at a time, keeping input order.
pub fn run_many<F>(paths: &[PathBuf], jobs: usize, f: F) -> Vec<Result<Report, CliError>>
where
    F: Fn(&Path) -> Result<Report, CliError> + Sync,
{
    let jobs = jobs.max(1).min(paths.len().max(1));
    if jobs == 1 {
        return paths.iter().map(|p| f(p)).collect();
    }
    let mut out: Vec<Option<Result<Report, CliError>>> = vec![None; paths.len()];
    let chunk = paths.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let f = &f;
        for (ps, slots) in paths.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (p, slot) in ps.iter().zip(slots) {
                    *slot = Some(f(p));
                }
            });
        }
    });
    out.into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

pub fn maxflow(args: &MaxflowArgs) -> Vec<Result<Report, CliError>> {
    if args.trace.is_some() && (args.method != FlowMethod::Ff || args.paths.len() != 1) {
        return vec![Err(CliError::mismatch(
            "--trace needs --method ff and a single instance file",
        ))];
    }
    run_many(&args.paths, args.jobs, |p| maxflow_one(p, args))
}

fn maxflow_one(path: &Path, args: &MaxflowArgs) -> Result<Report, CliError> {
    let b = read_instance(path)?;
    let net = &b.network;
    let mut json =
        json!({ "command": "maxflow", "instance": b.name, "file": path.display().to_string() });
    let (f, method) = match args.method {
        FlowMethod::Lp => (max_flow_lp(net)?, "lp"),
        FlowMethod::Ff => {
            let out = max_flow_ff(net, &FfOptions::default())?;
            json["iterations"] = json!(out.iterations);
            if let Some(t) = &args.trace {
                write_trace(t, &out.trace)?;
            }
            (out.flow, "ff")
        }
        FlowMethod::Dual => {
            let voids = b.voids.as_ref().ok_or_else(|| {
                CliError::mismatch(format!(
                    "{}: --method dual needs a voids block",
                    path.display()
                ))
            })?;
            (max_flow_shortest_path(net, voids)?, "dual")
        }
    };
    json["method"] = json!(method);
    json["value"] = json!(s(&f.value));
    json["flow"] = json!(f.flow.coeffs.iter().map(s).collect::<Vec<_>>());
    let check = if args.check.enabled() {
        check_flow(&b, &f, args.method)?
    } else {
        "skipped"
    };
    json["check"] = json!(check);
    Ok(Report {
        json,
        summary: format!("{}: value = {}, check: {check}", path.display(), f.value),
        warnings: vec![],
    })
}

fn check_flow(
    b: &InstanceBundle,
    f: &FlowResult,
    method: FlowMethod,
) -> Result<&'static str, CliError> {
    let net = &b.network;
    if let Some(why) = flow_violation(net, &f.flow, &f.value) {
        return Err(CliError::verify(format!(
            "check failed: flow violates {why}"
        )));
    }
    let reference = if method == FlowMethod::Lp {
        min_cut_lp(net)?.value
    } else {
        max_flow_lp(net)?.value
    };
    if reference != f.value {
        return Err(CliError::verify(format!(
            "check failed: value {} but the LP gives {reference}",
            f.value
        )));
    }
    if let Some(e) = b.expected("max_flow") {
        if *e != f.value {
            return Err(CliError::verify(format!(
                "check failed: value {} but the instance expects {e}",
                f.value
            )));
        }
    }
    Ok("ok")
}

fn write_trace(
    path: &Path,
    trace: &[simflow_core::ford_fulkerson::IterationRecord],
) -> Result<(), CliError> {
    let mut file =
        fs::File::create(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    for r in trace {
        let line = json!({ "iter": r.iter, "value": s(&r.value), "half_saturated": r.half_saturated, "saturated": r.saturated });
        writeln!(file, "{line}")
            .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn mincut(args: &MincutArgs) -> Vec<Result<Report, CliError>> {
    if args.combinatorial && args.method == CutMethod::Lp && !args.brute {
        return vec![Err(CliError::mismatch(
            "--combinatorial with --method lp: the cut LP gives a minimum topological cut, and minimum combinatorial \
             cuts are NP-hard in general; use --method dual on embedded instances or add --brute",
        ))];
    }
    run_many(&args.paths, args.jobs, |p| mincut_one(p, args))
}

fn mincut_one(path: &Path, args: &MincutArgs) -> Result<Report, CliError> {
    let b = read_instance(path)?;
    let net = &b.network;
    let caps = net.capacities();
    let mut json =
        json!({ "command": "mincut", "instance": b.name, "file": path.display().to_string() });
    if args.combinatorial && args.brute {
        let r = brute_comb_cut(net, args.max_size.unwrap_or(net.n_top()))?;
        json["method"] = json!("brute");
        let summary = format!(
            "{}: combinatorial cut weight = {}",
            path.display(),
            r["weight"].as_str().unwrap_or("")
        );
        merge(&mut json, r);
        return Ok(Report {
            json,
            summary,
            warnings: vec![],
        });
    }
    let mut warnings = Vec::new();
    let (value, cochain, coboundary, directed) = match args.method {
        CutMethod::Lp => {
            let c = min_cut_lp(net)?;
            json["method"] = json!("lp");
            (c.value, c.cochain, c.coboundary, c.directed_cut)
        }
        CutMethod::Dual => {
            let voids = b.voids.as_ref().ok_or_else(|| {
                CliError::mismatch(format!(
                    "{}: --method dual needs a voids block",
                    path.display()
                ))
            })?;
            let c = min_cut_via_min_cost_flow(net, voids, caps, args.combinatorial)?;
            json["method"] = json!("dual");
            json["dual_flow"] = json!(c.dual_flow.iter().map(s).collect::<Vec<_>>());
            (c.value, c.cochain, c.coboundary, c.directed_cut)
        }
    };
    let supp = support(&coboundary.coeffs);
    let support_weight = weight(&supp, caps);
    json["value"] = json!(s(&value));
    json["cochain"] = json!(cochain.coeffs.iter().map(s).collect::<Vec<_>>());
    json["coboundary"] = json!(coboundary.coeffs.iter().map(s).collect::<Vec<_>>());
    json["directed_cut"] = json!(directed);
    json["support"] = json!(supp);
    json["support_weight"] = json!(s(&support_weight));
    if let Some(why) = gamma_cut_violation(net, &cochain) {
        return Err(CliError::verify(format!("cut check failed: {why}")));
    }
    if !verify_directed_combinatorial_cut(net, &directed) {
        return Err(CliError::verify(
            "cut check failed: directed cut leaves a non-negative bounding chain",
        ));
    }
    let combinatorial = args.combinatorial;
    let check = if args.check.enabled() {
        if combinatorial {
            if !is_combinatorial_cut(net, &supp) {
                return Err(CliError::verify(
                    "check failed: support is not a combinatorial cut",
                ));
            }
        } else {
            let lp = max_flow_lp(net)?.value;
            if lp != value {
                return Err(CliError::verify(format!(
                    "check failed: cut value {value} but max flow is {lp}"
                )));
            }
        }
        "ok"
    } else {
        "skipped"
    };
    json["check"] = json!(check);
    let limit = if args.brute {
        args.max_size.unwrap_or(net.n_top())
    } else {
        args.max_size.unwrap_or(COMPARE_MAX_SIZE)
    };
    match brute_min_combinatorial_cut(net, caps, limit) {
        Ok(Some((set, w))) => {
            json["combinatorial_optimum"] = json!(s(&w));
            json["combinatorial_optimum_cut"] = json!(set);
            if combinatorial && w != support_weight {
                return Err(CliError::verify(format!(
                    "check failed: weight {support_weight} but exhaustive search finds {w}"
                )));
            }
            if support_weight > w {
                warnings.push(format!(
                    "cut support weight {support_weight} exceeds the minimum combinatorial cut weight {w}"
                ));
            }
        }
        Ok(None) => {}
        Err(e) if args.brute => return Err(e.into()),
        Err(_) => {}
    }
    let shown = if combinatorial {
        &support_weight
    } else {
        &value
    };
    let label = if combinatorial { "weight" } else { "value" };
    Ok(Report {
        json,
        summary: format!(
            "{}: {label} = {shown}, support weight = {support_weight}, check: {check}",
            path.display()
        ),
        warnings,
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn brute_comb_cut(net: &FlowNetwork, max_size: usize) -> Result<Value, CliError> {
    let caps = net.capacities();
    let (set, w) = brute_min_combinatorial_cut(net, caps, max_size)?.ok_or_else(|| {
        CliError::guard(format!(
            "no combinatorial cut with at most {max_size} simplices"
        ))
    })?;
    let mut r = json!({ "kind": "comb-cut", "cut": set, "weight": s(&w), "max_size": max_size });
    if let Some(p) = find_supporting_cochain(net.complex(), &set)? {
        r["supporting_cochain"] = json!(p.coeffs.iter().map(s).collect::<Vec<_>>());
    }
    Ok(r)
}

pub fn brute(args: &BruteArgs) -> Result<Report, CliError> {
    let b = read_instance(&args.path)?;
    let net = &b.network;
    let mut json =
        json!({ "command": "brute", "instance": b.name, "file": args.path.display().to_string() });
    let summary = match args.kind {
        BruteKind::CombCut => {
            let r = brute_comb_cut(net, args.max_size.unwrap_or(net.n_top()))?;
            let line = format!(
                "{}: combinatorial cut weight = {}",
                args.path.display(),
                r["weight"].as_str().unwrap_or("")
            );
            merge(&mut json, r);
            line
        }
        BruteKind::Flow => {
            let f = brute_max_flow(net)?;
            merge(
                &mut json,
                json!({ "kind": "flow", "value": s(&f.value), "flow": f.flow.coeffs.iter().map(s).collect::<Vec<_>>() }),
            );
            format!("{}: max flow = {}", args.path.display(), f.value)
        }
    };
    Ok(Report {
        json,
        summary,
        warnings: vec![],
    })
}

fn need<T>(v: Option<T>, name: &str, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::parse(format!("gen {name} needs --{flag}")))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::parse(format!("bad {what} element {t:?}")))
        })
        .collect()
}

type EdgeList = (Vec<(usize, usize)>, Vec<Rational>);

fn parse_edges(text: &str) -> Result<EdgeList, CliError> {
    let mut edges = Vec::new();
    let mut caps = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (pair, cap) = match item.split_once(':') {
            Some((p, c)) => (
                p,
                c.trim()
                    .parse()
                    .map_err(|e| CliError::parse(format!("edge {item:?}: {e}")))?,
            ),
            None => (item, Rational::ONE),
        };
        let (a, b) = pair
            .split_once('-')
            .ok_or_else(|| CliError::parse(format!("edge {item:?} is not a-b[:c]")))?;
        let a = a
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("edge {item:?}: bad tail")))?;
        let b = b
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("edge {item:?}: bad head")))?;
        edges.push((a, b));
        caps.push(cap);
    }
    Ok((edges, caps))
}

pub fn generate(args: &GenArgs) -> Result<InstanceBundle, CliError> {
    let name = args.name.as_str();
    let b = match name {
        "md" => generators::gen_md()?,
        "mdw" => generators::gen_mdw()?,
        "octahedron" => generators::gen_octahedron()?,
        "planar-square" => generators::gen_planar_square()?,
        "octahedron-variant" => generators::gen_octahedron_variant(args.seed.unwrap_or(0))?,
        "graph" => {
            let (edges, caps) = parse_edges(need(args.edges.as_deref(), name, "edges")?)?;
            let n = args
                .vertices
                .unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
            generators::gen_graph(
                n,
                &edges,
                &caps,
                args.source.unwrap_or(0),
                args.sink.unwrap_or(n.saturating_sub(1)),
            )?
        }
        "hitting-set" => {
            let family: Vec<Vec<usize>> = need(args.sets.as_deref(), name, "sets")?
                .split(';')
                .map(|m| parse_list(m, "set"))
                .collect::<Result<_, _>>()?;
            let universe = match &args.universe {
                Some(u) => parse_list(u, "universe")?,
                None => {
                    let mut u: Vec<usize> = family.iter().flatten().copied().collect();
                    u.sort_unstable();
                    u.dedup();
                    u
                }
            };
            generators::gen_hitting_set(&universe, &family)?
        }
        "random" => generators::gen_random(
            args.seed.unwrap_or(0),
            args.vertices.unwrap_or(8),
            args.dim.unwrap_or(2),
            args.density.unwrap_or(0.3),
        )?,
        "random-graph" => generators::gen_random_graph(
            args.seed.unwrap_or(0),
            args.vertices.unwrap_or(6),
            args.n_edges.unwrap_or(8),
            args.max_capacity.unwrap_or(7),
        )?,
        other => return Err(CliError::mismatch(format!("unknown generator {other:?}"))),
    };
    Ok(b)
}

pub fn gen(args: &GenArgs) -> Result<Report, CliError> {
    let b = generate(args)?;
    let text = to_json(&b);
    let summary = match &args.output {
        Some(p) => {
            fs::write(p, format!("{text}\n"))
                .map_err(|e| CliError::parse(format!("{}: {e}", p.display())))?;
            format!("wrote {} ({}) to {}", b.name, b.source, p.display())
        }
        None => format!("generated {} ({})", b.name, b.source),
    };
    let json = match &args.output {
        Some(p) => json!({ "command": "gen", "instance": b.name, "file": p.display().to_string() }),
        None => serde_json::from_str(&text).expect("round trip through serde_json"),
    };
    Ok(Report {
        json,
        summary,
        warnings: vec![],
    })
}

#[derive(serde::Deserialize)]
struct Certificate {
    flow: Option<Vec<Q>>,
    value: Option<Q>,
    cochain: Option<Vec<Q>>,
    directed_cut: Option<Vec<usize>>,
    cut: Option<Vec<usize>>,
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let b = read_instance(&args.path)?;
    let net = &b.network;
    let text = fs::read_to_string(&args.certificate)
        .map_err(|e| CliError::parse(format!("{}: {e}", args.certificate.display())))?;
    let cert: Certificate = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", args.certificate.display())))?;
    let mut checks: Vec<(&str, Option<String>)> = Vec::new();
    if let Some(flow) = cert.flow {
        let value = cert
            .value
            .ok_or_else(|| CliError::parse("a flow certificate needs a value"))?
            .0;
        let f = Chain::new(net.dim(), unq(flow));
        checks.push(("flow", flow_violation(net, &f, &value).map(String::from)));
    }
    if let Some(p) = cert.cochain {
        let p = Cochain::new(net.dim() - 1, unq(p));
        checks.push(("gamma_cut", gamma_cut_violation(net, &p).map(String::from)));
    }
    for (name, set) in [("directed_cut", &cert.directed_cut), ("cut", &cert.cut)] {
        let Some(set) = set else { continue };
        if let Some(&i) = set.iter().find(|&&i| i >= net.n_top()) {
            checks.push((name, Some(format!("index {i} out of range"))));
            continue;
        }
        let ok = if name == "cut" {
            is_combinatorial_cut(net, set)
        } else {
            verify_directed_combinatorial_cut(net, set)
        };
        let why = if name == "cut" {
            "gamma still bounds off the cut"
        } else {
            "a non-negative bounding chain avoids the cut"
        };
        checks.push((name, (!ok).then(|| why.to_string())));
    }
    if checks.is_empty() {
        return Err(CliError::parse(
            "certificate has none of flow, cochain, directed_cut, cut",
        ));
    }
    let json = json!({
        "command": "verify",
        "instance": b.name,
        "checks": checks.iter().map(|(n, v)| json!({ "check": n, "ok": v.is_none(), "violation": v })).collect::<Vec<_>>(),
    });
    if let Some((n, Some(why))) = checks.iter().find(|(_, v)| v.is_some()) {
        return Err(CliError::verify(format!("{n} check failed: {why}")));
    }
    let names: Vec<&str> = checks.iter().map(|(n, _)| *n).collect();
    Ok(Report {
        json,
        summary: format!("{}: {} ok", args.path.display(), names.join(", ")),
        warnings: vec![],
    })
}
