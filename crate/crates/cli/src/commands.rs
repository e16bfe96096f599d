use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use lrc_core::canonical::{CanonicalCode, CanonicalParams};
use lrc_core::field::{min_field_order_above, BaseField};
use lrc_core::patterns::{count_classes, enumerate_patterns, subsets};
use lrc_core::rank;
use lrc_core::tradeoff::{
    self, asymptotic_bounds, canonical_dominance, classical_curve, fmt_exact, fmt_float,
    layered_point, normalized_bounds, parse_rational, CostModel,
};
use lrc_core::CodeError;
use lrc_sim::{Cluster, CodeSpec, Mode, Schedule, SimConfig, Status};

use crate::failure::{io, usage, Failure, Outcome};
use crate::{
    DecodeArgs, EncodeArgs, Family, OrbitsArgs, ParamsArgs, RankArgs, RepairArgs, SimulateArgs,
    TradeoffArgs,
};

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(io(p)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_thread_len(n: usize, t: usize) -> Outcome {
    if t == 0 || t > n {
        return Err(Failure::Parameter(format!("1 <= w+γ <= n (n = {n}, w+γ = {t})")));
    }
    Ok(())
}

pub fn orbits(a: OrbitsArgs) -> Outcome {
    check_thread_len(a.n, a.t)?;
    let mut out = String::new();
    if a.census {
        let census = count_classes(a.n, a.t);
        out.push_str("period,classes,omega\n");
        for (size, e) in &census.classes {
            writeln!(out, "{size},{e},{}", size / census.g).unwrap();
        }
    } else {
        out.push_str("footprint,period,omega\n");
        for p in enumerate_patterns(a.n, a.t) {
            let fp: Vec<String> = p.footprint.iter().map(usize::to_string).collect();
            writeln!(out, "{},{},{}", fp.join(" "), p.period, p.omega).unwrap();
        }
    }
    emit(None, &out)
}

fn derive(n: usize, w: usize, gamma: usize, q: Option<usize>) -> Outcome<CanonicalParams> {
    Ok(match q {
        Some(q) => CanonicalParams::new(n, w, gamma, q)?,
        None => CanonicalParams::derive(n, w, gamma)?,
    })
}

pub fn params(a: ParamsArgs) -> Outcome {
    let i = a.inner;
    let p = derive(i.n, i.w, i.gamma, a.q)?;
    let mut out = String::from("n,w,gamma,q,L,V,M,alpha,beta,d,k,K_c,d_beta,rate\n");
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        p.n,
        p.w,
        p.gamma,
        p.q.map_or(String::new(), |q| q.to_string()),
        p.l,
        p.v,
        p.m,
        p.alpha,
        p.beta,
        p.d,
        p.k,
        p.k_c,
        p.repair_bandwidth(),
        fmt_exact(&p.rate()),
    )
    .unwrap();
    emit(None, &out)
}

pub fn rank(a: RankArgs) -> Outcome {
    let i = a.inner;
    let q = match a.q {
        Some(q) => q,
        None => min_field_order_above(i.w + i.gamma)
            .ok_or_else(|| Failure::Parameter("q > w+γ has no supported field".into()))?,
    };
    let p = CanonicalParams::new(i.n, i.w, i.gamma, q)?;
    let prof = rank::profile(&p);
    let mut out = String::from("s,rho,a");
    let oracle = if a.oracle {
        out.push_str(",oracle_rho,oracle_uniform");
        let code = CanonicalCode::new(p.clone(), BaseField::new(q).map_err(CodeError::from)?)?;
        let g = rank::generator(&code)?;
        let mut per_size = Vec::new();
        for s in 1..=i.n {
            let ranks: BTreeSet<usize> = subsets(i.n, s)
                .iter()
                .map(|sub| rank::brute_rank_of(&code, &g, sub))
                .collect();
            per_size.push(ranks);
        }
        Some(per_size)
    } else {
        None
    };
    out.push('\n');
    for s in 1..=i.n {
        write!(out, "{s},{},{}", prof.rho[s - 1], prof.a[s - 1]).unwrap();
        if let Some(o) = &oracle {
            let ranks = &o[s - 1];
            let shown: Vec<String> = ranks.iter().map(usize::to_string).collect();
            write!(out, ",{},{}", shown.join(" "), ranks.len() == 1).unwrap();
        }
        out.push('\n');
    }
    emit(None, &out)
}

fn spec_of(a: &EncodeArgs) -> Outcome<CodeSpec> {
    let mode: Mode = a.mode.into();
    let forbidden: &[(&str, bool)] = match mode {
        Mode::Canonical => &[
            ("--k", a.k.is_some()),
            ("--N", a.ext_degree.is_some()),
            ("--t", a.t.is_some()),
            ("--K", a.filesize.is_some()),
        ],
        Mode::Lrc => &[("--t", a.t.is_some()), ("--K", a.filesize.is_some())],
        Mode::Local => &[("--k", a.k.is_some())],
    };
    if let Some((flag, _)) = forbidden.iter().find(|(_, set)| *set) {
        return Err(usage(format!("{flag} does not apply to --mode {mode}")));
    }
    let required: &[(&str, bool)] = match mode {
        Mode::Canonical => &[],
        Mode::Lrc => &[("--k", a.k.is_none()), ("--N", a.ext_degree.is_none())],
        Mode::Local => &[
            ("--t", a.t.is_none()),
            ("--N", a.ext_degree.is_none()),
            ("--K", a.filesize.is_none()),
        ],
    };
    if let Some((flag, _)) = required.iter().find(|(_, missing)| *missing) {
        return Err(usage(format!("--mode {mode} requires {flag}")));
    }
    Ok(CodeSpec {
        mode,
        n: a.inner.n,
        w: a.inner.w,
        gamma: a.inner.gamma,
        q: a.q,
        k: a.k,
        ext_degree: a.ext_degree,
        groups: a.t,
        filesize: a.filesize,
    })
}

pub fn encode(a: EncodeArgs) -> Outcome {
    let spec = spec_of(&a)?;
    let data = std::fs::read(&a.input).map_err(io(&a.input))?;
    let c = Cluster::ingest(&data, &spec, &a.out)?;
    let s = c.scheme();
    let mut out = String::from(
        "mode,n,w,gamma,q,nodes,alpha,beta,stripes,symbol_bytes,input_bytes,storage_bytes\n",
    );
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        s.mode(),
        spec.n,
        spec.w,
        spec.gamma,
        spec.q,
        s.node_count(),
        s.alpha(),
        s.beta(),
        c.stripes(),
        s.symbol_bytes(),
        data.len(),
        c.storage_bytes()
    )
    .unwrap();
    emit(None, &out)
}

pub fn decode(a: DecodeArgs) -> Outcome {
    let c = Cluster::open(&a.nodes)?;
    let data = c.extract()?;
    std::fs::write(&a.out, &data).map_err(io(&a.out))?;
    emit(None, &format!("bytes,nodes_alive\n{},{}\n", data.len(), c.alive().len()))
}

pub fn repair(a: RepairArgs) -> Outcome {
    let c = Cluster::open(&a.nodes)?;
    let failed: BTreeSet<usize> = match a.failed {
        Some(v) => v.into_iter().collect(),
        None => c.missing(),
    };
    if failed.is_empty() {
        return Err(usage("no failed nodes given and none are missing"));
    }
    let r = c.repair(&failed)?;
    let join = |s: &BTreeSet<usize>| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    emit(
        None,
        &format!(
            "failed,helpers,symbols,bytes\n{},{},{},{}\n",
            join(&r.failed),
            join(&r.helpers),
            r.symbols,
            r.bytes
        ),
    )
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Outcome<T> {
    v.clone().ok_or_else(|| usage(format!("{flag} is required here")))
}

fn parse_q(s: &str) -> Outcome<tradeoff::Q> {
    Ok(parse_rational(s)?)
}

fn parse_range(s: &str) -> Outcome<(usize, usize)> {
    let bad = || usage(format!("--w-range {s:?}: expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn tradeoff(a: TradeoffArgs) -> Outcome {
    let mut out = String::new();
    if a.asymptotic {
        let p = asymptotic_bounds(&parse_q(&need(&a.kappa, "--kappa")?)?, &parse_q(&need(&a.theta, "--theta")?)?)?;
        out.push_str("kappa,theta,delta,omega_a,theta_a,omega_a_float,theta_a_float\n");
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_exact(&p.kappa),
            fmt_exact(&p.theta),
            fmt_exact(&p.delta),
            fmt_exact(&p.omega_a),
            fmt_exact(&p.theta_a),
            fmt_float(&p.omega_a),
            fmt_float(&p.theta_a)
        )
        .unwrap();
    } else if let Some(family) = a.family {
        let n = need(&a.n, "--n")?;
        let gamma = need(&a.gamma, "--gamma")?;
        let (lo, hi) = parse_range(&need(&a.w_range, "--w-range")?)?;
        if gamma >= n {
            return Err(Failure::Parameter(format!("w+γ <= n (n = {n}, γ = {gamma})")));
        }
        let d = n - gamma;
        if let Some(given) = a.d {
            if given != d {
                return Err(usage(format!("--d {given} disagrees with d = n-γ = {d}")));
            }
        }
        match family {
            Family::Canonical => {
                if let Some(k) = a.k {
                    if k != d {
                        return Err(usage(format!("canonical codes have k = d = {d}, got --k {k}")));
                    }
                }
                out.push_str("w,alpha,beta,d_beta,K,omega,theta,space_share_d_beta,dominates,criterion,agree,omega_float,theta_float\n");
                for w in lo..=hi {
                    let v = canonical_dominance(&CanonicalParams::derive(n, w, gamma)?);
                    let p = &v.point;
                    writeln!(
                        out,
                        "{w},{},{},{},{},{},{},{},{},{},{},{},{}",
                        fmt_exact(&p.alpha),
                        fmt_exact(&p.beta),
                        fmt_exact(&p.d_beta()),
                        fmt_exact(&p.filesize),
                        fmt_exact(&p.omega()),
                        fmt_exact(&p.theta()),
                        fmt_exact(&v.space_share_d_beta),
                        v.geometric,
                        v.algebraic,
                        v.agree(),
                        fmt_float(&p.omega()),
                        fmt_float(&p.theta())
                    )
                    .unwrap();
                }
            }
            Family::Layered => {
                let k = need(&a.k, "--k")?;
                out.push_str("w,alpha,beta,d_beta,K,omega,theta,omega_float,theta_float\n");
                for w in lo..=hi {
                    let p = layered_point(&CanonicalParams::derive(n, w, gamma)?, k)?;
                    writeln!(
                        out,
                        "{w},{},{},{},{},{},{},{},{}",
                        fmt_exact(&p.alpha),
                        fmt_exact(&p.beta),
                        fmt_exact(&p.d_beta()),
                        fmt_exact(&p.filesize),
                        fmt_exact(&p.omega()),
                        fmt_exact(&p.theta()),
                        fmt_float(&p.omega()),
                        fmt_float(&p.theta())
                    )
                    .unwrap();
                }
            }
        }
    } else {
        let (n, k, d) = (need(&a.n, "--n")?, need(&a.k, "--k")?, need(&a.d, "--d")?);
        if k == 0 || k > d || d >= n {
            return Err(Failure::Parameter(format!(
                "1 <= k <= d <= n-1 (n = {n}, k = {k}, d = {d})"
            )));
        }
        if a.normalized {
            out.push_str("p,omega,theta,omega_float,theta_float\n");
            for p in 0..k {
                let (o, t) = normalized_bounds(n, k, n - d, p)?;
                writeln!(out, "{p},{},{},{},{}", fmt_exact(&o), fmt_exact(&t), fmt_float(&o), fmt_float(&t)).unwrap();
            }
        } else {
            let filesize = parse_q(&need(&a.filesize, "--K")?)?;
            if filesize <= tradeoff::int(0) {
                return Err(Failure::Parameter("K > 0".into()));
            }
            out.push_str("p,alpha,beta,d_beta,omega,theta,alpha_float,d_beta_float\n");
            for (p, pt) in classical_curve(n, k, d, &filesize).iter().enumerate() {
                writeln!(
                    out,
                    "{p},{},{},{},{},{},{},{}",
                    fmt_exact(&pt.alpha),
                    fmt_exact(&pt.beta),
                    fmt_exact(&pt.d_beta()),
                    fmt_exact(&pt.omega()),
                    fmt_exact(&pt.theta()),
                    fmt_float(&pt.alpha),
                    fmt_float(&pt.d_beta())
                )
                .unwrap();
            }
        }
    }
    emit(a.out.as_deref(), &out)
}

pub fn simulate(a: SimulateArgs) -> Outcome {
    let cfg = SimConfig::load(&a.config)?;
    let dir = a
        .nodes
        .or_else(|| cfg.nodes_dir.clone())
        .ok_or_else(|| usage("a node directory is required (--nodes or nodes_dir in the config)"))?;
    let cost = CostModel {
        gamma_b: parse_q(&cfg.gamma_b)?,
        gamma_s: parse_q(&cfg.gamma_s)?,
    };
    if cost.gamma_b < tradeoff::int(0) || cost.gamma_s < tradeoff::int(0) {
        return Err(usage("gamma_b and gamma_s must be nonnegative"));
    }
    let schedule = Schedule::parse(&a.events)?;
    let data = cfg.input_data(a.seed)?;
    let cluster = Cluster::ingest(&data, &cfg.spec(), &dir)?;
    let events = schedule.events(cluster.scheme().node_count(), cluster.scheme().gamma(), a.seed)?;
    let report = lrc_sim::run(&cluster, &events, &data, &cost)?;
    emit(a.report.as_deref(), &report.to_csv())?;
    if report.status != Status::Ok {
        return Err(Failure::Data(report.status.to_string()));
    }
    if !report.integrity {
        return Err(Failure::Data("extracted file differs from the ingested one".into()));
    }
    Ok(())
}
