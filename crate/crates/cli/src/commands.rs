use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use postnikov::em::{em_cohomology_with_coeffs, EmSpace};
use postnikov::io::{self, ModelFile, RingFile};
use postnikov::obstruction::{
    lift_exists, mapping_space_pi1, standard_s2_tower, Eta, Field, LiftOutcome,
};
use postnikov::secondary::{
    blowup_ring, eta, eta_square, excision_components, kappa_is_nonzero, secondary_pairing,
    BlowupScenario, ExcisionComponents,
};
use postnikov::sullivan::{
    build_minimal_model, formal_cdga, homotopy_table, k_invariant_quadratic,
};
use postnikov::{GradedRing, Q};

const DEFAULT_CUTOFF: usize = 8;

pub struct Options {
    pub cutoff: Option<usize>,
    pub json: bool,
    pub search_height: u64,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_ring(path: &Path) -> Result<GradedRing> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_ring(&text).with_context(|| format!("parsing {}", path.display()))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct EmReport {
    rank: usize,
    degree: usize,
    coeffs: usize,
    cutoff: usize,
    dims: Vec<usize>,
}

pub fn em(o: &Options, rank: usize, degree: usize, coeffs: usize) -> Result<String> {
    let cutoff = o.cutoff.unwrap_or(DEFAULT_CUTOFF);
    let s = EmSpace::new(rank, degree)?;
    let dims = em_cohomology_with_coeffs(s, coeffs, cutoff).dims;
    if o.json {
        return json(&EmReport {
            rank,
            degree,
            coeffs,
            cutoff,
            dims,
        });
    }
    let mut out = format!("H^*(K(Q^{rank}, {degree}); Q^{coeffs}) through degree {cutoff}\n");
    out.push_str("degree  dim\n");
    for (i, d) in dims.iter().enumerate() {
        writeln!(out, "{i:>6}  {d}")?;
    }
    writeln!(out, "dims: {}", join(&dims))?;
    Ok(out)
}

fn ring_cutoff(o: &Options, r: &GradedRing) -> Result<usize> {
    match o.cutoff {
        Some(c) if c > r.cutoff() => bail!("cutoff {c} exceeds the ring's cutoff {}", r.cutoff()),
        Some(c) => Ok(c),
        None => Ok(DEFAULT_CUTOFF.min(r.cutoff())),
    }
}

#[derive(Serialize)]
struct ModelReport {
    #[serde(flatten)]
    model: ModelFile,
    homotopy: Vec<usize>,
    k_invariant_rank: Option<usize>,
}

pub fn model(o: &Options, path: &Path, output: Option<&Path>) -> Result<String> {
    let r = read_ring(path)?;
    let cutoff = ring_cutoff(o, &r)?;
    let m = build_minimal_model(&formal_cdga(&r)?, cutoff)?;
    if let Some(p) = output {
        std::fs::write(p, io::emit_model(&m))
            .with_context(|| format!("writing {}", p.display()))?;
    }
    let table = homotopy_table(&m);
    let k_rank = k_invariant_quadratic(&m, 3).ok().map(|k| k.rank());
    if o.json {
        return json(&ModelReport {
            model: io::model_file(&m),
            homotopy: table.dims,
            k_invariant_rank: k_rank,
        });
    }
    let mut out = format!(
        "minimal model, certified through degree {}\n",
        m.verified_through
    );
    for (i, g) in m.generators.iter().enumerate() {
        writeln!(
            out,
            "  {:<8} degree {:<3} d = {}",
            g.name,
            g.degree,
            m.format_polynomial(&m.differential[i])
        )?;
    }
    if m.generators.is_empty() {
        out.push_str("  (no generators)\n");
    }
    let pis: Vec<String> = (2..table.dims.len())
        .map(|i| format!("pi_{i} = {}", table.dims[i]))
        .collect();
    writeln!(out, "homotopy: {}", pis.join(", "))?;
    if let Some(k) = k_rank {
        writeln!(out, "quadratic k-invariant in degree 3: rank {k}")?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct ObstructReport {
    field: Field,
    outcome: &'static str,
    eta: Option<Vec<String>>,
    detail: Option<String>,
}

pub fn obstruct(o: &Options, path: &Path, field: Field) -> Result<String> {
    let r = read_ring(path)?;
    let outcome = lift_exists(&r, &standard_s2_tower(), field, o.search_height)?;
    let report = match outcome {
        LiftOutcome::NoNonzero => ObstructReport {
            field,
            outcome: "none",
            eta: None,
            detail: None,
        },
        LiftOutcome::Undetermined(why) => ObstructReport {
            field,
            outcome: "undetermined",
            eta: None,
            detail: Some(why),
        },
        LiftOutcome::Solutions(sols) => {
            let s = sols
                .into_iter()
                .next()
                .ok_or_else(|| anyhow!("empty solution list"))?;
            match s.eta {
                Eta::Rational(e) => ObstructReport {
                    field,
                    outcome: "solution",
                    eta: Some(e.coeffs.iter().map(Q::to_string).collect()),
                    detail: None,
                },
                Eta::OverClosure(d) => ObstructReport {
                    field,
                    outcome: "solution",
                    eta: None,
                    detail: Some(d),
                },
            }
        }
    };
    if o.json {
        return json(&report);
    }
    Ok(match (report.outcome, report.eta, report.detail) {
        ("none", _, _) => "no nonzero solution\n".to_string(),
        ("undetermined", _, d) => format!("undetermined: {}\n", d.unwrap_or_default()),
        (_, Some(eta), _) => {
            let labels = r.labels(2);
            let terms: Vec<String> = eta
                .iter()
                .zip(labels)
                .filter(|(c, _)| c.as_str() != "0")
                .map(|(c, l)| format!("{c}*{l}"))
                .collect();
            format!(
                "solution: eta = {} = ({})\n",
                terms.join(" + "),
                eta.join(", ")
            )
        }
        (_, None, d) => format!("solution over the closure: {}\n", d.unwrap_or_default()),
    })
}

#[derive(clap::Args, Debug)]
pub struct SecondaryArgs {
    /// Scenario file; overrides the numeric flags
    #[arg(long, conflicts_with_all = ["pg", "h11", "hh", "m", "n"])]
    scenario: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pg: usize,
    #[arg(long, default_value_t = 1)]
    h11: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    hh: i64,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    m: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    n: String,
    /// Value of the 2-form on alpha ^ beta at the point (default 1, or 0 when pg = 0)
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
}

#[derive(Serialize)]
struct SecondaryReport {
    scenario: BlowupScenario,
    eta_square: String,
    excision: ExcisionComponents,
    omega: String,
    pairing: String,
    kappa_nonzero: bool,
    pi1_dim: usize,
}

pub fn secondary(o: &Options, a: &SecondaryArgs) -> Result<String> {
    let (s, file_omega) = match &a.scenario {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            io::parse_scenario(&text)?
        }
        None => {
            let m = io::parse_q("m", &a.m)?;
            let n = io::parse_q("n", &a.n)?;
            (BlowupScenario::new(a.pg, a.h11, a.hh, m, n)?, None)
        }
    };
    let omega = match a.omega.as_deref() {
        Some(w) => io::parse_q("omega", w)?,
        None => file_omega.unwrap_or_else(|| Q::from_integer(i64::from(s.pg > 0).into())),
    };
    let sq = eta_square(&s)?;
    if sq != Q::from_integer(0.into()) {
        bail!("eta^2 = {sq} is nonzero; no lift exists and the secondary class is undefined");
    }
    let report = SecondaryReport {
        eta_square: sq.to_string(),
        excision: excision_components(&s)?,
        omega: omega.to_string(),
        pairing: secondary_pairing(&s, &omega)?.to_string(),
        kappa_nonzero: kappa_is_nonzero(&s)?,
        pi1_dim: mapping_space_pi1(&blowup_ring(&s)?, &eta(&s))?.dim,
        scenario: s,
    };
    if o.json {
        return json(&report);
    }
    Ok(format!(
        "eta^2 = {}; pairing = {}; kappa nonzero: {}\n",
        report.eta_square, report.pairing, report.kappa_nonzero
    ))
}

#[derive(Serialize)]
struct KunnethReport {
    dims: Vec<usize>,
    valid: bool,
    ring: RingFile,
}

pub fn kunneth(o: &Options, left: &Path, right: &Path, output: Option<&Path>) -> Result<String> {
    let (a, b) = (read_ring(left)?, read_ring(right)?);
    let n = match o.cutoff {
        Some(c) => c,
        None => a.cutoff().min(b.cutoff()),
    };
    let p = a.truncate(n)?.kunneth(&b.truncate(n)?)?;
    let valid = postnikov::validate_ring(&p).passed();
    if let Some(path) = output {
        std::fs::write(path, io::emit_ring(&p))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if o.json {
        return json(&KunnethReport {
            dims: p.dims().to_vec(),
            valid,
            ring: io::ring_file(&p),
        });
    }
    Ok(format!("dims: {}\nvalid: {valid}\n", join(p.dims())))
}

#[derive(Serialize)]
struct CheckEntry {
    path: String,
    ok: bool,
    error: Option<String>,
}

fn collect_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<_>>()?;
            entries.retain(|f| {
                matches!(
                    f.extension().and_then(|e| e.to_str()),
                    Some("ring" | "model" | "scenario")
                )
            });
            entries.sort();
            files.extend(entries);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn check_file(path: &Path) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("ring") => io::parse_ring(&text).map(drop)?,
        Some("model") => {
            let m = io::parse_model(&text)?;
            if !m.is_minimal() || !m.d_squared_vanishes() {
                bail!("model is not minimal or d^2 != 0");
            }
        }
        Some("scenario") => io::parse_scenario(&text).map(drop)?,
        _ => bail!("unknown file type (expected .ring, .model or .scenario)"),
    }
    Ok(())
}

pub fn check(o: &Options, paths: &[PathBuf]) -> Result<String> {
    let files = collect_files(paths)?;
    let entries: Vec<CheckEntry> = files
        .par_iter()
        .map(|f| {
            let r = check_file(f);
            CheckEntry {
                path: f.display().to_string(),
                ok: r.is_ok(),
                error: r.err().map(|e| format!("{e:#}")),
            }
        })
        .collect();
    let failed = entries.iter().filter(|e| !e.ok).count();
    let out = if o.json {
        json(&entries)?
    } else {
        let mut out = String::new();
        for e in &entries {
            match &e.error {
                None => writeln!(out, "ok    {}", e.path)?,
                Some(err) => writeln!(out, "FAIL  {}: {err}", e.path)?,
            }
        }
        out
    };
    if failed > 0 {
        print!("{out}");
        bail!("{failed} of {} files failed", entries.len());
    }
    Ok(out)
}
