use std::fs;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};

use atlas_core::atlas_model::{AtlasShape, CameraArrangement, Correspondence};
use atlas_core::idealgen::{
    focal_ideal_generators, gaqp_generators, gm_generators, minors2_generators, sum_extended,
    Family, GeneratorSet,
};
use atlas_core::polyring::{
    format_poly, groebner_basis, normal_form, parse_poly, standard_monomial_count, verify_groebner,
    GbStatus, Grading, Limits, MultiDegree, Polynomial, TermOrder,
};
use atlas_core::specialize::{random_arrangement, specialize, GenericityTarget};
use atlas_core::verify::{self, ranks_at, BlockOrder, SuiteReport, Variety, Verdict};

use crate::args::*;
use crate::{CliError, EXIT_FAIL, EXIT_INCONCLUSIVE};

type Res<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> Res<u8> {
    let fmt = cli.format;
    match &cli.command {
        Command::Gen(a) => gen(a, fmt),
        Command::Specialize(a) => specialize_cmd(a, fmt),
        Command::Nf(a) => nf(a, fmt),
        Command::Verify(a) => verify_cmd(a, fmt),
        Command::Arrange(a) => arrange(a, fmt),
        Command::Sample(a) => sample(a, fmt),
        Command::Dims(a) => dims(a, fmt),
        Command::Hilbert(a) => hilbert(a, fmt),
    }
}

fn progress(msg: &str) {
    eprintln!("[atlas] {msg}");
}

fn emit(out: Option<&Path>, text: &str) -> Res<()> {
    let mut s = text.to_string();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    match out {
        Some(p) => fs::write(p, s)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn read(p: &Path) -> Res<String> {
    fs::read_to_string(p).map_err(|e| CliError::Data(format!("cannot read {}: {e}", p.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn check_shape(m: usize, n: usize) -> Res<AtlasShape> {
    if m == 0 || n == 0 {
        return Err(CliError::Usage("m and n must be positive".into()));
    }
    Ok(AtlasShape::new(m, n))
}

/// Generator family by name; `focals23` keeps the 2- and 3-focals only.
pub fn family(name: &str, shape: AtlasShape) -> Res<GeneratorSet> {
    let per_point = |f: Family| {
        if shape.n == 1 {
            None
        } else {
            Some(sum_extended(shape, &f))
        }
    };
    Ok(match name {
        "minors2" => minors2_generators(shape),
        "focals234" => focal_ideal_generators(shape, &Family::Focals234),
        "mfocals" => focal_ideal_generators(shape, &Family::MFocals),
        "focals23" => {
            let all = focal_ideal_generators(shape, &Family::Focals234);
            let (tags, polys) = all
                .tags
                .into_iter()
                .zip(all.polys)
                .filter(|(_, p)| p.total_degree().unwrap_or(0) < 8)
                .unzip();
            GeneratorSet {
                label: all.label,
                shape,
                polys,
                tags,
            }
        }
        "gm" => per_point(Family::GM).unwrap_or_else(|| gm_generators(shape.m)),
        "gaqp" => per_point(Family::GAqp).unwrap_or_else(|| gaqp_generators(shape.m)),
        other => return Err(CliError::Usage(format!("unknown family {other:?}"))),
    })
}

fn set_json(g: &GeneratorSet, polys: &[String]) -> Value {
    let census: serde_json::Map<String, Value> = g
        .census()
        .into_iter()
        .map(|(d, c)| (d.to_string(), json!(c)))
        .collect();
    json!({ "family": g.label.to_string(), "m": g.shape.m, "n": g.shape.n, "census": census, "polynomials": polys })
}

fn gen(a: &GenArgs, fmt: Format) -> Res<u8> {
    let shape = check_shape(a.shape.m, a.shape.n)?;
    let g = family(&a.family, shape)?;
    let u = shape.universe();
    let lines: Vec<String> = g.polys.iter().map(|p| format_poly(p, &u)).collect();
    let text = match fmt {
        Format::Text => std::iter::once(g.census_line())
            .chain(lines)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&set_json(&g, &lines)),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

/// Accepts a bare arrangement or the `arrange` output wrapping one.
fn load_arrangement(p: &Path) -> Res<CameraArrangement> {
    let s = read(p)?;
    let v: Value =
        serde_json::from_str(&s).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
    let inner = v.get("arrangement").cloned().unwrap_or(v);
    CameraArrangement::from_json(&inner.to_string())
        .map_err(|e| CliError::Data(format!("{}: {e}", p.display())))
}

fn specialize_cmd(a: &SpecializeArgs, fmt: Format) -> Res<u8> {
    let shape = check_shape(a.shape.m, a.shape.n)?;
    let g = family(&a.family, shape)?;
    let arr = load_arrangement(&a.arrangement)?;
    let sp =
        specialize(&g.polys, shape, &arr, None, None).map_err(|e| CliError::Data(e.to_string()))?;
    let u = shape.universe();
    let nonzero: Vec<String> = sp.nonzero().iter().map(|p| format_poly(p, &u)).collect();
    let zeros = sp.zero.iter().filter(|&&z| z).count();
    let text = match fmt {
        Format::Text => {
            let head = format!("# {} of {} generators specialize to zero", zeros, g.len());
            std::iter::once(head)
                .chain(nonzero)
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Json => pretty(
            &json!({ "family": g.label.to_string(), "zero": zeros, "total": g.len(), "polynomials": nonzero }),
        ),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

pub fn parse_limits(s: Option<&str>) -> Res<Limits> {
    let mut l = Limits::default();
    let Some(s) = s else { return Ok(l) };
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad limit {part:?}")))?;
        let v: u64 = v
            .parse()
            .map_err(|_| CliError::Usage(format!("bad limit value {part:?}")))?;
        match k {
            "pairs" => l.max_pairs = Some(v as usize),
            "terms" => l.max_poly_terms = Some(v as usize),
            "secs" => l.wallclock = Some(Duration::from_secs(v)),
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown limit {k:?} (pairs, terms, secs)"
                )))
            }
        }
    }
    Ok(l)
}

/// `<family>-m<m>[-gb]`.
fn parse_basis_name(name: &str) -> Res<(String, usize, bool)> {
    let (body, complete) = match name.strip_suffix("-gb") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let bad = || {
        CliError::Usage(format!(
            "basis {name:?} is not <family>-m<m> or <family>-m<m>-gb"
        ))
    };
    let (fam, m) = body.rsplit_once("-m").ok_or_else(bad)?;
    let m: usize = m.parse().map_err(|_| bad())?;
    Ok((fam.to_string(), m, complete))
}

type CertifiedBasis = (AtlasShape, TermOrder, Vec<Polynomial>);

/// The named basis, certified under `ord`; returns the exit code to use when
/// certification does not succeed.
fn certified_basis(name: &str, ord_text: &str, limits: &Limits) -> Res<Result<CertifiedBasis, u8>> {
    let (fam, m, complete) = parse_basis_name(name)?;
    let shape = check_shape(m, 1)?;
    let bo: BlockOrder = ord_text.parse().map_err(CliError::Usage)?;
    let ord = bo.build(shape);
    let g = family(&fam, shape)?;
    let polys = if complete {
        progress(&format!("completing {} generators under {bo}", g.len()));
        match groebner_basis(&g.polys, &ord, limits) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("inconclusive: {e}");
                return Ok(Err(EXIT_INCONCLUSIVE));
            }
        }
    } else {
        g.polys
    };
    progress(&format!(
        "certifying {} polynomials under {bo}",
        polys.len()
    ));
    let cert = verify_groebner(&polys, &ord, limits);
    match cert.status {
        GbStatus::Verified => Ok(Ok((shape, ord, polys))),
        GbStatus::Refuted { pair, .. } => {
            eprintln!("basis {name} is not a Gröbner basis under {bo}: pair {pair:?} refutes it (use {name}-gb)");
            Ok(Err(EXIT_FAIL))
        }
        GbStatus::Inconclusive { reason } => {
            eprintln!("inconclusive: {reason}");
            Ok(Err(EXIT_INCONCLUSIVE))
        }
    }
}

fn nf(a: &NfArgs, fmt: Format) -> Res<u8> {
    let limits = parse_limits(a.limits.as_deref())?;
    let (fam, m, _) = parse_basis_name(&a.basis)?;
    family(&fam, check_shape(m, 1)?)?;
    let text = read(&a.poly)?;
    let shape = AtlasShape::new(m, 1);
    let f = parse_poly(text.trim(), &shape.universe())
        .map_err(|e| CliError::Data(format!("{}: {e}", a.poly.display())))?;
    let (shape, ord, basis) = match certified_basis(&a.basis, &a.order, &limits)? {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let rem = match normal_form(&f, &basis, &ord, &limits) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("inconclusive: {e}");
            return Ok(EXIT_INCONCLUSIVE);
        }
    };
    let r = format_poly(&rem, &shape.universe());
    let out = match fmt {
        Format::Text => r,
        Format::Json => pretty(&json!({
            "basis": a.basis, "order": a.order, "basis_size": basis.len(), "certified": true,
            "remainder": r, "zero": rem.is_zero()
        })),
    };
    emit(None, &out)?;
    Ok(0)
}

fn suite_report(a: &VerifyArgs, suite: Suite, limits: &Limits) -> Res<SuiteReport> {
    let m = a.m;
    let s = a.seed;
    let need = |lo: usize, hi: usize| {
        if (lo..=hi).contains(&m) {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "suite {suite:?} supports m in {lo}..={hi}"
            )))
        }
    };
    progress(&format!("suite {suite:?} m={m} seed={s}"));
    Ok(match suite {
        Suite::Vanishing => {
            need(1, 4)?;
            let shapes: Vec<AtlasShape> = verify::vanishing_grid()
                .into_iter()
                .filter(|sh| sh.m == m)
                .collect();
            verify::vanishing_shapes_suite(&shapes, m == 2, a.trials, s)
        }
        Suite::Groebner => {
            need(1, 4)?;
            verify::groebner_suite(m, limits, s)
        }
        Suite::Quotient => {
            need(1, 3)?;
            verify::quotient_suite(m, limits)
        }
        Suite::Hilbert => verify::hilbert_suite(limits, s),
        Suite::Witness => verify::witness_suite(a.budget, s),
        Suite::Division => verify::division_suite(limits),
        Suite::Dimension => verify::dimension_suite(&verify::dimension_grid(), s),
        Suite::Saturation => verify::saturation_example_suite(a.trials, s),
        Suite::Census => verify::census_suite(6),
        Suite::Bump => verify::bump_suite(a.budget, s),
        Suite::All => {
            let mut r = SuiteReport::new("all", s);
            let mut parts = vec![Suite::Vanishing, Suite::Groebner];
            if m <= 3 {
                parts.push(Suite::Quotient);
            }
            parts.extend([
                Suite::Hilbert,
                Suite::Witness,
                Suite::Dimension,
                Suite::Saturation,
                Suite::Census,
                Suite::Bump,
            ]);
            for p in parts {
                r.extend(suite_report(a, p, limits)?);
            }
            r
        }
    })
}

fn verify_cmd(a: &VerifyArgs, fmt: Format) -> Res<u8> {
    let limits = parse_limits(a.limits.as_deref())?;
    let r = suite_report(a, a.suite, &limits)?;
    if let Some(p) = &a.report {
        emit(Some(p), &r.to_json(a.timings))?;
    }
    let out = match fmt {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(a.timings),
    };
    emit(None, &out)?;
    let v = r.verdict();
    progress(&format!("verdict {v:?}"));
    Ok(match v {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn target(t: Target) -> GenericityTarget {
    match t {
        Target::Distinct => GenericityTarget::DistinctCenters,
        Target::Minor => GenericityTarget::Minor,
        Target::Ultra => GenericityTarget::Ultra,
    }
}

fn arrange(a: &ArrangeArgs, fmt: Format) -> Res<u8> {
    check_shape(a.m, 1)?;
    let (arr, rep) = random_arrangement(a.m, a.seed, target(a.target))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let arr_json: Value = serde_json::from_str(&arr.to_json()).expect("arrangement JSON");
    let out = match fmt {
        Format::Json => {
            pretty(&json!({ "arrangement": arr_json, "genericity": rep, "seed": a.seed }))
        }
        Format::Text => format!(
            "{}distinct centers: {}\nminor generic: {}\nultra-minor generic: {}",
            arr.to_text(),
            rep.distinct_centers,
            rep.minor_generic,
            rep.ultra_minor_generic
        ),
    };
    emit(a.out.as_deref(), &out)?;
    Ok(0)
}

fn correspondence_text(c: &Correspondence) -> String {
    let mut s = c.arrangement.to_text();
    for (j, q) in c.points.iter().enumerate() {
        s.push_str(&format!(
            "q{} = {:?}\n",
            j + 1,
            q.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ));
    }
    for (i, row) in c.images.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let coords: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(
                "p{}{} = {:?} lambda = {}\n",
                i + 1,
                j + 1,
                coords,
                c.lambdas[i][j]
            ));
        }
    }
    s
}

fn sample(a: &SampleArgs, fmt: Format) -> Res<u8> {
    let shape = check_shape(a.shape.m, a.shape.n)?;
    let c = verify::sample_correspondence_with(shape, a.seed, target(a.target))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let out = match fmt {
        Format::Json => {
            pretty(&serde_json::from_str::<Value>(&c.to_json()).expect("correspondence JSON"))
        }
        Format::Text => correspondence_text(&c),
    };
    emit(a.out.as_deref(), &out)?;
    Ok(0)
}

fn dims(a: &DimsArgs, fmt: Format) -> Res<u8> {
    let shape = check_shape(a.shape.m, a.shape.n)?;
    let mut rows = Vec::new();
    let mut all_agree = true;
    for (k, v) in Variety::ALL.into_iter().enumerate() {
        let r = ranks_at(v, shape, a.seed.wrapping_add(k as u64))
            .map_err(|e| CliError::Data(e.to_string()))?;
        all_agree &= r.agree();
        rows.push((v, r));
    }
    let out = match fmt {
        Format::Text => rows
            .iter()
            .map(|(v, r)| {
                format!(
                    "{v} ({},{}): cone rank {} - {} = {}; charts {} {}; expected {} {}",
                    shape.m,
                    shape.n,
                    r.cone,
                    r.factors,
                    r.cone_dim(),
                    r.charts[0],
                    r.charts[1],
                    r.expected,
                    if r.agree() { "ok" } else { "MISMATCH" }
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(v, r)| json!({ "variety": v.to_string(), "ranks": r, "agree": r.agree() }))
                .collect(),
        )),
    };
    emit(None, &out)?;
    Ok(if all_agree { 0 } else { EXIT_FAIL })
}

fn hilbert(a: &HilbertArgs, fmt: Format) -> Res<u8> {
    let limits = parse_limits(a.limits.as_deref())?;
    let Some(name) = &a.basis else {
        let r = verify::hilbert_suite(&limits, a.seed);
        emit(
            None,
            &if fmt == Format::Json {
                r.to_json(false)
            } else {
                r.to_text()
            },
        )?;
        return Ok(match r.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => EXIT_FAIL,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        });
    };
    let (shape, ord, basis) = match certified_basis(name, &a.order, &limits)? {
        Ok(b) => b,
        Err(code) => return Ok(code),
    };
    let leads: Vec<_> = basis
        .iter()
        .filter_map(|p| p.leading_monomial(&ord).ok())
        .collect();
    let grading = Grading::new(vec![0; shape.nvars()], 1);
    let mut counts = Vec::new();
    for d in 0..=a.max_degree {
        let c = standard_monomial_count(&leads, &grading, &MultiDegree(vec![d]))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        counts.push(c);
    }
    let out = match fmt {
        Format::Text => counts
            .iter()
            .enumerate()
            .map(|(d, c)| format!("degree {d}: {c}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&json!({ "basis": name, "order": a.order, "counts": counts })),
    };
    emit(None, &out)?;
    Ok(0)
}
