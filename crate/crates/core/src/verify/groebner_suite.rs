//! Buchberger-certified checks of the Gröbner, quotient and initial-ideal
//! claims, and truncated Hilbert tables of specialized bases.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::orders::{sampled_plain_order, sampled_product_order, twelve_orders, Block, BlockOrder};
use super::report::{timed, Check, SuiteReport};
use super::vanishing::sub_seed;
use crate::atlas_model::{AtlasShape, CameraArrangement};
use crate::idealgen::{
    deg6_sign_mutant, focal_ideal_generators, gaqp_generators, gm_generators, minor_factor,
    saturation_factors, sum_extended, Family, GenTag, GeneratorSet, SaturationSpec,
};
use crate::polyring::{
    format_poly, normal_form, quotient_by_variable, standard_monomial_count, verify_groebner,
    GBCertificate, GbStatus, Limits, Monomial, MultiDegree, OrderKind, Polynomial, QuotientMode,
    Scheme, TermOrder, Var,
};
use crate::specialize::{
    coincident_pair, random_arrangement, shifted_pair, specialize, GenericityTarget,
};

/// Product orders sampled per claim quantified over infinitely many orders.
pub const SAMPLED_ORDERS: usize = 8;

/// Converts a certificate into a check; a refutation carries the pair and
/// the remainder in canonical text.
pub fn certificate_check(id: impl Into<String>, cert: &GBCertificate, shape: AtlasShape) -> Check {
    let s = &cert.stats;
    let detail = format!(
        "{} generators, {} pairs ({} coprime, {} chain, {} reduced), squarefree initial {}",
        cert.generators.len(),
        s.total,
        s.coprime_skipped,
        s.chain_skipped,
        s.reduced,
        cert.squarefree_initial
    );
    match &cert.status {
        GbStatus::Verified => Check::pass(id, detail),
        GbStatus::Refuted { pair, remainder } => Check::fail(
            id,
            json!({ "pair": [pair.0, pair.1], "remainder": format_poly(remainder, &shape.universe()) }),
            detail,
        ),
        GbStatus::Inconclusive { reason } => Check::inconclusive(id, reason.clone(), detail),
    }
}

pub fn gb_check(
    id: impl Into<String>,
    polys: &[Polynomial],
    ord: &TermOrder,
    shape: AtlasShape,
    limits: &Limits,
) -> Check {
    certificate_check(id, &verify_groebner(polys, ord, limits), shape)
}

/// Verified and with a squarefree initial ideal.
fn gb_squarefree_check(
    id: String,
    polys: &[Polynomial],
    ord: &TermOrder,
    shape: AtlasShape,
    limits: &Limits,
) -> Check {
    let cert = verify_groebner(polys, ord, limits);
    let c = certificate_check(id, &cert, shape);
    if c.is_pass() && !cert.squarefree_initial {
        let bad = cert
            .leading_monomials
            .iter()
            .find(|m| !m.is_squarefree())
            .expect("non-squarefree lead");
        let lead = format_poly(
            &Polynomial::monomial(shape.nvars(), crate::polyring::q_int(1), bad.clone()),
            &shape.universe(),
        );
        return Check::fail(c.id, json!({ "lead": lead }), c.detail);
    }
    c
}

/// Minimal generators of the monomial ideal spanned by `leads`.
fn minimal_leads(leads: &[Monomial]) -> BTreeSet<Vec<(Var, u16)>> {
    leads
        .iter()
        .filter(|m| !leads.iter().any(|l| l != *m && l.divides(m)))
        .map(|m| m.pairs().to_vec())
        .collect()
}

/// Multiset equality of the nonzero elements up to sign.
pub fn same_up_to_sign(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let count = |v: &[Polynomial]| {
        let mut h: HashMap<Polynomial, usize> = HashMap::new();
        for p in v.iter().filter(|p| !p.is_zero()) {
            *h.entry(p.normalized()).or_insert(0) += 1;
        }
        h
    };
    count(a) == count(b)
}

/// The coefficient in `ℚ[A]` of the largest `(q, p)`-monomial of `g` under
/// `ord` restricted to the `q`, `p` variables.
pub fn leading_coefficient_in_a(g: &Polynomial, shape: AtlasShape, ord: &TermOrder) -> Polynomial {
    let is_a = |v: Var| (v as usize) < 12 * shape.m;
    let split = |m: &Monomial| -> (Monomial, Monomial) {
        let a = Monomial::from_pairs(m.pairs().iter().copied().filter(|&(v, _)| is_a(v)));
        let r = Monomial::from_pairs(m.pairs().iter().copied().filter(|&(v, _)| !is_a(v)));
        (a, r)
    };
    let top = g
        .terms()
        .iter()
        .map(|(_, m)| split(m).1)
        .max_by(|x, y| ord.compare(x, y))
        .expect("nonzero");
    let terms = g
        .terms()
        .iter()
        .filter_map(|(c, m)| {
            let (a, r) = split(m);
            (r == top).then(|| (c.clone(), a))
        })
        .collect();
    Polynomial::from_terms(g.nvars(), terms)
}

/// The two induced Lex orders on `ℚ[A][q, p]`.
fn induced_lex_orders() -> [BlockOrder; 2] {
    [
        BlockOrder {
            scheme: Scheme::Lex,
            blocks: [Block::A, Block::Q, Block::P],
        },
        BlockOrder {
            scheme: Scheme::Lex,
            blocks: [Block::A, Block::P, Block::Q],
        },
    ]
}

/// Every leading coefficient in `ℚ[A]` is `±` a minor of the stacked
/// `4 × 3m` matrix, and it is nonzero at `arr`.
pub fn leading_coefficient_check(gens: &GeneratorSet, arr: &CameraArrangement) -> Check {
    let shape = gens.shape;
    let id = format!("leading coefficients {} m={}", gens.label, shape.m);
    let minors: HashMap<Polynomial, usize> = saturation_factors(SaturationSpec::SUltra, shape.m)
        .iter()
        .enumerate()
        .map(|(k, f)| (minor_factor(shape, f).normalized(), k))
        .collect();
    let vals = arr.substitution(shape);
    for bo in induced_lex_orders() {
        let ord = bo.build(shape);
        for (k, g) in gens.polys.iter().enumerate() {
            let lc = leading_coefficient_in_a(g, shape, &ord);
            if !minors.contains_key(&lc.normalized()) {
                let witness = json!({ "order": bo.to_string(), "generator": k, "coefficient": format_poly(&lc, &shape.universe()) });
                return Check::fail(id, witness, "leading coefficient is not a minor");
            }
            if lc.substitute(&vals).is_zero() {
                let witness = json!({ "order": bo.to_string(), "generator": k, "arrangement": arr.to_text() });
                return Check::fail(
                    id,
                    witness,
                    "leading coefficient vanishes at the arrangement",
                );
            }
        }
    }
    Check::pass(
        id,
        format!(
            "{} generators under 2 induced Lex orders; all nonzero at the arrangement",
            gens.len()
        ),
    )
}

/// Leading monomials of a reduced basis, as exponent lists.
type InitialIdeal = BTreeSet<Vec<(Var, u16)>>;

/// The twelve orders give exactly four initial ideals of `G_M`.
pub fn initial_ideal_count_check(m: usize, limits: &Limits) -> Check {
    let shape = AtlasShape::new(m, 1);
    let id = format!("initial ideals G_M m={m}");
    let gm = gm_generators(m);
    let mut distinct: Vec<(InitialIdeal, Vec<String>)> = Vec::new();
    for bo in twelve_orders() {
        let cert = verify_groebner(&gm.polys, &bo.build(shape), limits);
        if !cert.is_verified() {
            return Check::inconclusive(
                id,
                format!("{bo} not verified"),
                "initial ideals need verified bases",
            );
        }
        let key = minimal_leads(&cert.leading_monomials);
        match distinct.iter_mut().find(|(k, _)| *k == key) {
            Some((_, names)) => names.push(bo.to_string()),
            None => distinct.push((key, vec![bo.to_string()])),
        }
    }
    let classes: Vec<Vec<String>> = distinct.into_iter().map(|(_, n)| n).collect();
    Check::from_bool(
        id,
        classes.len() == 4,
        || json!({ "classes": classes }),
        format!("{} distinct initial ideals", classes.len()),
    )
}

/// The first degree-6 element with the alternating sign replaced by `−1`.
fn sign_mutant(m: usize) -> GeneratorSet {
    let mut gens = gm_generators(m);
    let k = gens
        .tags
        .iter()
        .position(|t| matches!(t, GenTag::Deg6 { .. }))
        .expect("m >= 2");
    let GenTag::Deg6 { cams, rows, j } = gens.tags[k].clone() else {
        unreachable!()
    };
    gens.polys[k] = deg6_sign_mutant(gens.shape, j, cams, rows);
    gens
}

fn restricted_orders() -> Vec<BlockOrder> {
    twelve_orders()
        .into_iter()
        .filter(|o| o.blocks[0] == Block::A)
        .collect()
}

/// Gröbner claims at `m` cameras:
/// (a) Focals234 under sampled product orders `p > A > q` (m ≤ 3);
/// (b) G_M under the twelve orders, squarefree initial ideals, the initial-ideal count, and a
///     sign mutant that must be refuted;
/// (c) G_Aqp specialized at an ultra-minor-generic arrangement, with the leading-coefficient check;
/// (d) Focals234 specialized at a minor-generic arrangement under sampled
///     orders (m ≤ 4);
/// (e) unions over two world points at m = 2.
pub fn groebner_suite(m: usize, limits: &Limits, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(format!("groebner m={m}"), seed);
    let shape = AtlasShape::new(m, 1);
    let focals = focal_ideal_generators(shape, &Family::Focals234);
    if (2..=3).contains(&m) {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 1));
        for k in 0..SAMPLED_ORDERS {
            let ord = sampled_product_order(shape, &mut rng);
            r.push(timed(|| {
                gb_check(
                    format!("(a) focals234 m={m} product order {k}"),
                    &focals.polys,
                    &ord,
                    shape,
                    limits,
                )
            }));
        }
    }
    if m <= 4 {
        let gm = gm_generators(m);
        for bo in twelve_orders() {
            let ord = bo.build(shape);
            r.push(timed(|| {
                gb_squarefree_check(
                    format!("(b) G_M m={m} {bo}"),
                    &gm.polys,
                    &ord,
                    shape,
                    limits,
                )
            }));
        }
        if (2..=3).contains(&m) {
            r.push(timed(|| initial_ideal_count_check(m, limits)));
            let mutant = sign_mutant(m);
            r.push(timed(|| {
                let cert =
                    verify_groebner(&mutant.polys, &BlockOrder::canonical().build(shape), limits);
                let id = format!("(b) G_M m={m} degree-6 sign mutant refuted");
                match cert.status {
                    GbStatus::Refuted { pair, .. } => {
                        Check::pass(id, format!("refuted at pair {pair:?}"))
                    }
                    GbStatus::Verified => Check::fail(
                        id,
                        json!({ "mutant": "verified" }),
                        "mutant passed the certificate",
                    ),
                    GbStatus::Inconclusive { reason } => {
                        Check::inconclusive(id, reason, "mutant check")
                    }
                }
            }));
        }
    }
    if (2..=3).contains(&m) {
        let s = sub_seed(seed, 2);
        r.push(timed(|| {
            match random_arrangement(m, s, GenericityTarget::Ultra) {
                Err(e) => Check::inconclusive(
                    format!("(c) G_Aqp specialized m={m}"),
                    e.to_string(),
                    "no arrangement",
                ),
                Ok((arr, _)) => {
                    let gaqp = gaqp_generators(m);
                    let sp = specialize(&gaqp.polys, shape, &arr, None, None)
                        .expect("shape fits")
                        .nonzero();
                    let mut worst =
                        Check::pass(format!("(c) G_Aqp specialized m={m}"), String::new());
                    let mut details = Vec::new();
                    for bo in restricted_orders() {
                        let c = gb_check(
                            format!("(c) G_Aqp specialized m={m}"),
                            &sp,
                            &bo.build(shape),
                            shape,
                            limits,
                        );
                        details.push(format!("{bo}: {}", c.status.label()));
                        if !c.is_pass() && worst.is_pass() {
                            worst = c;
                        }
                    }
                    worst.detail = format!(
                        "{} specialized generators; {}",
                        sp.len(),
                        details.join(", ")
                    );
                    worst
                }
                .with_seed(s),
            }
        }));
        let s3 = sub_seed(seed, 3);
        if let Ok((arr, _)) = random_arrangement(m, s3, GenericityTarget::Ultra) {
            r.push(timed(|| {
                leading_coefficient_check(&gm_generators(m), &arr).with_seed(s3)
            }));
        }
    }
    if (2..=4).contains(&m) {
        let s = sub_seed(seed, 4);
        match random_arrangement(m, s, GenericityTarget::Minor) {
            Err(e) => r.push(Check::inconclusive(
                format!("(d) focals234 specialized m={m}"),
                e.to_string(),
                "no arrangement",
            )),
            Ok((arr, _)) => {
                let sp = specialize(&focals.polys, shape, &arr, None, None)
                    .expect("shape fits")
                    .nonzero();
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 5));
                for k in 0..SAMPLED_ORDERS {
                    let ord = sampled_plain_order(shape, &mut rng);
                    r.push(timed(|| {
                        gb_check(
                            format!("(d) focals234 specialized m={m} sampled order {k}"),
                            &sp,
                            &ord,
                            shape,
                            limits,
                        )
                        .with_seed(s)
                    }));
                }
            }
        }
    }
    if m == 2 {
        r.extend(union_checks(limits, sub_seed(seed, 6)));
    }
    r
}

/// Unions of specialized bases over the world points of `(2, 2)`.
pub fn union_checks(limits: &Limits, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("groebner union", seed);
    let shape = AtlasShape::new(2, 2);
    let Ok((arr, _)) = random_arrangement(2, seed, GenericityTarget::Ultra) else {
        r.push(Check::inconclusive(
            "(e) unions (2,2)",
            "no arrangement",
            "sampling",
        ));
        return r;
    };
    let ord = TermOrder::canonical(shape.nvars());
    for fam in [Family::Focals234, Family::GAqp] {
        let gens = sum_extended(shape, &fam);
        let sp = specialize(&gens.polys, shape, &arr, None, None)
            .expect("shape fits")
            .nonzero();
        let cert = verify_groebner(&sp, &ord, limits);
        let mut c = certificate_check(
            format!("(e) union of specialized {fam} (2,2)"),
            &cert,
            shape,
        );
        if c.is_pass() && cert.stats.coprime_skipped == 0 {
            c = Check::fail(
                c.id,
                json!({ "coprime_skipped": 0 }),
                "expected coprime pairs across world points",
            );
        }
        r.push(c.with_seed(seed));
    }
    r
}

/// Relabels variables by `map` (old index to new index).
pub fn relabel_order(ord: &TermOrder, map: &[Var]) -> TermOrder {
    let vars: Vec<Var> = ord.var_order().iter().map(|&v| map[v as usize]).collect();
    match ord.kind() {
        OrderKind::Plain(Scheme::Lex) => TermOrder::lex(vars),
        OrderKind::Plain(Scheme::GRevLex) => TermOrder::grevlex(vars),
        OrderKind::Product(blocks) => {
            let mut rest = vars.as_slice();
            let mut out = Vec::new();
            for &(len, scheme) in blocks {
                out.push((rest[..len].to_vec(), scheme));
                rest = &rest[len..];
            }
            TermOrder::product(out)
        }
    }
}

/// Variable map swapping cameras `a`, `b` and world coordinates `c1`, `c2`.
pub fn symmetry_map(shape: AtlasShape, cams: (usize, usize), coords: (usize, usize)) -> Vec<Var> {
    let cam = |i: usize| {
        if i == cams.0 {
            cams.1
        } else if i == cams.1 {
            cams.0
        } else {
            i
        }
    };
    let co = |c: usize| {
        if c == coords.0 {
            coords.1
        } else if c == coords.1 {
            coords.0
        } else {
            c
        }
    };
    let mut map: Vec<Var> = (0..shape.nvars() as Var).collect();
    for i in 1..=shape.m {
        for r in 1..=3 {
            for c in 1..=4 {
                map[shape.a(i, r, c) as usize] = shape.a(cam(i), r, co(c));
            }
        }
        for j in 1..=shape.n {
            for k in 1..=3 {
                map[shape.p(i, j, k) as usize] = shape.p(cam(i), j, k);
            }
        }
    }
    for j in 1..=shape.n {
        for k in 1..=4 {
            map[shape.q(j, k) as usize] = shape.q(j, co(k));
        }
    }
    map
}

/// Every element of `a` reduces to zero modulo `b` (a Gröbner basis under `ord`).
fn reduces_to_zero(
    a: &[Polynomial],
    b: &[Polynomial],
    ord: &TermOrder,
    limits: &Limits,
) -> Result<Option<usize>, String> {
    for (k, f) in a.iter().enumerate() {
        if !normal_form(f, b, ord, limits)?.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Quotient identities at `m ≤ 3` cameras:
/// (i) `G_M : q[4]` equals `G_Aqp` up to sign;
/// (ii) no element of `G_Aqp` is divisible by `q[4]`, `A_m[3,4]` or `p_m[3]`;
/// (iii) after swapping cameras 1, 2 and world coordinates 1, 4 the relabeled
///       basis generates the same ideal and its quotient by `q[1]` is the
///       relabeled `G_Aqp`.
pub fn quotient_suite(m: usize, limits: &Limits) -> SuiteReport {
    let mut r = SuiteReport::new(format!("quotient m={m}"), 0);
    let shape = AtlasShape::new(m, 1);
    let gm = gm_generators(m);
    let gaqp = gaqp_generators(m);
    let q4 = shape.q(1, 4);
    let ord_q = BlockOrder {
        scheme: Scheme::GRevLex,
        blocks: [Block::A, Block::P, Block::Q],
    }
    .build(shape);
    r.push(timed(|| {
        let id = format!("(i) G_M : q[4] = G_Aqp m={m}");
        let cert = verify_groebner(&gm.polys, &ord_q, limits);
        if !cert.is_verified() {
            return certificate_check(id, &cert, shape);
        }
        match quotient_by_variable(&gm.polys, q4, &ord_q, &QuotientMode::GrevlexCheapest) {
            Err(e) => Check::fail(
                id,
                json!({ "error": e.to_string() }),
                "quotient precondition",
            ),
            Ok(quo) => Check::from_bool(
                id,
                same_up_to_sign(&quo, &gaqp.polys),
                || json!({ "quotient_census": format!("{:?}", census(&quo)) }),
                format!("census {}", census_text(&quo)),
            ),
        }
    }));
    let cases = [
        (
            "q[4]",
            q4,
            BlockOrder {
                scheme: Scheme::GRevLex,
                blocks: [Block::A, Block::P, Block::Q],
            },
        ),
        (
            "A_m[3,4]",
            shape.a(m, 3, 4),
            BlockOrder {
                scheme: Scheme::GRevLex,
                blocks: [Block::Q, Block::P, Block::A],
            },
        ),
        (
            "p_m[3]",
            shape.p(m, 1, 3),
            BlockOrder {
                scheme: Scheme::GRevLex,
                blocks: [Block::A, Block::Q, Block::P],
            },
        ),
    ];
    for (name, x, bo) in cases {
        r.push(timed(|| {
            let id = format!("(ii) G_Aqp : {name} unchanged m={m}");
            let ord = bo.build(shape);
            let cert = verify_groebner(&gaqp.polys, &ord, limits);
            if !cert.is_verified() {
                return certificate_check(id, &cert, shape);
            }
            match quotient_by_variable(&gaqp.polys, x, &ord, &QuotientMode::GrevlexCheapest) {
                Err(e) => Check::fail(
                    id,
                    json!({ "error": e.to_string() }),
                    "quotient precondition",
                ),
                Ok(quo) => {
                    let divisible: Vec<usize> = gaqp
                        .polys
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| g.div_by_var(x).is_some())
                        .map(|(k, _)| k)
                        .collect();
                    Check::from_bool(
                        id,
                        quo == gaqp.polys && divisible.is_empty(),
                        || json!({ "divisible": divisible }),
                        format!("{bo}: no generator divisible"),
                    )
                }
            }
        }));
    }
    if m >= 2 {
        r.push(timed(|| symmetry_check(m, limits)));
    }
    r
}

fn census(v: &[Polynomial]) -> Vec<(u32, usize)> {
    let mut c: HashMap<u32, usize> = HashMap::new();
    for p in v {
        *c.entry(p.total_degree().unwrap_or(0)).or_insert(0) += 1;
    }
    let mut c: Vec<_> = c.into_iter().collect();
    c.sort();
    c
}

fn census_text(v: &[Polynomial]) -> String {
    census(v)
        .iter()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn symmetry_check(m: usize, limits: &Limits) -> Check {
    let shape = AtlasShape::new(m, 1);
    let id = format!("(iii) camera 1<->2, coordinate 1<->4 symmetry m={m}");
    let map = symmetry_map(shape, (1, 2), (1, 4));
    let nv = shape.nvars();
    let gm = gm_generators(m);
    let gaqp = gaqp_generators(m);
    let ord = BlockOrder {
        scheme: Scheme::GRevLex,
        blocks: [Block::A, Block::P, Block::Q],
    }
    .build(shape);
    let ord2 = relabel_order(&ord, &map);
    let h: Vec<Polynomial> = gm.polys.iter().map(|g| g.relabel(nv, &map)).collect();
    let cert = verify_groebner(&h, &ord2, limits);
    if !cert.is_verified() {
        return certificate_check(id, &cert, shape);
    }
    let same_ideal = reduces_to_zero(&h, &gm.polys, &ord, limits)
        .and_then(|a| Ok((a, reduces_to_zero(&gm.polys, &h, &ord2, limits)?)));
    match same_ideal {
        Err(e) => return Check::inconclusive(id, e, "normal form budget"),
        Ok((Some(k), _)) | Ok((_, Some(k))) => {
            return Check::fail(id, json!({ "generator": k }), "relabeled ideal differs");
        }
        Ok((None, None)) => {}
    }
    let q1 = shape.q(1, 1);
    match quotient_by_variable(&h, q1, &ord2, &QuotientMode::GrevlexCheapest) {
        Err(e) => Check::fail(
            id,
            json!({ "error": e.to_string() }),
            "quotient precondition",
        ),
        Ok(quo) => {
            let direct: Vec<Polynomial> = gaqp.polys.iter().map(|g| g.relabel(nv, &map)).collect();
            Check::from_bool(
                id,
                same_up_to_sign(&quo, &direct),
                || json!({ "census": census_text(&quo) }),
                "relabeled G_M is a Gröbner basis of the same ideal; its quotient by q[1] is the relabeled G_Aqp",
            )
        }
    }
}

/// Counts standard monomials of `leads` in the listed slot degrees; other
/// slots have degree zero.
fn table(leads: &[Monomial], shape: AtlasShape, slots: &[usize], degs: &[Vec<u32>]) -> Vec<u64> {
    let g = shape.grading();
    degs.iter()
        .map(|d| {
            let mut md = MultiDegree::zero(g.nslots());
            for (s, &e) in slots.iter().zip(d) {
                md.0[*s] = e;
            }
            standard_monomial_count(leads, &g, &md).expect("small degree")
        })
        .collect()
}

/// Bidegrees through total degree 2 in the order `1, T1, T2, T1², T1T2, T2²`.
fn bidegrees() -> Vec<Vec<u32>> {
    vec![
        vec![0, 0],
        vec![1, 0],
        vec![0, 1],
        vec![2, 0],
        vec![1, 1],
        vec![0, 2],
    ]
}

/// Tridegrees `(q, p1, p2)` through total degree 2, in the order
/// `1, Tq, Tp1, Tp2, Tq², TqTp1, TqTp2, Tp1², Tp1Tp2, Tp2²`.
fn tridegrees() -> Vec<Vec<u32>> {
    let mut v = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    for a in 0..3 {
        for b in a..3 {
            let mut d = vec![0; 3];
            d[a] += 1;
            d[b] += 1;
            v.push(d);
        }
    }
    v
}

fn table_check(id: &str, got: Vec<u64>, want: &[u64], detail: String) -> Check {
    Check::from_bool(
        id,
        got == want,
        || json!({ "got": got, "want": want }),
        format!("{detail}: {got:?}"),
    )
}

/// Truncated multigraded Hilbert functions of three specialized ideals at
/// `m = 2`: two cameras with distinct centers, two cameras with a common
/// center, and the specialized `G_Aqp`.
pub fn hilbert_suite(limits: &Limits, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("hilbert", seed);
    let shape = AtlasShape::new(2, 1);
    let p_slots = [shape.slot(shape.p(1, 1, 1)), shape.slot(shape.p(2, 1, 1))];
    let ord = TermOrder::canonical(shape.nvars());
    let focals = focal_ideal_generators(shape, &Family::Focals234);

    r.push(timed(|| {
        let id = "distinct centers (I 0),(0 I)";
        let sp = specialize(&focals.polys, shape, &shifted_pair(), None, None)
            .expect("fits")
            .nonzero();
        let u = shape.universe();
        let toric = crate::polyring::parse_poly("-p1_2*p2_2 + p1_3*p2_1", &u).expect("parses");
        if sp.len() != 1 || !sp[0].eq_up_to_sign(&toric) {
            let got: Vec<String> = sp.iter().map(|p| format_poly(p, &u)).collect();
            return Check::fail(
                id,
                json!({ "specialized": got }),
                "expected the toric binomial",
            );
        }
        let cert = verify_groebner(&sp, &ord, limits);
        if !cert.is_verified() {
            return certificate_check(id, &cert, shape);
        }
        table_check(
            id,
            table(&cert.leading_monomials, shape, &p_slots, &bidegrees()),
            &[1, 3, 3, 6, 8, 6],
            "toric binomial".into(),
        )
    }));

    r.push(timed(|| {
        let id = "coincident centers (I 0),(I 0)";
        let sp = specialize(&focals.polys, shape, &coincident_pair(), None, None).expect("fits");
        if !sp.nonzero().is_empty() {
            return Check::fail(
                id,
                json!({ "nonzero_specialized_focals": sp.nonzero().len() }),
                "2-focal should vanish",
            );
        }
        let p = |i: usize, k: usize| shape.var_poly(shape.p(i, 1, k));
        let minors: Vec<Polynomial> = [(1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(a, b)| p(1, a).mul(&p(2, b)).sub(&p(1, b).mul(&p(2, a))))
            .collect();
        let cert = verify_groebner(&minors, &ord, limits);
        if !cert.is_verified() {
            return certificate_check(id, &cert, shape);
        }
        table_check(
            id,
            table(&cert.leading_monomials, shape, &p_slots, &bidegrees()),
            &[1, 3, 3, 6, 6, 6],
            "2-focal specializes to 0; 2x2 minors of (p1 p2)".into(),
        )
    }));

    let s = sub_seed(seed, 1);
    r.push(timed(|| {
        let id = "specialized G_Aqp m=2";
        let Ok((arr, _)) = random_arrangement(2, s, GenericityTarget::Ultra) else {
            return Check::inconclusive(id, "no arrangement", "sampling");
        };
        let sp = specialize(&gaqp_generators(2).polys, shape, &arr, None, None)
            .expect("fits")
            .nonzero();
        let cert = verify_groebner(&sp, &ord, limits);
        if !cert.is_verified() {
            return certificate_check(id, &cert, shape);
        }
        let slots = [shape.slot(shape.q(1, 1)), p_slots[0], p_slots[1]];
        table_check(
            id,
            table(&cert.leading_monomials, shape, &slots, &tridegrees()),
            &[1, 4, 3, 3, 10, 9, 9, 6, 8, 6],
            "grades (q, p1, p2)".into(),
        )
        .with_seed(s)
    }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groebner_claims_at_two_cameras() {
        let r = groebner_suite(2, &Limits::default(), 7);
        assert!(r.all_pass(), "{}", r.to_text());
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.id.starts_with("(b) G_M m=2 "))
                .count(),
            12 + 1
        );
    }

    #[test]
    fn quotient_identities_at_two_cameras() {
        let r = quotient_suite(2, &Limits::default());
        assert!(r.all_pass(), "{}", r.to_text());
        assert!(
            r.checks[0].detail.contains("3:6 4:2 5:9 6:7"),
            "{}",
            r.checks[0].detail
        );
    }

    #[test]
    fn hilbert_tables() {
        let r = hilbert_suite(&Limits::default(), 3);
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn relabel_is_an_involution() {
        let s = AtlasShape::new(3, 1);
        let map = symmetry_map(s, (1, 2), (1, 4));
        for v in 0..s.nvars() as Var {
            assert_eq!(map[map[v as usize] as usize], v);
        }
        let ord = TermOrder::canonical(s.nvars());
        assert_eq!(relabel_order(&relabel_order(&ord, &map), &map), ord);
    }

    #[test]
    fn leading_coefficient_of_a_minor_generator() {
        let s = AtlasShape::new(1, 1);
        let g = &gm_generators(1).polys[0];
        let lc = leading_coefficient_in_a(g, s, &induced_lex_orders()[0].build(s));
        assert!(lc.total_degree() == Some(1), "{lc:?}");
    }
}
