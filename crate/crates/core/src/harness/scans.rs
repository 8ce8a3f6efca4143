use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::report::{Case, ScanReport};
use super::{build_generalized, build_paper_objects, GeneralizedObjects, PaperObjects};
use crate::groups::{alexander_polynomial, hom_count, AbelianGroup, FiniteGroup, Presentation};
use crate::json::JsonInt;
use crate::lspace::{certify, is_qhs, Rule, Verdict};
use crate::seifert::{Recognition, SeifertClosed};
use crate::tangles::{double_branched_cover, lens_homeo_equal, tangle_from_slope, two_bridge, LensSpace};
use crate::{Error, Int, Result, Slope};

pub const DEFAULT_ALPHA_BOUND: u32 = 10;
pub const DEFAULT_BETA_BOUND: u32 = 10;
pub const DEFAULT_LEMMA1_BOUND: u32 = 50;
pub const DEFAULT_REMARK_BOUND: u32 = 25;
pub const DEFAULT_FIBRATION_BOUND: u32 = 20;
pub const DEFAULT_GENERALIZED_BOUND: u32 = 6;

struct Context {
    objects: PaperObjects,
    generalized: Option<GeneralizedObjects>,
}

type Outcome = Result<(String, bool)>;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn coprime(p: i64, q: i64) -> bool {
    p.gcd(&q) == 1
}

fn params(entries: &[(&str, Vec<Int>)]) -> BTreeMap<String, Vec<JsonInt>> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.iter().cloned().map(JsonInt).collect()))
        .collect()
}

fn run(kind: &str, parameters: BTreeMap<String, Vec<JsonInt>>, inputs: Vec<(&'static str, Vec<Int>)>, cones: Option<&[Int]>) -> Result<ScanReport> {
    let start = Instant::now();
    let ctx = context(cones)?;
    let cases = inputs
        .into_par_iter()
        .map(|(class, input)| evaluate(&ctx, class, input))
        .collect();
    Ok(ScanReport::new(kind, parameters, cases, start.elapsed()))
}

fn context(cones: Option<&[Int]>) -> Result<Context> {
    Ok(Context {
        objects: build_paper_objects(),
        generalized: cones.map(build_generalized).transpose()?,
    })
}

/// Recomputes the given cases (used to revalidate stored reports).
pub(crate) fn evaluate_all(cases: &[Case], cones: Option<&[Int]>) -> Vec<Case> {
    let Ok(ctx) = context(cones) else {
        return vec![];
    };
    cases
        .par_iter()
        .map(|c| {
            let class = known_class(&c.class).unwrap_or("unknown");
            evaluate(&ctx, class, c.input.clone())
        })
        .collect()
}

const CLASSES: &[&str] = &[
    "objects",
    "lemma1",
    "fiber_filling",
    "theorem",
    "longitude",
    "n_filling",
    "fibration_homology",
    "fibration_homcount",
    "alexander",
    "remark",
    "generalized_objects",
    "generalized",
];

fn known_class(name: &str) -> Option<&'static str> {
    CLASSES.iter().copied().find(|c| *c == name)
}

fn evaluate(ctx: &Context, class: &'static str, input: Vec<Int>) -> Case {
    let o = &ctx.objects;
    let outcome: Outcome = match (class, input.as_slice()) {
        ("objects", []) => objects_case(o),
        ("lemma1", [p, q]) => lemma1_case(o, p, q),
        ("fiber_filling", []) => fiber_filling_case(o),
        ("theorem", [p, q, r, s]) => theorem_case(o, p, q, r, s),
        ("longitude", [p, q]) => longitude_case(o, p, q),
        ("n_filling", [p, q]) => n_filling_case(o, p, q),
        ("fibration_homology", [p, q]) => fibration_homology_case(o, p, q),
        ("fibration_homcount", [p, q]) => fibration_homcount_case(o, p, q),
        ("alexander", [p, q]) => alexander_case(o, p, q),
        ("remark", [p, q]) => remark_case(o, p, q),
        ("generalized_objects", []) => match &ctx.generalized {
            Some(g) => generalized_objects_case(g),
            None => Err(Error::EmptyCones),
        },
        ("generalized", [r, s]) => match &ctx.generalized {
            Some(g) => generalized_case(g, r, s),
            None => Err(Error::EmptyCones),
        },
        _ => Err(Error::Parse(format!("malformed case {class} with {} inputs", input.len()))),
    };
    let (verdict, ok) = outcome.unwrap_or_else(|e| (format!("error: {e}"), false));
    Case::new(class, input, verdict, ok)
}

fn slope(p: &Int, q: &Int) -> Result<Slope> {
    Slope::new(p.clone(), q.clone())
}

fn sorted(mut v: Vec<Int>) -> Vec<Int> {
    v.sort();
    v
}

/// H1 of the double filling `M(φ0, α)`: `Z²`, `Z`, or `Z ⊕ Z/p`.
fn lemma1_prediction(p: &Int) -> AbelianGroup {
    match p {
        p if p.is_zero() => AbelianGroup::free(2),
        p if p.is_one() => AbelianGroup::free(1),
        p => AbelianGroup::free_plus_cyclic(1, p.clone()),
    }
}

fn lemma1_group(o: &PaperObjects, alpha: &Slope) -> Result<Presentation> {
    o.m_group.fill_quotient(0, &o.phi0())?.fill_quotient(0, alpha)
}

fn objects_case(o: &PaperObjects) -> Outcome {
    let bad = o.check();
    if bad.is_empty() {
        Ok(("all defining properties hold".into(), true))
    } else {
        Ok((format!("failed: {}", bad.join("; ")), false))
    }
}

fn lemma1_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let h1 = lemma1_group(o, &alpha)?.abelianization();
    let ok = h1 == lemma1_prediction(alpha.p());
    Ok((format!("H1 = {h1}"), ok))
}

fn fiber_filling_case(o: &PaperObjects) -> Outcome {
    let phi0 = o.phi0();
    let t1 = o.m_seifert.fill(0, &phi0)?.is_fiber_filling();
    let t2 = o.m_seifert.fill(1, &phi0)?.is_fiber_filling();
    Ok(("filling either boundary along phi0 leaves the Seifert calculus".into(), t1 && t2))
}

fn theorem_case(o: &PaperObjects, p: &Int, q: &Int, r: &Int, s: &Int) -> Outcome {
    let (alpha, beta) = (slope(p, q)?, slope(r, s)?);
    let phi0 = o.phi0();
    let (n, m) = (alpha.distance(&phi0), beta.distance(&phi0));
    let once = o.m_seifert.fill(1, &alpha)?;
    let Some(once) = once.bounded() else {
        return Ok(("first filling did not leave a boundary torus".into(), false));
    };
    let first_ok = once.base().cone_points() == [n.clone()] && !once.base().is_orientable();
    let twice = once.fill(0, &beta)?;
    let Some(closed) = twice.closed() else {
        return Ok(("second filling is not closed Seifert".into(), false));
    };
    let mut expected = vec![n];
    if m > Int::one() {
        expected.push(m);
    }
    let base_ok = closed.base().is_projective_plane() && closed.base().cone_points() == sorted(expected);
    let cert = certify(closed)?;
    let cert_ok = cert.verdict == Verdict::LSpace && cert.rule == Rule::NonOrientableBase && cert.revalidate();
    let h1 = closed.h1();
    let group = o.m_group.fill_quotient(1, &alpha)?.fill_quotient(0, &beta)?.abelianization();
    let irreducible = closed.recognize()?.is_irreducible();
    let ok = first_ok && base_ok && is_qhs(closed) && cert_ok && group == h1 && irreducible;
    Ok((format!("{} {:?}/{:?} H1 = {h1}", closed.base(), cert.verdict, cert.rule), ok))
}

fn longitude_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let phi0 = o.phi0();
    let longitude = o.m_group.fill_quotient(1, &alpha)?.rational_longitude(0)?;
    let once = o.m_seifert.fill(1, &alpha)?;
    let fiber = match once.bounded() {
        Some(b) => b.fill(0, &phi0)?.is_fiber_filling() && b.fiber_slope(0)? == phi0,
        None => false,
    };
    Ok((format!("longitude {longitude}, fiber-slope filling skipped"), longitude == phi0 && fiber))
}

fn n_filling_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let (d0, d1) = (alpha.distance(&o.phi0()), alpha.distance(&o.phi1()));
    let mobius = o.n_mobius.fill(0, &alpha)?;
    let disk = o.n_disk.fill(0, &alpha)?;
    let (Some(mobius), Some(disk)) = (mobius.closed(), disk.closed()) else {
        return Ok(("filling is not closed Seifert on both structures".into(), false));
    };
    let mobius_cones: Vec<Int> = if d0 > Int::one() { vec![d0.clone()] } else { vec![] };
    let disk_cones = sorted(
        [Int::from(2), Int::from(2), d1.clone()]
            .into_iter()
            .filter(|c| !c.is_one())
            .collect(),
    );
    let bases_ok = mobius.base().is_projective_plane()
        && mobius.base().cone_points() == mobius_cones
        && disk.base().is_sphere()
        && disk.base().cone_points() == disk_cones;
    let cert = certify(disk)?;
    let expected_rule = if d1 > Int::one() { Rule::Elliptic } else { Rule::LensSpace };
    let cert_ok = cert.verdict == Verdict::LSpace && cert.rule == expected_rule && cert.revalidate();
    let group = o.n_group.fill_quotient(0, &alpha)?.abelianization();
    let h1_ok = mobius.h1() == disk.h1() && disk.h1() == group && group.order() == Some(4 * &d0);
    Ok((
        format!("{} and {}, {:?} by {:?}, H1 = {group}", mobius.base(), disk.base(), cert.verdict, cert.rule),
        bases_ok && cert_ok && h1_ok,
    ))
}

fn fibration_group(o: &PaperObjects, alpha: &Slope) -> Result<Presentation> {
    o.m_group.fill_quotient(1, alpha)?.fill_quotient(0, &o.phi0())
}

/// H1 of the closed `S²`- and `RP²`-bundles over the circle.
fn bundle_homologies() -> [AbelianGroup; 3] {
    [
        AbelianGroup::free(1),
        AbelianGroup::free(1),
        AbelianGroup::free_plus_cyclic(1, 2),
    ]
}

fn fibration_homology_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let h1 = fibration_group(o, &alpha)?.abelianization();
    let predicted = h1 == AbelianGroup::free_plus_cyclic(1, alpha.p().clone());
    let excluded = !bundle_homologies().contains(&h1);
    let two = *alpha.p() == Int::from(2);
    let note = match (excluded, two) {
        (true, _) => "differs from every S2- and RP2-bundle",
        (false, true) => "matches the RP2 x S1 homology; settled by the hom count",
        (false, false) => "matches a bundle homology",
    };
    Ok((format!("H1 = {h1}, {note}"), predicted && (excluded || two)))
}

fn fibration_homcount_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let s3 = FiniteGroup::symmetric(3);
    let filled = hom_count(&fibration_group(o, &alpha)?, &s3)?;
    let product = Presentation::parse(&["x", "y"], &["[x,y]", "yy"], &[])?;
    let bundle = hom_count(&product, &s3)?;
    Ok((
        format!("|Hom(-, S3)| = {filled} versus {bundle} for Z x Z/2"),
        filled == 24 && bundle == 12,
    ))
}

fn alexander_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let poly = alexander_polynomial(&o.m_group.fill_quotient(1, &alpha)?)?;
    Ok((format!("Alexander polynomial {poly}"), true))
}

fn remark_case(o: &PaperObjects, p: &Int, q: &Int) -> Outcome {
    let alpha = slope(p, q)?;
    let cover = double_branched_cover(&two_bridge(&tangle_from_slope(&alpha)));
    let h1 = lemma1_group(o, &alpha)?.abelianization();
    let order_ok = h1 == AbelianGroup::free_plus_cyclic(1, cover.p().clone());
    let lens = |q: Int| LensSpace::new(p.clone(), q);
    let shifts_ok = lens_homeo_equal(&cover, &lens(q.clone())?)
        && lens_homeo_equal(&cover, &lens(q + p)?)
        && lens_homeo_equal(&cover, &lens(q - p)?);
    let seifert_ok = match SeifertClosed::lens_space(p.clone(), q.clone())?.recognize()? {
        Recognition::Lens { p, q } => (p, q) == cover.canonical(),
        _ => false,
    };
    Ok((format!("{cover}, H1 = {h1}"), order_ok && shifts_ok && seifert_ok))
}

fn generalized_objects_case(g: &GeneralizedObjects) -> Outcome {
    let mu = Slope::new(1, 0)?;
    let phi = Slope::new(0, 1)?;
    let filled = g.seifert.fill(0, &mu)?;
    let closed_ok = filled.closed() == Some(&g.closed);
    let h1_ok = g.group.fill_quotient(0, &mu)?.abelianization() == g.closed.h1()
        && g.group.abelianization() == g.seifert.h1();
    let longitude_ok = g.group.rational_longitude(0)? == phi && g.seifert.fiber_slope(0)? == phi;
    Ok((
        format!("mu-filling is {}, H1 = {}", g.closed.base(), g.closed.h1()),
        closed_ok && h1_ok && longitude_ok,
    ))
}

fn generalized_case(g: &GeneralizedObjects, r: &Int, s: &Int) -> Outcome {
    let beta = slope(r, s)?;
    let m = beta.distance(&Slope::new(0, 1)?);
    let filled = g.seifert.fill(0, &beta)?;
    let Some(closed) = filled.closed() else {
        return Ok(("filling is not closed Seifert".into(), false));
    };
    let mut expected = g.cones.clone();
    if m > Int::one() {
        expected.push(m);
    }
    let base_ok = closed.base().is_projective_plane() && closed.base().cone_points() == sorted(expected);
    let cert = certify(closed)?;
    let cert_ok = cert.verdict == Verdict::LSpace && cert.rule == Rule::NonOrientableBase && cert.revalidate();
    let h1 = closed.h1();
    let group = g.group.fill_quotient(0, &beta)?.abelianization();
    Ok((
        format!("{} {:?}/{:?} H1 = {h1}", closed.base(), cert.verdict, cert.rule),
        base_ok && is_qhs(closed) && cert_ok && group == h1,
    ))
}

/// Slopes `(p, q)` with `p` in the range, `|q| ≤ q_bound`, in normal form.
fn slopes_in(p_range: std::ops::RangeInclusive<i64>, q_bound: i64) -> Vec<(i64, i64)> {
    let mut out = vec![];
    for p in p_range {
        for q in -q_bound..=q_bound {
            if coprime(p, q) && (p > 0 || q == 1) {
                out.push((p, q));
            }
        }
    }
    out
}

/// H1 of `M(φ0, α)` for every slope `α = (p, q)` with `0 ≤ p ≤ bound` and
/// `|q| ≤ bound`.
pub fn lemma1_scan(bound: u32) -> Result<ScanReport> {
    let b = i64::from(bound.max(2));
    let mut inputs: Vec<(&'static str, Vec<Int>)> = vec![("fiber_filling", vec![])];
    inputs.extend(slopes_in(0..=b, b).into_iter().map(|(p, q)| ("lemma1", ints(&[p, q]))));
    run("lemma1", params(&[("bound", ints(&[b]))]), inputs, None)
}

/// Every closed filling `M(β, α)` with `2 ≤ Δ(α, φ0) ≤ alpha_bound`,
/// `1 ≤ Δ(β, φ0) ≤ beta_bound` and the other coordinates bounded by the
/// same numbers, plus the longitude check for each `α` and the two
/// fillings of `N` for each `α` with `1 ≤ Δ(α, φ0) ≤ alpha_bound`.
pub fn theorem_scan(alpha_bound: u32, beta_bound: u32) -> Result<ScanReport> {
    let (ab, bb) = (i64::from(alpha_bound.max(2)), i64::from(beta_bound.max(2)));
    let alphas = slopes_in(2..=ab, ab);
    let betas = slopes_in(1..=bb, bb);
    let mut inputs: Vec<(&'static str, Vec<Int>)> = vec![("objects", vec![])];
    for &(p, q) in &alphas {
        inputs.push(("longitude", ints(&[p, q])));
        for &(r, s) in &betas {
            inputs.push(("theorem", ints(&[p, q, r, s])));
        }
    }
    for (p, q) in slopes_in(1..=ab, ab) {
        if q != 0 {
            inputs.push(("n_filling", ints(&[p, q])));
        }
    }
    run(
        "theorem",
        params(&[("alpha_bound", ints(&[ab])), ("beta_bound", ints(&[bb]))]),
        inputs,
        None,
    )
}

/// The homological and finite-quotient obstructions to `M(-, α)` fibering,
/// for `α = (p, q)` with `p ≥ 2`.
pub fn fibration_obstruction_check(p: impl Into<Int>, q: impl Into<Int>) -> Result<ScanReport> {
    let (p, q) = (p.into(), q.into());
    if p < Int::from(2) {
        return Err(Error::BadP(p));
    }
    if !p.gcd(&q).is_one() {
        return Err(Error::NonPrimitive { p, q });
    }
    run(
        "fibration",
        params(&[("alpha", vec![p.clone(), q.clone()])]),
        fibration_inputs(&p, &q),
        None,
    )
}

fn fibration_inputs(p: &Int, q: &Int) -> Vec<(&'static str, Vec<Int>)> {
    let input = vec![p.clone(), q.clone()];
    let mut inputs = vec![("fibration_homology", input.clone())];
    if *p == Int::from(2) {
        inputs.push(("fibration_homcount", input.clone()));
    }
    inputs.push(("alexander", input));
    inputs
}

/// [`fibration_obstruction_check`] for every `α = (p, q)` with
/// `2 ≤ p ≤ p_bound` and `0 < |q| < p`.
pub fn fibration_scan(p_bound: u32) -> Result<ScanReport> {
    let b = i64::from(p_bound.max(2));
    let mut inputs = vec![];
    for (p, q) in slopes_in(2..=b, b) {
        if q != 0 && q.abs() < p {
            inputs.extend(fibration_inputs(&Int::from(p), &Int::from(q)));
        }
    }
    run("fibration", params(&[("p_bound", ints(&[b]))]), inputs, None)
}

/// Tangle route versus homology route to the lens summand of `M(φ0, α)`
/// for `2 ≤ p ≤ bound`, `|q| ≤ bound`.
pub fn remark_scan(bound: u32) -> Result<ScanReport> {
    let b = i64::from(bound.max(2));
    let inputs = slopes_in(2..=b, b)
        .into_iter()
        .map(|(p, q)| ("remark", ints(&[p, q])))
        .collect();
    run("remark", params(&[("bound", ints(&[b]))]), inputs, None)
}

/// Fillings `β = (r, s)`, `1 ≤ r ≤ beta_bound`, `|s| ≤ beta_bound`, of the
/// fiber complement over `RP²(cones)`.
pub fn generalized_scan(cones: &[Int], beta_bound: u32) -> Result<ScanReport> {
    if cones.is_empty() {
        return Err(Error::EmptyCones);
    }
    let b = i64::from(beta_bound.max(2));
    let mut inputs: Vec<(&'static str, Vec<Int>)> = vec![("generalized_objects", vec![])];
    inputs.extend(slopes_in(1..=b, b).into_iter().map(|(r, s)| ("generalized", ints(&[r, s]))));
    let cones: Vec<Int> = cones.to_vec();
    run(
        "generalized",
        params(&[("cones", cones.clone()), ("beta_bound", ints(&[b]))]),
        inputs,
        Some(&cones),
    )
}
