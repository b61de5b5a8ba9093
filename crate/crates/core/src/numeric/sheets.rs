//! Sheets of a hypersurface over rays to infinity, and limit directions.
//!
//! Fibers over `t v'` are solved in the scaled variable `s = sigma / t`, where
//! `x = t (B v' + s kappa)`. The scaled fiber polynomial is
//! `sum_k t^(k-d) f_k(B v' + s kappa)`, and as `t` grows its roots tend to the
//! points where the line `B v' + s kappa` meets the tangent cone at infinity.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::projection::{norm, normalized, projective_distance, Frame, Projection};
use super::{c64, eval_complex, restrict_to_line, roots};
use crate::cone::{cone_components_hypersurface, ConeComponentReport};
use crate::error::{Error, Result};
use crate::poly::{squarefree_part, Polynomial};

const MAX_REFINEMENT_DEPTH: usize = 8;
const REGION_CHECKS: usize = 2;

/// The cone `{w : exists t > 0, |t v' - w| <= eta t}` minus the ball of radius `R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeRegion {
    pub base_direction: Vec<Complex64>,
    pub eta: f64,
    pub radius: f64,
}

impl ConeRegion {
    pub fn new(base_direction: &[Complex64], eta: f64, radius: f64) -> Result<ConeRegion> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::InvalidArgument(format!("aperture must lie in (0, 1), got {eta}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        if base_direction.is_empty() || norm(base_direction) == 0.0 {
            return Err(Error::InvalidArgument("base direction must be nonzero".into()));
        }
        Ok(ConeRegion {
            base_direction: normalized(base_direction),
            eta,
            radius,
        })
    }

    pub fn contains(&self, w: &[Complex64]) -> bool {
        let wn = norm(w);
        if wn <= self.radius {
            return false;
        }
        // minimize |t v - w| / t over t > 0
        let r: f64 = self
            .base_direction
            .iter()
            .zip(w)
            .map(|(v, x)| (v.conj() * x).re)
            .sum();
        r > 0.0 && 1.0 - (r / wn).powi(2) <= self.eta * self.eta
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetParams {
    pub eta: f64,
    /// Smallest ladder radius; defaults to `100 (1 + max |coefficient|)`.
    pub radius: Option<f64>,
    /// Number of doublings `J`; the ladder is `R 2^j` for `j = 0..=J`.
    pub ladder: usize,
    pub seed: u64,
    pub root_tolerance: f64,
    pub cluster_tolerance: f64,
    pub max_attempts: usize,
    pub projection: Option<Projection>,
}

impl Default for SheetParams {
    fn default() -> Self {
        SheetParams {
            eta: 0.1,
            radius: None,
            ladder: 10,
            seed: 0,
            root_tolerance: 1e-12,
            cluster_tolerance: 1e-6,
            max_attempts: 5,
            projection: None,
        }
    }
}

/// Numeric relative multiplicity of one Q-grouped cone component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetReport {
    pub component_id: usize,
    pub component_poly: Polynomial,
    /// Exponent from the algebraic computation, for comparison only.
    pub exponent: u32,
    /// Sheets converging to one fiber point of the component.
    pub sheet_count: u32,
    /// Sheets at each fiber point of the component (one point per C-line of
    /// the cone through the fiber).
    pub point_counts: Vec<u32>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackDiagnostics {
    pub seed: u64,
    pub attempts: usize,
    pub projection: Projection,
    pub region: ConeRegion,
    pub radii: Vec<f64>,
    /// Fiber cardinality at each ladder rung.
    pub sheets_per_rung: Vec<usize>,
    /// Intermediate rungs inserted to resolve ambiguous matches.
    pub refinements: usize,
    /// Largest ratio nearest / second-nearest over all root matches.
    pub worst_match_ratio: f64,
    /// `None` when the fiber of the cone is a single point.
    pub min_fiber_point_separation: Option<f64>,
    /// Largest ratio nearest / second-nearest over top-rung assignments.
    pub worst_assignment_ratio: f64,
    pub region_checks: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetAnalysis {
    /// Degree of the reduced equation, which is the generic fiber size.
    pub degree: usize,
    pub total_sheets: usize,
    pub reports: Vec<SheetReport>,
    pub diagnostics: TrackDiagnostics,
}

struct Fiber {
    parts: Vec<Vec<Complex64>>,
    d: usize,
    base: Vec<Complex64>,
    kernel: Vec<Complex64>,
}

impl Fiber {
    fn new(f: &Polynomial, frame: &Frame, v: &[Complex64]) -> Fiber {
        let d = f.degree().finite().unwrap_or(0) as usize;
        let base = frame.lift_point(v);
        let parts = (0..=d)
            .map(|k| restrict_to_line(&f.homogeneous_part(k as u32), &base, &frame.kernel))
            .collect();
        Fiber {
            parts,
            d,
            base,
            kernel: frame.kernel.clone(),
        }
    }

    fn leading_is_generic(&self) -> bool {
        let top = &self.parts[self.d];
        let scale = top.iter().map(|c| c.norm()).fold(0.0, f64::max);
        top.len() == self.d + 1 && top[self.d].norm() > 1e-6 * scale
    }

    fn coeffs(&self, t: f64) -> Vec<Complex64> {
        let mut out = vec![c64(0.0, 0.0); self.d + 1];
        for (k, part) in self.parts.iter().enumerate() {
            let w = t.powi(k as i32 - self.d as i32);
            for (i, c) in part.iter().enumerate() {
                out[i] += c * w;
            }
        }
        out
    }

    fn roots(&self, t: f64, tol: f64) -> Result<Vec<Complex64>> {
        roots::roots(&self.coeffs(t), tol)
    }

    fn point(&self, s: Complex64) -> Vec<Complex64> {
        self.base.iter().zip(&self.kernel).map(|(a, k)| a + s * k).collect()
    }
}

struct Tracks {
    /// `values[sheet][rung]`
    values: Vec<Vec<Complex64>>,
    refinements: usize,
    worst_ratio: f64,
}

/// Reorders `next` to follow `prev` by nearest neighbours; `None` if ambiguous.
fn match_roots(prev: &[Complex64], next: &[Complex64]) -> Option<(Vec<Complex64>, f64)> {
    let n = prev.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut worst: f64 = 0.0;
    for (i, p) in prev.iter().enumerate() {
        let mut order: Vec<(f64, usize)> = next.iter().enumerate().map(|(j, q)| ((p - q).norm(), j)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (d1, j) = order[0];
        let d2 = order.get(1).map_or(f64::INFINITY, |o| o.0);
        // the partner must also prefer p over every other previous root
        let back = prev
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, r)| (r - next[j]).norm())
            .fold(f64::INFINITY, f64::min);
        let ratio = d1 / d2.min(back);
        if used[j] || !(ratio <= 0.5) {
            return None;
        }
        worst = worst.max(if ratio.is_finite() { ratio } else { 0.0 });
        used[j] = true;
        out.push(next[j]);
    }
    Some((out, worst))
}

fn step(
    fiber: &Fiber,
    t0: f64,
    r0: &[Complex64],
    t1: f64,
    depth: usize,
    tol: f64,
    tracks: &mut Tracks,
) -> Result<Vec<Complex64>> {
    let r1 = fiber.roots(t1, tol)?;
    if let Some((ordered, ratio)) = match_roots(r0, &r1) {
        tracks.worst_ratio = tracks.worst_ratio.max(ratio);
        return Ok(ordered);
    }
    if depth >= MAX_REFINEMENT_DEPTH {
        return Err(Error::Numerical(format!("sheets cross near radius {t1:.3e}")));
    }
    tracks.refinements += 1;
    let tm = (t0 * t1).sqrt();
    let mid = step(fiber, t0, r0, tm, depth + 1, tol, tracks)?;
    step(fiber, tm, &mid, t1, depth + 1, tol, tracks)
}

fn track(fiber: &Fiber, ladder: &[f64], tol: f64) -> Result<Tracks> {
    let first = fiber.roots(ladder[0], tol)?;
    let mut tracks = Tracks {
        values: first.iter().map(|r| vec![*r]).collect(),
        refinements: 0,
        worst_ratio: 0.0,
    };
    let mut current = first;
    for w in ladder.windows(2) {
        let next = step(fiber, w[0], &current, w[1], 0, tol, &mut tracks)?;
        for (sheet, r) in tracks.values.iter_mut().zip(&next) {
            sheet.push(*r);
        }
        current = next;
    }
    Ok(tracks)
}

struct FiberPoint {
    s: Complex64,
    component: usize,
}

fn cone_fiber_points(fiber: &Fiber, components: &[Polynomial], tol: f64) -> Result<Vec<FiberPoint>> {
    let mut out = Vec::new();
    for (id, h) in components.iter().enumerate() {
        let coeffs = restrict_to_line(h, &fiber.base, &fiber.kernel);
        let deg = h.degree().finite().unwrap_or(0) as usize;
        let trimmed = roots::trim(&coeffs, 1e-9);
        if trimmed.len() != deg + 1 {
            return Err(Error::Numerical("projection kernel is close to the cone".into()));
        }
        for s in roots::roots(&trimmed, tol)? {
            out.push(FiberPoint { s, component: id });
        }
    }
    Ok(out)
}

/// Index of the nearest fiber point and the nearest / second-nearest ratio.
fn nearest(points: &[FiberPoint], s: Complex64) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY, f64::INFINITY);
    for (i, p) in points.iter().enumerate() {
        let d = (p.s - s).norm();
        if d < best.1 {
            best = (i, d, best.1);
        } else if d < best.2 {
            best.2 = d;
        }
    }
    let ratio = if best.2.is_finite() { best.1 / best.2 } else { 0.0 };
    (best.0, ratio)
}

fn min_separation(points: &[FiberPoint]) -> f64 {
    let mut sep = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            sep = sep.min((a.s - b.s).norm());
        }
    }
    sep
}

fn random_unit<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..p)
        .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalized(&v)
}

/// Sheet counts per fiber point at radius `t` over direction `v`.
fn point_counts_at(
    f: &Polynomial,
    frame: &Frame,
    v: &[Complex64],
    comps: &[Polynomial],
    t: f64,
    params: &SheetParams,
) -> Result<Vec<Vec<u32>>> {
    let fiber = Fiber::new(f, frame, v);
    let points = cone_fiber_points(&fiber, comps, params.root_tolerance)?;
    let mut counts = vec![0u32; points.len()];
    for s in fiber.roots(t, params.root_tolerance)? {
        let (i, ratio) = nearest(&points, s);
        if ratio > 0.5 {
            return Err(Error::Numerical("sheet lies between two cone fiber points".into()));
        }
        counts[i] += 1;
    }
    let mut per_comp = vec![Vec::new(); comps.len()];
    for (p, c) in points.iter().zip(counts) {
        per_comp[p.component].push(c);
    }
    for c in &mut per_comp {
        c.sort_unstable();
    }
    Ok(per_comp)
}

fn attempt(
    f: &Polynomial,
    reports: &[ConeComponentReport],
    frame: &Frame,
    region: &ConeRegion,
    params: &SheetParams,
    rng: &mut ChaCha8Rng,
) -> Result<SheetAnalysis> {
    let v = &region.base_direction;
    let fiber = Fiber::new(f, frame, v);
    if !fiber.leading_is_generic() {
        return Err(Error::Numerical("projection kernel lies on the cone at infinity".into()));
    }
    let comps: Vec<Polynomial> = reports.iter().map(|r| r.component_poly.clone()).collect();
    let points = cone_fiber_points(&fiber, &comps, params.root_tolerance)?;
    let separation = min_separation(&points);
    if separation < 1e3 * params.cluster_tolerance {
        return Err(Error::Numerical(format!(
            "cone fiber points nearly coincide (separation {separation:.2e})"
        )));
    }
    let radii: Vec<f64> = (0..=params.ladder).map(|j| region.radius * 2f64.powi(j as i32)).collect();
    let tracks = track(&fiber, &radii, params.root_tolerance)?;
    let sheets_per_rung = vec![tracks.values.len(); radii.len()];
    if tracks.values.len() != fiber.d {
        return Err(Error::Numerical("fiber has the wrong cardinality".into()));
    }
    let top = radii.len() - 1;
    let mut counts = vec![0u32; points.len()];
    let mut worst_assignment: f64 = 0.0;
    for sheet in &tracks.values {
        let (at_top, ratio) = nearest(&points, sheet[top]);
        let below = if top > 0 { nearest(&points, sheet[top - 1]).0 } else { at_top };
        if at_top != below {
            return Err(Error::Numerical("sheet assignment differs between the top two rungs".into()));
        }
        if ratio > 0.5 {
            return Err(Error::Numerical("sheet lies between two cone fiber points".into()));
        }
        worst_assignment = worst_assignment.max(ratio);
        counts[at_top] += 1;
    }
    let mut per_comp: Vec<Vec<u32>> = vec![Vec::new(); comps.len()];
    for (p, c) in points.iter().zip(&counts) {
        per_comp[p.component].push(*c);
    }
    for c in &mut per_comp {
        c.sort_unstable();
    }
    // the count must not change inside the cone region
    let mut region_checks = 0;
    for _ in 0..REGION_CHECKS {
        let u = random_unit(v.len(), rng);
        let w: Vec<Complex64> = v.iter().zip(&u).map(|(a, b)| a + b * (0.5 * region.eta)).collect();
        let t = radii[top];
        if !region.contains(&w.iter().map(|c| c * t).collect::<Vec<_>>()) {
            return Err(Error::Internal("perturbed direction left the cone region".into()));
        }
        let other = point_counts_at(f, frame, &normalized(&w), &comps, t * norm(&w), params)?;
        if other != per_comp {
            return Err(Error::Numerical("sheet counts change inside the cone region".into()));
        }
        region_checks += 1;
    }
    let mut warnings = Vec::new();
    if tracks.worst_ratio > 0.25 {
        warnings.push(format!("close root match (ratio {:.2})", tracks.worst_ratio));
    }
    if worst_assignment > 0.25 {
        warnings.push(format!("weakly separated assignment (ratio {worst_assignment:.2})"));
    }
    let sheet_reports = reports
        .iter()
        .enumerate()
        .map(|(id, r)| {
            let pc = per_comp[id].clone();
            let sheet_count = pc.first().copied().unwrap_or(0);
            let uniform = pc.iter().all(|&c| c == sheet_count);
            SheetReport {
                component_id: id,
                component_poly: r.component_poly.clone(),
                exponent: r.exponent,
                sheet_count,
                agrees: uniform && sheet_count == r.exponent,
                point_counts: pc,
            }
        })
        .collect();
    Ok(SheetAnalysis {
        degree: fiber.d,
        total_sheets: counts.iter().sum::<u32>() as usize,
        reports: sheet_reports,
        diagnostics: TrackDiagnostics {
            seed: params.seed,
            attempts: 0,
            projection: frame.projection.clone(),
            region: region.clone(),
            radii,
            sheets_per_rung,
            refinements: tracks.refinements,
            worst_match_ratio: tracks.worst_ratio,
            min_fiber_point_separation: separation.is_finite().then_some(separation),
            worst_assignment_ratio: worst_assignment,
            region_checks,
            warnings,
        },
    })
}

fn default_radius(f: &Polynomial) -> f64 {
    use num_traits::ToPrimitive;
    100.0 * (1.0 + f.max_abs_coefficient().to_f64().unwrap_or(f64::MAX))
}

fn prepare(f: &Polynomial) -> Result<Polynomial> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if f.nvars() < 2 {
        return Err(Error::BoundedSet);
    }
    Ok(squarefree_part(f)?.normalize())
}

fn run(
    f: &Polynomial,
    params: &SheetParams,
    first_direction: Option<&ConeRegion>,
) -> Result<SheetAnalysis> {
    if params.ladder == 0 {
        return Err(Error::InvalidArgument("the radius ladder needs at least two rungs".into()));
    }
    let reduced = prepare(f)?;
    let reports = cone_components_hypersurface(&reduced)?;
    let n = reduced.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let radius = params.radius.unwrap_or_else(|| default_radius(&reduced));
    let mut last = String::new();
    for k in 0..params.max_attempts.max(1) {
        let frame = match &params.projection {
            Some(p) => Frame::from_projection(p, n)?,
            None => Frame::random(n, &mut rng),
        };
        let region = match first_direction {
            Some(r) if k == 0 => r.clone(),
            _ => ConeRegion::new(&random_unit(n - 1, &mut rng), params.eta, radius)?,
        };
        if region.base_direction.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "base direction must have {} coordinates",
                n - 1
            )));
        }
        match attempt(&reduced, &reports, &frame, &region, params, &mut rng) {
            Ok(mut a) => {
                a.diagnostics.attempts = k + 1;
                return Ok(a);
            }
            Err(Error::Numerical(msg)) => last = msg,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted {
        attempts: params.max_attempts.max(1),
        last,
    })
}

/// Sheet counts for every cone component, along a seeded generic ray.
pub fn analyze_sheets(f: &Polynomial, params: &SheetParams) -> Result<SheetAnalysis> {
    run(f, params, None)
}

/// Sheet count of one component inside the given cone region. The region's
/// direction is used first; failures re-draw it.
pub fn sheet_count(
    f: &Polynomial,
    component: &ConeComponentReport,
    region: &ConeRegion,
    params: &SheetParams,
) -> Result<SheetReport> {
    let params = SheetParams {
        eta: region.eta,
        radius: Some(region.radius),
        ..params.clone()
    };
    let analysis = run(f, &params, Some(region))?;
    analysis
        .reports
        .into_iter()
        .find(|r| r.component_poly == component.component_poly)
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not a cone component", component.component_poly)))
}

/// A cluster of limit directions, as a unit vector up to phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub point: Vec<Complex64>,
    /// Largest number of sheets of one fiber converging to this direction.
    pub multiplicity: usize,
    pub members: usize,
    /// Cluster radius plus the largest movement between the top two radii.
    pub uncertainty: f64,
    /// `|f*(u)| / sum |coefficients of f*|` at the cluster center.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDirections {
    pub directions: Vec<Direction>,
    pub radii: Vec<f64>,
    pub projection: Projection,
    pub attempts: usize,
}

/// Radii `scale * 10^k` for `k = 2..=8`, with `scale = 1 + max |coefficient|`.
pub fn default_radii(f: &Polynomial) -> Vec<f64> {
    let scale = default_radius(f) / 100.0;
    (2..=8).map(|k| scale * 10f64.powi(k)).collect()
}

fn canonical_phase(u: &[Complex64]) -> Vec<Complex64> {
    let big = u.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let pivot = u.iter().find(|c| c.norm() >= 0.5 * big).copied().unwrap_or(c64(1.0, 0.0));
    let phase = pivot.conj() / pivot.norm();
    u.iter().map(|c| c * phase).collect()
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Clusters the normalized fiber points over random rays of growing radius.
pub fn limit_directions(f: &Polynomial, radii: &[f64], samples: usize, seed: u64) -> Result<LimitDirections> {
    let reduced = prepare(f)?;
    if radii.len() < 2 || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidArgument("need at least two positive radii".into()));
    }
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    let n = reduced.nvars();
    let top_form = reduced.top_form()?;
    let weight: f64 = {
        use num_traits::ToPrimitive;
        top_form.terms().map(|(_, c)| c.to_f64().unwrap_or(0.0).abs()).sum()
    };
    let tol = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt_no in 1..=5 {
        let frame = Frame::random(n, &mut rng);
        let mut sheets: Vec<(usize, Vec<Complex64>, f64)> = Vec::new();
        let mut failed = None;
        for sample in 0..samples.max(1) {
            let v = random_unit(n - 1, &mut rng);
            let fiber = Fiber::new(&reduced, &frame, &v);
            if !fiber.leading_is_generic() {
                failed = Some("projection kernel lies on the cone at infinity".to_string());
                break;
            }
            match track(&fiber, &radii, 1e-12) {
                Ok(tracks) => {
                    let j = radii.len() - 1;
                    for s in &tracks.values {
                        let u = normalized(&fiber.point(s[j]));
                        let prev = normalized(&fiber.point(s[j - 1]));
                        sheets.push((sample, u.clone(), projective_distance(&u, &prev)));
                    }
                }
                Err(Error::Numerical(m)) => {
                    failed = Some(m);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(m) = failed {
            last = m;
            continue;
        }
        let mut parent: Vec<usize> = (0..sheets.len()).collect();
        for i in 0..sheets.len() {
            for j in i + 1..sheets.len() {
                let d = projective_distance(&sheets[i].1, &sheets[j].1);
                if d <= 2.0 * (sheets[i].2 + sheets[j].2) + tol {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[b.max(a)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; sheets.len()];
        for i in 0..sheets.len() {
            let r = find(&mut parent, i);
            match root_of[r] {
                Some(g) => groups[g].push(i),
                None => {
                    root_of[r] = Some(groups.len());
                    groups.push(vec![i]);
                }
            }
        }
        let mut directions: Vec<Direction> = groups
            .iter()
            .map(|g| {
                let reference = &sheets[g[0]].1;
                let mut sum = vec![c64(0.0, 0.0); n];
                for &i in g {
                    let u = &sheets[i].1;
                    let ip: Complex64 = reference.iter().zip(u).map(|(a, b)| a.conj() * b).sum();
                    let phase = if ip.norm() > 0.0 { ip.conj() / ip.norm() } else { c64(1.0, 0.0) };
                    for (acc, c) in sum.iter_mut().zip(u) {
                        *acc += c * phase;
                    }
                }
                let center = canonical_phase(&normalized(&sum));
                let spread = g
                    .iter()
                    .map(|&i| projective_distance(&center, &sheets[i].1))
                    .fold(0.0, f64::max);
                let movement = g.iter().map(|&i| sheets[i].2).fold(0.0, f64::max);
                let mut per_sample = vec![0usize; samples.max(1)];
                for &i in g {
                    per_sample[sheets[i].0] += 1;
                }
                Direction {
                    residual: eval_complex(&top_form, &center).norm() / weight,
                    point: center,
                    multiplicity: per_sample.into_iter().max().unwrap_or(0),
                    members: g.len(),
                    uncertainty: spread + movement,
                }
            })
            .collect();
        let ill = directions.iter().enumerate().any(|(i, a)| {
            directions[i + 1..].iter().any(|b| {
                projective_distance(&a.point, &b.point) < 2.0 * (a.uncertainty + b.uncertainty) + 10.0 * tol
            })
        });
        if ill {
            last = "limit direction clusters are not separated".into();
            continue;
        }
        directions.sort_by(|a, b| {
            let key = |d: &Direction| -> Vec<f64> { d.point.iter().flat_map(|c| [c.norm(), c.re, c.im]).collect() };
            key(b)
                .iter()
                .zip(key(a).iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        return Ok(LimitDirections {
            directions,
            radii,
            projection: frame.projection,
            attempts: attempt_no,
        });
    }
    Err(Error::RetriesExhausted { attempts: 5, last })
}

/// True iff no limit direction lies within tolerance of the kernel of `p`.
pub fn certify_projection(
    f: &Polynomial,
    directions: &LimitDirections,
    p: &Projection,
    tol: f64,
) -> Result<bool> {
    if p.cols() != f.nvars() {
        return Err(Error::InvalidArgument(format!(
            "projection has {} columns for {} variables",
            p.cols(),
            f.nvars()
        )));
    }
    for d in &directions.directions {
        if p.kernel_distance(&d.point)? <= tol.max(d.uncertainty) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn p2(s: &str) -> Polynomial {
        parse_polynomial(s, Some(&Ring::new(&["x", "y"]).unwrap())).unwrap()
    }

    fn counts(f: &Polynomial) -> Vec<(String, u32, bool)> {
        analyze_sheets(f, &SheetParams::default())
            .unwrap()
            .reports
            .into_iter()
            .map(|r| (r.component_poly.to_string(), r.sheet_count, r.agrees))
            .collect()
    }

    #[test]
    fn region_membership() {
        let r = ConeRegion::new(&[c64(1.0, 0.0), c64(0.0, 0.0)], 0.1, 10.0).unwrap();
        assert!(r.contains(&[c64(100.0, 0.0), c64(5.0, 0.0)]));
        assert!(!r.contains(&[c64(100.0, 0.0), c64(50.0, 0.0)]));
        assert!(!r.contains(&[c64(5.0, 0.0), c64(0.0, 0.0)]));
        assert!(!r.contains(&[c64(-100.0, 0.0), c64(0.0, 0.0)]));
        assert!(ConeRegion::new(&[c64(1.0, 0.0)], 1.5, 10.0).is_err());
    }

    #[test]
    fn hyperbola_has_one_sheet_per_axis() {
        assert_eq!(counts(&p2("x*y - 1")), vec![("y".into(), 1, true), ("x".into(), 1, true)]);
    }

    #[test]
    fn cubic_has_three_sheets() {
        assert_eq!(counts(&p2("y^2 - x^3 - 1")), vec![("x".into(), 3, true)]);
        let a = analyze_sheets(&p2("y^2 - x^3 - 1"), &SheetParams::default()).unwrap();
        assert_eq!(a.total_sheets, 3);
        assert!(a.diagnostics.sheets_per_rung.iter().all(|&k| k == 3));
    }

    #[test]
    fn reduced_quartic_has_four_sheets() {
        assert_eq!(counts(&p2("y^2 - x^4")), vec![("x".into(), 4, true)]);
    }

    #[test]
    fn homogeneous_input_is_its_own_cone() {
        assert_eq!(counts(&p2("x*y")), vec![("y".into(), 1, true), ("x".into(), 1, true)]);
    }

    #[test]
    fn circle_splits_into_two_points() {
        let a = analyze_sheets(&p2("x^2 + y^2 - 1"), &SheetParams::default()).unwrap();
        assert_eq!(a.reports[0].point_counts, vec![1, 1]);
        assert!(a.reports[0].agrees);
    }

    #[test]
    fn same_seed_same_report() {
        let params = SheetParams { seed: 42, ..SheetParams::default() };
        let f = p2("y^2 - x^3 - 1");
        assert_eq!(analyze_sheets(&f, &params).unwrap(), analyze_sheets(&f, &params).unwrap());
    }

    #[test]
    fn explicit_region_and_projection() {
        let f = p2("x*y - 1");
        let comps = cone_components_hypersurface(&f).unwrap();
        let params = SheetParams {
            projection: Some(Projection {
                matrix: vec![vec![c64(1.0, 0.0), c64(2.0, 0.0)]],
            }),
            ..SheetParams::default()
        };
        let region = ConeRegion::new(&[c64(0.6, 0.8)], 0.1, 200.0).unwrap();
        for c in &comps {
            let r = sheet_count(&f, c, &region, &params).unwrap();
            assert_eq!(r.sheet_count, 1);
        }
    }

    #[test]
    fn directions_of_plane_curves() {
        let f = p2("x*y - 1");
        let d = limit_directions(&f, &default_radii(&f), 3, 1).unwrap();
        assert_eq!(d.directions.len(), 2);
        let axes = [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(1.0, 0.0)]];
        for axis in &axes {
            assert!(d.directions.iter().any(|u| projective_distance(&u.point, axis) < 1e-6));
        }
        let g = p2("y - x^2");
        let d = limit_directions(&g, &default_radii(&g), 3, 1).unwrap();
        assert_eq!(d.directions.len(), 1);
        assert!(projective_distance(&d.directions[0].point, &axes[1]) < 1e-6);
        assert_eq!(d.directions[0].multiplicity, 2);
    }

    #[test]
    fn directions_lie_on_the_cone() {
        for s in ["x^2 - 2*x*y - 5*y^2", "y^2 - x^3 - 1", "x^3*y^2*(x + y)"] {
            let f = p2(s);
            let d = limit_directions(&f, &default_radii(&f), 2, 7).unwrap();
            for u in &d.directions {
                assert!(u.residual < 1e-6, "{s}: residual {}", u.residual);
            }
        }
    }

    #[test]
    fn projection_certificates() {
        let f = p2("x*y - 1");
        let d = limit_directions(&f, &default_radii(&f), 2, 3).unwrap();
        let along_x = Projection::coordinates(2, &[0]);
        assert!(!certify_projection(&f, &d, &along_x, 1e-6).unwrap());
        let generic = Projection {
            matrix: vec![vec![c64(1.0, 0.0), c64(2.0, 0.0)]],
        };
        assert!(certify_projection(&f, &d, &generic, 1e-6).unwrap());
    }

    #[test]
    fn one_variable_sets_are_bounded() {
        let f = parse_polynomial("x^2 - 1", None).unwrap();
        assert_eq!(analyze_sheets(&f, &SheetParams::default()), Err(Error::BoundedSet));
    }
}
