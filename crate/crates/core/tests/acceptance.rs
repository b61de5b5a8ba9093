//! Acceptance suite. Runs as a plain binary so every criterion prints its
//! PASS/FAIL line; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bilip_core::compare::{compare, CompareOptions, Justification, Strength, Verdict};
use bilip_core::cone::{invariant_signature, sing_dim, verify_degree_formula, Mode};
use bilip_core::groebner::{buchberger, Ideal};
use bilip_core::hilbert::{affine_degree, dim_degree_homogeneous};
use bilip_core::numeric::{analyze_sheets, SheetParams};
use bilip_core::poly::{
    parse_input, parse_polynomial, random_invertible, squarefree_part, substitute_linear,
    MonomialOrder, Polynomial, Ring,
};
use bilip_core::topology::{degree_from_h2, h2_of_complement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS: [&str; 8] = [
    "x*y - 1",
    "y - x^2",
    "y^2 - x^3 - 1",
    "y^2 - x^4",
    "x^2 + y^2 - 1",
    "x^3*y^2*(x + y)",
    "x*y*z - 1",
    "x^2 + y^2 + z^2 - 1",
];

/// Ideals for the Gröbner determinism check, one generator per line.
const IDEALS: [&str; 5] = [
    "x*y - 1\ny^2 - 1",
    "y - x^2\nz - x^3",
    "x^2 + y^2 + z^2 - 1\nx + y + z",
    "x^2*y - z\nx*y^2 - 1\nz^2 - x",
    "x^3 - y*z\ny^2 - x*z + 1",
];

type Outcome = Result<String, String>;

fn poly(s: &str) -> Polynomial {
    parse_polynomial(s, None).unwrap()
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.2?}, limit {limit:?}"));
    }
    Ok(out)
}

fn var_names(n: usize) -> &'static [&'static str] {
    &["x", "y", "z"][..n]
}

/// Random monomial text of total degree at most `d`, with a term of degree
/// exactly `d` first.
fn random_poly_text(rng: &mut ChaCha8Rng, n: usize, d: u32, terms: usize) -> String {
    let vars = var_names(n);
    let mut parts = Vec::new();
    for t in 0..terms {
        let deg = if t == 0 { d } else { rng.gen_range(0..=d) };
        let mut exps = vec![0u32; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let mut c: i64 = rng.gen_range(1..=9);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let mono: Vec<String> = exps
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        parts.push(if mono.is_empty() {
            format!("({c})")
        } else {
            format!("({c})*{}", mono.join("*"))
        });
    }
    parts.join(" + ")
}

/// Random hypersurface in at most three variables, of degree at most 8. Half
/// of them are products of powers so that multiplicities exceed one.
fn random_hypersurface(rng: &mut ChaCha8Rng) -> Polynomial {
    let n = rng.gen_range(2..=3);
    let ring = Ring::new(var_names(n)).unwrap();
    let text = if rng.gen_bool(0.5) {
        let d = rng.gen_range(1..=8);
        let terms = rng.gen_range(2..=6);
        random_poly_text(rng, n, d, terms)
    } else {
        let mut budget: u32 = 8;
        let mut factors = Vec::new();
        while budget > 0 && factors.len() < 3 {
            let d = rng.gen_range(1..=budget.min(3));
            let e = rng.gen_range(1..=(budget / d).min(3));
            budget -= d * e;
            factors.push(format!("({})^{e}", random_poly_text(rng, n, d, 3)));
        }
        factors.join("*")
    };
    let f = parse_polynomial(&text, Some(&ring)).unwrap();
    if f.is_constant() {
        parse_polynomial("x*y - 1", Some(&ring)).unwrap()
    } else {
        f
    }
}

fn degree_formula_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut instances: Vec<Polynomial> = CORPUS.iter().map(|s| poly(s)).collect();
    instances.extend((0..50).map(|_| random_hypersurface(&mut rng)));
    let mut worst = Duration::ZERO;
    for f in &instances {
        let start = Instant::now();
        timed(Duration::from_secs(10), &f.to_string(), || {
            let sig = invariant_signature(&Ideal::principal(f.clone()).unwrap(), Mode::AtInfinity)
                .map_err(|e| format!("{f}: {e}"))?;
            let check = verify_degree_formula(&sig).map_err(|e| format!("{f}: {e}"))?;
            if !check.holds {
                return Err(format!("{f}: degree {} vs sum {}", check.total_degree, check.weighted_sum));
            }
            Ok(())
        })?;
        worst = worst.max(start.elapsed());
    }
    Ok(format!("{} instances, slowest {worst:.2?}", instances.len()))
}

fn sheets_match_exponents() -> Outcome {
    let mut worst = Duration::ZERO;
    for s in CORPUS {
        let f = poly(s);
        let start = Instant::now();
        timed(Duration::from_secs(60), s, || {
            let a = analyze_sheets(&f, &SheetParams::default()).map_err(|e| format!("{s}: {e}"))?;
            let degree = affine_degree(&Ideal::principal(f.clone()).unwrap()).unwrap().degree as usize;
            if let Some(bad) = a.diagnostics.sheets_per_rung.iter().find(|&&c| c != degree) {
                return Err(format!("{s}: {bad} sheets at some rung, degree {degree}"));
            }
            for r in &a.reports {
                if r.sheet_count != r.exponent || r.point_counts.iter().any(|&c| c != r.exponent) {
                    return Err(format!(
                        "{s}: component {} has sheets {:?}, exponent {}",
                        r.component_poly, r.point_counts, r.exponent
                    ));
                }
            }
            Ok(())
        })?;
        worst = worst.max(start.elapsed());
    }
    Ok(format!("{} hypersurfaces, slowest {worst:.2?}", CORPUS.len()))
}

fn linear_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for s in CORPUS {
        let f = poly(s);
        let base = invariant_signature(&Ideal::principal(f.clone()).unwrap(), Mode::AtInfinity).unwrap();
        for _ in 0..20 {
            let m = random_invertible(f.nvars(), &mut rng);
            let g = substitute_linear(&f, &m).unwrap();
            let sig = invariant_signature(&Ideal::principal(g.clone()).unwrap(), Mode::AtInfinity)
                .map_err(|e| format!("{g}: {e}"))?;
            if sig != base {
                return Err(format!("{s} -> {g}: {sig:?} vs {base:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} transformed signatures identical"))
}

fn fermat_round_trip() -> Outcome {
    timed(Duration::from_secs(5), "Fermat cones", || {
        for d in 2..=6i64 {
            let f = poly(&format!("x^{d} + y^{d} + z^{d}"));
            let h = dim_degree_homogeneous(&Ideal::principal(f.clone()).unwrap()).map_err(|e| e.to_string())?;
            if h.degree != d as u64 {
                return Err(format!("d = {d}: Hilbert degree {}", h.degree));
            }
            let sd = sing_dim(&f).map_err(|e| e.to_string())?;
            if sd != 0 {
                return Err(format!("d = {d}: singular locus of dimension {sd}"));
            }
            let b1 = ((d - 1) * (d - 2)) as u64;
            let back = degree_from_h2(&h2_of_complement(b1, d).unwrap()).map_err(|e| e.to_string())?;
            if back != d as u64 {
                return Err(format!("d = {d}: torsion gives {back}"));
            }
        }
        Ok("d = 2..6".to_string())
    })
}

fn groebner_determinism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ideals: Vec<Vec<Polynomial>> = IDEALS.iter().map(|t| parse_input(t).unwrap().generators).collect();
    ideals.extend(CORPUS.iter().map(|s| vec![poly(s)]));
    for gens in &ideals {
        let n = gens[0].nvars();
        for order in [MonomialOrder::grevlex(n), MonomialOrder::grlex(n)] {
            let reference = buchberger(&Ideal::new(gens.clone()).unwrap(), &order);
            for _ in 0..10 {
                let mut shuffled = gens.clone();
                for _ in 0..rng.gen_range(0..=2) {
                    let g = gens.choose(&mut rng).unwrap();
                    let c = rng.gen_range(1..=5);
                    shuffled.push(g * &parse_polynomial(&c.to_string(), Some(g.ring())).unwrap());
                }
                shuffled.shuffle(&mut rng);
                let gb = buchberger(&Ideal::new(shuffled).unwrap(), &order);
                if gb.elements() != reference.elements() {
                    return Err(format!("{:?} changes under reordering", gens));
                }
            }
        }
    }
    Ok(format!("{} ideals, 2 orders, 10 variants each", ideals.len()))
}

fn hypersurface_degree_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut repeated = 0;
    for _ in 0..50 {
        let f = random_hypersurface(&mut rng);
        let sq = squarefree_part(&f).map_err(|e| format!("{f}: {e}"))?;
        let expected = sq.degree().finite().unwrap() as u64;
        if sq.degree() != f.degree() {
            repeated += 1;
        }
        let got = affine_degree(&Ideal::principal(f.clone()).unwrap())
            .map_err(|e| format!("{f}: {e}"))?
            .degree;
        if got != expected {
            return Err(format!("{f}: affine degree {got}, squarefree degree {expected}"));
        }
    }
    Ok(format!("50 polynomials, {repeated} with repeated factors"))
}

fn decided_by(j: &[Justification], invariant: &str, tag: &str) -> bool {
    j.iter()
        .any(|j| j.differs && j.strength == Strength::Theorem && j.invariant == invariant && j.tag == tag)
}

fn compare_verdicts() -> Outcome {
    let sig = |f: &Polynomial| invariant_signature(&Ideal::principal(f.clone()).unwrap(), Mode::AtInfinity).unwrap();
    let opts = CompareOptions::default();
    let r = compare(&sig(&poly("x*y - 1")), &sig(&poly("y - x^2")), opts).unwrap();
    if r.verdict != Verdict::Distinguished
        || !decided_by(&r.justification, "component-count", "theorem-multiplicities")
        || !decided_by(&r.justification, "multiplicities", "theorem-multiplicities")
        || !r.matched.total_degree
    {
        return Err(format!("xy - 1 vs y - x^2: {:?}", r.justification));
    }
    let r = compare(&sig(&poly("y^2 - x^3 - 1")), &sig(&poly("x*y - 1")), opts).unwrap();
    if r.verdict != Verdict::Distinguished || !decided_by(&r.justification, "total-degree", "theorem-curves") {
        return Err(format!("y^2 - x^3 - 1 vs xy - 1: {:?}", r.justification));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in CORPUS {
        let f = poly(s);
        let g = substitute_linear(&f, &random_invertible(f.nvars(), &mut rng)).unwrap();
        let r = compare(&sig(&f), &sig(&g), opts).unwrap();
        if r.verdict != Verdict::NotDistinguishedByTheseInvariants {
            return Err(format!("{s} vs {g}: {:?}", r.verdict));
        }
    }
    Ok("3 verdict kinds as expected".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("degree formula conservation", degree_formula_conservation),
        ("numeric sheets equal exponents", sheets_match_exponents),
        ("linear change invariance", linear_invariance),
        ("torsion recovers Fermat degree", fermat_round_trip),
        ("Groebner basis determinism", groebner_determinism),
        ("hypersurface degree law", hypersurface_degree_law),
        ("compare verdicts", compare_verdicts),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("criterion {} PASS  {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
