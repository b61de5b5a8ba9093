//! Obstructions to outer bi-Lipschitz equivalence at infinity (or of germs at
//! the origin, in local mode). Only non-equivalence is ever certified.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{InvariantSignature, Mode, WeightedComponent};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strength {
    Theorem,
    Conjectural,
}

/// Whether an obstruction rules out any outer bi-Lipschitz map between the
/// sets, or only ones induced by an ambient map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Intrinsic,
    Embedded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinguished,
    NotDistinguishedByTheseInvariants,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished => write!(f, "distinguished"),
            Verdict::NotDistinguishedByTheseInvariants => {
                write!(f, "not distinguished by these invariants")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    pub invariant: String,
    pub tag: String,
    pub strength: Strength,
    pub scope: Scope,
    pub differs: bool,
    pub detail: String,
}

/// Per-invariant agreement; `None` when either side lacks the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matched {
    pub dimension: bool,
    pub total_degree: bool,
    pub component_count: Option<bool>,
    pub multiplicities: Option<bool>,
    pub weighted_components: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub a: InvariantSignature,
    pub b: InvariantSignature,
    pub matched: Matched,
    pub verdict: Verdict,
    pub justification: Vec<Justification>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOptions {
    /// Treat ideals with several generators as radical.
    pub assume_radical: bool,
}

fn fmt_components(c: &[WeightedComponent]) -> String {
    let items: Vec<String> = c.iter().map(|w| format!("({}, {})", w.degree, w.multiplicity)).collect();
    format!("{{{}}}", items.join(", "))
}

fn just(invariant: &str, tag: &str, strength: Strength, scope: Scope, differs: bool, detail: String) -> Justification {
    Justification {
        invariant: invariant.into(),
        tag: tag.into(),
        strength,
        scope,
        differs,
        detail,
    }
}

pub fn compare(a: &InvariantSignature, b: &InvariantSignature, opts: CompareOptions) -> Result<ObstructionReport> {
    if a.mode != b.mode {
        return Err(Error::InvalidArgument("signatures were computed in different modes".into()));
    }
    let local = a.mode == Mode::LocalHomogeneous;
    let mut out = Vec::new();
    let mut caveats = Vec::new();
    let dimension = a.set_dim == b.set_dim;
    let mut matched = Matched {
        dimension,
        total_degree: a.total_degree == b.total_degree,
        component_count: None,
        multiplicities: None,
        weighted_components: None,
    };
    for (name, s) in [("A", a), ("B", b)] {
        if !s.hypersurface {
            if opts.assume_radical {
                caveats.push(format!("{name}: ideal assumed radical (--assume-radical)"));
            } else {
                caveats.push(format!(
                    "{name}: ideal with several generators is not checked for radicality; its degree obstruction is downgraded"
                ));
            }
            caveats.push(format!("{name}: equidimensionality is not certified; only top dimension is used"));
        } else if s.components.is_none() {
            caveats.push(format!(
                "{name}: cone components could not be certified over C; component invariants are not compared"
            ));
        }
    }
    if !local && (a.set_dim == 0 || b.set_dim == 0) {
        let differs = a.set_dim != b.set_dim;
        out.push(just(
            "boundedness",
            "bounded-sets",
            Strength::Theorem,
            Scope::Intrinsic,
            differs,
            format!(
                "a finite set is empty outside a compact set; dimensions {} vs {}",
                a.set_dim, b.set_dim
            ),
        ));
        caveats.push("finite sets carry no invariants at infinity".into());
        return Ok(finish(a, b, matched, out, caveats));
    }
    out.push(just(
        "dimension",
        "topological-dimension",
        Strength::Theorem,
        Scope::Intrinsic,
        !dimension,
        format!("{} vs {}", a.set_dim, b.set_dim),
    ));
    if !dimension {
        return Ok(finish(a, b, matched, out, caveats));
    }
    let d = a.set_dim;
    let mult_tag = if local { "germ-multiplicities" } else { "theorem-multiplicities" };
    if let (Some(ca), Some(cb)) = (&a.components, &b.components) {
        let r = ca.len() == cb.len();
        matched.component_count = Some(r);
        out.push(just(
            "component-count",
            mult_tag,
            Strength::Theorem,
            Scope::Intrinsic,
            !r,
            format!("r = {} vs {}", ca.len(), cb.len()),
        ));
        let (ka, kb) = (a.multiplicities().unwrap(), b.multiplicities().unwrap());
        matched.multiplicities = Some(ka == kb);
        out.push(just(
            "multiplicities",
            mult_tag,
            Strength::Theorem,
            Scope::Intrinsic,
            ka != kb,
            format!("k = {ka:?} vs {kb:?}"),
        ));
        let w = ca == cb;
        matched.weighted_components = Some(w);
        let (tag, strength) = match d {
            1 => ("theorem-curves", Strength::Theorem),
            2 => ("theorem-main-result", Strength::Theorem),
            _ => ("conjecture-A1", Strength::Conjectural),
        };
        out.push(just(
            "weighted-components",
            tag,
            strength,
            Scope::Intrinsic,
            !w,
            format!("(deg, k) = {} vs {}", fmt_components(ca), fmt_components(cb)),
        ));
    }
    let degree_detail = format!(
        "{} {} vs {}",
        if local { "multiplicity" } else { "degree" },
        a.total_degree,
        b.total_degree
    );
    let radical_doubt = !opts.assume_radical && !(a.hypersurface && b.hypersurface);
    let same_space_hypersurfaces = a.hypersurface && b.hypersurface && a.ambient_dim == b.ambient_dim;
    let c1 = [a.class_c1_infinity, b.class_c1_infinity];
    let (tag, strength, scope) = match d {
        1 if local => ("theorem-curves-via-main-theorem", Strength::Theorem, Scope::Intrinsic),
        1 => ("theorem-curves", Strength::Theorem, Scope::Intrinsic),
        2 => ("theorem-main-result", Strength::Theorem, Scope::Intrinsic),
        _ if !local && same_space_hypersurfaces && c1.contains(&Some(true)) => {
            ("theorem-application1", Strength::Theorem, Scope::Embedded)
        }
        _ if local => ("conjecture-A1-local", Strength::Conjectural, Scope::Intrinsic),
        _ => ("conjecture-A1", Strength::Conjectural, Scope::Intrinsic),
    };
    let (strength, detail) = if radical_doubt && strength == Strength::Theorem {
        (Strength::Conjectural, format!("{degree_detail}; radicality not checked"))
    } else {
        (strength, degree_detail)
    };
    out.push(just("total-degree", tag, strength, scope, a.total_degree != b.total_degree, detail));
    if !local && same_space_hypersurfaces && d >= 1 {
        if let [Some(x), Some(y)] = c1 {
            if x || y {
                out.push(just(
                    "class-c1-infinity",
                    "theorem-application1",
                    Strength::Theorem,
                    Scope::Embedded,
                    x != y,
                    format!("{x} vs {y}"),
                ));
            }
        }
    }
    Ok(finish(a, b, matched, out, caveats))
}

fn finish(
    a: &InvariantSignature,
    b: &InvariantSignature,
    matched: Matched,
    justification: Vec<Justification>,
    caveats: Vec<String>,
) -> ObstructionReport {
    let distinguished = justification
        .iter()
        .any(|j| j.differs && j.strength == Strength::Theorem);
    ObstructionReport {
        a: a.clone(),
        b: b.clone(),
        matched,
        verdict: if distinguished {
            Verdict::Distinguished
        } else {
            Verdict::NotDistinguishedByTheseInvariants
        },
        justification,
        caveats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::invariant_signature;
    use crate::groebner::Ideal;
    use crate::poly::{parse_polynomial, Ring};

    fn sig(gens: &[&str], vars: &[&str], mode: Mode) -> InvariantSignature {
        let r = Ring::new(vars).unwrap();
        let i = Ideal::new(gens.iter().map(|s| parse_polynomial(s, Some(&r)).unwrap()).collect()).unwrap();
        invariant_signature(&i, mode).unwrap()
    }

    fn s2(f: &str) -> InvariantSignature {
        sig(&[f], &["x", "y"], Mode::AtInfinity)
    }

    fn reasons(r: &ObstructionReport) -> Vec<(&str, &str)> {
        r.justification
            .iter()
            .filter(|j| j.differs && j.strength == Strength::Theorem)
            .map(|j| (j.invariant.as_str(), j.tag.as_str()))
            .collect()
    }

    #[test]
    fn hyperbola_versus_parabola() {
        let r = compare(&s2("x*y - 1"), &s2("y - x^2"), CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert!(r.matched.total_degree);
        assert_eq!(r.matched.component_count, Some(false));
        let why = reasons(&r);
        assert!(why.contains(&("component-count", "theorem-multiplicities")));
        assert!(why.contains(&("multiplicities", "theorem-multiplicities")));
    }

    #[test]
    fn cubic_versus_hyperbola() {
        let r = compare(&s2("y^2 - x^3 - 1"), &s2("x*y - 1"), CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert!(reasons(&r).contains(&("total-degree", "theorem-curves")));
    }

    #[test]
    fn circle_and_hyperbola_agree() {
        let r = compare(&s2("x^2 + y^2 - 1"), &s2("x*y - 1"), CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotDistinguishedByTheseInvariants);
    }

    #[test]
    fn comparison_is_symmetric() {
        let fs = ["x*y - 1", "y - x^2", "y^2 - x^3 - 1", "y^2 - x^4", "x^2 + y^2 - 1"];
        for f in fs {
            for g in fs {
                let ab = compare(&s2(f), &s2(g), CompareOptions::default()).unwrap();
                let ba = compare(&s2(g), &s2(f), CompareOptions::default()).unwrap();
                assert_eq!(ab.verdict, ba.verdict);
                assert_eq!(ab.matched, ba.matched);
                assert_eq!((ab.a, ab.b), (ba.b, ba.a));
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = sig(&["x*y*z - 1"], &["x", "y", "z"], Mode::AtInfinity);
        let r = compare(&a, &s2("x*y - 1"), CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert!(reasons(&r).contains(&("dimension", "topological-dimension")));
    }

    #[test]
    fn finite_sets_are_never_distinguished_from_each_other() {
        let a = sig(&["x^2 - 1", "y"], &["x", "y"], Mode::AtInfinity);
        let b = sig(&["x^3 - x", "y - 2"], &["x", "y"], Mode::AtInfinity);
        let r = compare(&a, &b, CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotDistinguishedByTheseInvariants);
        let r = compare(&a, &s2("x*y - 1"), CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
    }

    #[test]
    fn higher_codimension_degree_needs_radicality() {
        let xyz = ["x", "y", "z"];
        let a = sig(&["y - x^2", "z - x^3"], &xyz, Mode::AtInfinity);
        let b = sig(&["y - x^2", "z"], &xyz, Mode::AtInfinity);
        let r = compare(&a, &b, CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotDistinguishedByTheseInvariants);
        assert!(!r.caveats.is_empty());
        let r = compare(&a, &b, CompareOptions { assume_radical: true }).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert!(reasons(&r).contains(&("total-degree", "theorem-curves")));
    }

    #[test]
    fn threefolds_use_application1_or_conjecture() {
        let v = ["x", "y", "z", "w"];
        let a = sig(&["x^2 + y^2 + z^2 + w^2 - 1"], &v, Mode::AtInfinity);
        let b = sig(&["x^3 + y^3 + z^3 + w^3 - 1"], &v, Mode::AtInfinity);
        let r = compare(&a, &b, CompareOptions::default()).unwrap();
        let deg = r.justification.iter().find(|j| j.invariant == "total-degree").unwrap();
        assert_eq!((deg.tag.as_str(), deg.scope), ("theorem-application1", Scope::Embedded));
        assert_eq!(r.verdict, Verdict::Distinguished);
        // different ambient spaces: only the conjecture applies
        let c = sig(&["x^3 + y^3 + z^3 + w^3 + u - 1"], &["x", "y", "z", "w", "u"], Mode::AtInfinity);
        let d = sig(&["x^2 + y^2 + z^2 + w^2 - 1"], &v, Mode::AtInfinity);
        let r = compare(&c, &d, CompareOptions::default()).unwrap();
        assert_ne!(r.a.set_dim, r.b.set_dim);
    }

    #[test]
    fn local_mode_surfaces() {
        let xyz = ["x", "y", "z"];
        let a = sig(&["x^2 + y^2 + z^2"], &xyz, Mode::LocalHomogeneous);
        let b = sig(&["x^3 + y^3 + z^3"], &xyz, Mode::LocalHomogeneous);
        let r = compare(&a, &b, CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Distinguished);
        assert!(reasons(&r).contains(&("total-degree", "theorem-main-result")));
        let c = s2("x*y - 1");
        assert!(compare(&a, &c, CompareOptions::default()).is_err());
    }
}
