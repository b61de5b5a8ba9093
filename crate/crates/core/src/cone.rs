//! Tangent cones at infinity and relative multiplicities at infinity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_groebner_basis, normal_form, Ideal};
use crate::hilbert::{affine_degree, dim_degree_homogeneous, HilbertData};
use crate::poly::{
    essential_variable_count, factor_homogeneous, squarefree_decomposition, squarefree_part,
    MonomialOrder, Polynomial,
};

/// Ideal of maximum-degree forms. It cuts out the tangent cone at infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfinityIdeal {
    pub generators: Vec<Polynomial>,
    /// True when the top forms were checked to form a Gröbner basis.
    pub certified: bool,
}

impl InfinityIdeal {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.generators.clone()).expect("nonempty")
    }

    pub fn hilbert(&self) -> Result<HilbertData> {
        dim_degree_homogeneous(&self.ideal())
    }

    /// Whether both ideals cut out the same set of points, checked by mutual
    /// membership of generators.
    pub fn same_ideal(&self, other: &InfinityIdeal) -> bool {
        let n = self.generators[0].nvars();
        let ga = buchberger(&self.ideal(), &MonomialOrder::grevlex(n));
        let gb = buchberger(&other.ideal(), &MonomialOrder::grevlex(n));
        ga == gb
    }
}

/// Top forms of the reduced grevlex basis.
pub fn infinity_ideal(ideal: &Ideal) -> Result<InfinityIdeal> {
    let n = ideal.ring().nvars();
    let order = MonomialOrder::grevlex(n);
    let gb = buchberger(ideal, &order);
    if gb.is_unit() {
        return Err(Error::EmptySet);
    }
    let mut generators: Vec<Polynomial> = gb
        .elements()
        .iter()
        .map(|g| g.top_form().map(|t| t.normalize()))
        .collect::<Result<_>>()?;
    let certified = is_groebner_basis(&generators, &order);
    generators.sort();
    generators.dedup();
    Ok(InfinityIdeal { generators, certified })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrreducibilityStatus {
    VerifiedQIrreducible,
    SquarefreeUnverified,
}

/// One component of the cone at infinity of a hypersurface, grouped over Q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeComponentReport {
    pub component_poly: Polynomial,
    /// Relative multiplicity at infinity.
    pub exponent: u32,
    pub component_degree: u32,
    pub irreducibility_status: IrreducibilityStatus,
    /// Number of irreducible components over C, when known. They are Galois
    /// conjugate, so each has degree `component_degree / count`.
    pub complex_components: Option<u32>,
    pub may_split_over_c: bool,
}

/// Over-C component count of a squarefree form that is Q-irreducible (or
/// unverified), when one of the sufficient criteria applies.
fn complex_component_count(h: &Polynomial) -> Result<Option<u32>> {
    let d = h.degree().finite().unwrap_or(0);
    if d == 1 {
        return Ok(Some(1));
    }
    if essential_variable_count(h) == 2 {
        // a squarefree binary form is a union of d distinct lines
        return Ok(Some(d));
    }
    // a hypersurface in C^n whose singular locus has dimension < n - 2 cannot
    // be a union of two hypersurfaces
    let n = h.nvars() as i64;
    if sing_dim(h)? < n - 2 {
        return Ok(Some(1));
    }
    Ok(None)
}

/// Components of the tangent cone at infinity of `V(f)` with their exponents.
pub fn cone_components_hypersurface(f: &Polynomial) -> Result<Vec<ConeComponentReport>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let reduced = squarefree_part(f)?;
    let top = reduced.top_form()?;
    let mut reports = Vec::new();
    for (h, e) in squarefree_decomposition(&top)? {
        let fact = factor_homogeneous(&h);
        for g in fact.factors {
            let status = if fact.verified {
                IrreducibilityStatus::VerifiedQIrreducible
            } else {
                IrreducibilityStatus::SquarefreeUnverified
            };
            let complex = complex_component_count(&g)?;
            reports.push(ConeComponentReport {
                component_degree: g.degree().finite().unwrap(),
                exponent: e,
                irreducibility_status: status,
                may_split_over_c: complex != Some(1),
                complex_components: complex,
                component_poly: g,
            });
        }
    }
    reports.sort_by(|a, b| {
        (a.component_degree, a.exponent, &a.component_poly).cmp(&(
            b.component_degree,
            b.exponent,
            &b.component_poly,
        ))
    });
    Ok(reports)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    AtInfinity,
    LocalHomogeneous,
}

/// A component of the cone counted with its relative multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightedComponent {
    pub degree: u32,
    pub multiplicity: u32,
}

/// The obstruction tuple compared across inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub mode: Mode,
    pub ambient_dim: usize,
    pub set_dim: usize,
    /// Degree at infinity, or the multiplicity at 0 in local mode.
    pub total_degree: u64,
    pub hypersurface: bool,
    /// Number of irreducible components of the cone over C, when certified.
    pub component_count: Option<usize>,
    /// Sorted `(deg, k)` over C, when certified.
    pub components: Option<Vec<WeightedComponent>>,
    /// Sorted `(deg, k)` of the Q-grouped components.
    pub rational_components: Option<Vec<WeightedComponent>>,
    pub cone_dim: usize,
    /// Degree of the cone counted with the multiplicities of its ideal.
    pub cone_degree: u64,
    pub class_c1_infinity: Option<bool>,
}

impl InvariantSignature {
    /// Sorted multiset of relative multiplicities over C.
    pub fn multiplicities(&self) -> Option<Vec<u32>> {
        self.components.as_ref().map(|cs| {
            let mut ks: Vec<u32> = cs.iter().map(|c| c.multiplicity).collect();
            ks.sort_unstable();
            ks
        })
    }
}

/// Signature together with the component reports it was built from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureDetail {
    pub signature: InvariantSignature,
    pub cone: InfinityIdeal,
    pub reports: Option<Vec<ConeComponentReport>>,
}

pub fn invariant_signature(ideal: &Ideal, mode: Mode) -> Result<InvariantSignature> {
    Ok(signature_detail(ideal, mode)?.signature)
}

pub fn signature_detail(ideal: &Ideal, mode: Mode) -> Result<SignatureDetail> {
    if mode == Mode::LocalHomogeneous {
        if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    let gens = ideal.generators();
    let hypersurface = gens.len() == 1;
    let data = affine_degree(ideal)?;
    let cone_ideal = if hypersurface {
        Ideal::principal(squarefree_part(&gens[0])?)?
    } else {
        ideal.clone()
    };
    let cone = infinity_ideal(&cone_ideal)?;
    let cone_data = cone.hilbert()?;
    let mut signature = InvariantSignature {
        mode,
        ambient_dim: ideal.ring().nvars(),
        set_dim: data.krull_dimension,
        total_degree: data.degree,
        hypersurface,
        component_count: None,
        components: None,
        rational_components: None,
        cone_dim: cone_data.krull_dimension,
        cone_degree: cone_data.degree,
        class_c1_infinity: None,
    };
    if !hypersurface {
        return Ok(SignatureDetail {
            signature,
            cone,
            reports: None,
        });
    }
    let reports = cone_components_hypersurface(&gens[0])?;
    let mut rational: Vec<WeightedComponent> = reports
        .iter()
        .map(|r| WeightedComponent {
            degree: r.component_degree,
            multiplicity: r.exponent,
        })
        .collect();
    rational.sort();
    signature.rational_components = Some(rational);
    let complex: Option<Vec<WeightedComponent>> = reports
        .iter()
        .map(|r| {
            r.complex_components.map(|c| {
                vec![
                    WeightedComponent {
                        degree: r.component_degree / c,
                        multiplicity: r.exponent,
                    };
                    c as usize
                ]
            })
        })
        .collect::<Option<Vec<_>>>()
        .map(|v| {
            let mut flat: Vec<WeightedComponent> = v.into_iter().flatten().collect();
            flat.sort();
            flat
        });
    signature.component_count = complex.as_ref().map(|c| c.len());
    signature.components = complex;
    signature.class_c1_infinity = class_c1_infinity(&reports)?;
    Ok(SignatureDetail {
        signature,
        cone,
        reports: Some(reports),
    })
}

/// Whether every cone component has singular locus of dimension at most one.
/// `None` when a Q-component has a large singular locus but may split over C.
pub fn class_c1_infinity(reports: &[ConeComponentReport]) -> Result<Option<bool>> {
    let mut unknown = false;
    for r in reports {
        let c = r.complex_components;
        if c.is_some_and(|c| c == r.component_degree) {
            // a union of hyperplanes; each piece is smooth
            continue;
        }
        if sing_dim(&r.component_poly)? > 1 {
            if c == Some(1) {
                return Ok(Some(false));
            }
            unknown = true;
        }
    }
    Ok(if unknown { None } else { Some(true) })
}

/// Dimension of the singular locus of the cone `V(h)`; -1 when it is empty.
pub fn sing_dim(h: &Polynomial) -> Result<i64> {
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous(h.to_string()));
    }
    if h.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut gens = vec![h.clone()];
    gens.extend((0..h.nvars()).map(|v| h.derivative(v)).filter(|p| !p.is_zero()));
    match dim_degree_homogeneous(&Ideal::new(gens)?) {
        Ok(d) => Ok(d.krull_dimension as i64),
        Err(Error::EmptySet) => Ok(-1),
        Err(e) => Err(e),
    }
}

/// Outcome of checking `deg X = sum k_j deg X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFormulaCheck {
    pub holds: bool,
    pub total_degree: u64,
    pub weighted_sum: u64,
}

pub fn verify_degree_formula(sig: &InvariantSignature) -> Result<DegreeFormulaCheck> {
    let comps = sig
        .rational_components
        .as_ref()
        .ok_or_else(|| Error::NotHypersurface("signature has no component data".into()))?;
    let weighted = |cs: &[WeightedComponent]| -> u64 {
        cs.iter().map(|c| c.degree as u64 * c.multiplicity as u64).sum()
    };
    let weighted_sum = weighted(comps);
    let complex_ok = sig
        .components
        .as_ref()
        .is_none_or(|cs| weighted(cs) == weighted_sum);
    Ok(DegreeFormulaCheck {
        holds: weighted_sum == sig.total_degree && complex_ok,
        total_degree: sig.total_degree,
        weighted_sum,
    })
}

/// Whether two sets of generators define the same ideal.
pub fn same_ideal(a: &Ideal, b: &Ideal) -> Result<bool> {
    let n = a.ring().nvars();
    let gb = buchberger(b, &MonomialOrder::grevlex(n));
    let ga = buchberger(a, &MonomialOrder::grevlex(n));
    for g in a.generators() {
        if !normal_form(g, &gb)?.is_zero() {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !normal_form(g, &ga)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
