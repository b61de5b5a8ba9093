//! Cohomology of a punctured homogeneous surface `S \ {0}` from the Leray
//! spectral sequence of the C*-bundle `S \ {0} -> P(S)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k`, with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: u64,
    pub torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: u64) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; `Z/0` is `Z` and `Z/1` is trivial.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic(0, &[n])
    }

    /// Canonical form of `Z^rank + sum Z/orders`.
    pub fn from_cyclic(rank: u64, orders: &[u64]) -> Self {
        let mut free_rank = rank;
        // primary decomposition, then recombine into invariant factors
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &n in orders {
            if n == 0 {
                free_rank += 1;
                continue;
            }
            for (p, q) in prime_powers(n) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                torsion[len - 1 - i] *= q;
            }
        }
        torsion.retain(|&d| d > 1);
        AbelianGroup { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralEntry {
    pub p: u32,
    pub q: u32,
    pub group: AbelianGroup,
}

/// One page of the spectral sequence on the grid `p in 0..=2`, `q in 0..=1`.
/// Entries off the grid vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    /// 2, or `None` for the limit page.
    pub page: Option<u32>,
    pub entries: Vec<SpectralEntry>,
    /// The differential `E_2^{0,1} -> E_2^{2,0}` is multiplication by this.
    pub d2_multiplier: Option<u64>,
}

impl SpectralPage {
    pub fn get(&self, p: u32, q: u32) -> AbelianGroup {
        self.entries
            .iter()
            .find(|e| e.p == p && e.q == q)
            .map_or_else(AbelianGroup::trivial, |e| e.group.clone())
    }
}

fn check_degree(d: i64) -> Result<u64> {
    if d <= 0 {
        return Err(Error::NonPositiveDegree(d));
    }
    Ok(d as u64)
}

/// `E_2` and `E_infinity` for a surface cone of degree `d` whose projectivization
/// has first Betti number `b1`.
pub fn leray_pages(b1: u64, d: i64) -> Result<(SpectralPage, SpectralPage)> {
    let d = check_degree(d)?;
    let base = [AbelianGroup::free(1), AbelianGroup::free(b1), AbelianGroup::free(1)];
    let e2 = SpectralPage {
        page: Some(2),
        entries: (0..2u32)
            .flat_map(|q| {
                base.iter()
                    .enumerate()
                    .map(move |(p, g)| SpectralEntry { p: p as u32, q, group: g.clone() })
            })
            .collect(),
        d2_multiplier: Some(d),
    };
    // d_2 : Z -> Z is multiplication by d: injective with cokernel Z/d
    let limit = |p: u32, q: u32| -> AbelianGroup {
        match (p, q) {
            (0, 1) => AbelianGroup::trivial(),
            (2, 0) => AbelianGroup::cyclic(d),
            _ => e2.get(p, q),
        }
    };
    let einf = SpectralPage {
        page: None,
        entries: (0..2u32)
            .flat_map(|q| (0..3u32).map(move |p| (p, q)))
            .map(|(p, q)| SpectralEntry { p, q, group: limit(p, q) })
            .collect(),
        d2_multiplier: None,
    };
    Ok((e2, einf))
}

/// `H^2(S \ {0}; Z) = Z^b1 + Z/d`, the extension being split since the
/// quotient is free.
pub fn h2_of_complement(b1: u64, d: i64) -> Result<AbelianGroup> {
    let (_, einf) = leray_pages(b1, d)?;
    Ok(einf.get(2, 0).direct_sum(&einf.get(1, 1)).direct_sum(&einf.get(0, 2)))
}

/// The degree read off the torsion of `H^2`.
pub fn degree_from_h2(g: &AbelianGroup) -> Result<u64> {
    match g.torsion.as_slice() {
        [] => Ok(1),
        [d] => Ok(*d),
        more => Err(Error::NonCyclicTorsion(more.to_vec())),
    }
}

/// First Betti number `(d-1)(d-2)` of a smooth plane curve of degree `d`.
pub fn plane_curve_b1(d: i64) -> Result<u64> {
    let d = check_degree(d)?;
    Ok((d - 1) * d.saturating_sub(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(AbelianGroup::from_cyclic(0, &[2, 3]), AbelianGroup::cyclic(6));
        assert_eq!(AbelianGroup::from_cyclic(0, &[4, 2]).torsion, vec![2, 4]);
        assert_eq!(AbelianGroup::from_cyclic(0, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(AbelianGroup::from_cyclic(1, &[1, 0]), AbelianGroup::free(2));
        assert!(AbelianGroup::cyclic(1).is_trivial());
        assert_eq!(AbelianGroup::from_cyclic(2, &[3]).to_string(), "Z^2 + Z/3");
    }

    #[test]
    fn pages_for_a_quadric_cone() {
        let (e2, einf) = leray_pages(0, 2).unwrap();
        assert_eq!(e2.get(0, 1), AbelianGroup::free(1));
        assert_eq!(e2.d2_multiplier, Some(2));
        assert_eq!(einf.get(2, 0), AbelianGroup::cyclic(2));
        assert!(einf.get(1, 1).is_trivial());
        assert!(einf.get(0, 2).is_trivial());
    }

    #[test]
    fn pages_for_a_cubic_cone() {
        let (_, einf) = leray_pages(2, 3).unwrap();
        assert_eq!(einf.get(1, 1), AbelianGroup::free(2));
        assert_eq!(einf.get(2, 0), AbelianGroup::cyclic(3));
        assert!(einf.get(0, 1).is_trivial());
    }

    #[test]
    fn plane_has_no_torsion() {
        let (_, einf) = leray_pages(0, 1).unwrap();
        assert!(einf.get(2, 0).is_trivial());
        assert!(h2_of_complement(0, 1).unwrap().is_trivial());
        assert_eq!(degree_from_h2(&AbelianGroup::trivial()).unwrap(), 1);
    }

    #[test]
    fn h2_examples() {
        assert_eq!(h2_of_complement(0, 2).unwrap(), AbelianGroup::from_cyclic(0, &[2]));
        assert_eq!(h2_of_complement(2, 3).unwrap(), AbelianGroup::from_cyclic(2, &[3]));
        assert_eq!(degree_from_h2(&AbelianGroup::cyclic(2)).unwrap(), 2);
        assert_eq!(degree_from_h2(&AbelianGroup::from_cyclic(2, &[3])).unwrap(), 3);
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(leray_pages(0, 0), Err(Error::NonPositiveDegree(0)));
        assert_eq!(h2_of_complement(1, -3), Err(Error::NonPositiveDegree(-3)));
        assert_eq!(plane_curve_b1(0), Err(Error::NonPositiveDegree(0)));
        let g = AbelianGroup::from_cyclic(0, &[2, 2]);
        assert_eq!(degree_from_h2(&g), Err(Error::NonCyclicTorsion(vec![2, 2])));
    }

    #[test]
    fn smooth_plane_curve_betti_numbers() {
        assert_eq!(plane_curve_b1(1).unwrap(), 0);
        assert_eq!(plane_curve_b1(2).unwrap(), 0);
        // a smooth cubic is a torus: Riemann-Hurwitz for a 3:1 map to P^1 with
        // 6 simple branch points gives chi = 3*2 - 6 = 0
        let chi = 3 * 2 - 6;
        assert_eq!(plane_curve_b1(3).unwrap() as i64, 2 - chi);
    }

    proptest! {
        #[test]
        fn degree_round_trips(b1 in 0u64..=20, d in 1i64..=50) {
            prop_assert_eq!(degree_from_h2(&h2_of_complement(b1, d).unwrap()).unwrap(), d as u64);
        }

        #[test]
        fn limit_page_vanishes_above_the_fiber(b1 in 0u64..=20, d in 1i64..=50) {
            let (_, einf) = leray_pages(b1, d).unwrap();
            prop_assert!(einf.get(0, 2).is_trivial());
        }

        #[test]
        fn canonical_form_is_order_independent(orders in proptest::collection::vec(1u64..40, 0..5)) {
            let mut rev = orders.clone();
            rev.reverse();
            let g = AbelianGroup::from_cyclic(0, &orders);
            prop_assert_eq!(&g, &AbelianGroup::from_cyclic(0, &rev));
            prop_assert_eq!(g.torsion_order(), orders.iter().product::<u64>());
            prop_assert!(g.torsion.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
