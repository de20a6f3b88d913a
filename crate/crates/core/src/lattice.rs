//! Integer solutions of `l*a + k*d = ω*n` and the orbit classes they index.
//!
//! The full solution set is a lattice spanned by `(d', -a')` and `(l0, k0)`
//! where `a' = a/g`, `d' = d/g` and `l0*a + k0*d = g*n`. The matrix
//!
//! ```text
//!        1  | k0  -l0 |
//!   M = --- |         |
//!        n  | a'   d' |
//! ```
//!
//! inverts the basis matrix and maps lattice points onto `Z^2`. Only the
//! physically meaningful part (`l > 0`, `0 <= k <= l`) is exposed as
//! [`OrbitClass`] values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::numtheory::{extended_gcd, gcd_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub a_prime: u64,
    pub d_prime: u64,
    pub l0: i64,
    pub k0: i64,
    /// Denominator of `M`; equals `n`.
    pub denominator: u64,
}

/// An admissible `(l, k, ω)` triple: `l*a + k*d = ω*n` with `0 <= k <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub l: u64,
    pub k: u64,
    pub omega: u64,
}

/// A winding number inside the length bounds whose b-count
/// `(ω*n - l*a)/d` is not an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedWinding {
    pub omega: u64,
    pub k_numerator: u64,
    pub k_denominator: u64,
}

impl LatticeBasis {
    /// Numerators of `M`, row major; divide by [`LatticeBasis::denominator`].
    pub fn matrix_numerators(&self) -> [[i64; 2]; 2] {
        [
            [self.k0, -self.l0],
            [self.a_prime as i64, self.d_prime as i64],
        ]
    }

    /// `M * (l, k)`, or `None` when the result is not integral.
    pub fn coords(&self, l: i64, k: i64) -> Option<(i64, i64)> {
        let n = self.denominator as i128;
        let (l, k) = (l as i128, k as i128);
        let x = self.k0 as i128 * l - self.l0 as i128 * k;
        let y = self.a_prime as i128 * l + self.d_prime as i128 * k;
        if x % n != 0 || y % n != 0 {
            return None;
        }
        Some(((x / n) as i64, (y / n) as i64))
    }

    /// `x*(d', -a') + y*(l0, k0)`.
    pub fn from_coords(&self, x: i64, y: i64) -> (i64, i64) {
        (
            x * self.d_prime as i64 + y * self.l0,
            -x * (self.a_prime as i64) + y * self.k0,
        )
    }
}

/// Lattice basis with `0 <= l0 < d'`.
pub fn basis(graph: &CirculantGraph) -> Result<LatticeBasis> {
    graph.require_connected()?;
    let g = graph.g();
    let a_prime = graph.a() / g;
    let d_prime = graph.d() / g;
    let n = graph.n() as i128;
    let l0 = if d_prime == 1 {
        0
    } else {
        // l0 * a' ≡ n (mod d')
        let (_, u, _) = extended_gcd(a_prime, d_prime)?;
        (n * u).rem_euclid(d_prime as i128)
    };
    let rest = n - l0 * a_prime as i128;
    debug_assert_eq!(rest % d_prime as i128, 0);
    let k0 = rest / d_prime as i128;
    Ok(LatticeBasis {
        a_prime,
        d_prime,
        l0: l0 as i64,
        k0: k0 as i64,
        denominator: graph.n(),
    })
}

/// `M * (l, k)`; fails with [`Error::NotLatticePoint`] off the lattice.
pub fn to_coords(basis: &LatticeBasis, graph: &CirculantGraph, l: i64, k: i64) -> Result<(i64, i64)> {
    basis.coords(l, k).ok_or(Error::NotLatticePoint {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l,
        k,
    })
}

/// The orbit class of `(l, k)`, if it is admissible.
pub fn class_of(graph: &CirculantGraph, l: u64, k: u64) -> Option<OrbitClass> {
    if l == 0 || k > l {
        return None;
    }
    graph
        .winding_number_for(l, k)
        .map(|omega| OrbitClass { l, k, omega })
}

impl CirculantGraph {
    /// `(l*a + k*d)/n` when integral.
    pub fn winding_number_for(&self, l: u64, k: u64) -> Option<u64> {
        let transit = l as u128 * self.a() as u128 + k as u128 * self.d() as u128;
        let n = self.n() as u128;
        transit.is_multiple_of(n).then(|| (transit / n) as u64)
    }

    /// Inclusive winding number bounds `[ceil(l*a/n), floor(l*b/n)]` for
    /// closed paths of length `l`.
    pub fn winding_range(&self, l: u64) -> (u64, u64) {
        let n = self.n() as u128;
        let lo = (l as u128 * self.a() as u128).div_ceil(n);
        let hi = l as u128 * self.b() as u128 / n;
        (lo as u64, hi as u64)
    }
}

fn require_length(l: u64) -> Result<()> {
    if l == 0 {
        return Err(Error::RejectedParameters("orbit length must be at least 1".into()));
    }
    Ok(())
}

/// Admissible classes of length `l`, sorted by winding number.
pub fn bcounts_for_length(graph: &CirculantGraph, l: u64) -> Result<Vec<OrbitClass>> {
    graph.require_connected()?;
    require_length(l)?;
    let (lo, hi) = graph.winding_range(l);
    let (n, la, d) = (graph.n() as u128, l as u128 * graph.a() as u128, graph.d() as u128);
    let mut out = Vec::new();
    for omega in lo..=hi {
        let excess = omega as u128 * n - la;
        if excess.is_multiple_of(d) {
            let k = (excess / d) as u64;
            debug_assert!(k <= l);
            out.push(OrbitClass { l, k, omega });
        }
    }
    Ok(out)
}

/// Winding numbers in range for length `l` whose b-count is fractional,
/// with the fraction in lowest terms.
pub fn skipped_windings(graph: &CirculantGraph, l: u64) -> Result<Vec<SkippedWinding>> {
    graph.require_connected()?;
    require_length(l)?;
    let (lo, hi) = graph.winding_range(l);
    let (n, la, d) = (graph.n() as u128, l as u128 * graph.a() as u128, graph.d() as u128);
    Ok((lo..=hi)
        .filter_map(|omega| {
            let excess = omega as u128 * n - la;
            if excess.is_multiple_of(d) {
                return None;
            }
            let common = gcd_unchecked(excess as u64, d as u64);
            Some(SkippedWinding {
                omega,
                k_numerator: excess as u64 / common,
                k_denominator: d as u64 / common,
            })
        })
        .collect())
}

/// All admissible classes with `1 <= l <= l_max`, ordered by `l` then `ω`.
pub fn lattice_points(graph: &CirculantGraph, l_max: u64) -> Result<Vec<OrbitClass>> {
    graph.require_connected()?;
    if l_max == 0 {
        return Err(Error::RejectedParameters("lmax must be at least 1".into()));
    }
    let mut out = Vec::new();
    for l in 1..=l_max {
        out.extend(bcounts_for_length(graph, l)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u64, a: u64, b: u64) -> CirculantGraph {
        CirculantGraph::new(n, a, b).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = basis(&graph(7, 1, 3)).unwrap();
        assert_eq!((b.a_prime, b.d_prime, b.l0, b.k0), (1, 2, 1, 3));
        let b = basis(&graph(5, 1, 4)).unwrap();
        assert_eq!((b.a_prime, b.d_prime, b.l0, b.k0), (1, 3, 2, 1));
        let b = basis(&graph(9, 1, 4)).unwrap();
        assert_eq!((b.a_prime, b.d_prime, b.l0, b.k0), (1, 3, 0, 3));
        let b = basis(&graph(7, 1, 2)).unwrap();
        assert_eq!((b.d_prime, b.l0, b.k0), (1, 0, 7));
        assert!(matches!(basis(&graph(12, 2, 4)), Err(Error::DisconnectedGraph { .. })));
    }

    #[test]
    fn basis_identities_hold_everywhere() {
        for n in 3..=40u64 {
            for a in 1..n {
                for b in a + 1..n {
                    let g = graph(n, a, b);
                    if !g.is_strongly_connected() {
                        continue;
                    }
                    let bs = basis(&g).unwrap();
                    assert_eq!(
                        bs.l0 as i128 * a as i128 + bs.k0 as i128 * g.d() as i128,
                        (g.g() * n) as i128
                    );
                    assert_eq!(
                        bs.d_prime as i64 * bs.k0 + bs.a_prime as i64 * bs.l0,
                        n as i64
                    );
                    assert!(0 <= bs.l0 && bs.l0 < bs.d_prime.max(1) as i64);
                }
            }
        }
    }

    #[test]
    fn coordinate_examples() {
        let g = graph(7, 1, 3);
        let b = basis(&g).unwrap();
        assert_eq!(to_coords(&b, &g, 3, 2).unwrap(), (1, 1));
        assert_eq!(to_coords(&b, &g, 0, 0).unwrap(), (0, 0));
        assert_eq!(to_coords(&b, &g, 2, -1).unwrap(), (1, 0));
        assert_eq!(b.from_coords(1, 1), (3, 2));
        assert!(matches!(
            to_coords(&b, &g, 1, 0),
            Err(Error::NotLatticePoint { n: 7, l: 1, k: 0, .. })
        ));
    }

    #[test]
    fn bcount_examples() {
        let g = graph(21, 4, 10);
        assert_eq!(
            bcounts_for_length(&g, 15).unwrap(),
            vec![
                OrbitClass { l: 15, k: 4, omega: 4 },
                OrbitClass { l: 15, k: 11, omega: 6 }
            ]
        );
        let skipped = skipped_windings(&g, 15).unwrap();
        assert_eq!(
            skipped,
            vec![
                SkippedWinding { omega: 3, k_numerator: 1, k_denominator: 2 },
                SkippedWinding { omega: 5, k_numerator: 15, k_denominator: 2 },
                SkippedWinding { omega: 7, k_numerator: 29, k_denominator: 2 },
            ]
        );

        let g = graph(5, 1, 4);
        assert_eq!(
            bcounts_for_length(&g, 5).unwrap(),
            vec![
                OrbitClass { l: 5, k: 0, omega: 1 },
                OrbitClass { l: 5, k: 5, omega: 4 }
            ]
        );
        assert!(bcounts_for_length(&g, 1).unwrap().is_empty());
        assert!(bcounts_for_length(&g, 0).is_err());

        let g = graph(9, 1, 4);
        assert!(bcounts_for_length(&g, 9)
            .unwrap()
            .contains(&OrbitClass { l: 9, k: 3, omega: 2 }));
    }

    #[test]
    fn bcounts_match_direct_scan() {
        for (n, a, b) in [(7, 1, 3), (21, 4, 10), (10, 3, 7), (12, 5, 9), (440, 5, 14)] {
            let g = graph(n, a, b);
            for l in 1..=200u64 {
                let scanned: Vec<u64> = (0..=l).filter(|&k| g.winding_number_for(l, k).is_some()).collect();
                let by_omega: Vec<u64> = bcounts_for_length(&g, l).unwrap().iter().map(|c| c.k).collect();
                assert_eq!(scanned, by_omega, "C_{n}({a},{b}), l = {l}");
            }
        }
    }

    #[test]
    fn lattice_point_examples() {
        let pts = lattice_points(&graph(21, 4, 10), 15).unwrap();
        assert!(pts.contains(&OrbitClass { l: 15, k: 4, omega: 4 }));
        assert!(pts.contains(&OrbitClass { l: 15, k: 11, omega: 6 }));
        let pts = lattice_points(&graph(7, 1, 3), 3).unwrap();
        assert!(pts.contains(&OrbitClass { l: 3, k: 2, omega: 1 }));
        assert!(lattice_points(&graph(7, 1, 3), 0).is_err());
    }

    #[test]
    fn same_winding_solutions_differ_by_basis_step() {
        let g = graph(21, 4, 10);
        let b = basis(&g).unwrap();
        let pts = lattice_points(&g, 60).unwrap();
        for p in &pts {
            for q in &pts {
                if p.omega == q.omega && q.l == p.l + b.d_prime {
                    assert_eq!(q.k as i64, p.k as i64 - b.a_prime as i64);
                }
            }
        }
    }
}
