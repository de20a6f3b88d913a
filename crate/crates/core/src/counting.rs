//! Closed-form counts of primitive periodic orbits on `C_n(a,b)`.
//!
//! For an admissible class `l*a + k*d = ω*n` the number of primitive orbits
//! is
//!
//! ```text
//!   (n/l) * Σ_{m | gcd(l,k,ω)} μ(m) C(l/m, k/m)
//! ```
//!
//! ([`count_orbits_lk`]). The same value arises before Möbius cancellation as
//! a sum over word repetition numbers `q` coprime to `ω`
//! ([`count_orbits_lk_unreduced`]), and summing over all admissible b-counts
//! gives the count for a fixed length ([`count_orbits_l`]).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::lattice::{bcounts_for_length, class_of, OrbitClass};
use crate::numtheory::{binomial, divisors, gcd_unchecked, moebius, BigCount};
use crate::words::{count_lyndon, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Reduced,
    Unreduced,
    Oracle,
}

/// One summand `μ(m) C(l/(q m), k/(q m))`. `q` is only present for the
/// unreduced sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub m: u64,
    pub mu: i8,
    pub binomial: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCountReport {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub k: u64,
    /// `None` when `(l, k)` is not admissible.
    pub omega: Option<u64>,
    pub count: BigCount,
    pub terms: Vec<Term>,
    pub method: Method,
}

impl OrbitCountReport {
    pub fn orbit_class(&self) -> Option<OrbitClass> {
        self.omega.map(|omega| OrbitClass {
            l: self.l,
            k: self.k,
            omega,
        })
    }

    /// `Σ μ * binomial` over the terms.
    pub fn signed_sum(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, t| {
            acc + BigInt::from(t.mu) * t.binomial.to_bigint()
        })
    }

    fn empty(graph: &CirculantGraph, l: u64, k: u64, method: Method) -> Self {
        OrbitCountReport {
            n: graph.n(),
            a: graph.a(),
            b: graph.b(),
            l,
            k,
            omega: None,
            count: BigCount::zero(),
            terms: Vec::new(),
            method,
        }
    }
}

/// All primitive orbits of one length, broken down by class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCount {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub total: BigCount,
    pub classes: Vec<OrbitCountReport>,
}

fn check_lk(l: u64, k: u64) -> Result<()> {
    if l == 0 {
        return Err(Error::RejectedParameters("orbit length must be at least 1".into()));
    }
    if k > l {
        return Err(Error::RejectedParameters(format!("b-count {k} exceeds length {l}")));
    }
    Ok(())
}

/// `n * sum / l`, which must be an exact nonnegative integer.
fn scale_exact(n: u64, l: u64, sum: &BigInt) -> Result<BigCount> {
    let scaled = sum * BigInt::from(n);
    let l_big = BigInt::from(l);
    if !(&scaled % &l_big).is_zero() || scaled.is_negative() {
        return Err(Error::NonIntegerResult(format!(
            "{n} * {sum} / {l} is not a nonnegative integer"
        )));
    }
    BigCount::try_from_bigint(scaled / l_big)
}

fn signed(mu: i8, value: &BigCount) -> BigInt {
    BigInt::from(mu) * value.to_bigint()
}

/// Primitive orbits of length `l` with b-count `k`, Möbius-reduced form.
pub fn count_orbits_lk(graph: &CirculantGraph, l: u64, k: u64) -> Result<OrbitCountReport> {
    graph.require_connected()?;
    check_lk(l, k)?;
    let Some(class) = class_of(graph, l, k) else {
        return Ok(OrbitCountReport::empty(graph, l, k, Method::Reduced));
    };
    assert!(class.omega >= 1, "closed words of positive length wind at least once");
    let common = gcd_unchecked(gcd_unchecked(l, k), class.omega);
    let mut terms = Vec::new();
    for m in divisors(common)? {
        let mu = moebius(m)?;
        if mu != 0 {
            terms.push(Term {
                q: None,
                m,
                mu,
                binomial: binomial(l / m, (k / m) as i64),
            });
        }
    }
    let sum = terms.iter().map(|t| signed(t.mu, &t.binomial)).sum::<BigInt>();
    Ok(OrbitCountReport {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l,
        k,
        omega: Some(class.omega),
        count: scale_exact(graph.n(), l, &sum)?,
        terms,
        method: Method::Reduced,
    })
}

/// Divisors of `gcd(l, k)` coprime to `ω`: the repetition numbers a step
/// sequence may have while still tracing a primitive orbit.
pub fn repetition_set(l: u64, k: u64, omega: u64) -> Result<Vec<u64>> {
    Ok(divisors(gcd_unchecked(l, k))?
        .into_iter()
        .filter(|&q| gcd_unchecked(q, omega) == 1)
        .collect())
}

/// Same count as [`count_orbits_lk`], summed over word repetition numbers
/// before any Möbius cancellation. One term per `(q, m)` pair.
pub fn count_orbits_lk_unreduced(graph: &CirculantGraph, l: u64, k: u64) -> Result<OrbitCountReport> {
    graph.require_connected()?;
    check_lk(l, k)?;
    let class = class_of(graph, l, k).ok_or(Error::NotLatticePoint {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l: l as i64,
        k: k as i64,
    })?;
    let gamma = gcd_unchecked(l, k);
    let mut terms = Vec::new();
    for q in repetition_set(l, k, class.omega)? {
        for m in divisors(gamma / q)? {
            let mu = moebius(m)?;
            if mu != 0 {
                terms.push(Term {
                    q: Some(q),
                    m,
                    mu,
                    binomial: binomial(l / (q * m), (k / (q * m)) as i64),
                });
            }
        }
    }
    let sum = terms.iter().map(|t| signed(t.mu, &t.binomial)).sum::<BigInt>();
    Ok(OrbitCountReport {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l,
        k,
        omega: Some(class.omega),
        count: scale_exact(graph.n(), l, &sum)?,
        terms,
        method: Method::Unreduced,
    })
}

/// `Σ_{q ∈ Q} (n/q) |L_2(l/q, k/q)|`, counting the domain of the bijection
/// from Lyndon-rooted step sequences and start vertices onto primitive orbits.
pub fn count_via_lyndon_roots(graph: &CirculantGraph, l: u64, k: u64) -> Result<BigCount> {
    graph.require_connected()?;
    check_lk(l, k)?;
    let Some(class) = class_of(graph, l, k) else {
        return Ok(BigCount::zero());
    };
    let mut total = BigCount::zero();
    for q in repetition_set(l, k, class.omega)? {
        debug_assert_eq!(graph.n() % q, 0);
        let lyndon = count_lyndon(l / q, k / q)?;
        total += &BigCount::from(lyndon.into_inner() * (graph.n() / q));
    }
    Ok(total)
}

/// Primitive orbits of length `l`, summed over the admissible b-counts.
pub fn count_orbits_l(graph: &CirculantGraph, l: u64) -> Result<LengthCount> {
    count_orbits_l_with(graph, l, Method::Reduced)
}

/// As [`count_orbits_l`], with per-class reports produced by `method`
/// (reduced or unreduced).
pub fn count_orbits_l_with(graph: &CirculantGraph, l: u64, method: Method) -> Result<LengthCount> {
    let classes = bcounts_for_length(graph, l)?
        .into_iter()
        .map(|c| match method {
            Method::Unreduced => count_orbits_lk_unreduced(graph, c.l, c.k),
            _ => count_orbits_lk(graph, c.l, c.k),
        })
        .collect::<Result<Vec<_>>>()?;
    let total = classes.iter().map(|r| r.count.clone()).sum();
    Ok(LengthCount {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l,
        total,
        classes,
    })
}

/// Fixed-length count as one double sum over every winding number in
/// `[ceil(l*a/n), floor(l*b/n)]` and every `m | ω`, with binomials of
/// non-integral arguments taken as zero.
pub fn count_orbits_l_direct(graph: &CirculantGraph, l: u64) -> Result<BigCount> {
    graph.require_connected()?;
    if l == 0 {
        return Err(Error::RejectedParameters("orbit length must be at least 1".into()));
    }
    let (lo, hi) = graph.winding_range(l);
    let (n, la, d) = (graph.n() as u128, l as u128 * graph.a() as u128, graph.d() as u128);
    let mut sum = BigInt::zero();
    for omega in lo..=hi {
        let excess = omega as u128 * n - la;
        for m in divisors(omega)? {
            let mu = moebius(m)?;
            let mm = m as u128;
            if mu == 0 || !(l as u128).is_multiple_of(mm) || !excess.is_multiple_of(d * mm) {
                continue;
            }
            let k_over_m = (excess / (d * mm)) as i64;
            sum += signed(mu, &binomial(l / m, k_over_m));
        }
    }
    scale_exact(graph.n(), l, &sum)
}

/// Both sides of the sum-reduction identity
///
/// ```text
///   Σ_{q ∈ Q} Σ_{s | γ/q} μ(s) f(q s)  =  Σ_{m | gcd(γ, ω)} μ(m) f(m)
/// ```
///
/// where `Q` is the set of divisors of `γ` coprime to `ω`.
pub fn sum_reduction_check<F>(gamma: u64, omega: u64, f: F) -> Result<(BigInt, BigInt)>
where
    F: Fn(u64) -> BigInt,
{
    if gamma == 0 || omega == 0 {
        return Err(Error::RejectedParameters(format!(
            "sum reduction needs positive gamma and omega, got ({gamma}, {omega})"
        )));
    }
    let mut lhs = BigInt::zero();
    for q in divisors(gamma)?.into_iter().filter(|&q| gcd_unchecked(q, omega) == 1) {
        for s in divisors(gamma / q)? {
            lhs += BigInt::from(moebius(s)?) * f(q * s);
        }
    }
    let mut rhs = BigInt::zero();
    for m in divisors(gcd_unchecked(gamma, omega))? {
        rhs += BigInt::from(moebius(m)?) * f(m);
    }
    Ok((lhs, rhs))
}

/// `gcd(r, ω)` for a closing word `w = x^r`: the orbit traced by `w` from any
/// start vertex is the `gcd(r, ω)`-th power of a primitive orbit.
pub fn predicted_repetition(graph: &CirculantGraph, w: &Word) -> Result<u64> {
    let omega = graph.winding_number(w.letters()).ok_or(Error::DoesNotClose {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        transit: graph.transit_distance(w.letters()),
    })?;
    let r = w.decompose().repetition as u64;
    Ok(gcd_unchecked(r, omega))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u64, a: u64, b: u64) -> CirculantGraph {
        CirculantGraph::new(n, a, b).unwrap()
    }

    #[test]
    fn big_example_reduces_to_two_terms() {
        let g = graph(440, 5, 14);
        let r = count_orbits_lk(&g, 360, 240).unwrap();
        assert_eq!(r.omega, Some(9));
        let ms: Vec<(u64, i8)> = r.terms.iter().map(|t| (t.m, t.mu)).collect();
        assert_eq!(ms, vec![(1, 1), (3, -1)]);
        let expected = (binomial(360, 240).to_bigint() - binomial(120, 80).to_bigint()) * 440 / 360;
        assert_eq!(r.count.to_bigint(), expected);
    }

    #[test]
    fn small_class_examples() {
        let r = count_orbits_lk(&graph(9, 1, 4), 9, 3).unwrap();
        assert_eq!(r.count, 84);
        assert_eq!(r.omega, Some(2));
        assert_eq!(r.terms.len(), 1);

        let r = count_orbits_lk(&graph(5, 1, 4), 3, 1).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.terms.is_empty());
        assert_eq!(r.omega, None);

        assert!(count_orbits_lk(&graph(5, 1, 4), 3, 4).is_err());
        assert!(count_orbits_lk(&graph(5, 1, 4), 0, 0).is_err());
        assert!(matches!(
            count_orbits_lk(&graph(12, 2, 4), 6, 0),
            Err(Error::DisconnectedGraph { .. })
        ));
    }

    #[test]
    fn length_examples() {
        let t = count_orbits_l(&graph(21, 4, 10), 15).unwrap();
        assert_eq!(t.total, 3822);
        assert_eq!(t.classes.len(), 2);
        assert_eq!(count_orbits_l_direct(&graph(21, 4, 10), 15).unwrap(), 3822);

        let t = count_orbits_l(&graph(5, 1, 4), 1).unwrap();
        assert_eq!(t.total, 0);
        assert!(t.classes.is_empty());

        assert_eq!(count_orbits_l(&graph(5, 1, 4), 5).unwrap().total, 2);
        assert_eq!(count_orbits_l_direct(&graph(5, 1, 4), 5).unwrap(), 2);
    }

    #[test]
    fn unreduced_examples() {
        let g = graph(440, 5, 14);
        let u = count_orbits_lk_unreduced(&g, 360, 240).unwrap();
        assert_eq!(u.count, count_orbits_lk(&g, 360, 240).unwrap().count);
        let mut qs: Vec<u64> = u.terms.iter().filter_map(|t| t.q).collect();
        qs.dedup();
        assert_eq!(qs, vec![1, 2, 4, 5, 8, 10, 20, 40]);

        let g = graph(9, 1, 4);
        let u = count_orbits_lk_unreduced(&g, 9, 3).unwrap();
        assert_eq!(u.count, 84);
        assert_eq!(repetition_set(9, 3, 2).unwrap(), vec![1, 3]);
        assert_eq!(count_via_lyndon_roots(&g, 9, 3).unwrap(), 84);

        let g = graph(7, 1, 3);
        let u = count_orbits_lk_unreduced(&g, 3, 2).unwrap();
        let r = count_orbits_lk(&g, 3, 2).unwrap();
        assert_eq!(u.count, r.count);
        assert_eq!(u.terms.len(), 1);
        assert_eq!(u.terms[0].binomial, r.terms[0].binomial);

        assert!(matches!(
            count_orbits_lk_unreduced(&graph(5, 1, 4), 3, 1),
            Err(Error::NotLatticePoint { .. })
        ));
    }

    #[test]
    fn sum_reduction_examples() {
        let f = |t: u64| {
            if 360 % t == 0 && 240 % t == 0 {
                binomial(360 / t, (240 / t) as i64).to_bigint()
            } else {
                BigInt::zero()
            }
        };
        let (lhs, rhs) = sum_reduction_check(120, 9, f).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, binomial(360, 240).to_bigint() - binomial(120, 80).to_bigint());

        let (lhs, rhs) = sum_reduction_check(1, 17, |_| BigInt::from(42)).unwrap();
        assert_eq!((lhs, rhs), (BigInt::from(42), BigInt::from(42)));

        let (lhs, rhs) = sum_reduction_check(12, 4, BigInt::from).unwrap();
        assert_eq!((lhs, rhs), (BigInt::from(-1), BigInt::from(-1)));
    }

    #[test]
    fn repetition_examples() {
        let g = graph(9, 1, 4);
        let w = Word::parse_steps("114114114", 1, 4).unwrap();
        assert_eq!(predicted_repetition(&g, &w).unwrap(), 1);

        let g = graph(5, 1, 4);
        let w: Word = "aaaaaaaaaa".parse().unwrap();
        assert_eq!(predicted_repetition(&g, &w).unwrap(), 2);
        assert_eq!(predicted_repetition(&g, &"ab".parse().unwrap()).unwrap(), 1);
        assert!(matches!(
            predicted_repetition(&g, &"a".parse().unwrap()),
            Err(Error::DoesNotClose { .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = count_orbits_lk(&graph(9, 1, 4), 9, 3).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"n":9,"a":1,"b":4,"l":9,"k":3,"omega":2,"count":"84","terms":[{"m":1,"mu":1,"binomial":"84"}],"method":"reduced"}"#
        );
        let back: OrbitCountReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
