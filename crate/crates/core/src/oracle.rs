//! Brute-force enumeration of periodic orbits on small circulant digraphs.
//!
//! Nothing here relies on the closed formulas or on the word algorithms in
//! [`crate::words`]: closure, canonical forms and repetition numbers are all
//! computed by direct comparison of rotated circuits. This module is the
//! ground truth the formulas are checked against.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::counting::{
    count_orbits_l, count_orbits_l_direct, count_orbits_lk, count_orbits_lk_unreduced,
    count_via_lyndon_roots, predicted_repetition, repetition_set,
};
use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::numtheory::BigCount;
use crate::words::{list_lyndon, Letter, Word};

/// A periodic orbit in canonical form: among all rotations of the circuit,
/// the one with the least `(start vertex, step word)` pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub canonical_start: u64,
    pub canonical_steps: Word,
    pub l: u64,
    pub k: u64,
    pub omega: u64,
    /// 1 for primitive orbits.
    pub repetition: u64,
}

impl Orbit {
    pub fn is_primitive(&self) -> bool {
        self.repetition == 1
    }

    pub fn to_record(&self, graph: &CirculantGraph) -> OrbitRecord {
        OrbitRecord {
            start: self.canonical_start,
            steps: self.canonical_steps.to_steps(graph.a(), graph.b()),
            l: self.l,
            k: self.k,
            omega: self.omega,
            repetition: self.repetition,
        }
    }
}

/// Serialized orbit; `steps` uses the graph's step sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub start: u64,
    pub steps: String,
    pub l: u64,
    pub k: u64,
    pub omega: u64,
    pub repetition: u64,
}

fn does_not_close(graph: &CirculantGraph, w: &Word) -> Error {
    Error::DoesNotClose {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        transit: graph.transit_distance(w.letters()),
    }
}

/// The orbit of the circuit that starts at `v` and follows `w`.
pub fn phi(graph: &CirculantGraph, w: &Word, v: u64) -> Result<Orbit> {
    let omega = graph.winding_number(w.letters()).ok_or_else(|| does_not_close(graph, w))?;
    Ok(canonical_orbit(graph, w, v, omega))
}

fn canonical_orbit(graph: &CirculantGraph, w: &Word, v: u64, omega: u64) -> Orbit {
    let letters = w.letters();
    let len = letters.len();
    let vertices = graph.path_from(v, letters);
    let presentation: Vec<(u64, Letter)> = (0..len).map(|i| (vertices[i], letters[i])).collect();

    let rotated = |s: usize| -> (u64, Vec<Letter>) {
        let steps = (0..len).map(|i| letters[(i + s) % len]).collect();
        (vertices[s], steps)
    };
    let (start, steps) = (0..len).map(rotated).min().expect("nonempty word");

    let period = (1..=len)
        .find(|&s| len.is_multiple_of(s) && (0..len).all(|i| presentation[(i + s) % len] == presentation[i]))
        .expect("the full length is always a period");

    Orbit {
        canonical_start: start,
        canonical_steps: Word::new(steps).expect("nonempty word"),
        l: len as u64,
        k: letters.iter().filter(|&&x| x == Letter::B).count() as u64,
        omega,
        repetition: (len / period) as u64,
    }
}

fn check_budget(graph: &CirculantGraph, l: u64, budget: u128) -> Result<()> {
    let needed = if l >= 100 {
        u128::MAX
    } else {
        (1u128 << l).saturating_mul(graph.n() as u128)
    };
    if l > 62 || needed > budget {
        return Err(Error::BudgetExceeded {
            what: format!("enumerating length-{l} circuits on C_{}({},{})", graph.n(), graph.a(), graph.b()),
            needed,
            budget,
        });
    }
    Ok(())
}

/// Every orbit of length `l` (b-count `k` if given) with the number of
/// `(start, steps)` presentations that landed on it.
pub fn enumerate_with_presentations(
    graph: &CirculantGraph,
    l: u64,
    k: Option<u64>,
    budget: u128,
) -> Result<BTreeMap<Orbit, u64>> {
    if l == 0 {
        return Err(Error::RejectedParameters("orbit length must be at least 1".into()));
    }
    check_budget(graph, l, budget)?;
    let mut orbits = BTreeMap::new();
    for mask in 0..(1u64 << l) {
        if k.is_some_and(|k| mask.count_ones() as u64 != k) {
            continue;
        }
        let w = Word::from_mask(l as usize, mask)?;
        // closure does not depend on the start vertex
        let Some(omega) = graph.winding_number(w.letters()) else {
            continue;
        };
        for v in 0..graph.n() {
            *orbits.entry(canonical_orbit(graph, &w, v, omega)).or_insert(0) += 1;
        }
    }
    Ok(orbits)
}

/// All distinct periodic orbits of length `l`, restricted to b-count `k`
/// when given, in canonical order.
pub fn enumerate_orbits(graph: &CirculantGraph, l: u64, k: Option<u64>, budget: u128) -> Result<Vec<Orbit>> {
    Ok(enumerate_with_presentations(graph, l, k, budget)?
        .into_keys()
        .collect())
}

/// Outcome of mapping Lyndon-rooted step sequences and start vertices to
/// orbits for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionCheck {
    pub repetition_set: Vec<u64>,
    pub domain_size: u64,
    pub distinct_images: u64,
    pub primitive_orbits: u64,
    pub all_images_primitive: bool,
    pub onto: bool,
}

impl BijectionCheck {
    pub fn is_bijection(&self) -> bool {
        self.all_images_primitive
            && self.onto
            && self.domain_size == self.distinct_images
            && self.distinct_images == self.primitive_orbits
    }
}

/// Maps every `(x^q, v)` with `x` Lyndon of length `l/q`, `q` in the
/// repetition set and `0 <= v < n/q` to its orbit, and compares the image
/// with the enumerated primitive orbits of the class.
pub fn check_lyndon_bijection(graph: &CirculantGraph, l: u64, k: u64, budget: u128) -> Result<BijectionCheck> {
    let omega = graph.winding_number_for(l, k).ok_or(Error::NotLatticePoint {
        n: graph.n(),
        a: graph.a(),
        b: graph.b(),
        l: l as i64,
        k: k as i64,
    })?;
    let primitive: BTreeSet<Orbit> = enumerate_orbits(graph, l, Some(k), budget)?
        .into_iter()
        .filter(Orbit::is_primitive)
        .collect();
    let qs = repetition_set(l, k, omega)?;
    let mut images = BTreeSet::new();
    let mut domain_size = 0u64;
    let mut all_primitive = true;
    for &q in &qs {
        for root in list_lyndon(l / q, k / q, budget)? {
            let w = root.pow(q as usize)?;
            for v in 0..graph.n() / q {
                let orbit = phi(graph, &w, v)?;
                all_primitive &= orbit.is_primitive();
                images.insert(orbit);
                domain_size += 1;
            }
        }
    }
    Ok(BijectionCheck {
        repetition_set: qs,
        domain_size,
        distinct_images: images.len() as u64,
        primitive_orbits: primitive.len() as u64,
        all_images_primitive: all_primitive,
        onto: primitive.is_subset(&images),
    })
}

/// Formula values against oracle counts for one `(graph, l, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCase {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub k: u64,
    pub omega: Option<u64>,
    pub oracle: BigCount,
    pub reduced: BigCount,
    pub unreduced: Option<BigCount>,
    pub lyndon_roots: BigCount,
    pub pass: bool,
}

/// Totals for one `(graph, l)` plus the repetition-number check over every
/// closing word of that length and every start vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCase {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub l: u64,
    pub oracle_total: BigCount,
    pub sum_of_classes: BigCount,
    pub direct_total: BigCount,
    pub repetition_checked: u64,
    pub repetition_mismatches: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_max: u64,
    pub l_max: u64,
    pub graphs: u64,
    pub class_cases: Vec<ClassCase>,
    pub length_cases: Vec<LengthCase>,
    pub mismatches: u64,
    pub first_counterexample: Option<String>,
    pub passed: bool,
}

/// Checks every connected `C_n(a,b)` with `n <= n_max` and every length
/// `l <= l_max` against the oracle.
pub fn verify_range(n_max: u64, l_max: u64, budget: u128) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        n_max,
        l_max,
        graphs: 0,
        class_cases: Vec::new(),
        length_cases: Vec::new(),
        mismatches: 0,
        first_counterexample: None,
        passed: true,
    };
    for n in 3..=n_max {
        for a in 1..n {
            for b in a + 1..n {
                let graph = CirculantGraph::new(n, a, b)?;
                if !graph.is_strongly_connected() {
                    continue;
                }
                report.graphs += 1;
                for l in 1..=l_max {
                    verify_length(&graph, l, budget, &mut report)?;
                }
            }
        }
    }
    report.passed = report.mismatches == 0;
    Ok(report)
}

fn record_mismatch(report: &mut VerificationReport, description: String) {
    report.mismatches += 1;
    report.first_counterexample.get_or_insert(description);
}

fn verify_length(graph: &CirculantGraph, l: u64, budget: u128, report: &mut VerificationReport) -> Result<()> {
    check_budget(graph, l, budget)?;
    let (n, a, b) = (graph.n(), graph.a(), graph.b());

    let mut primitive_by_k = vec![0u64; l as usize + 1];
    let mut repetition_checked = 0;
    let mut repetition_mismatches = 0;
    let mut orbits = BTreeSet::new();
    for mask in 0..(1u64 << l) {
        let w = Word::from_mask(l as usize, mask)?;
        let Some(omega) = graph.winding_number(w.letters()) else {
            continue;
        };
        let predicted = predicted_repetition(graph, &w)?;
        for v in 0..n {
            let orbit = canonical_orbit(graph, &w, v, omega);
            repetition_checked += 1;
            if orbit.repetition != predicted {
                repetition_mismatches += 1;
                if repetition_mismatches == 1 {
                    record_mismatch(
                        report,
                        format!(
                            "C_{n}({a},{b}): word {w} from {v} has repetition {} but gcd(r, ω) = {predicted}",
                            orbit.repetition
                        ),
                    );
                }
            }
            orbits.insert(orbit);
        }
    }
    for orbit in orbits.iter().filter(|o| o.is_primitive()) {
        primitive_by_k[orbit.k as usize] += 1;
    }

    for k in 0..=l {
        let reduced = count_orbits_lk(graph, l, k)?;
        let unreduced = match reduced.omega {
            Some(_) => Some(count_orbits_lk_unreduced(graph, l, k)?.count),
            None => None,
        };
        let lyndon_roots = count_via_lyndon_roots(graph, l, k)?;
        let oracle = BigCount::from(primitive_by_k[k as usize]);
        let pass = reduced.count == oracle
            && unreduced.as_ref().is_none_or(|u| *u == oracle)
            && lyndon_roots == oracle;
        if !pass {
            record_mismatch(
                report,
                format!(
                    "C_{n}({a},{b}), l = {l}, k = {k}: oracle {oracle}, reduced {}, unreduced {unreduced:?}, lyndon roots {lyndon_roots}",
                    reduced.count
                ),
            );
        }
        report.class_cases.push(ClassCase {
            n,
            a,
            b,
            l,
            k,
            omega: reduced.omega,
            oracle,
            reduced: reduced.count,
            unreduced,
            lyndon_roots,
            pass,
        });
    }

    let oracle_total = BigCount::from(primitive_by_k.iter().sum::<u64>());
    let sum_of_classes = count_orbits_l(graph, l)?.total;
    let direct_total = count_orbits_l_direct(graph, l)?;
    let pass = oracle_total == sum_of_classes && oracle_total == direct_total && repetition_mismatches == 0;
    if oracle_total != sum_of_classes || oracle_total != direct_total {
        record_mismatch(
            report,
            format!(
                "C_{n}({a},{b}), l = {l}: oracle total {oracle_total}, sum of classes {sum_of_classes}, direct {direct_total}"
            ),
        );
    }
    report.length_cases.push(LengthCase {
        n,
        a,
        b,
        l,
        oracle_total,
        sum_of_classes,
        direct_total,
        repetition_checked,
        repetition_mismatches,
        pass,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn graph(n: u64, a: u64, b: u64) -> CirculantGraph {
        CirculantGraph::new(n, a, b).unwrap()
    }

    #[test]
    fn phi_examples() {
        let g = graph(9, 1, 4);
        let o = phi(&g, &Word::parse_steps("114114114", 1, 4).unwrap(), 0).unwrap();
        assert_eq!((o.repetition, o.l, o.k, o.omega), (1, 9, 3, 2));

        let x = phi(&g, &Word::parse_steps("111111444", 1, 4).unwrap(), 0).unwrap();
        let y = phi(&g, &Word::parse_steps("111141414", 1, 4).unwrap(), 8).unwrap();
        assert_ne!(x, y);

        let g = graph(5, 1, 4);
        let o = phi(&g, &"aaaaaaaaaa".parse().unwrap(), 0).unwrap();
        assert_eq!(o.repetition, 2);
        assert!(matches!(phi(&g, &"a".parse().unwrap(), 0), Err(Error::DoesNotClose { .. })));
    }

    #[test]
    fn phi_is_rotation_invariant() {
        let g = graph(9, 1, 4);
        let w = Word::parse_steps("111141414", 1, 4).unwrap();
        let path = g.path_from(3, w.letters());
        let base = phi(&g, &w, 3).unwrap();
        for (s, &v) in path.iter().take(9).enumerate() {
            assert_eq!(phi(&g, &w.rotate(s as i64), v).unwrap(), base);
        }
    }

    #[test]
    fn enumeration_examples() {
        let g = graph(9, 1, 4);
        let orbits = enumerate_orbits(&g, 9, Some(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(orbits.iter().filter(|o| o.is_primitive()).count(), 84);
        assert_eq!(orbits.iter().filter(|o| !o.is_primitive()).count(), 0);

        let g = graph(5, 1, 4);
        let orbits = enumerate_orbits(&g, 5, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(Orbit::is_primitive));
        assert!(enumerate_orbits(&g, 1, None, DEFAULT_BUDGET).unwrap().is_empty());

        assert!(matches!(
            enumerate_orbits(&g, 30, None, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lyndon_orbits_from_vertex_zero() {
        let g = graph(9, 1, 4);
        let lyndon: BTreeSet<Orbit> = list_lyndon(9, 3, DEFAULT_BUDGET)
            .unwrap()
            .iter()
            .map(|w| phi(&g, w, 0).unwrap())
            .collect();
        assert_eq!(lyndon.len(), 9);
        let all: BTreeSet<Orbit> = enumerate_orbits(&g, 9, Some(3), DEFAULT_BUDGET).unwrap().into_iter().collect();
        assert!(lyndon.is_subset(&all));
    }

    #[test]
    fn presentation_counts_match_repetition() {
        for (n, a, b) in [(5, 1, 4), (6, 1, 3), (9, 1, 4), (8, 3, 5), (12, 2, 4)] {
            let g = graph(n, a, b);
            for l in 1..=10 {
                for (orbit, count) in enumerate_with_presentations(&g, l, None, DEFAULT_BUDGET).unwrap() {
                    assert_eq!(count, l / orbit.repetition, "{orbit:?}");
                    assert_eq!(orbit.l % orbit.repetition, 0);
                    assert_eq!(orbit.k % orbit.repetition, 0);
                    assert_eq!(orbit.omega % orbit.repetition, 0);
                }
            }
        }
    }

    #[test]
    fn disconnected_graphs_can_be_enumerated() {
        let g = graph(12, 2, 4);
        let orbits = enumerate_orbits(&g, 6, None, DEFAULT_BUDGET).unwrap();
        assert!(!orbits.is_empty());
        for o in &orbits {
            let path = g.path_from(o.canonical_start, o.canonical_steps.letters());
            assert!(path.iter().all(|v| v % 2 == o.canonical_start % 2), "{o:?} leaves its component");
        }
    }

    #[test]
    fn bijection_on_nine_vertex_example() {
        let check = check_lyndon_bijection(&graph(9, 1, 4), 9, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(check.repetition_set, vec![1, 3]);
        assert_eq!(check.domain_size, 84);
        assert!(check.is_bijection(), "{check:?}");
    }

    #[test]
    fn verify_small_ranges() {
        let r = verify_range(2, 5, DEFAULT_BUDGET).unwrap();
        assert!(r.passed);
        assert_eq!(r.graphs, 0);
        assert!(r.class_cases.is_empty());

        let r = verify_range(6, 8, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{:?}", r.first_counterexample);
        assert!(r.graphs > 0);
    }

    #[test]
    fn record_json_round_trip() {
        let g = graph(9, 1, 4);
        let o = phi(&g, &Word::parse_steps("114114114", 1, 4).unwrap(), 0).unwrap();
        let json = serde_json::to_string(&o.to_record(&g)).unwrap();
        assert_eq!(json, r#"{"start":0,"steps":"114114114","l":9,"k":3,"omega":2,"repetition":1}"#);
        let back: OrbitRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
