//! The 2-regular circulant digraph `C_n(a,b)`.
//!
//! Vertices are the residues `0..n`; every vertex `v` has the two outgoing
//! bonds `v -> v+a` and `v -> v+b` (mod n). Nothing is stored beyond
//! `(n, a, b)` and the derived quantities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::gcd_unchecked;
use crate::words::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphParams", into = "GraphParams")]
pub struct CirculantGraph {
    n: u64,
    a: u64,
    b: u64,
    d: u64,
    g: u64,
    connected: bool,
}

#[derive(Serialize, Deserialize)]
struct GraphParams {
    n: u64,
    a: u64,
    b: u64,
}

impl TryFrom<GraphParams> for CirculantGraph {
    type Error = Error;

    fn try_from(p: GraphParams) -> Result<Self> {
        CirculantGraph::new(p.n, p.a, p.b)
    }
}

impl From<CirculantGraph> for GraphParams {
    fn from(g: CirculantGraph) -> Self {
        GraphParams { n: g.n, a: g.a, b: g.b }
    }
}

/// A directed edge `origin -> origin + step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    pub origin: u64,
    pub step: Letter,
}

impl CirculantGraph {
    /// Validates `0 < a < b < n`. Disconnected graphs are accepted; see
    /// [`CirculantGraph::is_strongly_connected`].
    pub fn new(n: u64, a: u64, b: u64) -> Result<Self> {
        if !(0 < a && a < b && b < n) {
            return Err(Error::RejectedParameters(format!(
                "need 0 < a < b < n, got n = {n}, a = {a}, b = {b}"
            )));
        }
        let d = b - a;
        Ok(CirculantGraph {
            n,
            a,
            b,
            d,
            g: gcd_unchecked(a, d),
            connected: gcd_unchecked(gcd_unchecked(n, a), b) == 1,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Step gap `b - a`.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// `gcd(a, b - a) = gcd(a, b)`.
    pub fn g(&self) -> u64 {
        self.g
    }

    /// True iff `gcd(n, a, b) = 1`.
    pub fn is_strongly_connected(&self) -> bool {
        self.connected
    }

    /// Fails with [`Error::DisconnectedGraph`] unless strongly connected.
    pub fn require_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::DisconnectedGraph {
                n: self.n,
                a: self.a,
                b: self.b,
                gcd: gcd_unchecked(gcd_unchecked(self.n, self.a), self.b),
            })
        }
    }

    pub fn step_size(&self, letter: Letter) -> u64 {
        match letter {
            Letter::A => self.a,
            Letter::B => self.b,
        }
    }

    pub fn terminus(&self, bond: Bond) -> u64 {
        (bond.origin % self.n + self.step_size(bond.step)) % self.n
    }

    /// All `2n` bonds, ordered by origin then step.
    pub fn bonds(&self) -> impl Iterator<Item = Bond> + '_ {
        (0..self.n).flat_map(|origin| {
            [Letter::A, Letter::B]
                .into_iter()
                .map(move |step| Bond { origin, step })
        })
    }

    /// Sum of step sizes along `steps`.
    pub fn transit_distance(&self, steps: &[Letter]) -> u128 {
        let k = steps.iter().filter(|&&s| s == Letter::B).count() as u128;
        let l = steps.len() as u128;
        l * self.a as u128 + k * self.d as u128
    }

    /// `Δ/n` when the step sequence closes, `None` otherwise.
    pub fn winding_number(&self, steps: &[Letter]) -> Option<u64> {
        let transit = self.transit_distance(steps);
        let n = self.n as u128;
        transit.is_multiple_of(n).then(|| (transit / n) as u64)
    }

    /// Vertex sequence `v_0 = v, v_1, ..., v_l` of the path with the given steps.
    pub fn path_from(&self, v: u64, steps: &[Letter]) -> Vec<u64> {
        let mut vertex = v % self.n;
        let mut path = Vec::with_capacity(steps.len() + 1);
        path.push(vertex);
        for &s in steps {
            vertex = (vertex + self.step_size(s)) % self.n;
            path.push(vertex);
        }
        path
    }
}

/// A closed path: start vertex plus a step sequence whose transit distance
/// is a multiple of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    start: u64,
    steps: crate::words::Word,
}

impl Circuit {
    pub fn new(graph: &CirculantGraph, start: u64, steps: crate::words::Word) -> Result<Self> {
        if graph.winding_number(steps.letters()).is_none() {
            return Err(Error::DoesNotClose {
                n: graph.n(),
                a: graph.a(),
                b: graph.b(),
                transit: graph.transit_distance(steps.letters()),
            });
        }
        Ok(Circuit {
            start: start % graph.n(),
            steps,
        })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn steps(&self) -> &crate::words::Word {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Step list for the general `C_n(s_1, ..., s_m)`; only used for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepList {
    pub n: u64,
    pub steps: Vec<u64>,
}

impl StepList {
    /// Validates `0 < s_1 < ... < s_m < n` with `m >= 1`.
    pub fn new(n: u64, steps: Vec<u64>) -> Result<Self> {
        let increasing = steps.windows(2).all(|w| w[0] < w[1]);
        let bounded = steps.first().is_some_and(|&s| s > 0) && steps.last().is_some_and(|&s| s < n);
        if !increasing || !bounded {
            return Err(Error::RejectedParameters(format!(
                "need 0 < s_1 < ... < s_m < n, got n = {n}, steps = {steps:?}"
            )));
        }
        Ok(StepList { n, steps })
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.steps.iter().fold(self.n, |acc, &s| gcd_unchecked(acc, s)) == 1
    }
}
