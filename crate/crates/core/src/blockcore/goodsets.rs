use std::fmt;

use serde::{Deserialize, Serialize};

use super::labels::{Letter, Pair, VertexLabelABC};

/// A good set, stored as the pair of letters kept at each index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoodSet {
    pub pairs: Vec<Pair>,
}

impl GoodSet {
    pub fn new(pairs: Vec<Pair>) -> Self {
        GoodSet { pairs }
    }

    pub fn uniform(k: usize, p: Pair) -> Self {
        GoodSet { pairs: vec![p; k] }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_good(&self) -> bool {
        !self.pairs.iter().all(|&p| p == Pair::CA)
    }

    pub fn is_delta1(&self) -> bool {
        self.pairs.iter().all(|&p| p == Pair::AB)
    }

    pub fn is_delta2(&self) -> bool {
        self.pairs.iter().all(|&p| p == Pair::BC)
    }

    pub fn is_core(&self) -> bool {
        self.is_good() && !self.is_delta1() && !self.is_delta2()
    }

    pub fn contains(&self, v: VertexLabelABC) -> bool {
        self.pairs[v.index - 1].contains(v.letter)
    }

    /// Labels in canonical order: all A's, then B's, then C's, by index.
    pub fn labels(&self) -> Vec<VertexLabelABC> {
        let mut out = Vec::with_capacity(2 * self.k());
        for l in Letter::ALL {
            for (j, p) in self.pairs.iter().enumerate() {
                if p.contains(l) {
                    out.push(VertexLabelABC::new(l, j + 1));
                }
            }
        }
        out
    }

    pub fn ids(&self) -> Vec<usize> {
        let k = self.k();
        self.labels().into_iter().map(|l| l.id(k)).collect()
    }

    pub fn sigma(&self) -> GoodSet {
        GoodSet {
            pairs: self.pairs.iter().map(|p| p.sigma()).collect(),
        }
    }

    pub fn count_letter(&self, l: Letter) -> usize {
        self.pairs.iter().filter(|p| p.contains(l)).count()
    }

    /// Number of common vertices.
    pub fn common(&self, other: &GoodSet) -> usize {
        self.pairs
            .iter()
            .zip(&other.pairs)
            .map(|(a, b)| if a == b { 2 } else { 1 })
            .sum()
    }

    /// Nondecreasing pair sequence; every good set is an index permutation of one of these.
    pub fn is_sorted(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0] <= w[1])
    }

    /// Short name such as `A1B1C2B2`, in canonical label order.
    pub fn name(&self) -> String {
        self.labels().iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Display for GoodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.name())
    }
}

/// All `3^k` pair sequences in lexicographic order.
pub fn all_pair_sequences(k: usize) -> Vec<GoodSet> {
    let total = 3usize.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let mut pairs = vec![Pair::AB; k];
            for slot in pairs.iter_mut().rev() {
                *slot = Pair::ALL[code % 3];
                code /= 3;
            }
            GoodSet { pairs }
        })
        .collect()
}

/// The `3^k - 1` good sets.
pub fn enumerate_good_sets(k: usize) -> Vec<GoodSet> {
    all_pair_sequences(k)
        .into_iter()
        .filter(GoodSet::is_good)
        .collect()
}

/// The `3^k - 3` good sets other than `A ∪ B` and `B ∪ C`.
pub fn enumerate_core_sets(k: usize) -> Vec<GoodSet> {
    all_pair_sequences(k)
        .into_iter()
        .filter(GoodSet::is_core)
        .collect()
}
