//! Finite lattices given by a generating order relation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::{ValidationReport, ViolationKind};

/// A finite partial order stored as its reflexive-transitive closure.
///
/// Construction only checks that node names are known and distinct; use
/// [`Lattice::validate`] to confirm antisymmetry, meets, top and bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `leq[i][j]` iff `i <= j`.
    leq: Vec<Vec<bool>>,
}

impl Lattice {
    /// Builds the order generated by `(lower, upper)` pairs.
    pub fn new<S: AsRef<str>>(names: &[S], order: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateNode(n));
            }
            owned.push(n);
        }
        let mut pairs = Vec::with_capacity(order.len());
        for (lo, hi) in order {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownNode(lo.as_ref().to_string()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownNode(hi.as_ref().to_string()))?;
            pairs.push((lo, hi));
        }
        Ok(Lattice::from_indices(owned, &pairs))
    }

    /// Same as [`Lattice::new`] with pairs given by position.
    pub fn from_indices(names: Vec<String>, order: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in order {
            leq[lo][hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let index = names
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Lattice { names, index, leq }
    }

    /// A chain listed from bottom to top.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let order: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_ref()).collect();
        Lattice::new(&names, &order)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// The unique node above every other, if any.
    pub fn top(&self) -> Option<usize> {
        let tops: Vec<usize> = (0..self.len())
            .filter(|&t| (0..self.len()).all(|i| self.leq[i][t]))
            .collect();
        (tops.len() == 1).then(|| tops[0])
    }

    pub fn bottom(&self) -> Option<usize> {
        let bots: Vec<usize> = (0..self.len())
            .filter(|&b| (0..self.len()).all(|i| self.leq[b][i]))
            .collect();
        (bots.len() == 1).then(|| bots[0])
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        if self.leq[i][j] {
            return Some(i);
        }
        if self.leq[j][i] {
            return Some(j);
        }
        let lower: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq[k][i] && self.leq[k][j])
            .collect();
        let greatest: Vec<usize> = lower
            .iter()
            .copied()
            .filter(|&g| lower.iter().all(|&k| self.leq[k][g]))
            .collect();
        (greatest.len() == 1).then(|| greatest[0])
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&k| self.leq[i][k] && self.leq[j][k])
            .collect();
        let least: Vec<usize> = upper
            .iter()
            .copied()
            .filter(|&l| upper.iter().all(|&k| self.leq[l][k]))
            .collect();
        (least.len() == 1).then(|| least[0])
    }

    /// Meet by node names.
    pub fn meet_named(&self, i: &str, j: &str) -> Result<&str> {
        let (a, b) = (self.id(i)?, self.id(j)?);
        self.meet(a, b)
            .map(|m| self.name(m))
            .ok_or_else(|| Error::NoMeet(i.to_string(), j.to_string()))
    }

    /// Pairs `(upper, lower)` with nothing strictly between them.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for hi in 0..n {
            for lo in 0..n {
                if self.lt(lo, hi) && !(0..n).any(|m| self.lt(lo, m) && self.lt(m, hi)) {
                    out.push((hi, lo));
                }
            }
        }
        out
    }

    /// Nodes directly below `i`.
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&lo| self.lt(lo, i) && !(0..n).any(|m| self.lt(lo, m) && self.lt(m, i)))
            .collect()
    }

    /// All nodes `j <= i`.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[j][i]).collect()
    }

    /// Elements of `s` not strictly below another element of `s`, in input order.
    pub fn maximal_subset(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &x in s {
            if out.contains(&x) {
                continue;
            }
            if !s.iter().any(|&y| self.lt(x, y)) {
                out.push(x);
            }
        }
        out
    }

    /// [`Lattice::maximal_subset`] by node names.
    pub fn maximal_named<S: AsRef<str>>(&self, s: &[S]) -> Result<Vec<String>> {
        let ids = s
            .iter()
            .map(|n| self.id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .maximal_subset(&ids)
            .into_iter()
            .map(|i| self.names[i].clone())
            .collect())
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.comparable(i, j)))
    }

    /// Number of nodes strictly below `i` on a longest chain from the bottom.
    pub fn height(&self, i: usize) -> usize {
        self.lower_covers(i)
            .into_iter()
            .map(|c| self.height(c) + 1)
            .max()
            .unwrap_or(0)
    }

    /// Confirms antisymmetry, unique top and bottom, and that all meets exist.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new("lattice");
        let n = self.len();
        if n == 0 {
            r.violate(ViolationKind::NoTop, "empty node set");
            r.violate(ViolationKind::NoBottom, "empty node set");
            return r;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                r.checked += 1;
                if self.leq[i][j] && self.leq[j][i] {
                    r.violate(
                        ViolationKind::NotAntisymmetric,
                        format!(
                            "{} and {} lie below each other",
                            self.names[i], self.names[j]
                        ),
                    );
                }
            }
        }
        if self.top().is_none() {
            let maximal: Vec<&str> = self
                .maximal_subset(&(0..n).collect::<Vec<_>>())
                .into_iter()
                .map(|i| self.name(i))
                .collect();
            r.violate(
                ViolationKind::NoTop,
                format!("maximal nodes: {}", maximal.join(", ")),
            );
        }
        if self.bottom().is_none() {
            r.violate(ViolationKind::NoBottom, "no node lies below all others");
        }
        if !r.has(ViolationKind::NotAntisymmetric) {
            for i in 0..n {
                for j in (i + 1)..n {
                    r.checked += 1;
                    if self.meet(i, j).is_none() {
                        r.violate(
                            ViolationKind::NoMeet,
                            format!("{} and {}", self.names[i], self.names[j]),
                        );
                    }
                }
            }
        }
        r
    }
}

/// Free-function form of [`Lattice::validate`].
pub fn lattice_validate(l: &Lattice) -> ValidationReport {
    l.validate()
}
