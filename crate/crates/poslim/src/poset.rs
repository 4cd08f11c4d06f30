//! Finite posets and the combinatorial queries the checkers need:
//! rays, maxima, antichains, chains, meets, and the rank filtration.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
}

/// A finite partial order. The full `<=` relation is stored after
/// validation; covers and ranks are derived.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    leq: Vec<bool>, // row-major n x n, leq[i*n+j] <=> i <= j
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPoset{{{}}}", self.ids.join(", "))
    }
}

/// A subset with no two comparable members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Antichain {
    pub members: Vec<usize>, // ascending element indices
}

impl FinPoset {
    /// Validate a square boolean relation as a partial order.
    pub fn from_relation(ids: Vec<String>, leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = ids.len();
        assert_eq!(leq.len(), n * n, "relation must be square on the id set");
        let mut index = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(id.clone()));
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(PosetError::NotReflexive(ids[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::NotAntisymmetric(ids[i].clone(), ids[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(PosetError::NotTransitive(
                            ids[i].clone(),
                            ids[j].clone(),
                            ids[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FinPoset { ids, index, leq })
    }

    /// Build from cover pairs (lower, upper); the transitive closure is
    /// computed here, so the input may list any generating relations.
    pub fn from_covers(ids: Vec<String>, covers: &[(String, String)]) -> Result<Self, PosetError> {
        let n = ids.len();
        let mut index = BTreeMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(id.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let &i = index
                .get(lo)
                .ok_or_else(|| PosetError::UnknownElement(lo.clone()))?;
            let &j = index
                .get(hi)
                .ok_or_else(|| PosetError::UnknownElement(hi.clone()))?;
            leq[i * n + j] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(ids, leq)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Cover pairs (lower, upper): i < j with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Induced subposet on `{j : j < i}` (strict) or `{j : j <= i}`.
    pub fn ray(&self, i: usize, strict: bool) -> FinPoset {
        let members: Vec<usize> = (0..self.len())
            .filter(|&j| {
                if strict {
                    self.lt(j, i)
                } else {
                    self.leq(j, i)
                }
            })
            .collect();
        self.induced(&members)
    }

    /// Induced subposet on the listed elements (indices into this poset).
    pub fn induced(&self, members: &[usize]) -> FinPoset {
        let ids: Vec<String> = members.iter().map(|&m| self.ids[m].clone()).collect();
        let k = members.len();
        let mut leq = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                leq[a * k + b] = self.leq(members[a], members[b]);
            }
        }
        FinPoset::from_relation(ids, leq).expect("induced subposet of a poset is a poset")
    }

    /// Maximal elements of a subset; nonempty whenever the subset is.
    pub fn maxima(&self, subset: &[usize]) -> Antichain {
        let mut members: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&j| !subset.iter().any(|&k| self.lt(j, k)))
            .collect();
        members.sort_unstable();
        members.dedup();
        Antichain { members }
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.lt(j, i)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.lt(i, j)))
            .collect()
    }

    /// All antichains inside `{j : j <= i}`, the empty one included.
    /// Depth-first extension with comparability pruning.
    pub fn antichains_below(&self, i: usize) -> Vec<Antichain> {
        let ray: Vec<usize> = (0..self.len()).filter(|&j| self.leq(j, i)).collect();
        let mut out = vec![Antichain { members: vec![] }];
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(cur) = stack.pop() {
            let start = cur.last().map_or(0, |&l| {
                ray.iter().position(|&r| r == l).expect("member of ray") + 1
            });
            for (_, &cand) in ray.iter().enumerate().skip(start) {
                if cur.iter().all(|&m| !self.comparable(m, cand)) {
                    let mut next = cur.clone();
                    next.push(cand);
                    out.push(Antichain {
                        members: next.clone(),
                    });
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// All antichains of the whole poset.
    pub fn antichains(&self) -> Vec<Antichain> {
        match self.maximal_elements().len() {
            0 => vec![Antichain { members: vec![] }],
            _ => {
                // union over rays below a synthetic top would double count;
                // enumerate directly instead
                let n = self.len();
                let mut out = vec![Antichain { members: vec![] }];
                let mut stack: Vec<Vec<usize>> = vec![vec![]];
                while let Some(cur) = stack.pop() {
                    let start = cur.last().map_or(0, |&l| l + 1);
                    for cand in start..n {
                        if cur.iter().all(|&m| !self.comparable(m, cand)) {
                            let mut next = cur.clone();
                            next.push(cand);
                            out.push(Antichain {
                                members: next.clone(),
                            });
                            stack.push(next);
                        }
                    }
                }
                out.sort();
                out
            }
        }
    }

    /// All strictly increasing (p+1)-tuples, in lexicographic index order.
    pub fn chains(&self, p: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p + 1);
        fn extend(
            poset: &FinPoset,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            target: usize,
            n: usize,
        ) {
            if cur.len() == target {
                out.push(cur.clone());
                return;
            }
            for next in 0..n {
                if cur.last().is_none_or(|&l| poset.lt(l, next)) {
                    cur.push(next);
                    extend(poset, cur, out, target, n);
                    cur.pop();
                }
            }
        }
        extend(self, &mut cur, &mut out, p + 1, n);
        out
    }

    /// Longest strict chain length (number of strict steps).
    pub fn height(&self) -> usize {
        let ranks = self.rank_filtration();
        ranks.iter().copied().max().unwrap_or(0)
    }

    /// Greatest lower bound of a pair, when it exists.
    pub fn meet(&self, j: usize, k: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(x, j) && self.leq(x, k))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.len()).all(|j| (0..self.len()).all(|k| self.meet(j, k).is_some()))
    }

    /// Strictly order-preserving rank: rank(i) = length of the longest
    /// strict chain below i.
    pub fn rank_filtration(&self) -> Vec<usize> {
        let n = self.len();
        let mut rank = vec![0usize; n];
        // process in an order compatible with <
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.lt(j, i)).count());
        for &i in &order {
            rank[i] = (0..n)
                .filter(|&j| self.lt(j, i))
                .map(|j| rank[j] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// Elements sorted by (rank, index): the order used for "least failing"
    /// reports.
    pub fn rank_order(&self) -> Vec<usize> {
        let ranks = self.rank_filtration();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (ranks[i], i));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn chain3() -> FinPoset {
        FinPoset::from_covers(
            ids(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap()
    }

    /// The ten-subgroup poset used throughout the case study.
    pub fn p1() -> FinPoset {
        let names = ids(&["1", "a", "c", "d", "b", "ac", "ad", "cd", "bc", "bd"]);
        let cov = |lo: &str, hi: &str| (lo.to_string(), hi.to_string());
        FinPoset::from_covers(
            names,
            &[
                cov("1", "a"),
                cov("1", "c"),
                cov("1", "d"),
                cov("1", "b"),
                cov("a", "ac"),
                cov("a", "ad"),
                cov("c", "ac"),
                cov("c", "cd"),
                cov("c", "bc"),
                cov("d", "ad"),
                cov("d", "cd"),
                cov("d", "bd"),
                cov("b", "bc"),
                cov("b", "bd"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn singleton_is_valid() {
        let p = FinPoset::from_relation(ids(&["a"]), vec![true]).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let leq = vec![true, true, true, true];
        let err = FinPoset::from_relation(ids(&["a", "b"]), leq).unwrap_err();
        assert!(matches!(err, PosetError::NotAntisymmetric(_, _)));
    }

    #[test]
    fn transitivity_violation_detected() {
        // a<=b, b<=c, but not a<=c
        let names = ids(&["a", "b", "c"]);
        let mut leq = vec![false; 9];
        for i in 0..3 {
            leq[i * 3 + i] = true;
        }
        leq[1] = true; // a<=b
        leq[5] = true; // b<=c
        let err = FinPoset::from_relation(names, leq).unwrap_err();
        assert!(matches!(err, PosetError::NotTransitive(_, _, _)));
    }

    #[test]
    fn p1_is_valid_with_height_2() {
        let p = p1();
        assert_eq!(p.len(), 10);
        assert_eq!(p.height(), 2);
        assert_eq!(p.minimal_elements().len(), 1);
        assert_eq!(p.maximal_elements().len(), 5);
    }

    #[test]
    fn rays() {
        let p = p1();
        let one = p.index_of("1").unwrap();
        assert!(p.ray(one, true).is_empty());

        let cd = p.index_of("cd").unwrap();
        let r = p.ray(cd, true);
        let mut got: Vec<&str> = r.ids().iter().map(|s| s.as_str()).collect();
        got.sort_unstable();
        assert_eq!(got, vec!["1", "c", "d"]);

        let c = chain3();
        let b = c.index_of("b").unwrap();
        let r = c.ray(b, false);
        let mut got: Vec<&str> = r.ids().iter().map(|s| s.as_str()).collect();
        got.sort_unstable();
        assert_eq!(got, vec!["a", "b"]);
    }

    #[test]
    fn maxima_queries() {
        let p = p1();
        let subset = vec![
            p.index_of("1").unwrap(),
            p.index_of("c").unwrap(),
            p.index_of("d").unwrap(),
        ];
        let m = p.maxima(&subset);
        let names: Vec<&str> = m.members.iter().map(|&i| p.id(i)).collect();
        assert_eq!(names, vec!["c", "d"]);
        // every member of the subset sits below some maximum
        for &j in &subset {
            assert!(m.members.iter().any(|&mm| p.leq(j, mm)));
        }

        // a full chain has a single maximum
        let c = chain3();
        let all = vec![0, 1, 2];
        assert_eq!(c.maxima(&all).members.len(), 1);

        // an antichain is its own set of maxima
        let two = FinPoset::from_covers(ids(&["x", "y"]), &[]).unwrap();
        assert_eq!(two.maxima(&[0, 1]).members, vec![0, 1]);
    }

    #[test]
    fn antichains_below_examples() {
        // chain a<b at b: {}, {a}, {b}
        let c = FinPoset::from_covers(ids(&["a", "b"]), &[("a".into(), "b".into())]).unwrap();
        let b = c.index_of("b").unwrap();
        assert_eq!(c.antichains_below(b).len(), 3);

        // ray below cd in the case-study poset is {1, c, d, cd}:
        // antichains are {}, four singletons, and {c, d} — six total,
        // enumerated exhaustively by hand
        let p = p1();
        let cd = p.index_of("cd").unwrap();
        let chains = p.antichains_below(cd);
        assert_eq!(chains.len(), 6);
        let c_ix = p.index_of("c").unwrap();
        let d_ix = p.index_of("d").unwrap();
        assert!(chains
            .iter()
            .any(|a| a.members == vec![c_ix.min(d_ix), c_ix.max(d_ix)]));
    }

    #[test]
    fn unknown_element_error() {
        let two = FinPoset::from_covers(ids(&["x", "y"]), &[]).unwrap();
        assert!(matches!(
            two.index_of("z"),
            Err(PosetError::UnknownElement(_))
        ));
    }

    #[test]
    fn chain_enumeration() {
        let p = p1();
        // p = 0 gives the elements
        assert_eq!(p.chains(0).len(), 10);
        // the strict 2-chains are 1 < <y> < <y,z>, one per middle-top edge:
        // a has 2 tops, c has 3, d has 3, b has 2 — ten in total
        assert_eq!(p.chains(2).len(), 10);
        // beyond the height the list is empty
        assert_eq!(p.chains(3).len(), 0);
        let c = chain3();
        assert_eq!(c.chains(3).len(), 0);
    }

    #[test]
    fn meets() {
        let p = p1();
        let ac = p.index_of("ac").unwrap();
        let bd = p.index_of("bd").unwrap();
        let one = p.index_of("1").unwrap();
        assert_eq!(p.meet(ac, bd), Some(one));
        assert_eq!(p.meet(ac, ac), Some(ac));
        assert!(p.is_meet_semilattice());

        // two maximal over two minimal with no common lower bound
        let n = FinPoset::from_covers(
            ids(&["p", "q", "x", "y"]),
            &[
                ("p".into(), "x".into()),
                ("p".into(), "y".into()),
                ("q".into(), "x".into()),
                ("q".into(), "y".into()),
            ],
        )
        .unwrap();
        let x = n.index_of("x").unwrap();
        let y = n.index_of("y").unwrap();
        assert_eq!(n.meet(x, y), None);
        assert!(!n.is_meet_semilattice());
    }

    #[test]
    fn rank_filtration_properties() {
        let p = p1();
        let ranks = p.rank_filtration();
        assert_eq!(ranks[p.index_of("1").unwrap()], 0);
        assert_eq!(ranks[p.index_of("c").unwrap()], 1);
        assert_eq!(ranks[p.index_of("cd").unwrap()], 2);
        for i in 0..p.len() {
            for j in 0..p.len() {
                if p.lt(i, j) {
                    assert!(ranks[i] < ranks[j]);
                }
            }
        }

        let anti = FinPoset::from_covers(ids(&["x", "y", "z"]), &[]).unwrap();
        assert!(anti.rank_filtration().iter().all(|&r| r == 0));

        let c = chain3();
        assert_eq!(c.rank_filtration(), vec![0, 1, 2]);
    }

    #[test]
    fn ray_never_contains_center() {
        let p = p1();
        for i in 0..p.len() {
            let strict = p.ray(i, true);
            assert!(!strict.ids().contains(&p.id(i).to_string()));
            let wide = p.ray(i, false);
            assert_eq!(wide.len(), strict.len() + 1);
        }
    }
}
