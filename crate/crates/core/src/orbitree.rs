//! Orbit lookup trees for k-element subsets of a finite G-set.
//!
//! Level k holds one representative per G-orbit of admissible k-subsets,
//! with its full stabilizer. A subset S of size k+1 is attached to the node
//! (R, O) where R is the representative of S minus a point y, and O the
//! Stab(R)-orbit of the image of y; the minimum node over y in S is an
//! invariant of the orbit of S. Retrieval therefore recurses through all
//! smaller levels.

use std::collections::HashMap;

use crate::error::{CensusError, Result};
use crate::groupact::GroupLike;

/// A finite group given by an explicit element list acting on points 0..n.
pub trait GroupAction {
    type Elem: GroupLike;
    fn npoints(&self) -> usize;
    fn elements(&self) -> &[Self::Elem];
    fn identity(&self) -> Self::Elem;
    /// Left action: act(a.mul(b), p) == act(a, act(b, p)).
    fn act(&self, g: &Self::Elem, p: usize) -> usize;
}

/// Group action given by a list of elements and a point map closure.
pub struct ExplicitAction<E, F> {
    pub elements: Vec<E>,
    pub identity: E,
    pub npoints: usize,
    pub act: F,
}

impl<E: GroupLike, F: Fn(&E, usize) -> usize> GroupAction for ExplicitAction<E, F> {
    type Elem = E;
    fn npoints(&self) -> usize {
        self.npoints
    }
    fn elements(&self) -> &[E] {
        &self.elements
    }
    fn identity(&self) -> E {
        self.identity.clone()
    }
    fn act(&self, g: &E, p: usize) -> usize {
        (self.act)(g, p)
    }
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct RepNode<E> {
    /// Sorted point indices.
    pub subset: Vec<usize>,
    /// Full stabilizer; the identity comes first.
    pub stabilizer: Vec<E>,
    /// Stab-orbit index of each point (NONE for points of the subset or
    /// points excluded by the admissibility predicate).
    orbit_of: Vec<u32>,
    /// Element of the stabilizer sending each point to the minimum of its orbit.
    to_rep: Vec<u32>,
    /// Minimum point of each orbit, in increasing order.
    orbit_reps: Vec<usize>,
}

impl<E> RepNode<E> {
    pub fn num_orbits(&self) -> usize {
        self.orbit_reps.len()
    }
}

pub struct OrbitTree<A: GroupAction> {
    action: A,
    levels: Vec<Vec<RepNode<A::Elem>>>,
    /// children[k][(parent, orbit)] = index of the level-(k+1) representative
    children: Vec<HashMap<(u32, u32), u32>>,
    admissible: Box<dyn Fn(&[usize], usize) -> bool + Send + Sync>,
}

impl<A: GroupAction> OrbitTree<A> {
    /// Builds levels 0..=max_level over all subsets.
    pub fn build(action: A, max_level: usize) -> Result<Self> {
        Self::build_with(action, max_level, Box::new(|_, _| true))
    }

    /// Builds levels 0..=max_level over the admissible subsets: those built by
    /// adding points x to admissible subsets S with `admissible(S, x)` true.
    /// The predicate must be G-invariant and hereditary.
    pub fn build_with(
        action: A,
        max_level: usize,
        admissible: Box<dyn Fn(&[usize], usize) -> bool + Send + Sync>,
    ) -> Result<Self> {
        if max_level > action.npoints() {
            return Err(CensusError::SubsetTooLarge { size: max_level, depth: action.npoints() });
        }
        check_action(&action)?;
        let mut tree = OrbitTree { action, levels: Vec::new(), children: Vec::new(), admissible };
        let root_stab: Vec<A::Elem> = {
            let id = tree.action.identity();
            let mut v = vec![id.clone()];
            v.extend(tree.action.elements().iter().filter(|g| !g.is_identity()).cloned());
            v
        };
        let root = tree.make_node(Vec::new(), root_stab);
        tree.levels.push(vec![root]);
        for level in 0..max_level {
            tree.extend_level(level);
        }
        Ok(tree)
    }

    fn make_node(&self, subset: Vec<usize>, stabilizer: Vec<A::Elem>) -> RepNode<A::Elem> {
        let n = self.action.npoints();
        let mut orbit_of = vec![NONE; n];
        let mut to_rep = vec![NONE; n];
        let mut orbit_reps = Vec::new();
        let mut in_set = vec![false; n];
        for &p in &subset {
            in_set[p] = true;
        }
        for r in 0..n {
            if in_set[r] || orbit_of[r] != NONE || !(self.admissible)(&subset, r) {
                continue;
            }
            let oi = orbit_reps.len() as u32;
            orbit_reps.push(r);
            for (gi, g) in stabilizer.iter().enumerate() {
                let p = self.action.act(g, r);
                if orbit_of[p] == NONE {
                    orbit_of[p] = oi;
                    // g sends r to p; its inverse sends p to r
                    to_rep[p] = gi as u32;
                }
            }
        }
        RepNode { subset, stabilizer, orbit_of, to_rep, orbit_reps }
    }

    /// Element of Stab(R) sending p to the minimum point of its orbit.
    fn to_orbit_rep(&self, node: &RepNode<A::Elem>, p: usize) -> A::Elem {
        node.stabilizer[node.to_rep[p] as usize].inv()
    }

    fn extend_level(&mut self, level: usize) {
        let mut next: Vec<RepNode<A::Elem>> = Vec::new();
        let mut child_map = HashMap::new();
        for (ri, node) in self.levels[level].iter().enumerate() {
            for (oi, &x) in node.orbit_reps.iter().enumerate() {
                let mut s = node.subset.clone();
                s.push(x);
                s.sort_unstable();
                let target = (ri as u32, oi as u32);
                let mut best: Option<(u32, u32)> = None;
                let mut hits: Vec<A::Elem> = Vec::new();
                let mut rejected = false;
                for (yi, &y) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(yi);
                    let (rj, g) = self.retrieve_at(level, &rest);
                    let z = self.action.act(&g, y);
                    let rnode = &self.levels[level][rj];
                    let oz = rnode.orbit_of[z];
                    debug_assert_ne!(oz, NONE);
                    let nd = (rj as u32, oz);
                    if nd < target {
                        rejected = true;
                        break;
                    }
                    if nd == target {
                        // t_y = h∘g maps S onto R ∪ {x}
                        let h = self.to_orbit_rep(rnode, z);
                        hits.push(h.mul(&g));
                    }
                    best = Some(best.map_or(nd, |b| b.min(nd)));
                }
                if rejected {
                    continue;
                }
                debug_assert_eq!(best, Some(target));
                // Stab(S) = union over hits of K∘t_y, K = Stab(R) ∩ Stab(x)
                let k: Vec<&A::Elem> = node.stabilizer.iter().filter(|g| self.action.act(g, x) == x).collect();
                let mut stab: Vec<A::Elem> = Vec::with_capacity(k.len() * hits.len());
                for t in &hits {
                    for kk in &k {
                        stab.push(kk.mul(t));
                    }
                }
                if let Some(pos) = stab.iter().position(|g| g.is_identity()) {
                    stab.swap(0, pos);
                }
                debug_assert!(stab[0].is_identity());
                child_map.insert(target, next.len() as u32);
                next.push(self.make_node(s, stab));
            }
        }
        self.levels.push(next);
        self.children.push(child_map);
    }

    /// Representative index and transporter for a sorted subset of size `level`.
    fn retrieve_at(&self, level: usize, s: &[usize]) -> (usize, A::Elem) {
        if level == 0 {
            return (0, self.action.identity());
        }
        let mut best: Option<((u32, u32), A::Elem)> = None;
        for (yi, &y) in s.iter().enumerate() {
            let mut rest = s.to_vec();
            rest.remove(yi);
            let (rj, g) = self.retrieve_at(level - 1, &rest);
            let z = self.action.act(&g, y);
            let rnode = &self.levels[level - 1][rj];
            let oz = rnode.orbit_of[z];
            let nd = (rj as u32, oz);
            if best.as_ref().is_none_or(|b| nd < b.0) {
                let h = self.to_orbit_rep(rnode, z);
                best = Some((nd, h.mul(&g)));
            }
        }
        let (nd, t) = best.expect("nonempty subset");
        let idx = *self.children[level - 1].get(&nd).expect("minimal node has a representative") as usize;
        if self.levels[level][idx].subset == s {
            return (idx, self.action.identity());
        }
        (idx, t)
    }

    /// Returns (representative index at level |S|, g) with g·S = representative.
    pub fn retrieve(&self, subset: &[usize]) -> Result<(usize, A::Elem)> {
        let k = subset.len();
        if k >= self.levels.len() {
            return Err(CensusError::SubsetTooLarge { size: k, depth: self.levels.len() - 1 });
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != k || s.iter().any(|&p| p >= self.action.npoints()) {
            return Err(CensusError::InvalidArgument("subset has repeated or out-of-range points".into()));
        }
        Ok(self.retrieve_at(k, &s))
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[RepNode<A::Elem>] {
        &self.levels[k]
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    /// Σ |G| / |Stab(R)| over the level-k representatives.
    pub fn orbit_sum(&self, k: usize) -> u128 {
        let g = self.action.elements().len() as u128;
        self.levels[k].iter().map(|r| g / r.stabilizer.len() as u128).sum()
    }

    /// Checks the orbit-counting identity against the number of admissible
    /// k-subsets at every level.
    pub fn check_counts(&self, count: impl Fn(usize) -> u128) -> Result<()> {
        let g = self.action.elements().len();
        for k in 0..self.levels.len() {
            for r in &self.levels[k] {
                if g % r.stabilizer.len() != 0 {
                    return Err(CensusError::InconsistentAction(format!("stabilizer order at level {k}")));
                }
            }
            if self.orbit_sum(k) != count(k) {
                return Err(CensusError::InconsistentAction(format!(
                    "orbit sum {} != {} at level {k}",
                    self.orbit_sum(k),
                    count(k)
                )));
            }
        }
        Ok(())
    }
}

/// Binomial coefficient as u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn check_action<A: GroupAction>(a: &A) -> Result<()> {
    let els = a.elements();
    let n = a.npoints();
    let step = (els.len() / 8).max(1);
    let pstep = (n / 16).max(1);
    for i in (0..els.len()).step_by(step) {
        for j in (0..els.len()).step_by(step) {
            let ab = els[i].mul(&els[j]);
            for p in (0..n).step_by(pstep) {
                if a.act(&ab, p) != a.act(&els[i], a.act(&els[j], p)) {
                    return Err(CensusError::InconsistentAction("g(h(x)) != (gh)(x)".into()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupact::{pgl2, F2Mat, ProductElem};
    use std::collections::{BTreeSet, HashSet};

    fn p1_action() -> ExplicitAction<F2Mat, impl Fn(&F2Mat, usize) -> usize> {
        ExplicitAction {
            elements: pgl2().to_vec(),
            identity: F2Mat::identity(2),
            npoints: 3,
            act: |g: &F2Mat, p: usize| g.apply(p as u32 + 1) as usize - 1,
        }
    }

    fn p1p1_action() -> ExplicitAction<ProductElem, impl Fn(&ProductElem, usize) -> usize> {
        let mut els = Vec::new();
        for a in pgl2() {
            for b in pgl2() {
                els.push(ProductElem(vec![*a, *b]));
            }
        }
        ExplicitAction {
            elements: els,
            identity: ProductElem(vec![F2Mat::identity(2); 2]),
            npoints: 9,
            act: |g: &ProductElem, p: usize| {
                let x = g.0[0].apply((p / 3) as u32 + 1) as usize - 1;
                let y = g.0[1].apply((p % 3) as u32 + 1) as usize - 1;
                x * 3 + y
            },
        }
    }

    #[test]
    fn three_transitive_p1() {
        let t = OrbitTree::build(p1_action(), 3).unwrap();
        for k in 0..=3 {
            assert_eq!(t.level(k).len(), 1);
        }
        t.check_counts(|k| binomial(3, k as u64)).unwrap();
    }

    #[test]
    fn trivial_group_lists_everything() {
        let a = ExplicitAction {
            elements: vec![F2Mat::identity(1)],
            identity: F2Mat::identity(1),
            npoints: 5,
            act: |_: &F2Mat, p: usize| p,
        };
        let t = OrbitTree::build(a, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(t.level(k).len() as u128, binomial(5, k as u64));
        }
    }

    fn naive_orbits(
        a: &ExplicitAction<ProductElem, impl Fn(&ProductElem, usize) -> usize>,
        k: usize,
    ) -> Vec<BTreeSet<Vec<usize>>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u32..512 {
            if mask.count_ones() as usize != k {
                continue;
            }
            let s: Vec<usize> = (0..9).filter(|&i| (mask >> i) & 1 == 1).collect();
            if seen.contains(&s) {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for g in &a.elements {
                let mut img: Vec<usize> = s.iter().map(|&p| (a.act)(g, p)).collect();
                img.sort_unstable();
                orbit.insert(img);
            }
            for o in &orbit {
                seen.insert(o.clone());
            }
            out.push(orbit);
        }
        out
    }

    #[test]
    fn p1p1_matches_naive_partition() {
        let t = OrbitTree::build(p1p1_action(), 9).unwrap();
        t.check_counts(|k| binomial(9, k as u64)).unwrap();
        let a = t.action();
        for k in 0..=9 {
            let orbits = naive_orbits(a, k);
            // Burnside: number of orbits = average number of fixed subsets
            let mut fixed = 0usize;
            for g in &a.elements {
                for mask in 0u32..512 {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let img: u32 = (0..9).filter(|&i| (mask >> i) & 1 == 1).map(|i| 1u32 << (a.act)(g, i)).sum();
                    if img == mask {
                        fixed += 1;
                    }
                }
            }
            assert_eq!(fixed / a.elements.len(), orbits.len());
            assert_eq!(t.level(k).len(), orbits.len(), "level {k}");
            for orbit in &orbits {
                let reps: BTreeSet<usize> = orbit.iter().map(|s| t.retrieve(s).unwrap().0).collect();
                assert_eq!(reps.len(), 1);
                for s in orbit {
                    let (ri, g) = t.retrieve(s).unwrap();
                    let mut img: Vec<usize> = s.iter().map(|&p| (a.act)(&g, p)).collect();
                    img.sort_unstable();
                    assert_eq!(img, t.level(k)[ri].subset);
                }
            }
            for (ri, r) in t.level(k).iter().enumerate() {
                let (rj, g) = t.retrieve(&r.subset).unwrap();
                assert_eq!(rj, ri);
                assert!(g.is_identity());
                // stabilizer is exactly the set of elements fixing the subset
                let brute = a
                    .elements
                    .iter()
                    .filter(|g| {
                        let mut img: Vec<usize> = r.subset.iter().map(|&p| (a.act)(g, p)).collect();
                        img.sort_unstable();
                        img == r.subset
                    })
                    .count();
                assert_eq!(brute, r.stabilizer.len());
            }
        }
    }

    #[test]
    fn admissible_filter() {
        // subsets with pairwise distinct first coordinates: an invariant,
        // hereditary family with C(3,k)·3^k members of size k
        let t = OrbitTree::build_with(
            p1p1_action(),
            3,
            Box::new(|s: &[usize], x: usize| s.iter().all(|&p| p / 3 != x / 3)),
        )
        .unwrap();
        t.check_counts(|k| binomial(3, k as u64) * 3u128.pow(k as u32)).unwrap();
        // a map from 3 points to 3 points up to S3 x S3: classified by image size
        assert_eq!(t.level(3).len(), 3);
    }

    #[test]
    fn out_of_range() {
        let t = OrbitTree::build(p1_action(), 2).unwrap();
        assert!(t.retrieve(&[0, 1, 2]).is_err());
        assert!(t.retrieve(&[0, 0]).is_err());
    }
}
