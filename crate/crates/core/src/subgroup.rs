//! Subgroups as element bitsets, generated-subgroup closure, and
//! enumeration of every subgroup of a small group.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{cap_check, Error, Result};
use crate::group::FiniteGroup;

/// A set of element indices with bitset semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet { words: vec![0; universe.div_ceil(64).max(1)] }
    }

    pub fn from_iter(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1u64 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

impl Ord for ElemSet {
    /// Compares the sets as binary numbers in which element `i` has weight `2^i`.
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.words.len().max(other.words.len());
        for i in (0..len).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of some parent group, with a generating set that produced it.
#[derive(Clone)]
pub struct Subgroup {
    members: ElemSet,
    order: usize,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members)
    }
}

impl Subgroup {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        generated(g, &[])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let all: Vec<usize> = (0..g.order()).collect();
        Subgroup {
            members: ElemSet::from_iter(g.order(), 0..g.order()),
            order: g.order(),
            generators: small_generating_set(g, &all),
        }
    }

    /// Checks that `members` is a subgroup of `g` and wraps it.
    pub fn from_members(g: &FiniteGroup, members: ElemSet) -> Result<Self> {
        if !members.contains(g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let elems: Vec<usize> = members.iter().collect();
        if elems.iter().any(|&a| a >= g.order()) {
            return Err(Error::NotSubgroup("element out of range".into()));
        }
        for &a in &elems {
            if !members.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &elems {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed under product at ({a}, {b})")));
                }
            }
        }
        let generators = small_generating_set(g, &elems);
        Ok(Subgroup { order: elems.len(), members, generators })
    }
}

/// The subgroup generated by `gens`. In a finite group the set closed under
/// right multiplication by the generators is already a subgroup.
pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut members = ElemSet::new(g.order());
    let mut list = vec![g.identity()];
    members.insert(g.identity());
    let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != g.identity()).collect();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in &gens {
            let y = g.mul(x, s);
            if members.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    Subgroup { order: list.len(), members, generators: gens }
}

/// Greedy generating set for the subgroup on `elems`: repeatedly adds the
/// highest-order element not yet covered.
fn small_generating_set(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let mut by_order: Vec<(usize, usize)> = elems.iter().map(|&a| (g.element_order(a), a)).collect();
    by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut gens = Vec::new();
    let mut current = generated(g, &[]);
    for (_, a) in by_order {
        if current.order == elems.len() {
            break;
        }
        if !current.contains(a) {
            gens.push(a);
            current = generated(g, &gens);
        }
    }
    gens
}

/// Every subgroup of `g`, each exactly once, sorted by (order, bitset).
///
/// Seeds with the cyclic subgroups and closes under joins with cyclic
/// subgroups until no new subgroup appears. Every subgroup is a join of
/// cyclic subgroups, so the fixed point is the whole lattice.
pub fn subgroups(g: &FiniteGroup, max_order: usize) -> Result<Vec<Subgroup>> {
    cap_check("lattice group order", g.order() as u128, max_order as u128)?;
    let n = g.order();

    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen: HashMap<ElemSet, usize> = HashMap::new();
    for a in 0..n {
        let c = generated(g, &[a]);
        if !seen.contains_key(&c.members) {
            seen.insert(c.members.clone(), cyclic.len());
            cyclic.push(c);
        }
    }

    let mut all: Vec<Subgroup> = cyclic.clone();
    let mut queue: Vec<usize> = (0..all.len()).collect();
    while let Some(idx) = queue.pop() {
        for c in &cyclic {
            let h = &all[idx];
            if c.members.is_subset(&h.members) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(c.generators.first().copied().unwrap_or(g.identity()));
            let joined = generated(g, &gens);
            if !seen.contains_key(&joined.members) {
                seen.insert(joined.members.clone(), all.len());
                queue.push(all.len());
                all.push(joined);
            }
        }
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, quaternion, symmetric};

    fn count(g: &FiniteGroup) -> usize {
        subgroups(g, 256).unwrap().len()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(count(&cyclic(1).unwrap()), 1);
        assert_eq!(count(&cyclic(8).unwrap()), 4);
        assert_eq!(count(&cyclic(12).unwrap()), 6);
        assert_eq!(count(&dihedral(6).unwrap()), 6);
        assert_eq!(count(&dihedral(8).unwrap()), 10);
        assert_eq!(count(&quaternion().unwrap()), 6);
        assert_eq!(count(&symmetric(4).unwrap()), 30);
        let c2 = cyclic(2).unwrap();
        assert_eq!(count(&direct_product(&c2, &c2).unwrap()), 5);
    }

    #[test]
    fn sorted_and_lagrange() {
        let s4 = symmetric(4).unwrap();
        let subs = subgroups(&s4, 256).unwrap();
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        for h in &subs {
            assert_eq!(s4.order() % h.order(), 0);
            assert!(h.contains(s4.identity()));
            let again = Subgroup::from_members(&s4, h.members().clone()).unwrap();
            assert_eq!(&again, h);
        }
        assert_eq!(subs.first().unwrap().order(), 1);
        assert_eq!(subs.last().unwrap().order(), 24);
    }

    #[test]
    fn lattice_cap() {
        assert!(matches!(subgroups(&cyclic(300).unwrap(), 256), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let c4 = cyclic(4).unwrap();
        assert!(Subgroup::from_members(&c4, ElemSet::from_iter(4, [0, 1])).is_err());
        assert!(Subgroup::from_members(&c4, ElemSet::from_iter(4, [1, 3])).is_err());
        assert!(Subgroup::from_members(&c4, ElemSet::from_iter(4, [0, 2])).is_ok());
    }

    #[test]
    fn elemset_order_is_numeric() {
        let a = ElemSet::from_iter(130, [0, 1]);
        let b = ElemSet::from_iter(130, [129]);
        assert!(a < b);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![129]);
    }
}
