//! Exact minimal generating sets of small groups and monoids given by
//! their multiplication tables.
//!
//! For groups the search runs over cyclic subgroups (any generator of a
//! cyclic subgroup may replace another), fixes the first generator up to
//! conjugacy, and prunes with the rank of the abelianization modulo the
//! image of the partial generating set.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::error::{cap_check, Error, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

/// A finite monoid as a composition table. `compose[a * size + b]` is `a·b`.
#[derive(Clone, Debug)]
pub struct ActionTable {
    size: usize,
    compose: Vec<u16>,
    identity: usize,
    is_group: bool,
}

impl ActionTable {
    /// Validates identity laws and closure; associativity is checked for
    /// tables of at most 256 elements.
    pub fn new(size: usize, compose: Vec<u16>, identity: usize) -> Result<Self> {
        if size == 0 || compose.len() != size * size || identity >= size {
            return Err(Error::InvalidTable("table shape or identity out of range".into()));
        }
        cap_check("table size", size as u128, u16::MAX as u128)?;
        if compose.iter().any(|&c| c as usize >= size) {
            return Err(Error::InvalidTable("table is not closed".into()));
        }
        let mul = |a: usize, b: usize| compose[a * size + b] as usize;
        for a in 0..size {
            if mul(identity, a) != a || mul(a, identity) != a {
                return Err(Error::InvalidTable(format!("identity law fails at {a}")));
            }
        }
        if size <= 256 {
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(Error::InvalidTable("table is not associative".into()));
                        }
                    }
                }
            }
        }
        let is_group = (0..size).all(|a| (0..size).any(|b| mul(a, b) == identity && mul(b, a) == identity));
        Ok(ActionTable { size, compose, identity, is_group })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let compose = (0..n).flat_map(|a| g.row(a).iter().copied()).collect();
        ActionTable { size: n, compose, identity: g.identity(), is_group: true }
    }

    /// The monoid of a set of maps on `0..points` closed under composition
    /// `(a·b)(p) = a(b(p))`. The identity map must be present.
    pub fn from_maps(maps: &[Vec<u32>]) -> Result<Self> {
        let index: HashMap<&[u32], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        if index.len() != maps.len() {
            return Err(Error::InvalidTable("duplicate maps".into()));
        }
        let points = maps.first().map_or(0, Vec::len);
        let id: Vec<u32> = (0..points as u32).collect();
        let identity = *index.get(id.as_slice()).ok_or_else(|| Error::InvalidTable("identity map missing".into()))?;
        let mut compose = Vec::with_capacity(maps.len() * maps.len());
        let mut buf = vec![0u32; points];
        for a in maps {
            for b in maps {
                for (slot, &p) in buf.iter_mut().zip(b) {
                    *slot = a[p as usize];
                }
                let c = index.get(buf.as_slice()).ok_or_else(|| Error::InvalidTable("maps are not closed".into()))?;
                compose.push(*c as u16);
            }
        }
        ActionTable::new(maps.len(), compose, identity)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.compose[a * self.size + b] as usize
    }

    /// Size of the submonoid generated by `gens` (breadth-first product saturation).
    pub fn closure_size(&self, gens: &[usize]) -> usize {
        self.closure(gens).iter().filter(|&&b| b).count()
    }

    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        seen[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.closure_size(gens) == self.size
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.mul(a, b) == self.identity).expect("group element has an inverse")
    }
}

/// Three-valued rank result: budgets never turn into false answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankOutcome {
    Exact(usize),
    Bounded { lower: usize, upper: usize },
    Unknown,
}

#[derive(Clone, Debug)]
pub struct RankResult {
    pub outcome: RankOutcome,
    /// A generating set of size equal to the best known upper bound.
    pub witness: Option<Vec<usize>>,
    /// Rank of the abelianization, a lower bound for groups.
    pub abelian_rank: Option<usize>,
}

impl RankResult {
    pub fn exact(&self) -> Option<usize> {
        match self.outcome {
            RankOutcome::Exact(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(Vec<usize>),
    /// The search was exhaustive: no generating set of that size exists.
    NoneOfSize,
    /// The budget ran out first.
    Unknown,
}

struct Budget {
    deadline: Instant,
    ticks: u64,
    expired: bool,
}

impl Budget {
    fn new(timeout: Duration) -> Self {
        Budget { deadline: Instant::now() + timeout, ticks: 0, expired: false }
    }

    fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks % 256 == 0 && Instant::now() >= self.deadline {
            self.expired = true;
        }
        self.expired
    }
}

/// `G / G'` with the projection, for pruning.
struct Abelianization {
    /// coset index of each element of `G`
    proj: Vec<usize>,
    /// table of the abelian quotient
    table: Vec<usize>,
    order: usize,
    primes: Vec<usize>,
}

impl Abelianization {
    fn new(m: &ActionTable) -> Self {
        let n = m.size;
        let inv: Vec<usize> = (0..n).map(|a| m.inverse(a)).collect();
        let mut is_comm = vec![false; n];
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = m.mul(m.mul(inv[a], inv[b]), m.mul(a, b));
                if !is_comm[c] {
                    is_comm[c] = true;
                    comms.push(c);
                }
            }
        }
        let derived = m.closure(&comms);
        let dmembers: Vec<usize> = (0..n).filter(|&x| derived[x]).collect();
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if proj[x] != usize::MAX {
                continue;
            }
            for &d in &dmembers {
                proj[m.mul(x, d)] = reps.len();
            }
            reps.push(x);
        }
        let order = reps.len();
        let table = reps.iter().flat_map(|&a| reps.iter().map(move |&b| (a, b))).map(|(a, b)| proj[m.mul(a, b)]).collect();
        let primes = crate::lattice::prime_divisors(order);
        Abelianization { proj, table, order, primes }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    fn subgroup_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        list.len()
    }

    /// Rank of `A / <images of gens>`: the largest `e` with `p^e = |A / (pA + I)|`.
    fn quotient_rank(&self, gens: &[usize]) -> usize {
        let images: Vec<usize> = gens.iter().map(|&g| self.proj[g]).collect();
        let mut best = 0;
        for &p in &self.primes {
            let mut sub = images.clone();
            for a in 0..self.order {
                let mut x = 0;
                for _ in 0..p {
                    x = self.mul(x, a);
                }
                sub.push(x);
            }
            sub.sort_unstable();
            sub.dedup();
            let mut index = self.order / self.subgroup_size(&sub);
            let mut e = 0;
            while index > 1 {
                index /= p;
                e += 1;
            }
            best = best.max(e);
        }
        best
    }
}

/// One generator per cyclic subgroup: the least element index generating it.
fn cyclic_generators(m: &ActionTable) -> (Vec<usize>, Vec<usize>) {
    let n = m.size;
    let mut canon = vec![usize::MAX; n];
    let mut orders = vec![0; n];
    for a in 0..n {
        if canon[a] != usize::MAX {
            continue;
        }
        let mut powers = vec![m.identity];
        let mut x = a;
        while x != m.identity {
            powers.push(x);
            x = m.mul(x, a);
        }
        let ord = powers.len();
        let gens: Vec<usize> = (1..=ord.max(1)).filter(|&j| gcd(j, ord) == 1).map(|j| powers[j % ord]).collect();
        let c = *gens.iter().min().unwrap();
        for &b in &gens {
            canon[b] = c;
            orders[b] = ord;
        }
    }
    (canon, orders)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn rank_exact(m: &ActionTable, limits: &Limits) -> Result<RankResult> {
    cap_check("rank oracle size", m.size as u128, limits.max_oracle_order as u128)?;
    if m.size == 1 {
        return Ok(RankResult { outcome: RankOutcome::Exact(0), witness: Some(Vec::new()), abelian_rank: Some(0) });
    }
    let mut budget = Budget::new(limits.rank_timeout);
    if m.is_group {
        group_rank(m, &mut budget)
    } else {
        monoid_rank(m, &mut budget)
    }
}

fn group_rank(m: &ActionTable, budget: &mut Budget) -> Result<RankResult> {
    let ab = Abelianization::new(m);
    let lower = ab.quotient_rank(&[]).max(1);
    let (canon, orders) = cyclic_generators(m);
    let mut cands: Vec<usize> = (0..m.size).filter(|&a| a != m.identity && canon[a] == a).collect();
    cands.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));

    if orders.iter().any(|&o| o == m.size) {
        let g = (0..m.size).find(|&a| orders[a] == m.size).unwrap();
        return Ok(RankResult { outcome: RankOutcome::Exact(1), witness: Some(vec![g]), abelian_rank: Some(lower) });
    }
    let witness = greedy_witness(m, &cands);
    let upper = witness.len();
    let abelian_rank = Some(ab.quotient_rank(&[]));
    if lower >= upper {
        return Ok(RankResult { outcome: RankOutcome::Exact(upper), witness: Some(witness), abelian_rank });
    }
    // conjugacy class representatives among cyclic subgroups
    let inv: Vec<usize> = (0..m.size).map(|a| m.inverse(a)).collect();
    let first: Vec<usize> = cands
        .iter()
        .copied()
        .filter(|&c| (0..m.size).all(|x| canon[m.mul(m.mul(inv[x], c), x)] >= c))
        .collect();
    let ctx = Search { m, ab: &ab, cands: &cands, orders: &orders };
    for k in lower.max(2)..upper {
        let mut chosen = Vec::with_capacity(k);
        match ctx.search_first(&first, k, &mut chosen, budget) {
            Some(true) => {
                return Ok(RankResult { outcome: RankOutcome::Exact(k), witness: Some(chosen), abelian_rank });
            }
            Some(false) => {}
            None => {
                return Ok(RankResult {
                    outcome: RankOutcome::Bounded { lower: k, upper },
                    witness: Some(witness),
                    abelian_rank,
                });
            }
        }
    }
    Ok(RankResult { outcome: RankOutcome::Exact(upper), witness: Some(witness), abelian_rank })
}

/// Adds the candidate that enlarges the generated subgroup most until the
/// whole group is reached.
fn greedy_witness(m: &ActionTable, cands: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut size = 1;
    while size < m.size {
        let mut best = (size, usize::MAX);
        for &c in cands {
            gens.push(c);
            let s = m.closure_size(&gens);
            gens.pop();
            if s > best.0 {
                best = (s, c);
            }
        }
        gens.push(best.1);
        size = best.0;
    }
    gens
}

struct Search<'a> {
    m: &'a ActionTable,
    ab: &'a Abelianization,
    cands: &'a [usize],
    orders: &'a [usize],
}

impl Search<'_> {
    /// `Some(true)` when `chosen` now generates, `Some(false)` when no set of
    /// size `k` exists, `None` when the budget ran out.
    fn search_first(&self, first: &[usize], k: usize, chosen: &mut Vec<usize>, budget: &mut Budget) -> Option<bool> {
        for &g1 in first {
            chosen.push(g1);
            let top = self.orders[g1];
            match self.search_rest(top, 0, k, chosen, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
        }
        Some(false)
    }

    fn search_rest(&self, top: usize, from: usize, k: usize, chosen: &mut Vec<usize>, budget: &mut Budget) -> Option<bool> {
        if budget.tick() {
            return None;
        }
        let left = k - chosen.len();
        if self.ab.quotient_rank(chosen) > left {
            return Some(false);
        }
        if left == 0 {
            return Some(self.m.generates(chosen));
        }
        for i in from..self.cands.len() {
            let c = self.cands[i];
            if self.orders[c] > top || chosen.contains(&c) {
                continue;
            }
            chosen.push(c);
            match self.search_rest(top, i + 1, k, chosen, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
        }
        Some(false)
    }
}

/// Plain subset search for monoids. Elements that are not a product of two
/// non-identity elements must be in every generating set.
fn monoid_rank(m: &ActionTable, budget: &mut Budget) -> Result<RankResult> {
    let n = m.size;
    let mut decomposable = vec![false; n];
    for a in (0..n).filter(|&a| a != m.identity) {
        for b in (0..n).filter(|&b| b != m.identity) {
            decomposable[m.mul(a, b)] = true;
        }
    }
    let forced: Vec<usize> = (0..n).filter(|&a| a != m.identity && !decomposable[a]).collect();
    let rest: Vec<usize> = (0..n).filter(|&a| a != m.identity && decomposable[a]).collect();
    let lower = forced.len().max(1);
    for k in lower..n {
        let mut chosen = forced.clone();
        match monoid_search(m, &rest, 0, k, &mut chosen, budget) {
            Some(true) => return Ok(RankResult { outcome: RankOutcome::Exact(k), witness: Some(chosen), abelian_rank: None }),
            Some(false) => {}
            None => {
                let all: Vec<usize> = (0..n).filter(|&a| a != m.identity).collect();
                let outcome = RankOutcome::Bounded { lower: k, upper: all.len() };
                return Ok(RankResult { outcome, witness: Some(all), abelian_rank: None });
            }
        }
    }
    let all: Vec<usize> = (0..n).filter(|&a| a != m.identity).collect();
    Ok(RankResult { outcome: RankOutcome::Exact(all.len()), witness: Some(all), abelian_rank: None })
}

fn monoid_search(m: &ActionTable, rest: &[usize], from: usize, k: usize, chosen: &mut Vec<usize>, budget: &mut Budget) -> Option<bool> {
    if budget.tick() {
        return None;
    }
    if chosen.len() == k {
        return Some(m.generates(chosen));
    }
    for i in from..rest.len() {
        chosen.push(rest[i]);
        match monoid_search(m, rest, i + 1, k, chosen, budget) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        chosen.pop();
    }
    Some(false)
}

/// Looks for a generating set with at most `k` elements.
pub fn rank_upper_witness(m: &ActionTable, k: usize, limits: &Limits) -> Result<WitnessOutcome> {
    let r = rank_exact(m, limits)?;
    Ok(match (r.outcome, r.witness) {
        (RankOutcome::Exact(e), Some(w)) if e <= k => WitnessOutcome::Found(w),
        (RankOutcome::Exact(_), _) => WitnessOutcome::NoneOfSize,
        (RankOutcome::Bounded { upper, .. }, Some(w)) if upper <= k => WitnessOutcome::Found(w),
        (RankOutcome::Bounded { lower, .. }, _) if lower > k => WitnessOutcome::NoneOfSize,
        _ => WitnessOutcome::Unknown,
    })
}

/// Exact rank of a group, failing with [`Error::Timeout`] if the budget runs out.
pub fn group_rank_bruteforce(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    rank_exact(&ActionTable::from_group(g), limits)?.exact().ok_or(Error::Timeout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, quaternion, symmetric, wreath};

    fn rank(g: &FiniteGroup) -> usize {
        group_rank_bruteforce(g, &Limits::default()).unwrap()
    }

    #[test]
    fn small_group_ranks() {
        assert_eq!(rank(&cyclic(1).unwrap()), 0);
        assert_eq!(rank(&cyclic(6).unwrap()), 1);
        let c2 = cyclic(2).unwrap();
        assert_eq!(rank(&direct_product(&c2, &c2).unwrap()), 2);
        assert_eq!(rank(&quaternion().unwrap()), 2);
        assert_eq!(rank(&symmetric(4).unwrap()), 2);
        assert_eq!(rank(&dihedral(12).unwrap()), 2);
        let v = direct_product(&direct_product(&c2, &c2).unwrap(), &c2).unwrap();
        assert_eq!(rank(&v), 3);
        assert_eq!(rank(&wreath(&cyclic(2).unwrap(), 2).unwrap()), 2);
        assert_eq!(rank(&wreath(&cyclic(3).unwrap(), 2).unwrap()), 2);
    }

    #[test]
    fn witnesses() {
        let lim = Limits::default();
        let s4 = ActionTable::from_group(&symmetric(4).unwrap());
        match rank_upper_witness(&s4, 2, &lim).unwrap() {
            WitnessOutcome::Found(w) => assert!(w.len() <= 2 && s4.generates(&w)),
            other => panic!("{other:?}"),
        }
        assert_eq!(rank_upper_witness(&s4, 1, &lim).unwrap(), WitnessOutcome::NoneOfSize);
        let c2 = ActionTable::from_group(&cyclic(2).unwrap());
        assert_eq!(rank_upper_witness(&c2, 1, &lim).unwrap(), WitnessOutcome::Found(vec![1]));
        let w = ActionTable::from_group(&wreath(&cyclic(2).unwrap(), 3).unwrap());
        assert!(matches!(rank_upper_witness(&w, 2, &lim).unwrap(), WitnessOutcome::Found(v) if v.len() == 2));
    }

    #[test]
    fn monoid_rank_of_full_transformations() {
        // all maps {0,1} -> {0,1}: identity, swap, two constants
        let maps = vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]];
        let m = ActionTable::from_maps(&maps).unwrap();
        assert!(!m.is_group());
        assert_eq!(rank_exact(&m, &Limits::default()).unwrap().exact(), Some(2));
    }

    #[test]
    fn timeout_is_not_an_answer() {
        let lim = Limits { rank_timeout: Duration::ZERO, ..Limits::default() };
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&direct_product(&c2, &c2).unwrap(), &symmetric(3).unwrap()).unwrap();
        let r = rank_exact(&ActionTable::from_group(&v), &lim).unwrap();
        if let RankOutcome::Bounded { lower, upper } = r.outcome {
            assert!(lower <= 3 && 3 <= upper);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(ActionTable::new(2, vec![0, 1, 1, 1], 1).is_err());
        assert!(ActionTable::new(2, vec![0, 1, 1, 2], 0).is_err());
        assert!(ActionTable::from_maps(&[vec![1, 0]]).is_err());
    }
}
