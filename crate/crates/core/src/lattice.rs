//! Subgroup lattice, conjugacy classes of subgroups, normalizers,
//! quotients, the Möbius function, and group length.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup};
use crate::limits::Limits;
use crate::subgroup::{self, generated, ElemSet, Subgroup};

/// All subgroups of a group in (order, bitset) order together with the
/// containment relation. Index 0 is the trivial subgroup and the last
/// index is the whole group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElemSet, usize>,
    /// `above[i]` holds `j` iff subgroup `i` is contained in subgroup `j`.
    above: Vec<ElemSet>,
}

impl SubgroupLattice {
    pub fn new(g: &FiniteGroup, limits: &Limits) -> Result<Self> {
        let subgroups = subgroup::subgroups(g, limits.max_lattice_order)?;
        let m = subgroups.len();
        let lookup = subgroups.iter().enumerate().map(|(i, h)| (h.members().clone(), i)).collect();
        let above = (0..m)
            .map(|i| {
                let h = &subgroups[i];
                ElemSet::from_iter(m, (i..m).filter(|&j| h.is_subgroup_of(&subgroups[j])))
            })
            .collect();
        Ok(SubgroupLattice { subgroups, lookup, above })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, members: &ElemSet) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// `subgroups[i] ⊆ subgroups[j]`
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// Indices of all subgroups containing subgroup `i`, ascending.
    pub fn supers(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].iter()
    }
}

/// One conjugacy class `[H]` of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lattice index of the smallest member in (order, bitset) order.
    pub representative: usize,
    /// Lattice indices of all conjugates, ascending.
    pub members: Vec<usize>,
    pub normalizer: Subgroup,
    /// `[G : H]`
    pub index: usize,
    pub is_normal: bool,
    /// `G / H`, present exactly when `H` is normal.
    pub quotient: Option<FiniteGroup>,
}

#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    lattice: SubgroupLattice,
    pub classes: Vec<SubgroupClass>,
    /// Class id of each lattice entry.
    pub class_of: Vec<usize>,
    pub r: usize,
    pub r_by_index: BTreeMap<usize, usize>,
}

impl SubgroupClassTable {
    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn representative(&self, class_id: usize) -> &Subgroup {
        self.lattice.get(self.classes[class_id].representative)
    }

    /// Class of a subgroup given by its member set.
    pub fn class_of_members(&self, members: &ElemSet) -> Option<usize> {
        self.lattice.index_of(members).map(|i| self.class_of[i])
    }

    /// `r_i(G)`: number of classes of index `i`.
    pub fn r_index(&self, i: usize) -> usize {
        self.r_by_index.get(&i).copied().unwrap_or(0)
    }

    /// Sum of `r_p(G)` over the prime divisors `p` of `|G|`.
    pub fn r_prime_sum(&self, group_order: usize) -> usize {
        prime_divisors(group_order).into_iter().map(|p| self.r_index(p)).sum()
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn top_class(&self) -> usize {
        self.classes.len() - 1
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn conjugate_set(g: &FiniteGroup, h: &Subgroup, x: usize) -> ElemSet {
    ElemSet::from_iter(g.order(), h.members().iter().map(|a| g.conjugate(a, x)))
}

fn ensure_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.members().iter().any(|a| a >= g.order()) {
        return Err(Error::NotSubgroup("element out of range".into()));
    }
    let closure = generated(g, h.generators());
    if closure.members() != h.members() {
        return Err(Error::NotSubgroup("generators do not produce the member set".into()));
    }
    Ok(())
}

/// `N_G(H) = { g : g^-1 H g = H }`.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    ensure_subgroup(g, h)?;
    Ok(normalizer_unchecked(g, h))
}

fn normalizer_unchecked(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    // conjugating a generating set into H is enough: the conjugate has the same order
    let gens = h.generators();
    let members = (0..g.order()).filter(|&x| gens.iter().all(|&a| h.contains(g.conjugate(a, x))));
    let elems: Vec<usize> = members.collect();
    let mut n = generated(g, &elems);
    if n.generators().len() > 8 {
        n = Subgroup::from_members(g, n.members().clone()).expect("normalizer is a subgroup");
    }
    n
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.generators()
        .iter()
        .all(|&a| (0..g.order()).all(|x| h.contains(g.conjugate(a, x))))
}

/// `G / N` on cosets, numbered by their smallest element.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<FiniteGroup> {
    ensure_subgroup(g, n)?;
    quotient_within(g, &Subgroup::whole(g), n)
}

/// `K / H` for `H` normal in `K`, both subgroups of `g`.
pub fn quotient_within(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<FiniteGroup> {
    if !h.is_subgroup_of(k) {
        return Err(Error::NotSubgroup("H is not contained in K".into()));
    }
    let kelems = k.elements();
    for &x in &kelems {
        for &a in h.generators() {
            if !h.contains(g.conjugate(a, x)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let helems = h.elements();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &x in &kelems {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &a in &helems {
            coset_of[g.mul(x, a)] = reps.len();
        }
        reps.push(x);
    }
    let out = group::from_cosets(g, &coset_of, &reps, String::new())?;
    let name = out.describe();
    Ok(out.with_name(name))
}

/// Subgroup `k` as a standalone group.
pub fn subgroup_as_group(g: &FiniteGroup, k: &Subgroup) -> Result<FiniteGroup> {
    let out = group::restrict(g, &k.elements(), String::new())?;
    let name = out.describe();
    Ok(out.with_name(name))
}

pub fn conjugacy_classes(g: &FiniteGroup, limits: &Limits) -> Result<SubgroupClassTable> {
    let lattice = SubgroupLattice::new(g, limits)?;
    classes_from_lattice(g, lattice)
}

pub fn classes_from_lattice(g: &FiniteGroup, lattice: SubgroupLattice) -> Result<SubgroupClassTable> {
    let m = lattice.len();
    let group_gens = lattice.get(lattice.top()).generators().to_vec();
    let mut class_of = vec![usize::MAX; m];
    let mut classes = Vec::new();
    for i in 0..m {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        // orbit under conjugation by a generating set of G
        let mut members = vec![i];
        class_of[i] = cid;
        let mut head = 0;
        while head < members.len() {
            let h = lattice.get(members[head]);
            for &x in &group_gens {
                let conj = conjugate_set(g, h, x);
                let j = lattice
                    .index_of(&conj)
                    .ok_or_else(|| Error::Internal("conjugate subgroup missing from lattice".into()))?;
                if class_of[j] == usize::MAX {
                    class_of[j] = cid;
                    members.push(j);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        let rep = lattice.get(i);
        let normalizer = normalizer_unchecked(g, rep);
        if members.len() * normalizer.order() != g.order() {
            return Err(Error::Internal(format!(
                "orbit-stabilizer fails for class {cid}: {} * {} != {}",
                members.len(),
                normalizer.order(),
                g.order()
            )));
        }
        let is_normal = members.len() == 1;
        let quotient = if is_normal { Some(quotient_within(g, &Subgroup::whole(g), rep)?) } else { None };
        classes.push(SubgroupClass {
            representative: i,
            members,
            normalizer,
            index: g.order() / rep.order(),
            is_normal,
            quotient,
        });
    }
    let mut r_by_index = BTreeMap::new();
    for c in &classes {
        *r_by_index.entry(c.index).or_insert(0) += 1;
    }
    Ok(SubgroupClassTable { r: classes.len(), lattice, classes, class_of, r_by_index })
}

/// `μ(H, K)` for every pair `H ≤ K` of the lattice.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    /// `rows[h]` lists `(k, μ(h, k))` for every `k ≥ h`, ascending in `k`.
    rows: Vec<Vec<(usize, i64)>>,
}

impl MobiusTable {
    pub fn get(&self, h: usize, k: usize) -> Option<i64> {
        let row = &self.rows[h];
        row.binary_search_by_key(&k, |&(j, _)| j).ok().map(|p| row[p].1)
    }

    pub fn row(&self, h: usize) -> &[(usize, i64)] {
        &self.rows[h]
    }
}

/// Recursive inversion `μ(H, H) = 1`, `μ(H, K) = -Σ_{H ≤ L < K} μ(H, L)`.
pub fn mobius_table(lattice: &SubgroupLattice) -> MobiusTable {
    let rows = (0..lattice.len())
        .map(|h| {
            let mut row: Vec<(usize, i64)> = Vec::new();
            for k in lattice.supers(h) {
                let mu = if k == h {
                    1
                } else {
                    -row.iter().filter(|&&(l, _)| lattice.leq(l, k)).map(|&(_, v)| v).sum::<i64>()
                };
                row.push((k, mu));
            }
            row
        })
        .collect();
    MobiusTable { rows }
}

/// Length of the longest chain `1 = G_0 < G_1 < ... < G_l = G`.
pub fn group_length(lattice: &SubgroupLattice) -> usize {
    let m = lattice.len();
    let mut len = vec![0usize; m];
    for i in 1..m {
        len[i] = (0..i).filter(|&j| lattice.leq(j, i)).map(|j| len[j] + 1).max().unwrap_or(0);
    }
    len[m - 1]
}

/// Every subgroup is normal.
pub fn is_dedekind(table: &SubgroupClassTable) -> bool {
    table.classes.iter().all(|c| c.is_normal)
}
