//! Finite groups as explicit multiplication tables.
//!
//! Dihedral groups are named by their ORDER: `D8` is the symmetry group of
//! the square, with 8 elements. Element `i < n` of `D(2n)` is `r^i` and
//! element `n + i` is `r^i s`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{cap_check, Error, Result};
use crate::limits::MAX_TABLE_ORDER;

/// How a group was constructed. Bound selection uses this tag, so a cyclic
/// group of order 2 is not treated as the dihedral group `D2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Product,
    Wreath,
    Other,
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<u16>,
    labels: Option<Vec<String>>,
    family: Family,
    perm_degree: Option<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a full Cayley table, locating the identity and
    /// inverses and checking every group axiom.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        cap_check("group order", n as u128, MAX_TABLE_ORDER as u128)?;
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range")));
                }
                table.push(v as u16);
            }
        }
        Self::from_flat(name.into(), n, table, Family::Other)
    }

    pub(crate) fn from_flat(name: String, n: usize, table: Vec<u16>, family: Family) -> Result<Self> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {a} has no inverse")))?;
            inverses[a] = inv as u16;
        }
        let group = FiniteGroup {
            name,
            order: n,
            table,
            identity,
            inverses,
            labels: None,
            family,
            perm_degree: None,
        };
        group.validate()?;
        Ok(group)
    }

    /// Exhaustively checks the table invariants. Associativity is only
    /// checked for orders up to 256.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if self.table.len() != n * n || self.inverses.len() != n || self.identity >= n {
            return Err(Error::InvalidTable("inconsistent dimensions".into()));
        }
        if self.table.iter().any(|&v| v as usize >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(Error::InvalidTable(format!("identity law fails at {a}")));
            }
            if self.mul(a, self.inv(a)) != self.identity {
                return Err(Error::InvalidTable(format!("inverse law fails at {a}")));
            }
        }
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Degree of the natural faithful permutation representation, when the
    /// construction provides one (symmetric groups).
    pub fn perm_degree(&self) -> Option<usize> {
        self.perm_degree
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn inverses(&self) -> Vec<usize> {
        self.inverses.iter().map(|&v| v as usize).collect()
    }

    /// Row `a` of the Cayley table.
    pub fn row(&self, a: usize) -> &[u16] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// `g^-1 h g`
    #[inline]
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// A short isomorphism-type descriptor for small groups: `1`, `C6`,
    /// `C2xC4`, `D8`, `Q8`, or `[order n]` when nothing simpler applies.
    pub fn describe(&self) -> String {
        describe(self)
    }
}

fn build(name: String, n: usize, family: Family, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    cap_check("group order", n as u128, MAX_TABLE_ORDER as u128)?;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b) as u16);
        }
    }
    FiniteGroup::from_flat(name, n, table, family)
}

/// The cyclic group of order `n`, written additively modulo `n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group order must be positive".into()));
    }
    let g = build(format!("C{n}"), n, Family::Cyclic(n), |a, b| (a + b) % n)?;
    Ok(g.with_labels((0..n).map(|i| i.to_string()).collect()))
}

/// The dihedral group of the given order `2n`, with `r^n = s^2 = srsr = 1`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order == 0 || order % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "dihedral order must be a positive even number, got {order}"
        )));
    }
    let n = order / 2;
    let g = build(format!("D{order}"), order, Family::Dihedral(order), |a, b| {
        let (i, sa) = (a % n, a >= n);
        let (j, sb) = (b % n, b >= n);
        // s r^j = r^-j s
        let k = if sa { (i + n - j) % n } else { (i + j) % n };
        if sa ^ sb {
            n + k
        } else {
            k
        }
    })?;
    let labels = (0..order)
        .map(|a| {
            let (i, s) = (a % n, a >= n);
            match (i, s) {
                (0, false) => "e".to_string(),
                (0, true) => "s".to_string(),
                (1, false) => "r".to_string(),
                (1, true) => "rs".to_string(),
                (i, false) => format!("r^{i}"),
                (i, true) => format!("r^{i}s"),
            }
        })
        .collect();
    Ok(g.with_labels(labels))
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> Result<FiniteGroup> {
    // unit products: (sign, unit) for units 1, i, j, k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let g = build("Q8".into(), 8, Family::Quaternion, |a, b| {
        let (na, ua) = (a >= 4, a % 4);
        let (nb, ub) = (b >= 4, b % 4);
        let (neg, u) = UNIT[ua][ub];
        if na ^ nb ^ neg {
            4 + u
        } else {
            u
        }
    })?;
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(g.with_labels(labels))
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// The symmetric group on `n ≤ 7` points, composing right to left:
/// `(a * b)(x) = a(b(x))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!("symmetric degree must be in 1..=7, got {n}")));
    }
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let size = perms.len();
    cap_check("group order", size as u128, MAX_TABLE_ORDER as u128)?;
    let mut g = build(format!("S{n}"), size, Family::Symmetric(n), |a, b| {
        let composed: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
        index[&composed]
    })?;
    g.perm_degree = Some(n);
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(g.with_labels(labels))
}

/// Componentwise product `G x H`; element `(a, b)` has index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let m = h.order();
    let size = g.order() as u128 * m as u128;
    cap_check("group order", size, MAX_TABLE_ORDER as u128)?;
    let out = build(
        format!("{}x{}", g.name(), h.name()),
        size as usize,
        Family::Product,
        |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m),
    )?;
    let labels = (0..size as usize)
        .map(|a| format!("({},{})", g.label(a / m), h.label(a % m)))
        .collect();
    Ok(out.with_labels(labels))
}

/// The wreath product `base ≀ S_alpha` on pairs `(v; φ)` with
/// `(v; φ)(w; ψ) = (v · w^φ; φψ)`, where `(w^φ)_i = w_{φ(i)}`.
///
/// For this rule to be associative the permutation product `φψ` applies
/// `φ` first, i.e. `(φψ)(i) = ψ(φ(i))`.
pub fn wreath(base: &FiniteGroup, alpha: usize) -> Result<FiniteGroup> {
    wreath_with_cap(base, alpha, crate::limits::Limits::default().max_wreath_order)
}

pub fn wreath_with_cap(base: &FiniteGroup, alpha: usize, cap: usize) -> Result<FiniteGroup> {
    if alpha == 0 || alpha > 7 {
        return Err(Error::InvalidArgument(format!("wreath degree must be in 1..=7, got {alpha}")));
    }
    let c = base.order();
    let perms = permutations(alpha);
    let nperm = perms.len();
    let base_size = (c as u128).checked_pow(alpha as u32).unwrap_or(u128::MAX);
    let size = base_size.saturating_mul(nperm as u128);
    cap_check("wreath product order", size, cap as u128)?;
    cap_check("group order", size, MAX_TABLE_ORDER as u128)?;
    let base_size = base_size as usize;
    let perm_index: HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    let decode = |x: usize| -> (Vec<usize>, usize) {
        let (mut v, phi) = (x % base_size, x / base_size);
        let mut coords = vec![0; alpha];
        for slot in coords.iter_mut() {
            *slot = v % c;
            v /= c;
        }
        (coords, phi)
    };
    let encode = |coords: &[usize], phi: usize| -> usize {
        let v = coords.iter().rev().fold(0, |acc, &x| acc * c + x);
        phi * base_size + v
    };

    let out = build(
        format!("W({},{alpha})", base.name()),
        size as usize,
        Family::Wreath,
        |a, b| {
            let (v, phi) = decode(a);
            let (w, psi) = decode(b);
            let (p, q) = (&perms[phi], &perms[psi]);
            let coords: Vec<usize> = (0..alpha).map(|i| base.mul(v[i], w[p[i]])).collect();
            let composed: Vec<usize> = (0..alpha).map(|i| q[p[i]]).collect();
            encode(&coords, perm_index[&composed])
        },
    )?;
    let labels = (0..size as usize)
        .map(|x| {
            let (v, phi) = decode(x);
            let coords: Vec<String> = v.iter().map(|&a| base.label(a)).collect();
            format!("({};{})", coords.join(","), cycle_notation(&perms[phi]))
        })
        .collect();
    Ok(out.with_labels(labels))
}

/// Builds the subgroup on `members` (sorted element indices of `g`) as a
/// standalone group, re-indexed in the given order.
pub(crate) fn restrict(g: &FiniteGroup, members: &[usize], name: String) -> Result<FiniteGroup> {
    let n = members.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let mut table = Vec::with_capacity(n * n);
    for &a in members {
        for &b in members {
            let p = pos[g.mul(a, b)];
            if p == usize::MAX {
                return Err(Error::NotSubgroup("set is not closed under multiplication".into()));
            }
            table.push(p as u16);
        }
    }
    let mut out = FiniteGroup::from_flat(name, n, table, Family::Other)?;
    if g.labels.is_some() {
        out.labels = Some(members.iter().map(|&m| g.label(m)).collect());
    }
    Ok(out)
}

/// Table built from cosets: `cosets[k]` lists the elements of coset `k`
/// and multiplication of coset representatives must be well defined.
pub(crate) fn from_cosets(g: &FiniteGroup, coset_of: &[usize], reps: &[usize], name: String) -> Result<FiniteGroup> {
    let n = reps.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in reps {
        for &b in reps {
            table.push(coset_of[g.mul(a, b)] as u16);
        }
    }
    FiniteGroup::from_flat(name, n, table, Family::Other)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
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

/// Invariant factors of an abelian group, computed from the number of
/// elements killed by each prime power.
pub(crate) fn abelian_invariants(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    let mut parts_by_prime: Vec<Vec<usize>> = Vec::new();
    for p in prime_factors(g.order()) {
        // partition of the p-part: number of cyclic factors of order >= p^k
        let mut pk = 1;
        let mut prev = 1usize;
        let mut at_least: Vec<usize> = Vec::new();
        loop {
            pk *= p;
            let killed = orders.iter().filter(|&&o| pk % o == 0).count();
            if killed == prev {
                break;
            }
            let mut ratio = killed / prev;
            let mut count = 0;
            while ratio > 1 {
                ratio /= p;
                count += 1;
            }
            at_least.push(count);
            prev = killed;
        }
        // convert "number of factors of order >= p^k" into factor orders
        let num = at_least.first().copied().unwrap_or(0);
        let mut parts = vec![1usize; num];
        for &cnt in &at_least {
            for part in parts.iter_mut().take(cnt) {
                *part *= p;
            }
        }
        parts_by_prime.push(parts);
    }
    let width = parts_by_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![1usize; width];
    for parts in &parts_by_prime {
        // parts are descending; the largest goes to the last slot
        for (i, &pp) in parts.iter().rev().enumerate() {
            inv[width - parts.len() + i] *= pp;
        }
    }
    inv.retain(|&x| x > 1);
    inv.sort_unstable();
    inv
}

fn describe(g: &FiniteGroup) -> String {
    let n = g.order();
    if n == 1 {
        return "1".into();
    }
    if g.is_abelian() {
        let inv = abelian_invariants(g);
        return inv.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x");
    }
    let orders = g.element_orders();
    if n == 8 && orders.iter().filter(|&&o| o == 2).count() == 1 {
        return "Q8".into();
    }
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    // both are determined among groups of their order by element-order counts
    if n == 12 && count(2) == 3 && count(3) == 8 {
        return "A4".into();
    }
    if n == 24 && count(2) == 9 && count(3) == 8 && count(4) == 6 {
        return "S4".into();
    }
    if n % 2 == 0 {
        let m = n / 2;
        if let Some(r) = (0..n).find(|&a| orders[a] == m) {
            let cyc: Vec<usize> = (0..m).map(|k| g.power(r, k)).collect();
            let rinv = g.inv(r);
            let is_dihedral = (0..n).any(|s| {
                orders[s] == 2 && !cyc.contains(&s) && g.mul(g.mul(s, r), s) == rinv
            });
            if is_dihedral {
                return format!("D{n}");
            }
        }
    }
    format!("[order {n}]")
}
