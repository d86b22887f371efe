//! Direct enumeration of shift-equivariant maps on `A^G`, independent of
//! the lattice machinery. Used to check the structural order formulas.
//!
//! Configurations here are numbered little-endian: point `p` has digit
//! `x(h) = (p / q^h) mod q`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{cap_check, Error, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

/// The shift action tabulated on all points of `A^G`.
#[derive(Clone, Debug)]
pub struct PointAction {
    pub points: usize,
    /// `act[a][p]` is the point `a . p`.
    pub act: Vec<Vec<u32>>,
}

impl PointAction {
    pub fn new(g: &FiniteGroup, q: u32, cap: u64) -> Result<Self> {
        let n = g.order();
        let points = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        cap_check("configuration space q^|G|", points as u128, cap as u128)?;
        let points = points as usize;
        let pow: Vec<usize> = (0..n).map(|h| (q as usize).pow(h as u32)).collect();
        let digit = |p: usize, h: usize| (p / pow[h]) % q as usize;
        let act = (0..n)
            .map(|a| {
                let ainv = g.inv(a);
                (0..points)
                    .map(|p| (0..n).map(|h| digit(p, g.mul(ainv, h)) * pow[h]).sum::<usize>() as u32)
                    .collect()
            })
            .collect();
        Ok(PointAction { points, act })
    }

    fn stabilizer(&self, p: usize) -> Vec<bool> {
        self.act.iter().map(|row| row[p] as usize == p).collect()
    }
}

#[derive(Clone, Debug)]
struct RawOrbit {
    rep: usize,
    points: Vec<usize>,
    stab: Vec<bool>,
}

fn raw_orbits(action: &PointAction) -> Vec<RawOrbit> {
    let mut seen = vec![false; action.points];
    let mut out = Vec::new();
    for p in 0..action.points {
        if seen[p] {
            continue;
        }
        let mut pts: Vec<usize> = action.act.iter().map(|row| row[p] as usize).collect();
        pts.sort_unstable();
        pts.dedup();
        for &x in &pts {
            seen[x] = true;
        }
        out.push(RawOrbit { rep: p, stab: action.stabilizer(p), points: pts });
    }
    out
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

#[derive(Clone, Debug)]
pub struct IcaBruteForce {
    pub count: BigUint,
    /// Every invertible automaton as a permutation of the points, present
    /// when the count is at most the listing cap.
    pub maps: Option<Vec<Vec<u32>>>,
    pub action: PointAction,
}

/// Counts the equivariant bijections of `A^G`.
///
/// Such a map sends each orbit onto an orbit of the same size, and the
/// image `y` of a representative `x` must satisfy `G_x ⊆ G_y`. The count
/// is therefore a permanent per orbit size: rows are source orbits,
/// columns are target orbits, and entry `(i, j)` counts admissible images
/// of `x_i` inside orbit `j`.
pub fn enumerate_ica_bruteforce(g: &FiniteGroup, q: u32, limits: &Limits) -> Result<IcaBruteForce> {
    if q < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    let action = PointAction::new(g, q, limits.max_ica_points)?;
    let orbits = raw_orbits(&action);
    let mut by_size: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, o) in orbits.iter().enumerate() {
        by_size.entry(o.points.len()).or_default().push(i);
    }
    let mut count = BigUint::one();
    for ids in by_size.values() {
        let matrix: Vec<Vec<u64>> = ids
            .iter()
            .map(|&i| {
                ids.iter()
                    .map(|&j| orbits[j].points.iter().filter(|&&y| subset(&orbits[i].stab, &action.stabilizer(y))).count() as u64)
                    .collect()
            })
            .collect();
        count *= permanent(&matrix);
    }
    let maps = match count.to_u64() {
        Some(c) if c <= limits.max_listed_maps => Some(list_maps(&action, &orbits)),
        _ => None,
    };
    if let Some(m) = &maps {
        if BigUint::from(m.len()) != count {
            return Err(Error::Internal(format!("listed {} maps but counted {count}", m.len())));
        }
    }
    Ok(IcaBruteForce { count, maps, action })
}

/// Permanent of a nonnegative matrix by dynamic programming over how many
/// columns of each distinct column type are already used.
pub fn permanent(m: &[Vec<u64>]) -> BigUint {
    let n = m.len();
    if n == 0 {
        return BigUint::one();
    }
    let mut types: Vec<(Vec<u64>, usize)> = Vec::new();
    for j in 0..n {
        let col: Vec<u64> = m.iter().map(|row| row[j]).collect();
        match types.iter_mut().find(|(c, _)| *c == col) {
            Some(t) => t.1 += 1,
            None => types.push((col, 1)),
        }
    }
    let mut states: HashMap<Vec<usize>, BigUint> = HashMap::new();
    states.insert(vec![0; types.len()], BigUint::one());
    for i in 0..n {
        let mut next: HashMap<Vec<usize>, BigUint> = HashMap::new();
        for (used, ways) in &states {
            for (t, (col, cnt)) in types.iter().enumerate() {
                if used[t] == *cnt || col[i] == 0 {
                    continue;
                }
                let mut u = used.clone();
                u[t] += 1;
                let add = ways * BigUint::from(col[i]) * BigUint::from(cnt - used[t]);
                *next.entry(u).or_insert_with(BigUint::zero) += add;
            }
        }
        states = next;
    }
    states.into_values().fold(BigUint::zero(), |a, b| a + b)
}

/// Backtracks over target orbits and admissible representative images.
fn list_maps(action: &PointAction, orbits: &[RawOrbit]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut used = vec![false; orbits.len()];
    let mut tau = vec![u32::MAX; action.points];
    extend_map(action, orbits, 0, &mut used, &mut tau, &mut out);
    out
}

fn extend_map(
    action: &PointAction,
    orbits: &[RawOrbit],
    i: usize,
    used: &mut [bool],
    tau: &mut [u32],
    out: &mut Vec<Vec<u32>>,
) {
    if i == orbits.len() {
        out.push(tau.to_vec());
        return;
    }
    let src = &orbits[i];
    for j in 0..orbits.len() {
        if used[j] || orbits[j].points.len() != src.points.len() {
            continue;
        }
        used[j] = true;
        for &y in &orbits[j].points {
            if !subset(&src.stab, &action.stabilizer(y)) {
                continue;
            }
            // τ(a . x) = a . y is well defined because G_x ⊆ G_y
            for row in &action.act {
                tau[row[src.rep] as usize] = row[y];
            }
            extend_map(action, orbits, i + 1, used, tau, out);
        }
        used[j] = false;
    }
}

#[derive(Clone, Debug)]
pub struct CaBruteForce {
    pub rules: u64,
    pub count: u64,
}

/// Realizes every local rule `μ: A^G -> A` as the global map
/// `τ(x)(h) = μ((h^-1 . x)|_G)` and counts distinct global maps.
pub fn enumerate_ca_bruteforce(g: &FiniteGroup, q: u32, limits: &Limits) -> Result<CaBruteForce> {
    if q < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    let action = PointAction::new(g, q, limits.max_ca_points)?;
    let npts = action.points;
    let rules = (q as u64).checked_pow(npts as u32).unwrap_or(u64::MAX);
    cap_check("local rule count q^(q^|G|)", rules as u128, limits.max_ca_rules as u128)?;
    let n = g.order();
    // pattern[x][h] = point (h^-1 . x), whose restriction to G is read by μ
    let pattern: Vec<Vec<usize>> = (0..npts)
        .map(|x| (0..n).map(|h| action.act[g.inv(h)][x] as usize).collect())
        .collect();
    let pow: Vec<u128> = (0..n).map(|h| (q as u128).pow(h as u32)).collect();
    let npts128 = npts as u128;
    let mut mu = vec![0u32; npts];
    let mut seen: Vec<u128> = Vec::with_capacity(rules as usize);
    for _ in 0..rules {
        let mut key: u128 = 0;
        for pat in pattern.iter().rev() {
            let image: u128 = pat.iter().zip(&pow).map(|(&p, &w)| mu[p] as u128 * w).sum();
            key = key * npts128 + image;
        }
        seen.push(key);
        for d in mu.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    seen.sort_unstable();
    seen.dedup();
    Ok(CaBruteForce { rules, count: seen.len() as u64 })
}

/// Counts maps `A^G -> A^G` that commute with the shift, one orbit at a
/// time: the image of an orbit representative `x` may be any configuration
/// fixed by the stabilizer of `x`, and it determines the map on the orbit.
/// Over a finite group these are exactly the cellular automata, so this
/// counts the monoid without enumerating local rules.
pub fn count_equivariant_maps(g: &FiniteGroup, q: u32, limits: &Limits) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    let action = PointAction::new(g, q, limits.max_ca_points)?;
    let npts = action.points;
    let mut seen = vec![false; npts];
    let mut total = BigUint::one();
    for x in 0..npts {
        if seen[x] {
            continue;
        }
        let mut stab = Vec::new();
        for (a, row) in action.act.iter().enumerate() {
            let y = row[x] as usize;
            seen[y] = true;
            if y == x {
                stab.push(a);
            }
        }
        let fixed = (0..npts).filter(|&y| stab.iter().all(|&a| action.act[a][y] as usize == y)).count();
        total *= BigUint::from(fixed);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product};
    use std::collections::HashSet;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn permanents() {
        assert_eq!(permanent(&[vec![1, 1], vec![1, 1]]), BigUint::from(2u8));
        assert_eq!(permanent(&[vec![1, 2], vec![3, 4]]), BigUint::from(10u8));
        assert_eq!(permanent(&vec![vec![1; 10]; 10]), BigUint::from(3_628_800u32));
        assert_eq!(permanent(&[vec![0, 1], vec![0, 1]]), BigUint::zero());
    }

    #[test]
    fn ica_examples() {
        let r = enumerate_ica_bruteforce(&cyclic(2).unwrap(), 2, &lim()).unwrap();
        assert_eq!(r.count, BigUint::from(4u8));
        assert_eq!(r.maps.as_ref().unwrap().len(), 4);
        let r = enumerate_ica_bruteforce(&cyclic(3).unwrap(), 2, &lim()).unwrap();
        assert_eq!(r.count, BigUint::from(36u8));
        let r = enumerate_ica_bruteforce(&cyclic(1).unwrap(), 4, &lim()).unwrap();
        assert_eq!(r.count, BigUint::from(24u8));
    }

    #[test]
    fn listed_maps_form_an_equivariant_group() {
        let c2 = cyclic(2).unwrap();
        for (g, q) in [(cyclic(4).unwrap(), 2), (direct_product(&c2, &c2).unwrap(), 2), (cyclic(2).unwrap(), 3)] {
            let r = enumerate_ica_bruteforce(&g, q, &lim()).unwrap();
            let maps = r.maps.unwrap();
            let set: HashSet<&Vec<u32>> = maps.iter().collect();
            assert_eq!(set.len(), maps.len());
            let npts = r.action.points;
            for t in &maps {
                for row in &r.action.act {
                    for p in 0..npts {
                        assert_eq!(t[row[p] as usize], row[t[p] as usize]);
                    }
                }
                let mut inv = vec![0u32; npts];
                for p in 0..npts {
                    inv[t[p] as usize] = p as u32;
                }
                assert!(set.contains(&inv));
            }
            // closure under composition, sampled against the first few maps
            for a in maps.iter().take(8) {
                for b in &maps {
                    let c: Vec<u32> = (0..npts).map(|p| a[b[p] as usize]).collect();
                    assert!(set.contains(&c));
                }
            }
        }
    }

    #[test]
    fn big_counts_skip_listing() {
        let r = enumerate_ica_bruteforce(&dihedral(6).unwrap(), 2, &lim()).unwrap();
        assert!(r.maps.is_none());
        assert_eq!(r.count, BigUint::from(6u64.pow(7) * 5040 * 720 * 2 * 2));
    }

    #[test]
    fn ca_examples() {
        assert_eq!(enumerate_ca_bruteforce(&cyclic(1).unwrap(), 2, &lim()).unwrap().count, 4);
        assert_eq!(enumerate_ca_bruteforce(&cyclic(2).unwrap(), 2, &lim()).unwrap().count, 16);
        assert_eq!(enumerate_ca_bruteforce(&cyclic(3).unwrap(), 2, &lim()).unwrap().count, 256);
        assert_eq!(enumerate_ca_bruteforce(&cyclic(2).unwrap(), 3, &lim()).unwrap().count, 19683);
        assert!(matches!(
            enumerate_ca_bruteforce(&cyclic(2).unwrap(), 4, &lim()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn equivariant_count_agrees_with_rule_enumeration() {
        let c2 = cyclic(2).unwrap();
        let groups = [cyclic(1).unwrap(), c2.clone(), cyclic(3).unwrap(), cyclic(4).unwrap(), direct_product(&c2, &c2).unwrap(), dihedral(4).unwrap()];
        let mut compared = 0;
        for g in &groups {
            for q in 2..=8u32 {
                let Ok(bf) = enumerate_ca_bruteforce(g, q, &lim()) else { continue };
                assert_eq!(count_equivariant_maps(g, q, &lim()).unwrap(), BigUint::from(bf.count), "{} q={q}", g.name());
                compared += 1;
            }
        }
        assert!(compared >= 8);
        // beyond the rule cap: C1 over 16 letters has 16^16 self-maps
        let big = count_equivariant_maps(&cyclic(1).unwrap(), 16, &lim()).unwrap();
        assert_eq!(big, BigUint::from(16u64).pow(16));
    }
}
