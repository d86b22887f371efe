//! Upper and lower bounds for the rank of the group of invertible
//! automata, and their combination into best known bounds.

use crate::context::GroupData;
use crate::divisors::divisor_stats;
use crate::error::{Error, Result};
use crate::group::{self, Family, FiniteGroup};
use crate::iso::is_isomorphic;
use crate::limits::Limits;
use crate::rank::{self, ActionTable, RankResult};
use crate::structure::{self, IcaStructure};
use crate::bruteforce;

/// `Rank(S_alpha)`
pub fn symmetric_rank(alpha: usize) -> usize {
    match alpha {
        0 | 1 => 0,
        2 => 1,
        _ => 2,
    }
}

/// The base group of a wreath factor `C ≀ S_alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathBase {
    /// cyclic of order `d`
    Cyclic(usize),
    /// dihedral of the given order `2n`
    Dihedral(usize),
    /// any group of known rank
    General { rank: usize },
}

/// Upper bound for `Rank(C ≀ S_alpha)`.
pub fn wreath_rank_upper(base: WreathBase, alpha: usize) -> usize {
    match base {
        WreathBase::Cyclic(1) => symmetric_rank(alpha),
        WreathBase::Cyclic(_) if alpha >= 2 => 2,
        WreathBase::Cyclic(_) => 1,
        WreathBase::Dihedral(2) => wreath_rank_upper(WreathBase::Cyclic(2), alpha),
        WreathBase::Dihedral(_) if alpha >= 2 => 3,
        WreathBase::Dihedral(_) => 2,
        WreathBase::General { rank } => rank + symmetric_rank(alpha),
    }
}

/// Upper bound for dihedral groups `D_2n`, `n >= 3`, exactly as stated
/// in the closed form. For even `n` and `q = 2` this value undercounts;
/// see [`dihedral_termwise`].
pub fn dihedral_upper(n: u64, q: u32) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument("the dihedral upper bound needs n >= 3".into()));
    }
    let two_n = divisor_stats(2 * n);
    let base = 2 * two_n.d_minus + 3 * two_n.d_plus;
    let dn = divisor_stats(n).d_plus;
    let v = match (n % 2 == 0, q == 2) {
        (false, true) => base - 3,
        (false, false) => base - 1,
        (true, true) => base + 2 * dn - 3,
        (true, false) => base + 4 * dn - 1,
    };
    Ok(v as usize)
}

/// Lower bound for dihedral groups `D_2n`, `n >= 1`.
pub fn dihedral_lower(n: u64, q: u32) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("the dihedral lower bound needs n >= 1".into()));
    }
    let two_n = divisor_stats(2 * n);
    let base = two_n.d_minus + 2 * two_n.d_plus;
    let dn = divisor_stats(n).d_plus;
    let v = match (n % 2 == 0, q == 2) {
        (false, false) => base,
        (false, true) => base - 1,
        (true, false) => base + 4 * dn,
        (true, true) => base + 2 * dn - 1,
    };
    Ok(v as usize)
}

/// Classifies a quotient `N(H)/H` as cyclic, dihedral or general.
pub fn wreath_base_of(quotient: &FiniteGroup, limits: &Limits) -> Result<WreathBase> {
    let n = quotient.order();
    if quotient.is_cyclic() {
        return Ok(WreathBase::Cyclic(n));
    }
    if n % 2 == 0 && n >= 4 && is_isomorphic(quotient, &group::dihedral(n)?) {
        return Ok(WreathBase::Dihedral(n));
    }
    Ok(WreathBase::General { rank: rank::group_rank_bruteforce(quotient, limits)? })
}

/// `Σ_i` of the wreath bound for each factor of the structure.
pub fn termwise_upper(structure: &IcaStructure, limits: &Limits) -> Result<usize> {
    let mut total = 0;
    for f in &structure.factors {
        let alpha = f.alpha.to_u64_digits().first().copied().unwrap_or(0);
        let alpha = if f.alpha.bits() > 64 { u64::MAX } else { alpha };
        total += wreath_rank_upper(wreath_base_of(&f.quotient, limits)?, alpha.min(usize::MAX as u64) as usize);
    }
    Ok(total)
}

/// Per-factor re-derivation of the dihedral bound. It matches
/// [`dihedral_upper`] except for even `n` at `q = 2`, where each even
/// divisor `m >= 4` of `n` contributes two non-normal classes of index `m`
/// whose orbit counts exceed 1, adding `2 (d_+(n) - 1)` in total.
pub fn dihedral_termwise(n: u64, q: u32, limits: &Limits) -> Result<usize> {
    let data = GroupData::new(group::dihedral(2 * n as usize)?, limits)?;
    termwise_upper(&structure::ica_structure(&data, q)?, limits)
}

/// Requires every subgroup to be normal. `rank_g` is `Rank(G)`.
pub fn dedekind_ica_upper(data: &GroupData, q: u32, rank_g: usize) -> Result<usize> {
    if !data.is_dedekind() {
        return Err(Error::NotDedekind);
    }
    let (r, rp, r2) = (data.r(), data.r_prime_sum(), data.r_index(2));
    let base = (r - rp - 1) * rank_g + 2 * r;
    Ok(if q == 2 { base - r2 - 1 } else { base })
}

/// Bound for the whole automaton monoid of a Dedekind group: the unit
/// group bound plus the relative rank bound `C(r,2) + r - r_2`.
pub fn dedekind_ca_upper(data: &GroupData, q: u32, rank_g: usize) -> Result<usize> {
    if !data.is_dedekind() {
        return Err(Error::NotDedekind);
    }
    let (r, rp, r2) = (data.r(), data.r_prime_sum(), data.r_index(2));
    let base = (r - rp - 1) * rank_g + r * (r + 5) / 2;
    Ok(if q == 2 { base - 2 * r2 - 1 } else { base })
}

/// Bound in terms of the group length.
pub fn general_upper(data: &GroupData, q: u32) -> usize {
    let (r, rp, r2) = (data.r(), data.r_prime_sum(), data.r_index(2));
    let base = (r - rp - 1) * data.length + 2 * r;
    if q == 2 {
        base - r2 - 1
    } else {
        base
    }
}

/// Bound for a group with a faithful permutation representation of degree `degree > 3`.
pub fn mciver_neumann_upper(data: &GroupData, q: u32, degree: usize) -> Result<usize> {
    if degree <= 3 {
        return Err(Error::InvalidArgument(format!("permutation degree {degree} must exceed 3")));
    }
    let (r, r2) = (data.r(), data.r_index(2));
    let base = (r - 1) * (degree / 2) + 2 * r;
    Ok(if q == 2 { base - r2 - 1 } else { base })
}

/// `r - r_2` for `q = 2`, `r` otherwise.
pub fn ica_lower(data: &GroupData, q: u32) -> usize {
    if q == 2 {
        data.r() - data.r_index(2)
    } else {
        data.r()
    }
}

/// The closed form `ceil(3n/2) - b(n) - 1` for the length of `S_n`.
pub fn symmetric_length(n: usize) -> usize {
    let b = n.count_ones() as usize;
    (3 * n).div_ceil(2) - b - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub side: Side,
    pub method: &'static str,
    pub value: usize,
    /// Whether this entry is admissible for the best bound.
    pub admissible: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: usize,
    pub method: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBounds {
    pub lower: BoundValue,
    pub upper: BoundValue,
    pub exact: Option<usize>,
    pub all: Vec<BoundEntry>,
}

fn entry(side: Side, method: &'static str, value: usize) -> BoundEntry {
    BoundEntry { side, method, value, admissible: true, note: None }
}

/// Collects every applicable bound. Dihedral formulas apply to groups
/// built as dihedral, so `C2` is not treated as `D2`.
pub fn all_bounds(data: &GroupData, q: u32) -> Result<Vec<BoundEntry>> {
    let mut out = vec![entry(Side::Lower, "class-count", ica_lower(data, q))];
    if let Family::Dihedral(order) = *data.group.family() {
        let n = (order / 2) as u64;
        out.push(entry(Side::Lower, "dihedral", dihedral_lower(n, q)?));
        if n >= 3 {
            let formula = dihedral_upper(n, q)?;
            if n % 2 == 0 && q == 2 {
                let mut e = entry(Side::Upper, "dihedral", formula);
                e.admissible = false;
                e.note = Some("closed form undercounts the non-normal classes of index m >= 4; superseded by dihedral-termwise".into());
                out.push(e);
                let s = structure::ica_structure(data, q)?;
                out.push(entry(Side::Upper, "dihedral-termwise", termwise_upper(&s, &data.limits)?));
            } else {
                out.push(entry(Side::Upper, "dihedral", formula));
            }
        }
    }
    if data.is_dedekind() {
        match rank::group_rank_bruteforce(&data.group, &data.limits) {
            Ok(rg) => out.push(entry(Side::Upper, "dedekind", dedekind_ica_upper(data, q, rg)?)),
            Err(Error::Timeout) => {}
            Err(e) => return Err(e),
        }
    }
    out.push(entry(Side::Upper, "length", general_upper(data, q)));
    if let Some(deg) = data.group.perm_degree().filter(|&d| d > 3) {
        out.push(entry(Side::Upper, "mciver-neumann-native", mciver_neumann_upper(data, q, deg)?));
    }
    if data.order() > 3 {
        out.push(entry(Side::Upper, "mciver-neumann-regular", mciver_neumann_upper(data, q, data.order())?));
    }
    Ok(out)
}

/// Largest admissible lower bound and smallest admissible upper bound.
/// Ties keep the first method listed.
pub fn best_bounds(data: &GroupData, q: u32, exact: Option<usize>) -> Result<RankBounds> {
    let all = all_bounds(data, q)?;
    let pick = |side: Side, better: fn(usize, usize) -> bool| {
        all.iter()
            .filter(|e| e.side == side && e.admissible)
            .fold(None::<&BoundEntry>, |best, e| match best {
                Some(b) if !better(e.value, b.value) => Some(b),
                _ => Some(e),
            })
            .map(|e| BoundValue { value: e.value, method: e.method })
            .expect("a bound of each side always applies")
    };
    let lower = pick(Side::Lower, |a, b| a > b);
    let upper = pick(Side::Upper, |a, b| a < b);
    if let Some(x) = exact {
        if x < lower.value || x > upper.value {
            return Err(Error::Internal(format!(
                "exact rank {x} outside bounds [{}, {}]",
                lower.value, upper.value
            )));
        }
    }
    Ok(RankBounds { lower, upper, exact, all })
}

/// Exact rank search on the explicitly enumerated unit group, when its
/// order is within the oracle cap.
pub fn ica_rank_oracle(data: &GroupData, q: u32) -> Result<Option<RankResult>> {
    let order = structure::ica_order(data, q)?;
    match order.to_u64() {
        Some(o) if o <= data.limits.max_oracle_order as u64 => {}
        _ => return Ok(None),
    }
    let limits = Limits { max_listed_maps: data.limits.max_oracle_order as u64, ..data.limits.clone() };
    let bf = bruteforce::enumerate_ica_bruteforce(&data.group, q, &limits)?;
    let maps = bf.maps.ok_or_else(|| Error::Internal("unit group not listed".into()))?;
    let table = ActionTable::from_maps(&maps)?;
    Ok(Some(rank::rank_exact(&table, &data.limits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, quaternion, symmetric};

    fn data(g: FiniteGroup) -> GroupData {
        GroupData::new(g, &Limits::default()).unwrap()
    }

    #[test]
    fn wreath_values() {
        assert_eq!(wreath_rank_upper(WreathBase::Cyclic(2), 2), 2);
        assert_eq!(wreath_rank_upper(WreathBase::Dihedral(6), 2), 3);
        assert_eq!(wreath_rank_upper(WreathBase::General { rank: 2 }, 1), 2);
        assert_eq!(wreath_rank_upper(WreathBase::Cyclic(1), 5), 2);
        assert_eq!(wreath_rank_upper(WreathBase::Cyclic(2), 1), 1);
    }

    #[test]
    fn dihedral_formulas() {
        assert_eq!(dihedral_upper(3, 2).unwrap(), 7);
        assert_eq!(dihedral_upper(3, 3).unwrap(), 9);
        assert_eq!(dihedral_upper(4, 2).unwrap(), 12);
        assert_eq!(dihedral_upper(4, 3).unwrap(), 18);
        assert!(dihedral_upper(2, 2).is_err());
        assert_eq!(dihedral_lower(3, 2).unwrap(), 5);
        assert_eq!(dihedral_lower(4, 3).unwrap(), 15);
        assert_eq!(dihedral_lower(4, 2).unwrap(), 10);
    }

    #[test]
    fn dedekind_values() {
        let q8 = data(quaternion().unwrap());
        assert_eq!(dedekind_ica_upper(&q8, 2, 2).unwrap(), 12);
        assert_eq!(dedekind_ica_upper(&q8, 3, 2).unwrap(), 16);
        assert_eq!(dedekind_ca_upper(&q8, 3, 2).unwrap(), 37);
        assert_eq!(dedekind_ca_upper(&q8, 2, 2).unwrap(), 30);
        let c4 = data(cyclic(4).unwrap());
        assert_eq!(dedekind_ica_upper(&c4, 2, 1).unwrap(), 5);
        let c2 = data(cyclic(2).unwrap());
        assert_eq!(dedekind_ca_upper(&c2, 2, 1).unwrap(), 4);
        let s4 = data(symmetric(4).unwrap());
        assert_eq!(dedekind_ica_upper(&s4, 2, 2), Err(Error::NotDedekind));
    }

    #[test]
    fn general_and_permutation_values() {
        let s4 = data(symmetric(4).unwrap());
        assert_eq!(general_upper(&s4, 2), 52);
        assert_eq!(mciver_neumann_upper(&s4, 2, 4).unwrap(), 40);
        assert_eq!(mciver_neumann_upper(&s4, 3, 4).unwrap(), 42);
        assert_eq!(general_upper(&data(cyclic(2).unwrap()), 2), 2);
        let q8 = data(quaternion().unwrap());
        assert_eq!(general_upper(&q8, 3), 18);
        assert_eq!(mciver_neumann_upper(&q8, 2, 8).unwrap(), 28);
        assert!(mciver_neumann_upper(&q8, 2, 3).is_err());
    }

    #[test]
    fn lower_values() {
        assert_eq!(ica_lower(&data(symmetric(4).unwrap()), 3), 11);
        assert_eq!(ica_lower(&data(cyclic(2).unwrap()), 2), 1);
        assert_eq!(ica_lower(&data(dihedral(8).unwrap()), 2), 5);
    }

    #[test]
    fn symmetric_lengths() {
        for n in 1..=5 {
            assert_eq!(data(symmetric(n).unwrap()).length, symmetric_length(n), "S{n}");
        }
    }

    #[test]
    fn best_bound_examples() {
        let d6 = best_bounds(&data(dihedral(6).unwrap()), 2, None).unwrap();
        assert_eq!((d6.lower.value, d6.upper.value), (5, 7));
        let q8 = best_bounds(&data(quaternion().unwrap()), 3, None).unwrap();
        assert_eq!((q8.lower.value, q8.upper.value, q8.upper.method), (6, 16, "dedekind"));
        let c2 = data(cyclic(2).unwrap());
        let exact = ica_rank_oracle(&c2, 2).unwrap().unwrap().exact();
        let b = best_bounds(&c2, 2, exact).unwrap();
        assert_eq!((b.lower.value, b.upper.value, b.exact), (1, 2, Some(2)));
    }

    #[test]
    fn dihedral_even_q2_formula_undercounts() {
        let lim = Limits::default();
        let d8 = data(dihedral(8).unwrap());
        let r = ica_rank_oracle(&d8, 2).unwrap();
        assert!(r.is_none(), "unit group of D8 is far above the oracle cap");
        // the unit group surjects onto an elementary abelian group of rank 14
        assert_eq!(dihedral_termwise(4, 2, &lim).unwrap(), 14);
        assert_eq!(dihedral_upper(4, 2).unwrap(), 12);
        // C ≀ S_alpha has abelianization C^ab x C2 once alpha >= 2; all factors are 2-groups
        let s = structure::ica_structure(&d8, 2).unwrap();
        let ab_rank: usize = s
            .factors
            .iter()
            .map(|f| {
                let qr = rank::rank_exact(&ActionTable::from_group(&f.quotient), &lim).unwrap();
                qr.abelian_rank.unwrap() + usize::from(f.alpha > 1u8.into())
            })
            .sum();
        assert_eq!(ab_rank, 14);
        let b = best_bounds(&d8, 2, None).unwrap();
        assert_eq!(b.upper.method, "dihedral-termwise");
        assert_eq!(b.upper.value, 14);
    }

    #[test]
    fn termwise_reproduces_dihedral_closed_forms() {
        let lim = Limits::default();
        for n in 3..=12u64 {
            for q in [2, 3] {
                let t = dihedral_termwise(n, q, &lim).unwrap();
                let f = dihedral_upper(n, q).unwrap();
                if n % 2 == 0 && q == 2 {
                    let extra = 2 * (divisor_stats(n).d_plus as usize - 1);
                    assert_eq!(t, f + extra, "n={n} q={q}");
                } else {
                    assert_eq!(t, f, "n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn monotone_refinement() {
        let c2 = cyclic(2).unwrap();
        for g in [cyclic(6).unwrap(), quaternion().unwrap(), direct_product(&c2, &c2).unwrap(), symmetric(4).unwrap(), dihedral(10).unwrap()] {
            let d = data(g);
            for q in [2, 3] {
                let b = best_bounds(&d, q, None).unwrap();
                assert!(b.upper.value <= general_upper(&d, q));
                assert!(b.lower.value <= b.upper.value);
                if d.is_dedekind() {
                    let rg = rank::group_rank_bruteforce(&d.group, &d.limits).unwrap();
                    assert!(b.upper.value <= dedekind_ica_upper(&d, q, rg).unwrap());
                }
            }
        }
    }
}
