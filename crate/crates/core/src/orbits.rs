//! The shift action of a finite group on configurations `A^G`: orbits,
//! stabilizers and the per-class orbit counts.
//!
//! A configuration `x: G -> A` is a vector over `{0, .., q-1}` indexed by
//! group element. Its code is the radix-`q` number with `x(0)` as the most
//! significant digit, so the lexicographically least configuration of an
//! orbit has the smallest code.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::context::GroupData;
use crate::error::{cap_check, Error, Result};
use crate::group::FiniteGroup;
use crate::subgroup::{ElemSet, Subgroup};

pub type Configuration = Vec<u32>;

/// `(g . x)(h) = x(g^-1 h)`
pub fn shift(g: &FiniteGroup, a: usize, x: &[u32]) -> Result<Configuration> {
    if x.len() != g.order() {
        return Err(Error::InvalidArgument(format!(
            "configuration has length {}, group has order {}",
            x.len(),
            g.order()
        )));
    }
    let ainv = g.inv(a);
    Ok((0..g.order()).map(|h| x[g.mul(ainv, h)]).collect())
}

/// `G_x = { g : g . x = x }`
pub fn stabilizer(g: &FiniteGroup, x: &[u32]) -> Result<Subgroup> {
    if x.len() != g.order() {
        return Err(Error::InvalidArgument("configuration length differs from group order".into()));
    }
    let members = (0..g.order()).filter(|&a| {
        let ainv = g.inv(a);
        (0..g.order()).all(|h| x[g.mul(ainv, h)] == x[h])
    });
    Subgroup::from_members(g, ElemSet::from_iter(g.order(), members))
}

pub fn encode(x: &[u32], q: u32) -> u64 {
    x.iter().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

pub fn decode(code: u64, n: usize, q: u32) -> Configuration {
    let mut x = vec![0; n];
    let mut c = code;
    for slot in x.iter_mut().rev() {
        *slot = (c % q as u64) as u32;
        c /= q as u64;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Code of the lexicographically least configuration in the orbit.
    pub code: u64,
    pub size: usize,
    /// Lattice index of the representative's stabilizer.
    pub stabilizer: usize,
    pub class_id: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub group_order: usize,
    pub q: u32,
    /// Sorted by representative code.
    pub orbits: Vec<Orbit>,
    /// Orbit count per subgroup class.
    pub alpha: Vec<u64>,
}

impl OrbitDecomposition {
    pub fn representative(&self, orbit: &Orbit) -> Configuration {
        decode(orbit.code, self.group_order, self.q)
    }
}

fn state_count(n: usize, q: u32) -> Option<u64> {
    (q as u64).checked_pow(n as u32)
}

/// Scans all `q^|G|` configurations in code order with a visited bitmap.
/// The first unvisited code of each orbit is its least element.
pub fn enumerate_orbits(data: &GroupData, q: u32) -> Result<OrbitDecomposition> {
    if q < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    let g = &data.group;
    let n = g.order();
    let total = state_count(n, q).map_or(u128::MAX, u128::from);
    cap_check("configuration space q^|G|", total, data.limits.max_states as u128)?;
    let total = total as u64;

    // position of digit h in the code, and the preimage table (g^-1 h)
    let weights: Vec<u64> = (0..n).map(|h| (q as u64).pow((n - 1 - h) as u32)).collect();
    let pre: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|h| g.mul(g.inv(a), h)).collect()).collect();

    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut orbits = Vec::new();
    let mut alpha = vec![0u64; data.classes.classes.len()];
    let mut digits = vec![0u32; n];
    let mut images = Vec::with_capacity(n);
    for code in 0..total {
        if visited[(code / 64) as usize] >> (code % 64) & 1 == 1 {
            continue;
        }
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = (c % q as u64) as u32;
            c /= q as u64;
        }
        images.clear();
        let mut stab = ElemSet::new(n);
        for (a, pa) in pre.iter().enumerate() {
            let img: u64 = (0..n).map(|h| digits[pa[h]] as u64 * weights[h]).sum();
            if img == code {
                stab.insert(a);
            }
            visited[(img / 64) as usize] |= 1 << (img % 64);
            images.push(img);
        }
        let stab_order = stab.len();
        let stabilizer = data
            .classes
            .lattice()
            .index_of(&stab)
            .ok_or_else(|| Error::Internal("stabilizer missing from the subgroup lattice".into()))?;
        let class_id = data.classes.class_of[stabilizer];
        alpha[class_id] += 1;
        orbits.push(Orbit { code, size: n / stab_order, stabilizer, class_id });
    }
    Ok(OrbitDecomposition { group_order: n, q, orbits, alpha })
}

/// `θ(H) = Σ_{K ≥ H} μ(H, K) q^[G:K]` counts configurations whose
/// stabilizer is exactly `H`; each orbit of class `[H]` holds `[N(H):H]` of them.
pub fn alpha_mobius(data: &GroupData, q: u32, class_id: usize) -> Result<BigUint> {
    let cls = data
        .classes
        .classes
        .get(class_id)
        .ok_or_else(|| Error::InvalidArgument(format!("no subgroup class {class_id}")))?;
    let lattice = data.classes.lattice();
    let h = cls.representative;
    let n = data.order();
    let mut theta = BigInt::zero();
    for &(k, mu) in data.mobius.row(h) {
        let index = n / lattice.get(k).order();
        theta += BigInt::from(mu) * BigInt::from(q).pow(index as u32);
    }
    let weight = BigInt::from(cls.normalizer.order() / lattice.get(h).order());
    let (quo, rem) = theta.div_rem(&weight);
    if !rem.is_zero() || quo.sign() == Sign::Minus {
        return Err(Error::Internal(format!(
            "θ = {theta} is not a nonnegative multiple of [N(H):H] = {weight} for class {class_id}"
        )));
    }
    Ok(quo.to_biguint().expect("nonnegative"))
}

/// `α` for every class, in class order.
pub fn alpha_all(data: &GroupData, q: u32) -> Result<Vec<BigUint>> {
    if q < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    (0..data.classes.classes.len()).map(|c| alpha_mobius(data, q, c)).collect()
}

/// Burnside: `(1/|G|) Σ_g q^(#cycles of left multiplication by g)`, where
/// left multiplication by `g` has `|G| / ord(g)` cycles.
pub fn burnside_count(g: &FiniteGroup, q: u32) -> BigUint {
    let n = g.order();
    let sum: BigUint = g
        .element_orders()
        .into_iter()
        .map(|o| BigUint::from(q).pow((n / o) as u32))
        .sum();
    let (quo, rem) = sum.div_rem(&BigUint::from(n));
    debug_assert!(rem.is_zero());
    quo
}

/// Number of configurations fixed by every element of `h`, by enumeration.
pub fn fixed_count(g: &FiniteGroup, h: &Subgroup, q: u32) -> Result<u64> {
    let total = state_count(g.order(), q).filter(|&t| t <= 1 << 20).ok_or(Error::CapExceeded {
        what: "configuration space q^|G|",
        value: (q as u128).saturating_pow(g.order() as u32),
        cap: 1 << 20,
    })?;
    let elems = h.elements();
    let mut count = 0;
    for code in 0..total {
        let x = decode(code, g.order(), q);
        if elems.iter().all(|&a| (0..g.order()).all(|t| x[g.mul(g.inv(a), t)] == x[t])) {
            count += 1;
        }
    }
    Ok(count)
}

/// Convenience conversion for small alpha tables.
pub fn alpha_u64(alpha: &[BigUint]) -> Option<Vec<u64>> {
    alpha.iter().map(ToPrimitive::to_u64).collect()
}

/// `Σ α` as an integer, for comparison against the Burnside count.
pub fn alpha_total(alpha: &[BigUint]) -> BigUint {
    alpha.iter().fold(BigUint::zero(), |acc, a| acc + a)
}

/// `q^k` as a big integer.
pub fn big_pow(q: u32, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    BigUint::from(q).pow(k as u32)
}
