//! The unit group of the automaton monoid as a product of wreath
//! products, one factor per conjugacy class of subgroups, and the orders
//! of both the group and the monoid.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bigcount::{BigCount, Factor};
use crate::context::GroupData;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice;
use crate::orbits;

/// One wreath factor `(N(H)/H) ≀ S_alpha`.
#[derive(Clone, Debug)]
pub struct IcaFactor {
    pub class_id: usize,
    /// `[G : H]`
    pub index: usize,
    pub quotient: FiniteGroup,
    pub alpha: BigUint,
}

#[derive(Clone, Debug)]
pub struct IcaStructure {
    pub q: u32,
    pub factors: Vec<IcaFactor>,
    pub order: BigCount,
}

impl IcaStructure {
    /// Factors with `alpha = 1` have shape `N(H)/H ≀ S_1`.
    pub fn alpha_one_count(&self) -> usize {
        self.factors.iter().filter(|f| f.alpha == BigUint::from(1u8)).count()
    }
}

pub fn ica_structure(data: &GroupData, q: u32) -> Result<IcaStructure> {
    let alpha = orbits::alpha_all(data, q)?;
    let g = &data.group;
    let lat = data.classes.lattice();
    let mut factors = Vec::with_capacity(alpha.len());
    for (class_id, (cls, a)) in data.classes.classes.iter().zip(alpha).enumerate() {
        let h = lat.get(cls.representative);
        let quotient = lattice::quotient_within(g, &cls.normalizer, h)?;
        factors.push(IcaFactor { class_id, index: cls.index, quotient, alpha: a });
    }
    let order = order_of(&factors, data.limits.max_exact_digits);
    Ok(IcaStructure { q, factors, order })
}

/// `Π |N(H)/H|^alpha * alpha!`
fn order_of(factors: &[IcaFactor], max_digits: u64) -> BigCount {
    let terms = factors
        .iter()
        .flat_map(|f| {
            [
                Factor::Power { base: f.quotient.order() as u64, exponent: f.alpha.clone() },
                Factor::Factorial(f.alpha.clone()),
            ]
        })
        .collect();
    BigCount::from_factors(terms, max_digits)
}

pub fn ica_order(data: &GroupData, q: u32) -> Result<BigCount> {
    Ok(ica_structure(data, q)?.order)
}

/// An equivariant map is fixed freely on orbit representatives, each image
/// being any configuration fixed by the representative's stabilizer `H`.
/// There are `q^[G:H]` of those, so the monoid has `q^(Σ α_[H] [G:H])`
/// elements.
pub fn ca_order(data: &GroupData, q: u32) -> Result<BigCount> {
    let alpha = orbits::alpha_all(data, q)?;
    let exponent = data
        .classes
        .classes
        .iter()
        .zip(&alpha)
        .fold(BigUint::zero(), |acc, (c, a)| acc + a * BigUint::from(c.index));
    Ok(BigCount::from_factors(vec![Factor::Power { base: q as u64, exponent }], data.limits.max_exact_digits))
}
