//! A group bundled with the lattice data every downstream computation needs.

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::{self, MobiusTable, SubgroupClassTable};
use crate::limits::Limits;

/// Immutable after construction; safe to share across threads.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: FiniteGroup,
    pub classes: SubgroupClassTable,
    pub mobius: MobiusTable,
    pub length: usize,
    pub limits: Limits,
}

impl GroupData {
    pub fn new(group: FiniteGroup, limits: &Limits) -> Result<Self> {
        let classes = lattice::conjugacy_classes(&group, limits)?;
        let mobius = lattice::mobius_table(classes.lattice());
        let length = lattice::group_length(classes.lattice());
        Ok(GroupData { group, classes, mobius, length, limits: limits.clone() })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn r(&self) -> usize {
        self.classes.r
    }

    pub fn r_index(&self, i: usize) -> usize {
        self.classes.r_index(i)
    }

    /// `r_P`: classes whose index is a prime dividing `|G|`.
    pub fn r_prime_sum(&self) -> usize {
        self.classes.r_prime_sum(self.order())
    }

    pub fn is_dedekind(&self) -> bool {
        lattice::is_dedekind(&self.classes)
    }
}
