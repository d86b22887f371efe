//! Lower-bound sequences for automaton monoids over infinite groups,
//! obtained from finite quotients. A quotient map `G -> G/N` induces an
//! epimorphism of automaton monoids, so every bound for a finite quotient
//! bounds the rank over `G` from below.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::bounds;
use crate::context::GroupData;
use crate::divisors::divisor_stats;
use crate::error::{Error, Result};
use crate::group;
use crate::limits::Limits;

pub const MAX_STAGES: usize = 12;
pub const MAX_FREE_RANK: usize = 4;
pub const MAX_FREE_ABELIAN_RANK: usize = 4;
pub const MAX_TORSION_PRODUCT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// the integers
    Z,
    /// `Z^s ⊕ Z_t1 ⊕ ... ⊕ Z_tm`
    FreeAbelianTimesFinite { s: usize, torsion: Vec<usize> },
    DInfinity,
    Free { rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub q: u32,
}

impl FamilyDescriptor {
    pub fn new(kind: FamilyKind, q: u32) -> Result<Self> {
        let d = FamilyDescriptor { kind, q };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.q < 2 {
            return bad("alphabet size must be at least 2".into());
        }
        match &self.kind {
            FamilyKind::Z | FamilyKind::DInfinity => Ok(()),
            FamilyKind::FreeAbelianTimesFinite { s, torsion } => {
                if *s == 0 || *s > MAX_FREE_ABELIAN_RANK {
                    return bad(format!("free abelian rank must be in 1..={MAX_FREE_ABELIAN_RANK}"));
                }
                if torsion.iter().any(|&t| t < 2) {
                    return bad("torsion orders must be at least 2".into());
                }
                let prod = torsion.iter().try_fold(1usize, |a, &t| a.checked_mul(t)).unwrap_or(usize::MAX);
                if prod > MAX_TORSION_PRODUCT {
                    return bad(format!("torsion product must be at most {MAX_TORSION_PRODUCT}"));
                }
                Ok(())
            }
            FamilyKind::Free { rank } => {
                if *rank == 0 || *rank > MAX_FREE_RANK {
                    return bad(format!("free rank must be in 1..={MAX_FREE_RANK}"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Z => write!(f, "Z"),
            FamilyKind::FreeAbelianTimesFinite { s, torsion } => {
                if *s == 1 {
                    write!(f, "Z")?;
                } else {
                    write!(f, "Z^{s}")?;
                }
                for t in torsion {
                    write!(f, "xC{t}")?;
                }
                Ok(())
            }
            FamilyKind::DInfinity => write!(f, "Dinf"),
            FamilyKind::Free { rank } => write!(f, "F{rank}"),
        }
    }
}

/// Accepts `Z`, `Z^s`, `Z^2xC4xC9`, `Dinf` and `F<rank>`, case-insensitively.
impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        let number = |t: &str| t.parse::<usize>().map_err(|_| fail("expected a positive integer"));
        if matches!(text.as_str(), "dinf" | "dinfinity" | "d_inf" | "d_infinity") {
            return Ok(FamilyKind::DInfinity);
        }
        if let Some(rank) = text.strip_prefix('f') {
            return Ok(FamilyKind::Free { rank: number(rank)? });
        }
        let mut parts = text.split('x');
        let head = parts.next().unwrap_or_default();
        let s = match head.strip_prefix('z') {
            Some("") => 1,
            Some(rest) => number(rest.strip_prefix('^').ok_or_else(|| fail("expected `Z^s`"))?)?,
            None => return Err(fail("expected `Z`, `Z^s`, `Dinf` or `F<rank>`")),
        };
        let torsion = parts
            .map(|p| p.strip_prefix('c').ok_or_else(|| fail("torsion factors are written `C<n>`")).and_then(number))
            .collect::<Result<Vec<_>>>()?;
        if s == 1 && torsion.is_empty() {
            Ok(FamilyKind::Z)
        } else {
            Ok(FamilyKind::FreeAbelianTimesFinite { s, torsion })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceStage {
    pub k: usize,
    /// Spec string of the finite quotient, e.g. `C8` or `D16`.
    pub quotient: String,
    pub r: usize,
    pub r_2: usize,
    pub lower_bound: usize,
    /// Quotient chain used to reach the finite group.
    pub justification: String,
    /// `false` when the quotient exceeds the lattice cap and `r`, `r_2`
    /// come from their closed forms.
    pub from_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivergenceReport {
    pub family: FamilyDescriptor,
    pub stages: Vec<DivergenceStage>,
}

impl DivergenceReport {
    pub fn lower_bounds(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.lower_bound).collect()
    }
}

fn chain(kind: &FamilyKind, k: usize) -> String {
    let m = 1usize << k;
    match kind {
        FamilyKind::Z => format!("Z -> Z/<{m}> = C{m}"),
        FamilyKind::FreeAbelianTimesFinite { s, torsion } => {
            let mut n = format!("<{m}>");
            if *s > 1 {
                n.push_str(&format!(" + Z^{}", s - 1));
            }
            for t in torsion {
                n.push_str(&format!(" + C{t}"));
            }
            format!("{kind} -> {kind}/({n}) = C{m}")
        }
        FamilyKind::Free { rank } => format!("F{rank} -> Z^{rank} (abelianization) -> C{m}"),
        FamilyKind::DInfinity => {
            let n = m / 2;
            format!("Dinf -> Dinf/<(xy)^{n}> = D{m}")
        }
    }
}

/// Per stage `k`, the class-count lower bound on the unit group of the
/// automata over `C_{2^k}` (or `D_{2^k}` for the infinite dihedral group).
pub fn divergence(family: &FamilyDescriptor, k_max: usize, limits: &Limits) -> Result<DivergenceReport> {
    family.validate()?;
    if k_max == 0 || k_max > MAX_STAGES {
        return Err(Error::InvalidArgument(format!("stage count must be in 1..={MAX_STAGES}")));
    }
    let q = family.q;
    let mut stages = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let m = 1usize << k;
        let dihedral = family.kind == FamilyKind::DInfinity;
        let (g, quotient) = if dihedral {
            (group::dihedral(m), format!("D{m}"))
        } else {
            (group::cyclic(m), format!("C{m}"))
        };
        let (r, r_2, lower, from_lattice) = if m <= limits.max_lattice_order {
            let data = GroupData::new(g?, limits)?;
            (data.r(), data.r_index(2), bounds::ica_lower(&data, q), true)
        } else {
            let (r, r_2) = if dihedral { dihedral_class_counts(m / 2) } else { (k + 1, 1) };
            (r, r_2, if q == 2 { r - r_2 } else { r }, false)
        };
        stages.push(DivergenceStage {
            k,
            quotient,
            r,
            r_2,
            lower_bound: lower,
            justification: chain(&family.kind, k),
            from_lattice,
        });
    }
    Ok(DivergenceReport { family: family.clone(), stages })
}

/// `(r, r_2)` of `D_2n` from divisor counts.
pub fn dihedral_class_counts(n: usize) -> (usize, usize) {
    let d2n = divisor_stats(2 * n as u64).d as usize;
    if n % 2 == 1 {
        (d2n, 1)
    } else {
        (d2n + 2 * divisor_stats(n as u64).d_plus as usize, 3)
    }
}

/// Group containing finitely many memory sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `(Q, +)`
    Rationals,
    /// `⊕_{i ∈ N} Z_2`
    ElementaryAbelianInfinite,
    FinitelyGenerated { description: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientElement {
    /// `numerator / denominator`
    Rational(i64, u64),
    /// the coordinates equal to 1
    Support(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonFgVerdict {
    /// The memory sets generate only the identity.
    IdentitySubgroup,
    /// They generate a proper subgroup; `witness` lies outside it.
    ProperSubgroup { witness: String },
    Inapplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFgExplanation {
    pub verdict: NonFgVerdict,
    pub explanation: String,
}

/// Memory sets of finitely many automata generate a finitely generated
/// subgroup `K`; compositions have memory sets inside `K`. In a group that
/// is not finitely generated `K` is proper, and an automaton whose minimal
/// memory set meets the complement of `K` is never reached.
pub fn remark_nonfg_check(ambient: &Ambient, memory_sets: &[Vec<AmbientElement>]) -> NonFgExplanation {
    let inapplicable = |reason: String| NonFgExplanation {
        explanation: format!("no conclusion: {reason}"),
        verdict: NonFgVerdict::Inapplicable { reason },
    };
    let elements: Vec<&AmbientElement> = memory_sets.iter().flatten().collect();
    let generators = elements.len();
    match ambient {
        Ambient::FinitelyGenerated { description } => {
            inapplicable(format!("{description} is finitely generated, so the argument does not apply"))
        }
        Ambient::Rationals => {
            let mut lcm = 1u64;
            let mut nontrivial = false;
            for e in elements {
                match e {
                    AmbientElement::Rational(_, 0) => return inapplicable("zero denominator".into()),
                    AmbientElement::Rational(num, den) => {
                        if *num != 0 {
                            nontrivial = true;
                            lcm = lcm.lcm(den);
                        }
                    }
                    AmbientElement::Support(_) => return inapplicable("coordinate vector given for Q".into()),
                }
            }
            if !nontrivial {
                return identity(generators);
            }
            let witness = format!("1/{}", 2 * lcm);
            NonFgExplanation {
                explanation: format!(
                    "{generators} memory-set elements lie in (1/{lcm})Z, which is closed under the sums that \
                     memory sets of compositions produce; {witness} is outside it"
                ),
                verdict: NonFgVerdict::ProperSubgroup { witness },
            }
        }
        Ambient::ElementaryAbelianInfinite => {
            let mut max = None::<usize>;
            for e in elements {
                match e {
                    AmbientElement::Support(s) => {
                        if let Some(&m) = s.iter().max() {
                            max = Some(max.map_or(m, |x| x.max(m)));
                        }
                    }
                    AmbientElement::Rational(..) => return inapplicable("fraction given for a coordinate group".into()),
                }
            }
            let Some(max) = max else {
                return identity(generators);
            };
            let witness = format!("e_{}", max + 1);
            NonFgExplanation {
                explanation: format!(
                    "{generators} memory-set elements are supported on coordinates 0..={max}, and so is \
                     every product of them; {witness} is outside"
                ),
                verdict: NonFgVerdict::ProperSubgroup { witness },
            }
        }
    }
}

fn identity(generators: usize) -> NonFgExplanation {
    NonFgExplanation {
        verdict: NonFgVerdict::IdentitySubgroup,
        explanation: format!("{generators} memory-set elements generate only the identity"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(kind: FamilyKind, q: u32) -> FamilyDescriptor {
        FamilyDescriptor::new(kind, q).unwrap()
    }

    #[test]
    fn family_grammar() {
        let p = |s: &str| s.parse::<FamilyKind>();
        assert_eq!(p("Z").unwrap(), FamilyKind::Z);
        assert_eq!(p("z^1").unwrap(), FamilyKind::Z);
        assert_eq!(p("Dinf").unwrap(), FamilyKind::DInfinity);
        assert_eq!(p("F2").unwrap(), FamilyKind::Free { rank: 2 });
        let k = p("Z^2 x C4 x C9").unwrap();
        assert_eq!(k, FamilyKind::FreeAbelianTimesFinite { s: 2, torsion: vec![4, 9] });
        assert_eq!(k.to_string(), "Z^2xC4xC9");
        assert_eq!(p(&k.to_string()).unwrap(), k);
        for bad in ["", "Q", "Z^", "ZxD4", "Fx", "Z^2xC"] {
            assert!(matches!(p(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn integers() {
        let lim = Limits::default();
        let r = divergence(&fam(FamilyKind::Z, 2), 3, &lim).unwrap();
        assert_eq!(r.lower_bounds(), vec![1, 2, 3]);
        let r = divergence(&fam(FamilyKind::Z, 3), 12, &lim).unwrap();
        assert_eq!(r.lower_bounds(), (2..=13).collect::<Vec<_>>());
        assert!(r.stages[7].from_lattice && !r.stages[8].from_lattice);
    }

    #[test]
    fn free_group() {
        let r = divergence(&fam(FamilyKind::Free { rank: 2 }, 3), 4, &Limits::default()).unwrap();
        let last = r.stages.last().unwrap();
        assert_eq!((last.quotient.as_str(), last.lower_bound), ("C16", 5));
        assert!(last.justification.contains("abelianization"));
    }

    #[test]
    fn infinite_dihedral() {
        let r = divergence(&fam(FamilyKind::DInfinity, 2), 6, &Limits::default()).unwrap();
        assert_eq!(r.lower_bounds(), vec![1, 2, 5, 8, 11, 14]);
        assert_eq!((r.stages[3].r, r.stages[3].r_2), (11, 3));
    }

    #[test]
    fn closed_forms_agree_with_lattices() {
        let lim = Limits::default();
        for n in 1..=64 {
            let d = GroupData::new(group::dihedral(2 * n).unwrap(), &lim).unwrap();
            assert_eq!(dihedral_class_counts(n), (d.r(), d.r_index(2)), "n={n}");
        }
        let big = Limits { max_lattice_order: 4, ..lim.clone() };
        let a = divergence(&fam(FamilyKind::DInfinity, 3), 7, &lim).unwrap();
        let b = divergence(&fam(FamilyKind::DInfinity, 3), 7, &big).unwrap();
        assert_eq!(a.lower_bounds(), b.lower_bounds());
    }

    #[test]
    fn torsion_family_and_validation() {
        let kind = FamilyKind::FreeAbelianTimesFinite { s: 2, torsion: vec![4, 9] };
        assert_eq!(kind.to_string(), "Z^2xC4xC9");
        let r = divergence(&fam(kind, 2), 3, &Limits::default()).unwrap();
        assert!(r.stages[0].justification.contains("Z^1 + C4 + C9"));
        assert!(FamilyDescriptor::new(FamilyKind::Free { rank: 5 }, 2).is_err());
        assert!(FamilyDescriptor::new(FamilyKind::FreeAbelianTimesFinite { s: 1, torsion: vec![16, 32] }, 2).is_err());
        assert!(FamilyDescriptor::new(FamilyKind::Z, 1).is_err());
        assert!(divergence(&fam(FamilyKind::Z, 2), 13, &Limits::default()).is_err());
    }

    #[test]
    fn remark_cases() {
        let sets = vec![vec![AmbientElement::Rational(1, 3)], vec![AmbientElement::Rational(5, 4)]];
        let out = remark_nonfg_check(&Ambient::Rationals, &sets);
        assert_eq!(out.verdict, NonFgVerdict::ProperSubgroup { witness: "1/24".into() });
        assert_eq!(remark_nonfg_check(&Ambient::Rationals, &[]).verdict, NonFgVerdict::IdentitySubgroup);
        let sets = vec![vec![AmbientElement::Support(vec![0, 3])]];
        let out = remark_nonfg_check(&Ambient::ElementaryAbelianInfinite, &sets);
        assert_eq!(out.verdict, NonFgVerdict::ProperSubgroup { witness: "e_4".into() });
        let fg = Ambient::FinitelyGenerated { description: "S4".into() };
        assert!(matches!(remark_nonfg_check(&fg, &sets).verdict, NonFgVerdict::Inapplicable { .. }));
    }
}
