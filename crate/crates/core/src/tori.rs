//! Tori as character lattices over a splitting group.

use std::sync::Arc;

use crate::arith::AbelianGaloisDatum;
use crate::cohomology::{cohomology, tate_h0};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::lattices::{direct_sum, dual, invariants, quotient_lattice, trace_character, GLattice};
use crate::matrix::Matrix;

/// Where the Galois group comes from: a cyclotomic field datum or a bare group.
#[derive(Clone, Debug)]
pub enum Splitting {
    Arithmetic(Arc<AbelianGaloisDatum>),
    Abstract(Arc<FiniteGroup>),
}

impl Splitting {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            Splitting::Arithmetic(d) => d.group(),
            Splitting::Abstract(g) => g,
        }
    }

    pub fn datum(&self) -> Option<&AbelianGaloisDatum> {
        match self {
            Splitting::Arithmetic(d) => Some(d),
            Splitting::Abstract(_) => None,
        }
    }

    pub fn is_compatible(&self, other: &Splitting) -> bool {
        match (self, other) {
            (Splitting::Arithmetic(a), Splitting::Arithmetic(b)) => {
                a.modulus() == b.modulus() && a.subgroup() == b.subgroup()
            }
            (Splitting::Abstract(a), Splitting::Abstract(b)) => a.same_table(b),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusKind {
    /// `G_m^d`.
    Split(usize),
    /// Restriction of scalars of `G_m` from the splitting field.
    Res,
    /// Kernel of the norm on the restriction of scalars.
    NormOne,
    /// The compact torus whose character lattice is `Z` with the nontrivial element acting by `-1`.
    So2,
    Product(Vec<TorusKind>),
    /// Explicit action matrices on group elements; the rest is generated.
    Lattice(Vec<(usize, Matrix)>),
}

#[derive(Clone, Debug)]
pub struct Torus {
    splitting: Splitting,
    kind: TorusKind,
    character_lattice: GLattice,
}

impl Torus {
    pub fn splitting(&self) -> &Splitting {
        &self.splitting
    }

    pub fn kind(&self) -> &TorusKind {
        &self.kind
    }

    /// The character lattice `X(T)`.
    pub fn lattice(&self) -> &GLattice {
        &self.character_lattice
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.splitting.group()
    }

    pub fn dim(&self) -> usize {
        self.character_lattice.rank()
    }

    pub fn datum(&self) -> Option<&AbelianGaloisDatum> {
        self.splitting.datum()
    }

    /// Torus with a given character lattice; the lattice must live over the splitting group.
    pub fn from_lattice(splitting: Splitting, lattice: GLattice) -> Result<Torus> {
        if !lattice.group().same_table(splitting.group()) {
            return Err(Error::GroupMismatch);
        }
        let images = lattice.group().elements().map(|g| (g, lattice.action(g).clone())).collect();
        Ok(Torus { splitting, kind: TorusKind::Lattice(images), character_lattice: lattice })
    }

    /// `T₁ × T₂`, whose character lattice is the direct sum.
    pub fn product(&self, other: &Torus) -> Result<Torus> {
        if !self.splitting.is_compatible(&other.splitting) {
            return Err(Error::IncompatibleSplitting("factors have different splitting data".into()));
        }
        Ok(Torus {
            splitting: self.splitting.clone(),
            kind: TorusKind::Product(vec![self.kind.clone(), other.kind.clone()]),
            character_lattice: direct_sum(&self.character_lattice, &other.character_lattice)?,
        })
    }
}

pub fn make_torus(splitting: &Splitting, kind: &TorusKind) -> Result<Torus> {
    let lattice = character_lattice(splitting.group(), kind)?;
    Ok(Torus { splitting: splitting.clone(), kind: kind.clone(), character_lattice: lattice })
}

fn character_lattice(g: &Arc<FiniteGroup>, kind: &TorusKind) -> Result<GLattice> {
    match kind {
        TorusKind::Split(d) => Ok(GLattice::trivial(g.clone(), *d)),
        TorusKind::Res => Ok(GLattice::regular(g.clone())),
        TorusKind::NormOne => {
            let norm = Matrix::from_fn(g.order(), 1, |_, _| 1.into());
            Ok(quotient_lattice(&GLattice::regular(g.clone()), &norm)?.lattice)
        }
        TorusKind::So2 => {
            if g.order() != 2 {
                return Err(Error::IncompatibleSplitting(format!(
                    "so2 needs a splitting group of order 2, got {}",
                    g.order()
                )));
            }
            GLattice::sign(&g.trivial_subgroup())
        }
        TorusKind::Product(factors) => {
            let mut acc = GLattice::trivial(g.clone(), 0);
            for f in factors {
                acc = direct_sum(&acc, &character_lattice(g, f)?)?;
            }
            Ok(acc)
        }
        TorusKind::Lattice(images) => {
            let rank = images
                .first()
                .map(|(_, m)| m.rows())
                .ok_or_else(|| Error::InvalidLattice("no action matrices given".into()))?;
            GLattice::from_images(g.clone(), rank, images)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub dim: usize,
    pub split_rank: usize,
    pub anisotropic_rank: usize,
}

impl RankProfile {
    pub fn is_anisotropic(&self) -> bool {
        self.split_rank == 0
    }
}

/// Ranks of the maximal split and anisotropic subtori.
pub fn rank_profile(t: &Torus) -> RankProfile {
    let split_rank = invariants(t.lattice()).rank;
    RankProfile { dim: t.dim(), split_rank, anisotropic_rank: t.dim() - split_rank }
}

/// `T(R) ≅ (R^×)^a × (C^×)^b × (S^1)^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RealClassification {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Real form of a torus split by a field of degree at most 2.
///
/// Over `C_2` the three indecomposable lattices are `Z`, `Z[C_2]` and the sign
/// lattice; `Ĥ^0` detects only the first and `H^1` only the last, each as a `Z/2`.
pub fn classify_real(t: &Torus) -> Result<RealClassification> {
    let x = t.lattice();
    match t.group().order() {
        1 => Ok(RealClassification { a: t.dim(), b: 0, c: 0 }),
        2 => {
            let a = tate_h0(x).count_factor(2);
            let c = cohomology(x, 1)?.count_factor(2);
            let rest = t.dim().checked_sub(a + c).filter(|r| r % 2 == 0).ok_or_else(|| {
                Error::Internal(format!("dimension {} incompatible with a = {a}, c = {c}", t.dim()))
            })?;
            Ok(RealClassification { a, b: rest / 2, c })
        }
        n => Err(Error::SplittingTooLarge(n)),
    }
}

/// Isogeny over the base field: the rational representations agree, i.e. the traces do.
pub fn isogenous(t1: &Torus, t2: &Torus) -> Result<bool> {
    if !t1.group().same_table(t2.group()) {
        return Err(Error::GroupMismatch);
    }
    Ok(trace_character(t1.lattice()) == trace_character(t2.lattice()))
}

/// Cocharacter lattice `X_*(T)`, the character lattice of the dual torus.
pub fn dual_torus(t: &Torus) -> GLattice {
    dual(t.lattice())
}

/// The equivariant map `Z → Z[G]`, `n ↦ n·Σσ`, as a column.
pub fn norm_character(t: &Torus) -> Result<Matrix> {
    if t.kind() != &TorusKind::Res {
        return Err(Error::NotResTorus);
    }
    Ok(Matrix::from_fn(t.dim(), 1, |_, _| 1.into()))
}
