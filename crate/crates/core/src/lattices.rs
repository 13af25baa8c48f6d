//! G-lattices, finitely presented G-modules and finitely generated abelian groups.
//!
//! A [`GLattice`] is `Z^rank` with one integer matrix per group element; all
//! constructors produce canonical bases so that outputs are reproducible.
//! Sublattices are normalized through Hermite forms, kernels and saturation
//! tests through Smith forms.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGSet, FiniteGroup, Subgroup};
use crate::integer::Z;
use crate::matrix::{column_basis, determinant, express_in_basis, hermite_rows, kernel, smith, Matrix, SmithTransforms};

#[derive(Clone)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<Matrix>,
}

impl fmt::Debug for GLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GLattice")
            .field("order", &self.group.order())
            .field("rank", &self.rank)
            .field("action", &self.action)
            .finish()
    }
}

impl GLattice {
    /// Validates the action: identity maps to `I`, products are respected and
    /// every matrix is unimodular.
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Matrix>) -> Result<GLattice> {
        let lattice = GLattice::new_unchecked(group, action)?;
        lattice.validate()?;
        Ok(lattice)
    }

    fn new_unchecked(group: Arc<FiniteGroup>, action: Vec<Matrix>) -> Result<GLattice> {
        if action.len() != group.order() {
            return Err(Error::InvalidLattice(format!(
                "expected {} matrices, got {}",
                group.order(),
                action.len()
            )));
        }
        let rank = action[0].rows();
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(Error::InvalidLattice("matrices must be square of equal size".into()));
        }
        Ok(GLattice { group, rank, action })
    }

    /// Builds the action from the images of some elements, extending along products.
    pub fn from_images(group: Arc<FiniteGroup>, rank: usize, images: &[(usize, Matrix)]) -> Result<GLattice> {
        let n = group.order();
        let mut action: Vec<Option<Matrix>> = vec![None; n];
        for (g, m) in images {
            if *g >= n {
                return Err(Error::InvalidLattice(format!("element {g} out of range")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidLattice(format!("matrix for element {g} is not {rank}x{rank}")));
            }
            if action[*g].replace(m.clone()).is_some() {
                return Err(Error::InvalidLattice(format!("element {g} given twice")));
            }
        }
        let e = group.identity();
        match &action[e] {
            Some(m) if !m.is_identity() => {
                return Err(Error::InvalidLattice("identity must act as the identity matrix".into()));
            }
            _ => action[e] = Some(Matrix::identity(rank)),
        }
        let gens: Vec<(usize, Matrix)> = images.to_vec();
        let mut queue = VecDeque::from([e]);
        let mut reached = vec![false; n];
        reached[e] = true;
        while let Some(x) = queue.pop_front() {
            let mx = action[x].clone().expect("reached elements are assigned");
            for (g, mg) in &gens {
                let y = group.mul(x, *g);
                if !reached[y] {
                    reached[y] = true;
                    let my = mx.mul(mg);
                    match &action[y] {
                        Some(given) if *given != my => {
                            return Err(Error::InvalidLattice(format!("inconsistent image for element {y}")));
                        }
                        _ => action[y] = Some(my),
                    }
                    queue.push_back(y);
                }
            }
        }
        if !reached.iter().all(|&r| r) {
            return Err(Error::InvalidLattice("given elements do not generate the group".into()));
        }
        GLattice::new(group, action.into_iter().map(|m| m.expect("assigned")).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if !self.action[g.identity()].is_identity() {
            return Err(Error::InvalidLattice("identity must act as the identity matrix".into()));
        }
        for a in g.elements() {
            let d = determinant(&self.action[a]);
            if !d.abs().is_one() {
                return Err(Error::InvalidLattice(format!("matrix of element {a} is not unimodular")));
            }
            for b in g.elements() {
                if self.action[a].mul(&self.action[b]) != self.action[g.mul(a, b)] {
                    return Err(Error::InvalidLattice(format!("not a homomorphism at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn trivial(group: Arc<FiniteGroup>, rank: usize) -> GLattice {
        let action = vec![Matrix::identity(rank); group.order()];
        GLattice { group, rank, action }
    }

    /// Rank one, elements outside `kernel` acting by `-1`.
    pub fn sign(kernel: &Subgroup) -> Result<GLattice> {
        if kernel.index() != 2 {
            return Err(Error::InvalidArgument(format!(
                "sign lattice needs an index-2 kernel, got index {}",
                kernel.index()
            )));
        }
        let group = kernel.parent().clone();
        let action = group
            .elements()
            .map(|g| Matrix::from_rows(&[[if kernel.contains(g) { 1 } else { -1 }]]))
            .collect();
        Ok(GLattice { group, rank: 1, action })
    }

    /// Permutation lattice `Z[X]` with basis the points of `X`.
    pub fn permutation(x: &FiniteGSet) -> GLattice {
        let group = x.group().clone();
        let n = x.size();
        let action = group
            .elements()
            .map(|g| {
                let mut m = Matrix::zeros(n, n);
                for p in 0..n {
                    m[(x.act(g, p), p)] = Z::ONE;
                }
                m
            })
            .collect();
        GLattice { group, rank: n, action }
    }

    pub fn regular(group: Arc<FiniteGroup>) -> GLattice {
        GLattice::permutation(&FiniteGSet::regular(group))
    }

    /// Same lattice with basis changed by a unimodular `basis` (columns are the new basis vectors).
    pub fn change_basis(&self, basis: &Matrix) -> Result<GLattice> {
        let inv = unimodular_inverse(basis)
            .ok_or_else(|| Error::InvalidArgument("change of basis is not unimodular".into()))?;
        let action = self.action.iter().map(|m| inv.mul(m).mul(basis)).collect();
        Ok(GLattice { group: self.group.clone(), rank: self.rank, action })
    }
}

#[derive(Clone, Debug)]
pub enum LatticeKind {
    Trivial(usize),
    /// Sign character with the given kernel; `None` picks the first index-2 subgroup.
    Sign(Option<Subgroup>),
    Regular,
    Permutation(FiniteGSet),
}

pub fn build_lattice(group: &Arc<FiniteGroup>, kind: &LatticeKind) -> Result<GLattice> {
    match kind {
        LatticeKind::Trivial(r) => Ok(GLattice::trivial(group.clone(), *r)),
        LatticeKind::Sign(Some(k)) => {
            if !k.parent().same_table(group) {
                return Err(Error::GroupMismatch);
            }
            GLattice::sign(k)
        }
        LatticeKind::Sign(None) => {
            let k = index_two_subgroup(group).ok_or(Error::NoIndexTwoSubgroup)?;
            GLattice::sign(&k)
        }
        LatticeKind::Regular => Ok(GLattice::regular(group.clone())),
        LatticeKind::Permutation(x) => {
            if !x.group().same_table(group) {
                return Err(Error::GroupMismatch);
            }
            Ok(GLattice::permutation(x))
        }
    }
}

pub fn index_two_subgroup(group: &Arc<FiniteGroup>) -> Option<Subgroup> {
    if group.order() % 2 != 0 {
        return None;
    }
    group.subgroups().into_iter().find(|s| s.index() == 2)
}

/// `Ind_H^G A = Z[G] ⊗_{Z[H]} A`, basis indexed by (left coset representative, basis of A).
pub fn induce(h: &Subgroup, a: &GLattice) -> Result<GLattice> {
    if !a.group.same_table(h.as_group()) {
        return Err(Error::NotASubgroup("lattice is not defined over the given subgroup".into()));
    }
    let g = h.parent().clone();
    let reps = h.left_coset_representatives();
    let mut coset_of = vec![0; g.order()];
    for (i, &t) in reps.iter().enumerate() {
        for &x in h.elements() {
            coset_of[g.mul(t, x)] = i;
        }
    }
    let r = a.rank;
    let m = reps.len();
    let action = g
        .elements()
        .map(|s| {
            let mut mat = Matrix::zeros(m * r, m * r);
            for (i, &t) in reps.iter().enumerate() {
                let st = g.mul(s, t);
                let k = coset_of[st];
                let hh = g.mul(g.inv(reps[k]), st);
                let local = h.local_index(hh).expect("coset decomposition lands in H");
                let block = &a.action[local];
                for x in 0..r {
                    for y in 0..r {
                        mat[(k * r + x, i * r + y)] = block[(x, y)].clone();
                    }
                }
            }
            mat
        })
        .collect();
    Ok(GLattice { group: g, rank: m * r, action })
}

pub fn restrict(m: &GLattice, h: &Subgroup) -> Result<GLattice> {
    if !h.parent().same_table(&m.group) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let action = h.elements().iter().map(|&g| m.action[g].clone()).collect();
    Ok(GLattice { group: h.as_group().clone(), rank: m.rank, action })
}

/// Contragredient lattice `Hom(M, Z)`: `g` acts by the transpose of `ρ(g⁻¹)`.
pub fn dual(m: &GLattice) -> GLattice {
    let action = m.group.elements().map(|g| m.action[m.group.inv(g)].transpose()).collect();
    GLattice { group: m.group.clone(), rank: m.rank, action }
}

pub fn direct_sum(a: &GLattice, b: &GLattice) -> Result<GLattice> {
    if !a.group.same_table(&b.group) {
        return Err(Error::GroupMismatch);
    }
    let action = a.action.iter().zip(&b.action).map(|(x, y)| Matrix::block_diagonal(x, y)).collect();
    Ok(GLattice { group: a.group.clone(), rank: a.rank + b.rank, action })
}

/// `A ⊗ B` with the diagonal action.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn tensor(a: &GLattice, b: &GLattice) -> Result<GLattice> {
    if !a.group.same_table(&b.group) {
        return Err(Error::GroupMismatch);
    }
    let action = a.action.iter().zip(&b.action).map(|(x, y)| x.kron(y)).collect();
    Ok(GLattice { group: a.group.clone(), rank: a.rank * b.rank, action })
}

/// `Hom(A, B)` with `(gφ)(x) = g φ(g⁻¹ x)`, as row-major vectorized matrices.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn hom(a: &GLattice, b: &GLattice) -> Result<GLattice> {
    tensor(b, &dual(a))
}

#[derive(Clone, Debug)]
pub struct Invariants {
    /// Columns form a saturated basis of `M^G`, in Hermite form.
    pub basis: Matrix,
    pub rank: usize,
}

pub fn invariants(m: &GLattice) -> Invariants {
    let r = m.rank;
    let gens = m.group.generators();
    let mut stacked = Matrix::zeros(0, r);
    for g in gens {
        stacked = stacked.vstack(&m.action[g].sub(&Matrix::identity(r)));
    }
    let basis = kernel(&stacked);
    let rank = basis.cols();
    Invariants { basis, rank }
}

/// Character `g ↦ tr ρ(g)`, indexed by element.
pub fn trace_character(m: &GLattice) -> Vec<Z> {
    m.action.iter().map(Matrix::trace).collect()
}

/// Norm element `Σ_g ρ(g)` as a matrix.
pub fn norm_operator(m: &GLattice) -> Matrix {
    let mut acc = Matrix::zeros(m.rank, m.rank);
    for a in &m.action {
        acc = acc.add(a);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: GLattice,
    /// `(rank M − rank S) × rank M`, row Hermite form, kernel exactly `S`.
    pub projection: Matrix,
    /// Section of the projection: `projection · lift = I`.
    pub lift: Matrix,
}

/// `M / S` for a G-stable saturated sublattice `S` (given by spanning columns).
pub fn quotient_lattice(m: &GLattice, sub: &Matrix) -> Result<Quotient> {
    let r = m.rank;
    if sub.rows() != r {
        return Err(Error::InvalidArgument("sublattice vectors have the wrong length".into()));
    }
    let basis = column_basis(sub);
    let k = basis.cols();
    let snf = smith(&basis, SmithTransforms { left: true, left_inverse: true, right: false });
    if snf.diagonal.iter().any(|d| !d.is_one()) {
        return Err(Error::NotSaturated);
    }
    for a in &m.action {
        if express_in_basis(&basis, &a.mul(&basis)).is_none() {
            return Err(Error::NotStable);
        }
    }
    let p = snf.left.expect("tracked");
    let pinv = snf.left_inverse.expect("tracked");
    let raw_projection = p.submatrix(k, r, 0, r);
    let raw_lift = pinv.submatrix(0, r, k, r);
    // normalize quotient coordinates so the projection is in Hermite form
    let herm = hermite_rows(&raw_projection, true);
    let u = herm.transform.expect("tracked");
    let projection = herm.h;
    let lift = raw_lift.mul(&unimodular_inverse(&u).expect("Hermite transform is unimodular"));
    let action = m.action.iter().map(|a| projection.mul(a).mul(&lift)).collect();
    let lattice = GLattice { group: m.group.clone(), rank: r - k, action };
    Ok(Quotient { lattice, projection, lift })
}

/// Inverse of a square integer matrix, if it is unimodular.
pub fn unimodular_inverse(u: &Matrix) -> Option<Matrix> {
    if !u.is_square() {
        return None;
    }
    let s = smith(u, SmithTransforms { left: true, left_inverse: false, right: true });
    if s.rank() != u.rows() || s.diagonal.iter().any(|d| !d.is_one()) {
        return None;
    }
    Some(s.right.expect("tracked").mul(&s.left.expect("tracked")))
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbelian {
    pub free_rank: usize,
    pub torsion: Vec<Z>,
}

impl FGAbelian {
    pub fn trivial() -> FGAbelian {
        FGAbelian::default()
    }

    pub fn free(rank: usize) -> FGAbelian {
        FGAbelian { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into invariant factors.
    pub fn from_cyclic_orders(orders: &[Z]) -> FGAbelian {
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<Z> = orders.iter().filter(|d| !d.is_zero()).map(Z::abs).collect();
        let s = smith(&Matrix::diagonal(&finite), SmithTransforms::NONE);
        FGAbelian { free_rank, torsion: s.nontrivial_factors() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Z> {
        self.is_finite().then(|| self.torsion.iter().cloned().product())
    }

    pub fn torsion_order(&self) -> Z {
        self.torsion.iter().cloned().product()
    }

    pub fn direct_sum(&self, other: &FGAbelian) -> FGAbelian {
        let orders: Vec<Z> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let mut out = FGAbelian::from_cyclic_orders(&orders);
        out.free_rank = self.free_rank + other.free_rank;
        out
    }

    /// Number of invariant factors equal to `d`.
    pub fn count_factor(&self, d: i64) -> usize {
        self.torsion.iter().filter(|x| **x == Z::from(d)).count()
    }

    pub fn is_annihilated_by(&self, n: &Z) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(|d| d.divides(n))
    }
}

impl fmt::Display for FGAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^n / (column span of relations)` with a G-action by integer matrices on the generators.
#[derive(Clone)]
pub struct GModulePresentation {
    group: Arc<FiniteGroup>,
    generators: usize,
    relations: Matrix,
    action: Vec<Matrix>,
}

impl fmt::Debug for GModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GModulePresentation")
            .field("generators", &self.generators)
            .field("relations", &self.relations)
            .field("action", &self.action)
            .finish()
    }
}

impl GModulePresentation {
    /// Checks that every `ρ(g)` maps relations into relations and that the
    /// action is a homomorphism modulo relations.
    pub fn new(group: Arc<FiniteGroup>, relations: Matrix, action: Vec<Matrix>) -> Result<GModulePresentation> {
        let n = relations.rows();
        if action.len() != group.order() || action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::InvalidLattice("action matrices do not match the generator count".into()));
        }
        let rel_basis = column_basis(&relations);
        let in_relations = |m: &Matrix| -> bool {
            if m.is_zero() {
                return true;
            }
            rel_basis.cols() > 0 && express_in_basis(&rel_basis, m).is_some()
        };
        for a in &action {
            if !in_relations(&a.mul(&rel_basis)) {
                return Err(Error::InvalidLattice("action does not preserve the relations".into()));
            }
        }
        if !in_relations(&action[group.identity()].sub(&Matrix::identity(n))) {
            return Err(Error::InvalidLattice("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let diff = action[g].mul(&action[h]).sub(&action[group.mul(g, h)]);
                if !in_relations(&diff) {
                    return Err(Error::InvalidLattice(format!("not an action at ({g},{h})")));
                }
            }
        }
        Ok(GModulePresentation { group, generators: n, relations: rel_basis, action })
    }

    pub fn from_lattice(m: &GLattice) -> GModulePresentation {
        GModulePresentation {
            group: m.group.clone(),
            generators: m.rank,
            relations: Matrix::zeros(m.rank, 0),
            action: m.action.clone(),
        }
    }

    /// `M / kM`.
    pub fn reduce_mod(m: &GLattice, k: i64) -> Result<GModulePresentation> {
        if k <= 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let rel = Matrix::identity(m.rank).scale(&Z::from(k));
        GModulePresentation::new(m.group.clone(), rel, m.action.clone())
    }

    /// `Z/modulus` with `g` acting as multiplication by `multipliers[g]`.
    pub fn cyclic(group: Arc<FiniteGroup>, modulus: i64, multipliers: &[i64]) -> Result<GModulePresentation> {
        let rel = Matrix::from_rows(&[[modulus]]);
        let action = multipliers.iter().map(|&a| Matrix::from_rows(&[[a]])).collect();
        GModulePresentation::new(group, rel, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Relation lattice basis (columns).
    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn structure(&self) -> FGAbelian {
        let s = smith(&self.relations, SmithTransforms::NONE);
        FGAbelian { free_rank: self.generators - s.rank(), torsion: s.nontrivial_factors() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product, make_group, GroupSpec};
    use crate::random::random_lattice;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(n: u64) -> Arc<FiniteGroup> {
        Arc::new(cyclic(n).unwrap())
    }

    #[test]
    fn basic_constructors() {
        let g = c(2);
        let t = build_lattice(&g, &LatticeKind::Trivial(1)).unwrap();
        assert!(t.actions().iter().all(|m| m.is_identity()));
        let reg = build_lattice(&g, &LatticeKind::Regular).unwrap();
        assert_eq!(reg.action(1), &Matrix::from_rows(&[[0, 1], [1, 0]]));
        let sign = build_lattice(&g, &LatticeKind::Sign(None)).unwrap();
        assert_eq!(sign.action(1), &Matrix::from_rows(&[[-1]]));
        assert_eq!(build_lattice(&c(3), &LatticeKind::Sign(None)).unwrap_err(), Error::NoIndexTwoSubgroup);
    }

    #[test]
    fn induction_examples() {
        let klein = Arc::new(direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]));
        let triv = klein.trivial_subgroup();
        let z = GLattice::trivial(triv.as_group().clone(), 1);
        let ind = induce(&triv, &z).unwrap();
        assert_eq!(ind.actions(), GLattice::regular(klein.clone()).actions());
        for h in klein.subgroups() {
            let z = GLattice::trivial(h.as_group().clone(), 1);
            let ind = induce(&h, &z).unwrap();
            let perm = GLattice::permutation(&FiniteGSet::cosets(&h));
            assert_eq!(ind.actions(), perm.actions());
            ind.validate().unwrap();
        }
        let whole = klein.whole();
        let m = GLattice::regular(klein.clone());
        assert_eq!(induce(&whole, &m).unwrap().actions(), m.actions());
        assert!(induce(&klein.trivial_subgroup(), &m).is_err());
    }

    #[test]
    fn restriction_examples() {
        let g = c(2);
        let reg = GLattice::regular(g.clone());
        let r = restrict(&reg, &g.trivial_subgroup()).unwrap();
        assert_eq!(r.rank(), 2);
        assert!(r.actions().iter().all(Matrix::is_identity));
        let c4 = c(4);
        let k = Subgroup::new(c4.clone(), &[0, 2]).unwrap();
        let sign = GLattice::sign(&k).unwrap();
        assert!(restrict(&sign, &k).unwrap().actions().iter().all(Matrix::is_identity));
        assert_eq!(restrict(&sign, &c4.whole()).unwrap().actions(), sign.actions());
    }

    #[test]
    fn duals_and_sums() {
        let g = c(2);
        let sign = build_lattice(&g, &LatticeKind::Sign(None)).unwrap();
        assert_eq!(dual(&sign).actions(), sign.actions());
        let reg = GLattice::regular(g.clone());
        assert_eq!(dual(&reg).actions(), reg.actions());
        let t2 = GLattice::trivial(g.clone(), 2);
        assert_eq!(dual(&t2).actions(), t2.actions());
        let s = direct_sum(&GLattice::trivial(g.clone(), 1), &sign).unwrap();
        assert_eq!(s.action(1), &Matrix::from_rows(&[[1, 0], [0, -1]]));
        let zero = GLattice::trivial(g.clone(), 0);
        assert_eq!(direct_sum(&reg, &zero).unwrap().actions(), reg.actions());
        assert_eq!(direct_sum(&reg, &reg).unwrap().rank(), 4);
        assert_eq!(direct_sum(&reg, &GLattice::trivial(c(3), 1)).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn invariants_examples() {
        let g = c(3);
        let t = GLattice::trivial(g.clone(), 2);
        assert_eq!(invariants(&t).basis, Matrix::identity(2));
        let reg = GLattice::regular(g.clone());
        let inv = invariants(&reg);
        assert_eq!(inv.rank, 1);
        assert_eq!(inv.basis, Matrix::from_rows(&[[1], [1], [1]]));
        let sign = build_lattice(&c(2), &LatticeKind::Sign(None)).unwrap();
        assert_eq!(invariants(&sign).rank, 0);
    }

    #[test]
    fn traces() {
        let g = c(2);
        assert_eq!(trace_character(&GLattice::regular(g.clone())), vec![Z::from(2), Z::ZERO]);
        let sign = build_lattice(&g, &LatticeKind::Sign(None)).unwrap();
        assert_eq!(trace_character(&sign)[1], Z::from(-1));
    }

    #[test]
    fn quotient_examples() {
        let g = c(2);
        let reg = GLattice::regular(g.clone());
        let norm = Matrix::from_rows(&[[1], [1]]);
        let q = quotient_lattice(&reg, &norm).unwrap();
        assert_eq!(q.lattice.rank(), 1);
        assert_eq!(q.lattice.action(1), &Matrix::from_rows(&[[-1]]));
        assert!(q.projection.mul(&norm).is_zero());
        assert!(q.projection.mul(&q.lift).is_identity());
        let same = quotient_lattice(&reg, &Matrix::zeros(2, 0)).unwrap();
        assert_eq!(same.lattice.actions(), reg.actions());
        let none = quotient_lattice(&reg, &Matrix::identity(2)).unwrap();
        assert_eq!(none.lattice.rank(), 0);
        assert_eq!(
            quotient_lattice(&reg, &Matrix::from_rows(&[[2], [2]])).unwrap_err(),
            Error::NotSaturated
        );
        assert_eq!(quotient_lattice(&reg, &Matrix::from_rows(&[[1], [0]])).unwrap_err(), Error::NotStable);
    }

    #[test]
    fn presentations() {
        let g = c(2);
        let a = GModulePresentation::cyclic(g.clone(), 3, &[1, -1]).unwrap();
        assert_eq!(a.structure().order(), Some(Z::from(3)));
        assert!(GModulePresentation::cyclic(g.clone(), 3, &[1, 2]).is_ok());
        assert!(GModulePresentation::cyclic(g, 5, &[1, 2]).is_err());
    }

    #[test]
    fn explicit_images_extend_to_the_group() {
        let g = c(4);
        let rot = Matrix::from_rows(&[[0, -1], [1, 0]]);
        let m = GLattice::from_images(g.clone(), 2, &[(1, rot.clone())]).unwrap();
        assert_eq!(m.action(2), &Matrix::from_rows(&[[-1, 0], [0, -1]]));
        let bad = Matrix::from_rows(&[[0, 1], [1, 0]]);
        assert!(GLattice::from_images(g.clone(), 2, &[(1, rot), (2, bad.clone())]).is_err());
        let order_three = Matrix::from_rows(&[[0, -1], [1, -1]]);
        assert!(GLattice::from_images(g.clone(), 2, &[(1, order_three)]).is_err());
        // a generator may go to an element of smaller order
        assert!(GLattice::from_images(g, 2, &[(1, bad)]).is_ok());
    }

    fn small_groups() -> Vec<Arc<FiniteGroup>> {
        [
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(3),
            GroupSpec::Cyclic(4),
            GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)]),
            GroupSpec::Dihedral(3),
            GroupSpec::Cyclic(6),
        ]
        .iter()
        .map(|s| Arc::new(make_group(s).unwrap()))
        .collect()
    }

    #[test]
    fn frobenius_reciprocity_on_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in small_groups() {
            for h in g.subgroups() {
                for _ in 0..3 {
                    let a = random_lattice(h.as_group(), 2, &mut rng);
                    let m = random_lattice(&g, 2, &mut rng);
                    let lhs = invariants(&hom(&a, &restrict(&m, &h).unwrap()).unwrap()).rank;
                    let rhs = invariants(&hom(&induce(&h, &a).unwrap(), &m).unwrap()).rank;
                    assert_eq!(lhs, rhs, "Frobenius reciprocity failed for |G|={} |H|={}", g.order(), h.order());
                }
            }
        }
    }

    #[test]
    fn constructed_lattices_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in small_groups() {
            GLattice::regular(g.clone()).validate().unwrap();
            for h in g.subgroups() {
                GLattice::permutation(&FiniteGSet::cosets(&h)).validate().unwrap();
                let a = random_lattice(h.as_group(), 2, &mut rng);
                induce(&h, &a).unwrap().validate().unwrap();
            }
            let m = random_lattice(&g, 3, &mut rng);
            m.validate().unwrap();
            dual(&m).validate().unwrap();
            assert_eq!(trace_character(&dual(&dual(&m))), trace_character(&m));
            let inv = invariants(&m);
            let q = quotient_lattice(&m, &inv.basis).unwrap();
            q.lattice.validate().unwrap();
            assert_eq!(q.lattice.rank(), m.rank() - inv.rank);
        }
    }
}
