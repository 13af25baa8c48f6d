//! Group cohomology in degrees 0, 1, 2 via the inhomogeneous bar resolution.
//!
//! Cochains of degree `q` are functions `G^q → M`, stored as vectors of length
//! `|G|^q · rank` indexed by (tuple, coordinate) with the tuple read in base
//! `|G|`, first argument most significant. The differential is
//!
//! `(d f)(g_0, …, g_q) = g_0·f(g_1, …, g_q) + Σ_{i=1..q} (-1)^i f(…, g_{i-1} g_i, …) + (-1)^{q+1} f(g_0, …, g_{q-1})`.
//!
//! For a lattice and `q ≥ 1`, `|G|` kills `H^q`, so the cocycles are exactly the
//! saturation of the coboundaries and `H^q` is the torsion of `coker d^{q-1}`,
//! read off one Smith form. Finitely presented modules go through the general
//! route `{x : d x ∈ relations} / (im d + relations)`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::integer::Z;
use crate::lattices::{invariants, norm_operator, restrict, FGAbelian, GLattice, GModulePresentation};
use crate::matrix::{column_basis, express_in_basis, kernel, smith, Matrix, SmithTransforms};

/// Largest number of maps `G → A` the splitting enumerator will try.
pub const SPLITTING_ENUMERATION_LIMIT: u128 = 1_000_000;

/// A G-module usable as cohomology coefficients: `Z^n / relations` with an action on `Z^n`.
pub trait Coefficients {
    fn group(&self) -> &Arc<FiniteGroup>;
    fn generator_count(&self) -> usize;
    fn action(&self, g: usize) -> &Matrix;
    /// Relation lattice basis; `None` for a lattice.
    fn relations(&self) -> Option<&Matrix>;
}

impl Coefficients for GLattice {
    fn group(&self) -> &Arc<FiniteGroup> {
        GLattice::group(self)
    }
    fn generator_count(&self) -> usize {
        self.rank()
    }
    fn action(&self, g: usize) -> &Matrix {
        GLattice::action(self, g)
    }
    fn relations(&self) -> Option<&Matrix> {
        None
    }
}

impl Coefficients for GModulePresentation {
    fn group(&self) -> &Arc<FiniteGroup> {
        GModulePresentation::group(self)
    }
    fn generator_count(&self) -> usize {
        GModulePresentation::generator_count(self)
    }
    fn action(&self, g: usize) -> &Matrix {
        GModulePresentation::action(self, g)
    }
    fn relations(&self) -> Option<&Matrix> {
        let r = GModulePresentation::relations(self);
        (r.cols() > 0).then_some(r)
    }
}

/// Row-sparse integer matrix; each row sorted by column without zeros.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, Z)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn apply(&self, x: &[Z]) -> Vec<Z> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| v * &x[*j]).sum())
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

fn cochain_len(order: usize, q: u32, rank: usize) -> usize {
    order.pow(q) * rank
}

/// The bar differential `d^q : C^q → C^{q+1}` on lifted coordinates.
pub fn differential<C: Coefficients + ?Sized>(m: &C, q: u32) -> SparseMatrix {
    let g = m.group();
    let n = g.order();
    let r = m.generator_count();
    let tail_count = n.pow(q);
    let row_tuples = n.pow(q + 1);
    let mut rows = Vec::with_capacity(row_tuples * r);
    let mut digits = vec![0usize; q as usize + 1];
    for t in 0..row_tuples {
        let mut x = t;
        for d in digits.iter_mut().rev() {
            *d = x % n;
            x /= n;
        }
        let tail = t % tail_count;
        let act = m.action(digits[0]);
        // index of the tuple with positions i-1, i merged
        let merged = |i: usize| -> usize {
            let mut idx = 0;
            let mut k = 0;
            while k <= q as usize {
                let v = if k == i - 1 {
                    k += 1;
                    g.mul(digits[i - 1], digits[i])
                } else {
                    digits[k]
                };
                idx = idx * n + v;
                k += 1;
            }
            idx
        };
        let mut signed_tuples: Vec<(usize, i64)> = (1..=q as usize)
            .map(|i| (merged(i), if i % 2 == 0 { 1 } else { -1 }))
            .collect();
        signed_tuples.push((t / n, if q % 2 == 0 { -1 } else { 1 }));
        for i in 0..r {
            let mut entries: Vec<(usize, Z)> = (0..r)
                .filter(|&j| !act[(i, j)].is_zero())
                .map(|j| (tail * r + j, act[(i, j)].clone()))
                .collect();
            for &(tuple, sign) in &signed_tuples {
                entries.push((tuple * r + i, Z::from(sign)));
            }
            entries.sort_by_key(|e| e.0);
            let mut merged_row: Vec<(usize, Z)> = Vec::with_capacity(entries.len());
            for (j, v) in entries {
                match merged_row.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += &v,
                    _ => merged_row.push((j, v)),
                }
            }
            merged_row.retain(|(_, v)| !v.is_zero());
            rows.push(merged_row);
        }
    }
    SparseMatrix { cols: tail_count * r, rows }
}

#[derive(Clone, Debug)]
enum Coordinates {
    /// Lattice route: `P x` gives coordinates; rows past the rank must vanish on cocycles.
    Smith { left: Matrix, generator_rows: Vec<usize>, rank: usize },
    /// General route: coordinates of `x` in the cocycle basis, then a change of basis.
    InBasis { basis: Matrix, rows: Matrix, generator_rows: Vec<usize> },
}

/// `H^q(G, M)` together with cocycle representatives of its generators.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub structure: FGAbelian,
    /// One cocycle per generator: torsion generators in invariant-factor order, then free ones.
    pub generators: Vec<Vec<Z>>,
    /// Order of each generator, `0` for free ones.
    pub orders: Vec<Z>,
    /// Length of a cochain vector.
    pub cochain_len: usize,
    coordinates: Coordinates,
}

impl CohomologyGroup {
    /// Coordinates of the class of a cocycle, reduced modulo the generator orders.
    pub fn class_of(&self, cocycle: &[Z]) -> Result<Vec<Z>> {
        if cocycle.len() != self.cochain_len {
            return Err(Error::InvalidArgument("cochain has the wrong length".into()));
        }
        let raw: Vec<Z> = match &self.coordinates {
            Coordinates::Smith { left, generator_rows, rank } => {
                let y = left.mul_vec(cocycle);
                if y[*rank..].iter().any(|v| !v.is_zero()) {
                    return Err(Error::NotACocycle);
                }
                generator_rows.iter().map(|&i| y[i].clone()).collect()
            }
            Coordinates::InBasis { basis, rows, generator_rows } => {
                let v = Matrix::from_columns(cocycle.len(), &[cocycle.to_vec()]);
                let c = express_in_basis(basis, &v).ok_or(Error::NotACocycle)?;
                let y = rows.mul(&c).column(0);
                generator_rows.iter().map(|&i| y[i].clone()).collect()
            }
        };
        Ok(raw
            .into_iter()
            .zip(&self.orders)
            .map(|(v, d)| if d.is_zero() { v } else { v.rem_floor(d) })
            .collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.structure.is_trivial()
    }
}

fn check_degree(q: u32) -> Result<()> {
    if q > 2 {
        return Err(Error::DegreeOutOfRange(q));
    }
    Ok(())
}

/// `H^q(G, M)` as invariant factors.
pub fn cohomology<C: Coefficients + ?Sized>(m: &C, q: u32) -> Result<FGAbelian> {
    check_degree(q)?;
    if m.relations().is_none() && q >= 1 {
        // no generators needed, so the Smith form runs without transforms
        let snf = smith(&differential(m, q - 1).to_dense(), SmithTransforms::NONE);
        return Ok(FGAbelian { free_rank: 0, torsion: snf.nontrivial_factors() });
    }
    Ok(general_route(m, q)?.structure)
}

/// `H^q(G, M)` with generators and a coordinate map.
pub fn cohomology_group<C: Coefficients + ?Sized>(m: &C, q: u32) -> Result<CohomologyGroup> {
    check_degree(q)?;
    if m.relations().is_none() && q >= 1 {
        return Ok(lattice_route(m, q));
    }
    general_route(m, q)
}

fn lattice_route<C: Coefficients + ?Sized>(m: &C, q: u32) -> CohomologyGroup {
    let len = cochain_len(m.group().order(), q, m.generator_count());
    let prev = differential(m, q - 1).to_dense();
    let snf = smith(&prev, SmithTransforms { left: true, left_inverse: true, right: false });
    let rank_prev = snf.rank();
    let left = snf.left.expect("tracked");
    let left_inv = snf.left_inverse.expect("tracked");
    let generator_rows: Vec<usize> = (0..rank_prev).filter(|&i| !snf.diagonal[i].is_one()).collect();
    let generators = generator_rows.iter().map(|&i| left_inv.column(i)).collect();
    let orders: Vec<Z> = generator_rows.iter().map(|&i| snf.diagonal[i].clone()).collect();
    CohomologyGroup {
        degree: q,
        structure: FGAbelian { free_rank: 0, torsion: orders.clone() },
        generators,
        orders,
        cochain_len: len,
        coordinates: Coordinates::Smith { left, generator_rows, rank: rank_prev },
    }
}

fn relation_blocks<C: Coefficients + ?Sized>(m: &C, q: u32) -> Matrix {
    let n = m.group().order();
    let r = m.generator_count();
    match m.relations() {
        None => Matrix::zeros(cochain_len(n, q, r), 0),
        Some(rel) => Matrix::identity(n.pow(q)).kron(rel),
    }
}

fn general_route<C: Coefficients + ?Sized>(m: &C, q: u32) -> Result<CohomologyGroup> {
    let n = m.group().order();
    let r = m.generator_count();
    let len = cochain_len(n, q, r);
    let d = differential(m, q).to_dense();
    let rel_next = relation_blocks(m, q + 1);
    let cocycle_gens = if rel_next.cols() == 0 {
        kernel(&d)
    } else {
        let k = kernel(&d.hstack(&rel_next));
        k.submatrix(0, len, 0, k.cols())
    };
    let basis = column_basis(&cocycle_gens);
    let prev = if q == 0 { Matrix::zeros(len, 0) } else { differential(m, q - 1).to_dense() };
    let boundaries = prev.hstack(&relation_blocks(m, q));
    if basis.cols() == 0 {
        return Ok(CohomologyGroup {
            degree: q,
            structure: FGAbelian::trivial(),
            generators: Vec::new(),
            orders: Vec::new(),
            cochain_len: len,
            coordinates: Coordinates::InBasis { basis, rows: Matrix::zeros(0, 0), generator_rows: Vec::new() },
        });
    }
    let coords = express_in_basis(&basis, &boundaries)
        .ok_or_else(|| Error::Internal("coboundaries are not cocycles".into()))?;
    let snf = smith(&coords, SmithTransforms { left: true, left_inverse: true, right: false });
    let k = basis.cols();
    let rank = snf.rank();
    let torsion = snf.nontrivial_factors();
    let left = snf.left.expect("tracked");
    let left_inv = snf.left_inverse.expect("tracked");
    let mut generator_rows: Vec<usize> = (0..rank).filter(|&i| !snf.diagonal[i].is_one()).collect();
    let mut orders: Vec<Z> = generator_rows.iter().map(|&i| snf.diagonal[i].clone()).collect();
    generator_rows.extend(rank..k);
    orders.extend(std::iter::repeat_n(Z::ZERO, k - rank));
    let in_cochains = basis.mul(&left_inv);
    let generators = generator_rows.iter().map(|&i| in_cochains.column(i)).collect();
    let structure = FGAbelian { free_rank: k - rank, torsion };
    Ok(CohomologyGroup {
        degree: q,
        structure,
        generators,
        orders,
        cochain_len: len,
        coordinates: Coordinates::InBasis { basis, rows: left, generator_rows },
    })
}

/// `Ĥ^0(G, M) = M^G / N_G M`.
pub fn tate_h0(m: &GLattice) -> FGAbelian {
    let inv = invariants(m);
    if inv.rank == 0 {
        return FGAbelian::trivial();
    }
    let norm = norm_operator(m);
    let coords = express_in_basis(&inv.basis, &norm).expect("norms are invariant");
    let snf = smith(&coords, SmithTransforms::NONE);
    FGAbelian { free_rank: inv.rank - snf.rank(), torsion: snf.nontrivial_factors() }
}

/// A homomorphism between cohomology groups in generator coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub source: FGAbelian,
    pub target: FGAbelian,
    pub source_orders: Vec<Z>,
    pub target_orders: Vec<Z>,
    /// `target generators × source generators`.
    pub matrix: Matrix,
}

impl CohomologyMap {
    pub fn kernel(&self) -> FGAbelian {
        kernel_of_map(&self.matrix, &self.source_orders, &self.target_orders)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }
}

/// Kernel of `x ↦ A x` from `⊕ Z/s_i` to `⊕ Z/t_j` (orders `0` meaning `Z`).
pub fn kernel_of_map(a: &Matrix, source_orders: &[Z], target_orders: &[Z]) -> FGAbelian {
    let k = source_orders.len();
    if k == 0 {
        return FGAbelian::trivial();
    }
    let l = target_orders.len();
    let preimage_gens = if l == 0 {
        Matrix::identity(k)
    } else {
        let kern = kernel(&a.hstack(&Matrix::diagonal(target_orders)));
        kern.submatrix(0, k, 0, kern.cols())
    };
    let basis = column_basis(&preimage_gens);
    let relations = Matrix::diagonal(source_orders);
    let coords = express_in_basis(&basis, &relations).expect("relations lie in the kernel");
    let snf = smith(&coords, SmithTransforms::NONE);
    FGAbelian { free_rank: basis.cols() - snf.rank(), torsion: snf.nontrivial_factors() }
}

/// Restriction of a cochain on `G` to the subgroup `H` (local element order).
fn restrict_cochain(f: &[Z], parent_order: usize, h: &Subgroup, q: u32, rank: usize) -> Vec<Z> {
    let k = h.order();
    let count = k.pow(q);
    let mut out = Vec::with_capacity(count * rank);
    for t in 0..count {
        let mut x = t;
        let mut local = vec![0usize; q as usize];
        for d in local.iter_mut().rev() {
            *d = x % k;
            x /= k;
        }
        let parent_tuple = local.iter().fold(0, |acc, &i| acc * parent_order + h.elements()[i]);
        out.extend_from_slice(&f[parent_tuple * rank..(parent_tuple + 1) * rank]);
    }
    out
}

fn restriction_from(source: &CohomologyGroup, m: &GLattice, h: &Subgroup) -> Result<CohomologyMap> {
    let q = source.degree;
    let target = cohomology_group(&restrict(m, h)?, q)?;
    let columns = source
        .generators
        .iter()
        .map(|f| target.class_of(&restrict_cochain(f, m.group().order(), h, q, m.rank())))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(target.generators.len(), &columns);
    Ok(CohomologyMap {
        source: source.structure.clone(),
        target: target.structure.clone(),
        source_orders: source.orders.clone(),
        target_orders: target.orders.clone(),
        matrix,
    })
}

/// `res : H^q(G, M) → H^q(H, Res M)` for `q ∈ {1, 2}`.
pub fn restriction_map(m: &GLattice, h: &Subgroup, q: u32) -> Result<CohomologyMap> {
    if !(1..=2).contains(&q) {
        return Err(Error::DegreeOutOfRange(q));
    }
    if !h.parent().same_table(m.group()) {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let source = cohomology_group(m, q)?;
    restriction_from(&source, m, h)
}

/// `ker(H^2(G, M) → ∏_C H^2(C, M))` over all cyclic subgroups `C` and any `extra` subgroups.
pub fn sha2_cyclic(m: &GLattice, extra: &[Subgroup]) -> Result<FGAbelian> {
    let g = m.group();
    let mut family = g.cyclic_subgroups();
    for s in extra {
        if !s.parent().same_table(g) {
            return Err(Error::NotASubgroup("extra subgroup of a different group".into()));
        }
        if !family.contains(s) {
            family.push(s.clone());
        }
    }
    // restriction to G itself is the identity
    if family.iter().any(Subgroup::is_whole) {
        return Ok(FGAbelian::trivial());
    }
    let h2 = cohomology_group(m, 2)?;
    if h2.is_trivial() {
        return Ok(FGAbelian::trivial());
    }
    let maps = family
        .par_iter()
        .filter(|s| s.order() > 1)
        .map(|s| restriction_from(&h2, m, s))
        .collect::<Result<Vec<_>>>()?;
    let k = h2.orders.len();
    let mut stacked = Matrix::zeros(0, k);
    let mut target_orders = Vec::new();
    for map in maps {
        stacked = stacked.vstack(&map.matrix);
        target_orders.extend(map.target_orders);
    }
    Ok(kernel_of_map(&stacked, &h2.orders, &target_orders))
}

/// Result of brute-force enumeration of 1-cocycles `G → A`.
#[derive(Clone, Debug)]
pub struct Splittings {
    /// Orders of the cyclic factors in which module elements are encoded.
    pub element_orders: Vec<Z>,
    /// Each cocycle lists, per group element, the module element as a mixed-radix index.
    pub cocycles: Vec<Vec<usize>>,
    pub class_count: usize,
}

impl Splittings {
    /// Coordinates of an encoded module element in the cyclic decomposition.
    pub fn decode(&self, mut idx: usize) -> Vec<Z> {
        let mut out = vec![Z::ZERO; self.element_orders.len()];
        for (i, d) in self.element_orders.iter().enumerate().rev() {
            let d = d.to_i64().expect("small module") as usize;
            out[i] = Z::from(idx % d);
            idx /= d;
        }
        out
    }
}

struct FiniteModule {
    orders: Vec<usize>,
    size: usize,
    /// `act[g][a]`
    act: Vec<Vec<usize>>,
}

impl FiniteModule {
    fn digits(&self, mut a: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (i, &d) in self.orders.iter().enumerate().rev() {
            out[i] = a % d;
            a /= d;
        }
        out
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.orders).fold(0, |acc, (&x, &d)| acc * d + x % d)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        self.encode(&s)
    }

    fn neg(&self, a: usize) -> usize {
        let d: Vec<usize> = self.digits(a).iter().zip(&self.orders).map(|(&x, &o)| (o - x) % o).collect();
        self.encode(&d)
    }
}

fn finite_module(a: &GModulePresentation) -> Result<(FiniteModule, Vec<Z>)> {
    let n = a.generator_count();
    let rel = a.relations();
    let snf = smith(rel, SmithTransforms { left: true, left_inverse: true, right: false });
    if snf.rank() < n {
        return Err(Error::NotFinite);
    }
    let p = snf.left.expect("tracked");
    let pinv = snf.left_inverse.expect("tracked");
    let keep: Vec<usize> = (0..n).filter(|&i| !snf.diagonal[i].is_one()).collect();
    let orders_z: Vec<Z> = keep.iter().map(|&i| snf.diagonal[i].clone()).collect();
    let mut size: u128 = 1;
    let mut orders = Vec::with_capacity(keep.len());
    for d in &orders_z {
        let d = d.to_i64().filter(|&d| d <= 1 << 20).ok_or(Error::EnumerationTooLarge {
            candidates: u128::MAX,
            limit: SPLITTING_ENUMERATION_LIMIT,
        })? as usize;
        size *= d as u128;
        orders.push(d);
    }
    if size > SPLITTING_ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { candidates: size, limit: SPLITTING_ENUMERATION_LIMIT });
    }
    let size = size as usize;
    let group = a.group();
    let mut module = FiniteModule { orders, size, act: Vec::new() };
    let mut act = Vec::with_capacity(group.order());
    for g in group.elements() {
        // action in Smith coordinates: y ↦ P ρ(g) P^{-1} y
        let conj = p.mul(a.action(g)).mul(&pinv);
        let row: Vec<usize> = (0..size)
            .map(|x| {
                let digits = module.digits(x);
                let mut y = vec![Z::ZERO; n];
                for (slot, &i) in keep.iter().enumerate() {
                    y[i] = Z::from(digits[slot]);
                }
                let z = conj.mul_vec(&y);
                let out: Vec<usize> = keep
                    .iter()
                    .zip(&orders_z)
                    .map(|(&i, d)| z[i].rem_floor(d).to_i64().expect("reduced") as usize)
                    .collect();
                module.encode(&out)
            })
            .collect();
        act.push(row);
    }
    module.act = act;
    Ok((module, orders_z))
}

/// Enumerates every map `f: G → A` with `f(στ) = f(σ) + σ f(τ)` and counts
/// classes modulo `f ~ f + (σ ↦ σa − a)`.
///
/// This is a brute-force oracle for `Z^1` and `H^1`, independent of the bar-resolution engine.
pub fn enumerate_splittings(a: &GModulePresentation) -> Result<Splittings> {
    let (module, element_orders) = finite_module(a)?;
    let group = a.group();
    let n = group.order();
    let candidates = (module.size as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if candidates > SPLITTING_ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { candidates, limit: SPLITTING_ENUMERATION_LIMIT });
    }
    let mut cocycles = Vec::new();
    let mut f = vec![0usize; n];
    'outer: loop {
        let ok = group.elements().all(|s| {
            group.elements().all(|t| f[group.mul(s, t)] == module.add(f[s], module.act[s][f[t]]))
        });
        if ok {
            cocycles.push(f.clone());
        }
        for slot in f.iter_mut() {
            *slot += 1;
            if *slot < module.size {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    let index: HashMap<&[usize], usize> = cocycles.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut class = vec![usize::MAX; cocycles.len()];
    let mut class_count = 0;
    for i in 0..cocycles.len() {
        if class[i] != usize::MAX {
            continue;
        }
        for a0 in 0..module.size {
            let neg = module.neg(a0);
            let shifted: Vec<usize> = group
                .elements()
                .map(|s| module.add(cocycles[i][s], module.add(module.act[s][a0], neg)))
                .collect();
            let j = *index.get(shifted.as_slice()).expect("cocycle plus coboundary is a cocycle");
            class[j] = class_count;
        }
        class_count += 1;
    }
    Ok(Splittings { element_orders, cocycles, class_count })
}

/// `|Z^1(G, A)| = |H^1| · |A| / |A^G|` from the bar-resolution engine, for finite `A`.
pub fn cocycle_count(a: &GModulePresentation) -> Result<Z> {
    let size = a.structure().order().ok_or(Error::NotFinite)?;
    let h0 = cohomology(a, 0)?.order().ok_or(Error::NotFinite)?;
    let h1 = cohomology(a, 1)?.order().ok_or(Error::NotFinite)?;
    Ok((h1 * size).div_exact(&h0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product, FiniteGSet};
    use crate::lattices::{build_lattice, quotient_lattice, LatticeKind};

    fn c(n: u64) -> Arc<FiniteGroup> {
        Arc::new(cyclic(n).unwrap())
    }

    fn klein() -> Arc<FiniteGroup> {
        Arc::new(direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]))
    }

    fn zmod(d: i64) -> FGAbelian {
        FGAbelian { free_rank: 0, torsion: vec![Z::from(d)] }
    }

    #[test]
    fn differentials_compose_to_zero() {
        let m = build_lattice(&klein(), &LatticeKind::Regular).unwrap();
        for q in 0..2 {
            let d0 = differential(&m, q).to_dense();
            let d1 = differential(&m, q + 1).to_dense();
            assert!(d1.mul(&d0).is_zero());
        }
    }

    #[test]
    fn sign_lattice_of_c2() {
        let sign = build_lattice(&c(2), &LatticeKind::Sign(None)).unwrap();
        assert_eq!(cohomology(&sign, 1).unwrap(), zmod(2));
        assert_eq!(cohomology(&sign, 0).unwrap(), FGAbelian::trivial());
        assert_eq!(cohomology(&sign, 2).unwrap(), FGAbelian::trivial());
        assert_eq!(cohomology(&sign, 3).unwrap_err(), Error::DegreeOutOfRange(3));
    }

    #[test]
    fn trivial_coefficients() {
        let z = GLattice::trivial(c(3), 1);
        assert_eq!(cohomology(&z, 0).unwrap(), FGAbelian::free(1));
        assert_eq!(cohomology(&z, 1).unwrap(), FGAbelian::trivial());
        assert_eq!(cohomology(&z, 2).unwrap(), zmod(3));
        let zk = GLattice::trivial(klein(), 1);
        assert_eq!(cohomology(&zk, 2).unwrap(), FGAbelian { free_rank: 0, torsion: vec![Z::from(2), Z::from(2)] });
        let tg = Arc::new(cyclic(1).unwrap());
        let m = GLattice::trivial(tg, 3);
        assert!(cohomology(&m, 1).unwrap().is_trivial());
    }

    #[test]
    fn regular_lattice_is_acyclic() {
        for g in [c(2), c(3), klein(), c(6)] {
            let reg = GLattice::regular(g.clone());
            assert_eq!(cohomology(&reg, 0).unwrap(), FGAbelian::free(1));
            assert!(cohomology(&reg, 1).unwrap().is_trivial());
            assert!(cohomology(&reg, 2).unwrap().is_trivial());
        }
    }

    #[test]
    fn tate_examples() {
        let g = c(2);
        assert_eq!(tate_h0(&GLattice::trivial(g.clone(), 1)), zmod(2));
        assert!(tate_h0(&GLattice::regular(g.clone())).is_trivial());
        assert!(tate_h0(&build_lattice(&g, &LatticeKind::Sign(None)).unwrap()).is_trivial());
    }

    #[test]
    fn lattice_and_general_routes_agree() {
        let k = klein();
        let reg = GLattice::regular(k.clone());
        let norm = Matrix::from_rows(&[[1], [1], [1], [1]]);
        let j = quotient_lattice(&reg, &norm).unwrap().lattice;
        for m in [j, GLattice::trivial(k.clone(), 1), GLattice::permutation(&FiniteGSet::cosets(&k.cyclic_subgroups()[1]))] {
            let as_module = GModulePresentation::from_lattice(&m);
            for q in 0..=2 {
                assert_eq!(cohomology(&m, q).unwrap(), general_route(&as_module, q).unwrap().structure);
            }
        }
    }

    #[test]
    fn finite_module_examples() {
        let g = c(2);
        let z2 = GModulePresentation::cyclic(g.clone(), 2, &[1, 1]).unwrap();
        let s = enumerate_splittings(&z2).unwrap();
        assert_eq!((s.cocycles.len(), s.class_count), (2, 2));
        let z3 = GModulePresentation::cyclic(g.clone(), 3, &[1, 1]).unwrap();
        let s = enumerate_splittings(&z3).unwrap();
        assert_eq!((s.cocycles.len(), s.class_count), (1, 1));
        let z3m = GModulePresentation::cyclic(g.clone(), 3, &[1, -1]).unwrap();
        let s = enumerate_splittings(&z3m).unwrap();
        assert_eq!((s.cocycles.len(), s.class_count), (3, 1));
        for a in [z2, z3, z3m] {
            let s = enumerate_splittings(&a).unwrap();
            assert_eq!(Z::from(s.class_count), cohomology(&a, 1).unwrap().order().unwrap());
            assert_eq!(Z::from(s.cocycles.len()), cocycle_count(&a).unwrap());
        }
        let big = GModulePresentation::cyclic(c(8), 7, &[1; 8]).unwrap();
        assert!(matches!(enumerate_splittings(&big), Err(Error::EnumerationTooLarge { .. })));
        let infinite = GModulePresentation::from_lattice(&GLattice::trivial(g, 1));
        assert_eq!(enumerate_splittings(&infinite).unwrap_err(), Error::NotFinite);
    }

    #[test]
    fn restriction_examples() {
        let c4 = c(4);
        let k = Subgroup::new(c4.clone(), &[0, 2]).unwrap();
        let sign = GLattice::sign(&k).unwrap();
        let whole = restriction_map(&sign, &c4.whole(), 1).unwrap();
        assert_eq!(whole.matrix, Matrix::identity(1));
        assert!(whole.is_injective());
        let to_trivial = restriction_map(&sign, &c4.trivial_subgroup(), 1).unwrap();
        assert!(to_trivial.target.is_trivial());
        let to_k = restriction_map(&sign, &k, 1).unwrap();
        assert_eq!(to_k.source, zmod(2));
        assert!(to_k.target.is_trivial());
        assert_eq!(to_k.kernel(), zmod(2));
    }

    #[test]
    fn class_of_ignores_coboundaries() {
        let k = klein();
        let z = GLattice::trivial(k.clone(), 1);
        let h2 = cohomology_group(&z, 2).unwrap();
        let d1 = differential(&z, 1);
        for (i, f) in h2.generators.iter().enumerate() {
            let shift: Vec<Z> = (0..d1.cols).map(|j| Z::from((j * 7 % 5) as i64 - 2)).collect();
            let moved: Vec<Z> = f.iter().zip(d1.apply(&shift)).map(|(a, b)| a + &b).collect();
            let mut expected = vec![Z::ZERO; h2.generators.len()];
            expected[i] = Z::ONE;
            assert_eq!(h2.class_of(&moved).unwrap(), expected);
        }
    }

    #[test]
    fn sha_of_cyclic_group_vanishes() {
        let m = GLattice::trivial(c(4), 1);
        assert!(sha2_cyclic(&m, &[]).unwrap().is_trivial());
    }

    #[test]
    fn sha_of_klein_norm_one_lattice() {
        let k = klein();
        let reg = GLattice::regular(k.clone());
        let j = quotient_lattice(&reg, &Matrix::from_rows(&[[1], [1], [1], [1]])).unwrap().lattice;
        // H^2(G, J) ≅ H^3(G, Z) ≅ Z/2 for the Klein group, killed by no cyclic subgroup
        assert_eq!(cohomology(&j, 2).unwrap(), zmod(2));
        assert_eq!(sha2_cyclic(&j, &[]).unwrap(), zmod(2));
        assert!(sha2_cyclic(&j, &[k.whole()]).unwrap().is_trivial());
    }
}
