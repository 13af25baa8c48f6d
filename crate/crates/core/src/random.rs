//! Random instances for property tests: unimodular matrices and small G-lattices.

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::groups::{FiniteGSet, FiniteGroup};
use crate::integer::Z;
use crate::lattices::{direct_sum, GLattice};
use crate::matrix::{determinant, Matrix};

/// Product of a few elementary operations and a signed permutation.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            m.add_row_multiple(i, j, &Z::from(rng.gen_range(-2i64..=2)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = Z::from(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    m.mul(&p)
}

/// Integer matrices with entries in {-1, 0, 1} of finite order, by rank.
fn finite_order_matrices(rank: usize) -> &'static [(Matrix, usize)] {
    static CACHE: [OnceLock<Vec<(Matrix, usize)>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[rank].get_or_init(|| {
        let cells = rank * rank;
        let mut out = Vec::new();
        let mut digits = vec![0usize; cells];
        loop {
            let m = Matrix::from_fn(rank, rank, |i, j| Z::from(digits[i * rank + j] as i64 - 1));
            if determinant(&m).abs().is_one() {
                let mut p = m.clone();
                for _ in 1..12 {
                    p = p.mul(&m);
                }
                if p.is_identity() {
                    let ord = matrix_order(&m);
                    out.push((m, ord));
                }
            }
            let mut k = 0;
            while k < cells {
                digits[k] += 1;
                if digits[k] < 3 {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == cells {
                break;
            }
        }
        out
    })
}

fn matrix_order(m: &Matrix) -> usize {
    let mut p = m.clone();
    let mut k = 1;
    while !p.is_identity() {
        p = p.mul(m);
        k += 1;
    }
    k
}

/// A random G-lattice of the given rank, presented in a random basis.
///
/// Pieces are either permutation lattices on coset spaces or homomorphisms
/// into finite subgroups of `GL_r(Z)` found by sampling generator images.
pub fn random_lattice<R: Rng + ?Sized>(group: &Arc<FiniteGroup>, rank: usize, rng: &mut R) -> GLattice {
    let mut pieces = Vec::new();
    let mut left = rank;
    while left > 0 {
        let r = if left >= 2 && rng.gen_bool(0.6) { 2 } else { 1 };
        pieces.push(random_piece(group, r, rng));
        left -= r;
    }
    let mut lattice = GLattice::trivial(group.clone(), 0);
    for p in pieces {
        lattice = direct_sum(&lattice, &p).expect("same group");
    }
    let u = random_unimodular(rank, rng);
    lattice.change_basis(&u).expect("unimodular")
}

fn random_piece<R: Rng + ?Sized>(group: &Arc<FiniteGroup>, rank: usize, rng: &mut R) -> GLattice {
    if rng.gen_bool(0.3) {
        let subgroups: Vec<_> = group.subgroups().into_iter().filter(|h| h.index() == rank).collect();
        if let Some(h) = subgroups.choose(rng) {
            return GLattice::permutation(&FiniteGSet::cosets(h));
        }
    }
    let gens = group.generators();
    let candidates = finite_order_matrices(rank);
    for _ in 0..200 {
        let images: Vec<(usize, Matrix)> = gens
            .iter()
            .map(|&g| {
                let ord = group.element_order(g);
                let fitting: Vec<&Matrix> =
                    candidates.iter().filter(|(_, o)| ord % o == 0).map(|(m, _)| m).collect();
                (g, (*fitting.choose(rng).expect("identity always fits")).clone())
            })
            .collect();
        if let Ok(m) = GLattice::from_images(group.clone(), rank, &images) {
            return m;
        }
    }
    GLattice::trivial(group.clone(), rank)
}
