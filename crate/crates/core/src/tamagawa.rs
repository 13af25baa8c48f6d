//! Local volumes, canonical convergence coefficients and Tamagawa numbers.
//!
//! The Tamagawa number is computed from the character lattice as
//! `τ(T) = |H^1(G, X)| / |Ш^2_cyc(G, X)|`, where `Ш^2_cyc` is the kernel of
//! restriction to all cyclic subgroups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::arith::{frobenius, local_determinant, primes_up_to, AbelianGaloisDatum};
use crate::cohomology::{cohomology, sha2_cyclic};
use crate::error::{Error, Result};
use crate::lattices::FGAbelian;
use crate::tori::{make_torus, Splitting, Torus, TorusKind};

/// `μ_p(T(Z_p)) = det(I - ρ(Frob_p)/p)` at an unramified prime.
pub fn local_volume(t: &Torus, p: u64) -> Result<BigRational> {
    local_determinant(t, p, 1)
}

/// `Λ_p = L_p(1, χ_Π)` off the ramified set and `1` on it, for every prime `p ≤ pmax`.
pub fn canonical_coefficients(t: &Torus, pmax: u64) -> Result<Vec<(u64, BigRational)>> {
    if pmax < 2 {
        return Err(Error::InvalidArgument(format!("pmax must be at least 2, got {pmax}")));
    }
    let datum = t.datum().ok_or(Error::NoArithmeticDatum)?;
    primes_up_to(pmax)
        .into_par_iter()
        .map(|p| {
            if datum.is_ramified(p) {
                Ok((p, BigRational::one()))
            } else {
                Ok((p, local_volume(t, p)?.recip()))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TamagawaNumber {
    pub tau: BigRational,
    pub h1: FGAbelian,
    pub sha: FGAbelian,
}

impl TamagawaNumber {
    pub fn is_integral(&self) -> bool {
        self.tau.is_integer()
    }
}

pub fn tamagawa_number(t: &Torus) -> Result<TamagawaNumber> {
    let x = t.lattice();
    let h1 = cohomology(x, 1)?;
    let sha = sha2_cyclic(x, &[])?;
    let num = h1.order().ok_or_else(|| Error::Internal(format!("H^1 = {h1} is infinite")))?;
    let den = sha.order().ok_or_else(|| Error::Internal(format!("Ш^2 = {sha} is infinite")))?;
    let tau = BigRational::new(num.to_big(), den.to_big());
    Ok(TamagawaNumber { tau, h1, sha })
}

/// A norm-one torus whose Tamagawa number is not an integer.
#[derive(Clone, Debug)]
pub struct Witness {
    pub datum: AbelianGaloisDatum,
    pub tamagawa: TamagawaNumber,
}

/// Searches the given data for a norm-one torus with `τ ∉ Z`, in order.
pub fn search_non_integral_norm_one(data: &[AbelianGaloisDatum]) -> Result<Option<Witness>> {
    for datum in data {
        let splitting = Splitting::Arithmetic(datum.clone().into());
        let t = make_torus(&splitting, &TorusKind::NormOne)?;
        let tamagawa = tamagawa_number(&t)?;
        if !tamagawa.is_integral() {
            return Ok(Some(Witness { datum: datum.clone(), tamagawa }));
        }
    }
    Ok(None)
}

/// Quadrature grid for the `G_m` check.
///
/// The numerator integral runs over `u = log t ∈ [u_min, u_max]`, the
/// denominator over `t ∈ (0, t_max]`, each with composite Simpson on `steps` panels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub steps: usize,
    pub u_min: f64,
    pub u_max: f64,
    pub t_max: f64,
}

impl Default for Grid {
    fn default() -> Grid {
        Grid { steps: 4000, u_min: -40.0, u_max: 3.0, t_max: 8.0 }
    }
}

/// Tolerance on the estimated relative error of the denominator integral.
pub const GRID_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct GmCheck {
    /// `Π_{p ≤ pmax} Λ_p · vol(Z_p^×)`, exactly.
    pub local_product: BigRational,
    pub numerator: f64,
    pub denominator: f64,
    pub tau_hat: f64,
    pub deviation: f64,
    pub error_estimate: f64,
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let n = steps + steps % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// Numerical check that `vol(I^1/Q^×) = 1` for `G_m`, with `F(t) = scale · 2t e^{-πt²}`.
///
/// The idele class group has fundamental domain `Π_p Z_p^× × R_{>0}`. The
/// truncated product of canonically normalized local volumes is exact; the
/// archimedean integral `∫ F(t) dt/t` is computed twice, once in the
/// logarithmic coordinate of the fundamental domain and once directly, and
/// `τ̂` is the ratio of the two normalized measures.
pub fn gm_adelic_check(pmax: u64, grid: &Grid, scale: f64) -> Result<GmCheck> {
    if pmax < 2 {
        return Err(Error::InvalidArgument(format!("pmax must be at least 2, got {pmax}")));
    }
    if grid.steps < 2 || grid.u_min >= grid.u_max || grid.t_max <= 0.0 || scale <= 0.0 {
        return Err(Error::InvalidArgument("grid needs positive resolution and extent".into()));
    }
    let gm = make_torus(&Splitting::Arithmetic(AbelianGaloisDatum::new(1, &[])?.into()), &TorusKind::Split(1))?;
    let coefficients = canonical_coefficients(&gm, pmax)?;
    let mut local_product = BigRational::one();
    for (p, lambda) in coefficients {
        // vol(Z_p^×) = 1 - 1/p under the Haar measure with vol(Z_p) = 1
        let unit_volume = BigRational::new(BigInt::from(p - 1), BigInt::from(p));
        local_product *= lambda * unit_volume;
    }
    let f = |t: f64| scale * 2.0 * t * (-std::f64::consts::PI * t * t).exp();
    let numerator = simpson(|u: f64| f(u.exp()), grid.u_min, grid.u_max, grid.steps);
    let g = |t: f64| if t == 0.0 { 2.0 * scale } else { f(t) / t };
    let denominator = simpson(g, 0.0, grid.t_max, grid.steps);
    let coarse = simpson(g, 0.0, grid.t_max, grid.steps / 2);
    let error_estimate = ((denominator - coarse) / 15.0 / denominator).abs();
    if !(error_estimate <= GRID_TOLERANCE) {
        return Err(Error::GridTooCoarse(error_estimate));
    }
    let tau_hat = local_product.to_f64().unwrap_or(f64::NAN) * numerator / denominator;
    Ok(GmCheck { local_product, numerator, denominator, tau_hat, deviation: (tau_hat - 1.0).abs(), error_estimate })
}

/// `Frob_p` together with `Λ_p` and the local volume, for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalRow {
    pub p: u64,
    pub ramified: bool,
    pub frobenius: Option<usize>,
    pub coefficient: BigRational,
    pub volume: Option<BigRational>,
}

pub fn local_table(t: &Torus, pmax: u64) -> Result<Vec<LocalRow>> {
    let datum = t.datum().ok_or(Error::NoArithmeticDatum)?;
    canonical_coefficients(t, pmax)?
        .into_iter()
        .map(|(p, coefficient)| {
            let ramified = datum.is_ramified(p);
            let (frob, volume) = if ramified { (None, None) } else { (Some(frobenius(datum, p)?), Some(local_volume(t, p)?)) };
            Ok(LocalRow { p, ramified, frobenius: frob, coefficient, volume })
        })
        .collect()
}
