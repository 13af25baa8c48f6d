//! Abelian Galois data inside cyclotomic fields: Frobenius classes, Dirichlet
//! characters, the character decomposition of a torus, local Artin factors and
//! `L(1, χ)`.
//!
//! Character values are kept exact as rational exponents `k` standing for
//! `e^{2πik}`; floating point appears only in L-values and residues.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{units_mod, CyclotomicQuotient, FiniteGroup};
use crate::lattices::trace_character;
use crate::matrix::{determinant, Matrix};
use crate::tori::Torus;

/// `K ⊂ Q(ζ_n)` fixed by `H ≤ (Z/n)^×`, with `Gal(K/Q) = (Z/n)^× / H`.
#[derive(Clone, Debug)]
pub struct AbelianGaloisDatum {
    quotient: CyclotomicQuotient,
    group: Arc<FiniteGroup>,
    ramified: Vec<u64>,
}

impl AbelianGaloisDatum {
    /// `subgroup` must be closed under multiplication; `1` is added if missing.
    pub fn new(modulus: u64, subgroup: &[u64]) -> Result<AbelianGaloisDatum> {
        let quotient = CyclotomicQuotient::new(modulus, subgroup)?;
        let group = Arc::new(quotient.group.clone());
        let ramified = prime_factors(modulus);
        Ok(AbelianGaloisDatum { quotient, group, ramified })
    }

    pub fn modulus(&self) -> u64 {
        self.quotient.modulus
    }

    pub fn subgroup(&self) -> &[u64] {
        &self.quotient.subgroup
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Least unit representative of each group element.
    pub fn representatives(&self) -> &[u64] {
        &self.quotient.reps
    }

    pub fn class_of(&self, a: u64) -> Option<usize> {
        self.quotient.class_of(a)
    }

    /// Finite primes treated as ramified: the divisors of the modulus. The infinite place is always included implicitly.
    pub fn ramified(&self) -> &[u64] {
        &self.ramified
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.ramified.contains(&p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i as u64).collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The Frobenius class of an unramified prime: `p mod n` in `(Z/n)^× / H`.
pub fn frobenius(datum: &AbelianGaloisDatum, p: u64) -> Result<usize> {
    check_prime(p)?;
    if datum.is_ramified(p) {
        return Err(Error::Ramified(p));
    }
    Ok(datum.class_of(p).expect("unramified primes are units"))
}

fn fract(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// A character of a finite abelian group as exact exponents, one per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupCharacter {
    exponents: Vec<Rational64>,
}

impl GroupCharacter {
    pub fn exponent(&self, g: usize) -> Rational64 {
        self.exponents[g]
    }

    pub fn value(&self, g: usize) -> Complex64 {
        root_of_unity(self.exponents[g])
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn exponents(&self) -> &[Rational64] {
        &self.exponents
    }

    /// Least common denominator of the exponents, i.e. the order of the character.
    pub fn order(&self) -> i64 {
        self.exponents.iter().fold(1, |acc, e| acc.lcm(e.denom()))
    }

    pub fn conj(&self) -> GroupCharacter {
        GroupCharacter { exponents: self.exponents.iter().map(|&e| fract(-e)).collect() }
    }

    pub fn mul(&self, other: &GroupCharacter) -> GroupCharacter {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| fract(a + b)).collect();
        GroupCharacter { exponents }
    }
}

pub fn root_of_unity(k: Rational64) -> Complex64 {
    let theta = 2.0 * PI * (*k.numer() as f64) / (*k.denom() as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// All characters of an abelian group, sorted by exponent vector (so the trivial one is first).
pub fn group_characters(g: &FiniteGroup) -> Result<Vec<GroupCharacter>> {
    if !g.is_abelian() {
        return Err(Error::InvalidGroup("characters are only computed for abelian groups".into()));
    }
    let gens = g.generators();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let mut out = Vec::with_capacity(g.order());
    let mut digits = vec![0usize; gens.len()];
    loop {
        let steps: Vec<Rational64> =
            digits.iter().zip(&orders).map(|(&c, &o)| Rational64::new(c as i64, o as i64)).collect();
        if let Some(ch) = extend_character(g, &gens, &steps) {
            out.push(ch);
        }
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < orders[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    if out.len() != g.order() {
        return Err(Error::Internal(format!("found {} characters for a group of order {}", out.len(), g.order())));
    }
    out.sort();
    Ok(out)
}

/// Extends prescribed generator values to a homomorphism, or reports an inconsistency.
fn extend_character(g: &FiniteGroup, gens: &[usize], steps: &[Rational64]) -> Option<GroupCharacter> {
    let mut values: Vec<Option<Rational64>> = vec![None; g.order()];
    values[g.identity()] = Some(Rational64::zero());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let vx = values[x].expect("visited");
        for (&s, &step) in gens.iter().zip(steps) {
            let y = g.mul(x, s);
            let vy = fract(vx + step);
            match values[y] {
                None => {
                    values[y] = Some(vy);
                    queue.push_back(y);
                }
                Some(v) if v != vy => return None,
                Some(_) => {}
            }
        }
    }
    Some(GroupCharacter { exponents: values.into_iter().map(|v| v.expect("generators generate")).collect() })
}

/// A Dirichlet character modulo `n` with exact exponents on units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<Option<Rational64>>,
    conductor: u64,
}

impl DirichletCharacter {
    /// Builds a character from its exponents on units mod `n` (`None` on non-units).
    pub fn from_exponents(modulus: u64, exponents: Vec<Option<Rational64>>) -> Result<DirichletCharacter> {
        if exponents.len() != modulus as usize {
            return Err(Error::InvalidArgument("one exponent slot per residue expected".into()));
        }
        for a in 0..modulus {
            let unit = a.gcd(&modulus) == 1;
            if unit != exponents[a as usize].is_some() {
                return Err(Error::InvalidArgument(format!("character must be defined exactly on units; failed at {a}")));
            }
        }
        for a in units_mod(modulus) {
            for b in units_mod(modulus) {
                let ab = (a * b % modulus) as usize;
                if exponents[ab] != Some(fract(exponents[a as usize].unwrap() + exponents[b as usize].unwrap())) {
                    return Err(Error::InvalidArgument("character is not multiplicative".into()));
                }
            }
        }
        let conductor = conductor_of(modulus, &exponents);
        Ok(DirichletCharacter { modulus, exponents, conductor })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self, a: u64) -> Option<Rational64> {
        self.exponents[(a % self.modulus) as usize]
    }

    /// `χ(a)`, zero off the units.
    pub fn value(&self, a: u64) -> Complex64 {
        self.exponent(a).map_or(Complex64::zero(), root_of_unity)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().flatten().all(Zero::is_zero)
    }

    /// `χ(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.modulus > 2 && self.exponent(self.modulus - 1) == Some(Rational64::new(1, 2))
    }

    pub fn is_real(&self) -> bool {
        self.exponents.iter().flatten().all(|e| *e.denom() <= 2)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// The primitive character modulo the conductor inducing this one.
    pub fn primitive(&self) -> DirichletCharacter {
        let f = self.conductor;
        let exponents = (0..f)
            .map(|b| {
                if b.gcd(&f) != 1 {
                    return None;
                }
                let lift = (0..self.modulus / f)
                    .map(|k| b + k * f)
                    .find(|a| a.gcd(&self.modulus) == 1)
                    .expect("every unit mod a divisor lifts to a unit");
                self.exponent(lift)
            })
            .collect();
        DirichletCharacter { modulus: f, exponents, conductor: f }
    }
}

fn conductor_of(n: u64, exponents: &[Option<Rational64>]) -> u64 {
    let divisors = (1..=n).filter(|d| n % d == 0);
    for f in divisors {
        let induced = units_mod(n).into_iter().filter(|a| a % f == 1 % f).all(|a| exponents[a as usize] == Some(Rational64::zero()));
        if induced {
            return f;
        }
    }
    n
}

/// The characters of `Gal(K/Q)` as Dirichlet characters mod `n`, in the order of
/// [`group_characters`] for the datum's group (trivial first).
pub fn characters(datum: &AbelianGaloisDatum) -> Vec<DirichletCharacter> {
    let chars = group_characters(datum.group()).expect("cyclotomic quotients are abelian");
    let n = datum.modulus();
    chars
        .iter()
        .map(|ch| {
            let exponents: Vec<_> = (0..n).map(|a| datum.class_of(a).map(|g| ch.exponent(g))).collect();
            let conductor = conductor_of(n, &exponents);
            DirichletCharacter { modulus: n, exponents, conductor }
        })
        .collect()
}

/// `χ_Π = d·χ₀ + Σ m_χ χ` over the characters of the splitting group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Characters in [`group_characters`] order.
    pub characters: Vec<GroupCharacter>,
    /// Multiplicity of each character, aligned with `characters`.
    pub multiplicities: Vec<usize>,
}

impl Decomposition {
    /// Multiplicity of the trivial character.
    pub fn d(&self) -> usize {
        self.multiplicities[0]
    }
}

/// Exact multiplicities `m_χ = (1/|G|) Σ_g χ_Π(g) conj χ(g)`, evaluated in `Z[ζ_e]`.
pub fn decompose(t: &Torus) -> Result<Decomposition> {
    let g = t.group();
    let characters = group_characters(g)?;
    let traces = trace_character(t.lattice());
    let e = g.exponent();
    let phi = cyclotomic_polynomial(e);
    let mut multiplicities = Vec::with_capacity(characters.len());
    for ch in &characters {
        let mut poly = vec![0i128; e];
        for x in g.elements() {
            let k = fract(-ch.exponent(x)) * Rational64::from(e as i64);
            debug_assert!(k.is_integer());
            let tr = traces[x].to_i64().ok_or_else(|| Error::Internal("trace out of range".into()))?;
            poly[k.to_integer() as usize] += tr as i128;
        }
        let reduced = reduce_mod_monic(poly, &phi);
        if reduced.iter().skip(1).any(|&c| c != 0) {
            return Err(Error::Internal("character inner product is not rational".into()));
        }
        let total = reduced.first().copied().unwrap_or(0);
        let order = g.order() as i128;
        if total < 0 || total % order != 0 {
            return Err(Error::Internal(format!("non-integral multiplicity {total}/{order}")));
        }
        multiplicities.push((total / order) as usize);
    }
    Ok(Decomposition { characters, multiplicities })
}

/// `Φ_n` with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i128; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        poly = divide_exact_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn divide_exact_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quotient = vec![0i128; num.len() - dd];
    for i in (0..quotient.len()).rev() {
        let c = rem[i + dd];
        quotient[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quotient
}

fn reduce_mod_monic(mut poly: Vec<i128>, modulus: &[i128]) -> Vec<i128> {
    let dd = modulus.len() - 1;
    for i in (dd..poly.len()).rev() {
        let c = poly[i];
        if c != 0 {
            for (j, &b) in modulus.iter().enumerate() {
                poly[i - dd + j] -= c * b;
            }
        }
    }
    poly.truncate(dd.max(1));
    poly
}

fn datum_of(t: &Torus) -> Result<&AbelianGaloisDatum> {
    t.datum().ok_or(Error::NoArithmeticDatum)
}

/// `det(I - ρ(Frob_p) p^{-s})` as an exact rational.
pub fn local_determinant(t: &Torus, p: u64, s: u32) -> Result<BigRational> {
    let frob = frobenius(datum_of(t)?, p)?;
    let m = t.lattice().action(frob);
    let r = m.rows();
    let ps = crate::integer::Z::from(BigInt::from(p).pow(s));
    let shifted = Matrix::identity(r).scale(&ps).sub(m);
    let det = determinant(&shifted).to_big();
    Ok(BigRational::new(det, BigInt::from(p).pow(s * r as u32)))
}

/// `L_p(s, χ_Π) = det(I - ρ(Frob_p) p^{-s})^{-1}` for an unramified prime.
pub fn local_factor_at(t: &Torus, p: u64, s: u32) -> Result<BigRational> {
    Ok(local_determinant(t, p, s)?.recip())
}

/// `L_p(1, χ_Π)`.
pub fn local_artin_factor(t: &Torus, p: u64) -> Result<BigRational> {
    local_factor_at(t, p, 1)
}

/// `L(1, χ)` for a nontrivial Dirichlet character, through its primitive character.
///
/// For primitive `χ` mod `f` with Gauss sum `τ(χ)`:
/// even `χ`: `L(1,χ) = -(τ(χ)/f) Σ_a conj χ(a) log|1 - ζ_f^a|`;
/// odd `χ`: `L(1,χ) = (iπ τ(χ)/f²) Σ_a conj χ(a) a`.
/// The imprimitive value differs by the Euler factors at primes dividing `n` but not `f`.
pub fn dirichlet_l1(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_trivial() {
        return Err(Error::Pole);
    }
    let prim = chi.primitive();
    let f = prim.modulus();
    let gauss: Complex64 = (1..f).map(|a| prim.value(a) * root_of_unity(Rational64::new(a as i64, f as i64))).sum();
    let ff = f as f64;
    let l = if prim.is_odd() {
        let s: Complex64 = (1..f).map(|a| prim.value(a).conj() * a as f64).sum();
        Complex64::i() * PI * gauss * s / (ff * ff)
    } else {
        let s: Complex64 = (1..f).map(|a| prim.value(a).conj() * (2.0 * (PI * a as f64 / ff).sin()).ln()).sum();
        -gauss * s / ff
    };
    let euler: Complex64 = prime_factors(chi.modulus())
        .into_iter()
        .filter(|p| f % p != 0)
        .map(|p| Complex64::new(1.0, 0.0) - prim.value(p) / p as f64)
        .product();
    Ok(l * euler)
}

/// `ρ_T = lim (s-1)^d L(s, χ_Π)` at `s = 1`.
#[derive(Clone, Debug)]
pub struct Residue {
    pub d: usize,
    pub value: f64,
    /// `(character index, multiplicity, L(1, χ))` for each nontrivial constituent.
    pub factors: Vec<(usize, usize, Complex64)>,
}

/// `ρ_T = Π_{χ ≠ χ₀} L(1, χ)^{m_χ}`; the conjugate pairs make it real and positive.
pub fn residue(t: &Torus) -> Result<Residue> {
    let datum = datum_of(t)?;
    let dec = decompose(t)?;
    let chars = characters(datum);
    let mut product = Complex64::new(1.0, 0.0);
    let mut factors = Vec::new();
    for (i, (chi, &m)) in chars.iter().zip(&dec.multiplicities).enumerate().skip(1) {
        if m == 0 {
            continue;
        }
        let l = dirichlet_l1(chi)?;
        product *= l.powu(m as u32);
        factors.push((i, m, l));
    }
    if product.im.abs() > 1e-9 * product.norm().max(1.0) || product.re <= 0.0 {
        return Err(Error::Internal(format!("residue {product} is not a positive real")));
    }
    Ok(Residue { d: dec.d(), value: product.re, factors })
}

/// All `(Z/n)^× / H` with `H ⊇ squares` and quotient `(Z/2)^k`, for the given moduli.
pub fn elementary_abelian_data(k: u32, moduli: &[u64]) -> Result<Vec<AbelianGaloisDatum>> {
    let mut out = Vec::new();
    for &n in moduli {
        let units = units_mod(n);
        let mut squares: Vec<u64> = units.iter().map(|&a| a * a % n).collect();
        squares.sort_unstable();
        squares.dedup();
        let mod_squares = CyclotomicQuotient::new(n, &squares)?;
        let q = Arc::new(mod_squares.group.clone());
        for h in q.subgroups().into_iter().filter(|h| h.index() == 1 << k) {
            let lifted: Vec<u64> = units.iter().copied().filter(|&u| h.contains(mod_squares.class_of(u).expect("unit"))).collect();
            out.push(AbelianGaloisDatum::new(n, &lifted)?);
        }
    }
    Ok(out)
}

/// `Π_χ (1 - χ(Frob_p)/p)^{-m_χ}`, which must agree with [`local_artin_factor`].
pub fn factorized_local_factor(t: &Torus, p: u64) -> Result<Complex64> {
    let frob = frobenius(datum_of(t)?, p)?;
    let dec = decompose(t)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(dec
        .characters
        .iter()
        .zip(&dec.multiplicities)
        .map(|(ch, &m)| (one - ch.value(frob) / p as f64).powi(-(m as i32)))
        .product())
}
