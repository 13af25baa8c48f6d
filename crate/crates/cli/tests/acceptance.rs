//! End-to-end acceptance suite.
//!
//! Runs every criterion, prints one `PASS`/`FAIL` line for each and exits
//! nonzero if any failed. Pass criterion numbers as arguments to run a subset.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_core::arith::{characters, dirichlet_l1, elementary_abelian_data, primes_up_to, residue, AbelianGaloisDatum};
use torus_core::cohomology::{cocycle_count, cohomology, enumerate_splittings};
use torus_core::groups::{cyclic, dihedral, direct_product, quaternion, FiniteGroup};
use torus_core::lattices::{induce, invariants, GLattice, GModulePresentation};
use torus_core::random::random_lattice;
use torus_core::tamagawa::{gm_adelic_check, local_volume, search_non_integral_norm_one, tamagawa_number, Grid};
use torus_core::tori::{classify_real, isogenous, make_torus, RealClassification, Splitting, Torus, TorusKind};
use torus_core::Z;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn groups_up_to_order_8() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let c = |n| cyclic(n).unwrap();
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", direct_product(&[c(2), c(2)])),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", dihedral(3).unwrap()),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", direct_product(&[c(2), c(4)])),
        ("C2xC2xC2", direct_product(&[c(2), c(2), c(2)])),
        ("D4", dihedral(4).unwrap()),
        ("Q8", quaternion()),
    ]
    .into_iter()
    .map(|(name, g)| (name, Arc::new(g)))
    .collect()
}

/// Every `(Z/n)^× / H` for `n ≤ max_modulus` whose Galois group order lies in `orders`.
fn cyclotomic_data(max_modulus: u64, orders: impl Fn(usize) -> bool) -> Vec<Arc<AbelianGaloisDatum>> {
    let mut out = Vec::new();
    for n in 1..=max_modulus {
        let full = AbelianGaloisDatum::new(n, &[]).unwrap();
        let reps = full.representatives().to_vec();
        for h in full.group().subgroups().into_iter().filter(|h| orders(h.index())) {
            let units: Vec<u64> = h.elements().iter().map(|&i| reps[i]).collect();
            out.push(Arc::new(AbelianGaloisDatum::new(n, &units).unwrap()));
        }
    }
    out
}

fn arithmetic(d: &Arc<AbelianGaloisDatum>, kind: TorusKind) -> Torus {
    make_torus(&Splitting::Arithmetic(d.clone()), &kind).unwrap()
}

fn gm() -> Torus {
    arithmetic(&Arc::new(AbelianGaloisDatum::new(1, &[]).unwrap()), TorusKind::Split(1))
}

fn c1_gm_tamagawa() -> Outcome {
    let t = ok(tamagawa_number(&gm()))?;
    ensure!(t.h1.order() == Some(Z::ONE), "|H^1| = {}", t.h1);
    ensure!(t.sha.order() == Some(Z::ONE), "|Sha^2| = {}", t.sha);
    ensure!(t.tau.is_one(), "tau = {}", t.tau);
    Ok("tau = 1, |H^1| = 1, |Sha^2| = 1".into())
}

fn c2_res_tamagawa() -> Outcome {
    let mut count = 0;
    for d in cyclotomic_data(40, |o| o <= 8) {
        let t = ok(tamagawa_number(&arithmetic(&d, TorusKind::Res)))?;
        ensure!(t.tau.is_one(), "n = {}, H = {:?}: tau = {}", d.modulus(), d.subgroup(), t.tau);
        count += 1;
    }
    for (name, g) in groups_up_to_order_8().into_iter().filter(|(_, g)| g.is_abelian()) {
        let t = ok(tamagawa_number(&make_torus(&Splitting::Abstract(g), &TorusKind::Res).unwrap()))?;
        ensure!(t.tau.is_one(), "{name}: tau = {}", t.tau);
        count += 1;
    }
    Ok(format!("tau = 1 for {count} data (moduli up to 40 and abstract abelian groups)"))
}

/// `|H^1(G, X)|` from brute-force counts on `A = X/mX`, `m = |G|`.
///
/// Multiplication by `m` kills `H^1(G, X)`, so the long exact sequence gives
/// `|H^1(G, X)| = |A^G| / |X^G / m X^G|`, and `|A^G| = |A| · |H^1(G, A)| / |Z^1(G, A)|`.
fn h1_oracle(x: &GLattice) -> Result<u64, String> {
    let m = x.group().order() as u64;
    let a = ok(GModulePresentation::reduce_mod(x, m as i64))?;
    let s = ok(enumerate_splittings(&a))?;
    let size = m.pow(x.rank() as u32);
    let fixed = size * s.class_count as u64 / s.cocycles.len() as u64;
    Ok(fixed / m.pow(invariants(x).rank as u32))
}

fn c3_quadratic_norm_one() -> Outcome {
    let data = cyclotomic_data(60, |o| o == 2);
    for d in &data {
        let t = arithmetic(d, TorusKind::NormOne);
        let tau = ok(tamagawa_number(&t))?;
        let oracle = h1_oracle(t.lattice())?;
        // a cyclic group is one of its own cyclic subgroups, so Sha^2 vanishes
        ensure!(tau.sha.is_trivial(), "n = {}: Sha^2 = {}", d.modulus(), tau.sha);
        ensure!(tau.h1.order() == Some(Z::from(oracle as i64)), "n = {}: H^1 = {} but oracle {oracle}", d.modulus(), tau.h1);
        ensure!(tau.tau == rational(2, 1) && oracle == 2, "n = {}: tau = {}", d.modulus(), tau.tau);
    }
    Ok(format!("tau = 2 with brute-force agreement on {} quadratic data", data.len()))
}

fn c4_non_integral_search() -> Outcome {
    let moduli: Vec<u64> = (1..=420).collect();
    let data = ok(elementary_abelian_data(3, &moduli))?;
    match ok(search_non_integral_norm_one(&data))? {
        Some(w) => Ok(format!(
            "witness n = {}, H = {:?}: tau = {} (|H^1| = {}, Sha^2 = {})",
            w.datum.modulus(),
            w.datum.subgroup(),
            w.tamagawa.tau,
            w.tamagawa.h1,
            w.tamagawa.sha
        )),
        None => Err(format!("no witness among {} norm-one tori with (Z/2)^3 splitting, moduli up to 420, every tau is an integer", data.len())),
    }
}

fn c5_shapiro() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checks = 0;
    for (name, g) in groups_up_to_order_8() {
        for h in g.subgroups() {
            for _ in 0..20 {
                let a = random_lattice(h.as_group(), rng.gen_range(1..=2), &mut rng);
                let ind = ok(induce(&h, &a))?;
                for q in 0..=2 {
                    let (lhs, rhs) = (ok(cohomology(&a, q))?, ok(cohomology(&ind, q))?);
                    ensure!(lhs == rhs, "{name}, |H| = {}, q = {q}: {lhs} vs {rhs}", h.order());
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} comparisons over all subgroups of 14 groups"))
}

fn c6_regular_acyclic() -> Outcome {
    for (name, g) in groups_up_to_order_8() {
        let reg = GLattice::regular(g);
        for q in 1..=2 {
            let h = ok(cohomology(&reg, q))?;
            ensure!(h.is_trivial(), "{name}: H^{q} = {h}");
        }
    }
    Ok("H^1 = H^2 = 0 for Z[G], 14 groups".into())
}

fn c7_splitting_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances = 0;
    for (name, g) in groups_up_to_order_8().into_iter().filter(|(_, g)| g.order() <= 6) {
        for k in [2i64, 3, 4] {
            for rank in 1..=2 {
                let m = random_lattice(&g, rank, &mut rng);
                let a = ok(GModulePresentation::reduce_mod(&m, k))?;
                let Ok(s) = enumerate_splittings(&a) else { continue };
                let h1 = ok(cohomology(&a, 1))?;
                let z1 = ok(cocycle_count(&a))?;
                ensure!(h1.order() == Some(Z::from(s.class_count as i64)), "{name}, mod {k}: H^1 = {h1}, {} classes", s.class_count);
                ensure!(z1 == Z::from(s.cocycles.len() as i64), "{name}, mod {k}: |Z^1| = {z1}, {} cocycles", s.cocycles.len());
                instances += 1;
            }
        }
    }
    ensure!(instances >= 10, "only {instances} instances fit the enumeration limit");
    Ok(format!("{instances} instances agree"))
}

fn c8_real_classification() -> Outcome {
    let s = Splitting::Abstract(Arc::new(cyclic(2).unwrap()));
    for (kind, expected) in [
        (TorusKind::Split(1), RealClassification { a: 1, b: 0, c: 0 }),
        (TorusKind::Res, RealClassification { a: 0, b: 1, c: 0 }),
        (TorusKind::So2, RealClassification { a: 0, b: 0, c: 1 }),
    ] {
        let got = ok(classify_real(&make_torus(&s, &kind).unwrap()))?;
        ensure!(got == expected, "{kind:?}: {got:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..50 {
        let a = Torus::from_lattice(s.clone(), random_lattice(s.group(), rng.gen_range(1..=4), &mut rng)).unwrap();
        let b = Torus::from_lattice(s.clone(), random_lattice(s.group(), rng.gen_range(1..=4), &mut rng)).unwrap();
        let (ca, cb) = (ok(classify_real(&a))?, ok(classify_real(&b))?);
        let cs = ok(classify_real(&a.product(&b).unwrap()))?;
        ensure!(cs == RealClassification { a: ca.a + cb.a, b: ca.b + cb.b, c: ca.c + cb.c }, "sum {i}: {cs:?} from {ca:?} and {cb:?}");
        ensure!(cs.a + 2 * cs.b + cs.c == a.dim() + b.dim(), "sum {i}: dimension mismatch");
    }
    Ok("basic tori and 50 random sums".into())
}

fn c9_local_volumes() -> Outcome {
    let gm = gm();
    let res = arithmetic(&Arc::new(AbelianGaloisDatum::new(4, &[]).unwrap()), TorusKind::Res);
    let primes = primes_up_to(10_000);
    for &p in &primes {
        let p_ = p as i64;
        ensure!(ok(local_volume(&gm, p))? == rational(p_ - 1, p_), "G_m at {p}");
        if p == 2 {
            continue;
        }
        let expected = if p % 4 == 1 { rational((p_ - 1) * (p_ - 1), p_ * p_) } else { rational(p_ * p_ - 1, p_ * p_) };
        ensure!(ok(local_volume(&res, p))? == expected, "res over Q(i) at {p}");
    }
    Ok(format!("{} primes up to 10^4", primes.len()))
}

/// Leibniz series accelerated by repeated averaging of partial sums.
fn leibniz() -> f64 {
    let mut partial = Vec::with_capacity(40);
    let mut s = 0.0;
    for k in 0..1040u64 {
        s += if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64;
        if k >= 1000 {
            partial.push(s);
        }
    }
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
    }
    partial[0]
}

fn c10_l_value() -> Outcome {
    let d = AbelianGaloisDatum::new(4, &[]).unwrap();
    let chi = characters(&d).into_iter().find(|c| !c.is_trivial()).ok_or("no nontrivial character mod 4")?;
    let l = ok(dirichlet_l1(&chi))?;
    let target = PI / 4.0;
    // Q(i): r1 = 0, r2 = 1, h = 1, R = 1, w = 4, |d| = 4
    let cnf = 2f64.powi(0) * (2.0 * PI).powi(1) * 1.0 * 1.0 / (4.0 * 4f64.sqrt());
    let series = leibniz();
    let errors = [(l.re - target).abs() / target, (l.re - cnf).abs() / cnf, (l.re - series).abs() / series, l.im.abs() / target];
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    ensure!(worst <= 1e-9, "L(1, chi_-4) = {l}, relative errors {errors:?}");
    Ok(format!("L(1, chi_-4) = {:.15}, worst relative error {worst:.1e}", l.re))
}

fn c11_residue() -> Outcome {
    let r = ok(residue(&gm()))?;
    ensure!(r.d == 1 && r.value == 1.0, "rho(G_m) = {} with d = {}", r.value, r.d);
    let data: Vec<_> = [(4u64, vec![]), (5, vec![]), (7, vec![1, 6]), (8, vec![]), (12, vec![]), (3, vec![])]
        .into_iter()
        .map(|(n, h)| Splitting::Arithmetic(Arc::new(AbelianGaloisDatum::new(n, &h).unwrap())))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0f64;
    for _ in 0..10 {
        let s = &data[rng.gen_range(0..data.len())];
        let a = Torus::from_lattice(s.clone(), random_lattice(s.group(), rng.gen_range(1..=3), &mut rng)).unwrap();
        let b = Torus::from_lattice(s.clone(), random_lattice(s.group(), rng.gen_range(1..=2), &mut rng)).unwrap();
        let (ra, rb, rs) = (ok(residue(&a))?, ok(residue(&b))?, ok(residue(&a.product(&b).unwrap()))?);
        let err = (rs.value - ra.value * rb.value).abs() / rs.value;
        ensure!(err <= 1e-10, "rho(A x B) = {} but rho(A) rho(B) = {}", rs.value, ra.value * rb.value);
        worst = worst.max(err);
    }
    Ok(format!("rho(G_m) = 1; 10 products, worst relative error {worst:.1e}"))
}

fn c12_gm_check() -> Outcome {
    let c = ok(gm_adelic_check(100, &Grid::default(), 1.0))?;
    ensure!(c.deviation <= 1e-3, "tau_hat = {}", c.tau_hat);
    Ok(format!("tau_hat = {:.12}, deviation {:.1e}", c.tau_hat, c.deviation))
}

fn c13_isogeny() -> Outcome {
    let s = Splitting::Abstract(Arc::new(cyclic(2).unwrap()));
    let t = |kind| make_torus(&s, &kind).unwrap();
    let regular_vs_mixed = ok(isogenous(&t(TorusKind::Res), &t(TorusKind::Product(vec![TorusKind::Split(1), TorusKind::So2]))))?;
    let trivial_vs_sign = ok(isogenous(&t(TorusKind::Split(1)), &t(TorusKind::So2)))?;
    ensure!(regular_vs_mixed, "Z[C2] and Z + sign reported non-isogenous");
    ensure!(!trivial_vs_sign, "Z and sign reported isogenous");
    Ok("Z[C2] ~ Z + sign, Z !~ sign".into())
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Every subcommand on every sample file, concatenated with exit codes.
fn cli_suite() -> Result<Vec<u8>, String> {
    let mut files: Vec<PathBuf> = ok(std::fs::read_dir(data_dir()))?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.sort();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for f in &files {
        let f = f.display().to_string();
        for args in [
            vec!["info"],
            vec!["cohomology", "--q", "0"],
            vec!["cohomology", "--q", "1"],
            vec!["cohomology", "--q", "2"],
            vec!["classify-real"],
            vec!["volumes", "--pmax", "60"],
            vec!["residue"],
            vec!["tamagawa"],
        ] {
            runs.push(args.into_iter().map(String::from).chain([f.clone()]).collect());
        }
        runs.push(vec!["isogeny".into(), f.clone(), files[0].display().to_string()]);
    }
    runs.push(vec!["check-gm".into()]);
    runs.push(vec!["check-gm".into(), "--pmax".into(), "50".into(), "--scale".into(), "2.5".into()]);
    let mut out = Vec::new();
    for args in runs {
        let o = ok(Command::new(env!("CARGO_BIN_EXE_torus")).args(&args).output())?;
        out.extend(format!("$ torus {} -> {:?}\n", args.join(" "), o.status.code()).into_bytes());
        out.extend(o.stdout);
    }
    Ok(out)
}

fn c14_determinism() -> Outcome {
    let first = cli_suite()?;
    let second = cli_suite()?;
    ensure!(first == second, "outputs differ between runs");
    let runs = first.split(|&b| b == b'\n').filter(|l| l.starts_with(b"$ torus")).count();
    Ok(format!("{runs} invocations, {} bytes, identical", first.len()))
}

type Check = fn() -> Outcome;

const CRITERIA: [(&str, Check); 14] = [
    ("tau(G_m) = 1", c1_gm_tamagawa),
    ("tau(Res) = 1 for |G| <= 8", c2_res_tamagawa),
    ("tau = 2 for quadratic norm-one tori", c3_quadratic_norm_one),
    ("non-integral tau in the (Z/2)^3 search space", c4_non_integral_search),
    ("Shapiro's lemma", c5_shapiro),
    ("Z[G] is acyclic", c6_regular_acyclic),
    ("splitting enumeration oracle", c7_splitting_oracle),
    ("real classification", c8_real_classification),
    ("local volumes up to 10^4", c9_local_volumes),
    ("L(1, chi_-4) = pi/4", c10_l_value),
    ("residue rho", c11_residue),
    ("G_m adelic volume check", c12_gm_check),
    ("isogeny test", c13_isogeny),
    ("CLI determinism", c14_determinism),
];

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let number = i + 1;
        if !selected.is_empty() && !selected.contains(&number) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {number:>2} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failures += 1;
                println!("criterion {number:>2} FAIL  {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
