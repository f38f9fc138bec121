//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed;
//! the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hss_core::einstein::{ricci_diagonal, ricci_diagonal_at, solve_sasaki_einstein};
use hss_core::oracle::checks::{ad_invariance_residual, jacobi_residual};
use hss_core::oracle::{classical_suite, run_suite, MatrixAlgebra};
use hss_core::orbits::{classify, contact_status, cr_split, faces, k_constant, sasaki_parameter, segment_of, CrType};
use hss_core::rational::{format, int, rat, Rational};
use hss_core::rootsys::{OrbitPoint, RootKind};
use hss_core::spaces::{catalog, dimension, Family, SpaceDescriptor};

const RUNTIME_TABLE: Duration = Duration::from_secs(1);
const RUNTIME_SWEEP: Duration = Duration::from_secs(5);
const RUNTIME_ORACLE: Duration = Duration::from_secs(60);
const TOL_K_SASAKI: f64 = 1e-12;
const TOL_J_CUBE: f64 = 1e-12;
const TOL_BRACKET_REL: f64 = 1e-9;
const TOL_RICCI: f64 = 1e-8;
const TOL_JACOBI: f64 = 1e-10;
const TOL_AD_INVARIANCE: f64 = 1e-10;
const JACOBI_SAMPLES: usize = 1000;
const SEED: u64 = 0xacce_97ed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(f: Family) -> Result<SpaceDescriptor, String> {
    catalog(f).map_err(|e| format!("{f:?}: {e}"))
}

/// Every catalog space of rank at most 4 with small parameters.
fn small_rank_spaces() -> Vec<SpaceDescriptor> {
    let mut fams = Vec::new();
    for n in 3..=10 {
        for k in 1..=n / 2 {
            if k <= 4 {
                fams.push(Family::Grassmannian { k, n });
            }
        }
    }
    fams.extend((5..=10).map(|n| Family::OrientedGrassmannian { n }));
    fams.extend((3..=9).map(|n| Family::SoQuotient { n }));
    fams.extend((2..=4).map(|n| Family::SpQuotient { n }));
    fams.extend([Family::EIII, Family::EVII]);
    fams.into_iter().map(|f| catalog(f).unwrap()).filter(|s| s.rank <= 4).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(Family, Rational)> = Vec::new();
    for n in 2..=8i64 {
        cases.push((Family::Grassmannian { k: n as u32, n: 2 * n as u32 }, rat(n, n - 1)));
        cases.push((Family::SpQuotient { n: n as u32 }, int(1)));
    }
    for n in 5..=10i64 {
        cases.push((Family::OrientedGrassmannian { n: n as u32 }, int(n - 4)));
    }
    for n in 4..=8i64 {
        cases.push((Family::SoQuotient { n: n as u32 }, rat(n, n - 3)));
    }
    cases.push((Family::EIII, rat(8, 3)));
    cases.push((Family::EVII, rat(12, 5)));
    for (f, want) in &cases {
        let got = solve_sasaki_einstein(&space(*f)?);
        ensure(got == Some(*want), || format!("{f}: got {got:?}, want {}", format(want)))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < RUNTIME_TABLE, || format!("runtime {elapsed:?}"))?;
    Ok(format!("{} solutions exact in {elapsed:?}", cases.len()))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for n in 3..=10 {
        let f = Family::complex_projective(n);
        ensure(solve_sasaki_einstein(&space(f)?).is_none(), || format!("{f} has a solution"))?;
        count += 1;
    }
    for n in 3..=8u32 {
        for k in 2..n {
            if 2 * k == n {
                continue;
            }
            let f = Family::Grassmannian { k, n };
            ensure(solve_sasaki_einstein(&space(f)?).is_none(), || format!("{f} (k={k}) has a solution"))?;
            count += 1;
        }
    }
    Ok(format!("{count} spaces without a solution"))
}

fn criterion_3() -> Outcome {
    let ds = [rat(1, 2), int(1), int(3), rat(7, 3)];
    let mut cases: Vec<(Family, Rational)> = Vec::new();
    for n in 2..=8i64 {
        cases.push((Family::Grassmannian { k: n as u32, n: 2 * n as u32 }, int(4 * n)));
        cases.push((Family::SpQuotient { n: n as u32 }, int(2 * n)));
    }
    for n in 5..=10i64 {
        cases.push((Family::OrientedGrassmannian { n: n as u32 }, int(4 * (n - 4))));
    }
    for n in 4..=8i64 {
        cases.push((Family::SoQuotient { n: n as u32 }, int(4 * n)));
    }
    cases.push((Family::EIII, int(32)));
    cases.push((Family::EVII, int(48)));
    for (f, want) in &cases {
        let s = space(*f)?;
        let base = ricci_diagonal(&s).map_err(|e| e.to_string())?;
        ensure(base == *want, || format!("{f}: ricci {}, want {}", format(&base), format(want)))?;
        for d in &ds {
            let got = ricci_diagonal_at(&s, *d).map_err(|e| e.to_string())?;
            ensure(got == *want, || format!("{f} at d={}: ricci {}", format(d), format(&got)))?;
        }
    }
    Ok(format!("{} spaces, d in {{1/2, 1, 3, 7/3}}", cases.len()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for s in small_rank_spaces() {
        let n = s.rank;
        for face in faces(&s) {
            let h = &face.sample;
            let r = classify(&s, h, int(1)).map_err(|e| e.to_string())?;
            // Vertices of the face; the origin Q_0 stands in for the empty face.
            let mut verts: Vec<usize> = face.fundamental.clone();
            if face.highest || verts.is_empty() {
                verts.insert(0, 0);
            }
            let tag = || format!("{} at {h} (face {:?})", s.name, face.labels());
            let is_vertex = verts.len() == 1;
            let complex = r.cr_real.is_empty();
            ensure(complex == is_vertex, || format!("{}: complex = {complex}", tag()))?;
            let lagrangian_face = s.restricted_kind == RootKind::C && verts == [0, n];
            let lagrangian = r.cr_type == CrType::TotallyRealLagrangian;
            ensure(lagrangian == lagrangian_face, || format!("{}: lagrangian = {lagrangian}", tag()))?;
            let ruled_face = verts.len() <= 2;
            ensure(r.ruled == ruled_face, || format!("{}: ruled = {}", tag(), r.ruled))?;
            ensure(r.complex_dist_integrable == is_vertex, || {
                format!("{}: integrable = {}", tag(), r.complex_dist_integrable)
            })?;
            ensure(r.hopf, || format!("{}: not Hopf", tag()))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < RUNTIME_SWEEP, || format!("runtime {elapsed:?}"))?;
    Ok(format!("{checked} faces in {elapsed:?}"))
}

/// A random point of Q as a convex combination of its vertices Q_0..Q_n.
fn random_point(n: usize, rng: &mut ChaCha8Rng) -> OrbitPoint {
    let weights: Vec<i64> = (0..=n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=9) } else { 0 }).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    (1..=n).fold(OrbitPoint::origin(n), |acc, a| acc.add(&OrbitPoint::vertex(a, n).scale(rat(weights[a], total))))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ts = [rat(1, 5), rat(1, 3), rat(1, 2), rat(2, 3), rat(4, 5)];
    let mut points = 0;
    for s in small_rank_spaces() {
        let n = s.rank;
        let mut sample: Vec<OrbitPoint> = faces(&s).into_iter().map(|f| f.sample).collect();
        sample.extend((0..40).map(|_| random_point(n, &mut rng)));
        for i in 0..n {
            for t in &ts {
                sample.push(OrbitPoint::segment(i, *t, n).map_err(|e| e.to_string())?);
            }
        }
        for h in &sample {
            let c = contact_status(&s, h).map_err(|e| e.to_string())?;
            let seg = segment_of(h);
            ensure((c.real_rank == 1) == seg.is_some(), || {
                format!("{} at {h}: real rank {} with segment {seg:?}", s.name, c.real_rank)
            })?;
            let want = seg.is_some_and(|g| g.i == 0 || (s.restricted_kind == RootKind::C && g.i + 1 == n));
            ensure(c.contact == want, || format!("{} at {h}: contact = {}", s.name, c.contact))?;
            points += 1;
        }
        let sasaki = OrbitPoint::segment(0, rat(1, 2), n).map_err(|e| e.to_string())?;
        let r = classify(&s, &sasaki, int(1)).map_err(|e| e.to_string())?;
        ensure(r.ruled && r.sasaki_t == Some(rat(1, 2)), || {
            format!("{}: Sasaki point at d = 1 gives ruled = {}, t = {:?}", s.name, r.ruled, r.sasaki_t)
        })?;
    }
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let d = rat(rng.gen_range(1..=1000), rng.gen_range(1..=1000));
        let t = sasaki_parameter(d).map_err(|e| e.to_string())?.t;
        let k = k_constant(d, t).map_err(|e| e.to_string())?;
        worst = worst.max((k - 1.0).abs());
    }
    ensure(worst <= TOL_K_SASAKI, || format!("k at the Sasaki parameter deviates by {worst:e}"))?;
    Ok(format!("{points} points; max |k - 1| = {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut lines = 0;
    for f in classical_suite().into_iter().filter(|f| *f != Family::complex_projective(3)) {
        let report = run_suite(f, int(1)).map_err(|e| format!("{f}: {e}"))?;
        for c in &report.checks {
            let (limit, relevant) = if c.name == "structure/j_cube" {
                (TOL_J_CUBE, true)
            } else if c.name.starts_with("bracket_norm/") {
                (TOL_BRACKET_REL, true)
            } else if c.name == "ricci/polar" {
                (TOL_RICCI, true)
            } else {
                (0.0, c.name == "spectrum/multiplicities" || c.name.starts_with("contact/rank"))
            };
            if !relevant {
                continue;
            }
            let within = c.residual.is_none_or(|r| r <= limit);
            ensure(c.pass && within, || {
                format!("{}: {} residual {:?} {}", report.space, c.name, c.residual, c.note.clone().unwrap_or_default())
            })?;
            lines += 1;
        }
        ensure(report.pass, || {
            let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            format!("{}: further checks failed: {names:?}", report.space)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < RUNTIME_ORACLE, || format!("runtime {elapsed:?}"))?;
    Ok(format!("{lines} oracle comparisons in {elapsed:?}"))
}

fn closed_form_dimension(f: Family) -> u32 {
    match f {
        Family::Grassmannian { k, n } => 2 * k * (n - k),
        Family::OrientedGrassmannian { n } => 2 * (n - 2),
        Family::SoQuotient { n } => n * (n - 1),
        Family::SpQuotient { n } => n * (n + 1),
        Family::EIII => 32,
        Family::EVII => 54,
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_jacobi = 0.0_f64;
    let mut worst_inv = 0.0_f64;
    for f in classical_suite() {
        let alg = MatrixAlgebra::build(f, 1.0).map_err(|e| e.to_string())?;
        worst_jacobi = worst_jacobi.max(jacobi_residual(&alg, JACOBI_SAMPLES, &mut rng));
        worst_inv = worst_inv.max(ad_invariance_residual(&alg, JACOBI_SAMPLES, &mut rng));
    }
    ensure(worst_jacobi <= TOL_JACOBI, || format!("Jacobi residual {worst_jacobi:e}"))?;
    ensure(worst_inv <= TOL_AD_INVARIANCE, || format!("ad-invariance residual {worst_inv:e}"))?;

    let mut face_count = 0;
    for s in small_rank_spaces() {
        for face in faces(&s) {
            let split = cr_split(&s, &face.sample).map_err(|e| e.to_string())?;
            let active = hss_core::orbits::active_roots(&s, &face.sample).map_err(|e| e.to_string())?.active;
            let union: std::collections::BTreeSet<_> = split.complex.union(&split.real).cloned().collect();
            ensure(split.complex.is_disjoint(&split.real) && union == active, || {
                format!("{}: split at {} is not a partition", s.name, face.sample)
            })?;
            face_count += 1;
        }
    }

    let mut fams: Vec<Family> = vec![Family::EIII, Family::EVII];
    for n in 3..=12 {
        fams.extend((1..n).map(|k| Family::Grassmannian { k, n }));
        fams.push(Family::SoQuotient { n });
    }
    fams.extend((5..=12).map(|n| Family::OrientedGrassmannian { n }));
    fams.extend((2..=12).map(|n| Family::SpQuotient { n }));
    for f in &fams {
        let got = dimension(&space(*f)?);
        ensure(got == closed_form_dimension(*f), || format!("{f}: dimension {got}"))?;
    }
    Ok(format!(
        "Jacobi {worst_jacobi:.1e}, ad-invariance {worst_inv:.1e}; {face_count} splits; {} dimensions",
        fams.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("Sasaki-Einstein solutions", criterion_1),
        ("spaces without a solution", criterion_2),
        ("Ricci values independent of d", criterion_3),
        ("orbit classification sweep", criterion_4),
        ("contact and Sasaki segments", criterion_5),
        ("numerical oracle agreement", criterion_6),
        ("structural properties", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
