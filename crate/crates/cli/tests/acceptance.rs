//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::f64::consts::TAU;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use convkit_core::cnn::{cnn_equivalence_check, group_convolve_2d, Kernel3x3, LatticeFunction};
use convkit_core::graph::{Graph, GraphShiftSystem, PolynomialFilter, ShiftKind};
use convkit_core::group::{self, FiniteAbelianGroup, GroupSignal};
use convkit_core::lattice::MeetSemilattice;
use convkit_core::multi_shift::MultiShiftSystem;
use convkit_core::numeric::eig_symmetric;
use convkit_core::recovery::{
    matched_distance, product_discrepancy, recover_kernel, verify_idempotents, SpectralOracle,
};
use convkit_core::{CMatrix, Complex64, RMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn complex_signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> RMatrix {
    let v: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
    RMatrix::from_fn(n, n, |i, j| v[i.min(j) * n + i.max(j)])
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RMatrix {
    eig_symmetric(&random_symmetric(rng, n)).unwrap().0
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((i, j, rng.random_range(0.2..3.0)));
            }
        }
    }
    Graph::new(n, false, edges).unwrap()
}

fn fmt(x: f64) -> String {
    format!("{x:.3e}")
}

/// DFT on C_n against the group transform on Z/n, and the group transform
/// against the defining sum.
fn dft_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut gft_gap: f64 = 0.0;
    let mut direct_gap: f64 = 0.0;
    for n in 2..=16 {
        let sys = GraphShiftSystem::build(Graph::directed_cycle(n), ShiftKind::Adjacency).unwrap();
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        for _ in 0..4 {
            let x = complex_signal(&mut rng, n);
            let gft = sys.gft(&x).unwrap();
            let fh = group::fourier(&GroupSignal::new(g.clone(), x.clone()).unwrap());
            let scaled: Vec<_> = fh.values().iter().map(|z| z / (n as f64).sqrt()).collect();
            gft_gap = gft_gap.max(max_diff(&gft, &scaled));
            let direct: Vec<_> = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| {
                            x[j] * Complex64::from_polar(1.0, -TAU * (j * k % n) as f64 / n as f64)
                        })
                        .sum()
                })
                .collect();
            direct_gap = direct_gap.max(max_diff(fh.values(), &direct));
        }
    }
    let worst = gft_gap.max(direct_gap);
    Outcome::new(
        worst <= 1e-9,
        format!(
            "max |GFT - DFT/sqrt(n)| = {}, max |DFT - direct sum| = {}",
            fmt(gft_gap),
            fmt(direct_gap)
        ),
    )
}

fn convolution_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let groups = [vec![8], vec![2, 3], vec![4, 5]];
    let (mut theorem, mut comm, mut assoc, mut l1): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, f64::NEG_INFINITY);
    for k in 0..200 {
        let g = FiniteAbelianGroup::new(groups[k % 3].clone()).unwrap();
        let n = g.size();
        let sig =
            |rng: &mut ChaCha8Rng| GroupSignal::new(g.clone(), complex_signal(rng, n)).unwrap();
        let (f, h, e) = (sig(&mut rng), sig(&mut rng), sig(&mut rng));
        let fh = group::convolve(&f, &h).unwrap();
        let lhs = group::fourier(&fh);
        let rhs: Vec<_> = group::fourier(&f)
            .values()
            .iter()
            .zip(group::fourier(&h).values())
            .map(|(a, b)| a * b)
            .collect();
        theorem = theorem.max(max_diff(lhs.values(), &rhs));
        comm = comm.max(max_diff(
            fh.values(),
            group::convolve(&h, &f).unwrap().values(),
        ));
        let left = group::convolve(&fh, &e).unwrap();
        let right = group::convolve(&f, &group::convolve(&h, &e).unwrap()).unwrap();
        assoc = assoc.max(max_diff(left.values(), right.values()));
        l1 = l1.max(group::l1_norm(&fh) - group::l1_norm(&f) * group::l1_norm(&h));
    }
    let pass = theorem <= 1e-9 && comm <= 1e-9 && assoc <= 1e-9 && l1 <= 1e-9;
    Outcome::new(
        pass,
        format!(
            "theorem {}, commutativity {}, associativity {}, max(|f*g|_1 - |f|_1|g|_1) {}",
            fmt(theorem),
            fmt(comm),
            fmt(assoc),
            fmt(l1)
        ),
    )
}

fn plancherel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let groups = [
        vec![8],
        vec![2, 3],
        vec![4, 5],
        vec![2, 2, 2],
        vec![7],
        vec![3, 3],
    ];
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let g = FiniteAbelianGroup::new(groups[k % groups.len()].clone()).unwrap();
        let n = g.size();
        let f = GroupSignal::new(g, complex_signal(&mut rng, n)).unwrap();
        worst = worst.max(group::plancherel(&f).relative_gap);
    }
    Outcome::new(worst <= 1e-9, format!("max relative gap {}", fmt(worst)))
}

/// Random symmetric shift, scaled to spectral radius one, whose eigenvalues
/// are at least `0.3/n` apart.
fn separated_shift(rng: &mut ChaCha8Rng) -> (GraphShiftSystem, usize) {
    let mut tries = 0;
    loop {
        tries += 1;
        let n = rng.random_range(2..=12);
        let s = random_symmetric(rng, n);
        let (_, values) = eig_symmetric(&s).unwrap();
        let radius = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let gap = values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if radius == 0.0 || gap / radius < 0.3 / n as f64 {
            continue;
        }
        let s = s.map(|v| v / radius).to_complex();
        let sys = GraphShiftSystem::custom(Graph::edgeless(n), s, None).unwrap();
        return (sys, tries);
    }
}

fn polynomial_filters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut fit, mut accept, mut reject): (f64, f64, f64) = (0.0, 0.0, f64::INFINITY);
    let mut failures = Vec::new();
    let mut draws = 0;
    for k in 0..50 {
        let (sys, tries) = separated_shift(&mut rng);
        draws += tries;
        let n = sys.n();
        let x = complex_signal(&mut rng, n);
        match sys.fit_polynomial(&x) {
            Ok(p) => {
                let m = p.eval_matrix(sys.shift()).unwrap();
                fit = fit.max(m.max_abs_diff(&sys.filter_matrix(&x).unwrap()));
            }
            Err(e) => failures.push(format!("shift {k}: {e}")),
        }
        let coeffs: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let pm = PolynomialFilter::from_real(&coeffs)
            .eval_matrix(sys.shift())
            .unwrap();
        let r = sys.is_shift_invariant(&pm, 1e-9).unwrap();
        accept = accept.max(r.commutator);
        if !r.invariant {
            failures.push(format!("shift {k}: polynomial rejected"));
        }
        let noise = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), 0.0)
        });
        let r = sys.is_shift_invariant(&noise, 1e-9).unwrap();
        reject = reject.min(r.commutator);
        if r.invariant || r.commutator <= 1e-3 {
            failures.push(format!("shift {k}: random matrix accepted"));
        }
    }
    let pass = failures.is_empty() && fit <= 1e-6 && accept <= 1e-9 && reject > 1e-3;
    let mut detail = format!(
        "fit residual {}, max commutator of P(S) {}, min commutator of random M {}, {draws} draws for 50 shifts",
        fmt(fit),
        fmt(accept),
        fmt(reject)
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; {}", failures.join("; ")));
    }
    Outcome::new(pass, detail)
}

/// Largest `min(‖k − u‖, ‖k + u‖)` over a one-to-one pairing of the columns.
fn signed_column_distance(recovered: &CMatrix, u: &RMatrix) -> f64 {
    let n = u.cols();
    let mut used = vec![false; n];
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let target = u.column(j);
        let mut best = (f64::INFINITY, usize::MAX);
        for (i, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let k = recovered.column(i);
            let dist = |s: f64| -> f64 {
                k.iter()
                    .zip(&target)
                    .map(|(a, b)| (a - s * b).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            };
            let d = dist(1.0).min(dist(-1.0));
            if d < best.0 {
                best = (d, i);
            }
        }
        if best.1 == usize::MAX {
            return f64::INFINITY;
        }
        used[best.1] = true;
        worst = worst.max(best.0);
    }
    worst
}

fn character_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut dist, mut idem, mut rebuild): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut errors = Vec::new();
    for k in 0..20 {
        let n = rng.random_range(4..=10);
        let u = random_orthogonal(&mut rng, n);
        let oracle = SpectralOracle::new(u.to_complex()).unwrap();
        let seed = rng.random();
        match recover_kernel(&oracle, seed) {
            Ok(kernel) => {
                dist = dist
                    .max(signed_column_distance(kernel.columns(), &u))
                    .max(matched_distance(kernel.columns(), oracle.basis()));
                idem = idem.max(verify_idempotents(&oracle, &kernel).max_deviation);
                rebuild = rebuild.max(product_discrepancy(&oracle, &kernel, 100, seed ^ 0x9e37));
            }
            Err(e) => errors.push(format!("kernel {k}: {e}")),
        }
    }
    let pass = errors.is_empty() && dist <= 1e-6 && idem <= 1e-6 && rebuild <= 1e-6;
    let mut detail = format!(
        "column distance {}, idempotent deviation {}, rebuilt product gap {}",
        fmt(dist),
        fmt(idem),
        fmt(rebuild)
    );
    if !errors.is_empty() {
        detail.push_str(&format!("; {}", errors.join("; ")));
    }
    Outcome::new(pass, detail)
}

fn lattice_diagonalization() -> Outcome {
    let lattices = [
        ("chain of 8", MeetSemilattice::chain(8)),
        ("subsets of {1,2,3}", MeetSemilattice::subsets(3)),
        ("divisors of 36", MeetSemilattice::divisors(36).0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, lat) in &lattices {
        let comm = lat.check_commutation();
        let d = lat.diagonalize_shifts();
        let ids = d.conjugation_identities(lat);
        let held = ids.iter().filter(|&&b| b).count();
        let ok = comm.passed() && held == ids.len() && d.is_inverse_pair();
        pass &= ok;
        parts.push(format!(
            "{name}: {} violations, {held}/{} identities",
            comm.violations.len(),
            ids.len()
        ));
    }
    Outcome::new(pass, parts.join(", "))
}

fn integer_image(rng: &mut ChaCha8Rng) -> LatticeFunction {
    let (w, h) = (rng.random_range(1..=8), rng.random_range(1..=8));
    let values = (0..w * h)
        .map(|_| rng.random_range(-9i32..=9) as f64)
        .collect();
    LatticeFunction::new((0, 0), w, h, values).unwrap()
}

/// `(f∗g)(x) = Σ_y f(y)·g(x − y)` summed over the support of `f`.
fn brute_convolve(f: &LatticeFunction, g: &LatticeFunction, x: i64, y: i64) -> f64 {
    f.support()
        .into_iter()
        .map(|(a, b)| f.get(a, b) * g.get(x - a, y - b))
        .sum()
}

fn cnn_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut disc, mut equi, mut brute): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..50 {
        let image = integer_image(&mut rng);
        let mut kv = [0.0; 9];
        kv.iter_mut()
            .for_each(|v| *v = rng.random_range(-5i32..=5) as f64);
        let kernel = Kernel3x3::new(kv).unwrap();
        disc = disc.max(cnn_equivalence_check(&image, &kernel).unwrap().discrepancy);

        let kf = kernel.to_lattice_function();
        let out = group_convolve_2d(&image, &kf);
        let t = (rng.random_range(-20..=20), rng.random_range(-20..=20));
        let moved = group_convolve_2d(&image.translate(t), &kf);
        equi = equi.max(moved.max_abs_diff(&out.translate(t)));

        let (ox, oy) = out.offset();
        for y in oy - 1..oy + out.height() as i64 + 1 {
            for x in ox - 1..ox + out.width() as i64 + 1 {
                brute = brute.max((out.get(x, y) - brute_convolve(&image, &kf, x, y)).abs());
            }
        }
    }
    Outcome::new(
        disc == 0.0 && equi == 0.0 && brute == 0.0,
        format!("discrepancy {disc}, translation defect {equi}, brute-force defect {brute}"),
    )
}

fn dof_report() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_convkit"))
        .args(["graph", "dof"])
        .output();
    match out {
        Ok(o) => {
            let stdout = String::from_utf8_lossy(&o.stdout);
            let first = stdout.lines().next().unwrap_or("");
            let pass = o.status.success() && first == "polynomial: 2, stencil3x3: 9";
            Outcome::new(pass, format!("`convkit graph dof` printed {first:?}"))
        }
        Err(e) => Outcome::new(false, format!("could not run convkit: {e}")),
    }
}

fn multi_signal(rng: &mut ChaCha8Rng, n: usize, m: usize) -> RMatrix {
    RMatrix::from_fn(n, m, |_, _| rng.random_range(-1.0..1.0))
}

fn multi_shift_characters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (n, m) = (5, 3);
    let kinds = [
        ShiftKind::Laplacian,
        ShiftKind::Adjacency,
        ShiftKind::NormalizedLaplacianSelfLoop,
    ];
    let systems: Vec<_> = kinds
        .iter()
        .map(|&kind| GraphShiftSystem::build(random_graph(&mut rng, n, 0.6), kind).unwrap())
        .collect();
    let ms = MultiShiftSystem::new(systems.clone(), vec![0.5, 0.3, 0.2]).unwrap();

    let mut mult: f64 = 0.0;
    let mut count = 0;
    for _ in 0..100 {
        let (a, b) = (multi_signal(&mut rng, n, m), multi_signal(&mut rng, n, m));
        let ab = ms.multi_convolve(&a, &b).unwrap();
        let (ca, cb, cab) = (
            ms.characters(&a).unwrap(),
            ms.characters(&b).unwrap(),
            ms.characters(&ab).unwrap(),
        );
        count = cab.len();
        for i in 0..cab.len() {
            mult = mult.max((cab[i] - ca[i] * cb[i]).abs());
        }
    }

    let mut round_trip_exact = true;
    let mut gram_min = f64::INFINITY;
    let mut flags = 0;
    for _ in 0..20 {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        round_trip_exact &= ms.phi2(&ms.phi1(&x).unwrap()).unwrap() == x;
        let c = ms.composite_transform(&x).unwrap();
        gram_min = gram_min.min(c.gram_deviation);
        flags += usize::from(c.non_orthogonal);
    }

    // identical systems give an orthogonal composite and must not be flagged
    let same = MultiShiftSystem::new(vec![systems[0].clone(); 3], vec![0.5, 0.3, 0.2]).unwrap();
    let control = same
        .composite_transform(&[1.0, 0.0, -1.0, 2.0, 0.5])
        .unwrap();

    let pass = count == 15
        && mult <= 1e-9
        && round_trip_exact
        && flags == 20
        && gram_min > 1e-6
        && !control.non_orthogonal;
    Outcome::new(
        pass,
        format!(
            "{count} characters, multiplicativity defect {}, phi2(phi1(x)) == x: {round_trip_exact}, \
             flag fired {flags}/20 (min Gram deviation {}), identical systems flagged: {}",
            fmt(mult),
            fmt(gram_min),
            control.non_orthogonal
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "DFT/GSP equivalence",
            Duration::from_secs(1),
            dft_equivalence,
        ),
        (
            "convolution theorem",
            Duration::from_secs(5),
            convolution_theorem,
        ),
        ("Plancherel", Duration::MAX, plancherel),
        (
            "polynomial filters",
            Duration::from_secs(10),
            polynomial_filters,
        ),
        (
            "character recovery",
            Duration::from_secs(10),
            character_recovery,
        ),
        (
            "lattice diagonalization",
            Duration::from_secs(1),
            lattice_diagonalization,
        ),
        ("CNN equivalence", Duration::from_secs(1), cnn_equivalence),
        ("degrees of freedom", Duration::MAX, dof_report),
        (
            "multi-shift characters",
            Duration::MAX,
            multi_shift_characters,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = outcome.pass && in_time;
        failed += usize::from(!pass);
        let budget = if *budget == Duration::MAX {
            String::new()
        } else {
            format!(" of {:.0} s", budget.as_secs_f64())
        };
        println!(
            "criterion {} {name}: {} ({}; {:.3} s{budget})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
        );
    }
    if failed == 0 {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
