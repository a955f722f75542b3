//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hypercert::cli::{parse_poly, validate};
use hypercert::ffield::{fq_factor, fq_field_make, is_irreducible, FqField, FqPoly};
use hypercert::localfield::{base_field, kummer_step, unramified_step, LocalField, LocalPolynomial, Val};
use hypercert::newton::{critical_segments, s_of_mu, SlopeFilter};
use hypercert::ratfunc::PolyX;
use hypercert::reduction::{analyze, case_a_transform, BranchClass, Certificate, CertificateNode, Config};
use hypercert::respoly::build_residue_poly;
use hypercert::Error;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn run_analysis(p: u64, text: &str, config: &Config) -> hypercert::Result<Certificate> {
    let f = parse_poly(text, p)?;
    validate(&f, p)?;
    analyze(p, |k| f.to_local(k), config)
}

fn c1_elliptic() -> Outcome {
    let start = Instant::now();
    let cert = run_analysis(7, "x^3 + x + (2+s)", &Config::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(cert.roots.len() == 1, "expected one root segment, got {}", cert.roots.len());
    let root = &cert.roots[0];
    ensure!(root.sdata.s == [0, 1, 3] && root.sdata.e_s == 1, "root S/e_S {:?}/{}", root.sdata.s, root.sdata.e_s);
    // unit-proportional to t^3 + t + 2: coefficients (1, 4, 0, 4) = 4 * (2, 1, 0, 1)
    let fp = fq_field_make(7, 1).unwrap();
    let got = FqPoly::from_ints(&fp, &root.respoly.coeffs.iter().map(|c| c[0] as i64).collect::<Vec<_>>());
    ensure!(got.monic() == FqPoly::from_ints(&fp, &[2, 1, 0, 1]), "residue polynomial {}", got);
    let factors: Vec<_> = root.factors.iter().map(|f| (f.text.as_str(), f.mult)).collect();
    ensure!(factors == [("t + 1", 1), ("t + 3", 2)], "factors {:?}", factors);
    ensure!(root.children.len() == 1, "children {}", root.children.len());
    let child = &root.children[0];
    ensure!(matches!(root.branch, BranchClass::CaseB { .. }), "root branch {:?}", root.branch);
    ensure!(child.sdata.s == [0, 2] && child.sdata.e_s == 2, "child S/e {:?}/{}", child.sdata.s, child.sdata.e_s);
    ensure!(
        child.respoly.coeffs.len() == 2 && child.branch == BranchClass::BaseCaseLeaf,
        "child residue polynomial {} ({:?})",
        child.respoly.text,
        child.branch
    );
    ensure!(
        (cert.covert_leaf_count, cert.total_bound, cert.depth) == (2, 18, 2),
        "counts {:?}",
        (cert.covert_leaf_count, cert.total_bound, cert.depth)
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("S = {{0,1,3}} -> S1 = {{0,2}}, e = 2; leaves 2, bound 18, depth 2 in {elapsed:.2?}"))
}

fn c2_case_a() -> Outcome {
    let start = Instant::now();
    let text = "x^2 - 2*x + 1 + s";
    let cert = run_analysis(7, text, &Config::default()).map_err(|e| e.to_string())?;
    let root = &cert.roots[0];
    ensure!(root.branch == BranchClass::CaseA { r: 2, beta: vec![1] }, "root branch {:?}", root.branch);
    ensure!(root.children.len() == 1, "children {}", root.children.len());
    let child = &root.children[0];
    ensure!(child.sdata.s == [0, 2] && child.sdata.mu == "1/2", "child {:?} mu {}", child.sdata.s, child.sdata.mu);
    ensure!(child.branch == BranchClass::BaseCaseLeaf && child.max_mult == 1, "child branch {:?}", child.branch);

    // transformed polynomial is a unit multiple of t^2 + s
    let f = parse_poly(text, 7).unwrap();
    let k = base_field(7, 64).unwrap();
    let g0 = f.to_local(&k).unwrap();
    let sd = &critical_segments(&g0, SlopeFilter::All).unwrap()[0];
    let rp = build_residue_poly(&g0, sd).unwrap();
    let (g, meta) = case_a_transform(&g0, sd, &rp).map_err(|e| e.to_string())?;
    ensure!(meta.beta == k.residue_field().one(), "beta {:?}", meta.beta);
    let lc = g.coeff(2);
    let monic: Vec<_> = g.coeffs().iter().map(|c| k.div(c, &lc).unwrap()).collect();
    ensure!(g.coeff(1).is_exact_zero(), "linear coefficient not exact zero");
    ensure!(k.sub(&monic[0], &k.uniformizer()).is_zero_to_precision(), "constant term {}", k.display(&monic[0]));
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("beta = 1, g ~ t^2 + s, S1 = {{0,2}}, mu = 1/2, leaf in {elapsed:.2?}"))
}

fn corpus() -> Vec<(u64, PolyX)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20241015);
    common::corpus(&mut rng, 500)
}

fn c3_degree_law(corpus: &[(u64, PolyX)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut built = 0;
    for (idx, (p, f)) in corpus.iter().enumerate() {
        let k = base_field(*p, 64).unwrap();
        let g = f.to_local(&k).unwrap();
        for sd in critical_segments(&g, SlopeFilter::All).map_err(|e| format!("#{idx}: {e}"))? {
            let rp = build_residue_poly(&g, &sd).map_err(|e| format!("#{idx}: {e}"))?;
            built += 1;
            let (lo, hi) = (sd.s[0], *sd.s.last().unwrap());
            let deg = rp.poly.deg();
            ensure!(deg == (hi - lo) / sd.e_s as usize && deg <= hi, "#{idx} {f}: degree {deg} for S {:?}", sd.s);
            ensure!(k.residue_field().is_one(&rp.poly.coeff(0)), "#{idx} {f}: constant term");
            for _ in 0..20 {
                let mut moved = sd.clone();
                moved.c_s = k.mul(&sd.c_s, &common::random_unit(&k, &mut rng));
                let rp2 = build_residue_poly(&g, &moved).map_err(|e| format!("#{idx}: {e}"))?;
                ensure!(rp2.mult_profile == rp.mult_profile, "#{idx} {f}: profile changed under rescaling");
            }
        }
        // every residue polynomial built during the recursion
        let cert = analyze(*p, |k| f.to_local(k), &Config::default()).map_err(|e| format!("#{idx} {f}: {e}"))?;
        for n in cert.nodes() {
            built += 1;
            let (lo, hi) = (n.sdata.s[0], *n.sdata.s.last().unwrap());
            let deg = n.respoly.coeffs.len() - 1;
            ensure!(deg == (hi - lo) / n.sdata.e_s as usize && deg <= hi, "#{idx} {f}: node degree {deg}");
            let c0 = &n.respoly.coeffs[0];
            ensure!(c0[0] == 1 && c0[1..].iter().all(|&d| d == 0), "#{idx} {f}: node constant term {c0:?}");
        }
    }
    Ok(format!("{} inputs, {built} residue polynomials, 20 rescalings per root segment", corpus.len()))
}

fn c4_hull_oracle(corpus: &[(u64, PolyX)]) -> Outcome {
    let mut probes = 0;
    for (idx, (p, f)) in corpus.iter().enumerate() {
        let k = base_field(*p, 64).unwrap();
        let g = f.to_local(&k).unwrap();
        let segs = critical_segments(&g, SlopeFilter::All).map_err(|e| e.to_string())?;
        for sd in &segs {
            ensure!(s_of_mu(&g, sd.mu).unwrap() == sd.s, "#{idx} {f}: oracle disagrees at mu = {}", sd.mu);
        }
        for a in -12..=12i64 {
            for b in 1..=12i64 {
                let mu = Rational64::new(a, b);
                if segs.iter().any(|s| s.mu == mu) {
                    continue;
                }
                probes += 1;
                let n = s_of_mu(&g, mu).unwrap().len();
                ensure!(n <= 1, "#{idx} {f}: omitted slope {mu} has |S| = {n}");
            }
        }
    }
    Ok(format!("{} inputs, {probes} omitted slopes probed", corpus.len()))
}

fn check_descent(n: &CertificateNode) -> Result<(), String> {
    for c in &n.children {
        ensure!(c.measure() < n.measure(), "measure {:?} -> {:?}", n.measure(), c.measure());
        check_descent(c)?;
    }
    Ok(())
}

fn c5_termination(corpus: &[(u64, PolyX)]) -> Outcome {
    let start = Instant::now();
    let mut nodes = 0;
    let mut deepest = 0;
    let mut ramified = 0;
    // the random corpus rarely recurses; clustered roots force deeper trees
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let clustered: Vec<_> = (0..200).map(|_| common::clustered_input(&mut rng)).collect();
    for (idx, (p, f)) in corpus.iter().chain(&clustered).enumerate() {
        let cert = analyze(*p, |k| f.to_local(k), &Config::default()).map_err(|e| format!("#{idx} {f}: {e}"))?;
        let n = f.degree().unwrap();
        ensure!(cert.depth <= 2 * n + 1, "#{idx} {f}: depth {} for degree {n}", cert.depth);
        for r in &cert.roots {
            check_descent(r).map_err(|e| format!("#{idx} {f}: {e}"))?;
        }
        nodes += cert.nodes().len();
        ramified += cert.nodes().iter().filter(|n| n.field.ramification > 1 || n.field.residue_degree > 1).count();
        deepest = deepest.max(cert.depth);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "corpus took {elapsed:?}");
    Ok(format!(
        "{} + {} clustered inputs, {nodes} nodes ({ramified} in proper extensions), max depth {deepest}, {elapsed:.2?}",
        corpus.len(),
        clustered.len()
    ))
}

/// Towers with residue degree and ramification at most four.
fn towers(rng: &mut ChaCha8Rng) -> Vec<(Arc<LocalField>, String)> {
    let mut out = vec![];
    let mut kummer_checks = 0;
    for &p in &[5u64, 7, 11] {
        let base = base_field(p, 24).unwrap();
        out.push((base.clone(), format!("F_{p}((s))")));
        for &d in &[2usize, 4] {
            let r = base.residue_field().clone();
            let q = loop {
                let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..p as i64)).collect();
                c.push(1);
                let q = FqPoly::from_ints(&r, &c);
                if is_irreducible(&q).unwrap() {
                    break q;
                }
            };
            let (k1, emb, alpha) = unramified_step(&base, &q).unwrap();
            let q_up = LocalPolynomial::new(&k1, q.coeffs().iter().map(|c| emb.apply(&base.lift(c)).unwrap()).collect());
            assert!(q_up.eval(&alpha).is_exact_zero(), "Q(alpha) is not exactly zero");
            out.push((k1.clone(), format!("F_{p}^{d}")));
            for &e in &[2u64, 3, 4] {
                if e % p == 0 || d * e as usize > 8 {
                    continue;
                }
                // u = s * unit, so the relation is a genuine series
                let u = k1.mul(&k1.uniformizer(), &common::random_unit(&k1, rng));
                let (k2, emb2, _) = kummer_step(&k1, e, &u).unwrap();
                let steps = k2.steps();
                let hypercert::localfield::ExtensionStep::Kummer { relation, .. } = steps.last().unwrap() else {
                    panic!("last step is not ramified");
                };
                let lhs = k2.pow(&k2.uniformizer(), e as i64).unwrap();
                let diff = k2.sub(&lhs, &emb2.apply(relation).unwrap());
                assert!(diff.is_zero_to_precision(), "Pi^e - g0 has a nonzero digit");
                kummer_checks += 1;
                out.push((k2, format!("F_{p}^{d}, e = {e}")));
            }
        }
        // ramification without residue extension
        let u = base.inv(&base.add(&base.uniformizer(), &base.shift(&base.one(), 2))).unwrap();
        let (k3, _, _) = kummer_step(&base, 4, &u).unwrap();
        out.push((k3, format!("F_{p}((s)), e = 4")));
    }
    assert!(kummer_checks > 0);
    out
}

fn c6_tower_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fields = towers(&mut rng);
    let pairs = 10_000;
    let mut ultrametric_checked = 0;
    for i in 0..pairs {
        let (k, name) = &fields[i % fields.len()];
        let x = common::random_element(k, &mut rng);
        let y = common::random_element(k, &mut rng);
        let (vx, vy) = (k.val(&x).unwrap(), k.val(&y).unwrap());
        let vxy = k.val(&k.mul(&x, &y)).map_err(|e| format!("{name}: {e}"))?;
        let expected = match (vx, vy) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        };
        ensure!(vxy == expected, "{name}: v(xy) = {vxy} but v(x) + v(y) = {expected}");
        match k.val(&k.add(&x, &y)) {
            Ok(v) => {
                ultrametric_checked += 1;
                ensure!(v >= vx.min(vy), "{name}: v(x+y) = {v} below min({vx}, {vy})");
            }
            // cancellation below the known precision: the bound still holds for what is known
            Err(Error::PrecisionExhausted(_)) => {
                let s = k.add(&x, &y);
                let floor = Val::Finite(Rational64::new(s.known_to().unwrap(), k.e_abs() as i64));
                ensure!(floor >= vx.min(vy), "{name}: cancelled sum known below min valuation");
            }
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!("{pairs} pairs over {} fields ({ultrametric_checked} determinate sums); Kummer and unramified checks", fields.len()))
}

fn trial_division(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let field = f.field().clone();
    let mut rest = f.monic();
    let mut out = vec![];
    for a in field.elements() {
        let lin = FqPoly::linear(&field, &a);
        let mut m = 0;
        while rest.deg() > 0 && field.is_zero(&rest.eval(&a)) {
            rest = rest.div_exact(&lin).unwrap();
            m += 1;
        }
        if m > 0 {
            out.push((lin, m));
        }
    }
    if rest.deg() > 0 {
        out.push((rest, 1));
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    out
}

fn c7_factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fields: Vec<Arc<FqField>> = vec![];
    for (p, kmax) in [(2u64, 8usize), (3, 5), (5, 3), (7, 3), (11, 2), (13, 2), (17, 2), (19, 1), (101, 1), (337, 1)] {
        for k in 1..=kmax {
            if (p as u128).pow(k as u32) <= 343 {
                fields.push(fq_field_make(p, k).unwrap());
            }
        }
    }
    let mut small = 0;
    for i in 0..1000 {
        let field = &fields[i % fields.len()];
        let deg = rng.gen_range(1..=8);
        let mut coeffs: Vec<_> = (0..deg).map(|_| field.random(&mut rng)).collect();
        let mut lc = field.random(&mut rng);
        while field.is_zero(&lc) {
            lc = field.random(&mut rng);
        }
        coeffs.push(lc.clone());
        // sometimes force repeated factors
        let mut f = FqPoly::new(field, coeffs);
        if rng.gen_bool(0.3) {
            let g = FqPoly::new(field, vec![field.random(&mut rng), field.one()]);
            f = f.mul(&g).mul(&g);
        }
        let factors = fq_factor(&f).map_err(|e| e.to_string())?;
        let mut prod = FqPoly::constant(field, f.lc());
        for (q, m) in &factors {
            ensure!(q.is_monic() && is_irreducible(q).unwrap(), "{f} over {field}: factor {q} not monic irreducible");
            prod = prod.mul(&q.pow(*m as u64));
        }
        ensure!(prod == f, "{f} over {field}: product of factors is {prod}");
        if f.deg() <= 3 {
            small += 1;
            ensure!(trial_division(&f) == factors, "{f} over {field}: disagrees with trial division");
        }
    }
    Ok(format!("1000 polynomials over {} fields, {small} checked by trial division", fields.len()))
}

fn c8_precision() -> Outcome {
    let text = "x^3 + x + (2+s)";
    let reference = run_analysis(7, text, &Config::default()).map_err(|e| e.to_string())?;
    let tight = Config { precision: 8, max_precision: 8 };
    let low = match run_analysis(7, text, &tight) {
        Ok(c) => {
            ensure!(c.without_precision() == reference.without_precision(), "certificate at precision 8 differs");
            "identical certificate"
        }
        Err(e) if e.exit_code() == 3 => "precision exhausted",
        Err(e) => return Err(format!("unexpected error {e}")),
    };
    let ladder = Config { precision: 8, ..Config::default() };
    let up = run_analysis(7, text, &ladder).map_err(|e| format!("ladder failed: {e}"))?;
    ensure!(up.without_precision() == reference.without_precision(), "ladder certificate differs");

    // the same through the binary, checking the exit code
    let bin = env!("CARGO_BIN_EXE_hypercert");
    let out = Command::new(bin)
        .args(["analyze", "-p", "7", "-f", text, "--precision", "8", "--max-precision", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    ensure!(code == 0 || code == 3, "binary exited with {code}");
    let out = Command::new(bin).args(["analyze", "-p", "7", "-f", text, "--precision", "8"]).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "binary with the default ladder exited with {:?}", out.status.code());
    Ok(format!("precision 8 alone: {low}; ladder from 8 succeeds with the same certificate"))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 elliptic certificate", Box::new(c1_elliptic)),
        ("2 case-a pipeline", Box::new(c2_case_a)),
        ("3 residue degree bound", Box::new(|| c3_degree_law(&corpus))),
        ("4 hull oracle", Box::new(|| c4_hull_oracle(&corpus))),
        ("5 termination and descent", Box::new(|| c5_termination(&corpus))),
        ("6 tower arithmetic", Box::new(c6_tower_axioms)),
        ("7 factorization", Box::new(c7_factorization)),
        ("8 precision robustness", Box::new(c8_precision)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panic: {:?}", e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())))));
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
