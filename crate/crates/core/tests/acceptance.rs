//! Acceptance gate: every criterion at zero tolerance, one PASS/FAIL line
//! each. Homology, Smith forms and face equations are re-derived here by
//! naive `i128` elimination, independent of the library's algorithms.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use skernel::chain::{hom_complex, homology, sigma_tower_report, smith, ChainComplex, HomologyGroup, IntMatrix};
use skernel::hconstr::{cylinder, homotopy_pushout, skeleton_pushout_check, weq_certificate, wrap};
use skernel::random::{self, case_rng, ComplexShape, SpaceShape};
use skernel::simpab::{bar_b, check_kn, check_nk, check_smash_monoidal, dold_kan_k, ez_maps, horn_filler, normalize_n, SimplicialAbGroup};
use skernel::simpset::chains::normalized_chains_with;
use skernel::simpset::groupoid::groupoid_presentation;
use skernel::simpset::standard::{standard_space, StandardSpace};
use skernel::simpset::{smash, suspension, SimplicialMap, SimplicialSet};
use skernel::suite::{check_pushout_case, pushout_corpus};

type Verdict = Result<String, String>;

const SEED: u64 = 0;

// ------------------------------------------------------------------ oracle

type Mat = Vec<Vec<i128>>;

fn to_mat(m: &IntMatrix) -> Mat {
    m.to_rows_i64()
        .expect("entries fit in i64")
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Nonzero invariant factors by pivoting on the smallest entry until the
/// pivot divides everything left in the block.
fn naive_factors(m: &Mat, cols: usize) -> Vec<i128> {
    let mut a = m.clone();
    let rows = a.len();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                for j in t..cols {
                    a[t][j] += a[i][j];
                }
                continue;
            }
            out.push(p.abs());
            break;
        }
    }
    out
}

fn factors(m: &IntMatrix) -> Vec<i128> {
    naive_factors(&to_mat(m), m.cols())
}

/// `(free rank, torsion orders)` of `H_n`.
fn oracle_h(c: &ChainComplex, n: i64) -> (usize, Vec<i128>) {
    let out = factors(&c.d(n)).len();
    let inc = factors(&c.d(n + 1));
    let torsion = inc.iter().copied().filter(|&v| v > 1).collect();
    (c.rank(n) - out - inc.len(), torsion)
}

fn as_pair(h: &HomologyGroup) -> (usize, Vec<i128>) {
    (h.free_rank, h.torsion_i64().into_iter().map(i128::from).collect())
}

fn reduced(x: &SimplicialSet, n: i64) -> (usize, Vec<i128>) {
    oracle_h(&normalized_chains_with(x, true), n)
}

fn free(r: usize) -> (usize, Vec<i128>) {
    (r, Vec::new())
}

/// Free complexes over `Z` are classified by their ranks and the
/// invariant factors of every differential.
fn same_free_complex(a: &ChainComplex, b: &ChainComplex, lo: i64, hi: i64) -> bool {
    (lo..=hi).all(|n| a.rank(n) == b.rank(n) && factors(&a.d(n)) == factors(&b.d(n)))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{} took {:.2?} (limit {:?})", what, t, limit))
}

fn sphere(i: usize) -> SimplicialSet {
    standard_space(StandardSpace::Sphere(i)).expect("sphere")
}

// --------------------------------------------------------------- criteria

fn dold_kan() -> Verdict {
    let start = Instant::now();
    for i in 0..50 {
        let c = random::complex(&mut case_rng(SEED, "acceptance dold-kan C", i), ComplexShape::SMALL);
        ensure(lift(check_nk(&c, 4))?, || format!("case {}: N(K(C)) → C not an isomorphism", i))?;
        let nk = normalize_n(&dold_kan_k(&c, 4));
        ensure(same_free_complex(&nk, &c, -1, 5), || format!("case {}: N(K(C)) and C have different invariants", i))?;
    }
    for i in 0..50 {
        let a = random::group(&mut case_rng(SEED, "acceptance dold-kan A", i), ComplexShape::SMALL, 3);
        ensure(lift(check_kn(&a))?, || format!("case {}: K(N(A)) → A not an isomorphism", i))?;
        let na = normalize_n(&a);
        for n in 0..=3 {
            let expect: usize = (0..=n).map(|k| binom(n, k) * na.rank(k as i64)).sum();
            ensure(a.rank(n) == expect, || format!("case {}: rank A_{} is not Σ C(n,k) rank N_k", i, n))?;
        }
    }
    within(start, Duration::from_secs(30), "50 + 50 round trips")?;
    Ok(format!("50 + 50 round trips in {:.2?}", start.elapsed()))
}

fn bar_shift() -> Verdict {
    for i in 0..25 {
        let a = random::group(&mut case_rng(SEED, "acceptance bar", i), ComplexShape { max_deg: 2, max_rank: 2, bound: 3 }, 4);
        let (na, nb) = (normalize_n(&a), normalize_n(&bar_b(&a)));
        for n in 0..=3 {
            let expect = if n == 0 { free(0) } else { oracle_h(&na, n - 1) };
            ensure(oracle_h(&nb, n) == expect, || format!("case {}: H_{}(N B A) = {:?}, expected {:?}", i, n, oracle_h(&nb, n), expect))?;
            ensure(as_pair(&homology(&nb, n)) == expect, || format!("case {}: library H_{}(N B A) disagrees with the oracle", i, n))?;
        }
    }
    let bbz = normalize_n(&bar_b(&bar_b(&SimplicialAbGroup::constant(1, 4))));
    for n in 0..=3 {
        let expect = free(usize::from(n == 2));
        ensure(oracle_h(&bbz, n) == expect, || format!("H_{}(N B B Z) = {:?}", n, oracle_h(&bbz, n)))?;
    }
    Ok("25 groups, D = 4; B B Z = Z[2]".into())
}

fn eilenberg_zilber() -> Verdict {
    let shape = ComplexShape { max_deg: 1, max_rank: 2, bound: 3 };
    let mut torsion_free = 0;
    for i in 0..25 {
        let mut rng = case_rng(SEED, "acceptance ez", i);
        let a = random::group(&mut rng, shape, 4);
        let b = random::group(&mut rng, shape, 4);
        let ez = lift(ez_maps(&a, &b))?;
        for n in 0..=4 {
            let (s, w) = (ez.shuffle.component(n), ez.aw.component(n));
            let prod = mat_mul(&to_mat(&w), &to_mat(&s), s.rows(), s.cols());
            let id = (0..s.cols()).all(|r| (0..s.cols()).all(|c| prod[r][c] == i128::from(r == c)));
            ensure(w.rows() == s.cols() && id, || format!("case {}: AW∘shuffle ≠ id in degree {}", i, n))?;
        }
        let (na, nb, nab) = (normalize_n(&a), normalize_n(&b), normalize_n(&a.tensor(&b)));
        let ha: Vec<_> = (0..=4).map(|k| oracle_h(&na, k)).collect();
        let hb: Vec<_> = (0..=4).map(|k| oracle_h(&nb, k)).collect();
        if ha.iter().chain(&hb).any(|h| !h.1.is_empty()) {
            continue;
        }
        torsion_free += 1;
        for n in 0..=3usize {
            let expect: usize = (0..=n).map(|k| ha[k].0 * hb[n - k].0).sum();
            ensure(oracle_h(&nab, n as i64) == free(expect), || format!("case {}: H_{}(N(A⊗B)) is not Z^{}", i, n, expect))?;
        }
    }
    ensure(torsion_free > 0, || "no torsion-free instance drawn".into())?;
    Ok(format!("25 pairs, Künneth on {} torsion-free", torsion_free))
}

fn wrapping() -> Verdict {
    for i in 0..25 {
        let x = random::space(&mut case_rng(SEED, "acceptance wrap", i), SpaceShape::SMALL, true);
        let w = lift(wrap(&x, 4))?;
        let cert = lift(weq_certificate(&w.counit, 3))?;
        ensure(cert.pass, || format!("case {}: certificate {}", i, cert.to_json()))?;
        let gw = groupoid_presentation(&w.object).transport(&w.counit).canonical();
        ensure(gw == groupoid_presentation(&x).canonical(), || format!("case {}: groupoids differ", i))?;
        for n in 0..=2 {
            ensure(reduced(&w.object, n) == reduced(&x, n), || format!("case {}: reduced H_{} of Wr(X) differs", i, n))?;
        }
        for n in 0..3 {
            let r = lift(skeleton_pushout_check(&x, n, 4))?;
            ensure(r.isomorphic, || format!("case {}: skeletal square n = {} fails", i, n))?;
        }
    }
    Ok("25 pointed sets, D = 4, range 3".into())
}

fn smash_and_suspension() -> Verdict {
    for e in 0..3 {
        for f in 0..3 {
            ensure(lift(check_smash_monoidal(&sphere(e), &sphere(f), 3))?, || format!("S^{} ∧ S^{}", e, f))?;
            let s = lift(smash(&sphere(e), &sphere(f)))?.object;
            for n in 0..=(e + f + 1) as i64 {
                ensure(reduced(&s, n) == free(usize::from(n == (e + f) as i64)), || format!("H~_{}(S^{} ∧ S^{})", n, e, f))?;
            }
        }
    }
    for f in 0..3 {
        for i in 0..3 {
            let x = lift(suspension(&sphere(f), i))?;
            for n in 0..=(f + i + 1) as i64 {
                ensure(reduced(&x, n) == reduced(&sphere(f), n - i as i64), || format!("Σ^{} S^{} in degree {}", i, f, n))?;
            }
        }
    }
    for k in 0..5 {
        let x = random::space(&mut case_rng(SEED, "acceptance suspension", k), SpaceShape { vertices: 2, edges: 3, triangles: 1 }, true);
        for i in 1..=2 {
            let s = lift(suspension(&x, i))?;
            for n in 0..=(2 + i + 1) as i64 {
                ensure(reduced(&s, n) == reduced(&x, n - i as i64), || format!("random case {}: Σ^{} in degree {}", k, i, n))?;
            }
        }
    }
    Ok("9 smash pairs, 9 sphere and 10 random suspensions".into())
}

fn pushouts() -> Verdict {
    let corpus = pushout_corpus();
    for c in &corpus {
        lift(check_pushout_case(c))?;
        let cyl = lift(cylinder(&c.diagram.f))?;
        let back = lift(cyl.retraction.compose_after(&cyl.from_l))?;
        ensure(back == SimplicialMap::identity(&c.diagram.l), || format!("{}: retraction not a strict identity", c.name))?;
        let h = lift(homotopy_pushout(&c.diagram))?;
        for (n, want) in c.reduced_homology.iter().enumerate() {
            ensure(reduced(&h.object, n as i64) == as_pair(want), || format!("{}: oracle H~_{} differs", c.name, n))?;
        }
    }
    let first = &corpus[0];
    ensure(first.name == "point <- S0 -> point", || "corpus order".into())?;
    let h = lift(homotopy_pushout(&first.diagram))?;
    ensure(reduced(&h.object, 1) == free(1), || "H~_1 of point ← S0 → point is not Z".into())?;
    Ok(format!("{} diagrams; H~_1(point ← S0 → point) = Z", corpus.len()))
}

fn tower() -> Verdict {
    for i in 0..100 {
        let mut rng = case_rng(SEED, "acceptance tower", i);
        let (k, l) = (random::complex(&mut rng, ComplexShape::SMALL), random::complex(&mut rng, ComplexShape::SMALL));
        let r = sigma_tower_report(&k, &l);
        ensure(r.lim1_vanishes, || format!("case {}: lim^1 ≠ 0", i))?;
        ensure(r.exactness_verified, || format!("case {}: exactness not verified", i))?;
        let h0 = oracle_h(&hom_complex(&k, &l), 0);
        ensure(as_pair(&r.hom_full) == h0 && as_pair(&r.limit_group) == h0, || format!("case {}: H0 Hom disagrees with the oracle", i))?;
    }
    Ok("100 pairs".into())
}

fn smith_forms() -> Verdict {
    use rand::RngExt;
    let start = Instant::now();
    for i in 0..1000 {
        let mut rng = case_rng(SEED, "acceptance snf", i);
        let (rows, cols) = (rng.random_range(1..=6usize), rng.random_range(1..=6usize));
        let m = random::matrix(&mut rng, rows, cols, 9);
        let s = smith(&m);
        let (u, mm, v, d) = (to_mat(&s.u), to_mat(&m), to_mat(&s.v), to_mat(&s.d));
        ensure(mat_mul(&mat_mul(&u, &mm, rows, cols), &v, cols, cols) == d, || format!("case {}: U·M·V ≠ D", i))?;
        let inv = |a: &Mat, b: &IntMatrix, n: usize| mat_mul(a, &to_mat(b), n, n) == (0..n).map(|r| (0..n).map(|c| i128::from(r == c)).collect()).collect::<Mat>();
        ensure(inv(&u, &s.u_inv, rows) && inv(&v, &s.v_inv, cols), || format!("case {}: transform not invertible over Z", i))?;
        let diag: Vec<i128> = (0..rows.min(cols)).map(|k| d[k][k]).take_while(|&x| x != 0).collect();
        let off_diag = (0..rows).all(|r| (0..cols).all(|c| r == c || d[r][c] == 0));
        ensure(off_diag && diag.iter().all(|&x| x > 0), || format!("case {}: D not a nonnegative diagonal", i))?;
        ensure(diag.windows(2).all(|w| w[1] % w[0] == 0), || format!("case {}: divisibility fails", i))?;
        ensure(diag == naive_factors(&mm, cols), || format!("case {}: factors {:?} vs oracle {:?}", i, diag, naive_factors(&mm, cols)))?;
    }
    within(start, Duration::from_secs(10), "1000 matrices")?;
    Ok(format!("1000 matrices in {:.2?}", start.elapsed()))
}

fn horns() -> Verdict {
    for i in 0..200 {
        let mut rng = case_rng(SEED, "acceptance horns", i);
        let a = random::group(&mut rng, ComplexShape::SMALL, 3);
        let (n, k, faces) = random::horn(&mut rng, &a, 3);
        let w = lift(horn_filler(&a, n, k, &faces))?;
        let wv: Mat = w.iter().map(|x| vec![i128::from(i64::try_from(x).expect("small filler"))]).collect();
        let idx = (0..=n).filter(|&j| j != k);
        for (f, j) in faces.iter().zip(idx) {
            let got = mat_mul(&to_mat(a.face(n, j)), &wv, w.len(), 1);
            let want: Mat = f.iter().map(|x| vec![i128::from(i64::try_from(x).expect("small face"))]).collect();
            ensure(got == want, || format!("case {}: face {} of the Λ^{}_{} filler", i, j, n, k))?;
        }
    }
    Ok("200 horns".into())
}

fn suite_determinism() -> Verdict {
    let start = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_skernel"))
            .args(["suite", "--seed", "0", "--size", "small"])
            .env_remove("SKERNEL_THREADS")
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    ensure(first.status.code() == Some(0), || format!("exit status {:?}", first.status.code()))?;
    let second = run()?;
    ensure(second.status.code() == Some(0), || format!("second exit status {:?}", second.status.code()))?;
    ensure(first.stdout == second.stdout, || "reports differ between runs".into())?;
    within(start, Duration::from_secs(120), "two suite runs")?;
    let each = start.elapsed() / 2;
    ensure(each < Duration::from_secs(60), || format!("one run took {:.2?}", each))?;
    Ok(format!("exit 0, byte-identical, {:.2?} per run", each))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("Dold-Kan round trips", dold_kan),
        ("bar construction shifts homology", bar_shift),
        ("Eilenberg-Zilber and Künneth", eilenberg_zilber),
        ("wrapping functor", wrapping),
        ("reduced free functor and suspension", smash_and_suspension),
        ("homotopy pushouts and cylinders", pushouts),
        ("truncation tower", tower),
        ("Smith normal form", smith_forms),
        ("horn filling", horns),
        ("deterministic suite", suite_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {} ({})", k + 1, name, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {}: {}", k + 1, name, why);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
