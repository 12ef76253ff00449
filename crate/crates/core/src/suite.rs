//! The seeded verification suite: every invariant of the kernel re-checked
//! on randomized and fixed instances, reported in a fixed order.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::chain::{
    homology, int, invariant_factors, shift, sigma_tower_report, smith, tensor, ChainComplex, HomologyGroup, Int,
    IntMatrix,
};
use crate::error::{Error, Result};
use crate::hconstr::{cylinder, homotopy_pushout, skeleton_pushout_check, weq_certificate, wrap, wrap_triangle_check, PushoutDiagram};
use crate::random::{self, ComplexShape, Rng, SpaceShape};
use crate::simpab::{
    bar_b, check_kn, check_nk, check_smash_monoidal, dold_kan_k, ez_maps, free_reduced_z, homotopy_groups, horn_filler,
    normalize_n, SimplicialAbGroup,
};
use crate::simpset::chains::{normalized_chains_with, unnormalized_chains_with};
use crate::simpset::groupoid::{groupoid_presentation, pi0};
use crate::simpset::standard::{standard_space, StandardSpace};
use crate::simpset::{pi1_presentation, product, pushout_inj, suspension, wedge, Cell, SimplicialMap, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Size {
    Small,
    Medium,
}

impl Size {
    fn scale(self, small: usize, medium: usize) -> usize {
        match self {
            Size::Small => small,
            Size::Medium => medium,
        }
    }
}

impl std::str::FromStr for Size {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Size::Small),
            "medium" => Ok(Size::Medium),
            other => Err(Error::Parameter(format!("size must be small or medium, got {:?}", other))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub size: Size,
    /// Worker threads; 0 runs every case on the calling thread.
    pub threads: usize,
    /// Corrupts one differential so that the Dold–Kan check must fail.
    pub inject_fault: bool,
}

impl SuiteOptions {
    pub fn new(seed: u64, size: Size) -> Self {
        SuiteOptions { seed, size, threads: 0, inject_fault: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub label: &'static str,
    pub cases: usize,
    /// `(case index, reason)`, sorted by index.
    pub failures: Vec<(usize, String)>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub size: Size,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Line-oriented report; contains nothing that depends on timing or
    /// thread count.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let size = match self.size {
            Size::Small => "small",
            Size::Medium => "medium",
        };
        writeln!(out, "suite seed={} size={}", self.seed, size).unwrap();
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{} {} [{} cases]", verdict, c.label, c.cases).unwrap();
            for (i, why) in c.failures.iter().take(3) {
                writeln!(out, "    case {}: {}", i, why).unwrap();
            }
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        writeln!(out, "summary: {}/{} checks passed", ok, self.checks.len()).unwrap();
        out
    }
}

struct Ctx {
    opts: SuiteOptions,
    pool: Option<rayon::ThreadPool>,
}

type CaseFn<'a> = dyn Fn(&mut Rng, usize) -> std::result::Result<(), String> + Sync + 'a;

impl Ctx {
    fn run(&self, label: &'static str, count: usize, case: &CaseFn<'_>) -> CheckResult {
        let one = |i: usize| {
            let mut rng = random::case_rng(self.opts.seed, label, i);
            case(&mut rng, i).err().map(|e| (i, e))
        };
        let failures: Vec<(usize, String)> = match &self.pool {
            None => (0..count).filter_map(one).collect(),
            Some(pool) => pool.install(|| (0..count).into_par_iter().filter_map(one).collect()),
        };
        CheckResult { label, cases: count, failures }
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ------------------------------------------------------------------ checks

fn check_snf(ctx: &Ctx) -> CheckResult {
    ctx.run("Smith normal form: D = U·M·V, U and V unimodular, d1 | d2 | ...", ctx.opts.size.scale(300, 1000), &|rng, _| {
        let rows = rand_dim(rng, 1, 6);
        let cols = rand_dim(rng, 1, 6);
        let m = random::matrix(rng, rows, cols, 9);
        let s = smith(&m);
        ensure(&(&s.u * &m) * &s.v == s.d, || format!("U·M·V ≠ D for {}×{}", rows, cols))?;
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), || "transform not unimodular".into())?;
        ensure((&s.u * &s.u_inv).is_identity() && (&s.v * &s.v_inv).is_identity(), || "stored inverse is wrong".into())?;
        let f = s.invariant_factors();
        ensure(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || "divisibility chain broken".into())?;
        ensure(f == invariant_factors(&m), || "transform-free factors disagree".into())
    })
}

fn rand_dim(rng: &mut Rng, lo: usize, hi: usize) -> usize {
    use rand::RngExt;
    rng.random_range(lo..=hi)
}

fn check_shift(ctx: &Ctx) -> CheckResult {
    ctx.run("shift: H_n(C[p]) = H_(n-p)(C), C[p][-p] = C", ctx.opts.size.scale(50, 150), &|rng, _| {
        let c = random::complex(rng, ComplexShape::SMALL);
        for p in -2..=2 {
            let s = shift(&c, p);
            for n in c.degrees() {
                ensure(homology(&s, n + p) == homology(&c, n), || format!("degree {} shift {}", n, p))?;
            }
            ensure(shift(&s, -p) == c, || format!("shift {} does not undo", p))?;
        }
        Ok(())
    })
}

fn check_kunneth_complexes(ctx: &Ctx) -> CheckResult {
    ctx.run("tensor of complexes: Kunneth formula on homology", ctx.opts.size.scale(40, 120), &|rng, _| {
        let shape = ComplexShape { max_deg: 2, max_rank: 2, bound: 3 };
        let (a, b) = (random::complex(rng, shape), random::complex(rng, shape));
        let t = tensor(&a, &b);
        for n in t.degrees() {
            ensure(homology(&t, n) == kunneth(&a, &b, n), || format!("degree {}", n))?;
        }
        Ok(())
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `⊕_{i+j=n} H_i⊗H_j ⊕ ⊕_{i+j=n−1} Tor(H_i, H_j)`.
pub fn kunneth_groups(ha: impl Fn(i64) -> HomologyGroup, hb: impl Fn(i64) -> HomologyGroup, lo: (i64, i64), hi: (i64, i64), n: i64) -> HomologyGroup {
    let mut free = 0;
    let mut orders: Vec<i64> = Vec::new();
    for i in lo.0..=hi.0 {
        for (j, tor) in [(n - i, false), (n - 1 - i, true)] {
            if j < lo.1 || j > hi.1 {
                continue;
            }
            let (x, y) = (ha(i), hb(j));
            let (tx, ty) = (x.torsion_i64(), y.torsion_i64());
            if !tor {
                free += x.free_rank * y.free_rank;
                for _ in 0..x.free_rank {
                    orders.extend(&ty);
                }
                for _ in 0..y.free_rank {
                    orders.extend(&tx);
                }
            }
            for p in &tx {
                for q in &ty {
                    orders.push(gcd(*p, *q));
                }
            }
        }
    }
    let orders: Vec<Int> = orders.into_iter().filter(|&o| o > 1).map(int).collect();
    HomologyGroup::from_cyclic_orders(free, &orders)
}

fn kunneth(a: &ChainComplex, b: &ChainComplex, n: i64) -> HomologyGroup {
    kunneth_groups(|i| homology(a, i), |j| homology(b, j), (a.min_deg(), b.min_deg()), (a.max_deg(), b.max_deg()), n)
}

fn check_tower(ctx: &Ctx) -> CheckResult {
    ctx.run("truncation tower: lim^1 = 0 and Hom(K, L) = lim Hom(sigma<=n K, L)", ctx.opts.size.scale(100, 250), &|rng, _| {
        let shape = ComplexShape { max_deg: 3, max_rank: 3, bound: 3 };
        let (k, l) = (random::complex(rng, shape), random::complex(rng, shape));
        let r = sigma_tower_report(&k, &l);
        ensure(r.lim1_vanishes, || "lim^1 not shown to vanish".into())?;
        ensure(r.exactness_verified, || "restriction to the limit is not an isomorphism".into())
    })
}

fn corrupt(c: &ChainComplex) -> ChainComplex {
    // doubling the top differential keeps d∘d = 0 but changes the complex
    let top = c.max_deg();
    let ranks: Vec<usize> = c.degrees().map(|n| c.rank(n)).collect();
    let diffs = c
        .degrees()
        .map(|n| if n == top && n > c.min_deg() { c.d(n).scale(&int(2)) } else { c.d(n) })
        .collect();
    ChainComplex::new(c.min_deg(), ranks, diffs).expect("scaled top differential")
}

fn check_dold_kan(ctx: &Ctx) -> CheckResult {
    let fault = ctx.opts.inject_fault;
    ctx.run("Dold-Kan: N(K(C)) = C and K(N(A)) = A", ctx.opts.size.scale(50, 120), &|rng, i| {
        let c = if fault && i == 0 {
            ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[1]))
        } else {
            random::complex(rng, ComplexShape::SMALL)
        };
        let d = 4;
        ensure(lift(check_nk(&c, d))?, || "N(K(C)) → C is not an isomorphism".into())?;
        let expected = if fault && i == 0 { corrupt(&c) } else { c.clone() };
        let nk = normalize_n(&dold_kan_k(&c, d));
        for n in 0..d as i64 {
            ensure(homology(&nk, n) == homology(&expected, n), || format!("H_{} of N(K(C)) differs from the input (corrupted differential)", n))?;
        }
        let a = random::group(rng, ComplexShape { max_deg: 2, max_rank: 2, bound: 3 }, 3);
        ensure(lift(check_kn(&a))?, || "K(N(A)) → A is not an isomorphism".into())
    })
}

fn check_homotopy_groups(ctx: &Ctx) -> CheckResult {
    ctx.run("homotopy of K(C): pi_i K(C) = H_i(C) for i >= 0", ctx.opts.size.scale(25, 60), &|rng, _| {
        let c = random::complex(rng, ComplexShape::SMALL);
        let k = dold_kan_k(&c, 4);
        for i in 0..4 {
            ensure(lift(homotopy_groups(&k, i))? == homology(&c, i), || format!("degree {}", i))?;
        }
        Ok(())
    })
}

fn check_horns(ctx: &Ctx) -> CheckResult {
    ctx.run("Kan property of K(C): compatible horns fill", ctx.opts.size.scale(200, 500), &|rng, _| {
        let a = random::group(rng, ComplexShape::SMALL, 3);
        let (n, k, faces) = random::horn(rng, &a, 3);
        let w = lift(horn_filler(&a, n, k, &faces))?;
        let idx: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
        for (f, &i) in faces.iter().zip(&idx) {
            ensure(a.face(n, i).mul_vec(&w) == *f, || format!("face {} of the Λ^{}_{} filler", i, n, k))?;
        }
        Ok(())
    })
}

fn bar_shift_holds(a: &SimplicialAbGroup) -> std::result::Result<(), String> {
    let d = a.trunc_dim() as i64;
    let na = normalize_n(a);
    let nb = normalize_n(&bar_b(a));
    for n in 0..d {
        let expect = if n == 0 { HomologyGroup::zero() } else { homology(&na, n - 1) };
        ensure(homology(&nb, n) == expect, || format!("H_{} of N(B A) is {} not {}", n, homology(&nb, n), expect))?;
    }
    Ok(())
}

fn check_bar(ctx: &Ctx) -> CheckResult {
    ctx.run("bar construction: H(N(B A)) = H(N A) shifted by 1; B B Z = Z in degree 2", ctx.opts.size.scale(25, 50), &|rng, i| {
        if i == 0 {
            let bbz = bar_b(&bar_b(&SimplicialAbGroup::constant(1, 4)));
            let n = normalize_n(&bbz);
            for k in 0..4 {
                let expect = if k == 2 { HomologyGroup::free(1) } else { HomologyGroup::zero() };
                ensure(homology(&n, k) == expect, || format!("H_{}(N B B Z) = {}", k, homology(&n, k)))?;
            }
        }
        bar_shift_holds(&random::group(rng, ComplexShape { max_deg: 2, max_rank: 2, bound: 3 }, 4))
    })
}

fn check_ez(ctx: &Ctx) -> CheckResult {
    ctx.run("Eilenberg-Zilber: AW∘shuffle = id; H(N(A⊗B)) by Kunneth", ctx.opts.size.scale(25, 50), &|rng, _| {
        let shape = ComplexShape { max_deg: 1, max_rank: 2, bound: 3 };
        let a = random::group(rng, shape, 4);
        let b = random::group(rng, shape, 4);
        let ez = lift(ez_maps(&a, &b))?;
        ensure(ez.strict(), || "AW∘shuffle is not the identity".into())?;
        let (na, nb) = (normalize_n(&a), normalize_n(&b));
        let nab = normalize_n(&a.tensor(&b));
        for n in 0..4 {
            let expect = kunneth_groups(|i| homology(&na, i), |j| homology(&nb, j), (0, 0), (4, 4), n);
            ensure(homology(&nab, n) == expect, || format!("degree {}", n))?;
        }
        Ok(())
    })
}

fn spheres() -> Vec<SimplicialSet> {
    (0..3).map(|i| standard_space(StandardSpace::Sphere(i)).expect("sphere")).collect()
}

fn reduced_homology(x: &SimplicialSet, n: i64) -> HomologyGroup {
    homology(&normalized_chains_with(x, true), n)
}

fn check_smash(ctx: &Ctx) -> CheckResult {
    let s = spheres();
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    ctx.run("reduced free functor: Z~(E∧F) = Z~(E)⊗Z~(F) for spheres", pairs.len(), &|_, i| {
        let (e, f) = pairs[i];
        ensure(lift(check_smash_monoidal(&s[e], &s[f], 3))?, || format!("S^{} ∧ S^{}", e, f))
    })
}

fn check_suspension(ctx: &Ctx) -> CheckResult {
    let s = spheres();
    let cases: Vec<(usize, usize)> = (0..3).flat_map(|f| (0..3).map(move |i| (f, i))).collect();
    ctx.run("suspension: reduced homology of Σ^i F is that of F shifted by i", cases.len(), &|_, k| {
        let (f, i) = cases[k];
        let x = lift(suspension(&s[f], i))?;
        for n in 0..=(f + i + 1) as i64 {
            ensure(reduced_homology(&x, n) == reduced_homology(&s[f], n - i as i64), || format!("Σ^{} S^{} in degree {}", i, f, n))?;
        }
        let z = lift(free_reduced_z(&x, f + i + 2))?;
        for n in 0..=(f + i) as i64 {
            ensure(lift(homotopy_groups(&z, n))? == reduced_homology(&x, n), || format!("pi_{} Z~(Σ^{} S^{})", n, i, f))?;
        }
        Ok(())
    })
}

fn check_normalization(ctx: &Ctx) -> CheckResult {
    ctx.run("normalization: normalized and unnormalized chains have equal homology", ctx.opts.size.scale(25, 60), &|rng, _| {
        let x = random::space(rng, SpaceShape::SMALL, false);
        let norm = normalized_chains_with(&x, false);
        let unnorm = unnormalized_chains_with(&x, 4, false);
        for n in 0..4 {
            ensure(homology(&norm, n) == homology(&unnorm, n), || format!("degree {}", n))?;
        }
        Ok(())
    })
}

fn check_pi1(ctx: &Ctx) -> CheckResult {
    ctx.run("fundamental group: abelianization of pi_1 = H_1 of the component", ctx.opts.size.scale(25, 60), &|rng, _| {
        let x = random::space(rng, SpaceShape::SMALL, false);
        let comps = pi0(&x);
        for comp in 0..comps.count {
            let v = comps.of_vertex.iter().position(|&c| c == comp).expect("nonempty");
            let p = lift(pi1_presentation(&x, Cell::new(0, v)))?;
            let sub = lift(crate::simpset::subcomplex(&x, |c| comps.of_cell(&x, c) == comp))?;
            let h1 = homology(&normalized_chains_with(sub.source(), false), 1);
            ensure(p.abelianization() == h1, || format!("component {}: {} vs {}", comp, p.abelianization(), h1))?;
        }
        Ok(())
    })
}

fn check_products(ctx: &Ctx) -> CheckResult {
    ctx.run("products: pi_0(X×Y) = pi_0(X)×pi_0(Y), chi multiplicative", ctx.opts.size.scale(15, 40), &|rng, _| {
        let shape = SpaceShape { vertices: 3, edges: 3, triangles: 1 };
        let x = random::space(rng, shape, false);
        let y = random::space(rng, shape, false);
        let p = lift(product(&x, &y))?;
        ensure(pi0(&p.object).count == pi0(&x).count * pi0(&y).count, || "component count".into())?;
        let chi = |z: &SimplicialSet| normalized_chains_with(z, false).euler_characteristic();
        ensure(chi(&p.object) == chi(&x) * chi(&y), || "Euler characteristic".into())
    })
}

fn check_wrap(ctx: &Ctx) -> CheckResult {
    ctx.run("wrapping functor: counit Wr(X) → X is a weak equivalence with equal groupoids", ctx.opts.size.scale(25, 50), &|rng, _| {
        let x = random::space(rng, SpaceShape::SMALL, true);
        let w = lift(wrap(&x, 4))?;
        let cert = lift(weq_certificate(&w.counit, 3))?;
        ensure(cert.pass, || format!("certificate {}", cert.to_json()))?;
        let gw = groupoid_presentation(&w.object).transport(&w.counit).canonical();
        ensure(gw == groupoid_presentation(&x).canonical(), || "groupoid presentations differ".into())
    })
}

fn check_skeleta(ctx: &Ctx) -> CheckResult {
    ctx.run("skeletal squares: sk_(n+1) Wr(X) is the pushout along X_(n+1)∧(∂Δ^(n+1))+ for n = 0, 1, 2", ctx.opts.size.scale(10, 25), &|rng, _| {
        let x = random::space(rng, SpaceShape::SMALL, true);
        for n in 0..3 {
            let r = lift(skeleton_pushout_check(&x, n, 4))?;
            ensure(r.isomorphic, || format!("n = {}: {:?} vs {:?}", n, r.pushout_counts, r.skeleton_counts))?;
        }
        Ok(())
    })
}

fn check_wrap_triangle(ctx: &Ctx) -> CheckResult {
    ctx.run("wrapping functor: C(X) = N(Wr X) → N(X) is the normalization quasi-isomorphism", ctx.opts.size.scale(10, 25), &|rng, _| {
        let x = random::space(rng, SpaceShape::SMALL, false);
        ensure(lift(wrap_triangle_check(&x, 3))?, || "triangle fails".into())
    })
}

/// A named diagram `L ←f− K −g→ M` with the reduced homology expected
/// of its homotopy pushout.
#[derive(Clone, Debug)]
pub struct PushoutCase {
    pub name: &'static str,
    pub diagram: PushoutDiagram,
    pub reduced_homology: Vec<HomologyGroup>,
}

fn named_map(x: &SimplicialSet, y: &SimplicialSet, table: &[(&str, &str)]) -> SimplicialMap {
    SimplicialMap::new(x, y, |c| {
        let (_, to) = table.iter().find(|(from, _)| *from == x.name(c)).expect("listed cell");
        y.parse_ref(to).expect("target cell")
    })
    .expect("listed map is simplicial")
}

/// Ten fixed diagrams of pointed simplicial sets.
pub fn pushout_corpus() -> Vec<PushoutCase> {
    let sp = |k: StandardSpace| standard_space(k).expect("standard");
    let pt = sp(StandardSpace::Point);
    let s0 = sp(StandardSpace::Sphere(0));
    let s1 = sp(StandardSpace::Sphere(1));
    let s2 = sp(StandardSpace::Sphere(2));
    let iv = sp(StandardSpace::IntervalPointed);
    let star = Cell::new(0, 0);
    let to_pt = |x: &SimplicialSet| SimplicialMap::constant(x, &pt, star).expect("constant");
    let from_pt = |y: &SimplicialSet| SimplicialMap::constant(&pt, y, y.basepoint().expect("pointed")).expect("constant");
    let id = SimplicialMap::identity;
    let w = wedge(&s1, &s1).expect("wedge");
    let fold = w.universal(&id(&s1), &id(&s1)).expect("fold");
    let ends = named_map(&s0, &iv, &[("*", "v0"), ("x", "v1")]);
    let z = HomologyGroup::zero;
    let zr = HomologyGroup::free;
    let case = |name, f: SimplicialMap, g: SimplicialMap, h: Vec<HomologyGroup>| PushoutCase {
        name,
        diagram: PushoutDiagram::new(f, g).expect("pointed diagram"),
        reduced_homology: h,
    };
    vec![
        case("point <- S0 -> point", to_pt(&s0), to_pt(&s0), vec![z(), zr(1), z()]),
        case("S1 <- S1 -> S1 (identities)", id(&s1), id(&s1), vec![z(), zr(1), z()]),
        case("point <- S1 -> point", to_pt(&s1), to_pt(&s1), vec![z(), z(), zr(1), z()]),
        case("S1 <- point -> S1", from_pt(&s1), from_pt(&s1), vec![z(), zr(2), z()]),
        case("S1 <- S1 -> point (cone)", id(&s1), to_pt(&s1), vec![z(), z(), z()]),
        case("S2 <- point -> S1", from_pt(&s2), from_pt(&s1), vec![z(), zr(1), zr(1), z()]),
        case("interval <- S0 -> point", ends, to_pt(&s0), vec![z(), zr(1), z()]),
        case("S1 <- S1 v S1 -> point (fold)", fold, to_pt(&w.object), vec![z(), z(), zr(1), z()]),
        case("point <- S2 -> point", to_pt(&s2), to_pt(&s2), vec![z(), z(), z(), zr(1), z()]),
        case("point <- S0 -> S0", to_pt(&s0), id(&s0), vec![z(), z()]),
    ]
}

/// All checks on one corpus entry; `Err` names the first that fails.
pub fn check_pushout_case(c: &PushoutCase) -> Result<()> {
    let fail = |what: String| Err(Error::Identity(format!("{}: {}", c.name, what)));
    let q = &c.diagram;
    let h = homotopy_pushout(q)?;
    let top = h.object.top_dim().unwrap_or(0).max(c.reduced_homology.len());
    for n in 0..=top as i64 {
        let want = c.reduced_homology.get(n as usize).cloned().unwrap_or_else(HomologyGroup::zero);
        let got = reduced_homology(&h.object, n);
        if got != want {
            return fail(format!("reduced H_{} = {}, expected {}", n, got, want));
        }
    }
    if !h.bisimplicial_check()? {
        return fail("diagonal of the two-sided bar object is not K_Q".into());
    }
    let cyl = cylinder(&q.f)?;
    if cyl.retraction.compose_after(&cyl.from_l)? != SimplicialMap::identity(&q.l) {
        return fail("cylinder retraction is not a strict left inverse".into());
    }
    if cyl.retraction.compose_after(&cyl.from_k)? != q.f {
        return fail("cylinder retraction does not restrict to f".into());
    }
    let cert = weq_certificate(&cyl.retraction, 3)?;
    if !cert.pass {
        return fail(format!("cyl(f) → L certificate {}", cert.to_json()));
    }
    // along an injective leg the strict pushout is already homotopy invariant
    let comparison = if q.f.is_injective() {
        let p = pushout_inj(&q.f, &q.g)?;
        Some(h.comparison(&p.from_x, &p.from_y)?)
    } else if q.g.is_injective() {
        let p = pushout_inj(&q.g, &q.f)?;
        Some(h.comparison(&p.from_y, &p.from_x)?)
    } else {
        None
    };
    if let Some(cmp) = comparison {
        let cert = weq_certificate(&cmp, 3)?;
        if !cert.pass {
            return fail(format!("comparison with the strict pushout: certificate {}", cert.to_json()));
        }
    }
    Ok(())
}

fn check_pushouts(ctx: &Ctx) -> CheckResult {
    let corpus = pushout_corpus();
    ctx.run("homotopy pushouts and cylinders: fixed corpus of ten diagrams", corpus.len(), &|_, i| {
        check_pushout_case(&corpus[i]).map_err(|e| e.to_string())
    })
}

fn check_simplicial_identities(ctx: &Ctx) -> CheckResult {
    ctx.run("normal forms: random operator words agree along both sides of each identity", ctx.opts.size.scale(25, 60), &|rng, _| {
        use rand::RngExt;
        let x = random::space(rng, SpaceShape::SMALL, false);
        for n in 0..=2usize {
            for s in x.simplices(n) {
                // d_i d_j = d_(j-1) d_i and s_i s_j = s_(j+1) s_i, applied after a random prefix
                let mut t = s.clone();
                for _ in 0..rng.random_range(0..=3usize) {
                    let j = rng.random_range(0..=t.dim());
                    t = lift(x.degeneracy(&t, j))?;
                }
                let m = t.dim();
                for j in (1..=m.min(4)).filter(|_| m >= 2) {
                    for i in 0..j {
                        let a = lift(x.face(&lift(x.face(&t, j))?, i))?;
                        let b = lift(x.face(&lift(x.face(&t, i))?, j - 1))?;
                        ensure(a == b, || format!("d{} d{} on {}", i, j, x.format_ref(&t)))?;
                    }
                }
                for j in 0..=m.min(3) {
                    for i in 0..=j {
                        let a = lift(x.degeneracy(&lift(x.degeneracy(&t, j))?, i))?;
                        let b = lift(x.degeneracy(&lift(x.degeneracy(&t, i))?, j + 1))?;
                        ensure(a == b, || format!("s{} s{} on {}", i, j, x.format_ref(&t)))?;
                    }
                }
            }
        }
        Ok(())
    })
}

pub fn run_suite(opts: SuiteOptions) -> SuiteReport {
    let pool = (opts.threads > 0).then(|| {
        rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build().expect("thread pool")
    });
    let ctx = Ctx { opts, pool };
    let checks: Vec<fn(&Ctx) -> CheckResult> = vec![
        check_snf,
        check_shift,
        check_kunneth_complexes,
        check_tower,
        check_simplicial_identities,
        check_normalization,
        check_products,
        check_pi1,
        check_dold_kan,
        check_homotopy_groups,
        check_horns,
        check_bar,
        check_ez,
        check_smash,
        check_suspension,
        check_wrap,
        check_wrap_triangle,
        check_skeleta,
        check_pushouts,
    ];
    SuiteReport { seed: opts.seed, size: opts.size, checks: checks.into_iter().map(|c| c(&ctx)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_torsion() {
        let z2 = ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[2]));
        // H(Z/2 ⊗ Z/2): Z/2 in degrees 0 and 1 (Tor)
        assert_eq!(kunneth(&z2, &z2, 0).to_string(), "Z/2");
        assert_eq!(kunneth(&z2, &z2, 1).to_string(), "Z/2");
        let t = tensor(&z2, &z2);
        assert_eq!(homology(&t, 1), kunneth(&z2, &z2, 1));
    }

    #[test]
    fn corpus_passes() {
        for c in pushout_corpus() {
            check_pushout_case(&c).unwrap();
        }
    }

    #[test]
    fn fault_is_reported() {
        let ctx = Ctx { opts: SuiteOptions { inject_fault: true, ..SuiteOptions::new(0, Size::Small) }, pool: None };
        let r = check_dold_kan(&ctx);
        assert!(!r.passed());
        assert_eq!(r.failures[0].0, 0);
    }
}
