//! The acceptance suite: every criterion runs and prints one line; the
//! process exits non-zero if any of them failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcp_core::ez::ez_reduction;
use tcp_core::morse::{
    check_star_condition, classify, hd0_witness, morse_reduction, CellClass, EmlField,
};
use tcp_core::pipeline::{
    builtin, route_cor42, route_cor44, route_cor53, route_direct, run, Method, Options, Route,
};
use tcp_core::reductions::{basic_perturbation_lemma, check_reduction, check_reduction_on, Guard};
use tcp_core::simplicial::{
    all_cells, builtin as space, Kz1, Simplex, SimplicialSet, SAMPLE_ENTRY_BOUND,
};
use tcp_core::twisted::{
    cap_product, double_cover, filtration_drop_report, hopf, klein, tau_minus_unit, twisted_ez,
    twisting_cochain, vanishes_on, CapMode, Tcp,
};
use tcp_core::zchain::{homology, Basis, ChainComplex, FormalSum, Gen, GradedMap, HomologyGroup};
use tcp_core::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: tcp_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn set(name: &str) -> Arc<dyn SimplicialSet> {
    space(name).unwrap().as_set()
}

fn free(ranks: &[usize]) -> Vec<HomologyGroup> {
    ranks.iter().map(|&r| HomologyGroup::free(r)).collect()
}

fn opts(max_dim: usize) -> Options {
    Options {
        max_dim,
        ..Options::default()
    }
}

fn basis_through(c: &ChainComplex, n: usize) -> Vec<Gen> {
    (0..=n)
        .flat_map(|k| c.finite_basis(k).unwrap().to_vec())
        .collect()
}

/// `x ⊗ y` with `x` sampled from the fiber and `y` a base cell.
fn sample_bottom(tcp: &Tcp, max_deg: usize, count: usize, seed: u64) -> Vec<Gen> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = all_cells(tcp.base().as_ref(), max_deg).unwrap();
    let mut out = Vec::new();
    while out.len() < count {
        let y = &base[rng.gen_range(0..base.len())];
        let p = rng.gen_range(0..=max_deg - y.degree());
        if let Some(x) = tcp.fiber.sample_cell(p, &mut rng) {
            out.push(Gen::tensor(x, y.clone()));
        }
    }
    out
}

fn ez_identities() -> Outcome {
    let mut checked = 0;
    for (f, b) in [("sphere(1)", "sphere(1)"), ("circle2", "sphere(2)")] {
        let ez = ez_reduction(&set(f), &set(b));
        let report = ok(check_reduction(&ez.reduction, 0..=3))?;
        ensure!(report.is_ok(), "{f} x {b}: {:?}", report.first_failure());
        checked += report.top_checked + report.bottom_checked;
    }
    Ok(format!("{checked} basis elements"))
}

fn bpl_zero_perturbation() -> Outcome {
    let k: Arc<dyn SimplicialSet> = Arc::new(Kz1::with_cap(4));
    let circle = set("circle2");
    let ez = ez_reduction(&k, &circle);
    let r = &ez.reduction;
    let p = basic_perturbation_lemma(r, &GradedMap::zero(-1), Guard::Default);
    ensure!(p.delta_bottom.is_zero_map(), "δ' is not zero");
    let cells = all_cells(circle.as_ref(), 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut top, mut bottom) = (0, 0);
    while top + bottom < 100 {
        let n = rng.gen_range(0..=4);
        if rng.gen_bool(0.5) {
            let Some(g) = ez.product.sample_cell(n, &mut rng) else {
                continue;
            };
            for (a, b, what) in [(&p.reduction.f, &r.f, "f"), (&p.reduction.h, &r.h, "h")] {
                ensure!(
                    ok(a.apply_gen(&g))? == ok(b.apply_gen(&g))?,
                    "{what} differs on {g}"
                );
            }
            let c = FormalSum::from_gen(g);
            ensure!(
                ok(p.reduction.top.boundary(&c))? == ok(r.top.boundary(&c))?,
                "top differential differs"
            );
            top += 1;
        } else {
            let Some(x) = k.sample_cell(n, &mut rng) else {
                continue;
            };
            let y = cells[rng.gen_range(0..cells.len())].clone();
            let g = Gen::tensor(x, y);
            ensure!(
                ok(p.reduction.g.apply_gen(&g))? == ok(r.g.apply_gen(&g))?,
                "g differs on {g}"
            );
            let c = FormalSum::from_gen(g);
            ensure!(
                ok(p.reduction.bottom.boundary(&c))? == ok(r.bottom.boundary(&c))?,
                "bottom differential differs"
            );
            bottom += 1;
        }
    }
    Ok(format!("{top} top and {bottom} bottom generators"))
}

fn cap_product_consistency() -> Outcome {
    let tcp = klein();
    let tw = twisted_ez(&tcp, Guard::Default);
    let t = twisting_cochain(&tcp, Guard::Default);
    let gens = basis_through(&tw.reduction().bottom, 3);
    for mode in [CapMode::Formula, CapMode::Composite] {
        let cap = cap_product(&t, tcp.action.clone(), tcp.base().clone(), mode);
        for g in &gens {
            let d = ok(tw.delta().apply_gen(g))?;
            ensure!(
                ok(cap.apply_gen(g))? == d,
                "{mode:?} differs from δ' on {g}"
            );
        }
    }
    Ok(format!("{} generators, both modes", gens.len()))
}

fn cochain_base_case() -> Outcome {
    let mut checked = 0;
    for tcp in [klein(), double_cover(3)] {
        let t = twisting_cochain(&tcp, Guard::Default);
        let ones: Vec<Gen> = match tcp.base().cells(1) {
            Basis::Finite(v) => v.to_vec(),
            _ => (-SAMPLE_ENTRY_BOUND..=SAMPLE_ENTRY_BOUND)
                .filter(|&a| a != 0)
                .map(|a| Gen::bar(&[a]))
                .collect(),
        };
        for b in &ones {
            let expected = ok(tau_minus_unit(&tcp, b))?;
            ensure!(ok(t.map.apply_gen(b))? == expected, "t({b}) ≠ τ(b) - e0");
            checked += 1;
        }
    }
    Ok(format!("{checked} base 1-simplices"))
}

fn homology_oracles() -> Outcome {
    let kl = vec![
        HomologyGroup::free(1),
        HomologyGroup::with_torsion(1, &[2]),
        HomologyGroup::free(0),
    ];
    let mut agreed = Vec::new();
    for (name, expected) in [("klein", kl), ("torus", free(&[1, 2, 1]))] {
        let o = opts(2);
        let (tcp, eq) = ok(builtin(name, &o))?;
        let direct = ok(route_direct(&tcp, &o))?;
        ensure!(
            direct.homology == expected,
            "{name} direct: {:?}",
            direct.homology
        );
        let mut routes = 0;
        for r in [Route::Thm41, Route::Cor42, Route::Cor44, Route::Cor53] {
            match run(&tcp, &eq, Method::Route(r), &o) {
                Ok(res) => {
                    ensure!(res.homology == expected, "{name} {r}: {:?}", res.homology);
                    routes += 1;
                }
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(format!("{name} {r}: {e}")),
            }
        }
        agreed.push(format!("{name} on {routes} routes"));
    }
    Ok(agreed.join(", "))
}

fn hopf_three_sphere() -> Outcome {
    let o = opts(3);
    let (tcp, eq) = ok(builtin("hopf", &o))?;
    ensure!(eq.base.is_trivial(), "base reduction is not trivial");
    ensure!(tcp.group.is_zero_reduced(), "K(Z,1) is not 0-reduced");
    let t = twisting_cochain(&tcp, Guard::Default);
    let ones = all_cells(tcp.base().as_ref(), 1).unwrap();
    ensure!(ok(vanishes_on(&t, &ones))?, "t does not vanish on B_1");
    let vertex = all_cells(tcp.base().as_ref(), 0).unwrap()[0].clone();
    let s0 = Simplex::nondegenerate(vertex).degenerate(0);
    ensure!(
        ok(tcp.tau.apply(&s0))? == tcp.group.unit(0),
        "τ(s0 *) is not the unit"
    );
    let r = ok(route_cor42(&tcp, &eq, &o))?;
    ensure!(r.homology == free(&[1, 0, 0, 1]), "{:?}", r.homology);
    Ok("(Z, 0, 0, Z)".into())
}

fn double_cover_circle() -> Outcome {
    let o = opts(2);
    let (tcp, eq) = ok(builtin("double-cover", &o))?;
    let r = ok(route_cor53(&tcp, &eq, &o))?;
    ensure!(r.homology == free(&[1, 1, 0]), "{:?}", r.homology);
    let w = r.diagnostics.hd0_max.ok_or("no witnesses recorded")?;
    ensure!(w <= 2, "witness {w}");
    let longest = r.diagnostics.transfer_terms_longest.unwrap_or(0);
    ensure!(longest <= 2, "the transfer series needs {longest} terms");
    Ok(format!("(Z, Z, 0), witnesses ≤ {w}"))
}

fn filtration_drops() -> Outcome {
    let kl = klein();
    let tw = twisted_ez(&kl, Guard::Default);
    let gens = basis_through(&tw.reduction().bottom, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples: Vec<Gen> = (0..500)
        .map(|_| gens[rng.gen_range(0..gens.len())].clone())
        .collect();
    let report = ok(filtration_drop_report(tw.delta(), &samples, 1))?;
    ensure!(report.is_ok(), "klein: {:?}", report.violations);
    let hp = hopf(4);
    let tw = twisted_ez(&hp, Guard::Default);
    let samples = sample_bottom(&hp, 4, 500, 9);
    let hreport = ok(filtration_drop_report(tw.delta(), &samples, 2))?;
    ensure!(hreport.is_ok(), "hopf: {:?}", hreport.violations);
    Ok(format!(
        "klein min drop {:?}, hopf min drop {:?}",
        report.min_drop, hreport.min_drop
    ))
}

fn morse_contract() -> Outcome {
    ensure!(SAMPLE_ENTRY_BOUND == 9, "entry bound {SAMPLE_ENTRY_BOUND}");
    let k = Kz1::with_cap(5);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut samples = vec![Gen::bar(&[])];
    while samples.len() < 1000 {
        let n = rng.gen_range(1..=5);
        samples.extend(k.sample_cell(n, &mut rng));
    }
    ensure!(
        ok(check_star_condition(&k, &EmlField, &samples))?.is_none(),
        "(*) fails"
    );
    let x: Arc<dyn SimplicialSet> = Arc::new(k);
    let m = morse_reduction(x, Arc::new(EmlField), None);
    let r = &m.reduction;
    let top: Vec<Gen> = samples
        .iter()
        .filter(|g| g.degree() <= 4)
        .cloned()
        .collect();
    let report = ok(check_reduction_on(
        r,
        &top,
        &[Gen::bar(&[]), Gen::bar(&[1])],
    ))?;
    ensure!(report.is_ok(), "{:?}", report.first_failure());
    for g in &top {
        let hg = ok(r.h.apply_gen(g))?;
        ensure!(
            hg.iter()
                .all(|(y, _)| classify(&EmlField, y) == CellClass::Target),
            "h({g}) leaves Z·T"
        );
        ensure!(
            classify(&EmlField, g) == CellClass::Source || hg.is_zero(),
            "h({g}) ≠ 0"
        );
        ok(hd0_witness(&m, g, 10))?;
    }
    let h: Vec<HomologyGroup> = (0..=1).map(|n| homology(&r.bottom, n).unwrap()).collect();
    ensure!(h == free(&[1, 1]), "{h:?}");
    Ok(format!(
        "{} samples, critical homology (Z, Z)",
        samples.len()
    ))
}

fn epl_bpl_agree() -> Outcome {
    let o = opts(3);
    let (tcp, eq) = ok(builtin("hopf", &o))?;
    ensure!(
        eq.fiber.as_reduction().is_some(),
        "fiber side is not reduction-shaped"
    );
    let a = ok(route_cor44(&tcp, &eq, &o))?;
    let b = ok(route_cor42(&tcp, &eq, &o))?;
    ensure!(
        a.homology == b.homology,
        "{:?} vs {:?}",
        a.homology,
        b.homology
    );
    Ok(format!("{} degrees", a.homology.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("reduction identities", ez_identities),
        ("zero perturbation", bpl_zero_perturbation),
        ("perturbation is the cap product", cap_product_consistency),
        ("twisting cochain on 1-simplices", cochain_base_case),
        ("homology oracles", homology_oracles),
        ("hopf fibration", hopf_three_sphere),
        ("double cover of K(Z,1)", double_cover_circle),
        ("filtration drop", filtration_drops),
        ("vector field contract", morse_contract),
        ("easy and basic routes agree", epl_bpl_agree),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
