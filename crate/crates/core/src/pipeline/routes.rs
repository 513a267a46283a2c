use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{transfer_terms, Equipment, Side};
use crate::error::{Error, Result};
use crate::morse::{check_admissible, check_star_condition, hd0_witness};
use crate::reductions::{
    bpl_onto, epl_onto, tensor_reduction, Direction, Guard, Leg, Perturbed, Reduction, SeriesStats,
    StrongEquivalence, TensorVariant,
};
use crate::simplicial::{all_cells, normalized_chains, SimplicialSet};
use crate::twisted::{twisted_ez, twisting_cochain, Tcp, TwistedEz};
use crate::zchain::{homology, ChainComplex, FormalSum, Gen, HomologyBasis, HomologyGroup};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// Guarded BPL on the tensor product of the side reductions.
    Thm41,
    /// As `Thm41` when G is 0-reduced or the base reduction is trivial.
    Cor42,
    /// EPL then BPL along side equivalences.
    Cor44,
    /// As `Thm41` with the base reduction induced by a (*)-field.
    Cor53,
    /// Homology of the chains of the total space.
    Direct,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Thm41 => "thm41",
            Route::Cor42 => "cor42",
            Route::Cor44 => "cor44",
            Route::Cor53 => "cor53",
            Route::Direct => "direct",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Auto,
    Route(Route),
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Ok(match s {
            "auto" => Method::Auto,
            "thm41" => Method::Route(Route::Thm41),
            "cor42" => Method::Route(Route::Cor42),
            "cor44" => Method::Route(Route::Cor44),
            "cor53" => Method::Route(Route::Cor53),
            "direct" => Method::Route(Route::Direct),
            _ => return Err(Error::Invalid(format!("unknown method {s}"))),
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Highest degree whose homology is reported.
    pub max_dim: usize,
    /// Terms allowed per perturbation series.
    pub guard: usize,
    pub seed: u64,
    /// Sampled simplices for checks on open spaces.
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_dim: 6,
            guard: 64,
            seed: 0,
            samples: 1000,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    /// Longest series in the twisted Eilenberg–Zilber perturbation.
    pub twisted_series: usize,
    /// Longest series in the transfer onto the effective complex.
    pub transfer_series: usize,
    pub series_evaluated: usize,
    /// Longest recurrence of [`transfer_terms`] met.
    pub transfer_terms_longest: Option<usize>,
    /// Largest `i` with `(h_B d_0)^i b = 0` first.
    pub hd0_max: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub route: Route,
    pub max_dim: usize,
    /// The effective complex with its perturbed differential.
    pub effective: ChainComplex,
    /// From the chains of the total space to `effective`; absent for the
    /// direct route.
    pub equivalence: Option<StrongEquivalence>,
    pub homology: Vec<HomologyGroup>,
    pub diagnostics: Diagnostics,
}

impl PipelineResult {
    /// Homology representatives of `effective` in degree n, carried back to
    /// the chains of the total space.
    pub fn transported_cycles(&self, n: usize) -> Result<Vec<FormalSum>> {
        let basis = HomologyBasis::compute(&self.effective, n)?;
        match &self.equivalence {
            None => Ok(basis.representatives),
            Some(eq) => basis
                .representatives
                .iter()
                .map(|z| eq.transport(z, Direction::Backward))
                .collect(),
        }
    }

    /// The complex the transported cycles live in.
    pub fn total_chains(&self) -> &ChainComplex {
        match &self.equivalence {
            None => &self.effective,
            Some(eq) => eq.start(),
        }
    }
}

fn fixed(guard: usize) -> Guard {
    Guard::Fixed(guard)
}

fn check_side(side: &Side, x: &alloc::sync::Arc<dyn SimplicialSet>, what: &str) -> Result<()> {
    let chains = normalized_chains(x);
    if side.chains().same_as(&chains) {
        Ok(())
    } else {
        Err(Error::EndpointMismatch {
            left: format!("{what} equipment on {}", side.chains().name()),
            right: String::from(chains.name()),
        })
    }
}

/// Runs every vector-field side over its cells (or samples) so that a
/// non-admissible field is reported before it can drop cells silently.
fn check_fields(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<()> {
    for (side, x) in [(&eq.fiber, &tcp.fiber), (&eq.base, tcp.base())] {
        if let Some(m) = &side.morse {
            check_admissible(m, &star_samples(x.as_ref(), opts))?;
        }
    }
    Ok(())
}

fn side_reduction<'a>(side: &'a Side, what: &str) -> Result<&'a Reduction> {
    side.as_reduction().ok_or_else(|| {
        Error::Precondition(format!(
            "{what} equipment must be a reduction for this route"
        ))
    })
}

struct Transfer {
    twisted: TwistedEz,
    rho_f: Reduction,
    rho_b: Reduction,
    perturbed: Perturbed,
}

fn transfer(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<Transfer> {
    check_side(&eq.fiber, &tcp.fiber, "fiber")?;
    check_side(&eq.base, tcp.base(), "base")?;
    check_fields(tcp, eq, opts)?;
    let rho_f = side_reduction(&eq.fiber, "fiber")?.clone();
    let rho_b = side_reduction(&eq.base, "base")?.clone();
    let twisted = twisted_ez(tcp, fixed(opts.guard));
    let rho_fb = tensor_reduction(&rho_f, &rho_b, TensorVariant::Left);
    let perturbed = bpl_onto(&rho_fb, &twisted.reduction().bottom, fixed(opts.guard));
    Ok(Transfer {
        twisted,
        rho_f,
        rho_b,
        perturbed,
    })
}

fn finish(
    route: Route,
    effective: ChainComplex,
    equivalence: Option<StrongEquivalence>,
    stats: &[(&SeriesStats, bool)],
    mut diagnostics: Diagnostics,
    opts: &Options,
) -> Result<PipelineResult> {
    if let Some(g) = effective.find_square_nonzero(0..=opts.max_dim + 1)? {
        return Err(Error::Invalid(format!(
            "the effective differential does not square to zero on {g}"
        )));
    }
    let homology = (0..=opts.max_dim)
        .map(|n| homology(&effective, n))
        .collect::<Result<Vec<_>>>()?;
    for (s, twisted) in stats {
        if *twisted {
            diagnostics.twisted_series = diagnostics.twisted_series.max(s.longest());
        } else {
            diagnostics.transfer_series = diagnostics.transfer_series.max(s.longest());
        }
        diagnostics.series_evaluated += s.evaluated();
    }
    Ok(PipelineResult {
        route,
        max_dim: opts.max_dim,
        effective,
        equivalence,
        homology,
        diagnostics,
    })
}

fn finish_transfer(
    route: Route,
    tr: &Transfer,
    diagnostics: Diagnostics,
    opts: &Options,
) -> Result<PipelineResult> {
    let r = tr.twisted.reduction().compose(&tr.perturbed.reduction)?;
    finish(
        route,
        tr.perturbed.reduction.bottom.clone(),
        Some(StrongEquivalence::from_reduction(r)),
        &[
            (&tr.twisted.perturbed.stats, true),
            (&tr.perturbed.stats, false),
        ],
        diagnostics,
        opts,
    )
}

/// Base factors `b` of `g_{F⊗B}(x)` for every effective generator `x`
/// through the reported degrees, with their fiber factors.
fn lifted_generators(tr: &Transfer, opts: &Options) -> Result<Vec<(Gen, Gen)>> {
    let rho_fb = tensor_reduction(&tr.rho_f, &tr.rho_b, TensorVariant::Left);
    let mut out = Vec::new();
    for n in 0..=opts.max_dim {
        for x in rho_fb.bottom.finite_basis(n)?.iter() {
            for (g, _) in rho_fb.g.apply_gen(x)?.iter() {
                if let Some((y, b)) = g.as_tensor() {
                    out.push((y.clone(), b.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Runs the recurrence on every lifted generator; fails past `bound` terms.
fn transfer_terms_pass(
    tcp: &Tcp,
    tr: &Transfer,
    opts: &Options,
    bound: usize,
    diagnostics: &mut Diagnostics,
) -> Result<Vec<FormalSum>> {
    let t = twisting_cochain(tcp, fixed(opts.guard));
    let mut longest = 0;
    let mut bases = Vec::new();
    for (y, b) in lifted_generators(tr, opts)? {
        let comps = transfer_terms(tcp, &t, &tr.rho_f, &tr.rho_b, &y, &b, opts.guard)?;
        if comps.len() > bound {
            return Err(Error::Invalid(format!(
                "the degree-preserving recurrence on {y}⊗{b} has {} terms, expected at most {bound}",
                comps.len()
            )));
        }
        longest = longest.max(comps.len());
        bases.extend(comps);
    }
    diagnostics.transfer_terms_longest = Some(longest);
    Ok(bases)
}

pub fn route_thm41(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<PipelineResult> {
    let tr = transfer(tcp, eq, opts)?;
    finish_transfer(Route::Thm41, &tr, Diagnostics::default(), opts)
}

fn cor42_holds(tcp: &Tcp, eq: &Equipment) -> bool {
    tcp.group.is_zero_reduced() || eq.base.is_trivial()
}

pub fn route_cor42(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<PipelineResult> {
    if !cor42_holds(tcp, eq) {
        return Err(Error::Precondition(
            "G is not 0-reduced and the base reduction is not trivial".into(),
        ));
    }
    let tr = transfer(tcp, eq, opts)?;
    let mut diagnostics = Diagnostics::default();
    if tcp.group.is_zero_reduced() {
        diagnostics
            .notes
            .push("G is 0-reduced: t vanishes on B_1".into());
    }
    if eq.base.is_trivial() {
        diagnostics
            .notes
            .push("trivial base reduction: h_B d_0 = 0".into());
    }
    transfer_terms_pass(tcp, &tr, opts, 1, &mut diagnostics)?;
    finish_transfer(Route::Cor42, &tr, diagnostics, opts)
}

/// Base simplices on which (*) is checked: every cell through `max_dim + 1`
/// if finite, seeded samples otherwise.
fn star_samples(x: &dyn SimplicialSet, opts: &Options) -> Vec<Gen> {
    let top = opts.max_dim + 1;
    if let Ok(cells) = all_cells(x, top) {
        return cells;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let per_dim = opts.samples / top.max(1) + 1;
    let mut out = Vec::new();
    for n in 0..=top {
        for _ in 0..per_dim {
            if let Some(g) = x.sample_cell(n, &mut rng) {
                out.push(g);
            }
        }
    }
    out
}

pub fn route_cor53(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<PipelineResult> {
    let morse = eq.base.morse.as_ref().ok_or_else(|| {
        Error::Precondition("the base reduction does not come from a vector field".into())
    })?;
    let samples = star_samples(tcp.base().as_ref(), opts);
    if let Some(g) = check_star_condition(tcp.base().as_ref(), morse.field.as_ref(), &samples)? {
        return Err(Error::StarViolation(g));
    }
    let tr = transfer(tcp, eq, opts)?;
    let mut diagnostics = Diagnostics::default();
    diagnostics
        .notes
        .push(format!("(*) checked on {} base simplices", samples.len()));
    let comps = transfer_terms_pass(tcp, &tr, opts, 2, &mut diagnostics)?;
    let mut witness = 0;
    let mut seen = alloc::collections::BTreeSet::new();
    for c in comps {
        for (g, _) in c.iter() {
            let Some((_, b)) = g.as_tensor() else {
                continue;
            };
            if !seen.insert(b.clone()) {
                continue;
            }
            let i = hd0_witness(morse, b, opts.guard)?;
            if i > 2 {
                return Err(Error::StarViolation(b.clone()));
            }
            witness = witness.max(i);
        }
    }
    for b in &samples {
        let i = hd0_witness(morse, b, opts.guard)?;
        if i > 2 {
            return Err(Error::StarViolation(b.clone()));
        }
        witness = witness.max(i);
    }
    diagnostics.hd0_max = Some(witness);
    finish_transfer(Route::Cor53, &tr, diagnostics, opts)
}

pub fn route_cor44(tcp: &Tcp, eq: &Equipment, opts: &Options) -> Result<PipelineResult> {
    if !(tcp.group.is_zero_reduced() || eq.base.is_trivial()) {
        return Err(Error::Precondition(
            "G is not 0-reduced and the base equivalence is not trivial".into(),
        ));
    }
    check_side(&eq.fiber, &tcp.fiber, "fiber")?;
    check_side(&eq.base, tcp.base(), "base")?;
    check_fields(tcp, eq, opts)?;
    let twisted = twisted_ez(tcp, fixed(opts.guard));
    let (a_f, b_f) = eq.fiber.legs();
    let (a_b, b_b) = eq.base.legs();
    // ρ_1: D(F)⊗D(B) ⇒ C(F)⊗C(B), ρ_2: D(F)⊗D(B) ⇒ EC(F)⊗EC(B)
    let rho1 = tensor_reduction(&a_f, &a_b, TensorVariant::Left);
    let rho1 = epl_onto(&rho1, &twisted.reduction().bottom);
    let rho2 = tensor_reduction(&b_f, &b_b, TensorVariant::Left);
    let rho2 = bpl_onto(&rho2, &rho1.top, fixed(opts.guard));
    let equivalence = StrongEquivalence::new(alloc::vec![
        Leg::Down(twisted.reduction().clone()),
        Leg::Up(rho1),
        Leg::Down(rho2.reduction.clone()),
    ])?;
    finish(
        Route::Cor44,
        rho2.reduction.bottom.clone(),
        Some(equivalence),
        &[(&twisted.perturbed.stats, true), (&rho2.stats, false)],
        Diagnostics::default(),
        opts,
    )
}

pub fn route_direct(tcp: &Tcp, opts: &Options) -> Result<PipelineResult> {
    let chains = normalized_chains(&tcp.space);
    finish(
        Route::Direct,
        chains,
        None,
        &[],
        Diagnostics::default(),
        opts,
    )
}

/// `auto` tries cor42, then cor53, then thm41; equivalence-shaped
/// equipment goes to cor44.
pub fn run(tcp: &Tcp, eq: &Equipment, method: Method, opts: &Options) -> Result<PipelineResult> {
    match method {
        Method::Route(Route::Thm41) => route_thm41(tcp, eq, opts),
        Method::Route(Route::Cor42) => route_cor42(tcp, eq, opts),
        Method::Route(Route::Cor44) => route_cor44(tcp, eq, opts),
        Method::Route(Route::Cor53) => route_cor53(tcp, eq, opts),
        Method::Route(Route::Direct) => route_direct(tcp, opts),
        Method::Auto => {
            if eq.fiber.as_reduction().is_none() || eq.base.as_reduction().is_none() {
                route_cor44(tcp, eq, opts)
            } else if cor42_holds(tcp, eq) {
                route_cor42(tcp, eq, opts)
            } else if eq.base.morse.is_some() {
                route_cor53(tcp, eq, opts)
            } else {
                route_thm41(tcp, eq, opts)
            }
        }
    }
}
