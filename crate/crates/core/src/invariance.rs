//! Deciding, certifying and constructing extra translation invariance.
//!
//! For `H <= M <= G`, the dual group is partitioned into the `M*`-periodic
//! blocks `B_s = Omega + s + M*`, one per representative `s` of `H*/M*`. An
//! `H`-invariant space `S` is `M`-invariant exactly when every block cut-off of
//! every generator stays in `S`, equivalently when at every section point the
//! Gramian rank of the generators equals the sum of the Gramian ranks of the
//! cut-off families.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibering::{
    common_scale, dim_function_spectra, gramian_spectra, rank_above, FiberContext, FiberSpan, DEFAULT_TOL,
};
use crate::group::{Element, Group, Subgroup, Transversal};
use crate::spectral::{dft, idft, Signal, Spectrum};

/// The base `H`-fiberization refined by an intermediate subgroup `M`.
#[derive(Debug, Clone)]
pub struct InvarianceContext {
    base: FiberContext,
    refined: FiberContext,
    nu: Transversal,
    // dual index -> position in `nu` of the block containing it
    labels: Vec<usize>,
}

impl InvarianceContext {
    pub fn base(&self) -> &FiberContext {
        &self.base
    }

    /// The fiberization over `M`; its section is the canonical section of `Gamma / M*`.
    pub fn refined(&self) -> &FiberContext {
        &self.refined
    }

    pub fn m(&self) -> &Subgroup {
        self.refined.translations()
    }

    pub fn mstar(&self) -> &Subgroup {
        self.refined.annihilator()
    }

    /// Canonical section of `H*/M*`. Its first representative is always `0`.
    pub fn nu_section(&self) -> &Transversal {
        &self.nu
    }

    pub fn d_section(&self) -> &Transversal {
        self.refined.section()
    }

    pub fn sigmas(&self) -> Vec<Element> {
        self.nu.reps()
    }

    /// Block label of every dual element.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Dual-group indices of `B_s` for the representative at position `pos`.
    pub fn block_indices(&self, pos: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| (l == pos).then_some(i))
            .collect()
    }

    pub fn block(&self, pos: usize) -> Vec<Element> {
        let g = self.base.group();
        self.block_indices(pos).into_iter().map(|i| g.element_at(i)).collect()
    }

    pub fn sigma_position(&self, sigma: &Element) -> Result<usize> {
        self.nu
            .position(sigma)
            .ok_or_else(|| Error::NotInNuSection(sigma.clone()))
    }

    pub(crate) fn cutoff_spectrum(&self, spectrum: &Spectrum, pos: usize) -> Spectrum {
        let values = spectrum
            .values()
            .iter()
            .zip(&self.labels)
            .map(|(&v, &l)| if l == pos { v } else { Complex64::new(0.0, 0.0) })
            .collect();
        Spectrum::new(spectrum.group(), values).expect("same length")
    }
}

/// Builds `M*`, the sections `N` of `H*/M*` and `D` of `Gamma/M*`, and the
/// partition `{ B_s }`.
pub fn refine_context(base: &FiberContext, m: &Subgroup) -> Result<InvarianceContext> {
    let g = base.group();
    if m.group() != g {
        return Err(Error::GroupMismatch);
    }
    if !base.translations().is_subgroup_of(m) {
        return Err(Error::NotContained { inner: "H", outer: "M" });
    }
    let refined = FiberContext::new(g, m)?;
    let nu = Transversal::new(base.annihilator(), refined.annihilator())?;

    let omega = base.section();
    let mut labels = vec![usize::MAX; g.order()];
    for (wpos, &w) in omega.rep_indices().iter().enumerate() {
        debug_assert_eq!(omega.coset_of(w), Some(wpos));
        for (spos, &s) in nu.rep_indices().iter().enumerate() {
            for &mstar in refined.annihilator().indices() {
                let gamma = g.add_index(g.add_index(w, s), mstar);
                if labels[gamma] != usize::MAX {
                    return Err(Error::Inconsistent(format!("blocks overlap at dual index {gamma}")));
                }
                labels[gamma] = spos;
            }
        }
    }
    if labels.contains(&usize::MAX) {
        return Err(Error::Inconsistent("blocks do not cover the dual group".into()));
    }
    for gamma in 0..g.order() {
        for &mstar in refined.annihilator().indices() {
            if labels[g.add_index(gamma, mstar)] != labels[gamma] {
                return Err(Error::Inconsistent("block is not M*-periodic".into()));
            }
        }
    }
    Ok(InvarianceContext {
        base: base.clone(),
        refined,
        nu,
        labels,
    })
}

/// `f^s` with spectrum `f^ * chi_{B_s}`.
pub fn cutoff(ictx: &InvarianceContext, f: &Signal, sigma: &Element) -> Result<Signal> {
    if f.group() != ictx.base.group() {
        return Err(Error::GroupMismatch);
    }
    let pos = ictx.sigma_position(sigma)?;
    Ok(idft(&ictx.cutoff_spectrum(&dft(f), pos)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Gramian rank identity at every section point.
    Rank,
    /// Fiber membership of every block cut-off.
    Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaRank {
    pub sigma: Element,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaRanks {
    pub omega: Element,
    pub rank_total: usize,
    pub per_sigma: Vec<SigmaRank>,
}

impl OmegaRanks {
    pub fn identity_holds(&self) -> bool {
        self.rank_total == self.per_sigma.iter().map(|s| s.rank).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub generator: usize,
    pub sigma: Element,
    pub omega: Element,
    pub residual: f64,
}

/// Verdict plus certificate. `failures` is only populated by the subspace
/// criterion; `per_omega` is always filled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub criterion: Criterion,
    pub verdict: bool,
    pub per_omega: Vec<OmegaRanks>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance_set: Option<Subgroup>,
}

impl InvarianceReport {
    pub fn rank_identity_holds(&self) -> bool {
        self.per_omega.iter().all(OmegaRanks::identity_holds)
    }
}

fn rank_table(ictx: &InvarianceContext, spectra: &[Spectrum], tol_rel: f64) -> Vec<OmegaRanks> {
    let base = &ictx.base;
    let sigmas = ictx.sigmas();
    let cut: Vec<Vec<Spectrum>> = (0..sigmas.len())
        .map(|p| spectra.iter().map(|s| ictx.cutoff_spectrum(s, p)).collect())
        .collect();
    let grams: Vec<_> = (0..base.num_fibers())
        .map(|w| gramian_spectra(base, spectra, w))
        .collect();
    let threshold = tol_rel * common_scale(&grams);
    base.section()
        .reps()
        .into_iter()
        .enumerate()
        .map(|(w, omega)| OmegaRanks {
            omega,
            rank_total: rank_above(&grams[w], threshold),
            per_sigma: sigmas
                .iter()
                .zip(&cut)
                .map(|(sigma, fam)| SigmaRank {
                    sigma: sigma.clone(),
                    rank: rank_above(&gramian_spectra(base, fam, w), threshold),
                })
                .collect(),
        })
        .collect()
}

/// Rank criterion: `rank G_Phi(w) = sum_s rank G_{Phi^s}(w)` for every `w`.
pub fn is_invariant_rank(ictx: &InvarianceContext, family: &[Signal], tol_rel: f64) -> Result<InvarianceReport> {
    if family.is_empty() {
        return Err(Error::NoGenerators);
    }
    let spectra = ictx.base.spectra_of(family)?;
    let per_omega = rank_table(ictx, &spectra, tol_rel);
    Ok(InvarianceReport {
        criterion: Criterion::Rank,
        verdict: per_omega.iter().all(OmegaRanks::identity_holds),
        per_omega,
        failures: Vec::new(),
        invariance_set: None,
    })
}

/// Subspace criterion: every cut-off `phi^s` has all its fibers in the fiber
/// spaces of `S`.
pub fn is_invariant_subspace(
    ictx: &InvarianceContext,
    family: &[Signal],
    tol_rel: f64,
) -> Result<InvarianceReport> {
    if family.is_empty() {
        return Err(Error::NoGenerators);
    }
    let base = &ictx.base;
    let spectra = base.spectra_of(family)?;
    let span = FiberSpan::new(base, &spectra, tol_rel);
    let omegas = base.section().reps();
    let mut failures = Vec::new();
    for (i, s) in spectra.iter().enumerate() {
        for (p, sigma) in ictx.sigmas().into_iter().enumerate() {
            let m = span.test(base, &ictx.cutoff_spectrum(s, p));
            for (w, &r) in m.residuals.iter().enumerate() {
                if r > m.threshold {
                    failures.push(Failure {
                        generator: i,
                        sigma: sigma.clone(),
                        omega: omegas[w].clone(),
                        residual: r,
                    });
                }
            }
        }
    }
    Ok(InvarianceReport {
        criterion: Criterion::Subspace,
        verdict: failures.is_empty(),
        per_omega: rank_table(ictx, &spectra, tol_rel),
        failures,
        invariance_set: None,
    })
}

/// `{ x in G : t_x phi in S for every generator }`, tested translate by translate.
///
/// The result must be a subgroup containing `H`; anything else is reported as
/// an inconsistency (it means the tolerance cannot separate the data).
pub fn invariance_set(base: &FiberContext, family: &[Signal], tol_rel: f64) -> Result<Subgroup> {
    let g = base.group();
    let spectra = base.spectra_of(family)?;
    let span = FiberSpan::new(base, &spectra, tol_rel);
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| spectra.iter().all(|s| span.test(base, &s.modulate(x)).member))
        .collect();
    let set = Subgroup::try_from_indices(g, &members)
        .ok_or_else(|| Error::Inconsistent(format!("invariance set {members:?} is not a subgroup")))?;
    if !base.translations().is_subgroup_of(&set) {
        return Err(Error::Inconsistent("invariance set does not contain H".into()));
    }
    Ok(set)
}

/// Multiplier `eta` on the section `D` of `Gamma/M*` with `g^ ~ eta f^`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferFunction {
    pub section: Vec<Element>,
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub eta: Vec<Complex64>,
    /// `|| g^ - eta f^ ||` in `L^2(Gamma)`, zero exactly when `g` lies in `S_M(f)`.
    pub residual: f64,
    #[serde(skip)]
    extended: Vec<Complex64>,
}

impl TransferFunction {
    /// The `M*`-periodic extension of `eta` to the whole dual group.
    pub fn extended(&self) -> &[Complex64] {
        &self.extended
    }
}

/// Best `M*`-periodic multiplier taking `f^` to `g^`, computed fiber by fiber
/// as `<T g(d), T f(d)> / ||T f(d)||^2` (zero where the fiber of `f` vanishes).
pub fn transfer_function(mctx: &FiberContext, f: &Signal, g: &Signal) -> Result<TransferFunction> {
    let spectra = mctx.spectra_of(&[f.clone(), g.clone()])?;
    let (fh, gh) = (&spectra[0], &spectra[1]);
    let n = mctx.num_fibers();
    let fibers: Vec<_> = (0..n).map(|p| (mctx.fiber(fh, p), mctx.fiber(gh, p))).collect();
    let norms: Vec<f64> = fibers
        .iter()
        .map(|(tf, _)| tf.iter().map(|v| v.norm_sqr()).sum())
        .collect();
    let top = norms.iter().copied().fold(0.0, f64::max);
    let eta: Vec<Complex64> = fibers
        .iter()
        .zip(&norms)
        .map(|((tf, tg), &nf)| {
            if nf > 0.0 && nf > (DEFAULT_TOL * DEFAULT_TOL) * top {
                tg.iter().zip(tf).map(|(a, b)| a * b.conj()).sum::<Complex64>() / nf
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let group = mctx.group();
    let extended: Vec<Complex64> = (0..group.order()).map(|gamma| eta[mctx.locate(gamma).0]).collect();
    let diff: f64 = (0..group.order())
        .map(|gamma| (gh.values()[gamma] - extended[gamma] * fh.values()[gamma]).norm_sqr())
        .sum();
    Ok(TransferFunction {
        section: mctx.section().reps(),
        eta,
        residual: (diff / group.order() as f64).sqrt(),
        extended,
    })
}

/// `l_m(w + h*) = (m, w + s)`: an `H*`-periodic function agreeing with the
/// character `(m, .)` on the block `B_s`.
pub fn periodized_character(ictx: &InvarianceContext, m: &Element, sigma: &Element) -> Result<Vec<Complex64>> {
    let g = ictx.base.group();
    if !ictx.m().contains(m) {
        return Err(Error::NotInM(m.clone()));
    }
    let spos = ictx.sigma_position(sigma)?;
    let s = ictx.nu.rep_indices()[spos];
    let mi = g.index_of(m);
    let roots = g.roots_of_unity();
    let reps = ictx.base.section().rep_indices();
    Ok((0..g.order())
        .map(|gamma| {
            let w = reps[ictx.base.locate(gamma).0];
            roots[g.pairing_index(mi, g.add_index(w, s))]
        })
        .collect())
}

/// A generator whose `H`-invariant space has invariance set exactly `M`: its
/// spectrum is the indicator of the block `B_0`.
pub fn construct_exactly_invariant(group: &Group, h: &Subgroup, m: &Subgroup) -> Result<Signal> {
    let base = FiberContext::new(group, h)?;
    let ictx = refine_context(&base, m)?;
    debug_assert_eq!(ictx.nu.rep_indices()[0], 0);
    Ok(idft(&Spectrum::indicator(group, ictx.block_indices(0))))
}

/// Support sizes against the dimension-function bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    /// `|E_j|` for `j = 0..=l`, where `E_j = { w in Omega : dim_S(w) = j }`.
    pub e_sizes: Vec<usize>,
    /// `|supp phi_i^ cap D|` per generator, on the canonical section `D` of `Gamma/M*`.
    pub support_in_section: Vec<usize>,
    /// `sum_j j |E_j|`.
    pub weighted_dimension: usize,
    /// `|Omega| * l`.
    pub capacity: usize,
    pub section_size: usize,
    /// Generators whose support exceeds `weighted_dimension`.
    pub violations: Vec<usize>,
    /// For `M = G`: the spectral set `E` with `S = { f : supp f^ in E }`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wiener_set: Option<Vec<Element>>,
}

impl SupportReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.weighted_dimension <= self.capacity
    }
}

/// The support bound only constrains `M`-invariant spaces; a violation here
/// certifies that the space is not `M`-invariant.
pub fn support_report(ictx: &InvarianceContext, family: &[Signal], tol_rel: f64) -> Result<SupportReport> {
    let base = &ictx.base;
    let g = base.group();
    let spectra = base.spectra_of(family)?;
    let dims = dim_function_spectra(base, &spectra, tol_rel);
    let ell = family.len();
    let mut e_sizes = vec![0; ell + 1];
    for &d in &dims {
        e_sizes[d] += 1;
    }
    let weighted_dimension = e_sizes.iter().enumerate().map(|(j, &n)| j * n).sum();
    let d_section = ictx.d_section().rep_indices();
    let support_in_section: Vec<usize> = spectra
        .iter()
        .map(|s| {
            let supp = s.support(tol_rel);
            d_section.iter().filter(|d| supp.binary_search(d).is_ok()).count()
        })
        .collect();
    let violations = support_in_section
        .iter()
        .enumerate()
        .filter_map(|(i, &n)| (n > weighted_dimension).then_some(i))
        .collect();
    let wiener_set = ictx.m().is_whole().then(|| {
        let mut union: Vec<usize> = spectra.iter().flat_map(|s| s.support(tol_rel)).collect();
        union.sort_unstable();
        union.dedup();
        union.into_iter().map(|i| g.element_at(i)).collect()
    });
    Ok(SupportReport {
        e_sizes,
        support_in_section,
        weighted_dimension,
        capacity: base.num_fibers() * ell,
        section_size: base.num_fibers(),
        violations,
        wiener_set,
    })
}
