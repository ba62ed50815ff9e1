//! Fiberization of `L^2(G)` over a subgroup `K`: a function is cut into the
//! vectors `(f^(w + k*))_{k* in K*}`, one per representative `w` of `Gamma / K*`.
//! Gramians, dimension functions and fiber-space membership are computed from
//! those vectors.
//!
//! Zero tests use a scale common to all fibers of a computation (never a
//! per-fiber scale), so floating point noise in a fiber that is exactly zero in
//! exact arithmetic is not mistaken for a nonzero direction.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{annihilator, Element, Group, Subgroup, Transversal};
use crate::spectral::{dft, Signal, Spectrum};

/// Default relative tolerance for numerical rank and residual tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Precomputed data for the fiberization over a translation subgroup `K`.
#[derive(Debug, Clone)]
pub struct FiberContext {
    group: Group,
    translations: Subgroup,
    annihilator: Subgroup,
    section: Transversal,
    // fiber_index[w][j] = index of section[w] + kstar[j]
    fiber_index: Vec<Vec<usize>>,
}

impl FiberContext {
    pub fn new(group: &Group, k: &Subgroup) -> Result<Self> {
        if k.group() != group {
            return Err(Error::GroupMismatch);
        }
        let kstar = annihilator(group, k);
        let section = Transversal::new(&Subgroup::whole(group), &kstar)?;
        let fiber_index = section
            .rep_indices()
            .iter()
            .map(|&w| kstar.indices().iter().map(|&h| group.add_index(w, h)).collect())
            .collect();
        Ok(FiberContext {
            group: group.clone(),
            translations: k.clone(),
            annihilator: kstar,
            section,
            fiber_index,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// The translation subgroup `K`.
    pub fn translations(&self) -> &Subgroup {
        &self.translations
    }

    /// `K*`, whose lexicographic order is the coordinate order of every fiber.
    pub fn annihilator(&self) -> &Subgroup {
        &self.annihilator
    }

    pub fn kstar_order(&self) -> Vec<Element> {
        self.annihilator.elements()
    }

    /// Canonical section of `Gamma / K*`.
    pub fn section(&self) -> &Transversal {
        &self.section
    }

    pub fn num_fibers(&self) -> usize {
        self.section.len()
    }

    pub fn fiber_len(&self) -> usize {
        self.annihilator.order()
    }

    /// `m_{K*}({0})` under the dual normalization, i.e. `1/|G|`.
    pub fn point_mass(&self) -> f64 {
        1.0 / self.group.order() as f64
    }

    /// Dual-group indices making up the fiber at section position `pos`.
    pub fn fiber_indices(&self, pos: usize) -> &[usize] {
        &self.fiber_index[pos]
    }

    /// Splits a dual element into (section position, position inside `K*`).
    pub fn locate(&self, gamma: usize) -> (usize, usize) {
        let pos = self.section.coset_of(gamma).expect("section tiles the dual group");
        let offset = self
            .group
            .sub_index(gamma, self.section.rep_indices()[pos]);
        let j = self
            .annihilator
            .indices()
            .binary_search(&offset)
            .expect("offset lies in the annihilator");
        (pos, j)
    }

    pub fn section_position(&self, omega: &Element) -> Result<usize> {
        self.section
            .position(omega)
            .ok_or_else(|| Error::NotInSection(omega.clone()))
    }

    pub(crate) fn fiber(&self, spectrum: &Spectrum, pos: usize) -> Vec<Complex64> {
        self.fiber_index[pos]
            .iter()
            .map(|&i| spectrum.values()[i])
            .collect()
    }

    pub(crate) fn spectra_of(&self, signals: &[Signal]) -> Result<Vec<Spectrum>> {
        signals
            .iter()
            .map(|s| {
                if s.group() == &self.group {
                    Ok(dft(s))
                } else {
                    Err(Error::GroupMismatch)
                }
            })
            .collect()
    }
}

/// The fibers of one function, one column per section representative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberMatrix {
    pub omegas: Vec<Element>,
    pub kstar: Vec<Element>,
    #[serde(serialize_with = "crate::report::complex_columns")]
    pub columns: Vec<Vec<Complex64>>,
    point_mass: f64,
}

impl FiberMatrix {
    /// `||T f||^2 = int_Omega ||T f(w)||^2 dm(w)`, where the fiber norm carries
    /// the weight `m_{K*}({0})` and the section carries the dual measure.
    pub fn norm_sqr(&self) -> f64 {
        let raw: f64 = self
            .columns
            .iter()
            .flat_map(|c| c.iter())
            .map(|v| v.norm_sqr())
            .sum();
        raw * self.point_mass * self.point_mass
    }

    pub fn entry_count(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
}

pub fn fiberize(ctx: &FiberContext, f: &Signal) -> Result<FiberMatrix> {
    if f.group() != ctx.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(fiberize_spectrum(ctx, &dft(f)))
}

pub fn fiberize_spectrum(ctx: &FiberContext, spectrum: &Spectrum) -> FiberMatrix {
    FiberMatrix {
        omegas: ctx.section().reps(),
        kstar: ctx.kstar_order(),
        columns: (0..ctx.num_fibers()).map(|p| ctx.fiber(spectrum, p)).collect(),
        point_mass: ctx.point_mass(),
    }
}

/// Gramian of a family at one section point.
#[derive(Debug, Clone, PartialEq)]
pub struct Gramian {
    pub omega: Element,
    pub matrix: DMatrix<Complex64>,
}

impl Gramian {
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let m = &self.matrix;
        (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| (m[(i, j)] - m[(j, i)].conj()).norm() <= tol))
    }
}

/// Fiber columns of a family at section position `pos`, as an `|K*| x l` matrix.
pub(crate) fn fiber_matrix_at(ctx: &FiberContext, spectra: &[Spectrum], pos: usize) -> DMatrix<Complex64> {
    let idx = ctx.fiber_indices(pos);
    DMatrix::from_fn(idx.len(), spectra.len(), |r, c| spectra[c].values()[idx[r]])
}

pub(crate) fn gram_from_fibers(fibers: &DMatrix<Complex64>, point_mass: f64) -> DMatrix<Complex64> {
    // [G]_ij = <T phi_i, T phi_j>, linear in the first slot
    (fibers.transpose() * fibers.conjugate()).map(|v| v * point_mass)
}

pub(crate) fn gramian_spectra(ctx: &FiberContext, spectra: &[Spectrum], pos: usize) -> DMatrix<Complex64> {
    gram_from_fibers(&fiber_matrix_at(ctx, spectra, pos), ctx.point_mass())
}

/// `[G(w)]_ij = m_{K*}({0}) sum_{k*} phi_i^(w + k*) conj(phi_j^(w + k*))`.
pub fn gramian(ctx: &FiberContext, family: &[Signal], omega: &Element) -> Result<Gramian> {
    if family.is_empty() {
        return Err(Error::NoGenerators);
    }
    let pos = ctx.section_position(omega)?;
    let spectra = ctx.spectra_of(family)?;
    Ok(Gramian {
        omega: omega.clone(),
        matrix: gramian_spectra(ctx, &spectra, pos),
    })
}

pub(crate) fn singular_values(mat: &DMatrix<Complex64>) -> Vec<f64> {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return Vec::new();
    }
    mat.clone().singular_values().iter().copied().collect()
}

pub(crate) fn largest_singular_value(mat: &DMatrix<Complex64>) -> f64 {
    singular_values(mat).into_iter().fold(0.0, f64::max)
}

/// Number of singular values strictly above `threshold`.
pub(crate) fn rank_above(mat: &DMatrix<Complex64>, threshold: f64) -> usize {
    singular_values(mat).into_iter().filter(|&s| s > threshold && s > 0.0).count()
}

/// Number of singular values above `tol_rel` times the largest one.
pub fn numerical_rank(mat: &DMatrix<Complex64>, tol_rel: f64) -> usize {
    let sv = singular_values(mat);
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.into_iter().filter(|&s| s > tol_rel * top).count()
}

/// Ranks of Gramians that are compared against each other, all thresholded
/// against `tol_rel` times the largest singular value in `reference`.
pub(crate) fn common_scale(reference: &[DMatrix<Complex64>]) -> f64 {
    reference.iter().map(largest_singular_value).fold(0.0, f64::max)
}

/// `w -> dim span { T phi(w) : phi in family }`, computed as Gramian ranks.
pub fn dim_function(ctx: &FiberContext, family: &[Signal], tol_rel: f64) -> Result<Vec<(Element, usize)>> {
    let spectra = ctx.spectra_of(family)?;
    Ok(dim_function_spectra(ctx, &spectra, tol_rel)
        .into_iter()
        .zip(ctx.section().reps())
        .map(|(d, w)| (w, d))
        .collect())
}

pub(crate) fn dim_function_spectra(ctx: &FiberContext, spectra: &[Spectrum], tol_rel: f64) -> Vec<usize> {
    let grams: Vec<_> = (0..ctx.num_fibers())
        .map(|p| gramian_spectra(ctx, spectra, p))
        .collect();
    let threshold = tol_rel * common_scale(&grams);
    grams.iter().map(|g| rank_above(g, threshold)).collect()
}

/// Outcome of a fiber-space membership test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Least-squares residual of the candidate's fiber at each section point.
    pub residuals: Vec<f64>,
    /// Residual bound applied at every section point.
    pub threshold: f64,
}

/// Orthonormal bases of the fiber spaces `span { T phi(w) }`, reusable across
/// many membership queries.
#[derive(Debug, Clone)]
pub(crate) struct FiberSpan {
    bases: Vec<DMatrix<Complex64>>,
    scale: f64,
    tol_rel: f64,
}

impl FiberSpan {
    pub(crate) fn new(ctx: &FiberContext, spectra: &[Spectrum], tol_rel: f64) -> Self {
        let mats: Vec<_> = (0..ctx.num_fibers())
            .map(|p| fiber_matrix_at(ctx, spectra, p))
            .collect();
        let scale = common_scale(&mats);
        let bases = mats
            .into_iter()
            .map(|a| {
                if a.ncols() == 0 || scale == 0.0 {
                    return DMatrix::zeros(a.nrows(), 0);
                }
                let svd = a.svd(true, false);
                let u = svd.u.expect("requested U");
                let keep: Vec<usize> = svd
                    .singular_values
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &s)| (s > tol_rel * scale).then_some(i))
                    .collect();
                u.select_columns(keep.iter())
            })
            .collect();
        FiberSpan { bases, scale, tol_rel }
    }

    pub(crate) fn test(&self, ctx: &FiberContext, candidate: &Spectrum) -> Membership {
        let fibers: Vec<_> = (0..ctx.num_fibers())
            .map(|p| nalgebra::DVector::from_vec(ctx.fiber(candidate, p)))
            .collect();
        let own_scale = fibers.iter().map(|b| b.norm()).fold(0.0, f64::max);
        let threshold = self.tol_rel * self.scale.max(own_scale);
        let residuals: Vec<f64> = fibers
            .iter()
            .zip(&self.bases)
            .map(|(b, q)| {
                if q.ncols() == 0 {
                    return b.norm();
                }
                let coeffs = q.adjoint() * b;
                (b - q * coeffs).norm()
            })
            .collect();
        Membership {
            member: residuals.iter().all(|&r| r <= threshold),
            residuals,
            threshold,
        }
    }
}

/// Whether `T g(w)` lies in `span { T phi(w) : phi in family }` for every `w`.
pub fn fiber_membership(ctx: &FiberContext, family: &[Signal], g: &Signal, tol_rel: f64) -> Result<Membership> {
    let spectra = ctx.spectra_of(family)?;
    let target = ctx.spectra_of(std::slice::from_ref(g))?.remove(0);
    Ok(FiberSpan::new(ctx, &spectra, tol_rel).test(ctx, &target))
}
