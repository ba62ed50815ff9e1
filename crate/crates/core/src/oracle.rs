//! Brute-force ground truth. Everything here works on time-domain vectors of
//! length `|G|` with dense Gram-Schmidt; nothing goes through fibers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{annihilator, transversal, Group, Subgroup, Transversal};
use crate::spectral::{dft, idft, translate, Signal, Spectrum};

/// The vectors `{ t_k phi : phi in family, k in K }`, generator-major.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    group: Group,
    columns: Vec<Vec<Complex64>>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

impl SpanBasis {
    pub fn new(group: &Group, k: &Subgroup, family: &[Signal]) -> Result<Self> {
        let mut columns = Vec::with_capacity(family.len() * k.order());
        for phi in family {
            if phi.group() != group {
                return Err(Error::GroupMismatch);
            }
            for e in k.elements() {
                columns.push(translate(phi, &e)?.into_values());
            }
        }
        Ok(SpanBasis {
            group: group.clone(),
            columns,
        })
    }

    pub fn columns(&self) -> &[Vec<Complex64>] {
        &self.columns
    }

    fn scale(&self) -> f64 {
        self.columns.iter().map(|c| norm(c)).fold(0.0, f64::max)
    }

    /// Orthonormal basis of the span (Gram-Schmidt with one reorthogonalization
    /// pass); directions shorter than `tol_rel` times the largest column are dropped.
    pub fn orthonormalize(&self, tol_rel: f64) -> Vec<Vec<Complex64>> {
        let cut = tol_rel * self.scale();
        let mut q: Vec<Vec<Complex64>> = Vec::new();
        for col in &self.columns {
            let mut w = col.clone();
            for _ in 0..2 {
                for b in &q {
                    let c = dot(&w, b);
                    for (x, y) in w.iter_mut().zip(b) {
                        *x -= c * y;
                    }
                }
            }
            let n = norm(&w);
            if n > cut && n > 0.0 {
                q.push(w.into_iter().map(|x| x / n).collect());
            }
        }
        q
    }

    pub fn rank(&self, tol_rel: f64) -> usize {
        self.orthonormalize(tol_rel).len()
    }

    /// Distance from `g` to the span.
    pub fn residual(&self, g: &Signal, tol_rel: f64) -> f64 {
        let q = self.orthonormalize(tol_rel);
        residual_against(&q, g.values())
    }
}

fn residual_against(q: &[Vec<Complex64>], v: &[Complex64]) -> f64 {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in q {
            let c = dot(&w, b);
            for (x, y) in w.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
    norm(&w)
}

/// Whether `g` lies in the span, comparing the residual with `tol_rel` times
/// the larger of `||g||` and the largest basis column.
pub fn brute_span_membership(basis: &SpanBasis, g: &Signal, tol_rel: f64) -> Result<bool> {
    if g.group() != &basis.group {
        return Err(Error::GroupMismatch);
    }
    let q = basis.orthonormalize(tol_rel);
    Ok(member(&q, basis.scale(), g.values(), tol_rel))
}

fn member(q: &[Vec<Complex64>], scale: f64, v: &[Complex64], tol_rel: f64) -> bool {
    let r = residual_against(q, v);
    r <= tol_rel * scale.max(norm(v))
}

/// `{ x : t_x phi in S_H(family) for all phi }`, straight from the definition.
/// The element set must already be a subgroup; otherwise an inconsistency is reported.
pub fn brute_invariance_set(group: &Group, h: &Subgroup, family: &[Signal], tol_rel: f64) -> Result<Subgroup> {
    let basis = SpanBasis::new(group, h, family)?;
    let q = basis.orthonormalize(tol_rel);
    let scale = basis.scale();
    let mut members = Vec::new();
    for x in 0..group.order() {
        let shift = group.element_at(x);
        let mut ok = true;
        for phi in family {
            if !member(&q, scale, translate(phi, &shift)?.values(), tol_rel) {
                ok = false;
                break;
            }
        }
        if ok {
            members.push(x);
        }
    }
    Subgroup::try_from_indices(group, &members)
        .ok_or_else(|| Error::Inconsistent(format!("translation set {members:?} is not closed")))
}

/// Block label of each dual element: `gamma = w + h*` with `w` in the section of
/// `Gamma/H*`, labelled by the coset of `h*` in `H*/M*`.
pub fn brute_block_labels(group: &Group, h: &Subgroup, m: &Subgroup) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(m) {
        return Err(Error::NotContained { inner: "H", outer: "M" });
    }
    let hstar = annihilator(group, h);
    let mstar = annihilator(group, m);
    let omega = transversal(group, &hstar)?;
    let nu = Transversal::new(&hstar, &mstar)?;
    (0..group.order())
        .map(|gamma| {
            let w = omega.rep_indices()[omega.coset_of(gamma).expect("section tiles")];
            let hs = group.sub_index(gamma, w);
            nu.coset_of(hs)
                .ok_or_else(|| Error::Inconsistent("offset outside H*".into()))
        })
        .collect()
}

fn block_cutoffs(group: &Group, h: &Subgroup, m: &Subgroup, family: &[Signal]) -> Result<Vec<Vec<Signal>>> {
    let labels = brute_block_labels(group, h, m)?;
    let blocks = labels.iter().copied().max().map_or(0, |l| l + 1);
    Ok((0..blocks)
        .map(|b| {
            family
                .iter()
                .map(|phi| {
                    let spec = dft(phi);
                    let masked = spec
                        .values()
                        .iter()
                        .zip(&labels)
                        .map(|(&v, &l)| if l == b { v } else { Complex64::new(0.0, 0.0) })
                        .collect();
                    idft(&Spectrum::new(group, masked).expect("length"))
                })
                .collect()
        })
        .collect())
}

/// Whether every block cut-off of every generator lies in `S_H(family)`.
pub fn brute_decomposition_check(
    group: &Group,
    h: &Subgroup,
    m: &Subgroup,
    family: &[Signal],
    tol_rel: f64,
) -> Result<bool> {
    let basis = SpanBasis::new(group, h, family)?;
    let q = basis.orthonormalize(tol_rel);
    let scale = basis.scale();
    for cut in block_cutoffs(group, h, m, family)? {
        for c in cut {
            if !member(&q, scale, c.values(), tol_rel) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(dim S, sum over blocks of dim span E_H(family^s))`. The first never
/// exceeds the second, with equality exactly when the space is `M`-invariant.
pub fn brute_dimensions(
    group: &Group,
    h: &Subgroup,
    m: &Subgroup,
    family: &[Signal],
    tol_rel: f64,
) -> Result<(usize, usize)> {
    let whole = SpanBasis::new(group, h, family)?;
    let scale = whole.scale();
    let dim_s = whole.rank(tol_rel);
    let mut total = 0;
    for cut in block_cutoffs(group, h, m, family)? {
        let part = SpanBasis::new(group, h, &cut)?;
        // rank against the scale of the whole family, so noise-level cut-offs count as zero
        total += part
            .orthonormalize(tol_rel * scale / part.scale().max(f64::MIN_POSITIVE))
            .len();
    }
    Ok((dim_s, total))
}
