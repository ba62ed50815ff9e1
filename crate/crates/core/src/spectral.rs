//! Fourier analysis on a finite abelian group.
//!
//! Normalization: the Haar measure on `G` is counting measure and the one on
//! the dual is counting measure divided by `|G|`, so the forward transform has
//! no prefactor and the inverse carries `1/|G|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{Element, Group};

macro_rules! group_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            group: Group,
            values: Vec<Complex64>,
        }

        impl $name {
            pub fn new(group: &Group, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != group.order() {
                    return Err(Error::LengthMismatch {
                        expected: group.order(),
                        found: values.len(),
                    });
                }
                Ok(Self {
                    group: group.clone(),
                    values,
                })
            }

            pub fn zero(group: &Group) -> Self {
                Self {
                    group: group.clone(),
                    values: vec![Complex64::new(0.0, 0.0); group.order()],
                }
            }

            /// Indicator of a set of elements, given by index.
            pub fn indicator(group: &Group, set: impl IntoIterator<Item = usize>) -> Self {
                let mut out = Self::zero(group);
                for i in set {
                    out.values[i] = Complex64::new(1.0, 0.0);
                }
                out
            }

            pub fn group(&self) -> &Group {
                &self.group
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn at(&self, e: &Element) -> Complex64 {
                self.values[self.group.index_of(e)]
            }

            /// Squared Euclidean norm of the value vector (counting measure).
            pub fn sum_sqr(&self) -> f64 {
                self.values.iter().map(|v| v.norm_sqr()).sum()
            }

            pub fn max_abs(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
            }
        }
    };
}

group_vector!(Signal, "A complex function on `G`, indexed lexicographically.");
group_vector!(Spectrum, "A complex function on the dual group, indexed like [`Signal`].");

impl Signal {
    pub fn delta(group: &Group, at: &Element) -> Result<Self> {
        group.check(at)?;
        Ok(Self::indicator(group, [group.index_of(at)]))
    }

    /// `||f||^2` in `L^2(G)`.
    pub fn norm_sqr(&self) -> f64 {
        self.sum_sqr()
    }

    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

impl Spectrum {
    /// `||F||^2` in `L^2(Gamma)` with the dual measure `counting / |G|`.
    pub fn norm_sqr(&self) -> f64 {
        self.sum_sqr() / self.group.order() as f64
    }

    /// Pointwise product with a function on the dual group.
    pub fn multiply(&self, factor: &[Complex64]) -> Result<Spectrum> {
        if factor.len() != self.values.len() {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                found: factor.len(),
            });
        }
        Ok(Spectrum {
            group: self.group.clone(),
            values: self.values.iter().zip(factor).map(|(a, b)| a * b).collect(),
        })
    }

    /// Spectrum of the translate `t_y f`, i.e. `(-y, gamma) f^(gamma)`.
    pub(crate) fn modulate(&self, y: usize) -> Spectrum {
        let g = &self.group;
        let roots = g.roots_of_unity();
        let e = g.exponent();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(gamma, v)| v * roots[(e - g.pairing_index(y, gamma)) % e])
            .collect();
        Spectrum {
            group: g.clone(),
            values,
        }
    }

    /// Indices where `|F| > tol * max|F|`.
    pub fn support(&self, tol_rel: f64) -> Vec<usize> {
        let cut = tol_rel * self.max_abs();
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| (v.norm() > cut && v.norm() > 0.0).then_some(i))
            .collect()
    }
}

/// `f^(gamma) = sum_x f(x) conj((x, gamma))`, evaluated directly.
pub fn dft(f: &Signal) -> Spectrum {
    let g = f.group();
    let roots = g.roots_of_unity();
    let e = g.exponent();
    let values = (0..g.order())
        .map(|gamma| {
            f.values()
                .iter()
                .enumerate()
                .map(|(x, v)| v * roots[(e - g.pairing_index(x, gamma)) % e])
                .sum()
        })
        .collect();
    Spectrum {
        group: g.clone(),
        values,
    }
}

/// `f(x) = (1/|G|) sum_gamma F(gamma) (x, gamma)`.
pub fn idft(spectrum: &Spectrum) -> Signal {
    let g = spectrum.group();
    let roots = g.roots_of_unity();
    let scale = 1.0 / g.order() as f64;
    let values = (0..g.order())
        .map(|x| {
            spectrum
                .values()
                .iter()
                .enumerate()
                .map(|(gamma, v)| v * roots[g.pairing_index(x, gamma)])
                .sum::<Complex64>()
                * scale
        })
        .collect();
    Signal {
        group: g.clone(),
        values,
    }
}

/// `(t_y f)(x) = f(x - y)`.
pub fn translate(f: &Signal, y: &Element) -> Result<Signal> {
    let g = f.group();
    g.check(y)?;
    let yi = g.index_of(y);
    let values = (0..g.order())
        .map(|x| f.values()[g.sub_index(x, yi)])
        .collect();
    Ok(Signal {
        group: g.clone(),
        values,
    })
}
