//! Serialization helpers: complex numbers are written as `[re, im]` pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};

pub fn complex_pair(v: &Complex64) -> [f64; 2] {
    [v.re, v.im]
}

pub fn complex_vec<S: Serializer>(values: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&complex_pair(v))?;
    }
    seq.end()
}

pub fn complex_columns<S: Serializer>(columns: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<Vec<[f64; 2]>> = columns
        .iter()
        .map(|c| c.iter().map(complex_pair).collect())
        .collect();
    s.collect_seq(pairs)
}

/// Row-major `[[ [re, im], ... ], ...]`.
pub fn complex_matrix<S: Serializer>(m: &DMatrix<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| complex_pair(&m[(r, c)])).collect())
        .collect();
    s.collect_seq(rows)
}
