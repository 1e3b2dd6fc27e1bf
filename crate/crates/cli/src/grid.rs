use fracsum_core::numeric::distance_to_nonpositive_integers;
use fracsum_core::{frac_sum, BasisFunction, CatalogExpr, Complex64};
use rayon::prelude::*;

use crate::format::fmt_real;

pub const HEADER: &str = "re,im,val_re,val_im,status";

/// A closed interval sampled at `n + 1` evenly spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, step: f64) -> Self {
        let n = ((hi - lo) / step).round().max(0.0) as usize;
        Self { lo, hi, n }
    }

    pub fn at(&self, i: usize) -> f64 {
        if self.n == 0 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / self.n as f64
        }
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }
}

/// Whether the closed form of Σ_{k=1}^{z} e(k) has a pole within `radius`
/// of z: for a term in k + s that happens when z + s + 1 is a non-positive
/// integer.
fn near_pole(e: &CatalogExpr, z: Complex64, radius: f64) -> bool {
    e.terms().iter().any(|t| {
        matches!(t.basis, BasisFunction::InverseMonomial(_) | BasisFunction::Logarithm)
            && distance_to_nonpositive_integers(z + t.shift + 1.0) < radius
    })
}

fn row(e: &CatalogExpr, re: f64, im: f64, step: f64) -> String {
    let z = Complex64::new(re, im);
    let (value, status) = if near_pole(e, z, step / 2.0) {
        (None, "pole")
    } else {
        match frac_sum(e, Complex64::new(1.0, 0.0), z) {
            Ok(r) if r.value.re.is_finite() && r.value.im.is_finite() => (Some(r.value), "ok"),
            _ => (None, "error"),
        }
    };
    let (vr, vi) = value.map_or((String::new(), String::new()), |v| (fmt_real(v.re), fmt_real(v.im)));
    format!("{},{},{vr},{vi},{status}\n", fmt_real(re), fmt_real(im))
}

/// CSV text of Σ_{k=1}^{z} e(k) over the grid, imaginary axis outer.
pub fn render(e: &CatalogExpr, re: Axis, im: Axis, step: f64) -> String {
    let rows: Vec<String> = (0..im.len() * re.len())
        .into_par_iter()
        .map(|idx| row(e, re.at(idx % re.len()), im.at(idx / re.len()), step))
        .collect();
    let mut out = String::with_capacity(HEADER.len() + 1 + rows.iter().map(String::len).sum::<usize>());
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
    }
    out
}
