//! One-dimensional root finding and minimization.

use crate::error::{Error, Result};
use crate::Scalar;

/// Root of `f` in [lo, hi] by bisection; the endpoint values must differ in sign.
pub fn bisect<T, F>(mut f: F, mut lo: T, mut hi: T, xtol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence("bisect (root not bracketed)"));
    }
    for _ in 0..400 {
        let mid = (lo + hi) / T::c(2.0);
        if (hi - lo).abs() <= xtol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence("bisect"))
}

/// Newton iteration on a bracket [lo, hi], falling back to bisection whenever
/// a step leaves the bracket. `fdf` returns (f, f').
pub fn newton_bracketed<T, F>(mut fdf: F, mut lo: T, mut hi: T, xtol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<(T, T)>,
{
    let (flo, _) = fdf(lo)?;
    let (fhi, _) = fdf(hi)?;
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence("newton_bracketed (root not bracketed)"));
    }
    let rising = fhi > T::zero();
    let mut x = (lo + hi) / T::c(2.0);
    for _ in 0..200 {
        let (fx, dfx) = fdf(x)?;
        if fx == T::zero() {
            return Ok(x);
        }
        if (fx > T::zero()) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - fx / dfx;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = (lo + hi) / T::c(2.0);
        }
        if (next - x).abs() <= xtol || (hi - lo).abs() <= xtol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence("newton_bracketed"))
}

/// Minimizer of a unimodal `f` on [a, b] by golden-section search.
pub fn golden_section_min<T, F>(mut f: F, mut a: T, mut b: T, xtol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let invphi = (T::c(5.0).sqrt() - T::one()) / T::c(2.0);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..500 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d)?;
        }
    }
    Ok((a + b) / T::c(2.0))
}
