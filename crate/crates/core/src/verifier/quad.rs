//! Adaptive Gauss–Kronrod quadrature, with infinite upper limits handled by
//! the substitution tau = 1/r.

use crate::error::{Error, Result};
use crate::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn kronrod<T, F>(f: &mut F, a: T, b: T) -> Result<Piece<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let c = (a + b) / T::c(2.0);
    let hw = (b - a) / T::c(2.0);
    let fc = f(c)?;
    let mut k = fc * T::c(WGK[7]);
    let mut g = fc * T::c(WG[3]);
    for j in 0..7 {
        let dx = hw * T::c(XGK[j]);
        let s = f(c - dx)? + f(c + dx)?;
        k = k + s * T::c(WGK[j]);
        if j % 2 == 1 {
            g = g + s * T::c(WG[j / 2]);
        }
    }
    let value = k * hw;
    if !value.is_finite() {
        return Err(Error::NoConvergence("adaptive_quad (non-finite integrand)"));
    }
    Ok(Piece { a, b, value, err: ((k - g) * hw).abs() })
}

fn finite<T, F>(f: &mut F, a: T, b: T, tol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let mut pieces = vec![kronrod(f, a, b)?];
    loop {
        let total: T = pieces.iter().fold(T::zero(), |s, p| s + p.value);
        let err: T = pieces.iter().fold(T::zero(), |s, p| s + p.err);
        if err <= tol * total.abs() || err <= T::min_positive_value() {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::NoConvergence("adaptive_quad"));
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -T::one()), |acc, (i, p)| if p.err > acc.1 { (i, p.err) } else { acc });
        let p = pieces.swap_remove(worst);
        let mid = (p.a + p.b) / T::c(2.0);
        pieces.push(kronrod(f, p.a, mid)?);
        pieces.push(kronrod(f, mid, p.b)?);
    }
}

/// Integral of `f` over [a, b] to relative tolerance `tol`. `b` may be
/// `+inf` provided a >= 0; the tail beyond max(a, 1) is mapped by tau = 1/r.
pub fn adaptive_quad<T, F>(mut f: F, a: T, b: T, tol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    if b.is_finite() {
        return finite(&mut f, a, b, tol);
    }
    if a < T::zero() {
        return Err(Error::Domain { func: "adaptive_quad", detail: "infinite range needs a >= 0".into() });
    }
    let split = a.max(T::one());
    let head = if split > a { finite(&mut f, a, split, tol)? } else { T::zero() };
    let mut g = |tau: T| -> Result<T> {
        if tau == T::zero() {
            return Ok(T::zero());
        }
        let r = tau.recip();
        Ok(f(r)? * r * r)
    };
    let tail = finite(&mut g, T::zero(), split.recip(), tol)?;
    Ok(head + tail)
}

/// Double integral of f(r, phi) r dr dphi over a polar rectangle.
pub fn quad2d_polar<T, F>(mut f: F, r: (T, T), phi: (T, T), tol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T, T) -> Result<T>,
{
    adaptive_quad(
        |ph| adaptive_quad(|rr| Ok(f(rr, ph)? * rr), r.0, r.1, tol),
        phi.0,
        phi.1,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_half_line() {
        let v = adaptive_quad(|x: f64| Ok((-x * x).exp()), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((v - core::f64::consts::PI.sqrt() / 2.0).abs() < 1e-10);
    }

    #[test]
    fn polar_disk_area() {
        let v = quad2d_polar(|_, _| Ok(1.0_f64), (0.0, 2.0), (0.0, core::f64::consts::TAU), 1e-12).unwrap();
        assert_relative_eq!(v, 4.0 * core::f64::consts::PI, max_relative = 1e-12);
    }

    #[test]
    fn algebraic_tail() {
        let v = adaptive_quad(|x: f64| Ok(1.0 / (1.0 + x * x)), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert_relative_eq!(v, core::f64::consts::FRAC_PI_2, max_relative = 1e-11);
    }
}
