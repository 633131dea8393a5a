use crate::Scalar;

/// Generalized Laguerre polynomial L_k^(alpha)(z) by the three-term recurrence
/// (j+1) L_{j+1} = (2j + 1 + alpha - z) L_j - (j + alpha) L_{j-1}.
pub fn laguerre<T: Scalar>(k: usize, alpha: T, z: T) -> T {
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = T::one() + alpha - z;
    for j in 1..k {
        let jj = T::of(j);
        let next = ((T::c(2.0) * jj + T::one() + alpha - z) * cur - (jj + alpha) * prev) / (jj + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// L_k^(alpha)(z) from the explicit sum of binom(k+alpha, k-i) (-z)^i / i!.
///
/// Returns the value and the sum of absolute monomials (the evaluation scale).
pub fn laguerre_monomial<T: Scalar>(k: usize, alpha: T, z: T) -> (T, T) {
    let mut val = T::zero();
    let mut scale = T::zero();
    for i in 0..=k {
        // binom(k + alpha, k - i) = prod_{j=1}^{k-i} (alpha + i + j) / j
        let mut c = T::one();
        for j in 1..=(k - i) {
            c = c * (alpha + T::of(i + j)) / T::of(j);
        }
        let mut m = c;
        for j in 1..=i {
            m = m * (-z) / T::of(j);
        }
        val = val + m;
        scale = scale + m.abs();
    }
    (val, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_degrees() {
        for &z in &[-1.0_f64, 0.0, 2.5, 10.0] {
            assert_eq!(laguerre(0, 2.0, z), 1.0);
        }
        assert_eq!(laguerre(1, 4.0_f64, 3.0), 2.0);
    }

    #[test]
    fn recurrence_matches_monomial_sum() {
        let (v, _) = laguerre_monomial(2, 5.0_f64, 1.0);
        assert_relative_eq!(laguerre(2, 5.0_f64, 1.0), v, max_relative = 1e-14);
        // L_2^(5)(1) = 1/2 - 7 + 21 = 14.5
        assert_relative_eq!(v, 14.5, max_relative = 1e-15);
    }
}
