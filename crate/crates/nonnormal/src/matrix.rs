//! Deterministic model matrices: the nilpotent shift, its block-diagonal
//! variant, the rank-one corner bump, and the closed forms attached to them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMat;

pub(crate) fn ensure_square(m: &CMat) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::InvalidDimension("dimension must be positive".into()));
    }
    Ok(m.nrows())
}

pub(crate) fn ensure_finite(m: &CMat) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let v = m[(i, j)];
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite);
            }
        }
    }
    Ok(())
}

/// Normalized trace (1/N)·tr M.
pub fn normalized_trace(m: &CMat) -> Result<Complex64> {
    let n = ensure_square(m)?;
    let mut t = Complex64::ZERO;
    for i in 0..n {
        t += m[(i, i)];
    }
    Ok(t / n as f64)
}

/// The N x N shift with ones on the superdiagonal and zeros elsewhere.
/// Nilpotent of order N; for N = 1 this is the 1x1 zero matrix.
pub fn nilpotent_shift(n: usize) -> Result<CMat> {
    if n == 0 {
        return Err(Error::InvalidDimension("shift dimension must be >= 1".into()));
    }
    Ok(CMat::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    }))
}

/// Block-diagonal shift: (b+1)-sized shift blocks stacked down the diagonal,
/// with a shorter zero block at the bottom when (b+1) does not divide N.
/// Equivalently the superdiagonal carries the pattern (1^b, 0, 1^b, 0, ...)
/// truncated to length N-1: entry (i, i+1) is zero iff (b+1) divides i
/// (1-based i). Nilpotent of order b+1.
pub fn block_nilpotent(b: usize, n: usize) -> Result<CMat> {
    if b == 0 {
        return Err(Error::InvalidDimension("block size b must be >= 1".into()));
    }
    if b >= n {
        return Err(Error::InvalidDimension(format!(
            "block size b = {b} must satisfy b <= N-1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok(CMat::from_fn(n, n, |i, j| {
        if j == i + 1 && (i + 1) % (b + 1) != 0 {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    }))
}

/// Rank-one corner bump: δ at the bottom-left entry (N, 1), zero elsewhere.
/// Added to the shift it closes the cycle 1 -> 2 -> ... -> N -> 1, so the
/// spectrum of shift + corner solves λ^N = δ.
pub fn corner_perturbation(n: usize, delta: Complex64) -> Result<CMat> {
    if n < 2 {
        return Err(Error::InvalidDimension(
            "corner perturbation needs N >= 2".into(),
        ));
    }
    if !delta.re.is_finite() || !delta.im.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(CMat::from_fn(n, n, |i, j| {
        if i == n - 1 && j == 0 {
            delta
        } else {
            Complex64::ZERO
        }
    }))
}

/// Squared Hilbert-Schmidt norm of the a-th power of the block shift,
/// in exact integer arithmetic: (b-a+1)·⌊N/(b+1)⌋ for 1 <= a <= b,
/// and 0 once a >= b+1.
pub fn nilpotent_power_norm_sq(b: usize, n: usize, a: usize) -> Result<u64> {
    if a == 0 {
        return Err(Error::InvalidDimension("power a must be >= 1".into()));
    }
    if b == 0 || b >= n {
        return Err(Error::InvalidDimension(format!(
            "need 1 <= b <= N-1, got b = {b}, N = {n}"
        )));
    }
    if a > b {
        return Ok(0);
    }
    Ok(((b - a + 1) as u64) * ((n / (b + 1)) as u64))
}

/// Hilbert-Schmidt norm of the a-th power of the block shift (closed form).
pub fn nilpotent_power_norm(b: usize, n: usize, a: usize) -> Result<f64> {
    Ok((nilpotent_power_norm_sq(b, n, a)? as f64).sqrt())
}

/// Spectrum of shift + corner bump, in closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum ShiftSpectrum {
    /// δ != 0: the N distinct solutions of λ^N = δ.
    Roots(Vec<Complex64>),
    /// δ = 0: the unperturbed nilpotent shift, spectrum {0} with full multiplicity.
    NilpotentZero { multiplicity: usize },
}

impl ShiftSpectrum {
    /// Eigenvalue list with multiplicity, whichever branch applies.
    pub fn values(&self) -> Vec<Complex64> {
        match self {
            ShiftSpectrum::Roots(v) => v.clone(),
            ShiftSpectrum::NilpotentZero { multiplicity } => {
                vec![Complex64::ZERO; *multiplicity]
            }
        }
    }
}

/// Exact spectrum of nilpotent_shift(N) + corner_perturbation(N, δ):
/// the N-th roots of δ, i.e. moduli |δ|^{1/N} at equally spaced angles.
pub fn perturbed_shift_spectrum(n: usize, delta: Complex64) -> Result<ShiftSpectrum> {
    if n < 2 {
        return Err(Error::InvalidDimension(
            "perturbed shift needs N >= 2".into(),
        ));
    }
    if delta == Complex64::ZERO {
        return Ok(ShiftSpectrum::NilpotentZero { multiplicity: n });
    }
    let r = delta.norm().powf(1.0 / n as f64);
    let base = delta.arg() / n as f64;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let roots = (1..=n)
        .map(|j| Complex64::from_polar(r, base + step * j as f64))
        .collect();
    Ok(ShiftSpectrum::Roots(roots))
}

/// A word in a matrix and its adjoint: an ordered list of exponent pairs
/// (α_i, β_i), evaluated as ∏ M^{α_i} (M*)^{β_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<(u32, u32)>,
}

impl Word {
    pub fn new(letters: Vec<(u32, u32)>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("word needs at least one letter".into()));
        }
        let degree: u64 = letters.iter().map(|&(a, b)| (a + b) as u64).sum();
        if degree == 0 {
            return Err(Error::InvalidArgument("word must have total degree >= 1".into()));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[(u32, u32)] {
        &self.letters
    }

    pub fn degree(&self) -> u64 {
        self.letters.iter().map(|&(a, b)| (a + b) as u64).sum()
    }

    /// Σα_i == Σβ_i: words whose normalized trace on the shift tends to 1.
    pub fn is_balanced(&self) -> bool {
        let fwd: u64 = self.letters.iter().map(|&(a, _)| a as u64).sum();
        let bwd: u64 = self.letters.iter().map(|&(_, b)| b as u64).sum();
        fwd == bwd
    }
}

fn mat_power(m: &CMat, k: u32) -> CMat {
    let n = m.nrows();
    let mut acc = CMat::<Complex64>::identity(n, n);
    for _ in 0..k {
        acc = &acc * m;
    }
    acc
}

/// Normalized word trace (1/N)·tr ∏ M^{α_i} (M*)^{β_i}.
/// Powers are formed by plain repeated multiplication; word degrees stay tiny.
pub fn word_trace(m: &CMat, w: &Word) -> Result<Complex64> {
    let n = ensure_square(m)?;
    ensure_finite(m)?;
    let adj = m.adjoint().to_owned();
    let mut acc = CMat::<Complex64>::identity(n, n);
    for &(a, b) in w.letters() {
        if a > 0 {
            acc = &acc * &mat_power(m, a);
        }
        if b > 0 {
            acc = &acc * &mat_power(&adj, b);
        }
    }
    normalized_trace(&acc)
}

/// Exhaustively checks the two monotonicity relations of the closed-form
/// power norms for a given (b, N):
///   (1) ‖T^a‖·‖T^c‖ < ‖T^{a-1}‖·‖T^{c+1}‖ for 3 <= c+2 <= a <= b,
///   (2) ‖T^a‖ <= ‖T^{a-1}‖ for every a >= 1 (with ‖T^0‖ = √N).
/// Comparisons run on the squared integer values, so they are exact.
pub fn power_norm_relations_hold(b: usize, n: usize) -> Result<bool> {
    if b == 0 || b >= n {
        return Err(Error::InvalidDimension(format!(
            "need 1 <= b <= N-1, got b = {b}, N = {n}"
        )));
    }
    // relation (1): squared form (b-a+1)(b-c+1) < (b-a+2)(b-c)
    for a in 3..=b {
        for c in 1..=(a - 2) {
            let lhs = nilpotent_power_norm_sq(b, n, a)? as u128
                * nilpotent_power_norm_sq(b, n, c)? as u128;
            let rhs = nilpotent_power_norm_sq(b, n, a - 1)? as u128
                * nilpotent_power_norm_sq(b, n, c + 1)? as u128;
            if lhs >= rhs {
                return Ok(false);
            }
        }
    }
    // relation (2), including the a = 1 step against ‖I‖² = N
    let mut prev = n as u64;
    for a in 1..=(b + 1) {
        let cur = nilpotent_power_norm_sq(b, n, a)?;
        if cur > prev {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::hs_norm;
    use approx::assert_relative_eq;

    #[test]
    fn shift_entries() {
        let t = nilpotent_shift(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if j == i + 1 { 1.0 } else { 0.0 };
                assert_eq!(t[(i, j)], Complex64::new(expect, 0.0));
            }
        }
        // N = 1 has no superdiagonal
        let t1 = nilpotent_shift(1).unwrap();
        assert_eq!(t1[(0, 0)], Complex64::ZERO);
        assert!(nilpotent_shift(0).is_err());
    }

    #[test]
    fn shift_self_adjoint_trace() {
        let t = nilpotent_shift(4).unwrap();
        let w = Word::new(vec![(1, 1)]).unwrap();
        let v = word_trace(&t, &w).unwrap();
        assert_relative_eq!(v.re, 0.75, max_relative = 1e-15);
        assert_relative_eq!(v.im, 0.0, max_relative = 1e-15);
    }

    #[test]
    fn block_pattern() {
        let t = block_nilpotent(1, 4).unwrap();
        let diag: Vec<f64> = (0..3).map(|i| t[(i, i + 1)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, 1.0]);

        let t = block_nilpotent(2, 6).unwrap();
        let diag: Vec<f64> = (0..5).map(|i| t[(i, i + 1)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, 0.0, 1.0, 1.0]);

        // off-superdiagonal entries all zero
        for i in 0..6 {
            for j in 0..6 {
                if j != i + 1 {
                    assert_eq!(t[(i, j)], Complex64::ZERO);
                }
            }
        }
        assert!(block_nilpotent(4, 4).is_err());
        assert!(block_nilpotent(0, 4).is_err());
    }

    #[test]
    fn block_with_b_n_minus_one_is_plain_shift() {
        for n in [2usize, 5, 9] {
            let a = block_nilpotent(n - 1, n).unwrap();
            let b = nilpotent_shift(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(a[(i, j)], b[(i, j)]);
                }
            }
        }
    }

    #[test]
    fn corner_single_entry() {
        let e = corner_perturbation(4, Complex64::new(1.0 / 16.0, 0.0)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (3, 0) { 1.0 / 16.0 } else { 0.0 };
                assert_eq!(e[(i, j)], Complex64::new(expect, 0.0));
            }
        }
        // zero amplitude gives the zero matrix
        let z = corner_perturbation(3, Complex64::ZERO).unwrap();
        assert_eq!(hs_norm(&z), 0.0);
        assert!(corner_perturbation(1, Complex64::ONE).is_err());
    }

    #[test]
    fn corner_operator_norm_is_amplitude() {
        let d = Complex64::new(0.3, -0.4);
        let e = corner_perturbation(5, d).unwrap();
        let op = crate::spectra::operator_norm(&e).unwrap();
        assert_relative_eq!(op, d.norm(), max_relative = 1e-12);
    }

    #[test]
    fn power_norm_closed_form_examples() {
        assert_relative_eq!(nilpotent_power_norm(2, 6, 1).unwrap(), 2.0);
        assert_eq!(nilpotent_power_norm(3, 8, 4).unwrap(), 0.0);
        // a = b collapses to ⌊N/(b+1)⌋^{1/2}
        for (b, n) in [(2usize, 7usize), (3, 11), (5, 30)] {
            let v = nilpotent_power_norm(b, n, b).unwrap();
            assert_relative_eq!(v, ((n / (b + 1)) as f64).sqrt());
        }
    }

    #[test]
    fn perturbed_spectrum_closed_form() {
        // N = 4, δ = 1/16: the roots are ±1/2, ±i/2
        let s = perturbed_shift_spectrum(4, Complex64::new(1.0 / 16.0, 0.0)).unwrap();
        let mut mods: Vec<f64> = s.values().iter().map(|z| z.norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for m in mods {
            assert_relative_eq!(m, 0.5, max_relative = 1e-14);
        }
        let vals = s.values();
        for target in [
            Complex64::new(0.5, 0.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(0.0, -0.5),
        ] {
            assert!(
                vals.iter().any(|z| (z - target).norm() < 1e-14),
                "missing root {target}"
            );
        }

        // unit-modulus amplitude keeps every root on the unit circle
        let s = perturbed_shift_spectrum(7, Complex64::from_polar(1.0, 0.9)).unwrap();
        for z in s.values() {
            assert_relative_eq!(z.norm(), 1.0, max_relative = 1e-14);
        }

        // N = 2, δ = 4 solves λ² = 4
        let s = perturbed_shift_spectrum(2, Complex64::new(4.0, 0.0)).unwrap();
        let mut re: Vec<f64> = s.values().iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(re[0], -2.0, max_relative = 1e-14);
        assert_relative_eq!(re[1], 2.0, max_relative = 1e-14);

        // degenerate branch
        let s = perturbed_shift_spectrum(5, Complex64::ZERO).unwrap();
        assert_eq!(s, ShiftSpectrum::NilpotentZero { multiplicity: 5 });
    }

    #[test]
    fn word_validation() {
        assert!(Word::new(vec![]).is_err());
        assert!(Word::new(vec![(0, 0)]).is_err());
        assert!(Word::new(vec![(0, 0), (1, 0)]).is_ok());
        let w = Word::new(vec![(2, 1), (0, 1)]).unwrap();
        assert_eq!(w.degree(), 4);
        assert!(w.is_balanced());
    }

    #[test]
    fn unbalanced_word_trace_vanishes() {
        let t = nilpotent_shift(6).unwrap();
        let w = Word::new(vec![(1, 0)]).unwrap();
        assert_eq!(word_trace(&t, &w).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn balanced_trace_tends_to_one() {
        // monotone trend of the balanced word (1,1) over growing N
        let w = Word::new(vec![(1, 1)]).unwrap();
        let mut prev = 0.0;
        for n in [16usize, 64, 256] {
            let t = nilpotent_shift(n).unwrap();
            let v = word_trace(&t, &w).unwrap().re;
            assert_relative_eq!(v, (n as f64 - 1.0) / n as f64, max_relative = 1e-14);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn nilpotency_order() {
        for (b, n) in [(1usize, 5usize), (2, 6), (3, 8), (4, 13)] {
            let t = block_nilpotent(b, n).unwrap();
            let p = mat_power(&t, (b + 1) as u32);
            assert_eq!(hs_norm(&p), 0.0, "T^{} should vanish for b={b}", b + 1);
            let q = mat_power(&t, b as u32);
            assert!(hs_norm(&q) > 0.0);
        }
    }

    #[test]
    fn closed_form_matches_numeric_power_norms() {
        // spot check; the exhaustive integer sweep lives in the acceptance suite
        for (b, n) in [(2usize, 6usize), (3, 10), (4, 9)] {
            let t = block_nilpotent(b, n).unwrap();
            for a in 1..=(b + 1) {
                let numeric = hs_norm(&mat_power(&t, a as u32));
                let closed = nilpotent_power_norm(b, n, a).unwrap();
                assert_relative_eq!(numeric, closed, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn relations_hold_for_small_blocks() {
        for b in 1..=8usize {
            for n in (b + 1)..=40 {
                assert!(power_norm_relations_hold(b, n).unwrap(), "b={b} n={n}");
            }
        }
    }
}
