//! Complex Hermitian linear algebra: log-det MIMO capacity, characteristic
//! polynomials, principal submatrices and the subset/derivative identity
//! checker used as the module's central correctness oracle.

use crate::combin::{combinations, factorial};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::network::CapacityBits;

/// Largest matrix order accepted by [`verify_submatrix_identity`]. The
/// checker enumerates all C(n, k) principal submatrices, so it is a desk
/// oracle, not a production path.
pub const MAX_IDENTITY_ORDER: usize = 12;

/// Dense complex matrix, row-major. In channel contexts rows index receive
/// antennas and columns index transmit antennas.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex::ZERO; rows * cols],
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        // components can be finite while |h|^2 overflows
        if data.iter().any(|z| !z.norm_sqr().is_finite()) {
            return Err(Error::NonFinite {
                what: "squared entry magnitude",
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex {
        assert!(self.is_square());
        let mut t = Complex::ZERO;
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }

    /// Submatrix keeping the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.get(r, c));
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr().sqrt())
            .fold(0.0, f64::max)
    }
}

/// Sorted, duplicate-free set of matrix indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateIndex { index: pair[0] });
            }
        }
        Ok(IndexSet { indices })
    }

    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn check_within(&self, dim: usize) -> Result<()> {
        if let Some(&max) = self.indices.last() {
            if max >= dim {
                return Err(Error::IndexOutOfRange { index: max, dim });
            }
        }
        Ok(())
    }
}

/// Real polynomial; `coeffs[j]` is the coefficient of the j-th power.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch(
                "a polynomial needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                what: "polynomial coefficient",
            });
        }
        Ok(RealPolynomial { coeffs })
    }

    pub fn zero() -> Self {
        RealPolynomial { coeffs: vec![0.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the j-th power (zero beyond the stored degree).
    pub fn coeff(&self, power: usize) -> f64 {
        self.coeffs.get(power).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// m-th formal derivative. Differentiating past the degree yields the
    /// zero polynomial.
    pub fn derivative(&self, m: usize) -> RealPolynomial {
        if m == 0 {
            return self.clone();
        }
        if m > self.degree() {
            return RealPolynomial::zero();
        }
        let mut coeffs = self.coeffs.clone();
        for _ in 0..m {
            let mut next = Vec::with_capacity(coeffs.len() - 1);
            for (j, &c) in coeffs.iter().enumerate().skip(1) {
                next.push(c * j as f64);
            }
            if next.is_empty() {
                next.push(0.0);
            }
            coeffs = next;
        }
        RealPolynomial { coeffs }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }
}

/// m-th formal derivative of a polynomial.
pub fn poly_derivative(p: &RealPolynomial, m: usize) -> RealPolynomial {
    p.derivative(m)
}

/// The Hermitian matrix I + H H^dagger of a channel matrix.
pub fn identity_plus_gram(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = Complex::ZERO;
            for k in 0..h.cols() {
                acc += h.get(i, k) * h.get(j, k).conj();
            }
            if i == j {
                acc += Complex::ONE;
            }
            a.set(i, j, acc);
            if i != j {
                a.set(j, i, acc.conj());
            }
        }
    }
    a
}

/// MIMO capacity with i.i.d. unit-power inputs: log2 det(I + H H^dagger),
/// computed through a diagonally pivoted Hermitian Cholesky factorization.
/// The matrix I + H H^dagger is positive definite with all eigenvalues at
/// least one.
///
/// ```rust
/// use relaycap::{mimo_capacity, Complex, ComplexMatrix};
///
/// // 2x2 channel with unit gains everywhere: log2(1 + 4) bits
/// let h = ComplexMatrix::from_rows(2, 2, vec![Complex::ONE; 4])?;
/// assert!((mimo_capacity(&h).bits() - 5.0_f64.log2()).abs() < 1e-12);
/// # Ok::<(), relaycap::Error>(())
/// ```
pub fn mimo_capacity(h: &ComplexMatrix) -> CapacityBits {
    let a = identity_plus_gram(h);
    CapacityBits::from_log_sum(cholesky_log2_det(a))
}

/// log2 det of a Hermitian matrix that is at least the identity, via
/// right-looking Cholesky with diagonal pivoting.
///
/// Every Schur-complement diagonal entry of such a matrix is at least one,
/// so pivots are clamped from below at one. The clamp only engages when
/// gains span more than ~2^52 in squared magnitude, where cancellation in
/// the trailing update can destroy the unit floor; the largest-diagonal
/// pivot order keeps the dominant factors exact, so huge-gain cuts stay
/// far above any weak minimum.
fn cholesky_log2_det(mut m: ComplexMatrix) -> f64 {
    debug_assert!(m.is_square());
    let n = m.rows();
    let mut log_det = 0.0;
    for j in 0..n {
        let mut p = j;
        for i in j + 1..n {
            if m.get(i, i).re() > m.get(p, p).re() {
                p = i;
            }
        }
        if p != j {
            for c in 0..n {
                let (a, b) = (m.get(j, c), m.get(p, c));
                m.set(j, c, b);
                m.set(p, c, a);
            }
            for r in 0..n {
                let (a, b) = (m.get(r, j), m.get(r, p));
                m.set(r, j, b);
                m.set(r, p, a);
            }
        }
        let pivot = m.get(j, j).re().max(1.0);
        log_det += pivot.log2();
        for i in j + 1..n {
            let lij = m.get(i, j).div_real(pivot);
            for k in j + 1..=i {
                let v = m.get(i, k) - lij * m.get(k, j).conj();
                m.set(i, k, v);
                if k != i {
                    m.set(k, i, v.conj());
                }
            }
        }
    }
    log_det
}

/// Hermitian part (A + A^dagger) / 2 of a square matrix.
pub fn hermitian_part(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = (a.get(i, j) + a.get(j, i).conj()).scale(0.5);
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Monic characteristic polynomial det(lambda I - A) of a Hermitian
/// matrix, via the Faddeev-LeVerrier recurrence. The input is symmetrized
/// to (A + A^dagger)/2 first, so the coefficients come out real.
pub fn char_poly(a: &ComplexMatrix) -> Result<RealPolynomial> {
    let a = hermitian_part(a)?;
    let n = a.rows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    if n == 0 {
        return RealPolynomial::new(vec![1.0]);
    }
    let mut m = a.clone();
    coeffs[n - 1] = -m.trace().re();
    for k in 2..=n {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        let mut shifted = m;
        let c = coeffs[n - k + 1];
        for i in 0..n {
            let v = shifted.get(i, i) + Complex::real(c).expect("finite coefficient");
            shifted.set(i, i, v);
        }
        m = a.mul(&shifted);
        coeffs[n - k] = -m.trace().re() / k as f64;
    }
    RealPolynomial::new(coeffs)
}

/// Principal submatrix of a square matrix: the rows and columns indexed by
/// a nonempty index set.
pub fn principal_submatrix(a: &ComplexMatrix, indices: &IndexSet) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    indices.check_within(a.rows())?;
    Ok(a.select(indices.as_slice(), indices.as_slice()))
}

/// k-th elementary symmetric polynomial of the inputs, via the stable
/// one-value-at-a-time recurrence. e_0 = 1.
pub fn elementary_symmetric(values: &[f64], k: usize) -> Result<f64> {
    let n = values.len();
    if k > n {
        return Err(Error::SubsetSizeOutOfRange { k, n });
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for (i, &x) in values.iter().enumerate() {
        let top = k.min(i + 1);
        for j in (1..=top).rev() {
            e[j] += x * e[j - 1];
        }
    }
    Ok(e[k])
}

/// Residuals of the two identities relating the characteristic polynomials
/// of the k-th order principal submatrices of a Hermitian matrix to the
/// (n-k)-th derivative of the full characteristic polynomial, and their
/// constant terms to the k-th elementary symmetric polynomial of the
/// eigenvalues.
#[derive(Clone, Copy, Debug)]
pub struct SubmatrixIdentityReport {
    pub order: usize,
    pub subset_size: usize,
    /// Max absolute coefficient difference between (n-k)! times the summed
    /// submatrix polynomials and the (n-k)-th derivative.
    pub poly_residual: f64,
    /// |sum of |constant terms| - e_k(eigenvalues)|. The eigenvalue side is
    /// read off the full characteristic polynomial.
    pub scalar_residual: f64,
    /// 1 + largest magnitude entering the comparison; relative tolerances
    /// scale by this.
    pub scale: f64,
}

impl SubmatrixIdentityReport {
    pub fn within(&self, rel_tol: f64) -> bool {
        self.poly_residual <= rel_tol * self.scale && self.scalar_residual <= rel_tol * self.scale
    }
}

/// Checks, for a Hermitian matrix A of order n and a subset size k, that
/// (n-k)! times the sum of the characteristic polynomials of all k x k
/// principal submatrices equals the (n-k)-th derivative of the
/// characteristic polynomial of A, and that the summed magnitudes of their
/// constant terms equal the k-th elementary symmetric polynomial of the
/// eigenvalues. Enumerates all C(n, k) subsets; capped at order
/// [`MAX_IDENTITY_ORDER`].
pub fn verify_submatrix_identity(a: &ComplexMatrix, k: usize) -> Result<SubmatrixIdentityReport> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n > MAX_IDENTITY_ORDER {
        return Err(Error::MatrixTooLarge {
            n,
            cap: MAX_IDENTITY_ORDER,
        });
    }
    if k == 0 || k > n {
        return Err(Error::SubsetSizeOutOfRange { k, n });
    }
    let a = hermitian_part(a)?;
    let full = char_poly(&a)?;

    let mut summed = vec![0.0; k + 1];
    let mut const_magnitude_sum = 0.0;
    for subset in combinations(n, k) {
        let idx = IndexSet::new(subset).expect("combinations are duplicate-free");
        let sub = principal_submatrix(&a, &idx)?;
        let rho = char_poly(&sub)?;
        for (j, c) in rho.coeffs().iter().enumerate() {
            summed[j] += c;
        }
        const_magnitude_sum += rho.coeff(0).abs();
    }
    let scaling = factorial(n - k);
    for c in summed.iter_mut() {
        *c *= scaling;
    }
    let lhs = RealPolynomial::new(summed)?;
    let rhs = full.derivative(n - k);

    let mut poly_residual = 0.0_f64;
    for j in 0..=k {
        poly_residual = poly_residual.max((lhs.coeff(j) - rhs.coeff(j)).abs());
    }

    // e_k of the eigenvalues equals (-1)^k times the coefficient of the
    // (n-k)-th power of the characteristic polynomial.
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let e_k = sign * full.coeff(n - k);
    let scalar_residual = (const_magnitude_sum - e_k).abs();

    let scale = 1.0
        + lhs
            .max_abs_coeff()
            .max(rhs.max_abs_coeff())
            .max(e_k.abs())
            .max(const_magnitude_sum.abs());
    Ok(SubmatrixIdentityReport {
        order: n,
        subset_size: k,
        poly_residual,
        scalar_residual,
        scale,
    })
}
