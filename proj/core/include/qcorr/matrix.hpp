#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2 or 4, row-major storage.
/// This is all the linear algebra the two-qubit problem needs; anything
/// larger lives behind detail::hermitian_jacobi.
class ComplexMatrix {
public:
    ComplexMatrix() : dim_(2) {}
    explicit ComplexMatrix(int dim);

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    int size() const { return dim_ * dim_; }

    Complex& operator()(int i, int j) { return a_[i * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[i * dim_ + j]; }

    Complex* data() { return a_.data(); }
    const Complex* data() const { return a_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    /// Largest entry magnitude (the infinity norm used by all tolerances here).
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-9) const { return hermiticity_error() < tol; }

private:
    int dim_;
    std::array<Complex, 16> a_{};
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);

/// Eigenvalues sorted descending, matching orthonormal eigenvectors as columns.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Hermitian eigensolver (cyclic complex Jacobi). Throws NotHermitian if
/// the input deviates from A = A^dagger by more than 1e-9.
/// Ordering is deterministic: descending eigenvalues, each eigenvector's
/// first nonzero component rotated to the positive real axis.
EigenSystem hermitian_eigensystem(const ComplexMatrix& a);

/// Kronecker product of two 2x2 matrices; first factor is qubit 1.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out one qubit of a two-qubit operator; keep is 1 or 2.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int keep);

/// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) are clipped to zero;
/// anything below -1e-9 throws NotPSD.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

/// Eigenvalues of a real symmetric 3x3 matrix (row-major), descending.
std::array<double, 3> symmetric3_eigenvalues(const std::array<double, 9>& m);

namespace pauli {
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
const ComplexMatrix& id2();
const ComplexMatrix& id4();
/// sigma_1, sigma_2, sigma_3
const ComplexMatrix& sigma(int n);
}  // namespace pauli

namespace detail {
/// Cyclic Jacobi on an n x n Hermitian matrix held row-major in `a`
/// (destroyed). Eigenvalues land in `vals` (unsorted), eigenvectors as
/// columns of `vecs`. Supports any small n; the public wrappers pin n.
void hermitian_jacobi(std::vector<Complex>& a, std::vector<Complex>& vecs,
                      std::vector<double>& vals, int n);
}  // namespace detail

}  // namespace qcorr
