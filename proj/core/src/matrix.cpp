#include "qcorr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcorr/errors.hpp"

namespace qcorr {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) {
        throw DimensionMismatch("ComplexMatrix dimension must be 2 or 4, got " +
                                std::to_string(dim));
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix add: dimension mismatch");
    for (int k = 0; k < size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix sub: dimension mismatch");
    for (int k = 0; k < size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (int k = 0; k < size(); ++k) a_[k] *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(dim_);
    for (int k = 0; k < size(); ++k) m.a_[k] = std::conj(a_[k]);
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(j, i);
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < size(); ++k) m = std::max(m, std::abs(a_[k]));
    return m;
}

double ComplexMatrix::hermiticity_error() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim() != rhs.dim()) throw DimensionMismatch("matrix mul: dimension mismatch");
    const int n = lhs.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex v = lhs(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < n; ++j) out(i, j) += v * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= Complex(s, 0.0); }

namespace detail {

// One full cyclic sweep zeroes every off-diagonal pair once; the off-diagonal
// mass decreases monotonically and quadratically near convergence.
void hermitian_jacobi(std::vector<Complex>& a, std::vector<Complex>& vecs,
                      std::vector<double>& vals, int n) {
    auto A = [&](int i, int j) -> Complex& { return a[i * n + j]; };
    auto V = [&](int i, int j) -> Complex& { return vecs[i * n + j]; };

    vecs.assign(static_cast<size_t>(n) * n, Complex(0.0));
    for (int i = 0; i < n; ++i) V(i, i) = 1.0;

    double scale = 0.0;
    for (const Complex& v : a) scale = std::max(scale, std::abs(v));
    const double tol = 1e-15 * std::max(1.0, scale);

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
        if (off < tol) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = A(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                // Unitary plane rotation J with J(p,p)=c, J(p,q)=s*e^{i alpha},
                // J(q,p)=-s*e^{-i alpha}, J(q,q)=c chosen so (J^† A J)(p,q)=0.
                const Complex phase = apq / mag;  // e^{i alpha}
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex sp = s * phase;
                for (int k = 0; k < n; ++k) {
                    const Complex akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - std::conj(sp) * akq;
                    A(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - sp * aqk;
                    A(q, k) = std::conj(sp) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - std::conj(sp) * vkq;
                    V(k, q) = sp * vkp + c * vkq;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
            }
        }
    }

    vals.resize(n);
    for (int i = 0; i < n; ++i) vals[i] = A(i, i).real();
}

}  // namespace detail

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (m.hermiticity_error() >= 1e-9)
        throw NotHermitian("hermitian_eigensystem: input is not Hermitian");
    const int n = m.dim();

    // Symmetrize to kill the sub-tolerance asymmetry before iterating.
    std::vector<Complex> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));

    std::vector<Complex> vecs;
    std::vector<double> vals;
    detail::hermitian_jacobi(a, vecs, vals, n);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return vals[i] > vals[j]; });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n);
    for (int c = 0; c < n; ++c) {
        const int src = order[c];
        es.values[c] = vals[src];
        // Deterministic phase: first component above threshold made real positive.
        Complex ph(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            const Complex v = vecs[i * n + src];
            if (std::abs(v) > 1e-12) {
                ph = std::conj(v) / std::abs(v);
                break;
            }
        }
        for (int i = 0; i < n; ++i) es.vectors(i, c) = ph * vecs[i * n + src];
    }
    return es;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw DimensionMismatch("tensor_product expects two 2x2 factors");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int keep) {
    if (rho.dim() != 4) throw DimensionMismatch("partial_trace expects a 4x4 input");
    if (keep != 1 && keep != 2) throw DimensionMismatch("partial_trace: keep must be 1 or 2");
    ComplexMatrix out(2);
    if (keep == 1) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out(i, j) = rho(2 * i + 0, 2 * j + 0) + rho(2 * i + 1, 2 * j + 1);
    } else {
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
                out(k, l) = rho(0 + k, 0 + l) + rho(2 + k, 2 + l);
    }
    return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    EigenSystem es = hermitian_eigensystem(m);
    const int n = m.dim();
    for (double& v : es.values) {
        if (v < -1e-9) throw NotPSD("matrix_sqrt_psd: eigenvalue " + std::to_string(v));
        if (v < 0.0) v = 0.0;
    }
    ComplexMatrix out(n);
    for (int c = 0; c < n; ++c) {
        const double s = std::sqrt(es.values[c]);
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += s * es.vectors(i, c) * std::conj(es.vectors(j, c));
    }
    return out;
}

std::array<double, 3> symmetric3_eigenvalues(const std::array<double, 9>& m) {
    std::vector<Complex> a(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a[i * 3 + j] = 0.5 * (m[i * 3 + j] + m[j * 3 + i]);
    std::vector<Complex> vecs;
    std::vector<double> vals;
    detail::hermitian_jacobi(a, vecs, vals, 3);
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return {vals[0], vals[1], vals[2]};
}

namespace pauli {

const ComplexMatrix& x() {
    static const ComplexMatrix m = [] {
        ComplexMatrix s(2);
        s(0, 1) = 1.0;
        s(1, 0) = 1.0;
        return s;
    }();
    return m;
}

const ComplexMatrix& y() {
    static const ComplexMatrix m = [] {
        ComplexMatrix s(2);
        s(0, 1) = Complex(0.0, -1.0);
        s(1, 0) = Complex(0.0, 1.0);
        return s;
    }();
    return m;
}

const ComplexMatrix& z() {
    static const ComplexMatrix m = [] {
        ComplexMatrix s(2);
        s(0, 0) = 1.0;
        s(1, 1) = -1.0;
        return s;
    }();
    return m;
}

const ComplexMatrix& id2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

const ComplexMatrix& id4() {
    static const ComplexMatrix m = ComplexMatrix::identity(4);
    return m;
}

const ComplexMatrix& sigma(int n) {
    switch (n) {
        case 1: return x();
        case 2: return y();
        case 3: return z();
        default: throw OutOfRange("pauli::sigma index must be 1..3");
    }
}

}  // namespace pauli

}  // namespace qcorr
