#include "qcorr/state.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {
constexpr double kLog2 = 0.69314718055994530942;  // ln 2; all entropies are in bits
}

ValidationReport DensityMatrix::validate(double positivity_floor) const {
    ValidationReport rep;
    rep.trace_deviation = std::abs(m_.trace() - Complex(1.0, 0.0));
    rep.hermiticity_deviation = m_.hermiticity_error();
    if (rep.hermiticity_deviation < 1e-6) {
        ComplexMatrix h(m_.dim());
        for (int i = 0; i < m_.dim(); ++i)
            for (int j = 0; j < m_.dim(); ++j)
                h(i, j) = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
        const EigenSystem es = hermitian_eigensystem(h);
        rep.min_eigenvalue = es.values.back();
    } else {
        rep.min_eigenvalue = -1.0;
    }
    rep.pass = rep.trace_deviation < 1e-9 && rep.hermiticity_deviation < 1e-9 &&
               rep.min_eigenvalue >= positivity_floor;
    return rep;
}

void DensityMatrix::require_valid(double positivity_floor) const {
    const ValidationReport rep = validate(positivity_floor);
    if (rep.pass) return;
    std::ostringstream os;
    os << "invalid density matrix:";
    if (rep.trace_deviation >= 1e-9) os << " trace deviation " << rep.trace_deviation;
    if (rep.hermiticity_deviation >= 1e-9)
        os << " hermiticity deviation " << rep.hermiticity_deviation;
    if (rep.min_eigenvalue < positivity_floor)
        os << " min eigenvalue " << rep.min_eigenvalue;
    throw InvalidState(os.str());
}

FanoForm fano_decompose(const DensityMatrix& rho) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("fano_decompose expects a two-qubit state");
    const ComplexMatrix& m = rho.matrix();
    FanoForm f;
    for (int a = 1; a <= 3; ++a) {
        f.r[a - 1] = (m * tensor_product(pauli::sigma(a), pauli::id2())).trace().real();
        f.s[a - 1] = (m * tensor_product(pauli::id2(), pauli::sigma(a))).trace().real();
        for (int b = 1; b <= 3; ++b)
            f.t[3 * (a - 1) + (b - 1)] =
                (m * tensor_product(pauli::sigma(a), pauli::sigma(b))).trace().real();
    }
    return f;
}

DensityMatrix fano_compose(const FanoForm& f) {
    ComplexMatrix m = pauli::id4();
    for (int a = 1; a <= 3; ++a) {
        m += f.r[a - 1] * tensor_product(pauli::sigma(a), pauli::id2());
        m += f.s[a - 1] * tensor_product(pauli::id2(), pauli::sigma(a));
        for (int b = 1; b <= 3; ++b)
            m += f.t[3 * (a - 1) + (b - 1)] *
                 tensor_product(pauli::sigma(a), pauli::sigma(b));
    }
    m *= Complex(0.25, 0.0);
    DensityMatrix rho(m);
    const ValidationReport rep = rho.validate();
    if (rep.min_eigenvalue < -1e-8)
        throw NotPSD("fano_compose: coefficients give min eigenvalue " +
                     std::to_string(rep.min_eigenvalue));
    return rho;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) / kLog2;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    rho.require_valid();
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    double h = 0.0;
    for (double v : es.values) {
        if (v > 1e-15) h -= v * std::log(v);
    }
    return h / kLog2;
}

DensityMatrix bell_state(int k) {
    if (k < 1 || k > 4) throw OutOfRange("bell_state index must be 1..4");
    const double inv = 1.0 / std::sqrt(2.0);
    std::array<Complex, 4> v{};
    switch (k) {
        case 1: v[0] = inv; v[3] = inv; break;   // |phi+>
        case 2: v[0] = inv; v[3] = -inv; break;  // |phi->
        case 3: v[1] = inv; v[2] = inv; break;   // |psi+>
        case 4: v[1] = inv; v[2] = -inv; break;  // |psi->
    }
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return DensityMatrix(m);
}

DensityMatrix werner_state(double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRange("werner_state: p must lie in [0,1]");
    ComplexMatrix m = bell_state(4).matrix();
    m *= Complex(p, 0.0);
    m += 0.25 * (1.0 - p) * pauli::id4();
    return DensityMatrix(m);
}

DensityMatrix qubit_state(const std::array<double, 3>& bloch) {
    const double n2 = bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2];
    if (n2 > 1.0 + 1e-9) throw OutOfRange("qubit_state: Bloch vector longer than 1");
    ComplexMatrix m = pauli::id2();
    for (int a = 1; a <= 3; ++a) m += bloch[a - 1] * pauli::sigma(a);
    m *= Complex(0.5, 0.0);
    return DensityMatrix(m);
}

DensityMatrix product_state(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return DensityMatrix(tensor_product(qubit_state(a).matrix(), qubit_state(b).matrix()));
}

DensityMatrix random_density_matrix(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix m = g * g.adjoint();
    m *= Complex(1.0 / m.trace().real(), 0.0);
    return DensityMatrix(m);
}

ComplexMatrix random_unitary2(std::mt19937_64& rng) {
    // QR of a 2x2 Ginibre sample via Gram-Schmidt.
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<Complex, 2> u{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
    std::array<Complex, 2> v{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
    double nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    u[0] /= nu; u[1] /= nu;
    const Complex proj = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
    v[0] -= proj * u[0]; v[1] -= proj * u[1];
    double nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= nv; v[1] /= nv;
    ComplexMatrix m(2);
    m(0, 0) = u[0]; m(1, 0) = u[1];
    m(0, 1) = v[0]; m(1, 1) = v[1];
    return m;
}

DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    int dim = 0;
    if (!(in >> dim)) throw ParseError("state file: missing dimension line");
    if (dim != 2 && dim != 4)
        throw ParseError("state file: dimension must be 2 or 4, got " + std::to_string(dim));
    ComplexMatrix m(dim);
    for (int k = 0; k < dim * dim; ++k) {
        double re = 0.0, im = 0.0;
        if (!(in >> re >> im))
            throw ParseError("state file: expected " + std::to_string(dim * dim) +
                             " \"re im\" entries, failed at entry " + std::to_string(k));
        m.data()[k] = Complex(re, im);
    }
    return DensityMatrix(m);
}

void write_state_file(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write state file: " + path);
    out.precision(17);
    out << rho.dim() << "\n";
    for (int k = 0; k < rho.dim() * rho.dim(); ++k) {
        const Complex v = rho.matrix().data()[k];
        out << v.real() << " " << v.imag() << "\n";
    }
}

}  // namespace qcorr
