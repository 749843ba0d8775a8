#pragma once

#include <array>
#include <random>
#include <string>

#include "qcorr/matrix.hpp"

namespace qcorr {

struct ValidationReport {
    double trace_deviation = 0.0;
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;
    bool pass = false;
};

/// Two-qubit (or single-qubit marginal) density matrix.
/// Basis convention: {|00>,|01>,|10>,|11>} with |0> = excited, |1> = ground.
class DensityMatrix {
public:
    DensityMatrix() : m_(ComplexMatrix::identity(2) * 0.5) {}
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    const ComplexMatrix& matrix() const { return m_; }
    ComplexMatrix& matrix() { return m_; }
    int dim() const { return m_.dim(); }

    ValidationReport validate(double positivity_floor = -1e-8) const;
    /// Throws InvalidState with the first failing diagnostic.
    void require_valid(double positivity_floor = -1e-8) const;

private:
    ComplexMatrix m_;
};

/// Bloch vectors and correlation matrix of a two-qubit state:
/// rho = 1/4 [I + r.sigma x I + I x s.sigma + sum t_mn sigma_m x sigma_n].
struct FanoForm {
    std::array<double, 3> r{};
    std::array<double, 3> s{};
    std::array<double, 9> t{};  // row-major, t[3*m+n] = Tr[rho sigma_{m+1} x sigma_{n+1}]
};

FanoForm fano_decompose(const DensityMatrix& rho);
/// Inverse of fano_decompose; throws NotPSD when the coefficients do not
/// describe a state (legal-looking boxes can compose to negative matrices).
DensityMatrix fano_compose(const FanoForm& f);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);
/// Binary entropy h(p) in bits, with h(0) = h(1) = 0.
double binary_entropy(double p);

/// Bell projectors: 1 -> |phi+>, 2 -> |phi->, 3 -> |psi+>, 4 -> |psi->.
DensityMatrix bell_state(int k);
/// p |psi-><psi-| + (1-p) I/4
DensityMatrix werner_state(double p);
/// Product of single-qubit states with the given Bloch vectors.
DensityMatrix product_state(const std::array<double, 3>& a, const std::array<double, 3>& b);
DensityMatrix qubit_state(const std::array<double, 3>& bloch);

/// Normalized Ginibre state G G^dagger / Tr: full-rank almost surely.
DensityMatrix random_density_matrix(int dim, std::mt19937_64& rng);
/// Haar-random single-qubit unitary.
ComplexMatrix random_unitary2(std::mt19937_64& rng);

/// Plain-text state files: line 1 = dimension, then dim^2 lines of
/// "re im" row-major with full double precision.
DensityMatrix read_state_file(const std::string& path);
void write_state_file(const DensityMatrix& rho, const std::string& path);

}  // namespace qcorr
