#pragma once

#include <functional>

#include "qcorr/correlations.hpp"
#include "qcorr/dissipative.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

enum class QndRegime { Collective, Independent };

/// Pure-dephasing channel kernel. The exponent and phase functions are the
/// pluggable slot for bath-specific decoherence laws; the library's default
/// is the Markovian stand-in from default_kernel.
struct QndKernel {
    std::function<double(double)> exponent;  // Delta(t) >= 0, Delta(0) = 0
    std::function<double(double)> phase;     // Phi_ph(t), Phi_ph(0) = 0
    QndRegime regime = QndRegime::Collective;
};

/// Markovian stand-in: Delta(t) = gamma0 (2 N~ + 1) t, zero phase.
QndKernel default_kernel(const BathSpec& bath, double gamma0);

/// Maps an inter-qubit separation to the dephasing regime; the boundary
/// r12 / lambda = 1 selects Independent.
QndRegime regime_from_separation(double r12, double lambda = 1.0);

/// Per-element multipliers m_ij(t) on the density matrix in the product
/// S^z eigenbasis {|ee>,|eg>,|ge>,|gg>}; diagonal entries are exactly 1.
struct QndChannelMatrix {
    std::array<Complex, 16> m{};
    Complex operator()(int i, int j) const { return m[4 * i + j]; }
};
QndChannelMatrix qnd_channel_matrix(const QndKernel& kernel, double t);

/// Schur-multiplies the state by the channel matrix. Populations are
/// untouched; coherences decay by exp of the squared S^z quantum-number
/// differences (per qubit in the Independent regime, total in the
/// Collective one) and rotate by the deterministic phase.
DensityMatrix apply_qnd_channel(const DensityMatrix& rho, const QndKernel& kernel,
                                double t);

struct ChoiReport {
    double min_eigenvalue = 0.0;
    double trace_residual = 0.0;  // || Tr_out(Choi) - I ||_max
    bool pass = false;
};

/// Builds the (unnormalized) Choi matrix by applying the channel to one half
/// of a maximally entangled 4x4 pair and checks complete positivity and
/// trace preservation.
ChoiReport choi_cptp_check(const QndKernel& kernel, double t);

struct QndSweepSpec {
    DensityMatrix initial;
    BathSpec bath;
    double gamma0 = 1.0;
    QndRegime regime = QndRegime::Collective;
    double time = 1.0;    // channel time for non-t sweeps
    double lambda0 = 1.0; // regime boundary for r12 sweeps
    std::string param;    // "r" | "r12" | "T" | "t"
};

/// State at one grid point of a QND sweep.
DensityMatrix qnd_point_state(const QndSweepSpec& spec, double value);

/// Full reports across a parameter grid.
std::vector<CorrelationReport> qnd_correlation_sweep(const QndSweepSpec& spec,
                                                     const std::vector<double>& grid,
                                                     const MeasureOptions& opt = {});

}  // namespace qcorr
