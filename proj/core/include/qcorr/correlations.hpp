#pragma once

#include <utility>

#include "qcorr/state.hpp"

namespace qcorr {

/// Projective measurement basis on one qubit:
/// {cos(theta)|0> + e^{i phi} sin(theta)|1>, e^{-i phi} sin(theta)|0> - cos(theta)|1>}.
struct MeasurementBasis {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
};

/// The two rank-1 projectors of a MeasurementBasis.
std::pair<ComplexMatrix, ComplexMatrix> basis_projectors(const MeasurementBasis& b);

enum class DiscordMode { FixedBasis, Optimized };

enum class StateLabel { Entangled, NonclassicalSeparable, Classical };
const char* to_string(StateLabel label);

struct CorrelationReport {
    double concurrence = 0.0;
    double eof = 0.0;
    double bell_m = 0.0;       // sum of the two largest eigenvalues of T^T T
    double n_tele = 0.0;       // sum of the square-rooted eigenvalues of T^T T
    double f_max = 0.0;        // (1 + n_tele/3) / 2
    double discord_fixed = 0.0;
    double discord_opt = 0.0;
    double classical_corr = 0.0;
    double mutual_info = 0.0;
    StateLabel label = StateLabel::Classical;
};

struct MeasureOptions {
    int measured = 2;  // subsystem the discord measurement acts on
    DiscordMode classical_mode = DiscordMode::Optimized;  // discord used in classical_corr
    double eps_concurrence = 1e-6;
    double eps_discord = 1e-4;
};

/// Wootters concurrence, computed from the Hermitian form
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho) so that only Hermitian
/// eigensolvers are involved. Clamped to [0, 1].
double concurrence(const DensityMatrix& rho);

/// Entanglement of formation in bits as a function of concurrence.
double entanglement_of_formation(double concurrence);

/// Horodecki criterion value M(rho); Bell-CHSH is violated iff M > 1.
double bell_horodecki_m(const DensityMatrix& rho);

/// Direct numerical maximum of the CHSH combination
/// a.Tb + a'.Tb + a'.Tb' - a.Tb' over unit measurement directions.
/// The a, a' maxima are taken exactly (|T(b +- b')|); b, b' are searched on
/// a hierarchically refined sphere grid whose final spacing is set by
/// `resolution`. Independent check of bell_horodecki_m via 2 sqrt(M).
double chsh_grid_maximum(const DensityMatrix& rho, int resolution);

struct TeleportationFidelity {
    double n = 0.0;
    double f_max = 0.0;  // best fidelity of the standard scheme; useful iff > 2/3
};
TeleportationFidelity teleportation_fidelity(const DensityMatrix& rho);

/// sum_j p_j H(rho_{X | pi_j}) with the measurement on `measured` (1 or 2).
/// Outcomes with p_j < 1e-12 contribute zero.
double conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis,
                           int measured);

/// Quantum discord D = H(Y) - H(X,Y) + H(X|{pi_j^Y}), measured side = Y.
/// FixedBasis uses the computational basis (theta = phi = 0); Optimized
/// minimizes the conditional entropy over all projective bases via a
/// 64x64 grid seed plus Nelder-Mead refinement. Values in [-1e-9, 0) are
/// clamped to 0.
double quantum_discord(const DensityMatrix& rho, DiscordMode mode, int measured = 2);

/// I(X:Y) = H(X) + H(Y) - H(X,Y), in bits.
double mutual_information(const DensityMatrix& rho);

/// C(X:Y) = I(X:Y) - D(X:Y) with the same mode and measured side.
double classical_correlation(const DensityMatrix& rho, DiscordMode mode, int measured = 2);

/// Entangled if C > eps_c, else NonclassicalSeparable if the optimized
/// discord exceeds eps_d, else Classical.
StateLabel classify(const CorrelationReport& report, double eps_c = 1e-6,
                    double eps_d = 1e-4);

/// All measures of one state in a single pass.
CorrelationReport full_report(const DensityMatrix& rho, const MeasureOptions& opt = {});

}  // namespace qcorr
