#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Squeezed thermal bath, in units hbar = k_B = 1.
struct BathSpec {
    double temperature = 0.0;
    double squeeze_r = 0.0;
    double squeeze_phi = 0.0;
    double omega0 = 1.0;  // mean atomic frequency (omega1 + omega2) / 2
};

/// Thermal photon number 1/(e^{omega/T} - 1); exactly 0 at T = 0.
double planck_occupation(double omega, double temperature);

struct SqueezedBathParams {
    double n_eff = 0.0;   // N~ = N_th (cosh^2 r + sinh^2 r) + sinh^2 r
    Complex m_eff = 0.0;  // M~ = -1/2 sinh(2r) e^{i Phi} (2 N_th + 1)
};
SqueezedBathParams squeezed_bath_params(const BathSpec& bath);

/// Position factor F(x) of the collective decay rate, x = k0 r12,
/// alignment = (mu.r12_hat)^2. Series expansion below x = 0.02 (limit 1).
double geometric_factor(double x, double alignment);

/// Collective coherent shift Omega_12; diverges as 1/x^3, so x below 1e-3
/// throws SeparationTooSmall.
double collective_shift(double x, double alignment, double gamma);

struct DissipativeParams {
    double gamma = 1.0;  // spontaneous emission rate of each qubit
    /// x = k0 r12; disengaged (std::nullopt) means the strict independent
    /// limit Gamma_12 = Omega_12 = 0.
    std::optional<double> separation;
    double alignment = 0.0;  // (mu.r12_hat)^2 in [0, 1]
    double omega1 = 1.0;
    double omega2 = 1.0;
    BathSpec bath;

    double gamma12() const;
    double omega12() const;
    SqueezedBathParams bath_params() const { return squeezed_bath_params(bath); }
};

/// d rho / dt of the squeezed-bath master equation: the -i[H, rho] term plus
/// the four collective double sums weighted by (1+N~), N~, M~ and M~*.
ComplexMatrix liouvillian_rhs(const DensityMatrix& rho, const DissipativeParams& p);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    DissipativeParams params;
    double accepted_step = 0.0;
};

/// Step size for which the fixed-step integrator passes its halving test
/// comfortably, from the fastest decay/oscillation rate of the generator.
double suggested_step(const DissipativeParams& p);

/// Classical fixed-step 4th-order integration of the master equation.
/// A run is accepted once halving the step changes every sampled matrix
/// element by less than 1e-8; two consecutive failures of that test throw
/// StepSizeTooLarge. Empty sample_times means {0, t_end}.
Trajectory evolve(const DensityMatrix& rho0, const DissipativeParams& p, double t_end,
                  double dt, std::vector<double> sample_times = {});

/// Full correlation report at each sample time of an evolve() run.
std::vector<CorrelationReport> correlation_trajectory(const DensityMatrix& rho0,
                                                      const DissipativeParams& p,
                                                      const std::vector<double>& times,
                                                      double dt,
                                                      const MeasureOptions& opt = {});

}  // namespace qcorr
