#include "qcorr/dissipative.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

// Dipole operators in the basis {|ee>,|eg>,|ge>,|gg>} with |0> = |e>.
const ComplexMatrix& sigma_plus() {
    static const ComplexMatrix m = [] {
        ComplexMatrix s(2);
        s(0, 1) = 1.0;  // |e><g|
        return s;
    }();
    return m;
}

const ComplexMatrix& sigma_minus() {
    static const ComplexMatrix m = [] {
        ComplexMatrix s(2);
        s(1, 0) = 1.0;  // |g><e|
        return s;
    }();
    return m;
}

struct QubitOps {
    ComplexMatrix sp[2];  // S_n^+
    ComplexMatrix sm[2];  // S_n^-
    ComplexMatrix sz[2];  // S_n^z
};

const QubitOps& qubit_ops() {
    static const QubitOps ops = [] {
        QubitOps o;
        o.sp[0] = tensor_product(sigma_plus(), pauli::id2());
        o.sp[1] = tensor_product(pauli::id2(), sigma_plus());
        o.sm[0] = tensor_product(sigma_minus(), pauli::id2());
        o.sm[1] = tensor_product(pauli::id2(), sigma_minus());
        o.sz[0] = 0.5 * tensor_product(pauli::z(), pauli::id2());
        o.sz[1] = 0.5 * tensor_product(pauli::id2(), pauli::z());
        return o;
    }();
    return ops;
}

// The master equation as a linear map on arbitrary 4x4 matrices. One term
// contributes w * (rho a + a rho - 2 l rho r).
struct Generator {
    ComplexMatrix h{4};
    struct Term {
        Complex w;
        ComplexMatrix a, l, r;
    };
    std::vector<Term> terms;

    ComplexMatrix apply(const ComplexMatrix& rho) const {
        ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
        for (const Term& t : terms) {
            ComplexMatrix part = rho * t.a + t.a * rho;
            part -= 2.0 * (t.l * rho * t.r);
            part *= t.w;
            out += part;
        }
        return out;
    }
};

Generator make_generator(const DissipativeParams& p) {
    const QubitOps& o = qubit_ops();
    const SqueezedBathParams bp = p.bath_params();
    const double g12 = p.gamma12();
    const double om12 = p.omega12();

    Generator gen;
    gen.h = p.omega1 * o.sz[0] + p.omega2 * o.sz[1];
    if (om12 != 0.0) gen.h += om12 * (o.sp[0] * o.sm[1] + o.sp[1] * o.sm[0]);

    const double rates[2][2] = {{p.gamma, g12}, {g12, p.gamma}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double g = rates[i][j];
            if (g == 0.0) continue;
            const Complex decay(-0.5 * g * (1.0 + bp.n_eff), 0.0);
            gen.terms.push_back({decay, o.sp[i] * o.sm[j], o.sm[j], o.sp[i]});
            if (bp.n_eff != 0.0) {
                const Complex pump(-0.5 * g * bp.n_eff, 0.0);
                gen.terms.push_back({pump, o.sm[i] * o.sp[j], o.sp[j], o.sm[i]});
            }
            if (bp.m_eff != Complex(0.0, 0.0)) {
                gen.terms.push_back(
                    {0.5 * g * bp.m_eff, o.sp[i] * o.sp[j], o.sp[j], o.sp[i]});
                gen.terms.push_back({0.5 * g * std::conj(bp.m_eff), o.sm[i] * o.sm[j],
                                     o.sm[j], o.sm[i]});
            }
        }
    }
    return gen;
}

// Column-by-column compilation of the generator into a 16x16 superoperator;
// the RK4 loop then only needs matrix-vector products.
struct Superop {
    std::vector<Complex> l;  // row-major 16x16

    explicit Superop(const Generator& gen) : l(256) {
        for (int k = 0; k < 16; ++k) {
            ComplexMatrix e(4);
            e.data()[k] = 1.0;
            const ComplexMatrix out = gen.apply(e);
            for (int i = 0; i < 16; ++i) l[i * 16 + k] = out.data()[i];
        }
    }

    void apply(const Complex* x, Complex* y) const {
        for (int i = 0; i < 16; ++i) {
            Complex acc = 0.0;
            const Complex* row = &l[i * 16];
            for (int j = 0; j < 16; ++j) acc += row[j] * x[j];
            y[i] = acc;
        }
    }
};

using Vec16 = std::array<Complex, 16>;

void rk4_step(const Superop& sop, Vec16& x, double h) {
    Vec16 k1, k2, k3, k4, tmp;
    sop.apply(x.data(), k1.data());
    for (int i = 0; i < 16; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    sop.apply(tmp.data(), k2.data());
    for (int i = 0; i < 16; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    sop.apply(tmp.data(), k3.data());
    for (int i = 0; i < 16; ++i) tmp[i] = x[i] + h * k3[i];
    sop.apply(tmp.data(), k4.data());
    for (int i = 0; i < 16; ++i)
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

std::vector<Vec16> integrate(const Superop& sop, const Vec16& x0,
                             const std::vector<double>& samples, double dt) {
    std::vector<Vec16> out;
    out.reserve(samples.size());
    Vec16 x = x0;
    double t = 0.0;
    for (double ts : samples) {
        const double span = ts - t;
        if (span > 0.0) {
            const long n = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-12)));
            const double h = span / static_cast<double>(n);
            for (long k = 0; k < n; ++k) rk4_step(sop, x, h);
        }
        t = ts;
        out.push_back(x);
    }
    return out;
}

}  // namespace

double planck_occupation(double omega, double temperature) {
    if (omega <= 0.0) throw OutOfRange("planck_occupation: omega must be positive");
    if (temperature < 0.0) throw OutOfRange("planck_occupation: negative temperature");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

SqueezedBathParams squeezed_bath_params(const BathSpec& bath) {
    const double nth = planck_occupation(bath.omega0, bath.temperature);
    const double ch = std::cosh(bath.squeeze_r), sh = std::sinh(bath.squeeze_r);
    SqueezedBathParams p;
    p.n_eff = nth * (ch * ch + sh * sh) + sh * sh;
    p.m_eff = -0.5 * std::sinh(2.0 * bath.squeeze_r) *
              Complex(std::cos(bath.squeeze_phi), std::sin(bath.squeeze_phi)) *
              (2.0 * nth + 1.0);
    return p;
}

double geometric_factor(double x, double alignment) {
    if (x <= 0.0) throw OutOfRange("geometric_factor: x must be positive");
    const double a = alignment;
    if (x < 0.02) {
        // sin x / x and (x cos x - sin x)/x^3 expanded to x^4
        const double x2 = x * x;
        const double s = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        const double c = -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0;
        return 1.5 * ((1.0 - a) * s + (1.0 - 3.0 * a) * c);
    }
    return 1.5 * ((1.0 - a) * std::sin(x) / x +
                  (1.0 - 3.0 * a) *
                      (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)));
}

double collective_shift(double x, double alignment, double gamma) {
    if (x <= 0.0) throw OutOfRange("collective_shift: x must be positive");
    if (x < 1e-3)
        throw SeparationTooSmall("collective_shift diverges as 1/x^3; x = " +
                                 std::to_string(x));
    const double a = alignment;
    return 0.75 * gamma *
           (-(1.0 - a) * std::cos(x) / x +
            (1.0 - 3.0 * a) * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
}

double DissipativeParams::gamma12() const {
    if (!separation) return 0.0;
    return gamma * geometric_factor(*separation, alignment);
}

double DissipativeParams::omega12() const {
    if (!separation) return 0.0;
    return collective_shift(*separation, alignment, gamma);
}

ComplexMatrix liouvillian_rhs(const DensityMatrix& rho, const DissipativeParams& p) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("liouvillian_rhs expects a two-qubit state");
    return make_generator(p).apply(rho.matrix());
}

double suggested_step(const DissipativeParams& p) {
    const SqueezedBathParams bp = p.bath_params();
    const double g12 = std::abs(p.gamma12());
    const double rate = 2.0 * (p.gamma + g12) * (0.5 + bp.n_eff + std::abs(bp.m_eff)) +
                        std::abs(p.omega1) + std::abs(p.omega2) +
                        2.0 * std::abs(p.omega12());
    return 5e-3 / rate;
}

Trajectory evolve(const DensityMatrix& rho0, const DissipativeParams& p, double t_end,
                  double dt, std::vector<double> sample_times) {
    if (t_end <= 0.0) throw OutOfRange("evolve: t_end must be positive");
    if (dt <= 0.0) throw OutOfRange("evolve: dt must be positive");
    rho0.require_valid();
    if (rho0.dim() != 4) throw InvalidState("evolve expects a two-qubit state");

    if (sample_times.empty()) sample_times = {0.0, t_end};
    double prev = -1.0;
    for (double t : sample_times) {
        if (t < 0.0 || t > t_end + 1e-12 || t <= prev - 1e-15)
            throw OutOfRange("evolve: sample times must ascend within [0, t_end]");
        prev = t;
    }

    const Superop sop(make_generator(p));
    Vec16 x0;
    std::copy_n(rho0.matrix().data(), 16, x0.begin());

    // Fixed-step runs at dt and dt/2 must agree elementwise to 1e-8 at every
    // sample; two consecutive disagreements abort.
    std::vector<Vec16> coarse = integrate(sop, x0, sample_times, dt);
    double step = dt;
    bool accepted = false;
    std::vector<Vec16> fine;
    for (int attempt = 0; attempt < 2; ++attempt) {
        fine = integrate(sop, x0, sample_times, step / 2.0);
        double diff = 0.0;
        for (size_t s = 0; s < sample_times.size(); ++s)
            for (int i = 0; i < 16; ++i)
                diff = std::max(diff, std::abs(fine[s][i] - coarse[s][i]));
        if (diff < 1e-8) {
            accepted = true;
            break;
        }
        coarse = std::move(fine);
        step /= 2.0;
    }
    if (!accepted)
        throw StepSizeTooLarge("evolve: step halving failed twice from dt = " +
                               std::to_string(dt));

    Trajectory traj;
    traj.params = p;
    traj.accepted_step = step / 2.0;
    traj.times = sample_times;
    traj.states.reserve(fine.size());
    for (const Vec16& v : fine) {
        ComplexMatrix m(4);
        std::copy(v.begin(), v.end(), m.data());
        DensityMatrix state(m);
        state.require_valid(-1e-6);
        traj.states.push_back(std::move(state));
    }
    return traj;
}

std::vector<CorrelationReport> correlation_trajectory(const DensityMatrix& rho0,
                                                      const DissipativeParams& p,
                                                      const std::vector<double>& times,
                                                      double dt,
                                                      const MeasureOptions& opt) {
    const Trajectory traj = evolve(rho0, p, times.back(), dt, times);
    std::vector<CorrelationReport> out;
    out.reserve(traj.states.size());
    for (const DensityMatrix& s : traj.states) out.push_back(full_report(s, opt));
    return out;
}

}  // namespace qcorr
