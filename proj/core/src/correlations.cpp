#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994530942;

// Entropy of a unit-trace 2x2 Hermitian PSD matrix from its closed-form
// spectrum; the conditional-entropy inner loop is too hot for Jacobi.
double entropy2(const ComplexMatrix& m) {
    const double tr = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    double disc = tr * tr / 4.0 - det;
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    const double l1 = tr / 2.0 + root;
    const double l2 = tr / 2.0 - root;
    double h = 0.0;
    if (l1 > 1e-15) h -= l1 * std::log(l1);
    if (l2 > 1e-15) h -= l2 * std::log(l2);
    return h / kLog2;
}

std::array<double, 9> correlation_matrix(const DensityMatrix& rho) {
    return fano_decompose(rho).t;
}

std::array<double, 3> tTt_eigenvalues(const std::array<double, 9>& t) {
    std::array<double, 9> g{};  // T^T T
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += t[3 * k + i] * t[3 * k + j];
            g[3 * i + j] = acc;
        }
    std::array<double, 3> u = symmetric3_eigenvalues(g);
    for (double& v : u) v = std::max(v, 0.0);
    return u;
}

struct Vec3 {
    double x, y, z;
};

Vec3 sphere_dir(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Vec3 apply3(const std::array<double, 9>& t, const Vec3& v) {
    return {t[0] * v.x + t[1] * v.y + t[2] * v.z,
            t[3] * v.x + t[4] * v.y + t[5] * v.z,
            t[6] * v.x + t[7] * v.y + t[8] * v.z};
}

double norm3(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// For fixed Bob directions b, b' the Alice maxima are exact:
// max_a a.v = |v|, so the CHSH value is |T(b+b')| + |T(b-b')|.
double chsh_value(const std::array<double, 9>& t, const Vec3& b1, const Vec3& b2) {
    const Vec3 p = apply3(t, {b1.x + b2.x, b1.y + b2.y, b1.z + b2.z});
    const Vec3 m = apply3(t, {b1.x - b2.x, b1.y - b2.y, b1.z - b2.z});
    return norm3(p) + norm3(m);
}

// Nelder-Mead on a 2-D objective. Stops when the simplex value spread falls
// below ftol or after max_evals objective calls. Returns the best value seen.
double nelder_mead_2d(const std::function<double(double, double)>& f, double x0,
                      double y0, double step, double ftol, int max_evals) {
    struct Pt {
        double x, y, v;
    };
    std::array<Pt, 3> s{{{x0, y0, f(x0, y0)},
                         {x0 + step, y0, f(x0 + step, y0)},
                         {x0, y0 + step, f(x0, y0 + step)}}};
    int evals = 3;
    auto order = [&] {
        std::sort(s.begin(), s.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
    };
    order();
    while (evals < max_evals && std::abs(s[2].v - s[0].v) > ftol) {
        const double cx = (s[0].x + s[1].x) / 2.0;
        const double cy = (s[0].y + s[1].y) / 2.0;
        const double rx = cx + (cx - s[2].x);
        const double ry = cy + (cy - s[2].y);
        const double rv = f(rx, ry);
        ++evals;
        if (rv < s[0].v) {
            const double ex = cx + 2.0 * (cx - s[2].x);
            const double ey = cy + 2.0 * (cy - s[2].y);
            const double ev = f(ex, ey);
            ++evals;
            s[2] = ev < rv ? Pt{ex, ey, ev} : Pt{rx, ry, rv};
        } else if (rv < s[1].v) {
            s[2] = {rx, ry, rv};
        } else {
            const double kx = cx + 0.5 * (s[2].x - cx);
            const double ky = cy + 0.5 * (s[2].y - cy);
            const double kv = f(kx, ky);
            ++evals;
            if (kv < s[2].v) {
                s[2] = {kx, ky, kv};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].v = f(s[i].x, s[i].y);
                    ++evals;
                }
            }
        }
        order();
    }
    return s[0].v;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> basis_projectors(const MeasurementBasis& b) {
    const Complex eip(std::cos(b.phi), std::sin(b.phi));
    const double ct = std::cos(b.theta), st = std::sin(b.theta);
    const std::array<Complex, 2> v0{ct, eip * st};
    const std::array<Complex, 2> v1{std::conj(eip) * st, -ct};
    ComplexMatrix p0(2), p1(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            p0(i, j) = v0[i] * std::conj(v0[j]);
            p1(i, j) = v1[i] * std::conj(v1[j]);
        }
    return {p0, p1};
}

const char* to_string(StateLabel label) {
    switch (label) {
        case StateLabel::Entangled: return "Entangled";
        case StateLabel::NonclassicalSeparable: return "NonclassicalSeparable";
        case StateLabel::Classical: return "Classical";
    }
    return "?";
}

double concurrence(const DensityMatrix& rho) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("concurrence expects a two-qubit state");
    const ComplexMatrix yy = tensor_product(pauli::y(), pauli::y());

    // rho^(1/2) with clipping at the state validity floor: valid states may
    // carry eigenvalues down to -1e-8 (integrator noise), below the stricter
    // matrix_sqrt_psd contract.
    const EigenSystem rs = hermitian_eigensystem(rho.matrix());
    ComplexMatrix sq(4);
    for (int c = 0; c < 4; ++c) {
        const double s = std::sqrt(std::max(rs.values[c], 0.0));
        if (s == 0.0) continue;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                sq(i, j) += s * rs.vectors(i, c) * std::conj(rs.vectors(j, c));
    }

    ComplexMatrix r = sq * yy * rho.matrix().conjugate() * yy * sq;
    // r is Hermitian PSD up to roundoff. Eigenvalues below the roundoff
    // scale are exact zeros of the spin-flip product; clipping them before
    // the square root keeps C exact for rank-deficient states.
    EigenSystem es = hermitian_eigensystem(r);
    const double floor = 1e-13 * std::max(es.values[0], 0.0);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i)
        lam[i] = es.values[i] <= floor ? 0.0 : std::sqrt(es.values[i]);
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, 0.0, 1.0);
}

double entanglement_of_formation(double c) {
    if (c < 0.0 || c > 1.0)
        throw OutOfRange("entanglement_of_formation: concurrence outside [0,1]");
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double bell_horodecki_m(const DensityMatrix& rho) {
    const std::array<double, 3> u = tTt_eigenvalues(correlation_matrix(rho));
    return u[0] + u[1];
}

double chsh_grid_maximum(const DensityMatrix& rho, int resolution) {
    if (resolution < 24) throw OutOfRange("chsh_grid_maximum: resolution must be >= 24");
    const std::array<double, 9> t = correlation_matrix(rho);

    // Coarse stage: full pairing of two 24-step sphere grids.
    const int nth = 24, nph = 48;
    std::vector<Vec3> dirs;
    std::vector<std::pair<double, double>> angles;
    dirs.reserve((nth + 1) * nph);
    for (int i = 0; i <= nth; ++i) {
        const double th = kPi * i / nth;
        for (int j = 0; j < nph; ++j) {
            const double ph = 2.0 * kPi * j / nph;
            dirs.push_back(sphere_dir(th, ph));
            angles.emplace_back(th, ph);
        }
    }
    std::vector<Vec3> td(dirs.size());
    for (size_t k = 0; k < dirs.size(); ++k) td[k] = apply3(t, dirs[k]);

    double best = -1.0;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < td.size(); ++i) {
        for (size_t j = i; j < td.size(); ++j) {
            const Vec3 p{td[i].x + td[j].x, td[i].y + td[j].y, td[i].z + td[j].z};
            const Vec3 m{td[i].x - td[j].x, td[i].y - td[j].y, td[i].z - td[j].z};
            const double v = norm3(p) + norm3(m);
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }

    // Refinement: shrink a 7^4 window around the best (theta, phi) pairs until
    // the spacing is far below pi/resolution.
    double t1 = angles[bi].first, p1 = angles[bi].second;
    double t2 = angles[bj].first, p2 = angles[bj].second;
    double w = kPi / nth;
    const double w_stop = kPi / (static_cast<double>(resolution) * 64.0);
    while (w > w_stop) {
        double n_t1 = t1, n_p1 = p1, n_t2 = t2, n_p2 = p2;
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b)
                for (int c = -3; c <= 3; ++c)
                    for (int d = -3; d <= 3; ++d) {
                        const double u1 = t1 + w * a / 3.0, v1 = p1 + w * b / 3.0;
                        const double u2 = t2 + w * c / 3.0, v2 = p2 + w * d / 3.0;
                        const double val =
                            chsh_value(t, sphere_dir(u1, v1), sphere_dir(u2, v2));
                        if (val > best) {
                            best = val;
                            n_t1 = u1;
                            n_p1 = v1;
                            n_t2 = u2;
                            n_p2 = v2;
                        }
                    }
        t1 = n_t1;
        p1 = n_p1;
        t2 = n_t2;
        p2 = n_p2;
        w /= 3.0;
    }
    return best;
}

TeleportationFidelity teleportation_fidelity(const DensityMatrix& rho) {
    const std::array<double, 3> u = tTt_eigenvalues(correlation_matrix(rho));
    TeleportationFidelity f;
    f.n = std::sqrt(u[0]) + std::sqrt(u[1]) + std::sqrt(u[2]);
    f.f_max = 0.5 * (1.0 + f.n / 3.0);
    return f;
}

double conditional_entropy(const DensityMatrix& rho, const MeasurementBasis& basis,
                           int measured) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("conditional_entropy expects a two-qubit state");
    if (measured != 1 && measured != 2)
        throw OutOfRange("conditional_entropy: measured must be 1 or 2");
    const auto [p0, p1] = basis_projectors(basis);
    double h = 0.0;
    for (const ComplexMatrix* pk : {&p0, &p1}) {
        const ComplexMatrix proj = measured == 2 ? tensor_product(pauli::id2(), *pk)
                                                 : tensor_product(*pk, pauli::id2());
        const ComplexMatrix post = proj * rho.matrix() * proj;
        const double p = post.trace().real();
        if (p < 1e-12) continue;
        ComplexMatrix cond = partial_trace(post, measured == 2 ? 1 : 2);
        cond *= Complex(1.0 / p, 0.0);
        h += p * entropy2(cond);
    }
    return h;
}

double quantum_discord(const DensityMatrix& rho, DiscordMode mode, int measured) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("quantum_discord expects a two-qubit state");
    const double hy =
        von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), measured)));
    const double hxy = von_neumann_entropy(rho);

    double cond;
    if (mode == DiscordMode::FixedBasis) {
        cond = conditional_entropy(rho, MeasurementBasis{0.0, 0.0}, measured);
    } else {
        // 64x64 grid over theta in [0, pi/2], phi in [0, pi); the unordered
        // projector pair covers the full basis manifold on that domain.
        const int n = 64;
        double best = 1e300, bt = 0.0, bp = 0.0;
        for (int i = 0; i < n; ++i) {
            const double th = (kPi / 2.0) * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double ph = kPi * j / n;
                const double v = conditional_entropy(rho, {th, ph}, measured);
                if (v < best) {
                    best = v;
                    bt = th;
                    bp = ph;
                }
            }
        }
        const double refined = nelder_mead_2d(
            [&](double th, double ph) {
                return conditional_entropy(rho, {th, ph}, measured);
            },
            bt, bp, (kPi / 2.0) / (n - 1), 1e-6, 500);
        cond = std::min(best, refined);
    }

    const double d = hy - hxy + cond;
    if (d < 0.0 && d >= -1e-9) return 0.0;
    return d;
}

double mutual_information(const DensityMatrix& rho) {
    rho.require_valid();
    if (rho.dim() != 4) throw InvalidState("mutual_information expects a two-qubit state");
    const double ha = von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), 1)));
    const double hb = von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), 2)));
    return ha + hb - von_neumann_entropy(rho);
}

double classical_correlation(const DensityMatrix& rho, DiscordMode mode, int measured) {
    return mutual_information(rho) - quantum_discord(rho, mode, measured);
}

StateLabel classify(const CorrelationReport& report, double eps_c, double eps_d) {
    if (report.concurrence > eps_c) return StateLabel::Entangled;
    if (report.discord_opt > eps_d) return StateLabel::NonclassicalSeparable;
    return StateLabel::Classical;
}

CorrelationReport full_report(const DensityMatrix& rho, const MeasureOptions& opt) {
    CorrelationReport rep;
    rep.concurrence = concurrence(rho);
    rep.eof = entanglement_of_formation(rep.concurrence);
    const std::array<double, 3> u = tTt_eigenvalues(correlation_matrix(rho));
    rep.bell_m = u[0] + u[1];
    rep.n_tele = std::sqrt(u[0]) + std::sqrt(u[1]) + std::sqrt(u[2]);
    rep.f_max = 0.5 * (1.0 + rep.n_tele / 3.0);
    rep.discord_fixed = quantum_discord(rho, DiscordMode::FixedBasis, opt.measured);
    rep.discord_opt = quantum_discord(rho, DiscordMode::Optimized, opt.measured);
    rep.mutual_info = mutual_information(rho);
    const double d = opt.classical_mode == DiscordMode::FixedBasis ? rep.discord_fixed
                                                                   : rep.discord_opt;
    rep.classical_corr = rep.mutual_info - d;
    rep.label = classify(rep, opt.eps_concurrence, opt.eps_discord);
    return rep;
}

}  // namespace qcorr
