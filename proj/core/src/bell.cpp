#include "ubell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ubell/observables.hpp"
#include "ubell/rng.hpp"

namespace ubell {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

ChshSetting::ChshSetting(const Vec3& a_, const Vec3& a_prime_, const Vec3& b_, const Vec3& b_prime_)
    : a(a_), a_prime(a_prime_), b(b_), b_prime(b_prime_) {
    require(a.is_unit() && a_prime.is_unit() && b.is_unit() && b_prime.is_unit(),
            "all four measurement directions must be unit vectors");
}

ChshReport chsh_from_correlations(double e_ab, double e_apb, double e_abp, double e_apbp) {
    for (double e : {e_ab, e_apb, e_abp, e_apbp})
        require(std::abs(e) <= 1.0 + 1e-9, "correlation outside [-1, 1]");
    const double value = std::abs(e_ab + e_apb) + std::abs(e_abp - e_apbp);
    return ChshReport{e_ab, e_apb, e_abp, e_apbp, value};
}

ChshReport chsh_quantum(const TwoQubitState& state, const ChshSetting& s, double lam) {
    require(lam > 0.0 && lam <= 1.0, "unsharpness must satisfy 0 < lambda <= 1");
    const UnsharpSpin ua(lam, s.a);
    const UnsharpSpin uap(lam, s.a_prime);
    const SharpSpin sb(s.b);
    const SharpSpin sbp(s.b_prime);
    return chsh_from_correlations(correlation(state, ua, sb), correlation(state, uap, sb),
                                  correlation(state, ua, sbp), correlation(state, uap, sbp));
}

bool ChainReport::all_passed() const {
    return decomposition_ok && nonnegativity_ok && identity_ok && bound_b_ok && bound_bp_ok &&
           combined_ok && no_signalling_ok && normalization_ok && bound_final_ok;
}

ChainReport verify_derivation_chain(const JointBehavior& jb) {
    constexpr double kSlack = 1e-10;     // slack on exact identities and inequalities
    constexpr double kNsTol = 1e-9;      // no-signalling equality tolerance

    ChainReport r{};
    for (int y = 0; y < 2; ++y) {
        const auto yy = static_cast<std::size_t>(y);
        double same = 0.0, diff = 0.0, ea = 0.0, eap = 0.0;
        for (int ij = 0; ij < 2; ++ij)
            for (int ik = 0; ik < 2; ++ik)
                for (int ib = 0; ib < 2; ++ib) {
                    const double q = jb.q_by_index(y, ij, ik, ib);
                    const double j = ij == 0 ? 1.0 : -1.0;
                    const double k = ik == 0 ? 1.0 : -1.0;
                    const double b = ib == 0 ? 1.0 : -1.0;
                    (ij == ik ? same : diff) += q;
                    ea += j * b * q;
                    eap += k * b * q;
                }
        r.p_same[yy] = same;
        r.p_diff[yy] = diff;
        r.e_a[yy] = ea;
        r.e_ap[yy] = eap;
        r.p_all_equal[yy] = jb.q_by_index(y, 0, 0, 0) + jb.q_by_index(y, 1, 1, 1);
        r.p_pair_anti[yy] = jb.q_by_index(y, 0, 0, 1) + jb.q_by_index(y, 1, 1, 0);
    }

    r.decomposition_ok = r.nonnegativity_ok = r.identity_ok = true;
    r.normalization_ok = true;
    for (int y = 0; y < 2; ++y) {
        const auto yy = static_cast<std::size_t>(y);
        const double sum = r.p_all_equal[yy] + r.p_pair_anti[yy];
        const double gap = std::abs(r.p_all_equal[yy] - r.p_pair_anti[yy]);
        const double half_corr = 0.5 * std::abs(r.e_a[yy] + r.e_ap[yy]);
        r.decomposition_ok = r.decomposition_ok && std::abs(r.p_same[yy] - sum) <= kSlack;
        r.nonnegativity_ok = r.nonnegativity_ok && sum >= gap - kSlack;
        r.identity_ok = r.identity_ok && std::abs(gap - half_corr) <= kSlack;
        r.normalization_ok =
            r.normalization_ok && std::abs(r.p_same[yy] + r.p_diff[yy] - 1.0) <= kNsTol;
    }

    const double rhs_b = 0.5 * std::abs(r.e_a[0] + r.e_ap[0]);
    const double rhs_bp = 0.5 * std::abs(r.e_a[1] - r.e_ap[1]);
    r.bound_b_ok = r.p_same[0] >= rhs_b - kSlack;
    r.bound_bp_ok = r.p_diff[1] >= rhs_bp - kSlack;
    r.combined_ok = r.p_same[0] + r.p_diff[1] >= rhs_b + rhs_bp - kSlack;

    r.no_signalling_gap = std::abs(r.p_diff[0] - r.p_diff[1]);
    r.no_signalling_ok = r.no_signalling_gap <= kNsTol;

    r.lhs = 2.0 * (rhs_b + rhs_bp);
    r.bound_final_ok = r.lhs <= 2.0 + kNsTol;
    return r;
}

double lhv_max(const ChshSetting&, const TwoQubitState&) {
    int best = 0;
    // lexicographic enumeration; the first maximizer wins ties
    for (int a : {1, -1})
        for (int ap : {1, -1})
            for (int b : {1, -1})
                for (int bp : {1, -1}) {
                    const int v = std::abs(a * b + ap * b) + std::abs(a * bp - ap * bp);
                    if (v > best) best = v;
                }
    return static_cast<double>(best);
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 correlation_matrix(const TwoQubitState& state) {
    const HermitianOperator sig[3] = {pauli(PauliAxis::X), pauli(PauliAxis::Y),
                                      pauli(PauliAxis::Z)};
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                expectation(state, sig[i], sig[j]);
    return t;
}

double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Ascending eigenvalues of a symmetric 3x3 matrix, trigonometric closed form.
std::array<double, 3> eigvals_sym3(const Mat3& m) {
    const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    std::array<double, 3> vals{};
    if (p1 == 0.0) {
        vals = {m[0][0], m[1][1], m[2][2]};
        std::sort(vals.begin(), vals.end());
        return vals;
    }
    const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                      (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
    const double r = std::clamp(0.5 * det3(b), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + kTwoPi / 3.0);
    vals = {e3, 3.0 * q - e1 - e3, e1};
    std::sort(vals.begin(), vals.end());
    return vals;
}

Vec3 dir_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double dot_t(const Mat3& t, const Vec3& u, const Vec3& v) {
    const double tu0 = t[0][0] * v.x + t[0][1] * v.y + t[0][2] * v.z;
    const double tu1 = t[1][0] * v.x + t[1][1] * v.y + t[1][2] * v.z;
    const double tu2 = t[2][0] * v.x + t[2][1] * v.y + t[2][2] * v.z;
    return u.x * tu0 + u.y * tu1 + u.z * tu2;
}

double chsh_value_from_angles(const Mat3& t, const std::array<double, 8>& x) {
    const Vec3 a = dir_from_angles(x[0], x[1]);
    const Vec3 ap = dir_from_angles(x[2], x[3]);
    const Vec3 b = dir_from_angles(x[4], x[5]);
    const Vec3 bp = dir_from_angles(x[6], x[7]);
    return std::abs(dot_t(t, a, b) + dot_t(t, ap, b)) +
           std::abs(dot_t(t, a, bp) - dot_t(t, ap, bp));
}

struct SimplexResult {
    std::array<double, 8> x;
    double f;
    bool converged;
};

// Nelder-Mead on 8 parameters, minimizing f. Stops when the simplex
// diameter (max distance to the best vertex) falls below 1e-9.
template <typename F>
SimplexResult nelder_mead(F f, const std::array<double, 8>& x0) {
    constexpr int kDim = 8;
    constexpr int kMaxIter = 6000;
    constexpr double kDiamTol = 1e-9;
    constexpr double kInitStep = 0.35;

    std::vector<std::array<double, 8>> v(kDim + 1, x0);
    std::vector<double> fv(kDim + 1);
    for (int i = 0; i < kDim; ++i)
        v[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += kInitStep;
    for (std::size_t i = 0; i < v.size(); ++i) fv[i] = f(v[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) { return fv[p] < fv[q]; });
        std::vector<std::array<double, 8>> nv(v.size());
        std::vector<double> nf(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            nv[i] = v[idx[i]];
            nf[i] = fv[idx[i]];
        }
        v = std::move(nv);
        fv = std::move(nf);
    };

    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i)
            for (int k = 0; k < kDim; ++k)
                d = std::max(d, std::abs(v[i][static_cast<std::size_t>(k)] -
                                         v[0][static_cast<std::size_t>(k)]));
        return d;
    };

    for (int iter = 0; iter < kMaxIter; ++iter) {
        order();
        if (diameter() < kDiamTol) return {v[0], fv[0], true};

        std::array<double, 8> centroid{};
        for (std::size_t i = 0; i < v.size() - 1; ++i)
            for (int k = 0; k < kDim; ++k)
                centroid[static_cast<std::size_t>(k)] += v[i][static_cast<std::size_t>(k)] / kDim;

        const std::size_t worst = v.size() - 1;
        auto blend = [&](double coef) {
            std::array<double, 8> p{};
            for (int k = 0; k < kDim; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                p[kk] = centroid[kk] + coef * (centroid[kk] - v[worst][kk]);
            }
            return p;
        };

        const auto xr = blend(1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const auto xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                v[worst] = xe;
                fv[worst] = fe;
            } else {
                v[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[worst - 1]) {
            v[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const auto xc = blend(outside ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc < (outside ? fr : fv[worst])) {
                v[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 1; i < v.size(); ++i) {
                    for (int k = 0; k < kDim; ++k) {
                        const auto kk = static_cast<std::size_t>(k);
                        v[i][kk] = v[0][kk] + 0.5 * (v[i][kk] - v[0][kk]);
                    }
                    fv[i] = f(v[i]);
                }
            }
        }
    }
    order();
    return {v[0], fv[0], false};
}

}  // namespace

TsirelsonResult tsirelson_optimize(const TwoQubitState& state, std::uint64_t seed, int n_starts) {
    require(n_starts >= 1, "need at least one start");
    const Mat3 t = correlation_matrix(state);
    auto negated = [&t](const std::array<double, 8>& x) { return -chsh_value_from_angles(t, x); };

    SimplexResult best{{}, 1.0, false};
    int converged = 0;
    for (int s = 0; s < n_starts; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        std::array<double, 8> x0{};
        for (int d = 0; d < 4; ++d) {
            x0[static_cast<std::size_t>(2 * d)] = std::acos(1.0 - 2.0 * rng.next_unit());
            x0[static_cast<std::size_t>(2 * d + 1)] = kTwoPi * rng.next_unit();
        }
        auto res = nelder_mead(negated, x0);
        if (res.converged) {
            ++converged;
            // polish once from the incumbent with a fresh simplex
            auto polished = nelder_mead(negated, res.x);
            if (polished.converged && polished.f < res.f) res = polished;
        }
        if (res.converged && res.f < best.f) best = res;
    }
    if (converged == 0)
        throw std::runtime_error("CHSH optimizer failed to converge; best value " +
                                 std::to_string(-best.f));

    const ChshSetting setting(dir_from_angles(best.x[0], best.x[1]),
                              dir_from_angles(best.x[2], best.x[3]),
                              dir_from_angles(best.x[4], best.x[5]),
                              dir_from_angles(best.x[6], best.x[7]));
    return TsirelsonResult{chsh_quantum(state, setting, 1.0), setting, converged};
}

double horodecki_oracle(const TwoQubitState& state) {
    const Mat3 t = correlation_matrix(state);
    Mat3 tt{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) tt[i][j] += t[k][i] * t[k][j];
    const auto vals = eigvals_sym3(tt);
    return 2.0 * std::sqrt(std::max(0.0, vals[1] + vals[2]));
}

}  // namespace ubell
