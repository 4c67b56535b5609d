#include "ubell/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ubell {

namespace {

constexpr double kCoexistTol = 1e-12;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

int sign_index(int sign) {
    require(sign == 1 || sign == -1, "outcome sign must be +1 or -1");
    return sign == 1 ? 0 : 1;
}

// 1/2[(w0) I + w.sigma] as an explicit 2x2 Hermitian matrix
HermitianOperator half_bloch(double w0, const Vec3& w) {
    SquareOp m(2);
    m.at(0, 0) = 0.5 * (w0 + w.z);
    m.at(1, 1) = 0.5 * (w0 - w.z);
    m.at(0, 1) = 0.5 * Complex(w.x, -w.y);
    m.at(1, 0) = 0.5 * Complex(w.x, w.y);
    return HermitianOperator(m);
}

}  // namespace

SharpSpin::SharpSpin(const Vec3& dir) : direction(dir) {
    require(dir.is_unit(), "spin direction must be a unit vector");
}

UnsharpSpin::UnsharpSpin(double lam_, const Vec3& dir) : lam(lam_), direction(dir) {
    require(lam_ > 0.0 && lam_ <= 1.0, "unsharpness must satisfy 0 < lambda <= 1");
    require(dir.is_unit(), "spin direction must be a unit vector");
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
    require(!effects_.empty(), "POVM needs at least one effect");
    const int d = effects_.front().dim();
    SquareOp sum(d);
    const HermitianOperator id = HermitianOperator::identity(d);
    for (const auto& e : effects_) {
        require(e.dim() == d, "POVM effects must share one dimension");
        if (!is_psd(e)) throw std::invalid_argument("POVM effect is not positive");
        if (!is_psd(id - e)) throw std::invalid_argument("POVM effect exceeds identity");
        sum = sum + e.op();
    }
    if (sum.max_abs_diff(id.op()) > 1e-12)
        throw std::invalid_argument("POVM effects do not sum to identity");
}

JointSpinPovm::JointSpinPovm(std::array<std::array<HermitianOperator, 2>, 2> effects,
                             const UnsharpSpin& u1, const UnsharpSpin& u2, double gamma)
    : g_(std::move(effects)),
      lam1_(u1.lam),
      lam2_(u2.lam),
      dir1_(u1.direction),
      dir2_(u2.direction),
      gamma_(gamma) {
    // marginal identities: summing out either index must reproduce the
    // corresponding unsharp effect (the gamma terms cancel)
    for (int s : {1, -1}) {
        const auto m1 = effect(s, 1) + effect(s, -1);
        const auto e1 = unsharp_effect(UnsharpSpin(lam1_, s == 1 ? dir1_ : -dir1_), 1);
        require(m1.op().max_abs_diff(e1.op()) <= 1e-12, "first marginal identity broken");
        const auto m2 = effect(1, s) + effect(-1, s);
        const auto e2 = unsharp_effect(UnsharpSpin(lam2_, s == 1 ? dir2_ : -dir2_), 1);
        require(m2.op().max_abs_diff(e2.op()) <= 1e-12, "second marginal identity broken");
    }
    as_povm();  // validates positivity and completeness
}

const HermitianOperator& JointSpinPovm::effect(int j, int k) const {
    return g_[static_cast<std::size_t>(sign_index(j))][static_cast<std::size_t>(sign_index(k))];
}

const HermitianOperator& JointSpinPovm::effect_by_index(int j_idx, int k_idx) const {
    return g_.at(static_cast<std::size_t>(j_idx)).at(static_cast<std::size_t>(k_idx));
}

Povm JointSpinPovm::as_povm() const {
    return Povm({g_[0][0], g_[0][1], g_[1][0], g_[1][1]});
}

HermitianOperator sharp_projector(const SharpSpin& s, int sign) {
    const double sgn = sign_index(sign) == 0 ? 1.0 : -1.0;
    return half_bloch(1.0, sgn * s.direction);
}

HermitianOperator unsharp_effect(const UnsharpSpin& u, int sign) {
    const double sgn = sign_index(sign) == 0 ? 1.0 : -1.0;
    return half_bloch(1.0, (sgn * u.lam) * u.direction);
}

SpectralParts spectral_decompose(const UnsharpSpin& u) {
    const SharpSpin sharp(u.direction);
    return SpectralParts{0.5 * (1.0 + u.lam), 0.5 * (1.0 - u.lam),
                         sharp_projector(sharp, 1), sharp_projector(sharp, -1)};
}

CoexistenceResult coexistence_check(const UnsharpSpin& u1, const UnsharpSpin& u2) {
    const Vec3 p = u1.lam * u1.direction + u2.lam * u2.direction;
    const Vec3 m = u1.lam * u1.direction - u2.lam * u2.direction;
    const double lhs = p.norm() + m.norm();
    return CoexistenceResult{lhs <= 2.0 + kCoexistTol, lhs};
}

double max_equal_lambda(const Vec3& a1, const Vec3& a2) {
    require(a1.is_unit() && a2.is_unit(), "directions must be unit vectors");
    const double denom = (a1 + a2).norm() + (a1 - a2).norm();
    return std::min(1.0, 2.0 / denom);
}

HermitianOperator joint_effect(const UnsharpSpin& u1, const UnsharpSpin& u2,
                               double gamma, int j, int k) {
    const double js = sign_index(j) == 0 ? 1.0 : -1.0;
    const double ks = sign_index(k) == 0 ? 1.0 : -1.0;
    const Vec3 w = (js * u1.lam) * u1.direction + (ks * u2.lam) * u2.direction;
    return 0.5 * half_bloch(1.0 + js * ks * gamma, w);
}

GammaInterval gamma_interval(const UnsharpSpin& u1, const UnsharpSpin& u2) {
    const double s = (u1.lam * u1.direction + u2.lam * u2.direction).norm();
    const double d = (u1.lam * u1.direction - u2.lam * u2.direction).norm();
    return GammaInterval{s - 1.0, 1.0 - d};
}

JointSpinPovm build_joint_povm(const UnsharpSpin& u1, const UnsharpSpin& u2) {
    const auto coex = coexistence_check(u1, u2);
    if (!coex.coexistent)
        throw std::invalid_argument("no joint observable exists: coexistence condition violated");
    const double gamma = gamma_interval(u1, u2).midpoint();
    std::array<std::array<HermitianOperator, 2>, 2> g{{
        {joint_effect(u1, u2, gamma, 1, 1), joint_effect(u1, u2, gamma, 1, -1)},
        {joint_effect(u1, u2, gamma, -1, 1), joint_effect(u1, u2, gamma, -1, -1)},
    }};
    return JointSpinPovm(std::move(g), u1, u2, gamma);
}

}  // namespace ubell
