#include "ubell/audit.hpp"

#include <cmath>
#include <stdexcept>

#include "ubell/bell.hpp"
#include "ubell/observables.hpp"

namespace ubell {

namespace {

constexpr double kNsTol = 1e-9;
constexpr double kBoundTol = 1e-9;     // lhs > 2 + tol counts as violation
constexpr double kLambdaTol = 1e-12;   // matches the coexistence comparison

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

const char* to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::Consistent: return "Consistent";
        case VerdictKind::ImpliesSignalling: return "ImpliesSignalling";
        case VerdictKind::JointMeasurementImpossible: return "JointMeasurementImpossible";
    }
    return "?";
}

NoSignallingResult no_signalling_check(const BehaviorTable& t) {
    double worst = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int ia = 0; ia < 2; ++ia)
            worst = std::max(worst,
                             std::abs(t.alice_marginal(ia, x, 0) - t.alice_marginal(ia, x, 1)));
    for (int y = 0; y < 2; ++y)
        for (int ib = 0; ib < 2; ++ib)
            worst = std::max(worst,
                             std::abs(t.bob_marginal(ib, 0, y) - t.bob_marginal(ib, 1, y)));
    return NoSignallingResult{worst <= kNsTol, worst};
}

BehaviorTable pr_box() {
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int ia = 0; ia < 2; ++ia)
                for (int ib = 0; ib < 2; ++ib) {
                    const int a = ia == 0 ? 1 : -1;
                    const int b = ib == 0 ? 1 : -1;
                    const int target = (x == 1 && y == 1) ? -1 : 1;
                    p[BehaviorTable::index(x, y, ia, ib)] = (a * b == target) ? 0.5 : 0.0;
                }
    return BehaviorTable(p);
}

AuditVerdict causality_audit(double e_ab, double e_apb, double e_abp, double e_apbp, double lam,
                             const Vec3& a1, const Vec3& a2) {
    for (double e : {e_ab, e_apb, e_abp, e_apbp})
        require(std::abs(e) <= 1.0 + 1e-9, "correlation outside [-1, 1]");
    require(lam > 0.0 && lam <= 1.0, "unsharpness must satisfy 0 < lambda <= 1");

    const double lambda_max = max_equal_lambda(a1, a2);
    const double sharp_value = chsh_from_correlations(e_ab, e_apb, e_abp, e_apbp).value;
    const double lhs = lam * sharp_value;

    AuditVerdict v{VerdictKind::Consistent, lhs, lambda_max, ""};
    if (lam > lambda_max + kLambdaTol) {
        v.kind = VerdictKind::JointMeasurementImpossible;
        v.details = "lambda " + std::to_string(lam) + " exceeds lambda_max " +
                    std::to_string(lambda_max) +
                    "; no joint observable exists for these directions, nothing follows about signalling";
    } else if (lhs > 2.0 + kBoundTol) {
        v.kind = VerdictKind::ImpliesSignalling;
        v.details = "joint measurement exists at this unsharpness and the Bell bound is violated "
                    "(lhs " + std::to_string(lhs) + " > 2); these correlations would allow signalling";
    } else {
        v.details = "joint measurement exists and the Bell bound holds (lhs " +
                    std::to_string(lhs) + " <= 2)";
    }
    return v;
}

AuditVerdict audit_behavior(const BehaviorTable& t, double lam, const Vec3& a1, const Vec3& a2) {
    return causality_audit(t.correlation(0, 0), t.correlation(1, 0), t.correlation(0, 1),
                           t.correlation(1, 1), lam, a1, a2);
}

}  // namespace ubell
