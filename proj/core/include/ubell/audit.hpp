#pragma once

#include <string>

#include "ubell/linalg.hpp"
#include "ubell/states.hpp"

// No-signalling verification on behavior tables and the causality verdict:
// given correlations and an unsharpness level, decide whether joint
// measurability forces superluminal signalling.

namespace ubell {

enum class VerdictKind {
    Consistent,               // joint measurement exists and the bound holds
    ImpliesSignalling,        // joint measurement exists, bound violated
    JointMeasurementImpossible  // lambda too large for any joint observable
};

const char* to_string(VerdictKind kind);

struct AuditVerdict {
    VerdictKind kind;
    double lhs_bell;    // lambda * (|e_ab + e_apb| + |e_abp - e_apbp|)
    double lambda_max;  // largest equal unsharpness coexistent for the two directions
    std::string details;
};

struct NoSignallingResult {
    bool ok;
    double max_violation;
};

// Largest marginal shift of either party across the other party's settings;
// ok iff it stays below 1e-9.
NoSignallingResult no_signalling_check(const BehaviorTable& t);

// Extremal no-signalling behavior: p(a,b|x,y) = 1/2 when a*b = (-1)^(x*y),
// correlations (1,1,1,-1), CHSH value 4.
BehaviorTable pr_box();

// The verdict gates on joint measurability first: above lambda_max no joint
// observable exists and nothing about signalling follows.
AuditVerdict causality_audit(double e_ab, double e_apb, double e_abp, double e_apbp, double lam,
                             const Vec3& a1, const Vec3& a2);

// Extracts the four correlations from the table and delegates.
AuditVerdict audit_behavior(const BehaviorTable& t, double lam, const Vec3& a1, const Vec3& a2);

}  // namespace ubell
