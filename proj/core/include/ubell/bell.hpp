#pragma once

#include <array>
#include <cstdint>

#include "ubell/linalg.hpp"
#include "ubell/states.hpp"

// CHSH evaluation, the joint-measurement Bell-inequality derivation chain as
// executable checks, the LHV bound by enumeration, and numerical recovery of
// the Tsirelson bound.

namespace ubell {

struct ChshSetting {
    Vec3 a, a_prime, b, b_prime;
    ChshSetting(const Vec3& a, const Vec3& a_prime, const Vec3& b, const Vec3& b_prime);
};

// value = |e_ab + e_apb| + |e_abp - e_apbp|; the primed-primed term carries
// the minus sign. Relabelling observables permutes which term is negative.
struct ChshReport {
    double e_ab, e_apb, e_abp, e_apbp;
    double value;
};

ChshReport chsh_from_correlations(double e_ab, double e_apb, double e_abp, double e_apbp);

// Correlations from the state with Alice unsharp at lam (lam = 1 sharp);
// the report value factorizes as lam times the sharp value.
ChshReport chsh_quantum(const TwoQubitState& state, const ChshSetting& s, double lam);

// Step-by-step audit of the inequality chain on a joint behavior:
// decomposition of p(A_J = A'_J), the correlation identity, the two
// intermediate inequalities, the no-signalling equality across Bob's
// settings, and the final bound. Indices 0/1 refer to Bob's setting.
struct ChainReport {
    std::array<double, 2> p_same;        // p(A_J = A'_J | y)
    std::array<double, 2> p_diff;        // p(A_J = -A'_J | y)
    std::array<double, 2> p_all_equal;   // p(A_J = A'_J = B_y)
    std::array<double, 2> p_pair_anti;   // p(A_J = A'_J = -B_y)
    std::array<double, 2> e_a;           // E(A_J, B_y)
    std::array<double, 2> e_ap;          // E(A'_J, B_y)

    bool decomposition_ok;    // p_same = p_all_equal + p_pair_anti
    bool nonnegativity_ok;    // sum >= |difference|
    bool identity_ok;         // |difference| = |e_a + e_ap| / 2
    bool bound_b_ok;          // p_same(0) >= |e_a(0) + e_ap(0)| / 2
    bool bound_bp_ok;         // p_diff(1) >= |e_a(1) - e_ap(1)| / 2
    bool combined_ok;         // sum of the two bounds
    bool no_signalling_ok;    // p_diff independent of Bob's setting
    double no_signalling_gap;
    bool normalization_ok;    // p_same(0) + p_diff(0) = 1
    double lhs;               // |e_a(0)+e_ap(0)| + |e_a(1)-e_ap(1)|
    bool bound_final_ok;      // lhs <= 2

    bool all_passed() const;
};

ChainReport verify_derivation_chain(const JointBehavior& jb);

// Maximum of the CHSH combination over the 16 deterministic +/-1 strategies;
// always exactly 2. The arguments are unused and kept for signature symmetry
// with the quantum evaluators.
double lhv_max(const ChshSetting& s, const TwoQubitState& state);

struct TsirelsonResult {
    ChshReport best;
    ChshSetting setting;
    int converged_starts;
};

// Maximizes the sharp CHSH value over the four measurement directions with
// multi-start Nelder-Mead on polar/azimuthal angles. Deterministic for a
// given seed. Throws if no start converges.
TsirelsonResult tsirelson_optimize(const TwoQubitState& state, std::uint64_t seed = 0,
                                   int n_starts = 16);

// Closed-form maximum of the sharp CHSH value: 2 sqrt(m1 + m2) with m1, m2
// the two largest eigenvalues of T^t T, T_ij = Tr[rho sigma_i x sigma_j].
double horodecki_oracle(const TwoQubitState& state);

}  // namespace ubell
