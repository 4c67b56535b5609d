#pragma once

#include <array>
#include <vector>

#include "ubell/linalg.hpp"

// Sharp and unsharp qubit spin observables, the Busch coexistence condition
// for two unsharp spins, and an explicit joint POVM for coexistent pairs.

namespace ubell {

struct SharpSpin {
    Vec3 direction;
    explicit SharpSpin(const Vec3& dir);
};

// Dichotomic POVM {1/2[I +/- lam a.sigma]}; lam = 1 is the sharp limit.
struct UnsharpSpin {
    double lam;
    Vec3 direction;
    UnsharpSpin(double lam, const Vec3& dir);
};

// General finite POVM: positive effects below identity summing to identity.
class Povm {
public:
    explicit Povm(std::vector<HermitianOperator> effects);

    std::size_t n_outcomes() const { return effects_.size(); }
    const HermitianOperator& effect(std::size_t i) const { return effects_.at(i); }
    int dim() const { return effects_.front().dim(); }

private:
    std::vector<HermitianOperator> effects_;
};

// Joint observable for two coexistent unsharp spins. Outcomes are labelled
// (j, k) with j, k in {+1, -1}; index 0 maps to +1 throughout the library.
class JointSpinPovm {
public:
    JointSpinPovm(std::array<std::array<HermitianOperator, 2>, 2> effects,
                  const UnsharpSpin& u1, const UnsharpSpin& u2, double gamma);

    // j, k are signed outcomes, +1 or -1
    const HermitianOperator& effect(int j, int k) const;
    const HermitianOperator& effect_by_index(int j_idx, int k_idx) const;

    double lam1() const { return lam1_; }
    double lam2() const { return lam2_; }
    const Vec3& dir1() const { return dir1_; }
    const Vec3& dir2() const { return dir2_; }
    double gamma() const { return gamma_; }

    // flattened outcome order (+,+), (+,-), (-,+), (-,-)
    Povm as_povm() const;

private:
    std::array<std::array<HermitianOperator, 2>, 2> g_;
    double lam1_, lam2_;
    Vec3 dir1_, dir2_;
    double gamma_;
};

// 1/2[I + sign a.sigma]
HermitianOperator sharp_projector(const SharpSpin& s, int sign);

// 1/2[I + sign lam a.sigma], eigenvalues (1 +/- lam)/2
HermitianOperator unsharp_effect(const UnsharpSpin& u, int sign);

struct SpectralParts {
    double reality;          // (1 + lam)/2
    double unsharpness;      // (1 - lam)/2
    HermitianOperator p_plus;
    HermitianOperator p_minus;
};

// E_lam(a) = reality * P(+a) + unsharpness * P(-a)
SpectralParts spectral_decompose(const UnsharpSpin& u);

struct CoexistenceResult {
    bool coexistent;
    double lhs;  // |l1 a1 + l2 a2| + |l1 a1 - l2 a2|, jointly measurable iff <= 2
};

CoexistenceResult coexistence_check(const UnsharpSpin& u1, const UnsharpSpin& u2);

// Largest equal unsharpness admitting a joint measurement for the two
// directions: 2 / (|a1 + a2| + |a1 - a2|), capped at 1.
double max_equal_lambda(const Vec3& a1, const Vec3& a2);

// Candidate joint effect 1/4[(1 + jk gamma) I + (j l1 a1 + k l2 a2).sigma].
// Exposed so tests can probe infeasible gamma values directly.
HermitianOperator joint_effect(const UnsharpSpin& u1, const UnsharpSpin& u2,
                               double gamma, int j, int k);

// Feasible gamma interval [ |l1 a1 + l2 a2| - 1, 1 - |l1 a1 - l2 a2| ];
// nonempty exactly when the coexistence condition holds.
struct GammaInterval {
    double lo;
    double hi;
    bool nonempty() const { return lo <= hi; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

GammaInterval gamma_interval(const UnsharpSpin& u1, const UnsharpSpin& u2);

// Builds the joint POVM at the midpoint gamma. Throws when the coexistence
// condition fails.
JointSpinPovm build_joint_povm(const UnsharpSpin& u1, const UnsharpSpin& u2);

}  // namespace ubell
