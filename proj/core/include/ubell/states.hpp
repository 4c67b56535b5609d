#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ubell/linalg.hpp"
#include "ubell/observables.hpp"

// Two-qubit states, quantum expectations and correlations, behavior tables
// and seeded outcome sampling. Outcome index 0 maps to +1, index 1 to -1.

namespace ubell {

class TwoQubitState {
public:
    explicit TwoQubitState(const HermitianOperator& rho);
    const HermitianOperator& rho() const { return rho_; }

private:
    HermitianOperator rho_;
};

// (|01> - |10>)/sqrt(2) as a density operator; E(a,b) = -a.b for sharp spins.
TwoQubitState singlet();

// p * singlet + (1 - p) * I/4
TwoQubitState werner(double p);

TwoQubitState maximally_mixed();

// Tr[rho (A tensor B)]; throws if the imaginary residue exceeds 1e-10.
double expectation(const TwoQubitState& state, const HermitianOperator& a,
                   const HermitianOperator& b);

// E = sum_{a,b} a b Tr[rho (E_a tensor F_b)]; scales linearly in Alice's
// unsharpness: E_unsharp = lam * E_sharp.
double correlation(const TwoQubitState& state, const UnsharpSpin& alice, const SharpSpin& bob);
double correlation(const TwoQubitState& state, const SharpSpin& alice, const SharpSpin& bob);

// p(a,b|x,y) over two settings per party and +/-1 outcomes.
class BehaviorTable {
public:
    // flat layout x*8 + y*4 + a_idx*2 + b_idx
    explicit BehaviorTable(const std::array<double, 16>& p);

    static std::size_t index(int x, int y, int a_idx, int b_idx);

    double p_by_index(int x, int y, int a_idx, int b_idx) const;
    // a, b are signed outcomes
    double p(int a, int b, int x, int y) const;

    // sum_{a,b} a b p(a,b|x,y)
    double correlation(int x, int y) const;
    double alice_marginal(int a_idx, int x, int y) const;
    double bob_marginal(int b_idx, int x, int y) const;

private:
    std::array<double, 16> p_;
};

BehaviorTable behavior_from_state(const TwoQubitState& state,
                                  const std::array<Povm, 2>& alice,
                                  const std::array<Povm, 2>& bob);

// q(j,k,b|y): Alice measures the joint observable, Bob picks setting y.
class JointBehavior {
public:
    // flat layout y*8 + j_idx*4 + k_idx*2 + b_idx
    explicit JointBehavior(const std::array<double, 16>& q);

    static std::size_t index(int y, int j_idx, int k_idx, int b_idx);

    double q_by_index(int y, int j_idx, int k_idx, int b_idx) const;
    double q(int j, int k, int b, int y) const;

private:
    std::array<double, 16> q_;
};

JointBehavior joint_behavior_from_state(const TwoQubitState& state, const JointSpinPovm& joint,
                                        const std::array<SharpSpin, 2>& bob);

// Outcome counts from n independent draws of the exact joint distribution.
struct SampleCounts {
    std::vector<std::vector<std::uint64_t>> counts;  // [alice outcome][bob outcome]
    std::uint64_t n = 0;

    // (n_++ + n_-- - n_+- - n_-+)/n; defined for dichotomic measurements
    double empirical_correlation() const;
};

// Inverse-CDF sampling, deterministic for a given seed. Draws are organized
// in fixed-size chunks with per-chunk substreams, so chunk results do not
// depend on evaluation order.
SampleCounts sample_outcomes(const TwoQubitState& state, const Povm& alice, const Povm& bob,
                             std::uint64_t n, std::uint64_t seed);

}  // namespace ubell
