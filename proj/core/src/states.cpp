#include "ubell/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ubell/rng.hpp"

namespace ubell {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

int outcome_index(int outcome) {
    require(outcome == 1 || outcome == -1, "outcome must be +1 or -1");
    return outcome == 1 ? 0 : 1;
}

void check_probability_block(const double* p, std::size_t len, double total_per_block,
                             std::size_t block) {
    for (std::size_t i = 0; i < len; ++i)
        require(p[i] >= -1e-12 && p[i] <= 1.0 + 1e-12, "probability outside [0,1]");
    for (std::size_t start = 0; start < len; start += block) {
        double s = 0.0;
        for (std::size_t i = 0; i < block; ++i) s += p[start + i];
        require(std::abs(s - total_per_block) <= 1e-12, "probabilities do not normalize");
    }
}

}  // namespace

TwoQubitState::TwoQubitState(const HermitianOperator& rho) : rho_(rho) {
    require(rho.dim() == 4, "two-qubit state must be 4x4");
    require(std::abs(rho.real_trace() - 1.0) <= 1e-12, "state trace must be 1");
    if (!is_psd(rho, 1e-10)) throw std::invalid_argument("state is not positive semidefinite");
}

TwoQubitState singlet() {
    SquareOp m(4);
    m.at(1, 1) = 0.5;
    m.at(2, 2) = 0.5;
    m.at(1, 2) = -0.5;
    m.at(2, 1) = -0.5;
    return TwoQubitState(HermitianOperator(m));
}

TwoQubitState werner(double p) {
    const SquareOp s = singlet().rho().op();
    const SquareOp mixed = 0.25 * SquareOp::identity(4);
    return TwoQubitState(HermitianOperator(p * s + (1.0 - p) * mixed));
}

TwoQubitState maximally_mixed() {
    return TwoQubitState(HermitianOperator(0.25 * SquareOp::identity(4)));
}

double expectation(const TwoQubitState& state, const HermitianOperator& a,
                   const HermitianOperator& b) {
    require(a.dim() == 2 && b.dim() == 2, "expectation takes 2x2 local operators");
    const Complex t = (state.rho().op() * tensor(a, b).op()).trace();
    if (std::abs(t.imag()) > 1e-10)
        throw std::invalid_argument("expectation has a non-real value; input not Hermitian?");
    return t.real();
}

double correlation(const TwoQubitState& state, const UnsharpSpin& alice, const SharpSpin& bob) {
    double e = 0.0;
    for (int a : {1, -1})
        for (int b : {1, -1})
            e += a * b * expectation(state, unsharp_effect(alice, a), sharp_projector(bob, b));
    return e;
}

double correlation(const TwoQubitState& state, const SharpSpin& alice, const SharpSpin& bob) {
    return correlation(state, UnsharpSpin(1.0, alice.direction), bob);
}

std::size_t BehaviorTable::index(int x, int y, int a_idx, int b_idx) {
    return static_cast<std::size_t>(x * 8 + y * 4 + a_idx * 2 + b_idx);
}

BehaviorTable::BehaviorTable(const std::array<double, 16>& p) : p_(p) {
    // each (x,y) slice of four entries is a distribution
    check_probability_block(p_.data(), 16, 1.0, 4);
}

double BehaviorTable::p_by_index(int x, int y, int a_idx, int b_idx) const {
    return p_[index(x, y, a_idx, b_idx)];
}

double BehaviorTable::p(int a, int b, int x, int y) const {
    return p_by_index(x, y, outcome_index(a), outcome_index(b));
}

double BehaviorTable::correlation(int x, int y) const {
    return p_by_index(x, y, 0, 0) - p_by_index(x, y, 0, 1) - p_by_index(x, y, 1, 0) +
           p_by_index(x, y, 1, 1);
}

double BehaviorTable::alice_marginal(int a_idx, int x, int y) const {
    return p_by_index(x, y, a_idx, 0) + p_by_index(x, y, a_idx, 1);
}

double BehaviorTable::bob_marginal(int b_idx, int x, int y) const {
    return p_by_index(x, y, 0, b_idx) + p_by_index(x, y, 1, b_idx);
}

BehaviorTable behavior_from_state(const TwoQubitState& state, const std::array<Povm, 2>& alice,
                                  const std::array<Povm, 2>& bob) {
    for (const auto& pov : alice)
        require(pov.n_outcomes() == 2 && pov.dim() == 2, "Alice POVMs must be dichotomic qubit POVMs");
    for (const auto& pov : bob)
        require(pov.n_outcomes() == 2 && pov.dim() == 2, "Bob POVMs must be dichotomic qubit POVMs");

    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int ia = 0; ia < 2; ++ia)
                for (int ib = 0; ib < 2; ++ib)
                    p[BehaviorTable::index(x, y, ia, ib)] = expectation(
                        state, alice[static_cast<std::size_t>(x)].effect(static_cast<std::size_t>(ia)),
                        bob[static_cast<std::size_t>(y)].effect(static_cast<std::size_t>(ib)));
    return BehaviorTable(p);
}

std::size_t JointBehavior::index(int y, int j_idx, int k_idx, int b_idx) {
    return static_cast<std::size_t>(y * 8 + j_idx * 4 + k_idx * 2 + b_idx);
}

JointBehavior::JointBehavior(const std::array<double, 16>& q) : q_(q) {
    // each y slice of eight entries is a distribution
    check_probability_block(q_.data(), 16, 1.0, 8);
}

double JointBehavior::q_by_index(int y, int j_idx, int k_idx, int b_idx) const {
    return q_[index(y, j_idx, k_idx, b_idx)];
}

double JointBehavior::q(int j, int k, int b, int y) const {
    return q_by_index(y, outcome_index(j), outcome_index(k), outcome_index(b));
}

JointBehavior joint_behavior_from_state(const TwoQubitState& state, const JointSpinPovm& joint,
                                        const std::array<SharpSpin, 2>& bob) {
    std::array<double, 16> q{};
    for (int y = 0; y < 2; ++y)
        for (int ij = 0; ij < 2; ++ij)
            for (int ik = 0; ik < 2; ++ik)
                for (int ib = 0; ib < 2; ++ib)
                    q[JointBehavior::index(y, ij, ik, ib)] =
                        expectation(state, joint.effect_by_index(ij, ik),
                                    sharp_projector(bob[static_cast<std::size_t>(y)], ib == 0 ? 1 : -1));
    return JointBehavior(q);
}

double SampleCounts::empirical_correlation() const {
    if (counts.size() != 2 || counts[0].size() != 2 || n == 0)
        throw std::logic_error("empirical correlation needs dichotomic counts");
    const double same = static_cast<double>(counts[0][0] + counts[1][1]);
    const double diff = static_cast<double>(counts[0][1] + counts[1][0]);
    return (same - diff) / static_cast<double>(n);
}

SampleCounts sample_outcomes(const TwoQubitState& state, const Povm& alice, const Povm& bob,
                             std::uint64_t n, std::uint64_t seed) {
    require(n >= 1, "need at least one sample");
    const std::size_t na = alice.n_outcomes();
    const std::size_t nb = bob.n_outcomes();

    // exact joint distribution, flattened row-major over (alice, bob)
    std::vector<double> cdf(na * nb);
    double acc = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            double prob = expectation(state, alice.effect(i), bob.effect(j));
            if (prob < 0.0) prob = 0.0;  // clip eigenvalue dust
            acc += prob;
            cdf[i * nb + j] = acc;
        }

    SampleCounts out;
    out.counts.assign(na, std::vector<std::uint64_t>(nb, 0));
    out.n = n;

    constexpr std::uint64_t kChunk = 1u << 20;
    const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        CounterRng rng(seed, c);
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double u = rng.next_unit() * acc;
            std::size_t cell = cdf.size() - 1;
            for (std::size_t k = 0; k < cdf.size(); ++k)
                if (u < cdf[k]) {
                    cell = k;
                    break;
                }
            ++out.counts[cell / nb][cell % nb];
        }
    }
    return out;
}

}  // namespace ubell
