#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/test_rand.hpp"
#include "ubell/bell.hpp"
#include "ubell/observables.hpp"

using namespace ubell;
using namespace ubell::testing;

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2 = 1.0 / kSqrt2;
const double kTsirelson = 2.0 * kSqrt2;
const Vec3 kX{1, 0, 0};
const Vec3 kZ{0, 0, 1};

// singlet-optimal settings: a = z, a' = x, b and b' on the diagonals
ChshSetting optimal_singlet_setting() {
    return ChshSetting(kZ, kX, {-kInvSqrt2, 0, -kInvSqrt2}, {-kInvSqrt2, 0, kInvSqrt2});
}

Povm spin_povm(const UnsharpSpin& u) {
    return Povm({unsharp_effect(u, 1), unsharp_effect(u, -1)});
}

JointBehavior random_quantum_joint_behavior(CounterRng& rng) {
    const auto rho = random_state(rng);
    const Vec3 a1 = random_unit_vec(rng);
    const Vec3 a2 = random_unit_vec(rng);
    const double lam = rng.next_in(1e-3, 1.0) * max_equal_lambda(a1, a2);
    const auto joint = build_joint_povm(UnsharpSpin(lam, a1), UnsharpSpin(lam, a2));
    return joint_behavior_from_state(rho, joint,
                                     {SharpSpin(random_unit_vec(rng)), SharpSpin(random_unit_vec(rng))});
}
}  // namespace

TEST_CASE("chsh from correlations") {
    SUBCASE("pr-box correlations reach the algebraic maximum") {
        CHECK(chsh_from_correlations(1, 1, 1, -1).value == doctest::Approx(4.0));
    }
    SUBCASE("singlet-optimal correlations reach the quantum maximum") {
        const auto r =
            chsh_from_correlations(-kInvSqrt2, -kInvSqrt2, -kInvSqrt2, kInvSqrt2);
        CHECK(r.value == doctest::Approx(kTsirelson).epsilon(1e-14));
    }
    SUBCASE("zero correlations") {
        CHECK(chsh_from_correlations(0, 0, 0, 0).value == 0.0);
    }
    SUBCASE("report invariant") {
        CounterRng rng(41);
        for (int i = 0; i < 100; ++i) {
            const double e1 = rng.next_in(-1, 1), e2 = rng.next_in(-1, 1);
            const double e3 = rng.next_in(-1, 1), e4 = rng.next_in(-1, 1);
            const auto r = chsh_from_correlations(e1, e2, e3, e4);
            CHECK(r.value == doctest::Approx(std::abs(e1 + e2) + std::abs(e3 - e4)).epsilon(1e-15));
            CHECK(r.value >= 0.0);
            CHECK(r.value <= 4.0);
        }
    }
    SUBCASE("rejects out-of-range correlations") {
        CHECK_THROWS(chsh_from_correlations(1.1, 0, 0, 0));
        CHECK_NOTHROW(chsh_from_correlations(1.0 + 1e-10, 0, 0, 0));
    }
}

TEST_CASE("chsh on quantum states") {
    const auto s = singlet();
    const auto setting = optimal_singlet_setting();
    SUBCASE("sharp singlet value is 2 sqrt 2") {
        CHECK(std::abs(chsh_quantum(s, setting, 1.0).value - kTsirelson) < 1e-9);
    }
    SUBCASE("lambda 1/sqrt2 brings the value down to 2") {
        CHECK(std::abs(chsh_quantum(s, setting, kInvSqrt2).value - 2.0) < 1e-9);
    }
    SUBCASE("maximally mixed state gives zero") {
        CHECK(chsh_quantum(maximally_mixed(), setting, 1.0).value ==
              doctest::Approx(0.0).epsilon(1e-13));
    }
    SUBCASE("value factorizes as lambda times the sharp value") {
        CounterRng rng(42);
        for (int i = 0; i < 200; ++i) {
            const auto rho = random_state(rng);
            const ChshSetting st(random_unit_vec(rng), random_unit_vec(rng), random_unit_vec(rng),
                                 random_unit_vec(rng));
            const double lam = rng.next_in(1e-3, 1.0);
            const double sharp = chsh_quantum(rho, st, 1.0).value;
            const double unsharp = chsh_quantum(rho, st, lam).value;
            CHECK(std::abs(unsharp - lam * sharp) < 1e-12);
        }
    }
    SUBCASE("sharp quantum values respect the tsirelson bound") {
        CounterRng rng(43);
        for (int i = 0; i < 100; ++i) {
            const auto rho = random_state(rng);
            const ChshSetting st(random_unit_vec(rng), random_unit_vec(rng), random_unit_vec(rng),
                                 random_unit_vec(rng));
            CHECK(chsh_quantum(rho, st, 1.0).value <= kTsirelson + 1e-9);
        }
    }
}

TEST_CASE("derivation chain on joint behaviors") {
    SUBCASE("quantum joint behaviors pass every step") {
        CounterRng rng(44);
        for (int i = 0; i < 100; ++i) {
            const auto chain = verify_derivation_chain(random_quantum_joint_behavior(rng));
            CHECK(chain.all_passed());
            CHECK(chain.lhs <= 2.0 + 1e-10);
        }
    }
    SUBCASE("uniform joint behavior passes with zero correlations") {
        std::array<double, 16> q{};
        q.fill(0.125);
        const auto chain = verify_derivation_chain(JointBehavior(q));
        CHECK(chain.all_passed());
        CHECK(chain.lhs == doctest::Approx(0.0));
        CHECK(chain.p_same[0] == doctest::Approx(0.5));
    }
    SUBCASE("hand-built signalling table trips the no-signalling step") {
        // Alice's pair distribution depends on Bob's setting: all mass on
        // j=k for y=0, all mass on j=-k for y=1.
        std::array<double, 16> q{};
        q[JointBehavior::index(0, 0, 0, 0)] = 0.5;
        q[JointBehavior::index(0, 1, 1, 1)] = 0.5;
        q[JointBehavior::index(1, 0, 1, 0)] = 0.5;
        q[JointBehavior::index(1, 1, 0, 1)] = 0.5;
        const auto chain = verify_derivation_chain(JointBehavior(q));
        CHECK_FALSE(chain.no_signalling_ok);
        CHECK(chain.no_signalling_gap == doctest::Approx(1.0));
        CHECK_FALSE(chain.all_passed());
    }
    SUBCASE("the correlation identity is algebraic and holds on any table") {
        CounterRng rng(45);
        for (int i = 0; i < 50; ++i) {
            // random normalized joint table, signalling or not
            std::array<double, 16> q{};
            for (int y = 0; y < 2; ++y) {
                double total = 0.0;
                for (int c = 0; c < 8; ++c) {
                    const auto idx = static_cast<std::size_t>(y * 8 + c);
                    q[idx] = rng.next_unit();
                    total += q[idx];
                }
                for (int c = 0; c < 8; ++c) q[static_cast<std::size_t>(y * 8 + c)] /= total;
            }
            const auto chain = verify_derivation_chain(JointBehavior(q));
            CHECK(chain.decomposition_ok);
            CHECK(chain.nonnegativity_ok);
            CHECK(chain.identity_ok);
        }
    }
}

TEST_CASE("lhv bound by enumeration") {
    CounterRng rng(46);
    const auto mixed = maximally_mixed();
    for (int i = 0; i < 100; ++i) {
        const ChshSetting st(random_unit_vec(rng), random_unit_vec(rng), random_unit_vec(rng),
                             random_unit_vec(rng));
        CHECK(lhv_max(st, mixed) == 2.0);
    }
}

TEST_CASE("horodecki oracle") {
    SUBCASE("singlet") {
        CHECK(horodecki_oracle(singlet()) == doctest::Approx(kTsirelson).epsilon(1e-12));
    }
    SUBCASE("maximally mixed") {
        CHECK(horodecki_oracle(maximally_mixed()) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("product state reaches exactly the classical bound") {
        const auto p0 = sharp_projector(SharpSpin(kZ), 1);
        CHECK(horodecki_oracle(TwoQubitState(tensor(p0, p0))) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("werner family scales linearly") {
        for (double p : {0.2, 0.5, 0.9})
            CHECK(horodecki_oracle(werner(p)) == doctest::Approx(kTsirelson * p).epsilon(1e-11));
    }
}

TEST_CASE("tsirelson optimization") {
    SUBCASE("singlet recovers 2 sqrt 2") {
        const auto res = tsirelson_optimize(singlet(), 1);
        CHECK(std::abs(res.best.value - kTsirelson) < 1e-6);
        CHECK(res.converged_starts > 0);
    }
    SUBCASE("product state stays at 2") {
        const auto p0 = sharp_projector(SharpSpin(kZ), 1);
        const auto res = tsirelson_optimize(TwoQubitState(tensor(p0, p0)), 2);
        CHECK(std::abs(res.best.value - 2.0) < 1e-6);
    }
    SUBCASE("werner p=0.5 reaches sqrt 2") {
        const auto res = tsirelson_optimize(werner(0.5), 3);
        CHECK(std::abs(res.best.value - kSqrt2) < 1e-6);
    }
    SUBCASE("optimizer is tight against the oracle on random states") {
        CounterRng rng(47);
        for (int i = 0; i < 25; ++i) {
            const auto rho = random_state(rng);
            const double opt = tsirelson_optimize(rho, 1000 + static_cast<std::uint64_t>(i)).best.value;
            const double oracle = horodecki_oracle(rho);
            CHECK(opt <= oracle + 1e-6);
            CHECK(opt >= oracle - 1e-4);
        }
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto a = tsirelson_optimize(werner(0.8), 9);
        const auto b = tsirelson_optimize(werner(0.8), 9);
        CHECK(a.best.value == b.best.value);
        CHECK(a.setting.a.x == b.setting.a.x);
    }
}
