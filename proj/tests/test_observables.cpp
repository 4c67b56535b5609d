#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/test_rand.hpp"
#include "ubell/observables.hpp"

using namespace ubell;
using namespace ubell::testing;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Vec3 kX{1, 0, 0};
const Vec3 kZ{0, 0, 1};
}  // namespace

TEST_CASE("sharp projectors") {
    const SharpSpin z(kZ);
    const auto plus = sharp_projector(z, 1);
    const auto minus = sharp_projector(z, -1);

    CHECK(plus.op().at(0, 0) == Complex(1.0, 0.0));
    CHECK(plus.op().at(1, 1) == Complex(0.0, 0.0));

    // idempotent, orthogonal, complete
    CHECK((plus.op() * plus.op()).max_abs_diff(plus.op()) < 1e-15);
    CHECK((plus.op() * minus.op()).max_abs_diff(SquareOp(2)) < 1e-15);
    CHECK((plus + minus).op().max_abs_diff(SquareOp::identity(2)) < 1e-15);

    CounterRng rng(21);
    for (int i = 0; i < 50; ++i) {
        const SharpSpin s(random_unit_vec(rng));
        const auto p = sharp_projector(s, 1);
        const auto m = sharp_projector(s, -1);
        CHECK((p.op() * p.op()).max_abs_diff(p.op()) < 1e-14);
        CHECK((p.op() * m.op()).max_abs_diff(SquareOp(2)) < 1e-14);
        CHECK((p + m).op().max_abs_diff(SquareOp::identity(2)) < 1e-15);
    }

    CHECK_THROWS(SharpSpin({1, 1, 0}));
    CHECK_THROWS(sharp_projector(z, 2));
}

TEST_CASE("unsharp effects") {
    SUBCASE("lambda 1 reduces to the sharp projector") {
        CounterRng rng(22);
        for (int i = 0; i < 20; ++i) {
            const Vec3 d = random_unit_vec(rng);
            for (int sign : {1, -1})
                CHECK(unsharp_effect(UnsharpSpin(1.0, d), sign)
                          .op()
                          .max_abs_diff(sharp_projector(SharpSpin(d), sign).op()) < 1e-15);
        }
    }
    SUBCASE("lambda 0.6 along z is diag(0.8, 0.2)") {
        const auto e = unsharp_effect(UnsharpSpin(0.6, kZ), 1);
        CHECK(std::abs(e.op().at(0, 0) - Complex(0.8, 0.0)) < 1e-15);
        CHECK(std::abs(e.op().at(1, 1) - Complex(0.2, 0.0)) < 1e-15);
    }
    SUBCASE("the two outcomes always sum to identity") {
        CounterRng rng(23);
        for (int i = 0; i < 100; ++i) {
            const UnsharpSpin u = random_unsharp(rng);
            const auto sum = unsharp_effect(u, 1) + unsharp_effect(u, -1);
            CHECK(sum.op().max_abs_diff(SquareOp::identity(2)) == 0.0);
        }
    }
    SUBCASE("eigenvalues are (1 +/- lambda)/2") {
        const auto vals = eigvals_hermitian(unsharp_effect(UnsharpSpin(0.6, kX), 1));
        CHECK(vals[0] == doctest::Approx(0.2).epsilon(1e-13));
        CHECK(vals[1] == doctest::Approx(0.8).epsilon(1e-13));
    }
    CHECK_THROWS(UnsharpSpin(0.0, kZ));
    CHECK_THROWS(UnsharpSpin(1.5, kZ));
}

TEST_CASE("spectral decomposition") {
    SUBCASE("sharp limit") {
        const auto parts = spectral_decompose(UnsharpSpin(1.0, kZ));
        CHECK(parts.reality == 1.0);
        CHECK(parts.unsharpness == 0.0);
    }
    SUBCASE("coefficients at lambda 0.5") {
        const auto parts = spectral_decompose(UnsharpSpin(0.5, kX));
        CHECK(parts.reality == doctest::Approx(0.75));
        CHECK(parts.unsharpness == doctest::Approx(0.25));
        CHECK(parts.reality + parts.unsharpness == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("recomposition reproduces the effect") {
        CounterRng rng(24);
        for (int i = 0; i < 100; ++i) {
            const UnsharpSpin u = random_unsharp(rng);
            const auto parts = spectral_decompose(u);
            const auto recomposed = parts.reality * parts.p_plus + parts.unsharpness * parts.p_minus;
            CHECK(recomposed.op().max_abs_diff(unsharp_effect(u, 1).op()) < 1e-12);
        }
    }
}

TEST_CASE("coexistence condition") {
    SUBCASE("boundary: lambda 1/sqrt2, orthogonal directions") {
        const auto r = coexistence_check(UnsharpSpin(kInvSqrt2, kX), UnsharpSpin(kInvSqrt2, kZ));
        CHECK(r.coexistent);
        CHECK(std::abs(r.lhs - 2.0) < 1e-12);
    }
    SUBCASE("parallel directions coexist at any lambda") {
        for (double lam : {0.1, 0.5, 0.77, 1.0}) {
            const auto r = coexistence_check(UnsharpSpin(lam, kZ), UnsharpSpin(lam, kZ));
            CHECK(r.coexistent);
            CHECK(r.lhs == doctest::Approx(2.0 * lam).epsilon(1e-14));
        }
    }
    SUBCASE("sharp orthogonal spins do not coexist") {
        const auto r = coexistence_check(UnsharpSpin(1.0, kX), UnsharpSpin(1.0, kZ));
        CHECK_FALSE(r.coexistent);
        CHECK(r.lhs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("symmetric in its arguments") {
        CounterRng rng(25);
        for (int i = 0; i < 100; ++i) {
            const UnsharpSpin u1 = random_unsharp(rng);
            const UnsharpSpin u2 = random_unsharp(rng);
            const auto r12 = coexistence_check(u1, u2);
            const auto r21 = coexistence_check(u2, u1);
            CHECK(r12.coexistent == r21.coexistent);
            CHECK(r12.lhs == doctest::Approx(r21.lhs).epsilon(1e-15));
        }
    }
}

TEST_CASE("max equal lambda") {
    SUBCASE("orthogonal pair") {
        CHECK(std::abs(max_equal_lambda(kX, kZ) - kInvSqrt2) < 1e-12);
    }
    SUBCASE("parallel and antiparallel pairs cap at 1") {
        CHECK(max_equal_lambda(kZ, kZ) == 1.0);
        CHECK(max_equal_lambda(kZ, {0, 0, -1}) == 1.0);
    }
    SUBCASE("60 degree pair") {
        const Vec3 tilted{std::sin(3.14159265358979323846 / 3.0), 0.0,
                          std::cos(3.14159265358979323846 / 3.0)};
        // |a1+a2| = 2cos30, |a1-a2| = 2sin30, so the bound is 2/(sqrt3+1)
        CHECK(max_equal_lambda(kZ, tilted) ==
              doctest::Approx(2.0 / (std::sqrt(3.0) + 1.0)).epsilon(1e-12));
        CHECK(max_equal_lambda(kZ, tilted) == doctest::Approx(0.7320508075688772).epsilon(1e-12));
    }
    SUBCASE("product with the bracket equals 2 below the cap") {
        CounterRng rng(26);
        for (int i = 0; i < 100; ++i) {
            const Vec3 a1 = random_unit_vec(rng);
            const Vec3 a2 = random_unit_vec(rng);
            const double lm = max_equal_lambda(a1, a2);
            const double bracket = (a1 + a2).norm() + (a1 - a2).norm();
            if (lm < 1.0) CHECK(lm * bracket == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    CHECK_THROWS(max_equal_lambda({1, 1, 0}, kZ));
}

TEST_CASE("povm validation") {
    const SharpSpin z(kZ);
    CHECK_NOTHROW(Povm({sharp_projector(z, 1), sharp_projector(z, -1)}));
    // effects that do not sum to identity
    CHECK_THROWS(Povm({sharp_projector(z, 1), sharp_projector(z, 1)}));
    // negative effect
    SquareOp neg(2);
    neg.at(0, 0) = -0.5;
    neg.at(1, 1) = 1.0;
    SquareOp rest(2);
    rest.at(0, 0) = 1.5;
    CHECK_THROWS(Povm({HermitianOperator(neg), HermitianOperator(rest)}));
}

TEST_CASE("joint povm construction") {
    SUBCASE("orthogonal boundary case has valid marginals") {
        const UnsharpSpin u1(kInvSqrt2, kX);
        const UnsharpSpin u2(kInvSqrt2, kZ);
        const auto joint = build_joint_povm(u1, u2);
        for (int j : {1, -1}) {
            const auto marginal = joint.effect(j, 1) + joint.effect(j, -1);
            const auto expect = unsharp_effect(UnsharpSpin(kInvSqrt2, j == 1 ? kX : -kX), 1);
            CHECK(marginal.op().max_abs_diff(expect.op()) < 1e-12);
        }
        for (int k : {1, -1}) {
            const auto marginal = joint.effect(1, k) + joint.effect(-1, k);
            const auto expect = unsharp_effect(UnsharpSpin(kInvSqrt2, k == 1 ? kZ : -kZ), 1);
            CHECK(marginal.op().max_abs_diff(expect.op()) < 1e-12);
        }
        for (int j : {1, -1})
            for (int k : {1, -1}) CHECK(is_psd(joint.effect(j, k)));
    }
    SUBCASE("identical sharp observables measured jointly") {
        const auto joint = build_joint_povm(UnsharpSpin(1.0, kZ), UnsharpSpin(1.0, kZ));
        CHECK(joint.effect(1, 1).op().max_abs_diff(sharp_projector(SharpSpin(kZ), 1).op()) < 1e-14);
        CHECK(joint.effect(-1, -1).op().max_abs_diff(sharp_projector(SharpSpin(kZ), -1).op()) <
              1e-14);
        CHECK(joint.effect(1, -1).op().max_abs_diff(SquareOp(2)) < 1e-14);
        CHECK(joint.effect(-1, 1).op().max_abs_diff(SquareOp(2)) < 1e-14);
    }
    SUBCASE("completeness for random coexistent pairs") {
        CounterRng rng(27);
        for (int i = 0; i < 200; ++i) {
            const auto [u1, u2] = random_coexistent_pair(rng);
            const auto joint = build_joint_povm(u1, u2);
            SquareOp sum(2);
            for (int j : {1, -1})
                for (int k : {1, -1}) sum = sum + joint.effect(j, k).op();
            CHECK(sum.max_abs_diff(SquareOp::identity(2)) < 1e-12);

            for (int j : {1, -1}) {
                const auto marginal = joint.effect(j, 1) + joint.effect(j, -1);
                const auto expect = unsharp_effect(
                    UnsharpSpin(u1.lam, j == 1 ? u1.direction : -u1.direction), 1);
                CHECK(marginal.op().max_abs_diff(expect.op()) < 1e-12);
            }
            for (int k : {1, -1}) {
                const auto marginal = joint.effect(1, k) + joint.effect(-1, k);
                const auto expect = unsharp_effect(
                    UnsharpSpin(u2.lam, k == 1 ? u2.direction : -u2.direction), 1);
                CHECK(marginal.op().max_abs_diff(expect.op()) < 1e-12);
            }
        }
    }
    SUBCASE("rejects non-coexistent inputs") {
        CHECK_THROWS_WITH(build_joint_povm(UnsharpSpin(1.0, kX), UnsharpSpin(1.0, kZ)),
                          doctest::Contains("coexistence"));
    }
    SUBCASE("gamma midpoint is symmetric under swapping") {
        CounterRng rng(28);
        for (int i = 0; i < 50; ++i) {
            const auto [u1, u2] = random_coexistent_pair(rng);
            CHECK(build_joint_povm(u1, u2).gamma() ==
                  doctest::Approx(build_joint_povm(u2, u1).gamma()).epsilon(1e-14));
        }
    }
}

TEST_CASE("infeasibility of every gamma outside coexistence") {
    // When the coexistence condition fails, no gamma on a fine grid gives
    // four positive effects.
    CounterRng rng(29);
    for (int inst = 0; inst < 100; ++inst) {
        const auto [u1, u2] = random_violating_pair(rng);
        const auto interval = gamma_interval(u1, u2);
        CHECK_FALSE(interval.nonempty());
        bool some_gamma_feasible = false;
        for (int g = 0; g <= 10000; ++g) {
            const double gamma = -1.0 + 2.0 * g / 10000.0;
            bool all_psd = true;
            for (int j : {1, -1})
                for (int k : {1, -1})
                    all_psd = all_psd && is_psd(joint_effect(u1, u2, gamma, j, k));
            if (all_psd) {
                some_gamma_feasible = true;
                break;
            }
        }
        CHECK_FALSE(some_gamma_feasible);
    }
}
