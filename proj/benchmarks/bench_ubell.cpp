#include <benchmark/benchmark.h>

#include "ubell/bell.hpp"
#include "ubell/observables.hpp"
#include "ubell/rng.hpp"
#include "ubell/states.hpp"

using namespace ubell;

namespace {

const Vec3 kX{1, 0, 0};
const Vec3 kZ{0, 0, 1};

HermitianOperator random_hermitian4(std::uint64_t seed) {
    CounterRng rng(seed);
    SquareOp m(4);
    for (int i = 0; i < 4; ++i) {
        m.at(i, i) = rng.next_normal();
        for (int j = i + 1; j < 4; ++j) {
            const Complex v(rng.next_normal(), rng.next_normal());
            m.at(i, j) = v;
            m.at(j, i) = std::conj(v);
        }
    }
    return HermitianOperator(m);
}

void BM_EigvalsJacobi4(benchmark::State& state) {
    const auto h = random_hermitian4(1);
    for (auto _ : state) benchmark::DoNotOptimize(eigvals_hermitian(h));
}
BENCHMARK(BM_EigvalsJacobi4);

void BM_TensorProduct(benchmark::State& state) {
    const auto a = pauli(PauliAxis::X);
    const auto b = pauli(PauliAxis::Z);
    for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_TensorProduct);

void BM_BuildJointPovm(benchmark::State& state) {
    const UnsharpSpin u1(0.6, kX);
    const UnsharpSpin u2(0.6, kZ);
    for (auto _ : state) benchmark::DoNotOptimize(build_joint_povm(u1, u2));
}
BENCHMARK(BM_BuildJointPovm);

void BM_ChshQuantum(benchmark::State& state) {
    const auto s = singlet();
    const double c = 1.0 / std::sqrt(2.0);
    const ChshSetting setting(kZ, kX, {-c, 0, -c}, {-c, 0, c});
    for (auto _ : state) benchmark::DoNotOptimize(chsh_quantum(s, setting, 1.0));
}
BENCHMARK(BM_ChshQuantum);

void BM_HorodeckiOracle(benchmark::State& state) {
    const auto w = werner(0.7);
    for (auto _ : state) benchmark::DoNotOptimize(horodecki_oracle(w));
}
BENCHMARK(BM_HorodeckiOracle);

void BM_TsirelsonOptimize(benchmark::State& state) {
    const auto s = singlet();
    for (auto _ : state) benchmark::DoNotOptimize(tsirelson_optimize(s, 42));
}
BENCHMARK(BM_TsirelsonOptimize);

void BM_SampleOutcomes(benchmark::State& state) {
    const auto s = singlet();
    const UnsharpSpin u(0.8, kZ);
    const Povm alice({unsharp_effect(u, 1), unsharp_effect(u, -1)});
    const SharpSpin b(kX);
    const Povm bob({sharp_projector(b, 1), sharp_projector(b, -1)});
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_outcomes(s, alice, bob, n, 7));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SampleOutcomes)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_DerivationChain(benchmark::State& state) {
    const auto s = singlet();
    const double lam = 1.0 / std::sqrt(2.0);
    const auto joint = build_joint_povm(UnsharpSpin(lam, kX), UnsharpSpin(lam, kZ));
    const auto jb = joint_behavior_from_state(s, joint, {SharpSpin(kZ), SharpSpin(kX)});
    for (auto _ : state) benchmark::DoNotOptimize(verify_derivation_chain(jb));
}
BENCHMARK(BM_DerivationChain);

}  // namespace

BENCHMARK_MAIN();
