#include <benchmark/benchmark.h>

#include "ptpu/contour.hpp"
#include "ptpu/fock.hpp"
#include "ptpu/kernel.hpp"
#include "ptpu/pu_transform.hpp"

namespace {

using ptpu::Complex;

const ptpu::TwoOscillatorParams kPair{1.0, -1.0, 2.0, 1.0, 1.0};
const ptpu::SingleOscillatorParams kOsc{1.0, Complex(1.0, -0.5), 1.0};

void EulerLagrangeOfPuLagrangian(benchmark::State& state) {
  ptpu::DerivativePolynomial lag = ptpu::pu_lagrangian(kPair);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::euler_lagrange(lag));
  }
}
BENCHMARK(EulerLagrangeOfPuLagrangian);

void BiorthoInner(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::biortho_inner(kOsc, 3, 3, 64));
  }
}
BENCHMARK(BiorthoInner);

void SpectralKernelPoint(benchmark::State& state) {
  ptpu::KernelRequest req{kOsc, 0.7, 60, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::spectral_kernel(req, 0.7, -0.3));
  }
}
BENCHMARK(SpectralKernelPoint);

void ClosedFormKernelPoint(benchmark::State& state) {
  ptpu::KernelRequest req{kOsc, 0.7, 60, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::closed_form_kernel(req, 0.7, -0.3));
  }
}
BENCHMARK(ClosedFormKernelPoint);

void BuildHamiltonians(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::build_hamiltonians(kPair, 4));
  }
}
BENCHMARK(BuildHamiltonians);

void ClassicalIntegration(benchmark::State& state) {
  ptpu::ClassicalState init;
  init.jets = {Complex(1.0), Complex(0.0), Complex(0.0), Complex(0.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptpu::integrate_classical(kPair, init, 1.0, 1e-3));
  }
}
BENCHMARK(ClassicalIntegration);

}  // namespace

BENCHMARK_MAIN();
