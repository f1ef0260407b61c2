// Serial reference vs OpenMP kernels. Set OSG_THREADS to cap the thread count.

#include <benchmark/benchmark.h>

#include "osg/kernels.hpp"
#include "osg/momentum.hpp"
#include "osg/open_dynamics.hpp"
#include "osg/parallel.hpp"
#include "osg/position.hpp"

namespace {

struct Setup {
  osg::AtomSpecies species = osg::AtomSpecies::strontium87();
  osg::DriveField field;
  osg::PacketParams packet;
  osg::MomentumState state;

  explicit Setup(int stride) {
    field = osg::resonant_drive(species, 2.0 * osg::kPi * 1e6);
    const double hk = osg::photon_momentum(field);
    packet = {0.0, 20.0 * hk, {0.8, 0.0}, {0.6, 0.0}};
    state = osg::gaussian_initial(packet, osg::default_momentum_grid(packet, field, stride));
  }
};

void BM_EvolvePairs(benchmark::State& st, osg::Backend backend) {
  Setup s(static_cast<int>(st.range(0)));
  const double t = osg::oscillation_period(s.field);
  for (auto _ : st) {
    auto out = osg::evolve_state(s.state, t, s.species, s.field, backend);
    benchmark::DoNotOptimize(out.phi_g.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.state.grid.mode_count()));
}

void BM_PositionTransform(benchmark::State& st, osg::Backend backend) {
  Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto f = osg::numeric_position_reconstruct(s.state, backend);
    benchmark::DoNotOptimize(f.psi_g.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.state.grid.count));
}

void BM_BlochIntegration(benchmark::State& st, osg::Backend backend) {
  Setup s(static_cast<int>(st.range(0)));
  const auto initial = osg::bloch_field_from_state(s.state, 0.1 * s.field.rabi_frequency);
  osg::BlochOptions opts;
  opts.backend = backend;
  opts.validate_step = false;
  const double t = osg::oscillation_period(s.field);
  for (auto _ : st) {
    auto out = osg::integrate_bloch(initial, t, s.species, s.field, opts);
    benchmark::DoNotOptimize(out.modes.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(initial.modes.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvolvePairs, serial, osg::Backend::serial)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(BM_EvolvePairs, omp, osg::Backend::parallel)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(BM_PositionTransform, serial, osg::Backend::serial)->Arg(4);
BENCHMARK_CAPTURE(BM_PositionTransform, omp, osg::Backend::parallel)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(BM_BlochIntegration, serial, osg::Backend::serial)->Arg(4);
BENCHMARK_CAPTURE(BM_BlochIntegration, omp, osg::Backend::parallel)->Arg(4);

int main(int argc, char** argv) {
  osg::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
