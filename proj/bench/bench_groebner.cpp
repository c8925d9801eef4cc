#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "khova/groebner.hpp"

using namespace khova;

namespace {

Ideal make(const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
  Ring r(vars);
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, r));
  return Ideal(r, ps);
}

Ideal cyclic4() {
  return make({"a", "b", "c", "d"},
              {"a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"});
}

Ideal katsura4() {
  return make({"u0", "u1", "u2", "u3", "u4"},
              {"u0 + 2*u1 + 2*u2 + 2*u3 + 2*u4 - 1",
               "u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 + 2*u4^2 - u0",
               "2*u0*u1 + 2*u1*u2 + 2*u2*u3 + 2*u3*u4 - u1",
               "u1^2 + 2*u0*u2 + 2*u1*u3 + 2*u2*u4 - u2",
               "2*u1*u2 + 2*u0*u3 + 2*u1*u4 - u3"});
}

Ideal twisted_quartic() {
  return make({"x", "y", "z", "w"}, {"x*z - y^2", "y*w - z^2", "x*w - y*z", "x^3*w - y*z^3 + x*y*z*w"});
}

template <Ideal (*Make)()>
void run(benchmark::State& state) {
  GroebnerOptions opt;
  opt.strategy = state.range(0) ? Strategy::Parallel : Strategy::Serial;
  opt.caps.max_pairs = 100000;
  auto ideal = Make();
  std::size_t size = 0;
  for (auto _ : state) {
    auto gb = buchberger(ideal, MonomialOrder::degrevlex(), opt);
    size = gb.basis().size();
    benchmark::DoNotOptimize(size);
  }
  state.counters["basis"] = static_cast<double>(size);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(run<cyclic4>)->Name("buchberger/cyclic4")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(run<katsura4>)->Name("buchberger/katsura4")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(run<twisted_quartic>)->Name("buchberger/quartic")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
