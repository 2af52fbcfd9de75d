#include "scan.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "nudirac/spectra.hpp"

namespace nudirac::cli {

namespace {

// Uniform on [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double a = std::log(lo);
  const double b = std::log(hi);
  return std::exp(a + (b - a) * unit(rng));
}

ScanResult evaluate(const ScanDraw& d) {
  ScanResult r;
  r.draw = d;
  try {
    const auto model = MassModel::make(MassKind::SigmoidSaturating, d.m0, d.delta);
    r.e_squared = energy_closed_form(model, d.n).e_squared;
    r.predicate = reality_predicate(model, d.n);
    r.consistent = r.predicate == (r.e_squared > 0.0);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.e_squared = std::nan("");
  }
  return r;
}

}  // namespace

std::vector<ScanDraw> generate_draws(const ScanSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ScanDraw> draws(static_cast<std::size_t>(spec.draws));
  for (auto& d : draws) {
    d.m0 = log_uniform(rng, spec.m0_min, spec.m0_max);
    d.delta = log_uniform(rng, spec.delta_min, spec.delta_max);
    d.n = std::min(spec.n_max, static_cast<int>(unit(rng) * (spec.n_max + 1)));
  }
  return draws;
}

std::vector<ScanResult> evaluate_draws(const std::vector<ScanDraw>& draws, int threads) {
  std::vector<ScanResult> out(draws.size());
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, draws.size()));
  const std::size_t chunk = (draws.size() + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(draws.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = evaluate(draws[i]);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

ScanSummary summarize(const std::vector<ScanResult>& results) {
  ScanSummary s;
  s.draws = results.size();
  for (const auto& r : results) {
    if (!r.error.empty()) {
      ++s.skipped;
      continue;
    }
    ++s.evaluated;
    if (!r.consistent) ++s.mismatches;
    if (r.predicate) ++s.predicate_true;
    if (r.e_squared > 0.0) ++s.positive_e_squared;
  }
  return s;
}

std::vector<DeltaProbeRow> delta_probe_rows(MassKind kind, double m0, int n,
                                            const std::vector<double>& deltas) {
  const auto model = MassModel::make(kind, m0, deltas.front());
  const auto abs_e = delta_limit_probe(model, n, deltas);
  std::vector<DeltaProbeRow> rows;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    rows.push_back({deltas[i], abs_e[i], abs_e[i] * abs_e[i] / deltas[i]});
  }
  return rows;
}

}  // namespace nudirac::cli
