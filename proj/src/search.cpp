#include "tinpc/search.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "tinpc/bounds.hpp"
#include "tinpc/bpc.hpp"
#include "tinpc/parallel.hpp"

namespace tinpc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t level_count(const Rational& max_strength, const Rational& granularity) {
  if (max_strength.sign() < 0) throw std::invalid_argument("max strength must be nonnegative");
  if (granularity.sign() <= 0) throw std::invalid_argument("granularity must be positive");
  const Rational steps = max_strength / granularity;
  // floor of a nonnegative rational
  const double approx = steps.to_double();
  auto n = static_cast<std::uint64_t>(approx);
  while (Rational(static_cast<std::int64_t>(n + 1)) <= steps) ++n;
  while (n > 0 && Rational(static_cast<std::int64_t>(n)) > steps) --n;
  return n + 1;
}

Topology random_from(std::mt19937_64& rng, std::size_t k, const Rational& granularity, std::uint64_t levels) {
  std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k));
  for (auto& row : rows)
    for (auto& v : row) v = Rational(static_cast<std::int64_t>(rng() % levels)) * granularity;
  return Topology(std::move(rows));
}

struct StreamResult {
  std::optional<Topology> best;
  Rational best_ratio;
  std::size_t evaluations = 0;
  bool envelope_ok = true;
  bool known_gain_ok = true;
  std::size_t violations = 0;
};

}  // namespace

Topology random_topology(std::size_t k, const Rational& max_strength, const Rational& granularity, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("random_topology needs K >= 1");
  const std::uint64_t levels = level_count(max_strength, granularity);
  std::mt19937_64 rng(seed);
  return random_from(rng, k, granularity, levels);
}

Rational ratio(const Topology& t, std::size_t enumeration_limit) {
  const Rational bpc = solve_bpc_gdof(t, enumeration_limit).value;
  if (bpc.is_zero()) return Rational(1);
  OpcOptions options;
  options.enumeration_limit = enumeration_limit;
  return solve_opc(t, options).value / bpc;
}

SearchReport local_search(std::size_t k, std::size_t budget, const Rational& step, std::uint64_t seed,
                          const SearchOptions& options) {
  if (k == 0) throw std::invalid_argument("local_search needs K >= 1");
  if (budget == 0) throw std::invalid_argument("search budget must be positive");
  if (k > options.enumeration_limit) {
    throw EnumerationLimitError("K = " + std::to_string(k) + " exceeds the enumeration limit of " +
                                std::to_string(options.enumeration_limit));
  }
  if (options.start && options.start->size() != k) throw std::invalid_argument("start topology has the wrong size");
  const std::uint64_t levels = level_count(options.max_strength, step);
  const std::size_t patience = options.patience ? options.patience : 4 * k * k;
  const std::size_t streams = std::max<std::size_t>(1, std::min(options.streams, budget));
  const Envelope envelope = theorem2_envelope(static_cast<std::int64_t>(k));
  const std::optional<Rational> known = known_extremal_gain(k);

  std::vector<StreamResult> results(streams);
  parallel_for(streams, options.threads, [&](std::size_t s) {
    StreamResult& out = results[s];
    const std::size_t share = budget / streams + (s < budget % streams ? 1 : 0);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(s)));

    auto evaluate = [&](const Topology& t) {
      const Rational value = ratio(t, options.enumeration_limit);
      ++out.evaluations;
      const bool env = envelope.admits(value);
      const bool kg = !known || value <= *known;
      if (!env) out.envelope_ok = false;
      if (!kg) out.known_gain_ok = false;
      if (!env || !kg) ++out.violations;
      if (!out.best || value > out.best_ratio) {
        out.best = t;
        out.best_ratio = value;
      }
      return value;
    };

    Topology current = (s == 0 && options.start) ? *options.start : random_from(rng, k, step, levels);
    Rational current_ratio = evaluate(current);
    std::size_t stale = 0;
    while (out.evaluations < share) {
      if (stale >= patience) {
        current = random_from(rng, k, step, levels);
        current_ratio = evaluate(current);
        stale = 0;
        continue;
      }
      const std::size_t i = rng() % k;
      const std::size_t j = rng() % k;
      const bool up = (rng() & 1U) != 0;
      Rational value = current.alpha(i, j) + (up ? step : -step);
      if (value.sign() < 0) value = Rational{};
      if (value > options.max_strength) value = options.max_strength;
      if (value == current.alpha(i, j)) {
        ++stale;
        continue;
      }
      Topology candidate = current.with_entry(i, j, value);
      const Rational candidate_ratio = evaluate(candidate);
      if (candidate_ratio >= current_ratio) {
        stale = candidate_ratio > current_ratio ? 0 : stale + 1;
        current = std::move(candidate);
        current_ratio = candidate_ratio;
      } else {
        ++stale;
      }
    }
  });

  SearchReport report{*results[0].best, results[0].best_ratio, 0, seed, true, true, 0};
  for (const auto& r : results) {
    report.evaluations += r.evaluations;
    report.envelope_ok = report.envelope_ok && r.envelope_ok;
    report.known_gain_ok = report.known_gain_ok && r.known_gain_ok;
    report.violations += r.violations;
    if (r.best_ratio > report.best_ratio) {
      report.best_topology = *r.best;
      report.best_ratio = r.best_ratio;
    }
  }
  return report;
}

std::string to_text(const SearchReport& report) {
  std::ostringstream os;
  const std::size_t k = report.best_topology.size();
  os << "# search report (best ratio is a lower bound on the extremal gain)\n";
  os << "# K = " << k << '\n';
  os << "# seed = " << report.seed << '\n';
  os << "# evaluations = " << report.evaluations << '\n';
  os << "# best_ratio = " << report.best_ratio << '\n';
  os << "# envelope_ok = " << (report.envelope_ok ? "true" : "false") << '\n';
  if (known_extremal_gain(k)) os << "# known_gain_ok = " << (report.known_gain_ok ? "true" : "false") << '\n';
  os << "# violations = " << report.violations << '\n';
  os << report.best_topology.to_text();
  return os.str();
}

}  // namespace tinpc
