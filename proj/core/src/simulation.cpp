#include "tbechart/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "tbechart/carl.hpp"
#include "tbechart/estimation.hpp"

namespace tbechart {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TBECHART_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Stream domain for a study block, derived from the block's identity so
// different (eta0, beta0, m) blocks never share replicate streams.
std::uint64_t block_key(const StudyConfig& cfg, std::size_t m,
                        const WeibullParams& params) {
  std::uint64_t key = RandomStream::derive_key(cfg.seed, std::bit_cast<std::uint64_t>(params.eta));
  key = RandomStream::derive_key(key, std::bit_cast<std::uint64_t>(params.beta));
  return RandomStream::derive_key(key, static_cast<std::uint64_t>(m));
}

double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

std::size_t nearest_rank(double level, std::size_t n) {
  // Guard against levels like 0.05 whose binary value sits a hair above
  // the rational they denote.
  double k = std::ceil(level * static_cast<double>(n) - 1e-6);
  if (k < 1.0) k = 1.0;
  if (k > static_cast<double>(n)) k = static_cast<double>(n);
  return static_cast<std::size_t>(k);
}

}  // namespace

void validate(const StudyConfig& cfg) {
  if (!(cfg.alpha0 > 0.0 && cfg.alpha0 < 1.0))
    throw std::invalid_argument("StudyConfig: alpha0 must lie in (0, 1)");
  if (cfg.replications < 1)
    throw std::invalid_argument("StudyConfig: replications must be >= 1");
  if (!(cfg.target_arl > 1.0))
    throw std::invalid_argument("StudyConfig: target_arl must be > 1");
  if (!(cfg.shift.delta1 > 0.0) || !(cfg.shift.delta2 > 0.0))
    throw std::invalid_argument("StudyConfig: shifts must be positive");
  double prev = 0.0;
  for (double level : cfg.percentile_levels) {
    if (!(level > 0.0 && level < 1.0) || level <= prev)
      throw std::invalid_argument(
          "StudyConfig: percentile levels must be strictly increasing in (0, 1)");
    prev = level;
  }
  for (const auto& [eta0, beta0] : cfg.param_grid) {
    if (!(eta0 > 0.0) || !(beta0 > 0.0))
      throw std::invalid_argument("StudyConfig: parameters must be positive");
  }
  for (std::size_t m : cfg.m_list) {
    if (m < 1) throw std::invalid_argument("StudyConfig: m values must be >= 1");
  }
}

CarlSummary simulate_carl_distribution(const StudyConfig& cfg, std::size_t m,
                                       const WeibullParams& params) {
  validate(cfg);
  if (m < 1) throw std::invalid_argument("simulate_carl_distribution: m must be >= 1");

  const std::size_t reps = cfg.replications;
  const std::uint64_t key = block_key(cfg, m, params);
  const CpsCurve curve(cfg.alpha0, params.eta, cfg.shift);

  std::vector<double> carls(reps);
  auto worker = [&](std::size_t begin, std::size_t end) {
    std::vector<double> sample(m);
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream stream = RandomStream::substream(key, r);
      for (std::size_t i = 0; i < m; ++i) sample[i] = weibull_sample(params, stream);
      const PhaseIEstimate est = mle_scale(sample, params.eta, params.beta);
      carls[r] = curve.carl(*est.pivot);
    }
  };

  const unsigned threads = std::min<unsigned>(
      resolve_threads(cfg.threads), static_cast<unsigned>(std::max<std::size_t>(reps, 1)));
  if (threads <= 1) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = static_cast<std::size_t>(t) * chunk;
      const std::size_t end = std::min(begin + chunk, reps);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  CarlSummary out;
  out.carl_sup = curve.carl_supremum();
  const double n = static_cast<double>(reps);
  out.acarl = neumaier_sum(carls) / n;

  std::vector<double> centered(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const double d = carls[r] - out.acarl;
    centered[r] = d * d;
  }
  out.sdcarl = std::sqrt(neumaier_sum(centered) / n);

  std::size_t below = 0;
  for (double c : carls)
    if (c < cfg.target_arl) ++below;
  out.epc = static_cast<double>(below) / n;

  std::sort(carls.begin(), carls.end());
  for (double level : cfg.percentile_levels)
    out.percentiles[level] = carls[nearest_rank(level, reps) - 1];
  return out;
}

std::vector<StudyRow> run_table1(const StudyConfig& cfg) {
  validate(cfg);
  std::vector<StudyRow> rows;
  rows.reserve(cfg.param_grid.size() * cfg.m_list.size());
  for (const auto& [eta0, beta0] : cfg.param_grid) {
    const WeibullParams params(eta0, beta0);
    for (std::size_t m : cfg.m_list)
      rows.push_back({eta0, beta0, m, simulate_carl_distribution(cfg, m, params)});
  }
  return rows;
}

RunLengthStats simulate_run_lengths(const ChartDesign& d, const ShiftSpec& s,
                                    std::size_t reps, RandomStream& stream) {
  if (reps < 1) throw std::invalid_argument("simulate_run_lengths: reps must be >= 1");
  const WeibullParams shifted(s.delta2 * d.eta0, s.delta1 * d.scale_used);

  std::vector<double> lengths;
  lengths.reserve(reps);
  std::size_t capped = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    std::size_t count = 0;
    bool signaled = false;
    while (count < kRunLengthCap) {
      ++count;
      const double x = weibull_sample(shifted, stream);
      if (x < d.lcl || x > d.ucl) {  // boundary equality stays in control
        signaled = true;
        break;
      }
    }
    if (signaled)
      lengths.push_back(static_cast<double>(count));
    else
      ++capped;
  }

  RunLengthStats out;
  out.replications = reps;
  out.capped = capped;
  if (!lengths.empty()) {
    const double n = static_cast<double>(lengths.size());
    out.mean = neumaier_sum(lengths) / n;
    double ssq = 0.0;
    for (double len : lengths) ssq += (len - out.mean) * (len - out.mean);
    out.sd = std::sqrt(ssq / n);
  }
  return out;
}

}  // namespace tbechart
