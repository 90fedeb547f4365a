#include "mc.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ci_standard.hpp"
#include "ci_targeted.hpp"
#include "specfun.hpp"

namespace rarecert::mc {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_stream_seed(Seed seed, std::uint64_t replication) {
  return mix64(seed.root + 0x9E3779B97F4A7C15ull * (replication + 1));
}

std::uint64_t RngStream::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double RngStream::next_open01() {
  // 53 random bits centered in their cell: never exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

// Smallest exponent exp() can produce as a normal double, with margin.
constexpr double kLogTiny = -744.0;

double binom_log_pmf(std::uint64_t n, std::uint64_t k, double p) {
  return specfun::log_choose(n, k) + static_cast<double>(k) * std::log(p) +
         static_cast<double>(n - k) * std::log1p(-p);
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng) {
  if (std::isnan(p) || !(p >= 0.0 && p <= 1.0))
    throw domain_error("sample_binomial: p must lie in [0,1]");
  if (n == 0) return 0;
  if (p == 0.0) return 0;
  if (p == 1.0) return n;
  double mean = static_cast<double>(n) * p;
  if (mean > kBinomialMeanBudget)
    throw unsupported_error("sample_binomial: n*p = " + std::to_string(mean) +
                            " exceeds the inversion budget " +
                            std::to_string(kBinomialMeanBudget));

  double u = rng.next_open01();
  std::uint64_t k = 0;
  double pmf;
  double log_pmf0 = static_cast<double>(n) * std::log1p(-p);
  if (log_pmf0 >= kLogTiny) {
    pmf = std::exp(log_pmf0);
  } else {
    // pmf(0) underflows; jump to the first k whose pmf is representable.
    // The skipped cumulative mass is below 1e-300, unreachable by any
    // representable uniform draw.
    std::uint64_t lo = 0, hi = static_cast<std::uint64_t>(mean);
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (binom_log_pmf(n, mid, p) >= kLogTiny) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    k = lo;
    pmf = std::exp(binom_log_pmf(n, k, p));
  }

  double cdf = pmf;
  double comp = 0.0;  // Kahan compensation
  while (u > cdf && k < n) {
    pmf *= (static_cast<double>(n - k) * p) /
           (static_cast<double>(k + 1) * (1.0 - p));
    ++k;
    double y = pmf - comp;
    double t = cdf + y;
    comp = (t - cdf) - y;
    cdf = t;
    if (pmf == 0.0) break;  // remaining tail mass is unrepresentable
  }
  return k;
}

std::uint64_t sample_targeted(std::uint64_t n0, double p, RngStream& rng) {
  if (std::isnan(p) || !(p >= 0.0 && p <= 1.0))
    throw domain_error("sample_targeted: p must lie in (0,1]");
  if (p == 0.0)
    throw domain_error("sample_targeted: p = 0 never stops (divergent sample size)");
  if (n0 == 0) throw domain_error("sample_targeted: n0 must be >= 1");
  if (p == 1.0) return n0;

  double log1mp = std::log1p(-p);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < n0; ++i) {
    double u = rng.next_open01();
    double g = std::ceil(std::log(u) / log1mp);
    if (g < 1.0) g = 1.0;
    if (g > 9.0e18 || static_cast<double>(total) > 9.0e18 - g)
      throw unsupported_error("sample_targeted: sample size overflows 64 bits");
    total += static_cast<std::uint64_t>(g);
  }
  return total;
}

const char* regime_name(Regime r) {
  return r == Regime::Standard ? "standard" : "targeted";
}

void ExperimentGrid::validate() const {
  if (settings.empty()) throw domain_error("ExperimentGrid: settings must be non-empty");
  if (reps == 0) throw domain_error("ExperimentGrid: reps must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw domain_error("ExperimentGrid: alpha must lie in (0,1)");
  if (!(p > 0.0 && p <= 1.0))
    throw domain_error("ExperimentGrid: p must lie in (0,1]");
  for (std::uint64_t s : settings)
    if (s == 0) throw domain_error("ExperimentGrid: settings must be positive");
}

namespace {

struct RepSlot {
  double lower = 0.0;
  double upper = 0.0;
  std::uint8_t covered = 0;
  std::uint8_t ok = 0;
};

double kahan_mean(const std::vector<RepSlot>& slots, std::size_t stride,
                  std::size_t offset, std::uint64_t reps, bool upper,
                  std::uint64_t* ok_count) {
  double sum = 0.0, comp = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const RepSlot& s = slots[offset + r * stride];
    if (!s.ok) continue;
    ++count;
    double x = upper ? s.upper : s.lower;
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  *ok_count = count;
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

std::vector<CoverageReport> coverage(const ExperimentGrid& grid,
                                     const std::vector<Method>& methods,
                                     int threads, double be_c) {
  grid.validate();
  if (methods.empty()) throw domain_error("coverage: methods must be non-empty");
  Level level(grid.alpha);
  BEConfig be_cfg = BEConfig::make(level, be_c);
  BEConfigTargeted bet_cfg = BEConfigTargeted::make(be_c);

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, hw);

  std::vector<CoverageReport> out;
  const std::size_t nm = methods.size();

  for (std::uint64_t setting : grid.settings) {
    std::uint64_t size = setting;
    if (grid.regime == Regime::Standard) {
      size = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(setting) / grid.p));
      if (size == 0) size = 1;
    }

    std::vector<bool> applicable(nm, true);
    std::vector<std::string> reasons(nm);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      if (methods[mi] != Method::BERelaxed) continue;
      if (grid.regime == Regime::Standard) {
        double n_min = be_cfg.min_n();
        if (!(static_cast<double>(size) > n_min)) {
          applicable[mi] = false;
          reasons[mi] = "requires n > " + std::to_string(n_min);
        }
      } else {
        double n0_min = bet_cfg.min_n0(grid.alpha);
        if (!(static_cast<double>(setting) > n0_min)) {
          applicable[mi] = false;
          reasons[mi] = "requires n0 > " + std::to_string(n0_min);
        }
      }
    }

    std::vector<RepSlot> slots(nm * grid.reps);
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
      try {
        for (std::uint64_t rep = begin; rep < end; ++rep) {
          RngStream stream(derive_stream_seed(grid.seed, rep));
          std::uint64_t draw = (grid.regime == Regime::Standard)
                                   ? sample_binomial(size, grid.p, stream)
                                   : sample_targeted(setting, grid.p, stream);
          for (std::size_t mi = 0; mi < nm; ++mi) {
            if (!applicable[mi]) continue;
            RepSlot& slot = slots[mi + rep * nm];
            try {
              Interval iv =
                  (grid.regime == Regime::Standard)
                      ? compute_interval(methods[mi], TrialSummary(size, draw),
                                         level, be_cfg)
                      : compute_interval(methods[mi], StoppedSummary(setting, draw),
                                         level, bet_cfg);
              slot.lower = iv.lower;
              slot.upper = iv.upper;
              slot.covered = iv.covers(grid.p) ? 1 : 0;
              slot.ok = 1;
            } catch (const precondition_error&) {
              // Data-dependent violation (e.g. p_hat >= 1/2 for the B-E
              // region): counts as a miss, excluded from endpoint averages.
              slot.ok = 0;
              slot.covered = 0;
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };

    if (n_threads <= 1 || grid.reps < 2 * n_threads) {
      worker(0, grid.reps);
    } else {
      std::vector<std::thread> pool;
      std::uint64_t chunk = (grid.reps + n_threads - 1) / n_threads;
      for (std::size_t t = 0; t < n_threads; ++t) {
        std::uint64_t begin = t * chunk;
        std::uint64_t end = std::min<std::uint64_t>(grid.reps, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(worker, begin, end);
      }
      for (auto& th : pool) th.join();
    }
    if (first_error) {
      try {
        std::rethrow_exception(first_error);
      } catch (const error& e) {
        throw error("setting " + std::to_string(setting) + ": " + e.what());
      }
    }

    for (std::size_t mi = 0; mi < nm; ++mi) {
      CoverageReport rep;
      rep.regime = grid.regime;
      rep.method = methods[mi];
      rep.alpha = grid.alpha;
      rep.p = grid.p;
      rep.setting = setting;
      rep.size = size;
      rep.reps = grid.reps;
      rep.applicable = applicable[mi];
      rep.reason = reasons[mi];
      if (applicable[mi]) {
        std::uint64_t covered = 0;
        for (std::uint64_t r = 0; r < grid.reps; ++r)
          covered += slots[mi + r * nm].covered;
        rep.covered = covered;
        rep.coverage =
            static_cast<double>(covered) / static_cast<double>(grid.reps);
        rep.se = std::sqrt(rep.coverage * (1.0 - rep.coverage) /
                           static_cast<double>(grid.reps));
        std::uint64_t ok_count = 0;
        rep.avg_lower = kahan_mean(slots, nm, mi, grid.reps, false, &ok_count);
        rep.avg_upper = kahan_mean(slots, nm, mi, grid.reps, true, &ok_count);
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<AverageBoundsRow> average_bounds(const ExperimentGrid& grid,
                                             const std::vector<Method>& methods,
                                             int threads, double be_c) {
  std::vector<AverageBoundsRow> rows;
  for (const CoverageReport& r : coverage(grid, methods, threads, be_c)) {
    AverageBoundsRow row;
    row.regime = r.regime;
    row.method = r.method;
    row.setting = r.setting;
    row.applicable = r.applicable;
    row.reason = r.reason;
    row.avg_lower = r.avg_lower;
    row.avg_upper = r.avg_upper;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rarecert::mc
