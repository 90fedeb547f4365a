#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "intervals.hpp"

namespace rarecert::mc {

struct Seed {
  std::uint64_t root = 0;
};

// SplitMix64 finalizing mixer.
std::uint64_t mix64(std::uint64_t x);

// Replication r draws from an independent stream seeded by mixing (root, r),
// which makes parallel execution bit-identical to serial.
std::uint64_t derive_stream_seed(Seed seed, std::uint64_t replication);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  // Uniform draw strictly inside (0,1); never exactly 0 or 1, so geometric
  // inversion stays finite.
  double next_open01();

 private:
  std::uint64_t state_;
};

// Largest supported binomial mean for inversion sampling.
inline constexpr double kBinomialMeanBudget = 1e6;

// Exact Binomial(n,p) draw by CDF inversion with the pmf ratio recurrence.
std::uint64_t sample_binomial(std::uint64_t n, double p, RngStream& rng);

// Targeted-stopping sample size: the sum of n0 exact Geometric(p) draws.
std::uint64_t sample_targeted(std::uint64_t n0, double p, RngStream& rng);

enum class Regime { Standard, Targeted };

const char* regime_name(Regime r);

struct ExperimentGrid {
  Regime regime = Regime::Standard;
  double p = 0.0;
  std::vector<std::uint64_t> settings;  // np multiples (standard) or n0 values
  std::uint64_t reps = 1000;
  double alpha = 0.05;
  Seed seed;

  void validate() const;
};

struct CoverageReport {
  Regime regime = Regime::Standard;
  Method method = Method::CLT;
  double alpha = 0.0;
  double p = 0.0;
  std::uint64_t setting = 0;  // np multiple or n0
  std::uint64_t size = 0;     // realized n (standard) or n0 (targeted)
  std::uint64_t reps = 0;
  bool applicable = true;
  std::string reason;  // why not applicable
  std::uint64_t covered = 0;
  double coverage = 0.0;
  double se = 0.0;
  double avg_lower = 0.0;
  double avg_upper = 0.0;
};

// Coverage probabilities and average bounds per (method x setting). The
// result is bit-reproducible for a given (seed, grid, methods) regardless of
// the thread count: replication outputs land in per-replication slots and
// are reduced serially in index order. threads == 0 picks the hardware count.
std::vector<CoverageReport> coverage(const ExperimentGrid& grid,
                                     const std::vector<Method>& methods,
                                     int threads = 1,
                                     double be_c = kBerryEsseenC);

struct AverageBoundsRow {
  Regime regime = Regime::Standard;
  Method method = Method::CLT;
  std::uint64_t setting = 0;
  bool applicable = true;
  std::string reason;
  double avg_lower = 0.0;
  double avg_upper = 0.0;
};

// The tidy table behind the average-bounds figures.
std::vector<AverageBoundsRow> average_bounds(const ExperimentGrid& grid,
                                             const std::vector<Method>& methods,
                                             int threads = 1,
                                             double be_c = kBerryEsseenC);

}  // namespace rarecert::mc
