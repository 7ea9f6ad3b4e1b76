#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zz/graph.hpp"

namespace zz {

// Neighbour-query access to a bounded-degree graph: ans(v,i) is the i-th
// neighbour (1-based, ascending) or bottom past the degree. The counter is
// atomic; samples may be drawn concurrently.
class GraphOracle {
 public:
  GraphOracle(const SimpleGraph& g, int degree_bound, uint64_t seed)
      : g_(&g), d_(degree_bound), seed_(seed) {
    if (g.max_degree() > degree_bound)
      throw std::invalid_argument("oracle: degree bound violated");
  }

  int n() const { return g_->size(); }
  int degree_bound() const { return d_; }
  uint64_t seed() const { return seed_; }

  std::optional<int> ans(int v, int i) const;

  long queries() const { return queries_.load(); }
  void reset_queries() const { queries_.store(0); }

 private:
  const SimpleGraph* g_;
  int d_;
  uint64_t seed_;
  mutable std::atomic<long> queries_{0};
};

// Counter-based splittable generator: value = hash(seed, stream, index).
// Reproducible and order-independent, so Monte-Carlo trials parallelize.
uint64_t split_hash(uint64_t seed, uint64_t stream, uint64_t index);
int uniform_below(uint64_t hash, int n);

// Explore the r-ball around v through the oracle (queries every vertex of
// the ball, so edges between boundary vertices are seen too).
GraphBall explore_ball(const GraphOracle& o, int v, int r);

// ceil((t^2 / lambda^2) ln(t + 40))
uint64_t sample_size(double t, double lambda);

struct TesterVerdict {
  bool accept = true;
  long queries = 0;
  enum class Cause { None, MSet, ForbiddenMass, ExactTable } cause = Cause::None;
  std::vector<double> frequencies;  // empirical snapshot, per registered type
};

struct ForbiddenSet {
  // complement = false: reject when a sampled ball matches any member;
  // complement = true: reject when a sampled ball differs from every member.
  std::vector<GraphBall> balls;
  bool complement = false;

  bool forbidden(const GraphBall& b) const;
};

// The four-step framework tester. exact(g) decides membership for n < n0
// after full exploration through the oracle.
TesterVerdict framework_tester(
    const GraphOracle& o, const std::function<bool(uint64_t)>& in_M,
    uint64_t n0, double lambda, const ForbiddenSet& F, int radius,
    const std::function<bool(const SimpleGraph&)>& exact);

std::vector<double> estimate_frequencies(const GraphOracle& o, int r,
                                         uint64_t s,
                                         std::vector<GraphBall>& registry);

TesterVerdict freeness_tester(const GraphOracle& o, const GraphBall& tau,
                              double eps);
TesterVerdict regularity_tester(const GraphOracle& o, const GraphBall& tau,
                                double eps);

// maximal i-cliques of the ball that contain the centre (radius-1 balls)
long maxcl(const GraphBall& ball, int i);

// Exact edit distance from g to the property within degree bound d, by
// exhausting all labelled graphs on the same vertex set (n <= 6); nullopt
// when no n-vertex member exists.
std::optional<long> brute_distance(const SimpleGraph& g,
                                   const std::function<bool(const SimpleGraph&)>& in_p,
                                   int d);

// Monte-Carlo harness: runs the tester once per seed, optionally threaded.
struct TrialStats {
  int accepts = 0;
  int trials = 0;
  double mean_queries = 0.0;
};

TrialStats run_trials(const SimpleGraph& g, int degree_bound, int trials,
                      int threads,
                      const std::function<TesterVerdict(const GraphOracle&)>& run,
                      uint64_t seed_base = 0);

}  // namespace zz
