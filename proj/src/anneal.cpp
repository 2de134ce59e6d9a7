#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "gridcomm/solvers.hpp"

namespace gridcomm {

namespace {

struct ReadResult {
  std::vector<int> state;
  double energy = 0.0;
};

std::vector<double> geometric_schedule(const BetaRange& range, int sweeps) {
  std::vector<double> betas(static_cast<std::size_t>(sweeps));
  if (sweeps == 1) {
    betas[0] = range.beta_max;
    return betas;
  }
  const double ratio = std::log(range.beta_max / range.beta_min) / (sweeps - 1);
  for (int s = 0; s < sweeps; ++s) betas[s] = range.beta_min * std::exp(ratio * s);
  return betas;
}

BetaRange endpoints(double max_delta, double min_delta) {
  if (!(max_delta > 0.0)) return {0.1, 1.0};
  // Deltas far below the largest one are irrelevant to the final ordering;
  // letting them set beta_max would spend most sweeps fully frozen.
  min_delta = std::max(min_delta, max_delta * 1e-3);
  BetaRange range{std::log(2.0) / max_delta, std::log(100.0) / min_delta};
  if (!(range.beta_min < range.beta_max)) range.beta_max = range.beta_min * 10.0;
  return range;
}

BetaRange resolve_range(const AnnealParams& params, BetaRange fallback) {
  BetaRange range{params.beta_min.value_or(fallback.beta_min),
                  params.beta_max.value_or(fallback.beta_max)};
  if (!(range.beta_min > 0.0) || !(range.beta_max > 0.0) ||
      !(range.beta_min < range.beta_max)) {
    throw std::invalid_argument("anneal: need 0 < beta_min < beta_max");
  }
  return range;
}

void check_params(const AnnealParams& params) {
  if (params.num_reads <= 0) throw std::invalid_argument("anneal: num_reads must be positive");
  if (params.sweeps_per_read <= 0) {
    throw std::invalid_argument("anneal: sweeps_per_read must be positive");
  }
}

// Runs read_fn(r) for every read, spread over worker threads, and merges
// identical states. The output does not depend on the thread count.
template <typename ReadFn>
SampleSet run_reads(const AnnealParams& params, ReadFn read_fn) {
  const int reads = params.num_reads;
  int workers = params.threads > 0 ? params.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, reads);

  std::vector<ReadResult> results(static_cast<std::size_t>(reads));
  if (workers == 1) {
    for (int r = 0; r < reads; ++r) results[r] = read_fn(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int r = w; r < reads; r += workers) results[r] = read_fn(r);
      });
    }
  }

  struct Tally {
    double energy;
    int count;
    int first_read;
  };
  std::map<std::vector<int>, Tally> distinct;
  for (int r = 0; r < reads; ++r) {
    auto [it, inserted] = distinct.try_emplace(results[r].state, Tally{results[r].energy, 0, r});
    it->second.count += 1;
  }

  std::vector<std::pair<int, Sample>> ordered;
  ordered.reserve(distinct.size());
  for (auto& [state, tally] : distinct) {
    ordered.emplace_back(tally.first_read, Sample{state, tally.energy, tally.count});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second.energy != b.second.energy) return a.second.energy < b.second.energy;
    return a.first < b.first;
  });

  SampleSet set;
  set.samples.reserve(ordered.size());
  for (auto& entry : ordered) set.samples.push_back(std::move(entry.second));
  return set;
}

// Symmetric adjacency view of the upper-triangular coefficient map.
struct SparseQubo {
  std::vector<double> linear;
  std::vector<int> offsets;  // CSR row pointers
  std::vector<int> neighbors;
  std::vector<double> couplings;
};

SparseQubo compile(const QuboModel& model) {
  const int vars = model.variable_count();
  SparseQubo sq;
  sq.linear.assign(static_cast<std::size_t>(vars), 0.0);
  std::vector<int> degree(static_cast<std::size_t>(vars), 0);
  for (const auto& [key, value] : model.coefficients) {
    if (key.first == key.second) {
      sq.linear[key.first] += value;
    } else {
      degree[key.first] += 1;
      degree[key.second] += 1;
    }
  }
  sq.offsets.assign(static_cast<std::size_t>(vars) + 1, 0);
  for (int p = 0; p < vars; ++p) sq.offsets[p + 1] = sq.offsets[p] + degree[p];
  sq.neighbors.resize(static_cast<std::size_t>(sq.offsets.back()));
  sq.couplings.resize(sq.neighbors.size());
  std::vector<int> fill(sq.offsets.begin(), sq.offsets.end() - 1);
  for (const auto& [key, value] : model.coefficients) {
    if (key.first == key.second) continue;
    sq.neighbors[fill[key.first]] = key.second;
    sq.couplings[fill[key.first]++] = value;
    sq.neighbors[fill[key.second]] = key.first;
    sq.couplings[fill[key.second]++] = value;
  }
  return sq;
}

}  // namespace

BetaRange default_beta_range(const QuboModel& model) {
  const auto sq = compile(model);
  double max_delta = 0.0;
  double min_delta = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < sq.linear.size(); ++p) {
    double reach = std::abs(sq.linear[p]);
    if (sq.linear[p] != 0.0) min_delta = std::min(min_delta, std::abs(sq.linear[p]));
    for (int e = sq.offsets[p]; e < sq.offsets[p + 1]; ++e) {
      reach += std::abs(sq.couplings[e]);
      min_delta = std::min(min_delta, std::abs(sq.couplings[e]));
    }
    max_delta = std::max(max_delta, reach);
  }
  return endpoints(max_delta, min_delta);
}

BetaRange default_beta_range(const DiscreteModel& model) {
  double max_delta = 0.0;
  double min_delta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < model.n; ++i) {
    double reach = 0.0;
    for (int j = 0; j < model.n; ++j) {
      if (j == i) continue;
      const double w = 2.0 * std::abs(model.interaction(i, j));
      reach += w;
      if (w != 0.0) min_delta = std::min(min_delta, w);
    }
    max_delta = std::max(max_delta, reach);
  }
  return endpoints(max_delta, min_delta);
}

SampleSet anneal_qubo(const QuboModel& model, const AnnealParams& params) {
  check_params(params);
  const auto sq = compile(model);
  const auto betas = geometric_schedule(resolve_range(params, default_beta_range(model)),
                                        params.sweeps_per_read);
  const int vars = model.variable_count();

  return run_reads(params, [&](int read) {
    std::mt19937_64 rng(params.seed ^ static_cast<std::uint64_t>(read));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(vars));
    for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1u);

    // field[p] = linear[p] + sum_q Q_pq x_q; flipping p changes energy by +-field[p].
    std::vector<double> field(sq.linear);
    for (int p = 0; p < vars; ++p) {
      if (!x[p]) continue;
      for (int e = sq.offsets[p]; e < sq.offsets[p + 1]; ++e) {
        field[sq.neighbors[e]] += sq.couplings[e];
      }
    }

    for (double beta : betas) {
      for (int p = 0; p < vars; ++p) {
        const double delta = x[p] ? -field[p] : field[p];
        if (delta > 0.0 && unit(rng) >= std::exp(-beta * delta)) continue;
        const double sign = x[p] ? -1.0 : 1.0;
        x[p] ^= 1u;
        for (int e = sq.offsets[p]; e < sq.offsets[p + 1]; ++e) {
          field[sq.neighbors[e]] += sign * sq.couplings[e];
        }
      }
    }

    ReadResult result;
    result.energy = energy(model, x);
    result.state.assign(x.begin(), x.end());
    return result;
  });
}

SampleSet anneal_discrete(const DiscreteModel& model, const AnnealParams& params) {
  check_params(params);
  const auto betas = geometric_schedule(resolve_range(params, default_beta_range(model)),
                                        params.sweeps_per_read);
  const int n = model.n;
  const int k = model.k;
  // Work with the modularity matrix itself: score gains are energy drops.
  const Eigen::MatrixXd b = -model.interaction;

  return run_reads(params, [&](int read) {
    std::mt19937_64 rng(params.seed ^ static_cast<std::uint64_t>(read));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> other(0, std::max(k - 2, 0));
    std::uniform_int_distribution<int> label(0, k - 1);

    std::vector<int> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = label(rng);

    // field(i, c) = sum_j B_ij [a_j == c]
    Eigen::MatrixXd field = Eigen::MatrixXd::Zero(n, k);
    for (int j = 0; j < n; ++j) field.col(a[j]) += b.col(j);

    if (k > 1) {
      for (double beta : betas) {
        for (int i = 0; i < n; ++i) {
          const int from = a[i];
          int to = other(rng);
          if (to >= from) ++to;
          const double gain = 2.0 * (field(i, to) - field(i, from) + b(i, i));
          const double delta = -gain;
          if (delta > 0.0 && unit(rng) >= std::exp(-beta * delta)) continue;
          a[i] = to;
          field.col(from) -= b.col(i);
          field.col(to) += b.col(i);
        }
      }
    }

    ReadResult result;
    result.energy = energy(model, a);
    result.state = std::move(a);
    return result;
  });
}

}  // namespace gridcomm
