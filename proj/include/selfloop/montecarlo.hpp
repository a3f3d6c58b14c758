#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "selfloop/graph.hpp"
#include "selfloop/walk.hpp"

namespace selfloop {

struct GameParams {
  double b = 2.0;
  double c = 1.0;
  double delta = 0.01;
};

enum class Strategy : std::uint8_t { Defect = 0, Cooperate = 1 };

/// One entry per vertex: 1 = cooperate, 0 = defect.
using StrategyState = std::vector<std::uint8_t>;

inline bool is_absorbing(const StrategyState& s) {
  return std::all_of(s.begin(), s.end(), [&](std::uint8_t x) { return x == s.front(); });
}

/// f_i = -c s_i + b sum_j p_ij s_j, the sum including j = i through p_ii.
inline std::vector<double> payoffs(const WalkCache& w, const StrategyState& s, const GameParams& gp) {
  std::vector<double> f(s.size());
  for (int i = 0; i < w.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    double gain = w.p1.self(i) * s[k];
    for (const auto& e : w.p1.row(i)) gain += e.weight * s[static_cast<std::size_t>(e.vertex)];
    f[k] = -gp.c * s[k] + gp.b * gain;
  }
  return f;
}

/// Death-birth process with exponential fitness F_i = exp(delta f_i). The
/// dying vertex i is replaced by a copy of j drawn from neighbors(i) and i
/// itself with probability proportional to w_ij F_j (w_ii = self-loop).
/// Payoffs are maintained incrementally.
class DeathBirth {
 public:
  DeathBirth(const Graph& g, const WalkCache& w, const GameParams& gp, StrategyState initial)
      : g_(&g), w_(&w), gp_(gp), s_(std::move(initial)) {
    f_ = payoffs(w, s_, gp);
    fit_.resize(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) fit_[i] = std::exp(gp.delta * f_[i]);
    cooperators_ = static_cast<int>(std::count(s_.begin(), s_.end(), std::uint8_t{1}));
    inv_strength_.resize(f_.size());
    for (int i = 0; i < g.size(); ++i) inv_strength_[static_cast<std::size_t>(i)] = 1.0 / g.strength(i);
  }

  const StrategyState& state() const noexcept { return s_; }
  const std::vector<double>& payoff() const noexcept { return f_; }
  int cooperators() const noexcept { return cooperators_; }
  bool absorbed() const noexcept { return cooperators_ == 0 || cooperators_ == g_->size(); }

  template <class Rng>
  void step(Rng& rng) {
    const int n = g_->size();
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const auto nb = g_->neighbors(i);
    const auto ii = static_cast<std::size_t>(i);

    double total = g_->self_loop(i) * fit_[ii];
    for (const auto& e : nb) total += e.weight * fit_[static_cast<std::size_t>(e.vertex)];
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);

    int parent = -1;
    const double own = g_->self_loop(i) * fit_[ii];
    if (r < own) {
      parent = i;
    } else {
      r -= own;
      for (const auto& e : nb) {
        const double wgt = e.weight * fit_[static_cast<std::size_t>(e.vertex)];
        parent = e.vertex;
        if (r < wgt) break;
        r -= wgt;
      }
    }
    const std::uint8_t next = s_[static_cast<std::size_t>(parent)];
    if (next != s_[ii]) set(i, next);
  }

  void set(int i, std::uint8_t value) {
    const auto ii = static_cast<std::size_t>(i);
    const double ds = static_cast<double>(value) - static_cast<double>(s_[ii]);
    if (ds == 0.0) return;
    s_[ii] = value;
    cooperators_ += value ? 1 : -1;
    // Vertex x gains b p_xi ds; only i and its neighbors have p_xi > 0.
    touch(i, gp_.b * w_->p1.self(i) * ds - gp_.c * ds);
    for (const auto& e : g_->neighbors(i))
      touch(e.vertex, gp_.b * e.weight * inv_strength_[static_cast<std::size_t>(e.vertex)] * ds);
  }

 private:
  void touch(int x, double df) {
    const auto k = static_cast<std::size_t>(x);
    f_[k] += df;
    fit_[k] = std::exp(gp_.delta * f_[k]);
  }

  const Graph* g_;
  const WalkCache* w_;
  GameParams gp_;
  StrategyState s_;
  std::vector<double> f_;
  std::vector<double> fit_;
  std::vector<double> inv_strength_;
  int cooperators_ = 0;
};

/// Applies one death-birth event and returns the new state.
template <class Rng>
StrategyState db_step(const Graph& g, const WalkCache& w, const StrategyState& s, const GameParams& gp, Rng& rng) {
  DeathBirth sim(g, w, gp, s);
  sim.step(rng);
  return sim.state();
}

struct TrialOutcome {
  bool cooperators_fixed = false;
  std::uint64_t steps = 0;
};

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000'000ULL;

template <class Rng>
TrialOutcome run_trial(const Graph& g, const WalkCache& w, const GameParams& gp, StrategyState initial, Rng& rng,
                       std::uint64_t step_limit = kDefaultStepLimit) {
  if (initial.size() != static_cast<std::size_t>(g.size()) || is_absorbing(initial))
    throw Error(Errc::InvalidInitialState, "initial state needs both strategies");
  DeathBirth sim(g, w, gp, std::move(initial));
  TrialOutcome out;
  while (!sim.absorbed()) {
    if (out.steps >= step_limit) throw Error(Errc::StepLimitExceeded, std::to_string(step_limit) + " steps");
    sim.step(rng);
    ++out.steps;
  }
  out.cooperators_fixed = sim.cooperators() == g.size();
  return out;
}

/// Independent generator for trial t of a run, a pure function of
/// (seed, trial, mutant).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial, Strategy mutant) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),  static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(mutant)};
  return std::mt19937_64(seq);
}

struct SimEstimate {
  std::uint64_t trials = 0;
  std::uint64_t fixed = 0;
  double rho_hat = 0.0;
  double std_error = 0.0;
  std::uint64_t total_steps = 0;
};

inline SimEstimate make_estimate(std::uint64_t trials, std::uint64_t fixed, std::uint64_t steps = 0) {
  SimEstimate e;
  e.trials = trials;
  e.fixed = fixed;
  e.total_steps = steps;
  e.rho_hat = trials ? static_cast<double>(fixed) / static_cast<double>(trials) : 0.0;
  e.std_error = trials ? std::sqrt(e.rho_hat * (1.0 - e.rho_hat) / static_cast<double>(trials)) : 0.0;
  return e;
}

/// Fixation probability of a single `mutant` placed uniformly at random in
/// the opposite monomorphic state. Counts are identical for any thread count.
inline SimEstimate estimate_fixation(const Graph& g, const GameParams& gp, Strategy mutant, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 0) {
  if (trials < 1) throw Error(Errc::InvalidFamilyParams, "trials must be >= 1");
  const WalkCache w(g);
  const int n = g.size();
  const auto resident = mutant == Strategy::Cooperate ? std::uint8_t{0} : std::uint8_t{1};

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  std::vector<std::uint64_t> fixed(threads, 0), steps(threads, 0);

  auto worker = [&](unsigned id) {
    const std::uint64_t lo = trials * id / threads, hi = trials * (id + 1) / threads;
    for (std::uint64_t t = lo; t < hi; ++t) {
      auto rng = trial_rng(seed, t, mutant);
      StrategyState s(static_cast<std::size_t>(n), resident);
      s[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))] = 1 - resident;
      const auto out = run_trial(g, w, gp, std::move(s), rng);
      fixed[id] += out.cooperators_fixed == (mutant == Strategy::Cooperate) ? 1 : 0;
      steps[id] += out.steps;
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned id = 0; id < threads; ++id)
      pool.emplace_back([&, id] {
        try {
          worker(id);
        } catch (...) {
          errors[id] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::uint64_t f = 0, st = 0;
  for (unsigned id = 0; id < threads; ++id) {
    f += fixed[id];
    st += steps[id];
  }
  return make_estimate(trials, f, st);
}

/// N (rho_C - rho_D) with its standard error.
struct FixationContrast {
  SimEstimate cooperate;
  SimEstimate defect;
  double n_times_diff = 0.0;
  double std_error = 0.0;
};

inline FixationContrast contrast(int n, const SimEstimate& rc, const SimEstimate& rd) {
  FixationContrast out{rc, rd, 0.0, 0.0};
  out.n_times_diff = n * (rc.rho_hat - rd.rho_hat);
  out.std_error = n * std::sqrt(rc.std_error * rc.std_error + rd.std_error * rd.std_error);
  return out;
}

inline FixationContrast estimate_contrast(const Graph& g, const GameParams& gp, std::uint64_t trials,
                                          std::uint64_t seed, unsigned threads = 0) {
  return contrast(g.size(), estimate_fixation(g, gp, Strategy::Cooperate, trials, seed, threads),
                  estimate_fixation(g, gp, Strategy::Defect, trials, seed, threads));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double zero_crossing = 0.0;  // x where the fitted line is 0
};

/// Ordinary least squares y = slope x + intercept.
inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = std::min(x.size(), y.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.zero_crossing = fit.slope != 0.0 ? -fit.intercept / fit.slope : std::nan("");
  return fit;
}

}  // namespace selfloop
