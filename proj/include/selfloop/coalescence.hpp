#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "selfloop/graph.hpp"
#include "selfloop/walk.hpp"

namespace selfloop {

enum class SolverKind { Auto, DenseCholesky, ConjugateGradient, FixedPoint };

struct SolverOptions {
  SolverKind kind = SolverKind::Auto;
  double tolerance = 1e-12;
  long max_iterations = 1'000'000;
  int dense_limit = 50;  // Auto uses the dense factorization up to this many vertices
  double damping = 0.9;  // FixedPoint only
};

/// Index of the unordered pair {i, j}, i < j, in row-major upper-triangle order.
inline std::size_t pair_index(int n, int i, int j) noexcept {
  if (i > j) std::swap(i, j);
  const auto ii = static_cast<std::size_t>(i);
  return ii * static_cast<std::size_t>(n) - ii * (ii + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

/// Expected coalescence times, stored once per unordered pair.
class PairwiseEta {
 public:
  PairwiseEta() = default;
  explicit PairwiseEta(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2, 0.0) {}

  int size() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return data_.size(); }

  double operator()(int i, int j) const noexcept {
    return i == j ? 0.0 : data_[pair_index(n_, i, j)];
  }
  double& at_pair(std::size_t t) noexcept { return data_[t]; }
  double at_pair(std::size_t t) const noexcept { return data_[t]; }
  const std::vector<double>& pairs() const noexcept { return data_; }

  std::vector<double> dense() const {
    const auto n = static_cast<std::size_t>(n_);
    std::vector<double> m(n * n, 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        m[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = (*this)(i, j);
    return m;
  }

  double max_value() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// max over i<j of |eta_ij - 1 - (1/2) sum_k (p_ik eta_kj + p_jk eta_ik)|.
inline double max_recurrence_residual(const PairwiseEta& eta, const TransitionMatrix& p) {
  const int n = p.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = p.self(i) * eta(i, j) + p.self(j) * eta(i, j);
      for (const auto& e : p.row(i)) acc += e.weight * eta(e.vertex, j);
      for (const auto& e : p.row(j)) acc += e.weight * eta(i, e.vertex);
      worst = std::max(worst, std::abs(eta(i, j) - 1.0 - 0.5 * acc));
    }
  return worst;
}

namespace detail {

// The pair system A eta = 1 becomes symmetric positive definite after the
// similarity transform y = sqrt(pi_i pi_j) eta: off-diagonal couplings turn
// into -sqrt(p_ik p_ki)/2 and the right-hand side into sqrt(pi_i pi_j).
template <class Emit>
void for_each_symmetric_entry(const TransitionMatrix& p, Emit&& emit) {
  const int n = p.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto t = pair_index(n, i, j);
      emit(t, t, 1.0 - 0.5 * p.self(i) - 0.5 * p.self(j));
      for (const auto& e : p.row(i))
        if (e.vertex != j) emit(t, pair_index(n, e.vertex, j), -0.5 * std::sqrt(e.weight * p(e.vertex, i)));
      for (const auto& e : p.row(j))
        if (e.vertex != i) emit(t, pair_index(n, i, e.vertex), -0.5 * std::sqrt(e.weight * p(e.vertex, j)));
    }
}

inline Eigen::VectorXd symmetric_rhs(const std::vector<double>& pi) {
  const int n = static_cast<int>(pi.size());
  Eigen::VectorXd b(static_cast<Eigen::Index>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      b(static_cast<Eigen::Index>(pair_index(n, i, j))) =
          std::sqrt(pi[static_cast<std::size_t>(i)] * pi[static_cast<std::size_t>(j)]);
  return b;
}

inline PairwiseEta unscale(const Eigen::VectorXd& y, const Eigen::VectorXd& b, int n) {
  PairwiseEta eta(n);
  for (std::size_t t = 0; t < eta.pair_count(); ++t) {
    const auto k = static_cast<Eigen::Index>(t);
    eta.at_pair(t) = y(k) / b(k);
  }
  return eta;
}

inline PairwiseEta solve_dense(const WalkCache& w) {
  const int n = w.size();
  const auto m = static_cast<Eigen::Index>(n) * (n - 1) / 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for_each_symmetric_entry(w.p1, [&](std::size_t r, std::size_t c, double v) {
    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v;
  });
  const Eigen::VectorXd b = symmetric_rhs(w.pi);
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw Error(Errc::SolverDidNotConverge, "pair system is not positive definite");
  return unscale(llt.solve(b), b, n);
}

inline PairwiseEta solve_cg(const WalkCache& w, const SolverOptions& opts) {
  const int n = w.size();
  const auto m = static_cast<Eigen::Index>(n) * (n - 1) / 2;
  std::vector<Eigen::Triplet<double>> trips;
  for_each_symmetric_entry(w.p1, [&](std::size_t r, std::size_t c, double v) {
    trips.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), v);
  });
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());
  const Eigen::VectorXd b = symmetric_rhs(w.pi);

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(opts.tolerance);
  cg.setMaxIterations(static_cast<Eigen::Index>(std::min<long>(opts.max_iterations, 1L << 30)));
  cg.compute(a);
  Eigen::VectorXd y = cg.solve(b);
  // One refinement pass recovers digits lost to the tolerance floor.
  y += cg.solve(b - a * y);
  return unscale(y, b, n);
}

inline PairwiseEta solve_fixed_point(const WalkCache& w, const SolverOptions& opts) {
  const int n = w.size();
  const auto& p = w.p1;
  PairwiseEta cur(n), next(n);
  std::vector<double> diag(cur.pair_count());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) diag[pair_index(n, i, j)] = 1.0 - 0.5 * p.self(i) - 0.5 * p.self(j);

  const double omega = opts.damping;
  const double eps = std::numeric_limits<double>::epsilon();
  for (long sweep = 0; sweep < opts.max_iterations; ++sweep) {
    double residual = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto t = pair_index(n, i, j);
        double off = 0.0;
        for (const auto& e : p.row(i))
          if (e.vertex != j) off += e.weight * cur(e.vertex, j);
        for (const auto& e : p.row(j))
          if (e.vertex != i) off += e.weight * cur(i, e.vertex);
        off *= 0.5;
        const double x = cur.at_pair(t);
        residual = std::max(residual, std::abs(1.0 + off - diag[t] * x));
        next.at_pair(t) = (1.0 - omega) * x + omega * (1.0 + off) / diag[t];
      }
    if (residual <= std::max(opts.tolerance, 64.0 * eps * cur.max_value())) return cur;
    std::swap(cur, next);
  }
  throw Error(Errc::SolverDidNotConverge,
              "fixed-point iteration hit " + std::to_string(opts.max_iterations) + " sweeps");
}

}  // namespace detail

/// Solves eta_ij = 1 + (1/2) sum_k (p_ik eta_kj + p_jk eta_ik) for i != j,
/// eta_ii = 0, on the unordered-pair state space.
inline PairwiseEta solve_pairwise_eta(const WalkCache& w, const SolverOptions& opts = {}) {
  const int n = w.size();
  if (n < 2) throw Error(Errc::TooSmall, "coalescence needs at least 2 vertices");
  SolverKind kind = opts.kind;
  if (kind == SolverKind::Auto)
    kind = n <= opts.dense_limit ? SolverKind::DenseCholesky : SolverKind::ConjugateGradient;

  PairwiseEta eta;
  switch (kind) {
    case SolverKind::DenseCholesky: eta = detail::solve_dense(w); break;
    case SolverKind::ConjugateGradient: eta = detail::solve_cg(w, opts); break;
    default: eta = detail::solve_fixed_point(w, opts); break;
  }
  const double res = max_recurrence_residual(eta, w.p1);
  if (!(res < 1e-9))
    throw Error(Errc::SolverDidNotConverge, "recurrence residual " + std::to_string(res));
  return eta;
}

inline PairwiseEta solve_pairwise_eta(const Graph& g, const SolverOptions& opts = {}) {
  return solve_pairwise_eta(WalkCache(g), opts);
}

/// eta_i = 1 + sum_k p_ik eta_ik.
inline std::vector<double> remeeting_times(const PairwiseEta& eta, const WalkCache& w) {
  const int n = w.size();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 1.0;
    for (const auto& e : w.p1.row(i)) acc += e.weight * eta(i, e.vertex);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

struct EtaSeries {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double eta3_minus_eta1 = 0.0;
};

/// sum_ij pi_i p_ij^(s) eta_ij for s = 1, 2, 3, by repeated sparse products.
inline EtaSeries definitional_eta_series(const PairwiseEta& eta, const WalkCache& w) {
  const int n = w.size();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> cur = eta.dense(), next(nn * nn);
  double out[3] = {0.0, 0.0, 0.0};
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < n; ++i) {
      double* dst = &next[static_cast<std::size_t>(i) * nn];
      const double d = w.p1.self(i);
      const double* own = &cur[static_cast<std::size_t>(i) * nn];
      for (std::size_t c = 0; c < nn; ++c) dst[c] = d * own[c];
      for (const auto& e : w.p1.row(i)) {
        const double* src = &cur[static_cast<std::size_t>(e.vertex) * nn];
        for (std::size_t c = 0; c < nn; ++c) dst[c] += e.weight * src[c];
      }
    }
    std::swap(cur, next);
    double acc = 0.0;
    for (std::size_t i = 0; i < nn; ++i) acc += w.pi[i] * cur[i * nn + i];
    out[s] = acc;
  }
  return {out[0], out[1], out[2], out[2] - out[0]};
}

inline constexpr int kCrossCheckLimit = 200;

/// eta1 = sum pi_i eta_i - 1, eta2 = sum pi_i eta_i (1 + p_ii) - 2,
/// eta3 - eta1 = sum pi_i eta_i (p_ii + p_ii^(2)) - 2. For n <= 200 the result
/// is checked against the definitional sums.
inline EtaSeries eta_series(const PairwiseEta& eta, const std::vector<double>& eta_i,
                            const WalkCache& w) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double base = w.pi[k] * eta_i[k];
    s0 += base;
    s1 += base * w.p1.self(i);
    s2 += base * w.p2_diag[k];
  }
  EtaSeries r;
  r.eta1 = s0 - 1.0;
  r.eta2 = (s0 + s1) - 2.0;
  r.eta3_minus_eta1 = (s1 + s2) - 2.0;
  r.eta3 = r.eta1 + r.eta3_minus_eta1;

  if (w.size() <= kCrossCheckLimit) {
    const EtaSeries d = definitional_eta_series(eta, w);
    auto off = [](double a, double b) { return std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(b)); };
    if (off(r.eta1, d.eta1) || off(r.eta2, d.eta2) || off(r.eta3, d.eta3))
      throw Error(Errc::CrossCheckFailed, "recurrence and definitional eta series disagree");
  }
  return r;
}

struct CoalescenceResult {
  PairwiseEta eta;
  std::vector<double> eta_i;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double eta3_minus_eta1 = 0.0;
};

inline CoalescenceResult coalescence(const WalkCache& w, const SolverOptions& opts = {}) {
  CoalescenceResult r;
  r.eta = solve_pairwise_eta(w, opts);
  r.eta_i = remeeting_times(r.eta, w);
  const EtaSeries s = eta_series(r.eta, r.eta_i, w);
  r.eta1 = s.eta1;
  r.eta2 = s.eta2;
  r.eta3 = s.eta3;
  r.eta3_minus_eta1 = s.eta3_minus_eta1;
  return r;
}

inline CoalescenceResult coalescence(const Graph& g, const SolverOptions& opts = {}) {
  return coalescence(WalkCache(g), opts);
}

}  // namespace selfloop
