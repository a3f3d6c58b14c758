#pragma once

// Reference computations written directly from the model definitions with
// plain dense matrices. They share no code with the library.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<double>(n, 0.0)); }

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

struct Model {
  Matrix p;
  std::vector<double> pi;
};

// w: symmetric edge weights with zero diagonal; loops: self-loop weights.
inline Model walk(const Matrix& w, const std::vector<double>& loops) {
  const std::size_t n = w.size();
  Model m{zeros(n), std::vector<double>(n)};
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = loops[i];
    for (std::size_t j = 0; j < n; ++j) s += w[i][j];
    for (std::size_t j = 0; j < n; ++j) m.p[i][j] = (i == j ? loops[i] : w[i][j]) / s;
    m.pi[i] = s;
    total += s;
  }
  for (auto& v : m.pi) v /= total;
  return m;
}

// Coalescence times over all ordered pairs, diagonal pinned to zero.
inline Matrix coalescence(const Model& m) {
  const std::size_t n = m.pi.size(), N = n * n;
  Matrix a = zeros(N);
  std::vector<double> b(N, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = i * n + j;
      a[r][r] += 1.0;
      if (i == j) continue;
      b[r] = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k * n + j] -= 0.5 * m.p[i][k];
        a[r][i * n + k] -= 0.5 * m.p[j][k];
      }
    }
  const auto x = solve(a, b);
  Matrix eta = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eta[i][j] = x[i * n + j];
  return eta;
}

struct Series {
  double eta1, eta2, eta3;
};

// eta^(s) = sum_ij pi_i p_ij^(s) eta_ij.
inline Series series(const Model& m, const Matrix& eta) {
  const std::size_t n = m.pi.size();
  Matrix pw = m.p;
  double out[3];
  for (int s = 0; s < 3; ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc += m.pi[i] * pw[i][j] * eta[i][j];
    out[s] = acc;
    pw = multiply(pw, m.p);
  }
  return {out[0], out[1], out[2]};
}

struct Threshold {
  double numerator, denominator;
};

inline Threshold threshold(const Matrix& w, const std::vector<double>& loops) {
  const Model m = walk(w, loops);
  const Series s = series(m, coalescence(m));
  return {s.eta2, s.eta3 - s.eta1};
}

}  // namespace oracle
