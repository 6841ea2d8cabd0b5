#pragma once

// Pairwise reference implementations of the cohesion formulas. They work on
// plain boolean grids and share no code with the library.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace cam::oracle {

using Grid = std::vector<std::vector<bool>>;

inline double naive_lcom5(const Grid& g, std::size_t attributes) {
  const std::size_t m = g.size();
  if (m <= 1 || attributes == 0) return std::numeric_limits<double>::quiet_NaN();
  double mu_sum = 0;
  for (std::size_t j = 0; j < attributes; ++j) {
    int mu = 0;
    for (std::size_t i = 0; i < m; ++i) mu += g[i][j] ? 1 : 0;
    mu_sum += mu;
  }
  return (m - mu_sum / attributes) / (m - 1.0);
}

inline double naive_nhd(const Grid& g, std::size_t types) {
  const std::size_t k = g.size();
  if (k <= 1 || types == 0) return std::numeric_limits<double>::quiet_NaN();
  // Sum of Hamming distances over unordered row pairs equals sum_j c_j (k - c_j).
  double distance = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t j = 0; j < types; ++j) distance += g[a][j] != g[b][j] ? 1 : 0;
    }
  }
  return 1.0 - 2.0 * distance / (static_cast<double>(types) * k * (k - 1.0));
}

inline bool share(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] && b[j]) return true;
  }
  return false;
}

inline double naive_tcc(const Grid& g, const std::vector<bool>& visible) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (visible[i]) rows.push_back(i);
  }
  if (rows.size() <= 1) return std::numeric_limits<double>::quiet_NaN();
  int pairs = 0;
  int direct = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      ++pairs;
      if (share(g[rows[a]], g[rows[b]])) ++direct;
    }
  }
  return static_cast<double>(direct) / pairs;
}

inline int naive_lcom1(const Grid& g) {
  int p = 0;
  int q = 0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (share(g[a], g[b])) {
        ++q;
      } else {
        ++p;
      }
    }
  }
  return p > q ? p - q : 0;
}

inline Grid random_grid(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::bernoulli_distribution cell(0.35);
  Grid g(rows, std::vector<bool>(cols));
  for (auto& row : g) {
    for (std::size_t j = 0; j < cols; ++j) row[j] = cell(rng);
  }
  return g;
}

inline bool same(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::fabs(a - b) <= tol;
}

}  // namespace cam::oracle
