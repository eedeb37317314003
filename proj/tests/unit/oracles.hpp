#pragma once

// Brute-force counting used to freeze expected values. Nothing here calls into
// the library's series or basis code.

#include <functional>
#include <map>
#include <vector>

namespace oracle {

/// Number of monomials of each doubled degree (< limit) in free generators of
/// the given doubled degrees.
inline std::vector<long long> count_free(const std::vector<int>& degrees, int limit) {
  std::vector<long long> counts(limit, 0);
  counts[0] = 1;
  for (int d : degrees)
    for (int n = d; n < limit; ++n) counts[n] += counts[n - d];
  return counts;
}

/// Free generators of the ring of matrix coefficients: a_{j+1/2}, b_j, c_j.
inline std::vector<int> free_ring_degrees(int g) {
  std::vector<int> out;
  for (int j = 1; j <= g; ++j) out.push_back(2 * j + 1);
  for (int j = 1; j <= g; ++j) out.push_back(2 * j);
  for (int j = 1; j <= g + 1; ++j) out.push_back(2 * j);
  return out;
}

/// Monomials with free low generators of doubled degree 2..g+1 and square-free
/// high generators of doubled degree g+2..2g+1, enumerated one by one.
inline std::vector<long long> count_quotient_basis(int g, int limit) {
  std::vector<long long> counts(limit, 0);
  std::vector<int> exps(2 * g + 2, 0);
  std::function<void(int, int)> rec = [&](int n, int deg) {
    if (deg >= limit) return;
    if (n > 2 * g + 1) {
      ++counts[deg];
      return;
    }
    const int cap = n >= g + 2 ? 1 : limit;
    for (int p = 0; p <= cap && deg + p * n < limit; ++p) rec(n + 1, deg + p * n);
  };
  rec(2, 0);
  return counts;
}

/// Coefficients of the Gaussian binomial [n over k] in q, by counting
/// partitions inside a k x (n-k) box.
inline std::vector<long long> gaussian_by_partitions(int n, int k) {
  if (k < 0 || k > n) return {};
  const int width = n - k;
  std::vector<long long> out(k * width + 1, 0);
  std::function<void(int, int, int)> rec = [&](int row, int max_part, int sum) {
    if (row == k) {
      ++out[sum];
      return;
    }
    for (int p = 0; p <= max_part; ++p) rec(row + 1, p, sum + p);
  };
  rec(0, width, 0);
  return out;
}

}  // namespace oracle
