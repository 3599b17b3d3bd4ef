#include "stunted/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace stunted {

std::uint64_t binomial(std::int64_t m, std::int64_t k) {
  if (m < 0 || k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(m - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t c_coeff(int i, int j, int s) { return binomial(i + j, j) * binomial(s - i - j - 1, j - 1); }

namespace {

// Coefficients of p^k through degree max.
std::vector<std::uint64_t> power(const std::vector<std::uint64_t>& p, int k, int max) {
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(max + 1), 0);
  acc[0] = 1;
  for (int r = 0; r < k; ++r) {
    std::vector<std::uint64_t> next(acc.size(), 0);
    for (int a = 0; a <= max; ++a) {
      if (acc[a] == 0) continue;
      for (int b = 0; a + b <= max && b < static_cast<int>(p.size()); ++b) next[a + b] += acc[a] * p[b];
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<std::uint64_t> poly(const BettiTable& b, int max) {
  std::vector<std::uint64_t> p(static_cast<std::size_t>(max + 1), 0);
  for (int d = 0; d <= max; ++d) p[d] = b.at(d);
  return p;
}

}  // namespace

std::uint64_t betti_pinched_formula(const BettiInput& input, int s, int t) {
  if (s < 2) throw std::invalid_argument("the pinched-set formula needs s >= 2");
  if (t < 0) return 0;
  // Entries of lambda and mu are degrees; their total never exceeds the
  // largest target below, which is at most t.
  int need = -1;
  for (int i = 0; i + 1 <= s - 1; ++i) {
    for (int j = 1; i + j + 1 <= s; ++j) need = std::max(need, t - s + i + j + 1);
  }
  if (need < 0) return 0;
  if (input.q.certified_max() < need || input.a.certified_max() < need) {
    throw BettiRangeError("pinched-set formula in degree " + std::to_string(t) + " needs input Betti numbers through " +
                          std::to_string(need));
  }
  const auto pq = poly(input.q, need);
  const auto pa = poly(input.a, need);
  std::uint64_t total = 0;
  for (int i = 0; i + 2 <= s; ++i) {
    const auto lam = power(pq, i, need);
    for (int j = 1; i + j + 1 <= s; ++j) {
      const int target = t - s + i + j + 1;
      if (target < 0) continue;
      const std::uint64_t c = c_coeff(i, j, s);
      if (c == 0) continue;
      const auto mu = power(pa, j, need);
      std::uint64_t sum = 0;
      for (int l = 0; l <= target; ++l) sum += lam[l] * mu[target - l];
      total += c * sum;
    }
  }
  return total;
}

std::uint64_t betti_pinched_example(int s, int n) {
  if (s < 2) throw std::invalid_argument("the pinched-set formula needs s >= 2");
  std::uint64_t total = 0;
  for (int j = 1; j <= 2 * s - 3; ++j) total += binomial(n - s + 1 + j, j) * binomial(2 * s - n - j - 2, j - 1);
  return total;
}

BettiTable quotient_betti_concentrated(int s, const BettiTable& pinched, Dim max_degree) {
  if (s < 1) throw std::invalid_argument("quotient index must be >= 1");
  BettiTable out(max_degree);
  for (Dim n = 0; n <= max_degree; ++n) {
    if (n == 2 * s) {
      out.set(n, 1);
    } else if (n <= 2 * s - 2) {
      out.set(n, pinched.at(n - 1));
    }
  }
  return out;
}

std::uint64_t loop_betti(const std::vector<BettiTable>& quotients, int n) {
  if (n < 1) throw std::invalid_argument("loop Betti numbers are defined for n >= 1");
  if (static_cast<int>(quotients.size()) <= n) {
    throw BettiRangeError("degree " + std::to_string(n) + " needs quotient tables for s = 1.." + std::to_string(n));
  }
  std::uint64_t total = 0;
  for (int s = 1; s <= n; ++s) total += quotients[s].at(n);
  return total;
}

std::uint64_t loop_betti_example(int n, OddBound bound) {
  if (n < 1) throw std::invalid_argument("loop Betti numbers are defined for n >= 1");
  std::uint64_t total = 0;
  if (n % 2 == 0) {
    const int k = n / 2;
    total = 1;
    for (int r = k + 1; r <= 2 * k; ++r) {
      for (int j = 1; j <= 2 * r - 3; ++j) total += binomial(2 * k - r + j, j) * binomial(2 * r - 2 * k - j - 1, j - 1);
    }
  } else {
    const int k = (n - 1) / 2;
    for (int r = k + 2; r <= 2 * k + 1; ++r) {
      const int top = bound == OddBound::kTight ? r - k - 1 : 2 * r - 3;
      for (int j = 1; j <= top; ++j) {
        total += binomial(2 * k - r + j + 1, j) * binomial(2 * r - 2 * k - j - 2, j - 1);
      }
    }
  }
  return total;
}

RecurrenceSeries RecurrenceSeries::expand(std::vector<std::int64_t> numerator, std::vector<std::int64_t> denominator,
                                          int n_max) {
  if (denominator.empty() || (denominator[0] != 1 && denominator[0] != -1)) {
    throw std::invalid_argument("denominator must have constant term +-1");
  }
  RecurrenceSeries out{std::move(numerator), std::move(denominator), {}};
  for (int n = 0; n <= n_max; ++n) {
    std::int64_t v = n < static_cast<int>(out.numerator.size()) ? out.numerator[n] : 0;
    for (int k = 1; k < static_cast<int>(out.denominator.size()) && k <= n; ++k) v -= out.denominator[k] * out.coeffs[n - k];
    out.coeffs.push_back(v * out.denominator[0]);
  }
  return out;
}

bool RecurrenceSeries::satisfies_recurrence() const {
  for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) {
    std::int64_t v = 0;
    for (int k = 0; k < static_cast<int>(denominator.size()) && k <= n; ++k) v += denominator[k] * coeffs[n - k];
    const std::int64_t expect = n < static_cast<int>(numerator.size()) ? numerator[n] : 0;
    if (v != expect) return false;
  }
  return true;
}

RecurrenceSeries poincare_coeffs(int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  return RecurrenceSeries::expand({1, -1}, {1, -1, -2, 1}, n_max);
}

}  // namespace stunted
