#pragma once

#include <cstdint>
#include <vector>

#include "stunted/homology.hpp"

namespace stunted {

/// C(m, k), zero when m < 0, k < 0 or k > m.
std::uint64_t binomial(std::int64_t m, std::int64_t k);

/// Number of compositions of s made of i ones and j parts >= 2, in the
/// closed form C(i + j, j) C(s - i - j - 1, j - 1).
std::uint64_t c_coeff(int i, int j, int s);

struct BettiInput {
  BettiTable q;
  BettiTable a;
};

/// Betti number b_t of the pinched set from the Betti numbers of the orbit
/// space and of the fixed set: the sum over multi-indices lambda (possibly
/// empty) and mu (nonempty) of c * b_lambda(Q) * b_mu(A) with
/// |lambda| + |mu| = t - s + dim lambda + dim mu + 1 and
/// 2 <= dim lambda + dim mu + 1 <= s.
/// Throws BettiRangeError when the inputs do not reach the needed degrees.
std::uint64_t betti_pinched_formula(const BettiInput& input, int s, int t);

/// The same number for the two-disc sphere with its circle:
/// sum_{J=1}^{2s-3} C(n-s+1+J, J) C(2s-n-J-2, J-1).
std::uint64_t betti_pinched_example(int s, int n);

/// Betti numbers of S^{2s} modulo the pinched set, through max_degree:
/// 1 in degree 2s, 0 in degrees 2s-1 and above 2s, pinched(n-1) below.
BettiTable quotient_betti_concentrated(int s, const BettiTable& pinched, Dim max_degree);

/// Loop-space Betti number in degree n as the sum over s of the quotient
/// tables (index s, entry 0 unused). Quotient s vanishes below degree s when
/// the orbit space is connected, so tables for s = 1..n are required.
std::uint64_t loop_betti(const std::vector<BettiTable>& quotients, int n);

enum class OddBound {
  /// J runs to r - k - 1.
  kTight,
  /// J runs to 2r - 3, as for the pinched sets.
  kFull,
};

/// Closed form for the loop-space Betti numbers of the two-disc sphere
/// example, n >= 1.
std::uint64_t loop_betti_example(int n, OddBound bound = OddBound::kTight);

/// Power series coefficients of numerator / denominator.
struct RecurrenceSeries {
  std::vector<std::int64_t> numerator;
  std::vector<std::int64_t> denominator;
  std::vector<std::int64_t> coeffs;

  /// Expands through degree n_max; the denominator must start with +-1.
  static RecurrenceSeries expand(std::vector<std::int64_t> numerator, std::vector<std::int64_t> denominator,
                                 int n_max);
  /// Whether sum_k denominator[k] * coeffs[n - k] = numerator[n] for all n.
  bool satisfies_recurrence() const;
};

/// (1 - x) / (1 - x - 2x^2 + x^3) through degree n_max.
RecurrenceSeries poincare_coeffs(int n_max);

}  // namespace stunted
