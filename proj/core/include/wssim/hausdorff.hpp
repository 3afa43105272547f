#pragma once

#include <span>
#include <stdexcept>

namespace wssim {

class EmptySetError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// (1/|A|) * sum over a in A of max over b in B of simfn(a, b).
///
/// Similarity form of the directed modified Hausdorff distance: with
/// d = 1 - simfn this equals 1 - g_d(A, B). Rows are summed in input order
/// so results are bit-reproducible.
template <typename A, typename B, typename SimFn>
double directed_similarity(std::span<const A> lhs, std::span<const B> rhs, SimFn&& simfn) {
  if (lhs.empty() || rhs.empty()) throw EmptySetError("directed_similarity: empty set");
  double total = 0.0;
  for (const auto& a : lhs) {
    double best = 0.0;
    bool first = true;
    for (const auto& b : rhs) {
      const double s = simfn(a, b);
      if (first || s > best) best = s;
      first = false;
    }
    total += best;
  }
  return total / static_cast<double>(lhs.size());
}

/// min(directed(A,B), directed(B,A)). simfn is called as simfn(a, b) for the
/// first direction and simfn(b, a) for the second.
template <typename T, typename SimFn>
double set_similarity(std::span<const T> lhs, std::span<const T> rhs, SimFn&& simfn) {
  const double forward = directed_similarity(lhs, rhs, simfn);
  const double backward = directed_similarity(rhs, lhs, simfn);
  return forward < backward ? forward : backward;
}

} // namespace wssim
