#include "dplearn/generators.hpp"

#include <set>

namespace dplearn {

namespace {
Hypothesis from_bits(int n, std::uint64_t bits) {
  std::vector<Label> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = (bits >> i) & 1 ? Label{1} : Label{-1};
  return Hypothesis(std::move(labels));
}
}  // namespace

HypothesisClass make_thresholds(int n) {
  std::vector<Hypothesis> hyps;
  hyps.reserve(n + 1);
  for (int t = 0; t <= n; ++t) {
    std::vector<Label> labels(n);
    for (int x = 0; x < n; ++x) labels[x] = x >= t ? Label{1} : Label{-1};
    hyps.emplace_back(std::move(labels));
  }
  return HypothesisClass(n, std::move(hyps));
}

HypothesisClass make_negpt(int n) {
  std::vector<Hypothesis> hyps;
  hyps.reserve(2 * n);
  for (int p = 0; p < n; ++p) {
    std::vector<Label> point(n, Label{-1});
    point[p] = 1;
    Hypothesis delta(std::move(point));
    hyps.push_back(delta.negated());
    hyps.push_back(std::move(delta));
  }
  return HypothesisClass(n, std::move(hyps));
}

HypothesisClass make_all_functions(int n) {
  if (n > 20) throw CapacityError("make_all_functions limited to n <= 20");
  std::vector<Hypothesis> hyps;
  hyps.reserve(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
    hyps.push_back(from_bits(n, bits));
  return HypothesisClass(n, std::move(hyps));
}

HypothesisClass make_random(int n, int m, RandomSource& rng) {
  if (n < 1 || n > kMaxDomainSize) throw ValidationError("domain size must be in [1, 64]");
  if (m < 0) throw ValidationError("negative class size");
  if (n < 63 && static_cast<std::uint64_t>(m) > (std::uint64_t{1} << n))
    throw ValidationError("requested more hypotheses than 2^N distinct ones");
  std::set<std::uint64_t> seen;
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  while (static_cast<int>(seen.size()) < m) seen.insert(rng.next_u64() & mask);
  std::vector<Hypothesis> hyps;
  hyps.reserve(m);
  for (std::uint64_t bits : seen) hyps.push_back(from_bits(n, bits));
  return HypothesisClass(n, std::move(hyps));
}

HypothesisClass make_random(int n, int m, std::uint64_t seed) {
  RandomSource rng(seed);
  return make_random(n, m, rng);
}

}  // namespace dplearn
