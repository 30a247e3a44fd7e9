#include "dplearn/dp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dplearn/errors.hpp"

namespace dplearn {

std::uint64_t fingerprint_bytes(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::vector<long double> softmax(std::span<const double> exponents) {
  long double top = -INFINITY;
  for (double e : exponents) top = std::max<long double>(top, e);
  std::vector<long double> weights(exponents.size());
  long double sum = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    weights[i] = std::exp(static_cast<long double>(exponents[i]) - top);
    sum += weights[i];
  }
  for (auto& w : weights) w /= sum;
  return weights;
}

std::size_t sample_index(const std::vector<long double>& probs, RandomSource& rng) {
  long double u = rng.uniform();
  long double acc = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

}  // namespace

std::vector<long double> exponential_mechanism_distribution(std::span<const double> scores,
                                                            double sensitivity,
                                                            double epsilon) {
  if (scores.empty()) throw ValidationError("exponential mechanism needs candidates");
  if (sensitivity <= 0) throw ValidationError("sensitivity must be positive");
  if (epsilon <= 0) throw ValidationError("epsilon must be positive");
  std::vector<double> exponents(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    exponents[i] = epsilon * scores[i] / (2.0 * sensitivity);
  return softmax(exponents);
}

std::size_t exponential_mechanism(std::span<const double> scores, double sensitivity,
                                  double epsilon, RandomSource& rng,
                                  MechanismTranscript* transcript) {
  auto probs = exponential_mechanism_distribution(scores, sensitivity, epsilon);
  std::size_t chosen = sample_index(probs, rng);
  if (transcript) {
    transcript->input_fingerprint =
        fingerprint_bytes(scores.data(), scores.size() * sizeof(double));
    transcript->output = std::to_string(chosen);
    transcript->seed = rng.seed();
    transcript->spent = PrivacyBudget{epsilon, 0};
  }
  return chosen;
}

double sparse_selection_delta_bound(int tau, double epsilon, std::size_t ell) {
  // Mass that elements private to one user (count exactly 1) can receive,
  // plus the normalizer shift they cause for shared outputs. q bounds the
  // weight ratio of such an element against the bottom candidate's floor.
  const double q =
      static_cast<double>(ell) * std::exp(-epsilon * (static_cast<double>(tau) - 1.0) / 2.0);
  if (q >= 1.0) return HUGE_VAL;
  return q * (1.0 + std::exp(epsilon) / (1.0 - q));
}

int sparse_selection_threshold(double epsilon, double delta, std::size_t ell) {
  if (epsilon <= 0 || epsilon > 1) throw ValidationError("sparse selection needs epsilon in (0,1]");
  if (delta <= 0 || delta >= 1) throw ValidationError("sparse selection needs delta in (0,1)");
  if (ell == 0) ell = 1;
  int tau = 1;
  while (sparse_selection_delta_bound(tau, epsilon, ell) > delta) {
    ++tau;
    if (tau > 100000000) throw CapacityError("sparse selection threshold out of range");
  }
  return tau;
}

double sparse_selection_error_bound(std::size_t m, std::size_t ell, double epsilon,
                                    double delta, double beta, double constant) {
  return constant / epsilon *
         std::log(static_cast<double>(m) * static_cast<double>(std::max<std::size_t>(ell, 1)) /
                  (epsilon * delta * beta));
}

namespace {

struct SparseCounts {
  std::vector<std::uint64_t> universe;  // sorted union
  std::vector<int> counts;
  std::size_t ell = 1;
};

SparseCounts sparse_counts(const std::vector<SparseSet>& sets) {
  SparseCounts out;
  std::set<std::uint64_t> universe;
  for (const SparseSet& s : sets) {
    out.ell = std::max(out.ell, s.size());
    std::set<std::uint64_t> dedup(s.begin(), s.end());
    if (dedup.size() != s.size()) throw ValidationError("user set contains duplicates");
    universe.insert(dedup.begin(), dedup.end());
  }
  out.universe.assign(universe.begin(), universe.end());
  out.counts.assign(out.universe.size(), 0);
  for (const SparseSet& s : sets)
    for (std::uint64_t u : s) {
      std::size_t idx =
          std::lower_bound(out.universe.begin(), out.universe.end(), u) - out.universe.begin();
      ++out.counts[idx];
    }
  return out;
}

// Weights over {bottom} + universe; bottom sits at index 0 with score tau.
std::vector<long double> sparse_weights(const SparseCounts& sc, int tau, double epsilon) {
  std::vector<double> exponents(sc.universe.size() + 1);
  exponents[0] = epsilon * static_cast<double>(tau) / 2.0;
  for (std::size_t i = 0; i < sc.universe.size(); ++i)
    exponents[i + 1] = epsilon * static_cast<double>(sc.counts[i]) / 2.0;
  return softmax(exponents);
}

}  // namespace

SparseSelectionResult sparse_selection(const std::vector<SparseSet>& sets, double epsilon,
                                       double delta, double beta, RandomSource& rng) {
  if (sets.empty()) throw ValidationError("sparse selection needs m >= 1 users");
  if (beta <= 0 || beta >= 1) throw ValidationError("sparse selection needs beta in (0,1)");
  SparseCounts sc = sparse_counts(sets);
  const int tau = sparse_selection_threshold(epsilon, delta, sc.ell);
  auto probs = sparse_weights(sc, tau, epsilon);
  std::size_t chosen = sample_index(probs, rng);

  SparseSelectionResult result;
  std::uint64_t fp = fingerprint_bytes(&tau, sizeof(tau));
  for (const SparseSet& s : sets)
    fp = fingerprint_bytes(s.data(), s.size() * sizeof(std::uint64_t), fp);
  result.transcript.input_fingerprint = fp;
  result.transcript.seed = rng.seed();
  result.transcript.spent = PrivacyBudget{epsilon, delta};
  if (chosen == 0) {
    result.value = std::nullopt;
    result.transcript.output = "bottom";
  } else {
    result.value = sc.universe[chosen - 1];
    result.transcript.output = std::to_string(*result.value);
  }
  return result;
}

Hypothesis generic_learner(const HypothesisClass& h, const Dataset& s, double alpha,
                           double beta, double epsilon, RandomSource& rng,
                           MechanismTranscript* transcript) {
  if (h.empty()) throw ValidationError("generic learner needs a nonempty class");
  if (s.size() < 1) throw ValidationError("generic learner needs n >= 1");
  (void)alpha;
  (void)beta;
  std::vector<double> scores(h.size());
  for (int i = 0; i < h.size(); ++i) {
    long long mistakes = 0;
    for (const LabeledExample& ex : s.examples)
      if (h[i](ex.x) != ex.y) ++mistakes;
    scores[i] = -static_cast<double>(mistakes);
  }
  // Replacing one example moves each mistake count by at most 1.
  std::size_t chosen = exponential_mechanism(scores, 1.0, epsilon, rng, transcript);
  if (transcript) {
    transcript->output = "h" + std::to_string(chosen);
    transcript->spent = PrivacyBudget{epsilon, 0};
  }
  return h[chosen];
}

int generic_learner_sample_bound(std::size_t h_size, double alpha, double beta,
                                 double epsilon, double constant) {
  if (h_size == 0) throw ValidationError("empty hypothesis set");
  if (alpha <= 0 || beta <= 0 || beta >= 1 || epsilon <= 0)
    throw ValidationError("generic learner bound needs alpha > 0, beta in (0,1), epsilon > 0");
  double n = constant * (std::log(static_cast<double>(h_size)) + std::log(1.0 / beta)) /
             (alpha * epsilon);
  return std::max(1, static_cast<int>(std::ceil(n)));
}

AuditDistribution em_audit_distribution(std::span<const double> scores,
                                        std::span<const std::string> names,
                                        double sensitivity, double epsilon) {
  if (names.size() != scores.size())
    throw ValidationError("audit names/scores length mismatch");
  auto probs = exponential_mechanism_distribution(scores, sensitivity, epsilon);
  AuditDistribution dist;
  for (std::size_t i = 0; i < probs.size(); ++i) dist[names[i]] += probs[i];
  return dist;
}

AuditDistribution sparse_audit_distribution(const std::vector<SparseSet>& sets,
                                            double epsilon, double delta) {
  if (sets.empty()) throw ValidationError("sparse selection needs m >= 1 users");
  SparseCounts sc = sparse_counts(sets);
  const int tau = sparse_selection_threshold(epsilon, delta, sc.ell);
  auto probs = sparse_weights(sc, tau, epsilon);
  AuditDistribution dist;
  dist["bottom"] = probs[0];
  for (std::size_t i = 0; i < sc.universe.size(); ++i)
    dist["u" + std::to_string(sc.universe[i])] = probs[i + 1];
  return dist;
}

AuditDistribution generic_learner_audit_distribution(const HypothesisClass& h,
                                                     const Dataset& s, double epsilon) {
  std::vector<double> scores(h.size());
  std::vector<std::string> names(h.size());
  for (int i = 0; i < h.size(); ++i) {
    long long mistakes = 0;
    for (const LabeledExample& ex : s.examples)
      if (h[i](ex.x) != ex.y) ++mistakes;
    scores[i] = -static_cast<double>(mistakes);
    names[i] = "h" + std::to_string(i);
  }
  return em_audit_distribution(scores, names, 1.0, epsilon);
}

DpViolationReport verify_dp(const std::vector<AdjacentPair>& pairs, double epsilon,
                            double delta) {
  DpViolationReport report;
  report.max_violation = -HUGE_VAL;
  const long double factor = std::exp(static_cast<long double>(epsilon));
  auto one_direction = [&](const AuditDistribution& p, const AuditDistribution& q,
                           const std::string& desc) {
    // The worst event is exactly the set of outputs with P > e^eps * Q, so
    // checking the positive-part sum covers all singleton and union events.
    long double excess = 0;
    for (const auto& [key, pv] : p) {
      auto it = q.find(key);
      long double qv = it == q.end() ? 0.0L : it->second;
      long double gap = pv - factor * qv;
      if (gap > 0) excess += gap;
    }
    double violation = static_cast<double>(excess) - delta;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_pair = desc;
    }
  };
  for (const AdjacentPair& pair : pairs) {
    one_direction(pair.left, pair.right, pair.description + " (left vs right)");
    one_direction(pair.right, pair.left, pair.description + " (right vs left)");
    ++report.pairs_checked;
  }
  if (pairs.empty()) report.max_violation = 0;
  return report;
}

}  // namespace dplearn
