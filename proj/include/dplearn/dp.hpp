#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dplearn/distribution.hpp"
#include "dplearn/hypothesis.hpp"
#include "dplearn/rng.hpp"

namespace dplearn {

struct PrivacyBudget {
  double epsilon = 0;
  double delta = 0;
};

struct ScoredCandidate {
  std::uint64_t candidate = 0;
  double score = 0;
};

// Audit trail for a single mechanism invocation.
struct MechanismTranscript {
  std::uint64_t input_fingerprint = 0;
  std::string output;
  std::uint64_t seed = 0;
  PrivacyBudget spent;
};

// Samples index i with probability proportional to
// exp(epsilon * score_i / (2 * sensitivity)); (epsilon, 0)-DP when scores have
// the stated sensitivity under dataset adjacency.
std::size_t exponential_mechanism(std::span<const double> scores, double sensitivity,
                                  double epsilon, RandomSource& rng,
                                  MechanismTranscript* transcript = nullptr);

std::vector<long double> exponential_mechanism_distribution(std::span<const double> scores,
                                                            double sensitivity,
                                                            double epsilon);

// One user's candidate set; elements are opaque comparable ids.
using SparseSet = std::vector<std::uint64_t>;

struct SparseSelectionResult {
  std::optional<std::uint64_t> value;  // nullopt = bottom
  MechanismTranscript transcript;
};

// Private sparse selection: picks an element contained in many of the m
// input sets, with error independent of the universe size. Implemented as a
// single exponential mechanism over the union plus a bottom candidate whose
// fixed score tau is calibrated so that elements seen by only one user are
// output with probability at most delta. (epsilon, delta)-DP under
// replacement of one user's whole set.
SparseSelectionResult sparse_selection(const std::vector<SparseSet>& sets, double epsilon,
                                       double delta, double beta, RandomSource& rng);

// Smallest integer tau whose leakage bound is at most delta.
int sparse_selection_threshold(double epsilon, double delta, std::size_t ell);

// The leakage bound for a given tau (exposed for tests).
double sparse_selection_delta_bound(int tau, double epsilon, std::size_t ell);

// Error envelope constant * (1/eps) * ln(m*ell / (eps*delta*beta)).
double sparse_selection_error_bound(std::size_t m, std::size_t ell, double epsilon,
                                    double delta, double beta, double constant = 4.0);

// Chooses h from H with exponential weights on -(mistake count); outputs a
// hypothesis with error at most twice the best in H given enough samples.
Hypothesis generic_learner(const HypothesisClass& h, const Dataset& s, double alpha,
                           double beta, double epsilon, RandomSource& rng,
                           MechanismTranscript* transcript = nullptr);

// constant * (log|H| + log(1/beta)) / (alpha * epsilon).
int generic_learner_sample_bound(std::size_t h_size, double alpha, double beta,
                                 double epsilon, double constant = 1.0);

// ---------------------------------------------------------------------------
// Exact output distributions and the privacy auditor. Distributions map a
// stable output key to its exact probability; keys are stringified so that
// heterogeneous mechanisms share one auditor.
// ---------------------------------------------------------------------------

using AuditDistribution = std::map<std::string, long double>;

AuditDistribution em_audit_distribution(std::span<const double> scores,
                                        std::span<const std::string> names,
                                        double sensitivity, double epsilon);

AuditDistribution sparse_audit_distribution(const std::vector<SparseSet>& sets,
                                            double epsilon, double delta);

AuditDistribution generic_learner_audit_distribution(const HypothesisClass& h,
                                                     const Dataset& s, double epsilon);

struct AdjacentPair {
  AuditDistribution left;
  AuditDistribution right;
  std::string description;
};

struct DpViolationReport {
  double max_violation = 0;  // max over ordered pairs of sum (P - e^eps P')_+ - delta
  std::size_t pairs_checked = 0;
  std::string worst_pair;
};

// Evaluates the DP inequality over every event on the finite output space for
// each pair, in both directions.
DpViolationReport verify_dp(const std::vector<AdjacentPair>& pairs, double epsilon,
                            double delta);

// Fingerprint helper shared by transcripts.
std::uint64_t fingerprint_bytes(const void* data, std::size_t len, std::uint64_t seed = 0);

}  // namespace dplearn
