#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dplearn/errors.hpp"

namespace dplearn {

// Points of an enumerated finite domain {0, ..., N-1}.
using DomainPoint = std::uint32_t;
// Binary labels, always -1 or +1.
using Label = std::int8_t;

constexpr int kMaxDomainSize = 64;

// A function X -> {-1,+1} stored as its full label vector.
class Hypothesis {
 public:
  explicit Hypothesis(std::vector<Label> labels);

  int domain_size() const { return static_cast<int>(labels_.size()); }
  Label operator()(DomainPoint x) const { return labels_[x]; }
  const std::vector<Label>& labels() const { return labels_; }

  // Bit i set iff label at point i is +1. Used as a canonical compact key.
  std::uint64_t packed() const;

  Hypothesis negated() const;

  friend bool operator==(const Hypothesis& a, const Hypothesis& b) {
    return a.labels_ == b.labels_;
  }
  friend bool operator<(const Hypothesis& a, const Hypothesis& b) {
    return a.labels_ < b.labels_;
  }

 private:
  std::vector<Label> labels_;
};

struct LabeledExample {
  DomainPoint x = 0;
  Label y = 1;
};

// Sequence of labeled examples; duplicates allowed.
struct Dataset {
  std::vector<LabeledExample> examples;
  int size() const { return static_cast<int>(examples.size()); }
};

// Ordered multiset of (point, label) constraints. Order is kept because
// ancestor sets report constraints along a root path.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<std::pair<DomainPoint, Label>> pairs)
      : pairs_(std::move(pairs)) {}

  void add(DomainPoint x, Label b) { pairs_.emplace_back(x, b); }
  void append(const ConstraintSet& other) {
    pairs_.insert(pairs_.end(), other.pairs_.begin(), other.pairs_.end());
  }
  const std::vector<std::pair<DomainPoint, Label>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // Multiset equality, ignoring order.
  bool same_multiset(const ConstraintSet& other) const;

 private:
  std::vector<std::pair<DomainPoint, Label>> pairs_;
};

// A finite set of distinct hypotheses over a shared enumerated domain.
// Hypotheses are kept sorted by label vector, so equal classes compare equal
// and the sorted packed vector is a canonical fingerprint.
class HypothesisClass {
 public:
  explicit HypothesisClass(int domain_size) : domain_size_(domain_size) {
    check_domain(domain_size);
  }
  HypothesisClass(int domain_size, std::vector<Hypothesis> hypotheses);

  int domain_size() const { return domain_size_; }
  int size() const { return static_cast<int>(hyps_.size()); }
  bool empty() const { return hyps_.empty(); }
  const Hypothesis& operator[](int i) const { return hyps_[i]; }
  const std::vector<Hypothesis>& hypotheses() const { return hyps_; }
  auto begin() const { return hyps_.begin(); }
  auto end() const { return hyps_.end(); }

  bool contains(const Hypothesis& h) const;
  bool subset_of(const HypothesisClass& other) const;

  // Canonical fingerprint: sorted packed label vectors.
  const std::vector<std::uint64_t>& key() const { return keys_; }
  std::uint64_t fingerprint() const;

  friend bool operator==(const HypothesisClass& a, const HypothesisClass& b) {
    return a.domain_size_ == b.domain_size_ && a.keys_ == b.keys_;
  }

 private:
  static void check_domain(int n);

  int domain_size_;
  std::vector<Hypothesis> hyps_;
  std::vector<std::uint64_t> keys_;
};

// Hypotheses consistent with a single constraint.
HypothesisClass restrict(const HypothesisClass& cls, DomainPoint x, Label b);
// Hypotheses consistent with every constraint; idempotent under repeats.
HypothesisClass restrict(const HypothesisClass& cls, const ConstraintSet& constraints);

HypothesisClass class_union(const HypothesisClass& a, const HypothesisClass& b);

}  // namespace dplearn

template <>
struct std::hash<std::vector<std::uint64_t>> {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (std::uint64_t x : v) {
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 29;
      h = (h ^ x) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
