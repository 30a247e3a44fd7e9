#include "dplearn/hypothesis.hpp"

#include <algorithm>

namespace dplearn {

Hypothesis::Hypothesis(std::vector<Label> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > kMaxDomainSize)
    throw ValidationError("hypothesis label vector must have length in [1, 64]");
  for (Label l : labels_)
    if (l != 1 && l != -1) throw ValidationError("labels must be -1 or +1");
}

std::uint64_t Hypothesis::packed() const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == 1) bits |= std::uint64_t{1} << i;
  return bits;
}

Hypothesis Hypothesis::negated() const {
  std::vector<Label> flipped(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i)
    flipped[i] = static_cast<Label>(-labels_[i]);
  return Hypothesis(std::move(flipped));
}

bool ConstraintSet::same_multiset(const ConstraintSet& other) const {
  if (pairs_.size() != other.pairs_.size()) return false;
  auto a = pairs_;
  auto b = other.pairs_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void HypothesisClass::check_domain(int n) {
  if (n < 1 || n > kMaxDomainSize)
    throw ValidationError("domain size must be in [1, 64]");
}

HypothesisClass::HypothesisClass(int domain_size, std::vector<Hypothesis> hypotheses)
    : domain_size_(domain_size), hyps_(std::move(hypotheses)) {
  check_domain(domain_size);
  for (const Hypothesis& h : hyps_)
    if (h.domain_size() != domain_size_)
      throw ValidationError("hypothesis domain size mismatch");
  std::sort(hyps_.begin(), hyps_.end());
  hyps_.erase(std::unique(hyps_.begin(), hyps_.end()), hyps_.end());
  keys_.reserve(hyps_.size());
  for (const Hypothesis& h : hyps_) keys_.push_back(h.packed());
}

bool HypothesisClass::contains(const Hypothesis& h) const {
  return std::binary_search(hyps_.begin(), hyps_.end(), h);
}

bool HypothesisClass::subset_of(const HypothesisClass& other) const {
  return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

std::uint64_t HypothesisClass::fingerprint() const {
  return std::hash<std::vector<std::uint64_t>>{}(keys_) ^
         (std::uint64_t{0x9e37} << 32 | static_cast<std::uint64_t>(domain_size_));
}

HypothesisClass restrict(const HypothesisClass& cls, DomainPoint x, Label b) {
  if (static_cast<int>(x) >= cls.domain_size())
    throw ValidationError("constraint point outside domain");
  std::vector<Hypothesis> kept;
  for (const Hypothesis& h : cls)
    if (h(x) == b) kept.push_back(h);
  return HypothesisClass(cls.domain_size(), std::move(kept));
}

HypothesisClass restrict(const HypothesisClass& cls, const ConstraintSet& constraints) {
  for (const auto& [x, b] : constraints.pairs())
    if (static_cast<int>(x) >= cls.domain_size())
      throw ValidationError("constraint point outside domain");
  std::vector<Hypothesis> kept;
  for (const Hypothesis& h : cls) {
    bool ok = true;
    for (const auto& [x, b] : constraints.pairs()) {
      if (h(x) != b) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(h);
  }
  return HypothesisClass(cls.domain_size(), std::move(kept));
}

HypothesisClass class_union(const HypothesisClass& a, const HypothesisClass& b) {
  if (a.domain_size() != b.domain_size())
    throw ValidationError("class union with mismatched domains");
  std::vector<Hypothesis> all = a.hypotheses();
  all.insert(all.end(), b.begin(), b.end());
  return HypothesisClass(a.domain_size(), std::move(all));
}

}  // namespace dplearn
