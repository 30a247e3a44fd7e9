#pragma once

#include <vector>

#include "dplearn/hypothesis.hpp"
#include "dplearn/rational.hpp"
#include "dplearn/rng.hpp"

namespace dplearn {

struct Atom {
  DomainPoint x = 0;
  Label y = 1;
  Rat w;
};

// Finite-support probability measure over X x {-1,+1} with exact weights.
class Distribution {
 public:
  Distribution(int domain_size, std::vector<Atom> atoms);

  int domain_size() const { return domain_size_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  Rat weight(DomainPoint x, Label y) const;
  Rat total() const;

 private:
  int domain_size_;
  std::vector<Atom> atoms_;  // sorted by (x, y), zero weights dropped
};

// err_D(f): probability mass where f disagrees with the label.
Rat error(const Hypothesis& f, const Distribution& d);

// Fraction of misclassified examples.
Rat empirical_error(const Hypothesis& f, const Dataset& s);

Distribution empirical_distribution(const Dataset& s, int domain_size);

// { f in class : err_D(f) <= alpha }, exact comparison.
HypothesisClass error_band(const HypothesisClass& cls, const Distribution& d, const Rat& alpha);

// n i.i.d. draws; deterministic given the RandomSource.
Dataset sample(const Distribution& d, int n, RandomSource& rng);

// Some hypothesis has error exactly 0.
bool is_realizable(const HypothesisClass& cls, const Distribution& d);
bool is_realizable(const HypothesisClass& cls, const Dataset& s);

// sup_f |err_D(f) - err_D2(f)| over the class, exact.
Rat sup_error_gap(const HypothesisClass& cls, const Distribution& d1, const Distribution& d2);

}  // namespace dplearn
