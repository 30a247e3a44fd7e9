#pragma once

#include <optional>
#include <vector>

#include "dplearn/hypothesis.hpp"

namespace dplearn {

// Complete X-valued binary tree of depth n: levels[t] lists the point
// labeling each node at depth t, indexed by the path bits encoded as an
// integer (bit t-1 ... bit 0, where bit i is 1 iff the (i+1)-th branch
// took label +1).
struct ShatteredTree {
  int depth = 0;
  std::vector<std::vector<DomainPoint>> levels;
};

struct DimensionReport {
  int ldim = -1;
  int vc = -1;
  std::optional<ShatteredTree> witness;
};

// Littlestone dimension. Conventions: ldim(empty) = -1, ldim(singleton) = 0.
// Memoized on the canonical class fingerprint.
int ldim(const HypothesisClass& cls);

// Definitional check by enumerating every complete depth-n tree; throws
// CapacityError when more than max_trees trees would be needed.
int ldim_oracle(const HypothesisClass& cls, std::size_t max_trees = 1000000);

// Depth-ldim shattered tree; nullopt when ldim <= 0.
std::optional<ShatteredTree> ldim_witness(const HypothesisClass& cls);

bool verify_shattered(const HypothesisClass& cls, const ShatteredTree& tree);

int vcdim(const HypothesisClass& cls);

// Class indexed by X acting on hypotheses, x(f) = f(x); duplicates removed.
HypothesisClass dual_class(const HypothesisClass& cls);

int dual_vcdim(const HypothesisClass& cls);
int dual_ldim(const HypothesisClass& cls);

// Largest T <= cap admitting the threshold pattern f_i(x_j) = +1 iff i >= j.
int tdim(const HypothesisClass& cls, int cap = 12);

// Uniform-convergence radius C0 * sqrt((d_V + ln(1/gamma)) / n).
double alpha_bound(int n, double gamma, int d_v, double c0);

DimensionReport compute_dimensions(const HypothesisClass& cls, bool with_witness = false);

// Drops the shared ldim/irreducibility memo tables (mainly for tests).
void clear_dimension_cache();

}  // namespace dplearn
