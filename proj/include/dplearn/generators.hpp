#pragma once

#include "dplearn/hypothesis.hpp"
#include "dplearn/rng.hpp"

namespace dplearn {

// N+1 thresholds h_t(x) = +1 iff x >= t, for t in {0,...,N}; t = N is all -1.
HypothesisClass make_thresholds(int n);

// Point functions and negated point functions {delta_x, -delta_x : x in X}.
HypothesisClass make_negpt(int n);

// All 2^N label vectors.
HypothesisClass make_all_functions(int n);

// M distinct uniformly random hypotheses.
HypothesisClass make_random(int n, int m, std::uint64_t seed);
HypothesisClass make_random(int n, int m, RandomSource& rng);

}  // namespace dplearn
