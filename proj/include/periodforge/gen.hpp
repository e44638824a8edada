#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "periodforge/automorphic.hpp"
#include "periodforge/hodge.hpp"

namespace pf::gen {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive

// valid Langlands parameter of rank n; spread bounds |a|, l
LanglandsParameter random_parameter(Rng& rng, int n, const FieldProfile& prof, int spread = 6);

// regular pair (M of rank t+1, N of rank t) satisfying strong interlace for some Q.
// Real profiles get random diagonal signs.
std::pair<HodgeFamily, HodgeFamily> interlaced_pair(Rng& rng, int t, const FieldProfile& prof);

// pure dominant weight of rank n; even purity unless odd_ok; CM results are in good position
WeightVector good_weight(Rng& rng, int n, const FieldProfile& prof, bool odd_ok = false);

// totally real, odd purity, strictly dominant
WeightVector strict_odd_weight(Rng& rng, int n, const FieldProfile& prof);

}  // namespace pf::gen
