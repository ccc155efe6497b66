// Sparse tensor terms indexed by a flattened multi-index, with the
// sort-and-fold normalization used for equality checks in tensor powers
// too large to densify.
#pragma once

#include "qbw/field.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace qbw::detail {

using Terms = std::vector<std::pair<std::int64_t, Scalar>>;

// Sorts by index and folds duplicates, dropping zeros.
inline void fold_terms(Terms& t) {
  std::sort(t.begin(), t.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::int64_t idx = t[i].first;
    Scalar acc = t[i].second;
    for (++i; i < t.size() && t[i].first == idx; ++i) acc += t[i].second;
    if (!acc.is_zero()) t[out++] = {idx, std::move(acc)};
  }
  t.resize(out);
}

inline bool terms_equal(Terms a, Terms b) {
  fold_terms(a);
  fold_terms(b);
  return a == b;
}

}  // namespace qbw::detail
