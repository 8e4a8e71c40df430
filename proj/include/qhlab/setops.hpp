#pragma once

// Finite element-set arithmetic following the paper's conventions: D^n means
// products of at most n elements of D (the empty product, the identity, is
// included), and A.B is the elementwise product set.

#include <set>
#include <vector>

#include "qhlab/element.hpp"
#include "qhlab/group.hpp"

namespace qhlab {

using ElementSet = std::set<Element>;  // ordered, so iteration is deterministic

inline ElementSet mul_sets(const GroupHandle& g, const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(g->mul(x, y));
  return out;
}

inline ElementSet inverse_set(const GroupHandle& g, const ElementSet& a) {
  ElementSet out;
  for (const auto& x : a) out.insert(g->inv(x));
  return out;
}

// D^n = { products of at most n elements of D }, including the identity.
inline ElementSet pow_at_most(const GroupHandle& g, const ElementSet& d, int n) {
  ElementSet out{g->identity()};
  ElementSet layer = out;
  for (int i = 0; i < n; ++i) {
    layer = mul_sets(g, layer, d);
    out.insert(layer.begin(), layer.end());
  }
  return out;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline bool subset_of(const ElementSet& a, const ElementSet& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

inline ElementSet to_set(const std::vector<Element>& v) { return ElementSet(v.begin(), v.end()); }

}  // namespace qhlab
