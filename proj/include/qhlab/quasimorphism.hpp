#pragma once

// Rational-valued quasimorphisms: Brooks counting functions on free groups,
// exponent sums, floor composition, defect suprema and homogenization
// estimates. All values are exact rationals; no floating point in here.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qhlab/ball.hpp"
#include "qhlab/core.hpp"
#include "qhlab/element.hpp"
#include "qhlab/group.hpp"

namespace qhlab {

struct Quasimorphism {
  GroupHandle source;
  std::function<Rational(const Element&)> eval;
  std::string label;
};

namespace detail {

// Greedy left-to-right count of non-overlapping occurrences; for equal-length
// patterns this equals the maximum number of disjoint occurrences, which is
// what makes h_w(g^-1) = -h_w(g) exact.
inline int count_nonoverlapping(const std::vector<std::int32_t>& pattern,
                                const std::vector<std::int32_t>& text) {
  if (pattern.empty() || text.size() < pattern.size()) return 0;
  int count = 0;
  std::size_t i = 0;
  while (i + pattern.size() <= text.size()) {
    bool match = true;
    for (std::size_t j = 0; j < pattern.size(); ++j)
      if (text[i + j] != pattern[j]) {
        match = false;
        break;
      }
    if (match) {
      ++count;
      i += pattern.size();
    } else {
      ++i;
    }
  }
  return count;
}

}  // namespace detail

// Brooks counting quasimorphism h_w on a free group: occurrences of w minus
// occurrences of w^-1 in the reduced word, counted non-overlapping
// left-to-right ("little" counting), which makes h_w(w^n) = n exact.
inline Quasimorphism brooks_counting(const GroupHandle& g, const Element& w) {
  if (g->kind() != GroupKind::Free) throw WrongKind("Brooks counting needs a free group");
  g->check_member(w);
  const auto& letters = w.as<FreeWord>().letters;
  if (letters.empty()) throw NotCyclicallyReduced("w must be nonempty");
  if (letters.size() > 1 && letters.front() == -letters.back())
    throw NotCyclicallyReduced("w must be cyclically reduced");
  Element winv = g->inv(w);
  std::vector<std::int32_t> pat = letters;
  std::vector<std::int32_t> pat_inv = winv.as<FreeWord>().letters;
  Quasimorphism q;
  q.source = g;
  q.label = "brooks(w)";
  q.eval = [pat, pat_inv](const Element& x) {
    const auto& txt = x.as<FreeWord>().letters;
    return Rational(detail::count_nonoverlapping(pat, txt) -
                    detail::count_nonoverlapping(pat_inv, txt));
  };
  return q;
}

// Exponent-sum homomorphism of the i-th generator (0-based) on a free or
// free abelian group.
inline Quasimorphism exponent_sum(const GroupHandle& g, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= g->generators().size())
    throw IndexOutOfRange("generator index out of range");
  Quasimorphism q;
  q.source = g;
  q.label = "exp_sum(" + g->generator_names()[static_cast<std::size_t>(index)] + ")";
  if (g->kind() == GroupKind::Free) {
    std::int32_t target = static_cast<std::int32_t>(index) + 1;
    q.eval = [target](const Element& x) {
      Int sum = 0;
      for (auto l : x.as<FreeWord>().letters) {
        if (l == target) ++sum;
        if (l == -target) --sum;
      }
      return Rational(sum);
    };
  } else if (g->kind() == GroupKind::FreeAbelian) {
    q.eval = [index](const Element& x) {
      return Rational(x.as<ExponentVec>().exps[static_cast<std::size_t>(index)]);
    };
  } else {
    throw WrongKind("exponent sum needs a free or free abelian group");
  }
  return q;
}

inline Quasimorphism constant_zero(const GroupHandle& g) {
  return Quasimorphism{g, [](const Element&) { return Rational(0); }, "zero"};
}

inline Quasimorphism scale(const Quasimorphism& q, const Rational& factor) {
  auto eval = q.eval;
  return Quasimorphism{q.source, [eval, factor](const Element& x) { return eval(x) * factor; },
                       "scaled " + q.label};
}

inline Rational rational_floor(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return Rational(q);
}

// g -> floor(phi(g)); stays a quasimorphism, with defect exceeding the
// original by at most 2.
inline Quasimorphism floor_compose(const Quasimorphism& q) {
  auto eval = q.eval;
  return Quasimorphism{q.source,
                       [eval](const Element& x) { return rational_floor(eval(x)); },
                       "floor(" + q.label + ")"};
}

// max |phi(xy) - phi(x) - phi(y)| over ball pairs
inline Rational defect_sup(const Quasimorphism& q, const Ball& b) {
  if (b.group() != q.source) throw GroupMismatch("ball is over a different group");
  std::vector<Element> elems = b.elements();
  std::vector<Rational> vals;
  vals.reserve(elems.size());
  for (const auto& x : elems) vals.push_back(q.eval(x));
  Rational best = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      Rational d = q.eval(q.source->mul(elems[i], elems[j])) - vals[i] - vals[j];
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  }
  return best;
}

struct HomogenizeReport {
  std::vector<Rational> sequence;  // phi(g^n)/n for n = 1..n_max
  Rational estimate;               // last value
  Rational oscillation;            // max - min over the tail half
};

inline HomogenizeReport homogenize_estimate(const Quasimorphism& q, const Element& g,
                                            int n_max) {
  if (n_max < 1) throw InvalidParameters("n_max must be >= 1");
  HomogenizeReport rep;
  Element p = q.source->identity();
  for (int n = 1; n <= n_max; ++n) {
    p = q.source->mul(p, g);
    rep.sequence.push_back(q.eval(p) / n);
  }
  rep.estimate = rep.sequence.back();
  std::size_t tail_start = rep.sequence.size() / 2;
  Rational lo = rep.sequence[tail_start], hi = rep.sequence[tail_start];
  for (std::size_t i = tail_start; i < rep.sequence.size(); ++i) {
    if (rep.sequence[i] < lo) lo = rep.sequence[i];
    if (rep.sequence[i] > hi) hi = rep.sequence[i];
  }
  rep.oscillation = hi - lo;
  return rep;
}

}  // namespace qhlab
