#pragma once

// Quasi-homomorphisms between computable groups: defect sets and their dual,
// equivalence distance, composition, and executable forms of the elementary
// bounds (product, inverse, conjugation, commutator image, central
// perturbation, quasi-isomorphism constants, the "good" self-map criterion).
//
// Finiteness of a defect set is never asserted. A report only says that the
// set was stable within the probed horizon, meaning the last `stable_ties`
// radii produced identical sets.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhlab/ball.hpp"
#include "qhlab/core.hpp"
#include "qhlab/element.hpp"
#include "qhlab/group.hpp"
#include "qhlab/setops.hpp"
#include "qhlab/word_io.hpp"

namespace qhlab {

struct QHom {
  GroupHandle source;
  GroupHandle target;
  std::function<Element(const Element&)> eval;
  std::string label;

  Element operator()(const Element& g) const { return eval(g); }
};

inline QHom identity_qhom(const GroupHandle& g) {
  return QHom{g, g, [](const Element& x) { return x; }, "id"};
}

inline QHom compose(const QHom& psi, const QHom& phi) {
  if (phi.target != psi.source)
    throw GroupMismatch("cannot compose " + psi.label + " after " + phi.label);
  auto f = phi.eval;
  auto s = psi.eval;
  return QHom{phi.source, psi.target,
              [f, s](const Element& x) { return s(f(x)); },
              psi.label + "." + phi.label};
}

enum class GrowthVerdict { StableWithin, GrowingAt };

inline const char* to_string(GrowthVerdict v) {
  return v == GrowthVerdict::StableWithin ? "stable-within-horizon" : "growing-at-horizon";
}

// Radius-indexed growth table of a set of elements.
struct DefectReport {
  std::vector<int> radii;
  std::vector<std::size_t> set_sizes;
  std::vector<Element> elements_at_horizon;  // sorted
  std::vector<Element> new_at_horizon;       // first seen at the last radius
  GrowthVerdict verdict = GrowthVerdict::GrowingAt;
  int horizon = 0;
  bool budget_exceeded = false;

  bool stable() const { return verdict == GrowthVerdict::StableWithin; }

  // deterministic witness for a growing verdict
  std::optional<Element> growth_witness() const {
    if (new_at_horizon.empty()) return std::nullopt;
    return new_at_horizon.back();
  }
};

namespace detail {

inline GrowthVerdict growth_verdict(const std::vector<std::size_t>& sizes, int stable_ties) {
  if (static_cast<int>(sizes.size()) < stable_ties) return GrowthVerdict::GrowingAt;
  for (int i = 1; i < stable_ties; ++i)
    if (sizes[sizes.size() - 1 - static_cast<std::size_t>(i)] != sizes.back())
      return GrowthVerdict::GrowingAt;
  return GrowthVerdict::StableWithin;
}

// Generic radius-stratified growth table over ball pairs. `emit` maps a pair
// to the contributed element.
template <class Emit>
DefectReport pair_growth_table(const Ball& b, int stable_ties, Emit emit) {
  DefectReport rep;
  rep.horizon = b.radius();
  rep.budget_exceeded = !b.complete();
  ElementSet acc;
  std::vector<Element> seen = b.strata()[0];
  for (int r = 1; r <= b.radius(); ++r) {
    const auto& stratum = b.strata()[static_cast<std::size_t>(r)];
    // new pairs at radius r: (new, old), (old, new), (new, new)
    for (const auto& x : stratum) {
      for (const auto& y : seen) {
        acc.insert(emit(x, y));
        acc.insert(emit(y, x));
      }
      for (const auto& y : stratum) acc.insert(emit(x, y));
    }
    seen.insert(seen.end(), stratum.begin(), stratum.end());
    rep.radii.push_back(r);
    rep.set_sizes.push_back(acc.size());
  }
  if (rep.radii.empty()) {
    rep.radii.push_back(0);
    acc.insert(emit(b.group()->identity(), b.group()->identity()));
    rep.set_sizes.push_back(acc.size());
  }
  rep.elements_at_horizon.assign(acc.begin(), acc.end());
  rep.verdict = growth_verdict(rep.set_sizes, stable_ties);
  return rep;
}

}  // namespace detail

// D(phi) = { phi(y)^-1 phi(x)^-1 phi(xy) } over pairs of the radius-r ball,
// for r = 1..R.
inline DefectReport defect_set(const QHom& phi, const Ball& source_ball,
                               int stable_ties = 3) {
  if (source_ball.group() != phi.source) throw GroupMismatch("ball is not over phi's source");
  const GroupHandle& h = phi.target;
  return detail::pair_growth_table(source_ball, stable_ties,
                                   [&](const Element& x, const Element& y) {
                                     Element fx = phi(x), fy = phi(y);
                                     Element fxy = phi(phi.source->mul(x, y));
                                     return h->mul(h->inv(fy), h->mul(h->inv(fx), fxy));
                                   });
}

inline DefectReport defect_set(const QHom& phi, int radius, BallOptions opts = {},
                               int stable_ties = 3) {
  return defect_set(phi, Ball(phi.source, phi.source->generators(), radius, opts), stable_ties);
}

// Dual defect set  D~(phi) = { phi(x) phi(y) phi(xy)^-1 }.
inline DefectReport dual_defect_set(const QHom& phi, const Ball& source_ball,
                                    int stable_ties = 3) {
  if (source_ball.group() != phi.source) throw GroupMismatch("ball is not over phi's source");
  const GroupHandle& h = phi.target;
  return detail::pair_growth_table(source_ball, stable_ties,
                                   [&](const Element& x, const Element& y) {
                                     Element fx = phi(x), fy = phi(y);
                                     Element fxy = phi(phi.source->mul(x, y));
                                     return h->mul(h->mul(fx, fy), h->inv(fxy));
                                   });
}

inline DefectReport dual_defect_set(const QHom& phi, int radius, BallOptions opts = {},
                                    int stable_ties = 3) {
  return dual_defect_set(phi, Ball(phi.source, phi.source->generators(), radius, opts),
                         stable_ties);
}

// sup over the ball of d_target(phi(x), phi'(x)), measured with a cutoff.
inline Distance equiv_distance(const QHom& phi, const QHom& phi2, const Ball& source_ball,
                               WordMetric& target_metric, int horizon) {
  if (phi.source != phi2.source || phi.target != phi2.target)
    throw GroupMismatch("maps must share source and target");
  int best = 0;
  for (const auto& x : source_ball.elements()) {
    Distance d = target_metric(phi(x), phi2(x), horizon);
    if (d.above_horizon) return Distance::above(horizon);
    if (d.value > best) best = d.value;
  }
  return Distance::exact(best);
}

inline Distance equiv_distance(const QHom& phi, const QHom& phi2, int radius, int horizon,
                               BallOptions opts = {}) {
  Ball b(phi.source, phi.source->generators(), radius, opts);
  WordMetric m(phi.target, opts);
  return equiv_distance(phi, phi2, b, m, horizon);
}

// --- elementary bound checks ------------------------------------------------

struct CheckResult {
  bool passed = true;
  std::size_t samples = 0;
  std::string witness;  // first violating input, as generator words
  std::string note;
};

// phi(x1...xn) = phi(x1)...phi(xn) d with d a product of at most n-1 defect
// elements, with D taken from the same radius. A violation signals that the
// probing radius was too small; it is reported, not thrown.
inline CheckResult check_product_bound(const QHom& phi, const Ball& source_ball, int n,
                                       std::size_t samples = 2000,
                                       int stable_ties = 3) {
  if (n < 2) throw InvalidParameters("tuple length must be >= 2");
  DefectReport d = defect_set(phi, source_ball, stable_ties);
  ElementSet dpow = pow_at_most(phi.target, to_set(d.elements_at_horizon), n - 1);
  std::vector<Element> elems = source_ball.elements();
  CheckResult res;
  SplitMix64 rng(0x70d0c7 + static_cast<std::uint64_t>(n));
  const GroupHandle& g = phi.source;
  const GroupHandle& h = phi.target;
  for (std::size_t k = 0; k < samples; ++k) {
    Element prod = g->identity();
    Element image = h->identity();
    std::vector<Element> tuple;
    for (int i = 0; i < n; ++i) {
      const Element& x = elems[rng.below(elems.size())];
      tuple.push_back(x);
      prod = g->mul(prod, x);
      image = h->mul(image, phi(x));
    }
    Element diff = h->mul(h->inv(image), phi(prod));
    ++res.samples;
    if (!dpow.count(diff)) {
      res.passed = false;
      std::string w;
      for (const auto& x : tuple) w += (w.empty() ? "" : " , ") + element_word(g, x);
      res.witness = w;
      res.note = "defect radius too small for this tuple";
      return res;
    }
  }
  return res;
}

// phi(x)^-1 = phi(x^-1) d with d in D^2.
inline CheckResult check_inverse_bound(const QHom& phi, const Ball& source_ball,
                                       int stable_ties = 3) {
  DefectReport d = defect_set(phi, source_ball, stable_ties);
  ElementSet d2 = pow_at_most(phi.target, to_set(d.elements_at_horizon), 2);
  CheckResult res;
  const GroupHandle& g = phi.source;
  const GroupHandle& h = phi.target;
  for (const auto& x : source_ball.elements()) {
    // phi(x)^-1 = phi(x^-1) d  =>  d = phi(x^-1)^-1 phi(x)^-1
    Element d = h->mul(h->inv(phi(g->inv(x))), h->inv(phi(x)));
    ++res.samples;
    if (!d2.count(d)) {
      res.passed = false;
      res.witness = element_word(g, x);
      return res;
    }
  }
  return res;
}

// h^-1 D h subset of D^2 D^-1 for h in phi(ball).
inline CheckResult check_conjugation_bound(const QHom& phi, const Ball& source_ball,
                                           int stable_ties = 3) {
  DefectReport rep = defect_set(phi, source_ball, stable_ties);
  ElementSet d = to_set(rep.elements_at_horizon);
  const GroupHandle& h = phi.target;
  ElementSet bound = mul_sets(h, pow_at_most(h, d, 2), inverse_set(h, d));
  bound.insert(h->identity());
  CheckResult res;
  for (const auto& x : source_ball.elements()) {
    Element img = phi(x);
    for (const auto& dd : d) {
      Element conj = h->mul(h->mul(h->inv(img), dd), img);
      ++res.samples;
      if (!bound.count(conj)) {
        res.passed = false;
        res.witness = element_word(phi.source, x) + " ; " + element_word(h, dd);
        return res;
      }
    }
  }
  return res;
}

// Surrogate for the normalizer statement: sampled phi-images conjugate
// D-words of length <= L back into D-words of length <= 3L.
inline CheckResult check_defect_word_conjugation(const QHom& phi, const Ball& source_ball,
                                                 int word_len, int stable_ties = 3) {
  DefectReport rep = defect_set(phi, source_ball, stable_ties);
  const GroupHandle& h = phi.target;
  ElementSet d = set_union(to_set(rep.elements_at_horizon),
                           inverse_set(h, to_set(rep.elements_at_horizon)));
  ElementSet words = pow_at_most(h, d, word_len);
  ElementSet bound = pow_at_most(h, d, 3 * word_len);
  CheckResult res;
  for (const auto& x : source_ball.elements()) {
    Element img = phi(x);
    for (const auto& w : words) {
      Element conj = h->mul(h->mul(h->inv(img), w), img);
      ++res.samples;
      if (!bound.count(conj)) {
        res.passed = false;
        res.witness = element_word(phi.source, x);
        return res;
      }
    }
  }
  return res;
}

// Image of commutators stays near commutators: reports the max over ball
// pairs of the distance from phi([x,y]) to the commutator set of the target
// ball, against the bound 11 * (max defect word length) from unwinding the
// elementary estimates.
struct CommutatorImageReport {
  int max_distance = 0;
  int bound = 0;
  bool passed = true;
  bool measured = true;  // false when some distance exceeded the horizon
  std::string witness;
};

inline CommutatorImageReport check_commutator_image(const QHom& phi, const Ball& source_ball,
                                                    const Ball& target_ball, int horizon,
                                                    int stable_ties = 3) {
  DefectReport rep = defect_set(phi, source_ball, stable_ties);
  const GroupHandle& g = phi.source;
  const GroupHandle& h = phi.target;
  WordMetric dh(h);

  int defect_len = 0;
  for (const auto& d : rep.elements_at_horizon) {
    Distance dd = dh(d, horizon);
    defect_len = std::max(defect_len, dd.known() ? dd.value : horizon);
  }
  CommutatorImageReport out;
  out.bound = 11 * defect_len;

  ElementSet commutators;
  std::vector<Element> telems = target_ball.elements();
  for (const auto& u : telems)
    for (const auto& v : telems)
      commutators.insert(h->mul(h->mul(u, v), h->mul(h->inv(u), h->inv(v))));

  std::vector<Element> selems = source_ball.elements();
  for (const auto& x : selems) {
    for (const auto& y : selems) {
      Element comm = g->mul(g->mul(x, y), g->mul(g->inv(x), g->inv(y)));
      Element img = phi(comm);
      int best = horizon + 1;
      for (const auto& c : commutators) {
        Distance d = dh(img, c, best - 1 < horizon ? best - 1 : horizon);
        if (d.known() && d.value < best) best = d.value;
        if (best == 0) break;
      }
      if (best > horizon) {
        out.measured = false;
        out.witness = element_word(g, x) + " , " + element_word(g, y);
        out.passed = false;
        return out;
      }
      if (best > out.max_distance) {
        out.max_distance = best;
        out.witness = element_word(g, x) + " , " + element_word(g, y);
      }
    }
  }
  out.passed = out.max_distance <= out.bound;
  return out;
}

// --- central perturbation (bounded perturbation through central elements) ---

struct CentralPerturbation {
  QHom perturbed;
  bool containment_verified = false;  // D(phi') inside A^-2 D A on the ball
  std::string witness;
};

inline CentralPerturbation central_perturb(const QHom& phi, const std::vector<Element>& a_set,
                                           const std::function<Element(const Element&)>& selector,
                                           const Ball& source_ball, int stable_ties = 3) {
  const GroupHandle& h = phi.target;
  // centrality of A is checked against every sampled target element
  std::vector<Element> sample;
  for (const auto& x : source_ball.elements()) sample.push_back(phi(x));
  for (const auto& a : a_set) {
    h->check_member(a);
    for (const auto& t : sample) {
      if (h->mul(a, t) != h->mul(t, a))
        throw NotCentral("perturbation element " + element_word(h, a) +
                         " does not commute with " + element_word(h, t));
    }
  }
  auto base = phi.eval;
  QHom phi2{phi.source, phi.target,
            [base, selector, h](const Element& x) { return h->mul(base(x), selector(x)); },
            phi.label + "+central"};

  DefectReport d0 = defect_set(phi, source_ball, stable_ties);
  DefectReport d1 = defect_set(phi2, source_ball, stable_ties);
  ElementSet ainv2 = pow_at_most(h, inverse_set(h, to_set(a_set)), 2);
  ElementSet allowed = mul_sets(h, mul_sets(h, ainv2, to_set(d0.elements_at_horizon)),
                                set_union(to_set(a_set), ElementSet{h->identity()}));
  CentralPerturbation out{std::move(phi2), true, ""};
  for (const auto& d : d1.elements_at_horizon) {
    if (!allowed.count(d)) {
      out.containment_verified = false;
      out.witness = element_word(h, d);
      break;
    }
  }
  return out;
}

// --- quasi-isomorphism checks -----------------------------------------------

struct QisoReport {
  Distance dist_left;   // dist(phi' . phi, id_source) over the source ball
  Distance dist_right;  // dist(phi . phi', id_target) over the target ball
  bool strict = false;  // both compositions pointwise equal to the identity
};

inline QisoReport qiso_check(const QHom& phi, const QHom& phi2, const Ball& source_ball,
                             const Ball& target_ball, int horizon) {
  if (phi.target != phi2.source || phi2.target != phi.source)
    throw GroupMismatch("maps do not form a composable pair");
  QisoReport rep;
  WordMetric dsrc(phi.source);
  WordMetric dtgt(phi.target);
  rep.strict = true;
  int best = 0;
  bool above = false;
  for (const auto& x : source_ball.elements()) {
    Element back = phi2(phi(x));
    if (back != x) rep.strict = false;
    if (!above) {
      Distance d = dsrc(back, x, horizon);
      if (d.above_horizon)
        above = true;
      else
        best = std::max(best, d.value);
    }
  }
  rep.dist_left = above ? Distance::above(horizon) : Distance::exact(best);
  best = 0;
  above = false;
  for (const auto& y : target_ball.elements()) {
    Element forth = phi(phi2(y));
    if (forth != y) rep.strict = false;
    if (!above) {
      Distance d = dtgt(forth, y, horizon);
      if (d.above_horizon)
        above = true;
      else
        best = std::max(best, d.value);
    }
  }
  rep.dist_right = above ? Distance::above(horizon) : Distance::exact(best);
  return rep;
}

// Quasi-isometry constants: the empirical (lambda, c) over ball pairs and the
// predicted pair (C1+C2, 6 C1 + 2 C), with
//   C1 = max word length of defect elements, both directions,
//   C2 = max word length of generator images, both directions,
//   C  = max equivalence distance of the two round trips.
struct QiConstantsReport {
  int c1 = 0, c2 = 0, c = 0;
  double lambda_empirical = 1.0;
  int c_empirical = 0;
  bool forward_ok = true;   // d'(phi g1, phi g2) <= (C1+C2) d(g1,g2) + 6 C1
  bool backward_ok = true;  // d(g1,g2) <= (C1+C2) d'(phi g1, phi g2) + 6 C1 + 2 C
  bool measured = true;
  std::string witness;
};

inline QiConstantsReport qi_constants(const QHom& phi, const QHom& phi2,
                                      const Ball& source_ball, const Ball& target_ball,
                                      int horizon, int stable_ties = 3) {
  if (phi.target != phi2.source || phi2.target != phi.source)
    throw GroupMismatch("maps do not form a composable pair");
  QiConstantsReport rep;
  WordMetric ds(phi.source);
  WordMetric dt(phi.target);

  auto max_len = [&](const std::vector<Element>& elems, WordMetric& m) {
    int best = 0;
    for (const auto& e : elems) {
      Distance d = m(e, horizon);
      if (!d.known()) return -1;
      best = std::max(best, d.value);
    }
    return best;
  };

  DefectReport dphi = defect_set(phi, source_ball, stable_ties);
  DefectReport dphi2 = defect_set(phi2, target_ball, stable_ties);
  int len_d = max_len(dphi.elements_at_horizon, dt);
  int len_d2 = max_len(dphi2.elements_at_horizon, ds);

  std::vector<Element> gen_images, gen_images2;
  for (const auto& s : phi.source->generators()) gen_images.push_back(phi(s));
  for (const auto& s : phi.target->generators()) gen_images2.push_back(phi2(s));
  int len_g = max_len(gen_images, dt);
  int len_g2 = max_len(gen_images2, ds);

  WordMetric ds2(phi.source);
  WordMetric dt2(phi.target);
  Distance cl = equiv_distance(compose(phi2, phi), identity_qhom(phi.source), source_ball,
                               ds2, horizon);
  Distance cr = equiv_distance(compose(phi, phi2), identity_qhom(phi.target), target_ball,
                               dt2, horizon);
  if (len_d < 0 || len_d2 < 0 || len_g < 0 || len_g2 < 0 || !cl.known() || !cr.known()) {
    rep.measured = false;
    rep.forward_ok = rep.backward_ok = false;
    return rep;
  }
  rep.c1 = len_d + len_d2;
  rep.c2 = len_g + len_g2;
  rep.c = std::max(cl.value, cr.value);

  std::vector<Element> selems = source_ball.elements();
  std::vector<Element> images;
  images.reserve(selems.size());
  for (const auto& x : selems) images.push_back(phi(x));
  int lam_bound = rep.c1 + rep.c2;
  for (std::size_t i = 0; i < selems.size() && (rep.forward_ok || rep.backward_ok); ++i) {
    for (std::size_t j = i + 1; j < selems.size(); ++j) {
      Distance dg = ds(selems[i], selems[j], 4 * horizon);
      Distance dh = dt(images[i], images[j], 4 * horizon);
      if (!dg.known() || !dh.known()) {
        rep.measured = false;
        continue;
      }
      if (dh.value > lam_bound * dg.value + 6 * rep.c1) {
        rep.forward_ok = false;
        rep.witness = element_word(phi.source, selems[i]) + " , " +
                      element_word(phi.source, selems[j]);
      }
      if (dg.value > lam_bound * dh.value + 6 * rep.c1 + 2 * rep.c) {
        rep.backward_ok = false;
        rep.witness = element_word(phi.source, selems[i]) + " , " +
                      element_word(phi.source, selems[j]);
      }
      if (dg.value > 0 && dh.value > 0) {
        double ratio = std::max(static_cast<double>(dh.value) / dg.value,
                                static_cast<double>(dg.value) / dh.value);
        rep.lambda_empirical = std::max(rep.lambda_empirical, ratio);
      }
      rep.c_empirical = std::max(rep.c_empirical, std::abs(dh.value - dg.value));
    }
  }
  return rep;
}

// Self-map criterion: phi is a quasi-isomorphism with quasi-inverse the
// identity iff A = { phi(g)^-1 g } is finite and phi(G)^-1 almost commutes
// with A. Both sets are probed for growth; the verdict is cross-checked
// against the direct quasi-isomorphism distances.
struct GoodQHReport {
  DefectReport a_growth;
  DefectReport commutator_growth;
  bool positive = false;
  bool crosscheck_agrees = false;
};

inline GoodQHReport goodqh_check(const QHom& phi, const Ball& b, int horizon,
                                 int stable_ties = 3) {
  if (phi.source != phi.target) throw GroupMismatch("goodqh needs a self-map");
  const GroupHandle& g = phi.source;
  GoodQHReport rep;

  // A = { phi(x)^-1 x } growth table over strata
  {
    DefectReport a;
    a.horizon = b.radius();
    a.budget_exceeded = !b.complete();
    ElementSet acc;
    for (int r = 0; r <= b.radius(); ++r) {
      for (const auto& x : b.strata()[static_cast<std::size_t>(r)])
        acc.insert(g->mul(g->inv(phi(x)), x));
      if (r >= 1) {
        a.radii.push_back(r);
        a.set_sizes.push_back(acc.size());
      }
    }
    a.elements_at_horizon.assign(acc.begin(), acc.end());
    a.verdict = detail::growth_verdict(a.set_sizes, stable_ties);
    rep.a_growth = std::move(a);
  }

  // C(phi(ball)^-1, A) growth, stratified by ball radius
  {
    DefectReport c;
    c.horizon = b.radius();
    c.budget_exceeded = !b.complete();
    ElementSet a_full = to_set(rep.a_growth.elements_at_horizon);
    ElementSet acc;
    for (int r = 0; r <= b.radius(); ++r) {
      for (const auto& x : b.strata()[static_cast<std::size_t>(r)]) {
        Element u = g->inv(phi(x));
        for (const auto& a : a_full) {
          acc.insert(g->mul(g->mul(u, a), g->mul(g->inv(u), g->inv(a))));
        }
      }
      if (r >= 1) {
        c.radii.push_back(r);
        c.set_sizes.push_back(acc.size());
      }
    }
    c.elements_at_horizon.assign(acc.begin(), acc.end());
    c.verdict = detail::growth_verdict(c.set_sizes, stable_ties);
    rep.commutator_growth = std::move(c);
  }

  rep.positive = rep.a_growth.stable() && rep.commutator_growth.stable();
  // cross-check: quasi-isomorphism with identity quasi-inverse means phi is a
  // quasi-homomorphism (stable defect) at bounded distance from the identity
  QisoReport qiso = qiso_check(phi, identity_qhom(g), b, b, horizon);
  DefectReport dphi = defect_set(phi, b, stable_ties);
  bool direct = qiso.dist_left.known() && qiso.dist_right.known() && dphi.stable();
  rep.crosscheck_agrees = (rep.positive == direct);
  return rep;
}

}  // namespace qhlab
