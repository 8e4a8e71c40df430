#pragma once

// Subgroup membership oracles. Exact oracles exist for the built-in catalog;
// arbitrary finitely generated subgroups only get a BFS semi-decision that is
// flagged approximate.

#include <functional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qhlab/core.hpp"
#include "qhlab/element.hpp"
#include "qhlab/group.hpp"

namespace qhlab {

class SubgroupSpec {
 public:
  SubgroupSpec(GroupHandle ambient, std::vector<Element> generators,
               std::function<bool(const Element&)> membership, bool exact,
               std::string label)
      : ambient_(std::move(ambient)),
        generators_(std::move(generators)),
        membership_(std::move(membership)),
        exact_(exact),
        label_(std::move(label)) {
    for (const auto& g : generators_) ambient_->check_member(g);
    if (!membership_(ambient_->identity()))
      throw InvalidParameters("subgroup oracle rejects the identity");
    for (const auto& g : generators_)
      if (!membership_(g))
        throw InvalidParameters("subgroup oracle rejects a generator of " + label_);
  }

  const GroupHandle& ambient() const { return ambient_; }
  const std::vector<Element>& generators() const { return generators_; }
  bool contains(const Element& g) const {
    ambient_->check_member(g);
    return membership_(g);
  }
  bool exact() const { return exact_; }
  const std::string& label() const { return label_; }

  // Samples normality: conjugates of subgroup generators by ambient
  // generators must stay inside.
  bool normal_on_generators() const {
    for (const auto& h : generators_) {
      for (const auto& g : ambient_->generators()) {
        Element c = ambient_->mul(ambient_->mul(g, h), ambient_->inv(g));
        if (!membership_(c)) return false;
        c = ambient_->mul(ambient_->mul(ambient_->inv(g), h), g);
        if (!membership_(c)) return false;
      }
    }
    return true;
  }

 private:
  GroupHandle ambient_;
  std::vector<Element> generators_;
  std::function<bool(const Element&)> membership_;
  bool exact_;
  std::string label_;
};

// --- built-in catalog -------------------------------------------------------

// <c> = Z(G) in the Heisenberg group
inline SubgroupSpec heisenberg_center(const GroupHandle& g) {
  if (g->kind() != GroupKind::Heisenberg) throw WrongKind("expected Heisenberg group");
  return SubgroupSpec(
      g, {g->generators()[2]},
      [](const Element& e) {
        const auto& h = e.as<HeisenbergTriple>();
        return h.x == 0 && h.y == 0;
      },
      true, "center");
}

// <a> = {(x,0,0)} in the Heisenberg group (a retract, unlike the center)
inline SubgroupSpec heisenberg_a_axis(const GroupHandle& g) {
  if (g->kind() != GroupKind::Heisenberg) throw WrongKind("expected Heisenberg group");
  return SubgroupSpec(
      g, {g->generators()[0]},
      [](const Element& e) {
        const auto& h = e.as<HeisenbergTriple>();
        return h.y == 0 && h.z == 0;
      },
      true, "a-axis");
}

// <t> in the infinite dihedral group
inline SubgroupSpec dihedral_rotations(const GroupHandle& g) {
  if (g->kind() != GroupKind::InfiniteDihedral) throw WrongKind("expected dihedral group");
  return SubgroupSpec(
      g, {g->generators()[0]},
      [](const Element& e) { return e.as<DihedralPair>().flip == 0; }, true,
      "rotations");
}

// <a> in BS(1,n): integer translations
inline SubgroupSpec bs_translations(const GroupHandle& g) {
  if (g->kind() != GroupKind::BaumslagSolitar) throw WrongKind("expected BS(1,n) group");
  return SubgroupSpec(
      g, {g->generators()[0]},
      [](const Element& e) {
        const auto& a = e.as<AffinePair>();
        return a.scale_exp == 0 && a.den_exp == 0;
      },
      true, "translations");
}

// <t> in BS(1,n): pure scalings
inline SubgroupSpec bs_scalings(const GroupHandle& g) {
  if (g->kind() != GroupKind::BaumslagSolitar) throw WrongKind("expected BS(1,n) group");
  return SubgroupSpec(
      g, {g->generators()[1]},
      [](const Element& e) { return e.as<AffinePair>().num == 0; }, true, "scalings");
}

// <w> in a free group; exact via power comparison (word lengths of powers of
// a nontrivial element grow strictly).
inline SubgroupSpec free_cyclic(const GroupHandle& g, const Element& w) {
  if (g->kind() != GroupKind::Free) throw WrongKind("expected free group");
  g->check_member(w);
  if (w == g->identity()) throw InvalidParameters("cyclic subgroup needs w != 1");
  auto contains = [g, w](const Element& e) {
    if (e == g->identity()) return true;
    std::size_t target = e.as<FreeWord>().letters.size();
    Element p = g->identity();
    Element winv = g->inv(w);
    Element q = p;
    while (true) {
      p = g->mul(p, w);
      q = g->mul(q, winv);
      if (p == e || q == e) return true;
      if (p.as<FreeWord>().letters.size() > target &&
          q.as<FreeWord>().letters.size() > target)
        return false;
    }
  };
  return SubgroupSpec(g, {w}, contains, true, "cyclic");
}

// left (which = 0) or right (which = 1) factor of a direct product
inline SubgroupSpec product_factor(const GroupHandle& g, int which) {
  if (g->kind() != GroupKind::DirectProduct) throw WrongKind("expected direct product");
  if (which != 0 && which != 1) throw InvalidParameters("factor index must be 0 or 1");
  std::vector<Element> gens;
  const GroupHandle& factor = which == 0 ? g->left() : g->right();
  const GroupHandle& other = which == 0 ? g->right() : g->left();
  for (const auto& s : factor->generators()) {
    if (which == 0)
      gens.push_back(Element(g->id(), ComponentTuple{{s, other->identity()}}));
    else
      gens.push_back(Element(g->id(), ComponentTuple{{other->identity(), s}}));
  }
  Element other_id = other->identity();
  return SubgroupSpec(
      g, std::move(gens),
      [which, other_id](const Element& e) {
        return e.as<ComponentTuple>().parts[which == 0 ? 1 : 0] == other_id;
      },
      true, which == 0 ? "left-factor" : "right-factor");
}

// fiber Z^k = {(z, 1)} of a central extension
inline SubgroupSpec extension_fiber(const GroupHandle& g) {
  if (g->kind() != GroupKind::CentralExtension) throw WrongKind("expected central extension");
  std::vector<Element> gens(g->generators().begin(),
                            g->generators().begin() + g->z_rank());
  Element base_id = g->base()->identity();
  return SubgroupSpec(
      g, std::move(gens),
      [base_id](const Element& e) { return e.as<CentralPair>().base[0] == base_id; },
      true, "fiber");
}

// Arbitrary finitely generated subgroup: BFS over H-words up to a cutoff.
// This is only a semi-decision and is flagged approximate.
inline SubgroupSpec generated_subgroup(const GroupHandle& g, std::vector<Element> gens,
                                       int depth, std::string label = "generated") {
  auto table = std::make_shared<std::unordered_set<Element, ElementHash>>();
  std::vector<Element> sym;
  for (const auto& s : gens) {
    sym.push_back(s);
    sym.push_back(g->inv(s));
  }
  std::vector<Element> frontier = {g->identity()};
  table->insert(g->identity());
  for (int r = 0; r < depth; ++r) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& s : sym) {
        Element y = g->mul(x, s);
        if (table->insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return SubgroupSpec(
      g, std::move(gens), [table](const Element& e) { return table->count(e) != 0; },
      false, std::move(label) + "~depth" + std::to_string(depth));
}

}  // namespace qhlab
