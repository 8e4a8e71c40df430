#pragma once

// Word metrics at finite radius: BFS ball enumeration over a symmetric
// generating set, exact distances with an explicit horizon.

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qhlab/core.hpp"
#include "qhlab/element.hpp"
#include "qhlab/group.hpp"

namespace qhlab {

struct BallOptions {
  std::size_t element_cap = 5'000'000;
};

// Takes the symmetric closure of gens, deduplicated and sorted so BFS order
// is deterministic.
inline std::vector<Element> symmetric_closure(const GroupHandle& g,
                                              std::vector<Element> gens) {
  for (const auto& s : std::vector<Element>(gens)) gens.push_back(g->inv(s));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  // drop the identity if it was passed as a generator
  Element e = g->identity();
  gens.erase(std::remove(gens.begin(), gens.end(), e), gens.end());
  return gens;
}

class Ball {
 public:
  Ball(GroupHandle group, std::vector<Element> gens, int radius, BallOptions opts = {})
      : group_(std::move(group)), gens_(symmetric_closure(group_, std::move(gens))) {
    if (radius < 0) throw InvalidParameters("ball radius must be >= 0");
    Element e = group_->identity();
    index_.emplace(e, 0);
    strata_.push_back({e});
    complete_ = true;
    std::size_t total = 1;
    for (int r = 1; r <= radius; ++r) {
      std::vector<Element> next;
      for (const auto& x : strata_.back()) {
        for (const auto& s : gens_) {
          Element y = group_->mul(x, s);
          if (index_.emplace(y, r).second) {
            next.push_back(y);
            if (++total > opts.element_cap) {
              // over budget: flag as an incomplete partial ball rather than
              // failing the whole experiment
              complete_ = false;
              for (const auto& dropped : next) index_.erase(dropped);
              return;
            }
          }
        }
      }
      if (next.empty()) break;  // finite group exhausted
      std::sort(next.begin(), next.end());
      strata_.push_back(std::move(next));
    }
  }

  const GroupHandle& group() const { return group_; }
  const std::vector<Element>& gens() const { return gens_; }
  int radius() const { return static_cast<int>(strata_.size()) - 1; }
  bool complete() const { return complete_; }
  const std::vector<std::vector<Element>>& strata() const { return strata_; }

  std::optional<int> distance(const Element& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Element& g) const { return index_.count(g) != 0; }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& s : strata_) n += s.size();
    return n;
  }

  // All elements in BFS-stratum order; deterministic.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (const auto& s : strata_) out.insert(out.end(), s.begin(), s.end());
    return out;
  }

  std::vector<std::size_t> stratum_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& s : strata_) out.push_back(s.size());
    return out;
  }

 private:
  GroupHandle group_;
  std::vector<Element> gens_;
  std::vector<std::vector<Element>> strata_;
  std::unordered_map<Element, int, ElementHash> index_;
  bool complete_ = true;
};

inline Ball ball(const GroupHandle& g, const std::vector<Element>& gens, int radius,
                 BallOptions opts = {}) {
  return Ball(g, gens, radius, opts);
}

inline Ball ball(const GroupHandle& g, int radius, BallOptions opts = {}) {
  return Ball(g, g->generators(), radius, opts);
}

// Incremental BFS from the identity; distances are memoized and the frontier
// grows on demand, so repeated queries share work. Pure queries once built.
class WordMetric {
 public:
  WordMetric(GroupHandle group, std::vector<Element> gens, BallOptions opts = {})
      : group_(std::move(group)),
        gens_(symmetric_closure(group_, std::move(gens))),
        opts_(opts) {
    Element e = group_->identity();
    dist_.emplace(e, 0);
    frontier_ = {e};
  }

  WordMetric(GroupHandle group, BallOptions opts = {})
      : WordMetric(group, group->generators(), opts) {}

  // d(1, g) if it is <= horizon, else AboveHorizon(horizon).
  Distance operator()(const Element& g, int horizon) {
    group_->check_member(g);
    auto it = dist_.find(g);
    if (it != dist_.end() && it->second <= horizon) return Distance::exact(it->second);
    while (built_radius_ < horizon && !frontier_.empty() && !capped_) {
      grow();
      it = dist_.find(g);
      if (it != dist_.end()) return Distance::exact(it->second);
    }
    it = dist_.find(g);
    if (it != dist_.end() && it->second <= horizon) return Distance::exact(it->second);
    return Distance::above(horizon);
  }

  // left-invariant two-point distance
  Distance operator()(const Element& a, const Element& b, int horizon) {
    return (*this)(group_->mul(group_->inv(a), b), horizon);
  }

  bool capped() const { return capped_; }
  int built_radius() const { return built_radius_; }
  const GroupHandle& group() const { return group_; }

 private:
  void grow() {
    std::vector<Element> next;
    int r = built_radius_ + 1;
    for (const auto& x : frontier_) {
      for (const auto& s : gens_) {
        Element y = group_->mul(x, s);
        if (dist_.emplace(y, r).second) {
          next.push_back(y);
          if (dist_.size() > opts_.element_cap) {
            capped_ = true;
            return;
          }
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier_ = std::move(next);
    built_radius_ = r;
  }

  GroupHandle group_;
  std::vector<Element> gens_;
  BallOptions opts_;
  std::unordered_map<Element, int, ElementHash> dist_;
  std::vector<Element> frontier_;
  int built_radius_ = 0;
  bool capped_ = false;
};

// One-shot exact word length with cutoff.
inline Distance word_length(const GroupHandle& g, const std::vector<Element>& gens,
                            const Element& x, int r_max, BallOptions opts = {}) {
  WordMetric m(g, gens, opts);
  return m(x, r_max);
}

inline Distance word_length(const GroupHandle& g, const Element& x, int r_max,
                            BallOptions opts = {}) {
  return word_length(g, g->generators(), x, r_max, opts);
}

}  // namespace qhlab
