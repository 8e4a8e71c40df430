#pragma once

// Computable groups via canonical normal forms and exact arithmetic.
//
// Normal-form conventions used throughout:
//   free           reduced words over +-generator letters
//   free abelian   exponent vectors
//   dihedral       t^k s^e with the rewrite s t = t^-1 s
//   Heisenberg     a^x b^y c^z with [a,b] = a b a^-1 b^-1 = c central,
//                  so (x,y,z)(x',y',z') = (x+x', y+y', z+z'-x'y)
//   BS(1,n)        affine maps x -> n^k x + r, r an n-adic rational
//   finite         index into a full multiplication table
//   product        component tuples
//   central ext    (z, q) with (z1,q1)(z2,q2) = (z1+z2+w(q1,q2), q1q2)

#include <atomic>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qhlab/core.hpp"
#include "qhlab/element.hpp"

namespace qhlab {

enum class GroupKind {
  Free,
  FreeAbelian,
  InfiniteDihedral,
  Heisenberg,
  BaumslagSolitar,
  Finite,
  DirectProduct,
  CentralExtension,
};

class Group;
using GroupHandle = std::shared_ptr<const Group>;

// Normalized 2-cocycle w: Q x Q -> Z^rank given by an evaluator. Associativity
// of the extension it defines is enforced by a sampled cocycle-identity check
// at construction time (see make_central_extension).
struct Cocycle {
  std::function<std::vector<Int>(const Element&, const Element&)> eval;
  std::optional<Int> declared_bound;
  std::string name = "custom";
};

struct FiniteTable {
  std::vector<std::vector<std::uint32_t>> table;
  std::vector<std::string> names;  // optional, defaults to g0..g{n-1}
};

namespace detail {
inline std::uint32_t next_group_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace detail

class Group {
 public:
  GroupKind kind() const { return kind_; }
  std::uint32_t id() const { return id_; }
  int rank() const { return rank_; }
  Int bs_base() const { return bs_base_; }
  const FiniteTable& finite_table() const { return finite_; }
  const GroupHandle& left() const { return left_; }
  const GroupHandle& right() const { return right_; }
  const GroupHandle& base() const { return base_; }
  int z_rank() const { return z_rank_; }
  const Cocycle& cocycle() const { return cocycle_; }
  const std::string& name() const { return name_; }

  const std::vector<std::string>& generator_names() const { return gen_names_; }
  const std::vector<Element>& generators() const { return generators_; }

  void check_member(const Element& e) const {
    if (e.group_id() != id_) throw GroupMismatch("element does not belong to group " + name_);
  }

  Element identity() const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;

  // Evaluates a word of signed 1-based generator indices.
  Element word_to_element(const std::vector<int>& word) const;

  bool is_abelian_kind() const {
    switch (kind_) {
      case GroupKind::Free: return rank_ <= 1;
      case GroupKind::FreeAbelian: return true;
      default: return false;
    }
  }

 private:
  friend GroupHandle make_free_group(int, std::vector<std::string>);
  friend GroupHandle make_free_abelian(int, std::vector<std::string>);
  friend GroupHandle make_infinite_dihedral();
  friend GroupHandle make_heisenberg();
  friend GroupHandle make_baumslag_solitar(Int);
  friend GroupHandle make_finite_group(FiniteTable, std::string);
  friend GroupHandle make_direct_product(GroupHandle, GroupHandle);
  friend GroupHandle make_central_extension(int, GroupHandle, Cocycle,
                                            std::vector<std::string>);

  Group() = default;

  GroupKind kind_ = GroupKind::Free;
  std::uint32_t id_ = 0;
  int rank_ = 0;
  Int bs_base_ = 0;
  FiniteTable finite_;
  GroupHandle left_, right_;
  GroupHandle base_;
  int z_rank_ = 0;
  Cocycle cocycle_;
  std::string name_;
  std::vector<std::string> gen_names_;
  std::vector<Element> generators_;
};

// ---------------------------------------------------------------------------
// arithmetic

namespace detail {

inline void reduce_append(std::vector<std::int32_t>& word, std::int32_t letter) {
  if (!word.empty() && word.back() == -letter) {
    word.pop_back();
  } else {
    word.push_back(letter);
  }
}

// Canonicalizes a BS(1,n) offset num/n^den so that den = 0 or n does not
// divide num.
inline void reduce_affine(Int n, BigInt& num, Int& den) {
  if (num == 0) {
    den = 0;
    return;
  }
  while (den > 0 && num % n == 0) {
    num /= n;
    --den;
  }
}

inline BigInt big_pow(Int base, Int exp) {
  BigInt r = 1;
  for (Int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace detail

inline Element Group::identity() const {
  switch (kind_) {
    case GroupKind::Free: return Element(id_, FreeWord{});
    case GroupKind::FreeAbelian: return Element(id_, ExponentVec{std::vector<Int>(rank_, 0)});
    case GroupKind::InfiniteDihedral: return Element(id_, DihedralPair{});
    case GroupKind::Heisenberg: return Element(id_, HeisenbergTriple{});
    case GroupKind::BaumslagSolitar: return Element(id_, AffinePair{});
    case GroupKind::Finite: {
      // the table's identity row was located at construction; it is index 0 by
      // normalization in make_finite_group
      return Element(id_, FiniteIndex{0});
    }
    case GroupKind::DirectProduct:
      return Element(id_, ComponentTuple{{left_->identity(), right_->identity()}});
    case GroupKind::CentralExtension:
      return Element(id_, CentralPair{std::vector<Int>(z_rank_, 0), {base_->identity()}});
  }
  throw WrongKind("unknown group kind");
}

inline Element Group::mul(const Element& a, const Element& b) const {
  check_member(a);
  check_member(b);
  switch (kind_) {
    case GroupKind::Free: {
      const auto& u = a.as<FreeWord>().letters;
      const auto& v = b.as<FreeWord>().letters;
      std::vector<std::int32_t> out = u;
      out.reserve(u.size() + v.size());
      for (auto l : v) detail::reduce_append(out, l);
      return Element(id_, FreeWord{std::move(out)});
    }
    case GroupKind::FreeAbelian: {
      const auto& u = a.as<ExponentVec>().exps;
      const auto& v = b.as<ExponentVec>().exps;
      std::vector<Int> out(rank_);
      for (int i = 0; i < rank_; ++i) out[i] = u[i] + v[i];
      return Element(id_, ExponentVec{std::move(out)});
    }
    case GroupKind::InfiniteDihedral: {
      const auto& u = a.as<DihedralPair>();
      const auto& v = b.as<DihedralPair>();
      Int shift = u.shift + (u.flip ? -v.shift : v.shift);
      return Element(id_, DihedralPair{shift, static_cast<std::uint8_t>((u.flip + v.flip) & 1)});
    }
    case GroupKind::Heisenberg: {
      const auto& u = a.as<HeisenbergTriple>();
      const auto& v = b.as<HeisenbergTriple>();
      return Element(id_, HeisenbergTriple{u.x + v.x, u.y + v.y, u.z + v.z - v.x * u.y});
    }
    case GroupKind::BaumslagSolitar: {
      // (k1, r1)(k2, r2) = (k1+k2, r1 + n^{k1} r2), as composition of affine maps
      const auto& u = a.as<AffinePair>();
      const auto& v = b.as<AffinePair>();
      Int k = u.scale_exp + v.scale_exp;
      // common denominator n^d with d = max(u.den, v.den - u.scale)
      Int d = u.den_exp;
      Int vd = v.den_exp - u.scale_exp;
      if (vd > d) d = vd;
      if (d < 0) d = 0;
      BigInt num = u.num * detail::big_pow(bs_base_, d - u.den_exp) +
                   v.num * detail::big_pow(bs_base_, d - (v.den_exp - u.scale_exp));
      detail::reduce_affine(bs_base_, num, d);
      return Element(id_, AffinePair{k, std::move(num), d});
    }
    case GroupKind::Finite: {
      auto i = a.as<FiniteIndex>().index;
      auto j = b.as<FiniteIndex>().index;
      return Element(id_, FiniteIndex{finite_.table[i][j]});
    }
    case GroupKind::DirectProduct: {
      const auto& u = a.as<ComponentTuple>().parts;
      const auto& v = b.as<ComponentTuple>().parts;
      return Element(id_, ComponentTuple{{left_->mul(u[0], v[0]), right_->mul(u[1], v[1])}});
    }
    case GroupKind::CentralExtension: {
      const auto& u = a.as<CentralPair>();
      const auto& v = b.as<CentralPair>();
      std::vector<Int> fiber(z_rank_);
      std::vector<Int> w = cocycle_.eval(u.base[0], v.base[0]);
      for (int i = 0; i < z_rank_; ++i) fiber[i] = u.fiber[i] + v.fiber[i] + w[i];
      return Element(id_, CentralPair{std::move(fiber), {base_->mul(u.base[0], v.base[0])}});
    }
  }
  throw WrongKind("unknown group kind");
}

inline Element Group::inv(const Element& a) const {
  check_member(a);
  switch (kind_) {
    case GroupKind::Free: {
      const auto& u = a.as<FreeWord>().letters;
      std::vector<std::int32_t> out(u.rbegin(), u.rend());
      for (auto& l : out) l = -l;
      return Element(id_, FreeWord{std::move(out)});
    }
    case GroupKind::FreeAbelian: {
      auto out = a.as<ExponentVec>().exps;
      for (auto& e : out) e = -e;
      return Element(id_, ExponentVec{std::move(out)});
    }
    case GroupKind::InfiniteDihedral: {
      const auto& u = a.as<DihedralPair>();
      return Element(id_, DihedralPair{u.flip ? u.shift : -u.shift, u.flip});
    }
    case GroupKind::Heisenberg: {
      const auto& u = a.as<HeisenbergTriple>();
      return Element(id_, HeisenbergTriple{-u.x, -u.y, -u.z - u.x * u.y});
    }
    case GroupKind::BaumslagSolitar: {
      // (k, r)^-1 = (-k, -n^{-k} r)
      const auto& u = a.as<AffinePair>();
      BigInt num = -u.num;
      Int den = u.den_exp + u.scale_exp;
      if (den < 0) {
        num *= detail::big_pow(bs_base_, -den);
        den = 0;
      }
      detail::reduce_affine(bs_base_, num, den);
      return Element(id_, AffinePair{-u.scale_exp, std::move(num), den});
    }
    case GroupKind::Finite: {
      auto i = a.as<FiniteIndex>().index;
      const auto& row = finite_.table[i];
      for (std::uint32_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) return Element(id_, FiniteIndex{j});
      }
      throw InvalidParameters("finite table row without inverse");
    }
    case GroupKind::DirectProduct: {
      const auto& u = a.as<ComponentTuple>().parts;
      return Element(id_, ComponentTuple{{left_->inv(u[0]), right_->inv(u[1])}});
    }
    case GroupKind::CentralExtension: {
      const auto& u = a.as<CentralPair>();
      Element qinv = base_->inv(u.base[0]);
      std::vector<Int> w = cocycle_.eval(qinv, u.base[0]);
      std::vector<Int> fiber(z_rank_);
      for (int i = 0; i < z_rank_; ++i) fiber[i] = -u.fiber[i] - w[i];
      return Element(id_, CentralPair{std::move(fiber), {std::move(qinv)}});
    }
  }
  throw WrongKind("unknown group kind");
}

inline Element Group::word_to_element(const std::vector<int>& word) const {
  Element g = identity();
  for (int l : word) {
    if (l == 0 || static_cast<std::size_t>(l > 0 ? l : -l) > generators_.size())
      throw IndexOutOfRange("generator index " + std::to_string(l) + " out of range");
    const Element& s = generators_[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
    g = mul(g, l > 0 ? s : inv(s));
  }
  return g;
}

// ---------------------------------------------------------------------------
// factories

namespace detail {

inline std::vector<std::string> default_letter_names(int n, const char* pool) {
  std::vector<std::string> names;
  std::size_t pool_len = std::string(pool).size();
  for (int i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(i) < pool_len)
      names.emplace_back(1, pool[i]);
    else
      names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace detail

inline GroupHandle make_free_group(int rank, std::vector<std::string> names = {}) {
  if (rank < 1) throw InvalidParameters("free group rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Free;
  g->id_ = detail::next_group_id();
  g->rank_ = rank;
  g->name_ = "F" + std::to_string(rank);
  g->gen_names_ = names.empty() ? detail::default_letter_names(rank, "abcdefgh") : std::move(names);
  for (int i = 0; i < rank; ++i)
    g->generators_.push_back(Element(g->id_, FreeWord{{static_cast<std::int32_t>(i + 1)}}));
  return g;
}

inline GroupHandle make_free_abelian(int rank, std::vector<std::string> names = {}) {
  if (rank < 1) throw InvalidParameters("free abelian rank must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FreeAbelian;
  g->id_ = detail::next_group_id();
  g->rank_ = rank;
  g->name_ = "Z^" + std::to_string(rank);
  g->gen_names_ = names.empty() ? detail::default_letter_names(rank, "abcdefgh") : std::move(names);
  for (int i = 0; i < rank; ++i) {
    std::vector<Int> e(rank, 0);
    e[static_cast<std::size_t>(i)] = 1;
    g->generators_.push_back(Element(g->id_, ExponentVec{std::move(e)}));
  }
  return g;
}

inline GroupHandle make_infinite_dihedral() {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::InfiniteDihedral;
  g->id_ = detail::next_group_id();
  g->name_ = "Dinf";
  g->gen_names_ = {"t", "s"};
  g->generators_ = {Element(g->id_, DihedralPair{1, 0}), Element(g->id_, DihedralPair{0, 1})};
  return g;
}

inline GroupHandle make_heisenberg() {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Heisenberg;
  g->id_ = detail::next_group_id();
  g->name_ = "Heis";
  g->gen_names_ = {"a", "b", "c"};
  g->generators_ = {Element(g->id_, HeisenbergTriple{1, 0, 0}),
                    Element(g->id_, HeisenbergTriple{0, 1, 0}),
                    Element(g->id_, HeisenbergTriple{0, 0, 1})};
  return g;
}

inline GroupHandle make_baumslag_solitar(Int n) {
  if (n < 2) throw InvalidParameters("BS(1,n) requires n >= 2");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::BaumslagSolitar;
  g->id_ = detail::next_group_id();
  g->bs_base_ = n;
  g->name_ = "BS(1," + std::to_string(n) + ")";
  g->gen_names_ = {"a", "t"};
  g->generators_ = {Element(g->id_, AffinePair{0, 1, 0}), Element(g->id_, AffinePair{1, 0, 0})};
  return g;
}

inline GroupHandle make_finite_group(FiniteTable table, std::string name = "finite") {
  const std::size_t n = table.table.size();
  if (n == 0) throw InvalidParameters("empty multiplication table");
  for (const auto& row : table.table) {
    if (row.size() != n) throw InvalidParameters("multiplication table is not square");
    for (auto v : row)
      if (v >= n) throw InvalidParameters("multiplication table entry out of range");
  }
  // locate the identity and normalize it to index 0
  std::optional<std::uint32_t> id_idx;
  for (std::uint32_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x)
      ok = table.table[e][x] == x && table.table[x][e] == x;
    if (ok) {
      id_idx = e;
      break;
    }
  }
  if (!id_idx) throw InvalidParameters("multiplication table has no identity");
  if (*id_idx != 0) {
    // swap labels 0 <-> identity
    std::uint32_t e = *id_idx;
    auto relabel = [&](std::uint32_t v) { return v == 0 ? e : (v == e ? 0 : v); };
    FiniteTable t2 = table;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        t2.table[relabel(i)][relabel(j)] = relabel(table.table[i][j]);
    if (!table.names.empty()) std::swap(t2.names[0], t2.names[e]);
    table = std::move(t2);
  }
  // verify associativity on the full (small) table: closure is structural,
  // associativity is not
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        if (table.table[table.table[i][j]][k] != table.table[i][table.table[j][k]])
          throw InvalidParameters("multiplication table is not associative");
  if (table.names.empty()) {
    for (std::uint32_t i = 0; i < n; ++i) table.names.push_back("g" + std::to_string(i));
  }
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Finite;
  g->id_ = detail::next_group_id();
  g->finite_ = std::move(table);
  g->name_ = std::move(name);
  for (std::uint32_t i = 1; i < n; ++i) {
    g->gen_names_.push_back(g->finite_.names[i]);
    g->generators_.push_back(Element(g->id_, FiniteIndex{i}));
  }
  return g;
}

inline GroupHandle make_cyclic_group(int order) {
  if (order < 1) throw InvalidParameters("cyclic group order must be >= 1");
  FiniteTable t;
  t.table.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      t.table[static_cast<std::size_t>(i)].push_back(static_cast<std::uint32_t>((i + j) % order));
  for (int i = 0; i < order; ++i)
    t.names.push_back(i == 0 ? "1" : (i == 1 ? "u" : "u" + std::to_string(i)));
  return make_finite_group(std::move(t), "Z/" + std::to_string(order));
}

inline GroupHandle make_direct_product(GroupHandle left, GroupHandle right) {
  if (!left || !right) throw InvalidParameters("null factor");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::DirectProduct;
  g->id_ = detail::next_group_id();
  g->left_ = left;
  g->right_ = right;
  g->name_ = left->name() + "x" + right->name();
  // generator names from the factors, disambiguated only on collision
  for (std::size_t i = 0; i < left->generators().size(); ++i) {
    g->gen_names_.push_back(left->generator_names()[i]);
    g->generators_.push_back(
        Element(g->id_, ComponentTuple{{left->generators()[i], right->identity()}}));
  }
  for (std::size_t i = 0; i < right->generators().size(); ++i) {
    std::string nm = right->generator_names()[i];
    for (const auto& existing : g->gen_names_)
      if (existing == nm) {
        nm += "'";
        break;
      }
    g->gen_names_.push_back(nm);
    g->generators_.push_back(
        Element(g->id_, ComponentTuple{{left->identity(), right->generators()[i]}}));
  }
  return g;
}

// Built-in cocycles ---------------------------------------------------------

inline Cocycle zero_cocycle(int z_rank) {
  Cocycle c;
  c.name = "zero";
  c.declared_bound = 0;
  c.eval = [z_rank](const Element&, const Element&) { return std::vector<Int>(z_rank, 0); };
  return c;
}

namespace detail {

// floor(x * (p/q) * sqrt(radicand)) in exact integer arithmetic.
// radicand = 1 recovers the plain rational alpha = p/q.
inline Int floor_surd_multiple(Int x, Int p, Int q, Int radicand) {
  if (x == 0) return 0;
  BigInt N = BigInt(radicand) * p * p * x * x;  // (alpha*x)^2 * q^2
  BigInt t = boost::multiprecision::sqrt(N);    // floor(sqrt(N))
  if (x > 0) {
    return static_cast<Int>(t / q);
  }
  bool exact = (t * t == N) && (t % q == 0);
  return exact ? -static_cast<Int>(t / q) : -static_cast<Int>(t / q) - 1;
}

}  // namespace detail

// w(x, y) = floor(alpha(x+y)) - floor(alpha x) - floor(alpha y) on Z, with
// alpha = (num/den) * sqrt(radicand). Bounded with values in {0, 1} for
// positive alpha; radicand = 2, num = 1, den = 2 gives alpha = sqrt(2)/2.
inline Cocycle rounding_cocycle(Int num, Int den, Int radicand = 1) {
  if (den <= 0 || num <= 0 || radicand <= 0)
    throw InvalidParameters("rounding cocycle needs positive alpha");
  Cocycle c;
  c.name = "rounding";
  c.declared_bound = 1;
  c.eval = [num, den, radicand](const Element& a, const Element& b) {
    Int x = a.as<ExponentVec>().exps.at(0);
    Int y = b.as<ExponentVec>().exps.at(0);
    Int w = detail::floor_surd_multiple(x + y, num, den, radicand) -
            detail::floor_surd_multiple(x, num, den, radicand) -
            detail::floor_surd_multiple(y, num, den, radicand);
    return std::vector<Int>{w};
  };
  return c;
}

// w((x,y),(x',y')) = -x'y on Z^2; the central extension it defines is the
// discrete Heisenberg group in (z, (x,y)) coordinates.
inline Cocycle heisenberg_cocycle() {
  Cocycle c;
  c.name = "heisenberg";
  c.eval = [](const Element& a, const Element& b) {
    const auto& u = a.as<ExponentVec>().exps;
    const auto& v = b.as<ExponentVec>().exps;
    return std::vector<Int>{-v.at(0) * u.at(1)};
  };
  return c;
}

namespace detail {

// Small internal BFS over a group's generators; the full Ball machinery lives
// in ball.hpp, this is just enough for construction-time sampling.
inline std::vector<Element> sample_ball(const GroupHandle& g, int radius,
                                        std::size_t cap = 100000) {
  std::unordered_set<Element, ElementHash> seen;
  std::vector<Element> out;
  std::deque<Element> frontier;
  Element e = g->identity();
  seen.insert(e);
  out.push_back(e);
  frontier.push_back(e);
  std::vector<Element> gens;
  for (const auto& s : g->generators()) {
    gens.push_back(s);
    gens.push_back(g->inv(s));
  }
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::deque<Element> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        Element y = g->mul(x, s);
        if (seen.insert(y).second) {
          out.push_back(y);
          next.push_back(y);
          if (out.size() > cap) return out;
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

inline GroupHandle make_central_extension(int z_rank, GroupHandle base, Cocycle cocycle,
                                          std::vector<std::string> fiber_names = {}) {
  if (z_rank < 1) throw InvalidParameters("central extension needs z_rank >= 1");
  if (!base) throw InvalidParameters("null base group");
  if (!cocycle.eval) throw InvalidParameters("cocycle has no evaluator");

  // normalization and the cocycle identity are checked on all triples from
  // the base ball of radius 4 plus 1000 pseudorandom triples; a failure
  // aborts construction with the witness triple
  std::vector<Element> sample = detail::sample_ball(base, 4, 2000);
  const Element one = base->identity();
  auto vec_eq = [](const std::vector<Int>& a, const std::vector<Int>& b) { return a == b; };
  auto zero = std::vector<Int>(static_cast<std::size_t>(z_rank), 0);
  for (const auto& q : sample) {
    if (cocycle.eval(q, one).size() != static_cast<std::size_t>(z_rank))
      throw InvalidParameters("cocycle value has wrong rank");
    if (!vec_eq(cocycle.eval(one, q), zero) || !vec_eq(cocycle.eval(q, one), zero))
      throw InvalidParameters("cocycle is not normalized at the identity, q = " +
                              debug_string(q));
  }
  auto check_triple = [&](const Element& x, const Element& y, const Element& z) {
    auto lhs = cocycle.eval(x, y);
    auto rhs = cocycle.eval(y, z);
    auto xy = base->mul(x, y);
    auto yz = base->mul(y, z);
    auto lhs2 = cocycle.eval(xy, z);
    auto rhs2 = cocycle.eval(x, yz);
    for (int i = 0; i < z_rank; ++i) {
      if (lhs[static_cast<std::size_t>(i)] + lhs2[static_cast<std::size_t>(i)] !=
          rhs[static_cast<std::size_t>(i)] + rhs2[static_cast<std::size_t>(i)])
        throw NonAssociativeCocycle("cocycle identity fails on triple " + debug_string(x) +
                                    ", " + debug_string(y) + ", " + debug_string(z));
    }
  };
  if (sample.size() <= 40) {
    for (const auto& x : sample)
      for (const auto& y : sample)
        for (const auto& z : sample) check_triple(x, y, z);
  } else {
    // ball too large for the cube; check a deterministic slice plus the
    // random triples below
    for (std::size_t i = 0; i < sample.size(); i += 7)
      for (std::size_t j = 0; j < sample.size(); j += 11)
        check_triple(sample[i], sample[j], sample[(i + j) % sample.size()]);
  }
  SplitMix64 rng(0x9eu);
  for (int i = 0; i < 1000; ++i) {
    const Element& x = sample[rng.below(sample.size())];
    const Element& y = sample[rng.below(sample.size())];
    const Element& z = sample[rng.below(sample.size())];
    check_triple(x, y, z);
  }

  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::CentralExtension;
  g->id_ = detail::next_group_id();
  g->base_ = base;
  g->z_rank_ = z_rank;
  g->cocycle_ = std::move(cocycle);
  g->name_ = "Z^" + std::to_string(z_rank) + "x_w" + base->name();
  if (fiber_names.empty()) {
    if (z_rank == 1)
      fiber_names = {"z"};
    else
      for (int i = 0; i < z_rank; ++i) fiber_names.push_back("z" + std::to_string(i + 1));
  }
  g->gen_names_ = fiber_names;
  for (int i = 0; i < z_rank; ++i) {
    std::vector<Int> f(static_cast<std::size_t>(z_rank), 0);
    f[static_cast<std::size_t>(i)] = 1;
    g->generators_.push_back(Element(g->id_, CentralPair{std::move(f), {base->identity()}}));
  }
  for (std::size_t i = 0; i < base->generators().size(); ++i) {
    g->gen_names_.push_back(base->generator_names()[i]);
    g->generators_.push_back(
        Element(g->id_, CentralPair{std::vector<Int>(static_cast<std::size_t>(z_rank), 0),
                                    {base->generators()[i]}}));
  }
  return g;
}

}  // namespace qhlab
