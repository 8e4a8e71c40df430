#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <boost/functional/hash.hpp>

#include "qhlab/core.hpp"

namespace qhlab {

class Element;

// Canonical payloads, one per group kind. Two elements of a group are equal
// exactly when their payloads are identical.

// Reduced word in a free group; letters are +i / -i for the i-th generator
// (1-based), with no adjacent cancelling pair.
struct FreeWord {
  std::vector<std::int32_t> letters;
};

// Exponent vector of a free abelian group.
struct ExponentVec {
  std::vector<Int> exps;
};

// t^shift s^flip in the infinite dihedral group <t,s | s^2=(st)^2=1>.
struct DihedralPair {
  Int shift = 0;
  std::uint8_t flip = 0;
};

// a^x b^y c^z in the discrete Heisenberg group, [a,b]=c central.
struct HeisenbergTriple {
  Int x = 0, y = 0, z = 0;
};

// BS(1,n) element as the affine map x -> n^k x + num/n^den_exp. The offset is
// kept as an n-adic rational in lowest terms (den_exp = 0 or n does not
// divide num), so equality is payload equality.
struct AffinePair {
  Int scale_exp = 0;
  BigInt num = 0;
  Int den_exp = 0;
};

// Index into a finite group's multiplication table.
struct FiniteIndex {
  std::uint32_t index = 0;
};

// Direct product: one element per factor.
struct ComponentTuple {
  std::vector<Element> parts;
};

// Central extension element (z, q); fiber holds the Z^k coordinate, base the
// single underlying quotient element.
struct CentralPair {
  std::vector<Int> fiber;
  std::vector<Element> base;  // exactly one entry
};

using ElementPayload =
    std::variant<FreeWord, ExponentVec, DihedralPair, HeisenbergTriple,
                 AffinePair, FiniteIndex, ComponentTuple, CentralPair>;

class Element {
 public:
  Element() = default;
  Element(std::uint32_t group_id, ElementPayload payload)
      : group_id_(group_id), payload_(std::move(payload)) {}

  std::uint32_t group_id() const { return group_id_; }
  const ElementPayload& payload() const { return payload_; }

  template <class T>
  const T& as() const {
    const T* p = std::get_if<T>(&payload_);
    if (!p) throw GroupMismatch("element payload has unexpected kind");
    return *p;
  }

  std::size_t hash() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  friend bool operator<(const Element& a, const Element& b);

 private:
  std::uint32_t group_id_ = 0;
  ElementPayload payload_;
};

namespace detail {

inline int cmp_big(const BigInt& a, const BigInt& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

template <class T>
int cmp(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

inline int cmp_payload(const ElementPayload& a, const ElementPayload& b);

inline int cmp_elements(const Element& a, const Element& b) {
  if (int c = cmp(a.group_id(), b.group_id())) return c;
  return cmp_payload(a.payload(), b.payload());
}

template <class Seq, class Less>
int cmp_seq(const Seq& a, const Seq& b, Less less) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = less(a[i], b[i])) return c;
  }
  return cmp(a.size(), b.size());
}

inline int cmp_payload(const ElementPayload& a, const ElementPayload& b) {
  if (int c = cmp(a.index(), b.index())) return c;
  struct Visitor {
    const ElementPayload& other;
    int operator()(const FreeWord& x) const {
      return cmp_seq(x.letters, std::get<FreeWord>(other).letters,
                     [](auto u, auto v) { return cmp(u, v); });
    }
    int operator()(const ExponentVec& x) const {
      return cmp_seq(x.exps, std::get<ExponentVec>(other).exps,
                     [](auto u, auto v) { return cmp(u, v); });
    }
    int operator()(const DihedralPair& x) const {
      const auto& y = std::get<DihedralPair>(other);
      if (int c = cmp(x.shift, y.shift)) return c;
      return cmp(x.flip, y.flip);
    }
    int operator()(const HeisenbergTriple& x) const {
      const auto& y = std::get<HeisenbergTriple>(other);
      if (int c = cmp(x.x, y.x)) return c;
      if (int c = cmp(x.y, y.y)) return c;
      return cmp(x.z, y.z);
    }
    int operator()(const AffinePair& x) const {
      const auto& y = std::get<AffinePair>(other);
      if (int c = cmp(x.scale_exp, y.scale_exp)) return c;
      if (int c = cmp_big(x.num, y.num)) return c;
      return cmp(x.den_exp, y.den_exp);
    }
    int operator()(const FiniteIndex& x) const {
      return cmp(x.index, std::get<FiniteIndex>(other).index);
    }
    int operator()(const ComponentTuple& x) const {
      return cmp_seq(x.parts, std::get<ComponentTuple>(other).parts,
                     cmp_elements);
    }
    int operator()(const CentralPair& x) const {
      const auto& y = std::get<CentralPair>(other);
      if (int c = cmp_seq(x.fiber, y.fiber,
                          [](auto u, auto v) { return cmp(u, v); }))
        return c;
      return cmp_seq(x.base, y.base, cmp_elements);
    }
  };
  return std::visit(Visitor{b}, a);
}

}  // namespace detail

inline bool operator==(const Element& a, const Element& b) {
  return detail::cmp_elements(a, b) == 0;
}

inline bool operator<(const Element& a, const Element& b) {
  return detail::cmp_elements(a, b) < 0;
}

inline std::size_t Element::hash() const {
  std::size_t h = payload_.index();
  struct Visitor {
    std::size_t& h;
    void operator()(const FreeWord& x) const {
      for (auto l : x.letters) hash_mix(h, static_cast<std::size_t>(static_cast<std::int64_t>(l)));
    }
    void operator()(const ExponentVec& x) const {
      for (auto e : x.exps) hash_mix(h, static_cast<std::size_t>(e));
    }
    void operator()(const DihedralPair& x) const {
      hash_mix(h, static_cast<std::size_t>(x.shift));
      hash_mix(h, x.flip);
    }
    void operator()(const HeisenbergTriple& x) const {
      hash_mix(h, static_cast<std::size_t>(x.x));
      hash_mix(h, static_cast<std::size_t>(x.y));
      hash_mix(h, static_cast<std::size_t>(x.z));
    }
    void operator()(const AffinePair& x) const {
      hash_mix(h, static_cast<std::size_t>(x.scale_exp));
      hash_mix(h, boost::hash<BigInt>{}(x.num));
      hash_mix(h, static_cast<std::size_t>(x.den_exp));
    }
    void operator()(const FiniteIndex& x) const { hash_mix(h, x.index); }
    void operator()(const ComponentTuple& x) const {
      for (const auto& p : x.parts) hash_mix(h, p.hash());
    }
    void operator()(const CentralPair& x) const {
      for (auto e : x.fiber) hash_mix(h, static_cast<std::size_t>(e));
      for (const auto& p : x.base) hash_mix(h, p.hash());
    }
  };
  std::visit(Visitor{h}, payload_);
  return h;
}

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

// Compact payload rendering for error messages and debugging. Report output
// goes through the generator-word printer in word_io.hpp instead.
inline std::string debug_string(const Element& e) {
  struct Visitor {
    std::string operator()(const FreeWord& x) const {
      std::string s = "w[";
      for (std::size_t i = 0; i < x.letters.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.letters[i]);
      return s + "]";
    }
    std::string operator()(const ExponentVec& x) const {
      std::string s = "(";
      for (std::size_t i = 0; i < x.exps.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.exps[i]);
      return s + ")";
    }
    std::string operator()(const DihedralPair& x) const {
      return "t^" + std::to_string(x.shift) + (x.flip ? " s" : "");
    }
    std::string operator()(const HeisenbergTriple& x) const {
      return "(" + std::to_string(x.x) + "," + std::to_string(x.y) + "," +
             std::to_string(x.z) + ")";
    }
    std::string operator()(const AffinePair& x) const {
      return "(k=" + std::to_string(x.scale_exp) + ",r=" + x.num.str() +
             "/n^" + std::to_string(x.den_exp) + ")";
    }
    std::string operator()(const FiniteIndex& x) const {
      return "#" + std::to_string(x.index);
    }
    std::string operator()(const ComponentTuple& x) const {
      std::string s = "(";
      for (std::size_t i = 0; i < x.parts.size(); ++i)
        s += (i ? ", " : "") + debug_string(x.parts[i]);
      return s + ")";
    }
    std::string operator()(const CentralPair& x) const {
      std::string s = "(z=";
      for (std::size_t i = 0; i < x.fiber.size(); ++i)
        s += (i ? "," : "") + std::to_string(x.fiber[i]);
      return s + "; " + debug_string(x.base[0]) + ")";
    }
  };
  return std::visit(Visitor{}, e.payload());
}

}  // namespace qhlab
