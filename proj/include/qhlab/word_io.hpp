#pragma once

// Rendering elements as generator words and parsing words back. Reports never
// show internal payloads; witnesses go through element_word.

#include <sstream>
#include <string>
#include <vector>

#include "qhlab/core.hpp"
#include "qhlab/element.hpp"
#include "qhlab/group.hpp"

namespace qhlab {

// Signed 1-based generator indices spelling the element (not necessarily a
// geodesic word).
inline std::vector<int> element_to_letters(const GroupHandle& g, const Element& e) {
  g->check_member(e);
  std::vector<int> out;
  auto push_run = [&out](int letter, Int count) {
    if (count < 0) {
      letter = -letter;
      count = -count;
    }
    if (count > 1'000'000) throw InvalidParameters("word too long to render");
    for (Int i = 0; i < count; ++i) out.push_back(letter);
  };
  switch (g->kind()) {
    case GroupKind::Free: {
      for (auto l : e.as<FreeWord>().letters) out.push_back(l);
      return out;
    }
    case GroupKind::FreeAbelian: {
      const auto& v = e.as<ExponentVec>().exps;
      for (std::size_t i = 0; i < v.size(); ++i) push_run(static_cast<int>(i) + 1, v[i]);
      return out;
    }
    case GroupKind::InfiniteDihedral: {
      const auto& d = e.as<DihedralPair>();
      push_run(1, d.shift);
      if (d.flip) out.push_back(2);
      return out;
    }
    case GroupKind::Heisenberg: {
      const auto& h = e.as<HeisenbergTriple>();
      push_run(1, h.x);
      push_run(2, h.y);
      push_run(3, h.z);
      return out;
    }
    case GroupKind::BaumslagSolitar: {
      // (k, p/n^v)  =  t^-v a^p t^(v+k)
      const auto& a = e.as<AffinePair>();
      if (a.num > 1'000'000 || a.num < -1'000'000)
        throw InvalidParameters("word too long to render");
      push_run(2, -a.den_exp);
      push_run(1, static_cast<Int>(a.num));
      push_run(2, a.den_exp + a.scale_exp);
      return out;
    }
    case GroupKind::Finite: {
      auto i = e.as<FiniteIndex>().index;
      if (i != 0) out.push_back(static_cast<int>(i));  // generator list is all non-identity elements
      return out;
    }
    case GroupKind::DirectProduct: {
      const auto& parts = e.as<ComponentTuple>().parts;
      int offset = static_cast<int>(g->left()->generators().size());
      for (int l : element_to_letters(g->left(), parts[0])) out.push_back(l);
      for (int l : element_to_letters(g->right(), parts[1]))
        out.push_back(l > 0 ? l + offset : l - offset);
      return out;
    }
    case GroupKind::CentralExtension: {
      const auto& cp = e.as<CentralPair>();
      int z = g->z_rank();
      std::vector<int> base_letters = element_to_letters(g->base(), cp.base[0]);
      std::vector<int> lifted;
      for (int l : base_letters) lifted.push_back(l > 0 ? l + z : l - z);
      // the product of the lifted letters lands on (err, q); emit fiber
      // letters for the difference first
      Element lift = g->word_to_element(lifted);
      const auto& err = lift.as<CentralPair>().fiber;
      for (int i = 0; i < z; ++i) push_run(i + 1, cp.fiber[static_cast<std::size_t>(i)] -
                                                      err[static_cast<std::size_t>(i)]);
      out.insert(out.end(), lifted.begin(), lifted.end());
      return out;
    }
  }
  throw WrongKind("unknown group kind");
}

// "a^2 b^-1" style rendering; identity renders as "1".
inline std::string element_word(const GroupHandle& g, const Element& e) {
  std::vector<int> letters = element_to_letters(g, e);
  if (letters.empty()) return "1";
  const auto& names = g->generator_names();
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    int l = letters[i];
    std::size_t j = i;
    while (j < letters.size() && letters[j] == l) ++j;
    Int exp = static_cast<Int>(j - i) * (l > 0 ? 1 : -1);
    if (!first) os << ' ';
    first = false;
    os << names.at(static_cast<std::size_t>((l > 0 ? l : -l) - 1));
    if (exp != 1) os << '^' << exp;
    i = j;
  }
  return os.str();
}

// Parses space-separated tokens "name" or "name^exp"; "1" is the identity.
inline Element parse_word(const GroupHandle& g, const std::string& text) {
  std::istringstream is(text);
  std::string token;
  std::vector<int> letters;
  const auto& names = g->generator_names();
  while (is >> token) {
    if (token == "1") continue;
    std::string name = token;
    Int exp = 1;
    if (auto pos = token.find('^'); pos != std::string::npos) {
      name = token.substr(0, pos);
      try {
        exp = std::stoll(token.substr(pos + 1));
      } catch (const std::exception&) {
        throw ParseError("bad exponent in word token '" + token + "'");
      }
    }
    int idx = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) {
        idx = static_cast<int>(i) + 1;
        break;
      }
    if (idx < 0) throw ParseError("unknown generator '" + name + "' in word");
    Int count = exp < 0 ? -exp : exp;
    for (Int i = 0; i < count; ++i) letters.push_back(exp < 0 ? -idx : idx);
  }
  return g->word_to_element(letters);
}

}  // namespace qhlab
