#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qhlab {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameters : Error { using Error::Error; };
struct NonAssociativeCocycle : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct WrongKind : Error { using Error::Error; };
struct NotCyclicallyReduced : Error { using Error::Error; };
struct NotCentral : Error { using Error::Error; };
struct BoundedQuasimorphism : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct BudgetError : Error { using Error::Error; };

// A prerequisite of a construction failed at the probing horizon. Carries the
// name of the failing hypothesis and a witness printed as a generator word.
struct UnstablePrerequisite : Error {
  UnstablePrerequisite(const std::string& hypothesis, const std::string& witness)
      : Error("unstable prerequisite: " + hypothesis +
              (witness.empty() ? "" : " (witness " + witness + ")")),
        failed_hypothesis(hypothesis),
        witness_word(witness) {}
  std::string failed_hypothesis;
  std::string witness_word;
};

// Word-metric distance measured with an explicit cutoff. AboveHorizon is a
// value, not an error; it propagates through comparisons.
struct Distance {
  static Distance exact(int v) { return Distance{false, v}; }
  static Distance above(int horizon) { return Distance{true, horizon}; }
  bool above_horizon = false;
  int value = 0;  // the distance, or the horizon that was probed

  bool known() const { return !above_horizon; }
  friend bool operator==(const Distance& a, const Distance& b) {
    return a.above_horizon == b.above_horizon && a.value == b.value;
  }
};

inline std::string to_string(const Distance& d) {
  return d.above_horizon ? ">" + std::to_string(d.value) : std::to_string(d.value);
}

// splitmix64: deterministic sampling across platforms, seeds are pinned by
// the callers so reports stay byte-identical between runs.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

inline void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace qhlab
