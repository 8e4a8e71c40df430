#pragma once

// Subgroup distortion profiles: intrinsic vs extrinsic word lengths at a
// finite horizon. A superlinear verdict certifies (contrapositively) that the
// subgroup is not a quasi-retract within the horizon; the converse can never
// be concluded from finite data, and reports say so.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "qhlab/ball.hpp"
#include "qhlab/core.hpp"
#include "qhlab/subgroup.hpp"

namespace qhlab {

struct DistortionVerdict {
  enum Kind { LinearWithin, SuperlinearWithin } kind;
  double constant;  // Lipschitz bound for Linear, slope estimate for Superlinear
  int horizon;
};

struct DistortionProfile {
  // (intrinsic d_H, extrinsic d_G); deduplicated and sorted
  std::vector<std::pair<int, int>> pairs;
  // cumulative frontier: max intrinsic length per extrinsic distance
  std::vector<std::pair<int, int>> frontier;  // (extrinsic, max intrinsic)
  DistortionVerdict verdict;
  std::size_t skipped_above_horizon = 0;
  bool budget_exceeded = false;

  std::string to_csv() const {
    std::ostringstream os;
    os << "intrinsic,extrinsic\n";
    for (auto [i, e] : pairs) os << i << ',' << e << '\n';
    return os.str();
  }
};

// The profile is fed from both directions so distortion can actually show at
// small radius: every element of the H-ball of radius R is paired with its
// G-length, and every H-member discovered inside the G-ball of radius R is
// paired with its H-length. Least-squares slope of log(intrinsic) against
// log(extrinsic) over the frontier decides the verdict; slope > 1.3 reads as
// superlinear within the horizon.
inline DistortionProfile distortion_profile(const GroupHandle& g,
                                            const std::vector<Element>& gens_g,
                                            const SubgroupSpec& h,
                                            const std::vector<Element>& gens_h, int radius,
                                            BallOptions opts = {},
                                            double superlinear_slope = 1.3) {
  if (!h.exact())
    throw ValidationError("distortion profile needs an exact membership oracle");
  DistortionProfile out;

  Ball gball(g, gens_g, radius, opts);
  out.budget_exceeded |= !gball.complete();

  // extrinsic horizon for H-ball elements: an H-generator word of length R
  // has G-length at most R * max gen length
  int max_gen_len = 1;
  WordMetric dg(g, gens_g, opts);
  for (const auto& s : gens_h) {
    Distance d = dg(s, 64);
    if (d.known() && d.value > max_gen_len) max_gen_len = d.value;
  }
  int ext_horizon = radius * max_gen_len;

  Ball hball(g, gens_h, radius, opts);
  out.budget_exceeded |= !hball.complete();

  // H-members found in the G-ball, with exact extrinsic distance
  std::map<Element, int> ext;
  for (int r = 0; r <= gball.radius(); ++r)
    for (const auto& x : gball.strata()[static_cast<std::size_t>(r)])
      if (h.contains(x)) ext.emplace(x, r);

  // intrinsic distances: grow an H-word BFS until every collected element is
  // found (or the budget is hit)
  WordMetric dh(g, gens_h, opts);
  int intrinsic_horizon = radius;
  {
    std::size_t unresolved = ext.size();
    while (unresolved > 0 && !dh.capped()) {
      unresolved = 0;
      for (const auto& [x, r] : ext)
        if (!dh(x, intrinsic_horizon).known()) ++unresolved;
      if (unresolved > 0) intrinsic_horizon *= 2;
      if (intrinsic_horizon > (1 << 22)) break;
    }
  }

  std::map<std::pair<int, int>, bool> seen;
  for (const auto& [x, r] : ext) {
    Distance di = dh(x, intrinsic_horizon);
    if (!di.known()) {
      ++out.skipped_above_horizon;
      continue;
    }
    seen.emplace(std::make_pair(di.value, r), true);
  }
  for (int r = 0; r <= hball.radius(); ++r) {
    for (const auto& x : hball.strata()[static_cast<std::size_t>(r)]) {
      Distance de = dg(x, ext_horizon);
      if (!de.known()) {
        ++out.skipped_above_horizon;
        continue;
      }
      seen.emplace(std::make_pair(r, de.value), true);
    }
  }
  out.budget_exceeded |= dg.capped() || dh.capped();
  for (const auto& [p, _] : seen) out.pairs.push_back(p);

  // frontier and slope fit
  std::map<int, int> best;
  for (auto [intr, extr] : out.pairs)
    if (intr > 0 && extr > 0) best[extr] = std::max(best[extr], intr);
  int running = 0;
  for (auto [extr, intr] : best) {
    running = std::max(running, intr);
    out.frontier.emplace_back(extr, running);
  }

  double slope = 1.0;
  if (out.frontier.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = 0;
    for (auto [extr, intr] : out.frontier) {
      double x = std::log(static_cast<double>(extr));
      double y = std::log(static_cast<double>(intr));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      n += 1;
    }
    double denom = n * sxx - sx * sx;
    if (denom > 1e-12) slope = (n * sxy - sx * sy) / denom;
  }

  if (slope > superlinear_slope) {
    out.verdict = {DistortionVerdict::SuperlinearWithin, slope, radius};
  } else {
    double c = 1.0;
    for (auto [intr, extr] : out.pairs)
      if (extr > 0) c = std::max(c, static_cast<double>(intr) / extr);
    out.verdict = {DistortionVerdict::LinearWithin, c, radius};
  }
  return out;
}

inline DistortionProfile distortion_profile(const GroupHandle& g, const SubgroupSpec& h,
                                            int radius, BallOptions opts = {}) {
  return distortion_profile(g, g->generators(), h, h.generators(), radius, opts);
}

}  // namespace qhlab
