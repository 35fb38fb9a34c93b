// Named metric catalog: closed-form charts used by the verification suites
// and the CLI. Each entry carries the metric, a box on which the chart is
// valid for sampling, and (where meaningful) a corank-1 spacelike
// distribution H with timelike complement V for the stretch sweeps.

#pragma once

#include <string>
#include <vector>

#include "lorentz/distributions.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/smallmat.hpp"

namespace lorentz {

struct CatalogEntry {
  std::string id;
  std::string summary;
  MetricField metric;
  VecN box_lo;  // axis-aligned sample region of the chart
  VecN box_hi;
  bool has_split = false;  // H/V/anchor below are set
  Distribution h;          // corank-1, spacelike on the box
  Distribution v;          // rank-1, timelike on the box
  VecN anchor;             // representative point for sweeps
};

// Available ids:
//   minkowski3, minkowski4  flat index-1 metrics with the spatial split
//   euclidean3              flat index-0 metric (no split)
//   g13                     twisted index-1 family member c = 1 on R^3
//   g13-perturbed           g13 times a conformal factor 1 + 0.05 sin(x1+x2)
//   sphere2                 round unit 2-sphere chart (theta, phi)
//   schwarzschild-patch     static vacuum chart, mass 1, r in [2.6, 3.6]
//   poly3                   fixed polynomial congruence metric, index 1
const std::vector<std::string>& catalog_ids();

// Throws ContractError for an unknown id.
CatalogEntry catalog_entry(const std::string& id);

}  // namespace lorentz
