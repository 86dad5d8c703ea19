#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symflow/point.hpp"
#include "symflow/subshift.hpp"
#include "symflow/suspension.hpp"

namespace symflow {

// ocap(E) = lim sup_T sup_x (1/T) #{0 <= t < T : sigma^t x in E}
struct OcapResult {
  double upperEstimate = 0;  // sup over orbit segments of length horizon
  double lowerWitness = 0;   // frequency along the witness
  std::optional<Word> witness;  // period word of a periodic witness
  std::size_t horizon = 0;
  std::string method;
};

// E is a union of cylinders. Exact sup over admissible words for SFTs
// (Rauzy-graph dynamic program), over the language window otherwise.
OcapResult orbitCapacity(const Subshift& s, const std::vector<Cylinder>& e, std::size_t horizon,
                         std::size_t maxPeriod = 12);

// sup over the given orbits of the visit frequency in [0, horizon)
OcapResult sampledOrbitCapacity(const std::vector<PointOracle>& orbits, const std::vector<Cylinder>& e,
                                std::size_t horizon);

// E = union of slabs B x [from, to) in the suspension; occupation-time frequency over [0, T]
struct TowerSlab {
  Cylinder base;
  QuadraticReal from, to;
};
OcapResult flowOrbitCapacity(const SuspensionFlow& f, const std::vector<PointOracle>& orbits,
                             const std::vector<TowerSlab>& e, double horizon);

}  // namespace symflow
