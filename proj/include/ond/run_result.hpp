#pragma once

#include <functional>

#include "ond/solution.hpp"
#include "ond/trace.hpp"

namespace ond {

struct RunResult {
  MultiGraphSolution solution;
  RunTrace trace;
  double cost = 0.0;  // accumulated online, decision by decision
};

// Called after request `index` has been served, with the solution so far.
using StepObserver = std::function<void(std::size_t index, const MultiGraphSolution&)>;

// Position of the nearest point in `candidates`; earlier entries win ties.
inline std::size_t nearest_index(const MetricSpace& m, PointId p, const std::vector<PointId>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (m(p, candidates[i]) < m(p, candidates[best])) best = i;
  return best;
}

inline void notify(const StepObserver& obs, std::size_t i, const MultiGraphSolution& sol) {
  if (obs) obs(i, sol);
}

inline void require_problem(const RequestSequence& seq, Problem p) {
  if (seq.problem != p)
    throw Error(ErrorCode::InvalidInput, std::string("expected a ") + to_string(p) + " instance, got " +
                                             to_string(seq.problem));
}

}  // namespace ond
