#pragma once

#include <stdexcept>
#include <string>

namespace compdc {

/// An instance or placement violates capacity/assignment constraints.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// The greedy heuristic ran into a dead end. The instance itself may still be
/// solvable by the exact solver.
class GreedyDeadEnd : public InfeasibleError {
 public:
  explicit GreedyDeadEnd(const std::string& what) : InfeasibleError(what) {}
};

}  // namespace compdc
