#pragma once

#include <stdexcept>
#include <string>

namespace hardinian {

// Thrown when a configurable work budget (backtracking nodes, live DP states,
// determinant evaluations) runs out before the computation finishes.
class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hardinian
