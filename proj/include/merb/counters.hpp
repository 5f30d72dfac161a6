#pragma once

#include <cstdint>

namespace merb {

/// Work counters owned by a single integration run.
///
/// slow_calls counts evaluations of the frozen nonlinear remainder (each one
/// costs a full right-hand side evaluation); fast_calls counts fast RHS
/// evaluations (Jacobian action plus forcing polynomial); jac_action_calls
/// counts every application of the frozen Jacobian action, wherever it
/// occurs; fast_solves counts fast-IVP solves.
struct CallCounters {
    std::int64_t slow_calls = 0;
    std::int64_t fast_calls = 0;
    std::int64_t jac_action_calls = 0;
    std::int64_t fast_solves = 0;

    void reset() { *this = CallCounters{}; }

    std::int64_t total_calls() const { return slow_calls + fast_calls; }
};

}  // namespace merb
