#pragma once

// Round-robin modification schedule. Delegates are numbered 1..n. In iteration
// k (1-based up to n-1), modifier i works on the chain whose origin is
// (i - k) mod n, with residue 0 mapped to n so indices stay 1-based. Iteration
// 0 is the generation round, where every delegate "targets" its own chain.

#include <string>
#include <utility>
#include <vector>

#include "autoparl/errors.hpp"

namespace autoparl {

// 1-based chain origin targeted by `modifier` in iteration `iteration`.
inline int modification_target(int modifier, int iteration, int n) {
    if (n < 1) throw Error(ErrorKind::invalid_parliament, "delegate count must be at least 1");
    if (modifier < 1 || modifier > n)
        throw Error(ErrorKind::index, "modifier index " + std::to_string(modifier) +
                                          " out of range 1.." + std::to_string(n));
    if (iteration < 0 || iteration > n - 1)
        throw Error(ErrorKind::index, "iteration " + std::to_string(iteration) +
                                          " out of range 0.." + std::to_string(n - 1));
    int residue = (modifier - iteration) % n;
    if (residue <= 0) residue += n;
    return residue;
}

using Assignment = std::pair<int, int>;  // (modifier, chain origin)

// All (modifier, origin) assignments for one modification iteration (k >= 1).
inline std::vector<Assignment> iteration_assignments(int iteration, int n) {
    if (n < 1) throw Error(ErrorKind::invalid_parliament, "delegate count must be at least 1");
    if (iteration < 1 || iteration > n - 1)
        throw Error(ErrorKind::index, "modification iteration " + std::to_string(iteration) +
                                          " out of range 1.." + std::to_string(n - 1));
    std::vector<Assignment> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) out.emplace_back(i, modification_target(i, iteration, n));
    return out;
}

// The full schedule: n-1 iterations, each a complete assignment of modifiers
// to other delegates' chains. Every (modifier, chain) pair with
// modifier != origin occurs exactly once across the schedule.
inline std::vector<std::vector<Assignment>> plan_schedule(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_parliament, "delegate count must be at least 1");
    std::vector<std::vector<Assignment>> out;
    out.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 1; k <= n - 1; ++k) out.push_back(iteration_assignments(k, n));
    return out;
}

}  // namespace autoparl
