#pragma once

#include <functional>
#include <string>
#include <vector>

namespace modesum::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;   // worst observed figure of merit
    double threshold = 0.0;  // acceptance bound on `measured`
    double seconds = 0.0;
    std::string note;
};

// Cross-route verification suite: every criterion compares independent
// computations (or closed forms) at a pinned tolerance.  `threads` feeds
// the engines that parallelize internally; results are identical for any
// thread count.
std::vector<CriterionResult> run_all(
    int threads = 1, unsigned long seed = 7,
    const std::function<void(const CriterionResult&)>& on_done = {});

} // namespace modesum::verify
