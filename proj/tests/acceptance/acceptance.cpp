// Cross-route acceptance suite: one pass/fail line per criterion, each
// pinned to its stated tolerance.  Exit status 0 only when every
// criterion passes.

#include <cstdio>

#include "modesum/verify.hpp"

int main() {
    bool all = true;
    auto on_done = [&](const modesum::verify::CriterionResult& r) {
        std::printf("[%s] %d. %s  measured %.3e (bound %.1e, %.1f s)%s%s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured,
                    r.threshold, r.seconds, r.note.empty() ? "" : "  -- ",
                    r.note.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    };
    modesum::verify::run_all(2, 7, on_done);
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
