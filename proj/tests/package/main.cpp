#include <cstdio>

#include "ppbnb/solver.hpp"

int main() {
    ppbnb::SolverConfig cfg;
    cfg.tol_eps = 0.2;
    cfg.tol_delta = 0.2;
    const auto r = ppbnb::solve(ppbnb::get_problem("MOP"), cfg);
    std::printf("%s %zu\n", ppbnb::to_string(r.reason).c_str(), r.state.upper_archive.size());
    return r.reason == ppbnb::TerminationReason::Converged && !r.state.upper_archive.empty() ? 0 : 1;
}
