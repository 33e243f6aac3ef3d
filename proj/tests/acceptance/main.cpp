#include <chrono>
#include <cstdio>
#include <exception>
#include <vector>

#include "CLI11.hpp"
#include "criteria.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> ids;
    app.add_option("--criterion", ids, "criterion to run (repeatable; default all)")
        ->check(CLI::Range(1, acceptance::kCriteria));
    CLI11_PARSE(app, argc, argv);
    if (ids.empty()) {
        for (int i = 1; i <= acceptance::kCriteria; ++i) ids.push_back(i);
    }

    int failed = 0;
    for (int id : ids) {
        const auto start = std::chrono::steady_clock::now();
        acceptance::Outcome o;
        try {
            o = acceptance::run_criterion(id);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
