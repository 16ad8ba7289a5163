#pragma once

#include <string>

namespace lmtest {

struct SuiteResult {
    bool pass = true;
    std::size_t instances = 0;
    std::string detail;  // first failure, or a summary
    double seconds = 0;
};

// Golden corpus directory (set by the build).
std::string data_dir();

SuiteResult golden_decomposition();          // 1
SuiteResult golden_counterexample();         // 2
SuiteResult golden_nestedness();             // 3
SuiteResult golden_matchings();              // 4
SuiteResult golden_bl_divergence();          // 5
// 6, 8 and 9 share one generated population
struct InvertibleSuite {
    SuiteResult decomposition;   // 6
    SuiteResult cost_bound;      // 8
    SuiteResult correspondence;  // 9
};
InvertibleSuite invertible_suite(std::size_t n, unsigned seed);
SuiteResult nested_free_suite(std::size_t n, unsigned seed);            // 7
SuiteResult coarse_suite(std::size_t n, unsigned seed);                 // 10
SuiteResult oracle_suite(std::size_t n_rank, std::size_t n_mask, unsigned seed);  // 11
SuiteResult round_trip_suite();                                         // 12

}  // namespace lmtest
