#pragma once

#include <functional>
#include <string>
#include <vector>

namespace k3gw {

struct SuiteOptions {
    std::string conj_mode = "full";  // d <= 2 of the operator WDVV suite
    bool conj_d3 = true;             // add 200 sampled pairs at d = 3
    bool genus1_lattice = true;      // contract on the lattice model as well as the orthogonal one
    int h_max = 10;                  // hyperelliptic window, at most 15
    unsigned threads = 0;
};

struct SuiteResult {
    int id = 0;
    std::string key;
    std::string title;
    bool pass = true;
    double seconds = 0;
    double budget = 0;
    std::string detail;
};

struct Suite {
    int id;
    std::string key;  // CLI name
    std::string title;
    double budget;    // seconds
    std::function<SuiteResult(const SuiteOptions&)> run;
};

// The acceptance criteria in order 1..12.
const std::vector<Suite>& suites();
// Runs one suite; exceptions and budget overruns become failures.
SuiteResult run_suite(const Suite& s, const SuiteOptions& opt);
// "PASS  3 name   0.54s  detail"
std::string format_result(const SuiteResult& r);

}  // namespace k3gw
