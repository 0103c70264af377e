// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "trilinear/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace trilinear;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
};

std::string describe(const VerifyReport& r) {
    std::ostringstream out;
    out << r.suite << " " << r.checks << " checks, " << r.failures << " failures";
    if (r.max_relative_error > 0) out << ", max rel err " << r.max_relative_error;
    return out.str();
}

void show_details(const VerifyReport& r) {
    for (const auto& d : r.details) std::cerr << "  " << r.suite << ": " << d << "\n";
}

Outcome from_reports(std::initializer_list<VerifyReport> reports) {
    Outcome o{true, ""};
    for (const auto& r : reports) {
        o.pass = o.pass && r.ok();
        if (!o.summary.empty()) o.summary += "; ";
        o.summary += describe(r);
        show_details(r);
    }
    return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    SuiteConfig cfg;
    std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1,
         [&] {
             auto t0 = std::chrono::steady_clock::now();
             VerifyReport r = run_suite("table", cfg);
             double secs = seconds_since(t0);
             Outcome o = from_reports({r});
             o.pass = o.pass && secs < 60;
             o.summary += ", " + std::to_string(secs) + " s (limit 60 s)";
             return o;
         }},
        {2, [&] { return from_reports({run_suite("symmetry", cfg)}); }},
        {3, [&] { return from_reports({run_suite("zeroset", cfg)}); }},
        {4,
         [&] {
             SuiteConfig exact = cfg;
             exact.mode = EvalMode::Exact;
             Outcome o = from_reports({run_suite("kt", exact), run_suite("ks", exact), run_suite("rk", exact),
                                       run_suite("k0ints", exact)});
             PrecisionScope scope(256);
             SuiteConfig numeric = cfg;
             numeric.mode = EvalMode::Numeric;
             std::vector<VerifyReport> reps{run_suite("kt", numeric), run_suite("ks", numeric),
                                            run_suite("rk", numeric), run_suite("k0ints", numeric)};
             for (const auto& r : reps) {
                 o.pass = o.pass && r.ok() && r.max_relative_error < 1e-40;
                 o.summary += "; 256-bit " + describe(r);
                 show_details(r);
             }
             return o;
         }},
        {5, [&] { return from_reports({run_suite("deriv", cfg)}); }},
        {6, [&] { return from_reports({run_suite("bernstein", cfg)}); }},
        {7, [&] { return from_reports({run_suite("ranks", cfg), run_suite("vanishing", cfg)}); }},
        {8, [&] { return from_reports({run_suite("oracles", cfg)}); }},
        {9, [&] { return from_reports({run_suite("geometry", cfg)}); }},
    };

    bool all = true;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.summary << ")" << std::endl;
    }
    return all ? 0 : 1;
}
