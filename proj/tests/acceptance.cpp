// One line per acceptance criterion; exit status 0 iff every criterion passes.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "wheelcalc/checks.hpp"

int main(int argc, char** argv) {
    wc::CheckConfig cfg;
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    std::map<int, std::vector<wc::CheckResult>> by_criterion;
    for (auto& info : wc::check_catalog()) {
        auto r = wc::run_check(info.id, cfg);
        if (verbose) std::fprintf(stderr, "%s", wc::to_text({r}).c_str());
        by_criterion[info.criterion].push_back(r);
    }
    int failed = 0;
    for (auto& [k, rs] : by_criterion) {
        bool pass = true;
        long n = 0;
        double secs = 0;
        std::string ids, why;
        for (auto& r : rs) {
            pass = pass && r.status == wc::Status::pass;
            n += r.instances;
            secs += r.seconds;
            ids += (ids.empty() ? "" : ", ") + r.id;
            if (r.status != wc::Status::pass && why.empty())
                why = r.id + ": " + (r.counterexample.empty() ? r.detail : r.counterexample);
        }
        std::printf("criterion %2d %s  [%s] %ld instances, %.1fs\n", k, pass ? "PASS" : "FAIL", ids.c_str(), n, secs);
        if (!pass) {
            std::printf("    %s\n", why.c_str());
            ++failed;
        }
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(by_criterion.size()) - failed, by_criterion.size());
    return failed ? 1 : 0;
}
