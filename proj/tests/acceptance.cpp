// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstring>

#include "cubic/checks.hpp"

int main(int argc, char** argv) {
    cubic::CheckOptions opt;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--fast") == 0) opt.fast = true;
    bool all = true;
    for (const auto& r : cubic::run_checks(opt)) {
        std::printf("%s %d %s\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str());
        for (const auto& it : r.items)
            std::printf("    [%s] %s: %s\n", it.pass ? "ok" : "no", it.name.c_str(), it.detail.c_str());
        std::fflush(stdout);
        all &= r.pass();
    }
    return all ? 0 : 1;
}
