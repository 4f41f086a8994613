// Acceptance suite: one numbered criterion per function, each printing a
// single PASS/FAIL line. Run all with no arguments or one with
// --criterion N. Fails are reflected in the exit code.

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lprx/mimo.hpp"
#include "lprx/optim.hpp"
#include "lprx/polytope.hpp"
#include "lprx/receivers.hpp"
#include "lprx/rng.hpp"
#include "lprx/sim.hpp"

using namespace lprx;

namespace {

struct Criterion {
    std::string title;
    std::function<bool(std::string&)> run;
};

ParityCheckMatrix hamming74() {
    return ParityCheckMatrix(3, 7,
                             {{0, 0}, {0, 2}, {0, 4}, {0, 6},
                              {1, 1}, {1, 2}, {1, 5}, {1, 6},
                              {2, 3}, {2, 4}, {2, 5}, {2, 6}});
}

bool criterion_placeholder(std::string& detail) {
    detail = "not implemented yet";
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    std::map<int, Criterion> criteria;
    criteria[1] = {"ML certificate on Hamming(7,4), exact and fs", criterion_placeholder};
    criteria[2] = {"exact/fs polytope equivalence, degrees 3-6", criterion_placeholder};
    criteria[3] = {"decomposition soundness, degrees 3-6", criterion_placeholder};
    criteria[4] = {"flow LP equals Viterbi on (5,7) L=64", criterion_placeholder};
    criteria[5] = {"turbo connecting constraints on a 2-state code", criterion_placeholder};
    criteria[6] = {"DLMV correctness and scale invariance", criterion_placeholder};
    criteria[7] = {"code-diversity BER trend at desk scale", criterion_placeholder};
    criteria[8] = {"sweep determinism, byte-identical CSV", criterion_placeholder};
    criteria[9] = {"complex/real transform equivalence", criterion_placeholder};

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        }
    }

    bool all_ok = true;
    for (const auto& [number, criterion] : criteria) {
        if (only != 0 && number != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        all_ok &= ok;
        std::cout << "criterion " << number << " [" << (ok ? "PASS" : "FAIL") << "] "
                  << criterion.title << (detail.empty() ? "" : " -- " + detail) << std::endl;
    }
    return all_ok ? 0 : 1;
}
