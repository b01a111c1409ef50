// Verdict concordance: the numerical certificate outcome against the
// closed-form threshold, on a grid straddling every flip point. Runs as its
// own binary since the two-copy three-qubit cells lift to D = 64.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entsub/bounds.hpp"
#include "entsub/discrimination.hpp"
#include "entsub/sampling.hpp"

using namespace entsub;

TEST_CASE("certificate outcomes agree with the closed-form verdict") {
    SearchConfig cfg;
    cfg.restarts = 100;

    for (const auto& dims : {std::vector<int>{2, 2}, {2, 3}, {2, 2, 2}}) {
        const SpaceSpec space(dims);
        for (int copies = 1; copies <= 2; ++copies) {
            const int64_t threshold = bounds::locc_threshold(space, copies);
            for (int64_t n = threshold - 1; n <= threshold + 1; ++n) {
                const bool expect_valid =
                    generic_verdict(space, n, copies) == ExpectedVerdict::distinguishable;
                const int64_t lifted_dim =
                    copies == 1 ? space.dim() : space.dim() * space.dim();
                const bool margin_case = !expect_valid && lifted_dim - (n - 1) == 1;

                int agree = 0;
                for (int i = 0; i < 50; ++i) {
                    RngStream rng(90000 + 100 * n + i, copies);
                    std::vector<StateVector> states;
                    for (int64_t k = 0; k < n; ++k)
                        states.push_back(random_state(space, rng));
                    const auto outcome = multicopy_certificate(states, copies, cfg, rng);
                    const bool valid = std::holds_alternative<Certificate>(outcome);
                    if (valid == expect_valid)
                        ++agree;
                    // a disagreement may only be a missed search on a
                    // distinguishable case, never a certificate where the
                    // threshold forbids one
                    if (!expect_valid)
                        REQUIRE_FALSE(valid);
                    if (!valid && margin_case) {
                        // exact converse on the one-dimensional complement
                        const auto& fail = std::get<SearchFailure>(outcome);
                        REQUIRE(fail.complement_dim == 1);
                        bool entangled = false;
                        for (int r : fail.complement_cut_ranks)
                            entangled |= r > 1;
                        CHECK(entangled);
                    }
                }
                INFO("dims " << dims[0] << "x.. n " << n << " copies " << copies);
                CHECK(agree >= 48); // >= 95% of 50
            }
        }
    }
}
