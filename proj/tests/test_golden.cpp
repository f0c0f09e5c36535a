#include "doctest.h"

#include <fstream>
#include <string>

#include "gapfill/io.hpp"
#include "gapfill/kernel.hpp"
#include "gapfill/recovery.hpp"

#ifndef GAPFILL_TEST_DATA_DIR
#error "GAPFILL_TEST_DATA_DIR must point at tests/golden"
#endif

TEST_SUITE("golden") {

// Frozen end-to-end fixture: a committed synthesized signal recovered with a
// committed configuration must keep scoring the committed error. Guards the
// whole pipeline (CSV parse, kernel build, convolution, error metric)
// against silent numerical drift.
TEST_CASE("stored signal keeps its stored recovery error") {
    const std::string dir = GAPFILL_TEST_DATA_DIR;
    auto window = gapfill::read_signal_csv(dir + "/signal.csv");

    std::ifstream meta(dir + "/expected.txt");
    REQUIRE(meta.good());
    double expected = 0.0;
    meta >> expected;

    auto kernel = gapfill::build_kernel(
        gapfill::MissingIndexSet::from({0, 3}), 8, 57);
    auto result = gapfill::recover(window, kernel, 0, false);
    CHECK_FALSE(result.truncated);
    double error = gapfill::relative_error(result, window);
    CHECK(error == doctest::Approx(expected).epsilon(1e-13));
}

}  // TEST_SUITE
