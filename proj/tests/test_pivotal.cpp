#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "lpm/neighbor_index.hpp"
#include "lpm/pivotal.hpp"

using namespace lpm;

namespace {

Matrix line_coords(std::initializer_list<double> xs) {
    Matrix m(xs.size(), 1);
    std::size_t i = 0;
    for (double x : xs) m(i++, 0) = x;
    return m;
}

// Corners of the unit square.
Matrix square_coords() {
    Matrix m(4, 2);
    m(0, 0) = 0; m(0, 1) = 0;
    m(1, 0) = 1; m(1, 1) = 0;
    m(2, 0) = 0; m(2, 1) = 1;
    m(3, 0) = 1; m(3, 1) = 1;
    return m;
}

}  // namespace

TEST_CASE("pivotal_update follows the two-branch rule") {
    // sum < 1: (0.3, 0.4) splits at pi_j/sum = 4/7
    auto [aязы, b0] = pivotal_update(0.3, 0.4, 0.0);
    CHECK(a0 == 0.0);
    CHECK(b0 == doctest::Approx(0.7).epsilon(1e-15));
}
