#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wfem/mesh.hpp"

using namespace wfem;

TEST_CASE("uniform mesh: node placement") {
    Mesh1D m = uniform_mesh(0, 1, 4);
    REQUIRE(m.nodes.size() == 5);
    double expect[5] = {0, 0.25, 0.5, 0.75, 1};
    for (int i = 0; i < 5; ++i) CHECK(m.nodes[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK(m.nodes.front() == 0.0);
    CHECK(m.nodes.back() == 1.0);
    CHECK(m.n_elements() == 4);

    Mesh1D single = uniform_mesh(0, 1, 1);
    REQUIRE(single.nodes.size() == 2);
    CHECK(single.nodes[0] == 0.0);
    CHECK(single.nodes[1] == 1.0);

    Mesh1D wide = uniform_mesh(-1, 3, 2);
    REQUIRE(wide.nodes.size() == 3);
    CHECK(wide.nodes[0] == doctest::Approx(-1.0));
    CHECK(wide.nodes[1] == doctest::Approx(1.0));
    CHECK(wide.nodes[2] == doctest::Approx(3.0));
    CHECK(wide.h() == doctest::Approx(2.0));
}

TEST_CASE("mesh validation") {
    CHECK_THROWS_AS(uniform_mesh(1, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(uniform_mesh(2, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(uniform_mesh(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_mesh({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_mesh({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_mesh({0.0, 0.7, 0.4, 1.0}), std::invalid_argument);
    CHECK_NOTHROW(make_mesh({0.0, 0.1, 1.0}));
}

TEST_CASE("element accessors") {
    Mesh1D m = make_mesh({0.0, 0.1, 0.4, 1.0});
    CHECK(m.a() == 0.0);
    CHECK(m.b() == 1.0);
    CHECK(m.xl(1) == doctest::Approx(0.1));
    CHECK(m.xr(1) == doctest::Approx(0.4));
    CHECK(m.h_of(2) == doctest::Approx(0.6));
    CHECK(m.h() == doctest::Approx(0.6));
}

TEST_CASE("quasi-uniformity ratio") {
    CHECK(quasi_uniformity(uniform_mesh(0, 1, 8)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quasi_uniformity(make_mesh({0.0, 0.5, 0.75, 1.0})) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quasi_uniformity(make_mesh({0.0, 0.5, 0.75, 1.0})) >= 1.0);
}

TEST_CASE("bisection: midpoint splitting") {
    Mesh1D m = bisect(make_mesh({0.0, 1.0}));
    REQUIRE(m.nodes.size() == 3);
    CHECK(m.nodes[1] == doctest::Approx(0.5));

    Mesh1D g = bisect(make_mesh({0.0, 0.25, 1.0}));
    REQUIRE(g.nodes.size() == 5);
    double expect[5] = {0, 0.125, 0.25, 0.625, 1};
    for (int i = 0; i < 5; ++i) CHECK(g.nodes[i] == doctest::Approx(expect[i]).epsilon(1e-15));

    // Two bisections of uniform(0,1,4) reproduce uniform(0,1,16).
    Mesh1D twice = bisect(bisect(uniform_mesh(0, 1, 4)));
    Mesh1D direct = uniform_mesh(0, 1, 16);
    REQUIRE(twice.nodes.size() == direct.nodes.size());
    for (size_t i = 0; i < twice.nodes.size(); ++i)
        CHECK(std::fabs(twice.nodes[i] - direct.nodes[i]) < 1e-15);

    // Size ratios are invariant under uniform bisection.
    Mesh1D graded = make_mesh({0.0, 0.5, 0.75, 1.0});
    CHECK(quasi_uniformity(bisect(graded)) ==
          doctest::Approx(quasi_uniformity(graded)).epsilon(1e-12));

    // Node ordering and endpoints survive bisection.
    Mesh1D b = bisect(graded);
    CHECK(b.a() == graded.a());
    CHECK(b.b() == graded.b());
    for (size_t i = 1; i < b.nodes.size(); ++i) CHECK(b.nodes[i] > b.nodes[i - 1]);
}
