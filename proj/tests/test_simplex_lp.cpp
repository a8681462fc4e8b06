#include "avc/simplex_lp.hpp"
#include "doctest.h"

using namespace avc;

TEST_SUITE("simplex_lp") {

TEST_CASE("textbook maximization") {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36
    LinearProgram lp;
    lp.objective = {-3.0, -5.0};
    lp.add({1.0, 0.0}, Relation::LessEqual, 4.0);
    lp.add({0.0, 2.0}, Relation::LessEqual, 12.0);
    lp.add({3.0, 2.0}, Relation::LessEqual, 18.0);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-36.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("equality and greater-equal rows need phase one") {
    // min x + 2y + 3z, x + y + z = 1, y + z >= 0.5
    LinearProgram lp;
    lp.objective = {1.0, 2.0, 3.0};
    lp.add({1.0, 1.0, 1.0}, Relation::Equal, 1.0);
    lp.add({0.0, 1.0, 1.0}, Relation::GreaterEqual, 0.5);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.5));
}

TEST_CASE("redundant equalities and negative right-hand sides") {
    LinearProgram lp;
    lp.objective = {1.0, 1.0};
    lp.add({1.0, 1.0}, Relation::Equal, 2.0);
    lp.add({2.0, 2.0}, Relation::Equal, 4.0);
    lp.add({-1.0, 0.0}, Relation::LessEqual, -0.5);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(2.0));
    CHECK(r.x[0] >= 0.5 - 1e-9);
}

TEST_CASE("infeasible and unbounded programs") {
    LinearProgram infeasible;
    infeasible.objective = {1.0};
    infeasible.add({1.0}, Relation::LessEqual, 1.0);
    infeasible.add({1.0}, Relation::GreaterEqual, 2.0);
    CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

    LinearProgram unbounded;
    unbounded.objective = {-1.0, 0.0};
    unbounded.add({1.0, -1.0}, Relation::LessEqual, 1.0);
    CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate vertex does not cycle") {
    // Beale's cycling example.
    LinearProgram lp;
    lp.objective = {-0.75, 150.0, -0.02, 6.0};
    lp.add({0.25, -60.0, -0.04, 9.0}, Relation::LessEqual, 0.0);
    lp.add({0.5, -90.0, -0.02, 3.0}, Relation::LessEqual, 0.0);
    lp.add({0.0, 0.0, 1.0, 0.0}, Relation::LessEqual, 1.0);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(-0.05));
}

}
