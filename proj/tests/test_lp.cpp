#include <doctest.h>

#include "deflab/lp.hpp"

using namespace deflab;

TEST_CASE("bounded maximization") {
    // max x s.t. x <= 3 (as -x >= -3).
    LinearProgram lp;
    int x = lp.add_var();
    lp.objective[x] = 1;
    lp.ge.push_back({{{x, rat(-1)}}, rat(-3)});
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == rat(3));
    CHECK(sol.x[x] == rat(3));
}

TEST_CASE("infeasible equalities are detected") {
    LinearProgram lp;
    int x = lp.add_var();
    lp.eq.push_back({{{x, rat(1)}}, rat(1)});
    lp.eq.push_back({{{x, rat(1)}}, rat(0)});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);

    LinearProgram lp2;
    int y = lp2.add_var();
    lp2.ge.push_back({{{y, rat(1)}}, rat(1)});
    lp2.ge.push_back({{{y, rat(-1)}}, rat(0)});  // y <= 0 and y >= 1
    CHECK(solve_lp(lp2).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded direction is reported") {
    LinearProgram lp;
    int x = lp.add_var();
    lp.objective[x] = 1;
    lp.ge.push_back({{{x, rat(1)}}, rat(0)});
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("free variables and exact rational vertices") {
    // max x + y s.t. x + 2y = 1, x - y >= -2, y >= -5, x <= 10.
    LinearProgram lp;
    int x = lp.add_var(), y = lp.add_var();
    lp.objective[x] = 1;
    lp.objective[y] = 1;
    lp.eq.push_back({{{x, rat(1)}, {y, rat(2)}}, rat(1)});
    lp.ge.push_back({{{x, rat(1)}, {y, rat(-1)}}, rat(-2)});
    lp.ge.push_back({{{y, rat(1)}}, rat(-5)});
    lp.ge.push_back({{{x, rat(-1)}}, rat(-10)});
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // x = 10 forces y = -9/2; objective 11/2. Constraint x - y = 29/2 >= -2 ok.
    CHECK(sol.value == rat(11, 2));
    CHECK(sol.x[x] == rat(10));
    CHECK(sol.x[y] == rat(-9, 2));
}

TEST_CASE("degenerate ties terminate under Bland's rule") {
    // Beale's cycling example; Bland must terminate at the optimum 1/20.
    LinearProgram lp;
    int x4 = lp.add_var(), x5 = lp.add_var(), x6 = lp.add_var(), x7 = lp.add_var();
    lp.objective[x4] = rat(3, 4);
    lp.objective[x5] = rat(-150);
    lp.objective[x6] = rat(1, 50);
    lp.objective[x7] = rat(-6);
    lp.ge.push_back(
        {{{x4, rat(-1, 4)}, {x5, rat(60)}, {x6, rat(1, 25)}, {x7, rat(-9)}}, rat(0)});
    lp.ge.push_back(
        {{{x4, rat(-1, 2)}, {x5, rat(90)}, {x6, rat(1, 50)}, {x7, rat(-3)}}, rat(0)});
    lp.ge.push_back({{{x6, rat(-1)}}, rat(-1)});
    lp.ge.push_back({{{x4, rat(1)}}, rat(0)});
    lp.ge.push_back({{{x5, rat(1)}}, rat(0)});
    lp.ge.push_back({{{x6, rat(1)}}, rat(0)});
    lp.ge.push_back({{{x7, rat(1)}}, rat(0)});
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == rat(1, 20));
    CHECK(sol.x[x4] == rat(1, 25));
    CHECK(sol.x[x6] == rat(1));
}

TEST_CASE("strict feasibility via one maximized slack") {
    // x > 0, x < 1 has interior; x > 0, x <= 0 does not.
    LinearProgram lp;
    int x = lp.add_var(), d = lp.add_var();
    lp.objective[d] = 1;
    lp.ge.push_back({{{x, rat(1)}, {d, rat(-1)}}, rat(0)});       // x >= d
    lp.ge.push_back({{{x, rat(-1)}, {d, rat(-1)}}, rat(-1)});     // x <= 1 - d
    lp.ge.push_back({{{d, rat(-1)}}, rat(-1)});                   // d <= 1
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == rat(1, 2));

    LinearProgram lp2;
    int y = lp2.add_var(), e = lp2.add_var();
    lp2.objective[e] = 1;
    lp2.ge.push_back({{{y, rat(1)}, {e, rat(-1)}}, rat(0)});
    lp2.ge.push_back({{{y, rat(-1)}}, rat(0)});
    lp2.ge.push_back({{{e, rat(-1)}}, rat(-1)});
    LpSolution sol2 = solve_lp(lp2);
    REQUIRE(sol2.status == LpStatus::Optimal);
    CHECK(sol2.value == rat(0));  // boundary only: no strict point
}
