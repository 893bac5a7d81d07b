#include <doctest.h>

#include <cmath>

#include "ipls/linalg.hpp"
#include "ipls/model.hpp"
#include "ipls/rng.hpp"

using namespace ipls;
using rounding::Mode;
using rounding::ScopedMode;

namespace {

const std::vector<std::string> kNames = {"p1", "p2", "p3"};

double ev(const std::string& s, double p1 = 0.0, double p2 = 0.0, double p3 = 0.0) {
    Vec p(3);
    p << p1, p2, p3;
    return eval_point(*parse_expr(s, kNames), p);
}

}  // namespace

TEST_CASE("parser precedence and associativity") {
    CHECK(ev("1+2*3") == 7.0);
    CHECK(ev("2*3^2") == 18.0);
    CHECK(ev("-2^2") == -4.0);  // unary minus applies to the whole power
    CHECK(ev("(1+2)*3") == 9.0);
    CHECK(ev("8/4/2") == 1.0);
    CHECK(ev("1-2-3") == -4.0);
    CHECK(ev("2^0") == 1.0);
    CHECK(ev(" .5 * 4 ") == 2.0);
    CHECK(ev("1e2+1") == 101.0);
    CHECK(ev("p1*p2+p3", 2.0, 3.0, 4.0) == 10.0);
    CHECK(ev("-p1^2", 3.0) == -9.0);
    CHECK(ev("144^3") == doctest::Approx(2985984.0));
}

TEST_CASE("parser rejects malformed input with positions") {
    auto pos = [](const std::string& s) {
        try {
            parse_expr(s, kNames);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position);
        }
        return -1L;
    };
    CHECK(pos("1+") >= 0);
    CHECK(pos("1 2") == 2);     // trailing input
    CHECK(pos(")") == 0);
    CHECK(pos("(1+2") >= 0);
    CHECK(pos("p1^-2") >= 0);   // exponent must be a nonnegative integer
    CHECK(pos("p1^p2") >= 0);
    CHECK(pos("p1^2.5") >= 0);
    CHECK(pos("") >= 0);
    CHECK(pos("1*/2") >= 0);
    CHECK_THROWS_AS(parse_expr("q1+1", kNames), UnknownParameter);
}

TEST_CASE("RAF evaluation of expressions") {
    ScopedMode fast(Mode::Fast);
    std::vector<RAF> params = {RAF::from_parameter(1, Interval(-1.0, 1.0), 2),
                               RAF::from_parameter(2, Interval(2.0, 4.0), 2)};

    // p1^2 over [-1,1] is [0,1] (Chebyshev product is exact here).
    RAF sq = eval_raf(*parse_expr("p1*p1", kNames), params);
    CHECK(sq.to_interval().lo() == doctest::Approx(0.0));
    CHECK(sq.to_interval().hi() == doctest::Approx(1.0));

    RAF lin = eval_raf(*parse_expr("2*p1 - p2 + 3", kNames), params);
    CHECK(lin.center() == doctest::Approx(0.0));
    CHECK(lin.dev()[0] == doctest::Approx(2.0));
    CHECK(lin.dev()[1] == doctest::Approx(-1.0));
    CHECK(lin.err() == doctest::Approx(0.0));

    // Division by a degenerate constant is an exact scale.
    RAF half = eval_raf(*parse_expr("p1/2", kNames), params);
    CHECK(half.dev()[0] == 0.5);

    // Division by a parameter goes through the min-range reciprocal.
    RAF quot = eval_raf(*parse_expr("1/p2", kNames), params);
    CHECK(quot.to_interval().contains(Interval(0.25, 0.5)));

    CHECK_THROWS_AS(eval_raf(*parse_expr("1/(p1)", kNames), params), ZeroInRange);
    CHECK_THROWS_AS(eval_raf(*parse_expr("1/0", kNames), params), DivisionByZeroInterval);
}

TEST_CASE("affine extraction") {
    auto part = [](const std::string& s) { return extract_affine(*parse_expr(s, kNames), 3); };

    AffinePart a = part("1 + 2*p1 - p2");
    CHECK(a.affine);
    CHECK(a.c == doctest::Approx(1.0));
    CHECK(a.lin[0] == doctest::Approx(2.0));
    CHECK(a.lin[1] == doctest::Approx(-1.0));
    CHECK(a.lin[2] == doctest::Approx(0.0));

    CHECK(part("p1/2").affine);
    CHECK(part("p1/2").lin[0] == doctest::Approx(0.5));
    CHECK(part("(p1+p2)*3").lin[1] == doctest::Approx(3.0));
    CHECK(part("p1^1").affine);
    CHECK(part("p2^0").affine);
    CHECK(part("2^3").c == doctest::Approx(8.0));
    CHECK(part("-(p1 - 4)").lin[0] == doctest::Approx(-1.0));

    CHECK_FALSE(part("p1*p2").affine);
    CHECK_FALSE(part("p1^2").affine);
    CHECK_FALSE(part("1/p1").affine);
    CHECK_FALSE(part("p1*(1+p2)").affine);
}

TEST_CASE("problem parsing and export round-trip") {
    ScopedMode fast(Mode::Fast);
    const std::string text = R"({
      "n": 2,
      "parameters": [
        {"name": "p1", "interval": [1.0, 2.0]},
        {"name": "p2", "interval": [0.5, 1.0]}
      ],
      "A": [["p1+p2", "1"], ["0", "2*p2"]],
      "b": ["1", "2"]
    })";
    ParametricSystem sys = parse_problem(text);
    CHECK(sys.n == 2);
    CHECK(sys.K == 2);
    CHECK(sys.names[0] == "p1");
    CHECK(sys.p[0].lo() == 1.0);
    CHECK(sys.p[1].hi() == 1.0);

    Vec pt(2);
    pt << 1.5, 0.75;
    Mat A = eval_matrix(sys, pt);
    CHECK(A(0, 0) == doctest::Approx(2.25));
    CHECK(A(1, 1) == doctest::Approx(1.5));
    Vec b = eval_rhs(sys, pt);
    CHECK(b[1] == 2.0);

    ParametricSystem back = parse_problem(export_problem(sys));
    CHECK(back.n == sys.n);
    CHECK(back.K == sys.K);
    for (int k = 0; k < sys.K; ++k) {
        CHECK(back.p[k].lo() == sys.p[k].lo());
        CHECK(back.p[k].hi() == sys.p[k].hi());
    }
    IntervalAffineSystem s1 = affine_transform(sys);
    IntervalAffineSystem s2 = affine_transform(back);
    CHECK((s1.C0 - s2.C0).norm() == 0.0);
    for (int k = 0; k < 2; ++k) CHECK((s1.Ck[k] - s2.Ck[k]).norm() == 0.0);
    CHECK((s1.c0 - s2.c0).norm() == 0.0);
}

TEST_CASE("problem parsing rejects malformed schemas") {
    CHECK_THROWS_AS(parse_problem("not json"), ParseError);
    CHECK_THROWS_AS(parse_problem("{}"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"n": 1, "parameters": [], "A": [["1","2"]], "b": ["1"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"n": 1, "parameters": [], "A": [["1"]], "b": []})"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_problem(
            R"({"n": 1, "parameters": [{"name": "p", "interval": [2, 1]}], "A": [["p"]], "b": ["1"]})"),
        Error);
    CHECK_THROWS_AS(parse_problem(R"({"n": 1, "parameters": [], "A": [["1+"]], "b": ["1"]})"),
                    ParseError);
}

TEST_CASE("rigorous parsing nudges parameter ranges outward") {
    const std::string text =
        R"({"n": 1, "parameters": [{"name": "p", "interval": [0.1, 0.2]}], "A": [["p"]], "b": ["1"]})";
    Interval fast_p, rig_p;
    {
        ScopedMode fast(Mode::Fast);
        fast_p = parse_problem(text).p[0];
    }
    {
        ScopedMode rig(Mode::Rigorous);
        rig_p = parse_problem(text).p[0];
    }
    CHECK(rig_p.lo() <= fast_p.lo());
    CHECK(rig_p.hi() >= fast_p.hi());
    CHECK(rig_p.contains(fast_p));
}

TEST_CASE("affine transform agrees with structural extraction") {
    ScopedMode fast(Mode::Fast);
    const std::string text = R"({
      "n": 2,
      "parameters": [{"name": "p", "interval": [0.5, 3.5]}],
      "A": [["p", "2*p"], ["2", "1"]],
      "b": ["1", "1"]
    })";
    ParametricSystem sys = parse_problem(text);
    auto lin = as_affine_linear(sys);
    REQUIRE(lin.has_value());
    CHECK(lin->A0(1, 0) == 2.0);
    CHECK(lin->Ak[0](0, 1) == 2.0);

    IntervalAffineSystem a = affine_transform(sys);
    IntervalAffineSystem b = to_interval_affine(*lin);
    CHECK((a.C0 - b.C0).norm() < 1e-15);
    CHECK((a.Ck[0] - b.Ck[0]).norm() < 1e-15);
    CHECK(a.Cr.norm() == 0.0);
    CHECK(b.Cr.norm() == 0.0);
    CHECK((a.c0 - b.c0).norm() < 1e-15);
    CHECK((a.ck[0] - b.ck[0]).norm() < 1e-15);

    // Nonlinear entries have no structural form.
    ParametricSystem nl = parse_problem(
        R"({"n": 1, "parameters": [{"name": "p", "interval": [1, 2]}], "A": [["p*p"]], "b": ["1"]})");
    CHECK_FALSE(as_affine_linear(nl).has_value());
    // But the affine transform still encloses them, via the err column.
    IntervalAffineSystem e = affine_transform(nl);
    CHECK(e.Cr(0, 0) > 0.0);
}

TEST_CASE("complex realification") {
    ScopedMode fast(Mode::Fast);
    std::vector<std::string> names = {"g"};
    IntervalVector p = {Interval(1.0, 2.0)};
    auto entry = [&](const std::string& s) { return ExprEntry{parse_expr(s, names), s}; };

    std::vector<std::vector<ExprEntry>> Are = {{entry("g")}};
    std::vector<std::vector<ExprEntry>> Aim = {{entry("2*g")}};
    std::vector<ExprEntry> bre = {entry("1")};
    std::vector<ExprEntry> bim = {entry("g")};

    ParametricSystem sys = complex_to_real(Are, Aim, bre, bim, p, names);
    CHECK(sys.n == 2);
    CHECK(sys.K == 1);

    Vec pt(1);
    pt << 1.5;
    Mat A = eval_matrix(sys, pt);
    CHECK(A(0, 0) == doctest::Approx(1.5));    // Re
    CHECK(A(0, 1) == doctest::Approx(-3.0));   // -Im
    CHECK(A(1, 0) == doctest::Approx(3.0));    // Im
    CHECK(A(1, 1) == doctest::Approx(1.5));    // Re
    Vec b = eval_rhs(sys, pt);
    CHECK(b[0] == 1.0);
    CHECK(b[1] == doctest::Approx(1.5));

    // Realified solution agrees with the complex solve.
    Vec x = linalg::solve_linear(A, b);
    std::complex<double> az(1.5, 3.0), bz(1.0, 1.5);
    std::complex<double> xz = bz / az;
    CHECK(x[0] == doctest::Approx(xz.real()));
    CHECK(x[1] == doctest::Approx(xz.imag()));
}

TEST_CASE("class-one detection and membership") {
    ScopedMode fast(Mode::Fast);
    // p1 touches only the first equation, p2 touches both.
    const std::string text = R"({
      "n": 2,
      "parameters": [{"name": "p1", "interval": [-1, 1]}, {"name": "p2", "interval": [-1, 1]}],
      "A": [["1+p1", "p2"], ["p2", "2"]],
      "b": ["p1", "1"]
    })";
    ParametricSystem ps = parse_problem(text);
    auto sys = as_affine_linear(ps);
    REQUIRE(sys.has_value());
    CHECK(class_one(*sys, 1));
    CHECK_FALSE(class_one(*sys, 2));

    const std::string both = R"({
      "n": 2,
      "parameters": [{"name": "p1", "interval": [-0.2, 0.2]}, {"name": "p2", "interval": [-0.2, 0.2]}],
      "A": [["2+p1", "p1"], ["p2", "2+p2"]],
      "b": ["1", "1"]
    })";
    auto cs = as_affine_linear(parse_problem(both));
    REQUIRE(cs.has_value());
    CHECK(class_one(*cs, 1));
    CHECK(class_one(*cs, 2));

    // A solution at an admissible parameter point belongs to the solution set.
    Vec pt(2);
    pt << 0.1, -0.15;
    Mat A(2, 2);
    A << 2.1, 0.1, -0.15, 1.85;
    Vec b(2);
    b << 1.0, 1.0;
    Vec x = linalg::solve_linear(A, b);
    CHECK(class_one_membership(*cs, x));

    // A point far outside is rejected.
    Vec far(2);
    far << 10.0, -10.0;
    CHECK_FALSE(class_one_membership(*cs, far));

    // Membership requires the class-one structure.
    const std::string spread = R"({
      "n": 2,
      "parameters": [{"name": "p1", "interval": [-0.2, 0.2]}],
      "A": [["2+p1", "0"], ["p1", "2"]],
      "b": ["1", "1"]
    })";
    auto bad = as_affine_linear(parse_problem(spread));
    REQUIRE(bad.has_value());
    Vec y(2);
    y << 0.5, 0.25;
    CHECK_THROWS_AS(class_one_membership(*bad, y), NotClassOne);
}

TEST_CASE("load_problem reports missing files") {
    CHECK_THROWS_AS(load_problem("/nonexistent/path/sys.json"), IoError);
}
