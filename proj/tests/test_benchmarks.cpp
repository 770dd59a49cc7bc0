#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>

#include "vlopt/benchmarks.hpp"
#include "vlopt/rng.hpp"

using namespace vlopt;
using namespace vlopt::bench;

namespace {
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("catalog: 29 functions with coherent metadata") {
    CHECK(all_ids().size() == 29);
    CHECK(all_ids().front() == "F1");
    CHECK(all_ids().back() == "F29");
    for (const std::string& id : all_ids()) {
        const BenchmarkSpec s = spec(id);
        CHECK(s.id == id);
        CHECK(s.dimension > 0);
        CHECK(s.lower < s.upper);
        const Problem p = make(id);
        CHECK(p.dimension == s.dimension);
        CHECK(p.bounds.dim() == s.dimension);
        CHECK(p.stochastic == s.stochastic);
    }
    CHECK_THROWS_AS(spec("F30"), std::invalid_argument);
    CHECK_THROWS_AS(make("nope"), std::invalid_argument);
}

TEST_CASE("every deterministic optimum reproduces f_min") {
    for (const std::string& id : all_ids()) {
        const BenchmarkSpec s = spec(id);
        if (s.stochastic) continue;
        REQUIRE(s.optimum.size() == s.dimension);
        const Problem p = make(id);
        const double f = p.fitness(s.optimum);
        CAPTURE(id);
        CAPTURE(f);
        CHECK(near(f, s.f_min, 1e-9));
    }
}

TEST_CASE("hand-verified point values") {
    const Vec zeros = Vec::Zero(30);
    CHECK(make("F1").fitness(zeros) == 0.0);

    // Max-abs: a single large coordinate dominates.
    Vec x = zeros;
    x[7] = -9.5;
    CHECK(make("F4").fitness(x) == doctest::Approx(9.5));

    // Step function: flat plateaus, exact zero inside (-0.5, 0.5)^D.
    CHECK(make("F6").fitness(Vec::Constant(30, 0.4)) == 0.0);
    CHECK(make("F6").fitness(Vec::Constant(30, 0.6)) == 30.0);
    CHECK(make("F6").fitness(Vec::Constant(30, -0.6)) == 30.0);

    // Rosenbrock at ones is exactly zero.
    CHECK(make("F5").fitness(Vec::Ones(30)) == 0.0);

    // Ackley at the origin collapses to 0 up to rounding.
    CHECK(near(make("F10").fitness(zeros), 0.0, 1e-12));

    // Foxholes at the canonical corner.
    Vec fox(2);
    fox << -32.0, -32.0;
    CHECK(near(make("F14").fitness(fox), 0.9980038388186492, 1e-12));

    // Six-hump camel has two symmetric global minima.
    Vec camel(2);
    camel << 0.08984201368301331, -0.7126564032704135;
    const double c1 = make("F16").fitness(camel);
    const double c2 = make("F16").fitness(Vec(-camel));
    CHECK(near(c1, -1.031628453489877, 1e-12));
    CHECK(near(c2, c1, 1e-12));

    // Branin's three global minima agree.
    const Problem f17 = make("F17");
    Vec b1(2), b2(2), b3(2);
    b1 << M_PI, 2.275;
    b2 << -M_PI, 12.275;
    b3 << 9.42478, 2.475;
    CHECK(near(f17.fitness(b1), 0.39788735772973816, 1e-12));
    CHECK(near(f17.fitness(b2), f17.fitness(b1), 1e-5));
    CHECK(near(f17.fitness(b3), f17.fitness(b1), 1e-5));

    // Goldstein-Price.
    Vec gp(2);
    gp << 0.0, -1.0;
    CHECK(near(make("F18").fitness(gp), 3.0, 1e-9));
}

TEST_CASE("penalized_u branches") {
    CHECK(penalized_u(0, 10, 100, 4) == 0.0);
    CHECK(penalized_u(11, 10, 100, 4) == doctest::Approx(100.0));
    CHECK(penalized_u(-11, 10, 100, 4) == doctest::Approx(100.0));
    CHECK(penalized_u(10, 10, 100, 4) == 0.0);
}

TEST_CASE("quartic noise: pinned stream reproduces, fresh instance differs") {
    const Vec x = Vec::Constant(30, 0.5);
    const Problem a = make("F7", 99);
    const Problem b = make("F7", 99);
    const Problem c = make("F7", 100);
    const double fa = a.fitness(x);
    CHECK(fa == b.fitness(x));
    CHECK(fa != c.fitness(x));
    // The noise stream advances per call.
    CHECK(a.fitness(x) != fa);
    // Deterministic part is positive-definite plus noise in [0,1).
    const double base = [] {
        double s = 0.0;
        for (int i = 1; i <= 30; ++i) s += i * 0.5 * 0.5 * 0.5 * 0.5;
        return s;
    }();
    const double fc = make("F7", 7).fitness(x);
    CHECK(fc >= base);
    CHECK(fc < base + 1.0);
}

TEST_CASE("composites: exact minimum at o1, bias at o2, continuity") {
    for (const std::string id : {"F24", "F25", "F26", "F27", "F28", "F29"}) {
        const CompositeSpec cs = make_composite_spec(id);
        REQUIRE(cs.components.size() == 10);
        REQUIRE(cs.shifts.rows() == 10);
        REQUIRE(cs.shifts.cols() == 10);

        const Vec o1 = cs.shifts.row(0).transpose().array();
        const Vec o2 = cs.shifts.row(1).transpose().array();
        CAPTURE(id);
        CHECK(near(evaluate_composite(cs, o1), 0.0, 1e-10));
        CHECK(near(evaluate_composite(cs, o2), 100.0, 1e-6));

        // Continuity probe: a tiny step moves the value only a little.
        SeededRng rng(fnv1a64(id.data(), id.size()));
        for (int i = 0; i < 50; ++i) {
            Vec x(10);
            for (int j = 0; j < 10; ++j) x[j] = rng.uniform(-5.0, 5.0);
            const double f = evaluate_composite(cs, x);
            CHECK(std::isfinite(f));
            Vec y = x;
            y[i % 10] += 1e-9;
            CHECK(std::abs(evaluate_composite(cs, y) - f) < 1e-3);
        }

        const Problem p = make(id);
        CHECK(p.dimension == 10);
        CHECK(near(p.fitness(o1), 0.0, 1e-10));
    }
}

TEST_CASE("composite shifts: generator, serializer, and data file agree") {
    const Eigen::MatrixXd shifts = generate_composite_shifts();
    REQUIRE(shifts.rows() == 60);
    REQUIRE(shifts.cols() == 10);
    for (Eigen::Index i = 0; i < shifts.rows(); ++i)
        for (Eigen::Index j = 0; j < shifts.cols(); ++j) {
            CHECK(shifts(i, j) >= -5.0);
            CHECK(shifts(i, j) <= 5.0);
        }

    // Round-trip through the CSV form.
    const std::string csv = render_shift_csv(shifts);
    const std::string tmp = "/tmp/vlopt_shift_roundtrip.csv";
    {
        std::ofstream out(tmp);
        out << csv;
    }
    const Eigen::MatrixXd back = load_shift_csv(tmp);
    REQUIRE(back.rows() == 60);
    CHECK((back - shifts).cwiseAbs().maxCoeff() == 0.0);

    // The checked-in data file mirrors the generator byte for byte.
    std::ifstream data(std::string(VLOPT_DATA_DIR) + "/composite_shifts.csv");
    REQUIRE(data.good());
    std::string content((std::istreambuf_iterator<char>(data)),
                        std::istreambuf_iterator<char>());
    CHECK(content == csv);
}
