#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "copulab/cantor.hpp"
#include "copulab/errors.hpp"
#include "copulab/pickands.hpp"
#include "copulab/rng.hpp"

using namespace copulab;

namespace {

PickandsMeasure dirac_half() { return PickandsMeasure({{0.5, 1.0}}, {}, 0.0); }

PickandsMeasure boundary_pair() {
    return PickandsMeasure({{0.0, 0.5}, {1.0, 0.5}}, {}, 0.0);
}

// three interior atoms, weights 1/5, 3/5, 1/5
PickandsMeasure three_atoms() {
    return PickandsMeasure({{0.25, 0.2}, {0.5, 0.6}, {0.75, 0.2}}, {}, 0.0);
}

// atoms at 1/2, 3/4 and 1 plus a three-piece histogram density; mass 1,
// mean 1/2 exactly
PickandsMeasure mixed_measure() {
    StepDensity d;
    d.breaks = {0.0, 0.5, 0.75, 1.0};
    d.values = {1.0, 0.0, 16.0 / 35.0};
    return PickandsMeasure({{0.5, 0.1}, {0.75, 17.0 / 70.0}, {1.0, 3.0 / 70.0}}, d, 0.0);
}

PickandsMeasure cantor_measure() { return PickandsMeasure({}, {}, 1.0); }

// the closed-form dependence function of mixed_measure, integrated by hand:
//   [0,1/2):  t^2 - t + 1
//   [1/2,3/4): t/5 + 13/20
//   [3/4,1]:  (16/35) t^2 + 19/35
double mixed_a_oracle(double t) {
    if (t < 0.5) return t * t - t + 1.0;
    if (t < 0.75) return t / 5.0 + 13.0 / 20.0;
    return 16.0 / 35.0 * t * t + 19.0 / 35.0;
}

// closed-form function for three_atoms:
//   [0,1/4): 1 - t;  [1/4,1/2): 9/10 - (3/5)t;
//   [1/2,3/4): 3/10 + (3/5)t;  [3/4,1]: t
double three_atom_a_oracle(double t) {
    if (t < 0.25) return 1.0 - t;
    if (t < 0.5) return 0.9 - 0.6 * t;
    if (t < 0.75) return 0.3 + 0.6 * t;
    return t;
}

} // namespace

TEST_CASE("measure queries: mass, mean, cdf") {
    auto m = three_atoms();
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.mean() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.cdf(0.5) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(m.cdf(0.2) == 0.0);
    CHECK(m.cdf_left(0.25) == 0.0);
    CHECK(m.cdf(0.25) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(m.atom_mass(0.5) == 0.6);
    CHECK(m.atom_mass(0.3) == 0.0);

    auto mm = mixed_measure();
    CHECK(mm.total_mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mm.mean() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mm.cdf(0.6) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(mm.cdf(0.75) == doctest::Approx(59.0 / 70.0).epsilon(1e-15));
    CHECK(mm.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mm.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));

    auto mc = cantor_measure();
    CHECK(mc.cdf(1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mc.mean() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("validate_measure: fixtures pass, bad measures report residuals") {
    CHECK(validate_measure(dirac_half()).pass());
    CHECK(validate_measure(boundary_pair()).pass());
    CHECK(validate_measure(three_atoms()).pass());
    CHECK(validate_measure(mixed_measure()).pass());
    CHECK(validate_measure(cantor_measure()).pass());

    // delta_1 alone: mass fine, mean 1
    auto v = validate_measure(PickandsMeasure({{1.0, 1.0}}, {}, 0.0));
    CHECK_FALSE(v.pass());
    CHECK(v.mass_residual == doctest::Approx(0.0));
    CHECK(v.mean_residual == doctest::Approx(0.5).epsilon(1e-15));

    // atoms out of order
    auto bad = validate_measure(PickandsMeasure({{0.7, 0.5}, {0.3, 0.5}}, {}, 0.0));
    CHECK_FALSE(bad.structure_ok);
    CHECK_FALSE(bad.pass());

    // malformed density partition
    StepDensity d;
    d.breaks = {0.0, 0.5};
    d.values = {1.0, 2.0};
    CHECK_FALSE(validate_measure(PickandsMeasure({}, d, 0.0)).structure_ok);
}

TEST_CASE("integral_cdf: closed form against quadrature of the cdf") {
    auto mm = mixed_measure();
    for (double t : {0.2, 0.5, 0.6, 0.8, 1.0}) {
        const int panels = 200000;
        double h = t / panels;
        double acc = 0.0;
        for (int i = 0; i < panels; ++i)
            acc += mm.cdf((i + 0.5) * h);
        acc *= h;
        CHECK(std::fabs(mm.integral_cdf(t) - acc) < 1e-5);
    }
}

TEST_CASE("upsilon: delta_1/2 gives max(1-t, t)") {
    auto a = upsilon(dirac_half());
    for (int i = 0; i <= 1000; ++i) {
        double t = i / 1000.0;
        CHECK(std::fabs(a(t) - std::max(1.0 - t, t)) <= 1e-12);
    }
    CHECK(a.d_plus(0.3) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(a.d_plus(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.d_minus(0.5) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("upsilon: boundary atoms give the constant function 1") {
    auto a = upsilon(boundary_pair());
    for (int i = 0; i <= 1000; ++i) {
        double t = i / 1000.0;
        CHECK(std::fabs(a(t) - 1.0) <= 1e-12);
    }
}

TEST_CASE("upsilon: three-atom fixture matches the piecewise closed form") {
    auto a = upsilon(three_atoms());
    for (int i = 0; i <= 1000; ++i) {
        double t = i / 1000.0;
        CHECK(std::fabs(a(t) - three_atom_a_oracle(t)) <= 1e-12);
    }
    CHECK(a(0.5) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("upsilon: mixed fixture matches the piecewise closed form") {
    auto a = upsilon(mixed_measure());
    for (int i = 0; i <= 1000; ++i) {
        double t = i / 1000.0;
        CHECK(std::fabs(a(t) - mixed_a_oracle(t)) <= 1e-12);
    }
    CHECK(a(0.6) == doctest::Approx(0.77).epsilon(1e-15));
    CHECK(a(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("upsilon: rejects invalid measures") {
    CHECK_THROWS_AS(upsilon(PickandsMeasure({{1.0, 1.0}}, {}, 0.0)), InvalidMeasure);
}

TEST_CASE("derivatives: reconstruct the cdf via F = (D+A + 1)/2") {
    for (const auto& m : {three_atoms(), mixed_measure(), cantor_measure()}) {
        auto a = upsilon(m);
        for (int i = 0; i <= 1000; ++i) {
            double t = i / 1000.0;
            if (t >= 1.0) continue; // D+A(1) is the left derivative by convention
            CHECK(std::fabs((a.d_plus(t) + 1.0) / 2.0 - m.cdf(t)) <= 1e-12);
        }
    }
}

TEST_CASE("derivatives: gaps exactly at atom locations") {
    auto a = upsilon(three_atoms());
    for (double t : {0.25, 0.5, 0.75})
        CHECK(a.d_plus(t) - a.d_minus(t) > 0.1);
    for (double t : {0.1, 0.4, 0.6, 0.9})
        CHECK(std::fabs(a.d_plus(t) - a.d_minus(t)) <= 1e-14);
    // jump equals twice the atom weight
    CHECK(a.d_plus(0.5) - a.d_minus(0.5) == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("upsilon is 1-Lipschitz on the grid") {
    auto a = upsilon(mixed_measure());
    double prev = a(0.0);
    for (int i = 1; i <= 1000; ++i) {
        double t = i / 1000.0;
        double v = a(t);
        CHECK(std::fabs(v - prev) <= 1e-3 + 1e-12);
        prev = v;
    }
}

TEST_CASE("g_a: constant for independence, step for the diagonal") {
    auto api = upsilon(boundary_pair());
    for (double t : {0.0, 0.3, 0.7, 1.0})
        CHECK(g_a(api, t) == doctest::Approx(1.0).epsilon(1e-15));

    auto am = upsilon(dirac_half());
    CHECK(g_a(am, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g_a(am, 0.7) == doctest::Approx(1.0).epsilon(1e-15));

    auto a426 = upsilon(three_atoms());
    CHECK(g_a(a426, 0.5) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(g_a(a426, 1.0) == 1.0);
}

TEST_CASE("g_a: non-decreasing on the grid for every fixture") {
    for (const auto& m :
         {dirac_half(), boundary_pair(), three_atoms(), mixed_measure(), cantor_measure()}) {
        auto a = upsilon(m);
        double prev = g_a(a, 0.0);
        CHECK(prev >= 0.0);
        for (int i = 1; i <= 1000; ++i) {
            double v = g_a(a, i / 1000.0);
            CHECK(v >= prev - 1e-13);
            prev = v;
        }
    }
}

TEST_CASE("endpoints: support bounds per fixture") {
    CHECK(endpoints(three_atoms()) == std::pair<double, double>(0.25, 0.75));
    CHECK(endpoints(dirac_half()) == std::pair<double, double>(0.5, 0.5));
    CHECK(endpoints(boundary_pair()) == std::pair<double, double>(0.0, 1.0));
    CHECK(endpoints(cantor_measure()) == std::pair<double, double>(0.0, 1.0));
    CHECK(endpoints(mixed_measure()) == std::pair<double, double>(0.0, 1.0));
}

TEST_CASE("normalize: boundary-atom mixing moves the mean to 1/2") {
    // delta_1 -> (1/2) delta_0 + (1/2) delta_1
    auto n1 = normalize(PickandsMeasure({{1.0, 1.0}}, {}, 0.0));
    REQUIRE(n1.atoms().size() == 2);
    CHECK(n1.atoms()[0].t == 0.0);
    CHECK(n1.atoms()[0].w == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(n1.atoms()[1].t == 1.0);
    CHECK(n1.atoms()[1].w == doctest::Approx(0.5).epsilon(1e-15));

    // delta_{1/4}: beta = 2/3, result (2/3) delta_{1/4} + (1/3) delta_1
    auto n2 = normalize(PickandsMeasure({{0.25, 1.0}}, {}, 0.0));
    REQUIRE(n2.atoms().size() == 2);
    CHECK(n2.atoms()[0].t == 0.25);
    CHECK(n2.atoms()[0].w == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(n2.atoms()[1].t == 1.0);
    CHECK(n2.atoms()[1].w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(n2.mean() == doctest::Approx(0.5).epsilon(1e-15));

    // balanced input is unchanged
    auto n3 = normalize(three_atoms());
    CHECK(n3.atoms().size() == 3);
    CHECK(n3.atoms()[1].w == 0.6);

    CHECK_THROWS_AS(normalize(PickandsMeasure({{0.5, 0.7}}, {}, 0.0)), InvalidMeasure);
}

TEST_CASE("normalize: random measures all end up valid") {
    CounterRng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 1 + static_cast<int>(rng.next_double() * 4);
        std::vector<PickandsAtom> atoms;
        double total = 0.0;
        double loc = 0.0;
        for (int i = 0; i < k; ++i) {
            loc += rng.next_double() * (1.0 - loc) * 0.5 + 1e-3;
            if (loc > 1.0) loc = 1.0;
            double w = rng.next_double() + 0.05;
            atoms.push_back({loc, w});
            total += w;
        }
        double singular = rng.next_double() * 0.5;
        total += singular;
        for (auto& a : atoms) a.w /= total;
        auto n = normalize(PickandsMeasure(atoms, {}, singular / total));
        CHECK(std::fabs(n.mean() - 0.5) <= 1e-12);
        CHECK(std::fabs(n.total_mass() - 1.0) <= 1e-12);
        CHECK(validate_measure(n).pass());
    }
}

TEST_CASE("reflect: mirrors atoms and density, keeps validity") {
    auto r = reflect(mixed_measure());
    CHECK(validate_measure(r).pass());
    // the atom at 1 moves to 0, the atom at 3/4 to 1/4
    CHECK(r.atom_mass(0.0) == doctest::Approx(3.0 / 70.0).epsilon(1e-15));
    CHECK(r.atom_mass(0.25) == doctest::Approx(17.0 / 70.0).epsilon(1e-15));
    CHECK(r.atom_mass(0.5) == doctest::Approx(0.1).epsilon(1e-15));
    // F_r(t) + F(1-t^-) = 1
    for (double t : {0.1, 0.3, 0.6, 0.9})
        CHECK(r.cdf(t) == doctest::Approx(1.0 - mixed_measure().cdf_left(1.0 - t)).epsilon(1e-13));
    // reflecting twice restores the original
    auto rr = reflect(r);
    CHECK(rr.atom_mass(0.75) == doctest::Approx(17.0 / 70.0).epsilon(1e-15));
    CHECK(rr.cdf(0.6) == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("gumbel family: endpoints, symmetry, known values") {
    CHECK_THROWS_AS(gumbel_function(0.5), DomainError);

    auto a1 = gumbel_function(1.0);
    for (double t : {0.0, 0.2, 0.5, 0.9, 1.0})
        CHECK(a1(t) == doctest::Approx(1.0).epsilon(1e-15));

    auto a2 = gumbel_function(2.0);
    CHECK(a2(0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(a2(0.0) == 1.0);
    CHECK(a2(1.0) == 1.0);
    CHECK(a2(0.3) == doctest::Approx(std::pow(std::pow(0.3, 2.0) + std::pow(0.7, 2.0), 0.5))
                         .epsilon(1e-14));
    // symmetric family: A(t) = A(1-t)
    for (double t : {0.1, 0.25, 0.4})
        CHECK(a2(t) == doctest::Approx(a2(1.0 - t)).epsilon(1e-15));

    // large theta approaches the comonotone bound at 1/2
    auto big = gumbel_function(1e6);
    CHECK(std::fabs(big(0.5) - 0.5) < 1e-5);
}

TEST_CASE("gumbel slope: matches finite differences") {
    auto a = gumbel_function(2.5);
    for (double t : {0.1, 0.3, 0.5, 0.8}) {
        double h = 1e-6;
        double fd = (a(t + h) - a(t - h)) / (2.0 * h);
        CHECK(std::fabs(a.d_plus(t) - fd) < 1e-8);
        CHECK(a.d_plus(t) == a.d_minus(t));
    }
}

TEST_CASE("validate_function: fixtures and closed-form family pass") {
    for (const auto& m :
         {dirac_half(), boundary_pair(), three_atoms(), mixed_measure(), cantor_measure()})
        CHECK(validate_function(upsilon(m)).pass());
    for (double theta : {1.0, 1.5, 2.0, 5.0, 50.0})
        CHECK(validate_function(gumbel_function(theta)).pass(1e-10));
}

TEST_CASE("reflected function equals function of reflected measure") {
    auto a = upsilon(mixed_measure());
    auto ar = a.reflected();
    auto am = upsilon(reflect(mixed_measure()));
    for (int i = 0; i <= 100; ++i) {
        double t = i / 100.0;
        CHECK(ar(t) == doctest::Approx(a(1.0 - t)).epsilon(1e-14));
        CHECK(ar(t) == doctest::Approx(am(t)).epsilon(1e-13));
    }
}
