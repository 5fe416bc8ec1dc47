#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "attctl/errors.hpp"
#include "attctl/performance.hpp"
#include "oracles.hpp"

using namespace attctl;

namespace {

// Overflow-safe ln cosh, used only by this test as an independent formula.
double ln_cosh(double x) {
    const double a = std::fabs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

TEST_CASE("funnel value: midpoint, monotonicity, and limits") {
    const PerfFunctionParams p{};  // rho0=1, rho_inf=0.85, t_shift=30, f_scale=60
    CHECK(perf_value(p.t_shift, p).rho == doctest::Approx(0.925).epsilon(1e-14));
    double prev = perf_value(0.0, p).rho;
    CHECK(prev <= p.rho0);
    for (double t = 1.0; t <= 300.0; t += 1.0) {
        const double cur = perf_value(t, p).rho;
        CHECK(cur < prev);
        CHECK(cur > p.rho_inf);
        prev = cur;
    }
}

TEST_CASE("funnel derivative matches central differences at 100 random times") {
    const PerfFunctionParams p{};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double t = u(rng);
        const double fd = oracles::oracle_central_difference(
            [&](double x) { return perf_value(x, p).rho; }, t, 1e-5);
        CHECK(std::fabs(perf_value(t, p).rho_dot - fd) <= 1e-7);
    }
}

TEST_CASE("normalized error and its domain guard") {
    CHECK(transform_error(0.5, 1.0) == doctest::Approx(0.5));
    CHECK(transform_error(-0.3, 0.85) == doctest::Approx(-0.3 / 0.85));
    CHECK_THROWS_AS(transform_error(0.1, 0.0), invalid_input_error);
    CHECK_THROWS_AS(transform_error(0.1, -1.0), invalid_input_error);
}

TEST_CASE("barrier value at the knee: ||eps||^2 = F1") {
    const BlfParams p{};  // k1=1e-4, F1=100
    const Vec3 eps{10.0, 0.0, 0.0};  // ||eps||^2 = 100 = F1
    const BlfValue v = blf_value_and_gradient(eps, p);
    CHECK(v.value == doctest::Approx(0.5 * p.k1 * p.f1 * ln_cosh(1.0)).epsilon(1e-14));
}

TEST_CASE("barrier gradient matches finite differences to 1e-6") {
    const BlfParams p{};
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 eps{n(rng), n(rng), n(rng)};
        const BlfValue v = blf_value_and_gradient(eps, p);
        for (int axis = 0; axis < 3; ++axis) {
            auto f = [&](double x) {
                Vec3 e = eps;
                (axis == 0 ? e.x : axis == 1 ? e.y : e.z) = x;
                return blf_value_and_gradient(e, p).value;
            };
            const double x0 = axis == 0 ? eps.x : axis == 1 ? eps.y : eps.z;
            const double fd = oracles::oracle_central_difference(f, x0, 1e-6);
            const double g = axis == 0 ? v.gradient.x : axis == 1 ? v.gradient.y : v.gradient.z;
            CHECK(std::fabs(g - fd) <= 1e-6);
        }
    }
}

TEST_CASE("barrier is positive definite in eps") {
    const BlfParams p{};
    CHECK(blf_value_and_gradient(Vec3{}, p).value == 0.0);
    CHECK(blf_value_and_gradient(Vec3{1.0, 0, 0}, p).value > 0.0);
}

TEST_CASE("sandwich: x*tanh(x)/2 <= ln cosh(x) <= x*tanh(x) on [0, 50]") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = 50.0 * i / 1000.0;
        const double lhs = 0.5 * x * std::tanh(x);
        const double mid = ln_cosh(x);
        const double rhs = x * std::tanh(x);
        CHECK(lhs <= mid + 1e-15);
        CHECK(mid <= rhs + 1e-15);
    }
}

TEST_CASE("tanh dominance margin certification") {
    CHECK(tanh_dominance_margin(2.0, 10.0, 1.0) > 0.0);
    CHECK(tanh_dominance_margin(0.5, 10.0, 1.0) < 0.0);  // fails near x = 1
    // the shipped gain set must certify over the full |eps| <= k_u range
    CHECK(tanh_dominance_margin(1.6, 62.0, 1.5) >= 0.0);
}

TEST_CASE("evaluation ceiling: endpoints, decay, derivative") {
    const EvalFunctionParams p{};
    CHECK(eval_value(0.0, p).s == doctest::Approx(p.s0).epsilon(1e-14));
    CHECK(eval_value(1e6, p).s == doctest::Approx(p.s_inf).epsilon(1e-9));
    double prev = eval_value(0.0, p).s;
    for (double t = 0.5; t < 60.0; t += 0.5) {
        const EvalValue v = eval_value(t, p);
        CHECK(v.s < prev);
        CHECK(v.s > p.s_inf);
        CHECK(v.s_dot < 0.0);
        const double fd = oracles::oracle_central_difference(
            [&](double x) { return eval_value(x, p).s; }, t, 1e-6);
        CHECK(std::fabs(v.s_dot - fd) <= 1e-9);
        prev = v.s;
    }
}

TEST_CASE("funnel matrices: diagonal scaling consistent with scalar path") {
    std::array<PerfFunctionParams, 3> per_axis{};
    per_axis[1].rho0 = 0.9;
    per_axis[2].rho_inf = 0.5;
    const double t = 12.5;
    const FunnelMatrices f = funnel_matrices(t, per_axis);
    for (int i = 0; i < 3; ++i) {
        const PerfValue pv = perf_value(t, per_axis[i]);
        CHECK(f.rho[i] == doctest::Approx(pv.rho).epsilon(1e-15));
        CHECK(f.rho_dot[i] == doctest::Approx(pv.rho_dot).epsilon(1e-15));
        CHECK(f.psi.m[3 * i + i] == doctest::Approx(1.0 / pv.rho).epsilon(1e-15));
        CHECK(f.eta.m[3 * i + i] == doctest::Approx(pv.rho_dot / pv.rho).epsilon(1e-15));
    }
}
