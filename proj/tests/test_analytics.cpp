#include "injeqt/analytics.hpp"
#include "injeqt/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <json.hpp>

using namespace injeqt;

TEST_CASE("distillation at c=100")
{
    const AnalyticReport r = analytic(Architecture::defaults(FactoryKind::Distillation), 100);
    REQUIRE(r.eps_t);
    CHECK(*r.eps_t == doctest::Approx(100 * (4.4e-8 + std::pow(10.0, -7.4))));
    CHECK(*r.eps_t == doctest::Approx(8.381e-6).epsilon(1e-3));
    CHECK(r.eps_injeqt == doctest::Approx(2 * (100 * (4.4e-8 + 1e-10) + std::pow(10.0, -7.4))));
    CHECK(*r.tau_tdg == doctest::Approx(99 * 108.6 + 100 * 120));
    CHECK(*r.tau_tdg_paper_approx == doctest::Approx(100 * (108.6 + 120)));
}

TEST_CASE("distillation + transversal time ratio")
{
    const AnalyticReport r = analytic(Architecture::defaults(FactoryKind::Distillation, InjectionTech::Transversal), 100);
    CHECK(*r.alpha_paper_approx == doctest::Approx(0.5109).epsilon(1e-3));
    CHECK(*r.f_injeqt_paper_approx == doctest::Approx(1.022).epsilon(1e-3));
    CHECK(*r.f_injeqt == doctest::Approx(2 * *r.alpha));
    CHECK(*r.f_injeqt == doctest::Approx(r.tau_injeqt / *r.tau_tdg).epsilon(1e-12));
    CHECK(r.tau_injeqt_opt == 240);
    CHECK(r.tau_injeqt_inf == doctest::Approx(r.tau_prep + 240));
    CHECK(r.r_nostall == static_cast<std::uint64_t>(std::ceil(1 + 100 * 115.6 / 120)));
}

TEST_CASE("alpha tends to one half")
{
    Architecture a = Architecture::defaults(FactoryKind::Distillation, InjectionTech::Transversal);
    a.aux.step_scale = 0.0;
    a.factory.expected_steps = 120;
    const AnalyticReport r = analytic(a, 1000000);
    CHECK(*r.alpha_paper_approx == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(*r.alpha == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("shipped configs keep alpha in [0.5, 1)")
{
    for (auto kind : {FactoryKind::Distillation, FactoryKind::Cultivation})
        for (auto tech : {InjectionTech::LatticeSurgery, InjectionTech::Transversal})
            for (std::uint64_t c = 80; c <= 100; ++c)
            {
                const AnalyticReport r = analytic(Architecture::defaults(kind, tech), c);
                CHECK(*r.alpha >= 0.5);
                CHECK(*r.alpha < 1.0);
            }
}

TEST_CASE("Rz-state factories have no TDG fields")
{
    const AnalyticReport r = analytic(Architecture::defaults(FactoryKind::Star), 100);
    CHECK_FALSE(r.eps_t);
    CHECK_FALSE(r.tau_tdg);
    CHECK_FALSE(r.alpha);
    CHECK(r.eps_rz == doctest::Approx(2 * (3.2e-8 + std::pow(10.0, -7.4))));
    CHECK(r.tau_prep == 16.45);
    CHECK(r.r_nostall == 2);
    CHECK_THROWS_AS(analytic(Architecture{}, 0), DomainError);
}

TEST_CASE("rz_viability")
{
    const double eps_c = std::pow(10.0, -7.4);
    CHECK(rz_viability(3.2e-8, 4.4e-8, eps_c, 100).holds);
    CHECK(rz_viability(3.2e-8, 6e-15, eps_c, 100).holds);
    CHECK(rz_viability(3.2e-8, 4.4e-8, eps_c, 100).sufficient);
    CHECK_FALSE(rz_viability(1e-3, 1e-3, 1e-3, 2).holds);
    CHECK(rz_viability(1e-300, 1e-3, 1e-3, 2).holds);
}

TEST_CASE("report formats")
{
    const AnalyticReport r = analytic(Architecture::defaults(FactoryKind::Cultivation), 100);
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["c"] == 100);
    CHECK(j["factory"] == "cultivation");
    CHECK(j["alpha"]["exact"].get<double>() == doctest::Approx(*r.alpha));
    CHECK(nlohmann::json::parse(to_json(analytic(Architecture::defaults(FactoryKind::Star), 100)))["eps_t"].is_null());
    CHECK(to_text(r).find("r_nostall") != std::string::npos);
}
