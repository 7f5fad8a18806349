#include "injeqt/analytics.hpp"
#include "injeqt/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace injeqt
{

AnalyticReport
analytic(const Architecture& arch, std::uint64_t c)
{
    if (c == 0)
        throw DomainError("synthesis T-count c must be >= 1");

    const double cd = static_cast<double>(c);
    const double eps_f = arch.factory.error;
    const double tau_f = arch.factory.expected_steps;
    const double eps_c = arch.isa[IsaKind::InterModule].error;
    const double tau_c = arch.isa[IsaKind::InterModule].steps;
    const double eps_tech = arch.aux.eps_tech;
    const double tau_tech = arch.aux.tau_tech();

    AnalyticReport r;
    r.factory = arch.factory.name;
    r.tech = arch.aux.tech;
    r.c = c;

    if (arch.factory.output_kind == OutputKind::TState)
    {
        r.eps_t = cd * (eps_f + eps_c);
        r.eps_rz = 2 * (cd * (eps_f + eps_tech) + eps_c);
        r.tau_prep = cd * (tau_f + tau_tech);
        r.tau_tdg = (cd - 1) * tau_f + cd * tau_c;
        r.tau_tdg_paper_approx = cd * (tau_f + tau_c);
    }
    else
    {
        r.eps_rz = 2 * (eps_f + eps_c);
        r.tau_prep = tau_f;
    }
    r.eps_injeqt = r.eps_rz;

    r.tau_injeqt = 2 * (r.tau_prep + tau_c);
    r.tau_injeqt_inf = r.tau_prep + 2 * tau_c;
    r.tau_injeqt_opt = 2 * tau_c;

    if (r.tau_tdg && *r.tau_tdg > 0)
    {
        r.alpha = r.tau_injeqt / (2 * *r.tau_tdg);
        r.f_injeqt = 2 * *r.alpha;
        r.alpha_paper_approx = (tau_f + tau_tech + tau_c / cd) / (tau_f + tau_c);
        r.f_injeqt_paper_approx = 2 * *r.alpha_paper_approx;
    }

    r.r_nostall = tau_c > 0 ? static_cast<std::uint64_t>(std::ceil(1 + r.tau_prep / tau_c)) : 1;
    return r;
}

RzViability
rz_viability(double eps_frz, double eps_ft, double eps_c, std::uint64_t c)
{
    const double cd = static_cast<double>(c);
    return {2 * (eps_frz + eps_c) < cd * (eps_ft + eps_c), eps_frz < cd * std::max(eps_ft, eps_c)};
}

namespace
{

std::string
fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string
fmt(const std::optional<double>& v)
{
    return v ? fmt(*v) : "n/a";
}

}  // namespace

std::string
to_text(const AnalyticReport& r)
{
    std::ostringstream os;
    auto row = [&](const char* name, const std::string& value) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-24s %s\n", name, value.c_str());
        os << buf;
    };
    row("factory", std::string(to_string(r.factory)));
    row("tech", std::string(to_string(r.tech)));
    row("c", std::to_string(r.c));
    row("eps_t", fmt(r.eps_t));
    row("eps_rz", fmt(r.eps_rz));
    row("eps_injeqt", fmt(r.eps_injeqt));
    row("tau_tdg", fmt(r.tau_tdg));
    row("tau_tdg (paper_approx)", fmt(r.tau_tdg_paper_approx));
    row("tau_prep", fmt(r.tau_prep));
    row("tau_injeqt", fmt(r.tau_injeqt));
    row("tau_injeqt_inf", fmt(r.tau_injeqt_inf));
    row("tau_injeqt_opt", fmt(r.tau_injeqt_opt));
    row("alpha", fmt(r.alpha));
    row("alpha (paper_approx)", fmt(r.alpha_paper_approx));
    row("f_injeqt", fmt(r.f_injeqt));
    row("f_injeqt (paper_approx)", fmt(r.f_injeqt_paper_approx));
    row("r_nostall", std::to_string(r.r_nostall));
    return os.str();
}

std::string
to_json(const AnalyticReport& r)
{
    using nlohmann::json;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["factory"] = to_string(r.factory);
    j["tech"] = to_string(r.tech);
    j["c"] = r.c;
    j["eps_t"] = opt(r.eps_t);
    j["eps_rz"] = r.eps_rz;
    j["eps_injeqt"] = r.eps_injeqt;
    j["tau_tdg"] = {{"exact", opt(r.tau_tdg)}, {"paper_approx", opt(r.tau_tdg_paper_approx)}};
    j["tau_prep"] = r.tau_prep;
    j["tau_injeqt"] = r.tau_injeqt;
    j["tau_injeqt_inf"] = r.tau_injeqt_inf;
    j["tau_injeqt_opt"] = r.tau_injeqt_opt;
    j["alpha"] = {{"exact", opt(r.alpha)}, {"paper_approx", opt(r.alpha_paper_approx)}};
    j["f_injeqt"] = {{"exact", opt(r.f_injeqt)}, {"paper_approx", opt(r.f_injeqt_paper_approx)}};
    j["r_nostall"] = r.r_nostall;
    return j.dump(2);
}

}  // namespace injeqt
