#pragma once

#include "injeqt/architecture.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace injeqt
{

/*
 * Closed-form per-rotation error and time expectations. T-gate (TDG) fields are
 * empty for Rz-state factories, which have no T-gate compilation.
 *
 * tau_tdg assumes the first T state of a rotation is prepared during setup, so
 * only c-1 preparations are exposed; tau_tdg_paper_approx drops that refinement.
 * */
struct AnalyticReport
{
    FactoryKind factory{FactoryKind::Distillation};
    InjectionTech tech{InjectionTech::LatticeSurgery};
    std::uint64_t c{1};

    std::optional<double> eps_t;
    double eps_rz{0.0};
    double eps_injeqt{0.0};

    std::optional<double> tau_tdg;
    std::optional<double> tau_tdg_paper_approx;
    double tau_prep{0.0};
    double tau_injeqt{0.0};
    double tau_injeqt_inf{0.0};
    double tau_injeqt_opt{0.0};

    /// alpha = tau_injeqt / (2 tau_tdg); f_injeqt = 2 alpha.
    std::optional<double> alpha;
    std::optional<double> alpha_paper_approx;
    std::optional<double> f_injeqt;
    std::optional<double> f_injeqt_paper_approx;

    std::uint64_t r_nostall{1};
};

/// DomainError if c == 0.
AnalyticReport analytic(const Architecture& arch, std::uint64_t c);
inline AnalyticReport analytic(const Architecture& arch) { return analytic(arch, arch.synthesis.c()); }

struct RzViability
{
    /// 2(eps_frz + eps_c) < c(eps_ft + eps_c)
    bool holds{false};
    /// eps_frz < c max(eps_ft, eps_c)
    bool sufficient{false};

    explicit operator bool() const { return holds; }
};

RzViability rz_viability(double eps_frz, double eps_ft, double eps_c, std::uint64_t c);

std::string to_text(const AnalyticReport& r);
std::string to_json(const AnalyticReport& r);

}  // namespace injeqt
