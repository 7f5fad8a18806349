#pragma once

#include "injeqt/architecture.hpp"
#include "injeqt/circuit.hpp"
#include "injeqt/engine.hpp"
#include "injeqt/pbc.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace injeqt
{

enum class Metric : std::uint8_t
{
    TotalError,
    WallClock,
    PhysQubits,
    Spacetime,
};

inline constexpr std::array<Metric, 4> kMetrics{Metric::TotalError, Metric::WallClock, Metric::PhysQubits,
                                                Metric::Spacetime};

std::string_view to_string(Metric m);

/// One configuration of machine + policy.
struct RunConfig
{
    Architecture arch{};
    Policy policy{Policy::Injeqt};
    PrefetchConfig prefetch{};
    LoweringOptions lowering{};
    CompileOptions compile{};
    std::optional<std::uint32_t> forced_chain_length;
    bool count_trivial{false};
    std::string benchmark;
};

struct TrialMetrics
{
    std::string benchmark;
    Policy policy{Policy::Tdg};
    FactoryKind factory{FactoryKind::Distillation};
    InjectionTech tech{InjectionTech::LatticeSurgery};
    std::uint32_t R{1};
    std::uint64_t seed{0};
    double total_error{0.0};
    double wall_clock{0.0};
    std::uint64_t phys_qubits{0};
    double spacetime{0.0};

    double value(Metric m) const;
};

/// Seed of trial `i`; shared by every policy and R so sampled chains are coupled.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t i);

/// Compile and lower once; the result is reused by every trial.
ExecutionPlan prepare(const Circuit& circuit, const RunConfig& cfg);

TrialMetrics run_trial(const ExecutionPlan& plan, const RunConfig& cfg, std::uint64_t seed);

/// Trials run concurrently; results are in trial-index order. threads = 0 picks hardware concurrency.
std::vector<TrialMetrics> run_trials(const ExecutionPlan& plan, const RunConfig& cfg, std::size_t n_trials,
                                     std::uint64_t base_seed, unsigned threads = 0);
std::vector<TrialMetrics> run_trials(const Circuit& circuit, const RunConfig& cfg, std::size_t n_trials,
                                     std::uint64_t base_seed, unsigned threads = 0);

struct MetricStats
{
    double mean{0.0};
    double min{0.0};
    double max{0.0};
    /// Standard error of the mean.
    double sem{0.0};
    std::vector<double> values;  // trial order
};

/// Order-independent: values are summed in sorted order.
MetricStats summarize(std::vector<double> values);

struct SweepPoint
{
    std::uint32_t R{1};
    std::array<MetricStats, 4> stats;
    std::vector<TrialMetrics> trials;

    const MetricStats& operator[](Metric m) const { return stats[static_cast<std::size_t>(m)]; }
};

struct SweepResult
{
    Policy policy{Policy::Injeqt};
    std::vector<SweepPoint> points;
    /// Argmin of the trial mean per metric, ties toward smaller R.
    std::array<std::uint32_t, 4> r_star{};

    std::uint32_t best_r(Metric m) const { return r_star[static_cast<std::size_t>(m)]; }
    const SweepPoint& at(std::uint32_t R) const;
};

struct RRange
{
    std::uint32_t lo{1};
    std::uint32_t hi{20};
};

/// ConfigError on an empty range.
SweepResult sweep_r(const Circuit& circuit, const RunConfig& cfg, RRange range, std::size_t n_trials,
                    std::uint64_t base_seed, unsigned threads = 0);

struct MetricComparison
{
    Metric metric{Metric::TotalError};
    double baseline_mean{0.0};
    double candidate_mean{0.0};
    /// baseline / candidate; > 1 means the candidate is better.
    double improvement{0.0};
    /// candidate / baseline.
    double raw_ratio{0.0};
    std::string baseline_label;
    std::uint32_t baseline_R{1};
    std::uint32_t candidate_R{1};
};

struct Comparison
{
    std::string benchmark;
    std::string candidate_label;
    std::array<MetricComparison, 4> metrics;

    const MetricComparison& operator[](Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

struct CompareOptions
{
    RRange range{};
    std::size_t n_trials{20};
    std::uint64_t base_seed{0};
    unsigned threads{0};
};

/*
 * Per metric: the best baseline mean over `baselines` against the candidate.
 * INJEQT sides are evaluated at their best R for that metric. ConfigError if any
 * TDG side uses an Rz-state factory.
 * */
Comparison compare(const Circuit& circuit, const std::vector<RunConfig>& baselines, const RunConfig& candidate,
                   const CompareOptions& opts);

Comparison compare(const Circuit& circuit, const RunConfig& baseline, const RunConfig& candidate,
                   const CompareOptions& opts);

/// TDG baselines for `candidate`: its own factory, or distillation and cultivation for Rz-state factories.
std::vector<RunConfig> tdg_baselines_for(const RunConfig& candidate);

std::string label_of(const RunConfig& cfg);

inline constexpr const char* kResultsHeader =
    "benchmark,policy,factory,tech,R,seed,total_error,wall_clock,phys_qubits,spacetime";

void write_results_csv(std::ostream& os, const std::vector<TrialMetrics>& rows, bool header = true);

/// Summary document: sweeps' per-R means and r_star, plus the comparison when given.
std::string summary_json(const std::string& benchmark, const std::vector<SweepResult>& sweeps,
                         const Comparison* comparison = nullptr);
std::string comparison_json(const Comparison& c);
std::string to_text(const Comparison& c);

}  // namespace injeqt
