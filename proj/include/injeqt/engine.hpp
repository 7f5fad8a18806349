#pragma once

#include "injeqt/architecture.hpp"
#include "injeqt/pbc.hpp"
#include "injeqt/random.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace injeqt
{

////////////////////////////////////////////////////////////
// Lowering
////////////////////////////////////////////////////////////

inline constexpr std::uint32_t kBus = 0xffffffffu;

struct SetupOp
{
    IsaKind kind{IsaKind::InModule};
    /// Module for B/U ops, kBus for inter-module GHZ merges.
    std::uint32_t module{kBus};

    friend bool operator==(const SetupOp&, const SetupOp&) = default;
};

struct RotationRecord
{
    PauliString pauli;
    double angle{0.0};
    std::vector<std::uint32_t> modules_touched;
    std::vector<SetupOp> setup_ops;
    /// Position of this rotation's injection in the sequential program stream.
    std::size_t injection_slot{0};
};

struct MeasurementRecord
{
    PauliString pauli;
    std::int32_t clbit{-1};
    std::vector<std::uint32_t> modules_touched;
    std::vector<SetupOp> setup_ops;
};

struct ExecutionPlan
{
    std::size_t num_qubits{0};
    std::uint64_t num_modules{1};
    std::vector<RotationRecord> rotations;
    std::vector<MeasurementRecord> measurements;
};

struct LoweringOptions
{
    /// Prefix each in-module measurement with a shift automorphism (U).
    bool emit_automorphisms{false};
};

/// Modules in index order, module_capacity logical qubits each; k-module GHZ fan-in costs ceil(log2 k) C ops.
ExecutionPlan lower(const PBCProgram& pbc, const LayoutConfig& layout, const LoweringOptions& opts = {});

std::vector<SetupOp> setup_ops_for(const std::vector<std::uint32_t>& modules, bool emit_automorphisms);

////////////////////////////////////////////////////////////
// Timeline
////////////////////////////////////////////////////////////

enum class EventKind : std::uint8_t
{
    Idle,
    Automorphism,
    InModule,
    InterModule,
    FactoryPrep,
    AuxInjection,
    ModuleInjection,
};

std::string_view to_string(EventKind k);

struct Resource
{
    enum class Kind : std::uint8_t
    {
        Module,
        Bus,
        Pipeline,
    };
    Kind kind{Kind::Bus};
    std::uint32_t index{0};

    friend bool operator==(const Resource&, const Resource&) = default;
    friend auto operator<=>(const Resource&, const Resource&) = default;
};

std::string to_string(const Resource& r);

struct TimelineEvent
{
    double start{0.0};
    double duration{0.0};
    EventKind kind{EventKind::InModule};
    Resource resource{};
    /// Rotation index; measurements continue the numbering after the last rotation.
    std::uint64_t rotation{0};
    double error_contrib{0.0};

    double end() const { return start + duration; }
};

struct RotationStats
{
    double setup_start{0.0};
    double setup_end{0.0};
    double injection_end{0.0};
    std::uint32_t chain_length{0};
    /// Time the module waited on a state that was not ready.
    double stall{0.0};

    double injection_span() const { return injection_end - setup_end; }
};

struct Timeline
{
    Policy policy{Policy::Tdg};
    std::vector<TimelineEvent> events;  // populated when SimOptions::record_events
    std::vector<RotationStats> rotations;
    double wall_clock{0.0};
    /// setup_error + injection_error (+ trivial_error when counted).
    double total_error{0.0};
    double setup_error{0.0};
    double injection_error{0.0};
    /// I/U contributions, reported separately.
    double trivial_error{0.0};
    std::uint64_t total_injections{0};
    double total_stall{0.0};
};

struct PrefetchConfig
{
    std::uint32_t R{1};
    bool overlap_setup{true};
};

struct SimOptions
{
    std::uint64_t seed{0};
    /// Deterministic mode: every correction chain has this length.
    std::optional<std::uint32_t> forced_chain_length;
    bool record_events{false};
    bool count_trivial{false};
};

/// k ~ Geometric(1/2) on {1, 2, ...}: each injection needs a further correction with probability 1/2.
std::uint64_t sample_correction_chain(SplitMix64& rng);

/// Chain length of `rotation` under trial seed `seed`; identical for every policy and R.
std::uint32_t chain_length_for(std::uint64_t seed, std::uint64_t rotation);

/// Sequential T injections. ConfigError for Rz-state factories.
Timeline simulate_tdg(const ExecutionPlan& plan, const Architecture& arch, const SimOptions& opts);

/// 2-level prefetched Rz injection on R pipelines.
Timeline simulate_injeqt(const ExecutionPlan& plan, const Architecture& arch, const PrefetchConfig& prefetch,
                         const SimOptions& opts);

Timeline simulate(const ExecutionPlan& plan, const Architecture& arch, Policy policy, const PrefetchConfig& prefetch,
                  const SimOptions& opts);

/// CSV with header `start,duration,kind,resource,rotation,error_contrib`.
void write_timeline_csv(std::ostream& os, const Timeline& timeline);

}  // namespace injeqt
