#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace injeqt
{

/// Extractor ISA instruction classes. Factory preparation is costed by FactorySpec.
enum class IsaKind : std::uint8_t
{
    Idle,          // I
    Automorphism,  // U
    InModule,      // B
    InterModule,   // C
};

std::string_view to_string(IsaKind k);

struct InstructionSpec
{
    IsaKind kind{IsaKind::Idle};
    double steps{1.0};
    double error{0.0};
};

struct IsaTable
{
    std::array<InstructionSpec, 4> specs{};

    const InstructionSpec& operator[](IsaKind k) const { return specs[static_cast<std::size_t>(k)]; }
    InstructionSpec& operator[](IsaKind k) { return specs[static_cast<std::size_t>(k)]; }

    /// Gross code at p = 1e-4, central error exponents.
    static IsaTable gross_code_defaults();
};

enum class FactoryKind : std::uint8_t
{
    Distillation,
    Cultivation,
    Star,
};

enum class OutputKind : std::uint8_t
{
    TState,
    RzState,
};

std::string_view to_string(FactoryKind k);
FactoryKind parse_factory_kind(std::string_view name);

struct FactorySpec
{
    FactoryKind name{FactoryKind::Distillation};
    OutputKind output_kind{OutputKind::TState};
    double error{0.0};
    double expected_steps{1.0};
    std::uint64_t qubits{1};
    /// Per-attempt discard probability q.
    double discard_prob{0.0};

    static FactorySpec defaults(FactoryKind kind);

    /// Duration of one attempt; geometric retries then average expected_steps.
    double attempt_steps() const { return expected_steps * (1.0 - discard_prob); }
};

struct SynthesisModel
{
    double eps_synth{1e-10};
    /// Overrides tcount(eps_synth) when set.
    std::optional<std::uint64_t> c_override;

    std::uint64_t c() const;
};

/// T-count per arbitrary rotation: ceil(-10 log10 eps), at least 1. DomainError outside (0,1).
std::uint64_t tcount(double eps_synth);

enum class InjectionTech : std::uint8_t
{
    LatticeSurgery,
    Transversal,
};

std::string_view to_string(InjectionTech t);
InjectionTech parse_injection_tech(std::string_view name);

/// Injection of T states onto the auxiliary surface-code patch of a 2-level factory.
struct AuxInjectionModel
{
    InjectionTech tech{InjectionTech::LatticeSurgery};
    std::uint64_t d_aux{7};
    std::uint64_t s{6};
    double eps_tech{1e-10};
    std::uint64_t patch_qubits{98};
    /// Conversion from surface-code cycles to extractor steps.
    double step_scale{1.0};

    /// d_aux and patch_qubits follow the base factory's surface-code distance.
    static AuxInjectionModel defaults(FactoryKind base, InjectionTech tech);

    double tau_tech() const;
};

struct AuxInjectionCost
{
    double steps;
    double error;
};

AuxInjectionCost aux_injection_cost(const AuxInjectionModel& model);

struct LayoutConfig
{
    std::uint64_t module_capacity{12};
    std::uint64_t module_qubits{288};
    std::uint64_t adapter_qubits{100};
    std::uint64_t lpu_qubits{100};
    /// Fixed module count; derived from the logical qubit count when unset.
    std::optional<std::uint64_t> num_modules;

    /// Module count for `logical_qubits`. CapacityError if a fixed count is too small.
    std::uint64_t modules_for(std::uint64_t logical_qubits) const;
};

enum class Policy : std::uint8_t
{
    Tdg,
    Injeqt,
};

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);

/// Everything the engine and analytics need about the machine.
struct Architecture
{
    IsaTable isa = IsaTable::gross_code_defaults();
    FactorySpec factory = FactorySpec::defaults(FactoryKind::Distillation);
    AuxInjectionModel aux = AuxInjectionModel::defaults(FactoryKind::Distillation, InjectionTech::LatticeSurgery);
    LayoutConfig layout{};
    SynthesisModel synthesis{};

    static Architecture defaults(FactoryKind factory, InjectionTech tech = InjectionTech::LatticeSurgery);

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

std::uint64_t physical_qubits(const LayoutConfig& layout, std::uint64_t num_modules, const FactorySpec& factory,
                              const AuxInjectionModel& aux, std::uint64_t R, Policy policy);

/*
 * Reads an architecture JSON file. `factory.name` and `aux.tech` select the
 * base defaults; every other key overrides one field. Missing keys keep the
 * defaults.
 * */
Architecture load_architecture(const std::filesystem::path& path);
Architecture architecture_from_json(std::string_view json_text);
std::string architecture_to_json(const Architecture& arch);

}  // namespace injeqt
