#include "injeqt/architecture.hpp"
#include "injeqt/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace injeqt
{

using json = nlohmann::json;

std::string_view
to_string(IsaKind k)
{
    switch (k)
    {
    case IsaKind::Idle:         return "idle";
    case IsaKind::Automorphism: return "automorphism";
    case IsaKind::InModule:     return "in_module";
    case IsaKind::InterModule:  return "inter_module";
    }
    return "?";
}

IsaTable
IsaTable::gross_code_defaults()
{
    IsaTable t;
    t[IsaKind::Idle] = {IsaKind::Idle, 8.0, std::pow(10.0, -14.8)};
    t[IsaKind::Automorphism] = {IsaKind::Automorphism, 14.0, std::pow(10.0, -12.2)};
    t[IsaKind::InModule] = {IsaKind::InModule, 120.0, std::pow(10.0, -9.0)};
    t[IsaKind::InterModule] = {IsaKind::InterModule, 120.0, std::pow(10.0, -7.4)};
    return t;
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

std::string_view
to_string(FactoryKind k)
{
    switch (k)
    {
    case FactoryKind::Distillation: return "distillation";
    case FactoryKind::Cultivation:  return "cultivation";
    case FactoryKind::Star:         return "star";
    }
    return "?";
}

FactoryKind
parse_factory_kind(std::string_view name)
{
    if (name == "distillation")
        return FactoryKind::Distillation;
    if (name == "cultivation")
        return FactoryKind::Cultivation;
    if (name == "star" || name == "STAR")
        return FactoryKind::Star;
    throw ConfigError("unknown factory '" + std::string(name) + "' (expected distillation|cultivation|star)");
}

FactorySpec
FactorySpec::defaults(FactoryKind kind)
{
    switch (kind)
    {
    case FactoryKind::Distillation:
        // discard rate ~5.5e-3 is treated as deterministic preparation
        return {kind, OutputKind::TState, 4.4e-8, 108.6, 810, 0.0};
    case FactoryKind::Cultivation:
        return {kind, OutputKind::TState, 6e-15, 152.22, 241, 0.25};
    case FactoryKind::Star:
        return {kind, OutputKind::RzState, 3.2e-8, 16.45, 194, 0.25};
    }
    throw ConfigError("unknown factory kind");
}

std::uint64_t
tcount(double eps_synth)
{
    if (!(eps_synth > 0.0 && eps_synth < 1.0))
        throw DomainError("eps_synth must lie in (0, 1), got " + std::to_string(eps_synth));
    const double c = std::ceil(-10.0 * std::log10(eps_synth) - 1e-9);
    return c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
}

std::uint64_t
SynthesisModel::c() const
{
    return c_override ? *c_override : tcount(eps_synth);
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

std::string_view
to_string(InjectionTech t)
{
    return t == InjectionTech::LatticeSurgery ? "surgery" : "transversal";
}

InjectionTech
parse_injection_tech(std::string_view name)
{
    if (name == "surgery" || name == "lattice_surgery" || name == "LatticeSurgery")
        return InjectionTech::LatticeSurgery;
    if (name == "transversal" || name == "Transversal")
        return InjectionTech::Transversal;
    throw ConfigError("unknown injection technology '" + std::string(name) + "' (expected surgery|transversal)");
}

AuxInjectionModel
AuxInjectionModel::defaults(FactoryKind base, InjectionTech tech)
{
    AuxInjectionModel m;
    m.tech = tech;
    m.d_aux = base == FactoryKind::Cultivation ? 11 : 7;
    m.s = 6;
    m.eps_tech = 1e-10;
    m.patch_qubits = 2 * m.d_aux * m.d_aux;
    return m;
}

double
AuxInjectionModel::tau_tech() const
{
    const double cycles = tech == InjectionTech::LatticeSurgery ? static_cast<double>(d_aux * s)
                                                                : static_cast<double>(s + 1);
    return cycles * step_scale;
}

AuxInjectionCost
aux_injection_cost(const AuxInjectionModel& model)
{
    return {model.tau_tech(), model.eps_tech};
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

std::uint64_t
LayoutConfig::modules_for(std::uint64_t logical_qubits) const
{
    const std::uint64_t needed = std::max<std::uint64_t>(1, (logical_qubits + module_capacity - 1) / module_capacity);
    if (num_modules)
    {
        if (needed > *num_modules)
            throw CapacityError(std::to_string(logical_qubits) + " logical qubits exceed "
                                + std::to_string(*num_modules) + " modules of capacity "
                                + std::to_string(module_capacity));
        return *num_modules;
    }
    return needed;
}

std::string_view
to_string(Policy p)
{
    return p == Policy::Tdg ? "tdg" : "injeqt";
}

Policy
parse_policy(std::string_view name)
{
    if (name == "tdg" || name == "TDG")
        return Policy::Tdg;
    if (name == "injeqt" || name == "INJEQT")
        return Policy::Injeqt;
    throw ConfigError("unknown policy '" + std::string(name) + "' (expected tdg|injeqt)");
}

Architecture
Architecture::defaults(FactoryKind factory, InjectionTech tech)
{
    Architecture a;
    a.factory = FactorySpec::defaults(factory);
    a.aux = AuxInjectionModel::defaults(factory, tech);
    return a;
}

void
Architecture::validate() const
{
    for (const auto& s : isa.specs)
    {
        if (!(s.steps > 0))
            throw ConfigError("isa." + std::string(to_string(s.kind)) + ".steps must be > 0");
        if (!(s.error > 0 && s.error < 1))
            throw ConfigError("isa." + std::string(to_string(s.kind)) + ".error must lie in (0, 1)");
    }
    if (!(factory.discard_prob >= 0 && factory.discard_prob < 1))
        throw ConfigError("factory.discard_prob must lie in [0, 1)");
    if (!(factory.expected_steps > 0))
        throw ConfigError("factory.expected_steps must be > 0");
    if (factory.qubits == 0)
        throw ConfigError("factory.qubits must be > 0");
    if (!(factory.error >= 0 && factory.error < 1))
        throw ConfigError("factory.error must lie in [0, 1)");
    if (aux.d_aux == 0 || aux.s == 0)
        throw ConfigError("aux.d_aux and aux.s must be > 0");
    if (aux.patch_qubits < aux.d_aux * aux.d_aux)
        throw ConfigError("aux.patch_qubits must be at least d_aux^2");
    if (!(aux.eps_tech >= 0 && aux.eps_tech < 1))
        throw ConfigError("aux.eps_tech must lie in [0, 1)");
    if (!(aux.step_scale > 0))
        throw ConfigError("aux.step_scale must be > 0");
    if (layout.module_capacity == 0 || layout.module_qubits == 0 || layout.adapter_qubits == 0
        || layout.lpu_qubits == 0)
        throw ConfigError("layout qubit constants must be > 0");
    if (layout.num_modules && *layout.num_modules == 0)
        throw ConfigError("layout.num_modules must be >= 1");
    if (synthesis.c_override && *synthesis.c_override == 0)
        throw ConfigError("synthesis.c must be >= 1");
    (void)synthesis.c();
}

std::uint64_t
physical_qubits(const LayoutConfig& layout, std::uint64_t num_modules, const FactorySpec& factory,
                const AuxInjectionModel& aux, std::uint64_t R, Policy policy)
{
    const std::uint64_t base = num_modules * layout.module_qubits + layout.adapter_qubits + layout.lpu_qubits;
    if (policy == Policy::Tdg)
        return base + factory.qubits;
    // one preparation pipeline per 2-level factory; Rz-state factories need no auxiliary patch
    const std::uint64_t patches = factory.output_kind == OutputKind::TState ? R * aux.patch_qubits : 0;
    return base + R * factory.qubits + patches;
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

namespace
{

template <class T>
void
read(const json& obj, const char* key, T& out, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return;
    try
    {
        out = it->get<T>();
    }
    catch (const json::exception& e)
    {
        throw ConfigError("config key '" + path + key + "': " + e.what());
    }
}

const json*
section(const json& root, const char* key)
{
    auto it = root.find(key);
    if (it == root.end())
        return nullptr;
    if (!it->is_object())
        throw ConfigError(std::string("config key '") + key + "' must be an object");
    return &*it;
}

}  // namespace

Architecture
architecture_from_json(std::string_view json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::exception& e)
    {
        throw ConfigError(std::string("invalid architecture JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("architecture config must be a JSON object");

    FactoryKind kind = FactoryKind::Distillation;
    InjectionTech tech = InjectionTech::LatticeSurgery;
    const json* fac = section(root, "factory");
    const json* aux = section(root, "aux");
    if (fac && fac->contains("name"))
        kind = parse_factory_kind(fac->at("name").get<std::string>());
    if (aux && aux->contains("tech"))
        tech = parse_injection_tech(aux->at("tech").get<std::string>());

    Architecture a = Architecture::defaults(kind, tech);

    if (const json* isa = section(root, "isa"))
    {
        for (IsaKind k : {IsaKind::Idle, IsaKind::Automorphism, IsaKind::InModule, IsaKind::InterModule})
        {
            const std::string name(to_string(k));
            if (const json* op = section(*isa, name.c_str()))
            {
                read(*op, "steps", a.isa[k].steps, "isa." + name + ".");
                read(*op, "error", a.isa[k].error, "isa." + name + ".");
            }
        }
    }
    if (fac)
    {
        read(*fac, "error", a.factory.error, "factory.");
        read(*fac, "expected_steps", a.factory.expected_steps, "factory.");
        read(*fac, "qubits", a.factory.qubits, "factory.");
        read(*fac, "discard_prob", a.factory.discard_prob, "factory.");
    }
    if (aux)
    {
        const std::uint64_t d_before = a.aux.d_aux;
        read(*aux, "d_aux", a.aux.d_aux, "aux.");
        read(*aux, "s", a.aux.s, "aux.");
        read(*aux, "eps_tech", a.aux.eps_tech, "aux.");
        read(*aux, "step_scale", a.aux.step_scale, "aux.");
        if (a.aux.d_aux != d_before)
            a.aux.patch_qubits = 2 * a.aux.d_aux * a.aux.d_aux;
        read(*aux, "patch_qubits", a.aux.patch_qubits, "aux.");
    }
    if (const json* lay = section(root, "layout"))
    {
        read(*lay, "module_capacity", a.layout.module_capacity, "layout.");
        read(*lay, "module_qubits", a.layout.module_qubits, "layout.");
        read(*lay, "adapter_qubits", a.layout.adapter_qubits, "layout.");
        read(*lay, "lpu_qubits", a.layout.lpu_qubits, "layout.");
        if (lay->contains("num_modules") && !lay->at("num_modules").is_null())
            a.layout.num_modules = lay->at("num_modules").get<std::uint64_t>();
    }
    if (const json* syn = section(root, "synthesis"))
    {
        read(*syn, "eps_synth", a.synthesis.eps_synth, "synthesis.");
        if (syn->contains("c") && !syn->at("c").is_null())
            a.synthesis.c_override = syn->at("c").get<std::uint64_t>();
    }
    a.validate();
    return a;
}

Architecture
load_architecture(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return architecture_from_json(ss.str());
}

std::string
architecture_to_json(const Architecture& a)
{
    json root;
    for (const auto& s : a.isa.specs)
        root["isa"][std::string(to_string(s.kind))] = {{"steps", s.steps}, {"error", s.error}};
    root["factory"] = {{"name", to_string(a.factory.name)},
                       {"error", a.factory.error},
                       {"expected_steps", a.factory.expected_steps},
                       {"qubits", a.factory.qubits},
                       {"discard_prob", a.factory.discard_prob}};
    root["aux"] = {{"tech", to_string(a.aux.tech)}, {"d_aux", a.aux.d_aux},   {"s", a.aux.s},
                   {"eps_tech", a.aux.eps_tech},    {"patch_qubits", a.aux.patch_qubits},
                   {"step_scale", a.aux.step_scale}};
    root["layout"] = {{"module_capacity", a.layout.module_capacity},
                      {"module_qubits", a.layout.module_qubits},
                      {"adapter_qubits", a.layout.adapter_qubits},
                      {"lpu_qubits", a.layout.lpu_qubits}};
    if (a.layout.num_modules)
        root["layout"]["num_modules"] = *a.layout.num_modules;
    root["synthesis"] = {{"eps_synth", a.synthesis.eps_synth}};
    if (a.synthesis.c_override)
        root["synthesis"]["c"] = *a.synthesis.c_override;
    return root.dump(2);
}

}  // namespace injeqt
