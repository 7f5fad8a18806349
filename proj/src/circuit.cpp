#include "injeqt/circuit.hpp"
#include "injeqt/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace injeqt
{

std::string_view
to_string(GateKind k)
{
    switch (k)
    {
    case GateKind::H:       return "H";
    case GateKind::S:       return "S";
    case GateKind::Sdg:     return "Sdg";
    case GateKind::X:       return "X";
    case GateKind::Y:       return "Y";
    case GateKind::Z:       return "Z";
    case GateKind::CX:      return "CX";
    case GateKind::CZ:      return "CZ";
    case GateKind::SWAP:    return "SWAP";
    case GateKind::Rz:      return "Rz";
    case GateKind::T:       return "T";
    case GateKind::Tdg:     return "Tdg";
    case GateKind::Measure: return "Measure";
    }
    return "?";
}

std::size_t
arity(GateKind k)
{
    switch (k)
    {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    default:
        return 1;
    }
}

bool
is_clifford_kind(GateKind k)
{
    switch (k)
    {
    case GateKind::H: case GateKind::S: case GateKind::Sdg:
    case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::CX: case GateKind::CZ: case GateKind::SWAP:
        return true;
    default:
        return false;
    }
}

std::optional<int>
clifford_quarter_turns(double theta)
{
    const double turns = theta / (std::numbers::pi / 2);
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) * (std::numbers::pi / 2) > 1e-10)
        return std::nullopt;
    const long long k = static_cast<long long>(nearest);
    return static_cast<int>(((k % 4) + 4) % 4);
}

std::size_t
Circuit::count(GateKind k) const
{
    return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(),
                                                  [k](const Gate& g) { return g.kind == k; }));
}

void
Circuit::validate() const
{
    bool in_suffix = false;
    for (const Gate& g : gates)
    {
        const std::size_t n = arity(g.kind);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (g.targets[i] >= num_qubits)
                throw IndexError("qubit " + std::to_string(g.targets[i]) + " out of range for "
                                 + std::to_string(num_qubits) + "-qubit circuit");
        }
        if (n == 2 && g.targets[0] == g.targets[1])
            throw IndexError("gate " + std::string(to_string(g.kind)) + " repeats qubit "
                             + std::to_string(g.targets[0]));
        if (g.kind == GateKind::Measure)
            in_suffix = true;
        else if (in_suffix)
            throw MeasurementOrderError("gate after terminal measurement block");
    }
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

namespace
{

enum class Tok
{
    Ident, Real, Int, String, Symbol, End
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token>
lex(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i)
        {
            if (src[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
                ++col;
        }
    };

    while (i < src.size())
    {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c)))
        {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/')
        {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*')
        {
            const std::size_t l0 = line, c0 = col;
            advance(2);
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/'))
                advance(1);
            if (i + 1 >= src.size())
                throw SyntaxError("unterminated block comment", l0, c0);
            advance(2);
            continue;
        }

        const std::size_t l0 = line, c0 = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
        {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l0, c0});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size()
                                                            && std::isdigit(static_cast<unsigned char>(src[i + 1]))))
        {
            std::size_t j = i;
            bool real = false;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            if (j < src.size() && src[j] == '.')
            {
                real = true;
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                    ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E'))
            {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-'))
                    ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])))
                {
                    real = true;
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                        ++j;
                }
            }
            out.push_back({real ? Tok::Real : Tok::Int, std::string(src.substr(i, j - i)), l0, c0});
            advance(j - i);
            continue;
        }
        if (c == '"')
        {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n')
                ++j;
            if (j >= src.size() || src[j] != '"')
                throw SyntaxError("unterminated string literal", l0, c0);
            out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), l0, c0});
            advance(j + 1 - i);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>')
        {
            out.push_back({Tok::Symbol, "->", l0, c0});
            advance(2);
            continue;
        }
        if (c == '=' && i + 1 < src.size() && src[i + 1] == '=')
        {
            out.push_back({Tok::Symbol, "==", l0, c0});
            advance(2);
            continue;
        }
        static constexpr std::string_view kSymbols = ";,()[]{}+-*/^";
        if (kSymbols.find(c) != std::string_view::npos)
        {
            out.push_back({Tok::Symbol, std::string(1, c), l0, c0});
            advance(1);
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", l0, c0);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Register
{
    std::size_t offset;
    std::size_t size;
};

/// A gate argument before broadcasting: a whole register or one element of it.
struct Arg
{
    std::string reg;
    std::optional<std::size_t> index;
    std::size_t line;
    std::size_t col;
};

/// Parameterless user gate: body statements kept as token ranges, expanded on application.
struct UserGate
{
    std::vector<std::string> formals;
    std::vector<Token> body;
    bool parametric{false};
};

constexpr double kPi = std::numbers::pi;

class Parser
{
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Circuit
    run(std::string name)
    {
        parse_program();
        Circuit c;
        c.num_qubits = num_qubits_;
        c.gates = std::move(gates_);
        c.gates.insert(c.gates.end(), measures_.begin(), measures_.end());
        c.name = std::move(name);
        c.validate();
        return c;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_{0};

    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::size_t num_qubits_{0};
    std::size_t num_clbits_{0};
    std::unordered_map<std::string, UserGate> user_gates_;

    std::vector<Gate> gates_;
    std::vector<Gate> measures_;
    std::vector<bool> measured_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void
    fail(const std::string& msg, const Token& at) const
    {
        throw SyntaxError(msg, at.line, at.col);
    }

    bool
    accept(std::string_view sym)
    {
        if (peek().kind == Tok::Symbol && peek().text == sym)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    void
    expect(std::string_view sym)
    {
        if (!accept(sym))
            fail("expected '" + std::string(sym) + "', found '" + peek().text + "'", peek());
    }

    std::string
    expect_ident()
    {
        if (peek().kind != Tok::Ident)
            fail("expected identifier, found '" + peek().text + "'", peek());
        return next().text;
    }

    std::size_t
    expect_uint()
    {
        if (peek().kind != Tok::Int)
            fail("expected integer, found '" + peek().text + "'", peek());
        return static_cast<std::size_t>(std::stoull(next().text));
    }

    void
    parse_program()
    {
        if (peek().kind == Tok::Ident && peek().text == "OPENQASM")
        {
            next();
            if (peek().kind != Tok::Real && peek().kind != Tok::Int)
                fail("expected version number", peek());
            const Token& v = next();
            if (v.text.rfind("2", 0) != 0)
                throw UnsupportedGate("OpenQASM version " + v.text + " is not supported");
            expect(";");
        }
        while (peek().kind != Tok::End)
            parse_statement();
    }

    void
    parse_statement()
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident)
            fail("expected statement, found '" + t.text + "'", t);

        if (t.text == "include")
        {
            next();
            if (peek().kind != Tok::String)
                fail("expected file name", peek());
            next();
            expect(";");
        }
        else if (t.text == "qreg" || t.text == "creg")
        {
            const bool quantum = t.text == "qreg";
            next();
            const Token& name_tok = peek();
            std::string name = expect_ident();
            expect("[");
            std::size_t size = expect_uint();
            expect("]");
            expect(";");
            auto& regs = quantum ? qregs_ : cregs_;
            if (qregs_.count(name) || cregs_.count(name))
                fail("register '" + name + "' redeclared", name_tok);
            std::size_t& total = quantum ? num_qubits_ : num_clbits_;
            regs[name] = Register{total, size};
            total += size;
            if (quantum)
                measured_.resize(num_qubits_, false);
        }
        else if (t.text == "barrier")
        {
            next();
            parse_arg_list();
            expect(";");
        }
        else if (t.text == "measure")
        {
            next();
            parse_measure();
        }
        else if (t.text == "gate")
        {
            next();
            parse_gate_definition();
        }
        else if (t.text == "if")
            throw UnsupportedGate("line " + std::to_string(t.line) + ": classical control ('if') is not supported");
        else if (t.text == "opaque")
            throw UnsupportedGate("line " + std::to_string(t.line) + ": opaque gates are not supported");
        else if (t.text == "reset")
            throw UnsupportedGate("line " + std::to_string(t.line) + ": reset is not supported");
        else
            parse_application(nullptr);
    }

    std::vector<Arg>
    parse_arg_list()
    {
        std::vector<Arg> args;
        do
        {
            const Token& at = peek();
            Arg a{expect_ident(), std::nullopt, at.line, at.col};
            if (accept("["))
            {
                a.index = expect_uint();
                expect("]");
            }
            args.push_back(std::move(a));
        } while (accept(","));
        return args;
    }

    std::vector<std::size_t>
    resolve(const Arg& a, const std::map<std::string, Register>& regs, const char* what) const
    {
        auto it = regs.find(a.reg);
        if (it == regs.end())
            throw SyntaxError(std::string("unknown ") + what + " register '" + a.reg + "'", a.line, a.col);
        const Register& r = it->second;
        if (a.index)
        {
            if (*a.index >= r.size)
                throw IndexError("line " + std::to_string(a.line) + ": index " + std::to_string(*a.index)
                                 + " out of range for register '" + a.reg + "' of size "
                                 + std::to_string(r.size));
            return {r.offset + *a.index};
        }
        std::vector<std::size_t> out(r.size);
        for (std::size_t i = 0; i < r.size; ++i)
            out[i] = r.offset + i;
        return out;
    }

    void
    parse_measure()
    {
        auto qargs = parse_arg_list();
        expect("->");
        auto cargs = parse_arg_list();
        expect(";");
        if (qargs.size() != 1 || cargs.size() != 1)
            fail("measure takes one quantum and one classical argument", peek());
        auto qs = resolve(qargs[0], qregs_, "quantum");
        auto cs = resolve(cargs[0], cregs_, "classical");
        if (qs.size() != cs.size())
            throw SyntaxError("measure register sizes differ", qargs[0].line, qargs[0].col);
        for (std::size_t i = 0; i < qs.size(); ++i)
        {
            if (measured_[qs[i]])
                throw MeasurementOrderError("line " + std::to_string(qargs[0].line) + ": qubit "
                                            + std::to_string(qs[i]) + " measured twice");
            measured_[qs[i]] = true;
            measures_.push_back(Gate::measure(static_cast<Qubit>(qs[i]), static_cast<std::int32_t>(cs[i])));
        }
    }

    void
    parse_gate_definition()
    {
        const Token& name_tok = peek();
        std::string name = expect_ident();
        UserGate def;
        if (accept("("))
        {
            if (!accept(")"))
            {
                do
                    expect_ident();
                while (accept(","));
                expect(")");
                def.parametric = true;
            }
        }
        do
            def.formals.push_back(expect_ident());
        while (accept(","));
        expect("{");
        int depth = 1;
        while (depth > 0)
        {
            const Token& b = peek();
            if (b.kind == Tok::End)
                fail("unterminated gate body for '" + name + "'", name_tok);
            if (b.kind == Tok::Symbol && b.text == "{")
                ++depth;
            if (b.kind == Tok::Symbol && b.text == "}")
                --depth;
            if (depth > 0)
                def.body.push_back(b);
            next();
        }
        // qelib1 definitions of builtins are redundant with the builtin table.
        if (is_builtin(name))
            return;
        def.body.push_back(Token{Tok::End, "", name_tok.line, name_tok.col});
        user_gates_[name] = std::move(def);
    }

    // Expression grammar: sum := product (('+'|'-') product)*, product := unary (('*'|'/') unary)*,
    // unary := '-' unary | power, power := atom ('^' unary)?
    double
    parse_expr()
    {
        double v = parse_product();
        for (;;)
        {
            if (accept("+"))
                v += parse_product();
            else if (accept("-"))
                v -= parse_product();
            else
                return v;
        }
    }

    double
    parse_product()
    {
        double v = parse_unary();
        for (;;)
        {
            if (accept("*"))
                v *= parse_unary();
            else if (accept("/"))
                v /= parse_unary();
            else
                return v;
        }
    }

    double
    parse_unary()
    {
        if (accept("-"))
            return -parse_unary();
        if (accept("+"))
            return parse_unary();
        double base = parse_atom();
        if (accept("^"))
            return std::pow(base, parse_unary());
        return base;
    }

    double
    parse_atom()
    {
        const Token& t = peek();
        if (t.kind == Tok::Int || t.kind == Tok::Real)
        {
            next();
            return std::stod(t.text);
        }
        if (accept("("))
        {
            double v = parse_expr();
            expect(")");
            return v;
        }
        if (t.kind == Tok::Ident)
        {
            next();
            if (t.text == "pi")
                return kPi;
            static const std::unordered_map<std::string, double (*)(double)> kFuncs = {
                {"sin", [](double x) { return std::sin(x); }},
                {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},
                {"exp", [](double x) { return std::exp(x); }},
                {"ln", [](double x) { return std::log(x); }},
                {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            auto it = kFuncs.find(t.text);
            if (it == kFuncs.end())
                fail("unknown identifier '" + t.text + "' in expression", t);
            expect("(");
            double v = parse_expr();
            expect(")");
            return it->second(v);
        }
        fail("expected expression, found '" + t.text + "'", t);
    }

    /*
     * Gate application. With `formals` set we are expanding a user gate body:
     * arguments are formal names bound to single qubits.
     * */
    void
    parse_application(const std::unordered_map<std::string, std::size_t>* formals)
    {
        const Token& name_tok = peek();
        std::string name = expect_ident();
        std::vector<double> params;
        if (accept("("))
        {
            if (!accept(")"))
            {
                do
                    params.push_back(parse_expr());
                while (accept(","));
                expect(")");
            }
        }
        auto args = parse_arg_list();
        expect(";");

        if (name == "barrier")
            return;

        std::vector<std::vector<std::size_t>> resolved;
        for (const Arg& a : args)
        {
            if (formals)
            {
                auto it = formals->find(a.reg);
                if (it == formals->end() || a.index)
                    throw SyntaxError("unknown gate argument '" + a.reg + "'", a.line, a.col);
                resolved.push_back({it->second});
            }
            else
                resolved.push_back(resolve(a, qregs_, "quantum"));
        }

        // Register broadcasting: all register arguments must agree in size.
        std::size_t width = 1;
        for (const auto& r : resolved)
        {
            if (r.size() != 1)
            {
                if (width != 1 && width != r.size())
                    fail("register size mismatch in arguments of '" + name + "'", name_tok);
                width = r.size();
            }
        }
        for (std::size_t w = 0; w < width; ++w)
        {
            std::vector<std::size_t> qs;
            for (const auto& r : resolved)
                qs.push_back(r.size() == 1 ? r[0] : r[w]);
            apply(name, name_tok, params, qs);
        }
    }

    void
    apply(const std::string& name, const Token& at, const std::vector<double>& params,
          const std::vector<std::size_t>& qs)
    {
        for (std::size_t i = 0; i < qs.size(); ++i)
            for (std::size_t j = i + 1; j < qs.size(); ++j)
                if (qs[i] == qs[j])
                    throw IndexError("line " + std::to_string(at.line) + ": gate '" + name
                                     + "' repeats qubit " + std::to_string(qs[i]));
        for (std::size_t q : qs)
            if (measured_[q])
                throw MeasurementOrderError("line " + std::to_string(at.line) + ": gate '" + name
                                            + "' acts on measured qubit " + std::to_string(q));

        if (is_builtin(name))
        {
            emit_builtin(name, at, params, qs);
            return;
        }
        auto it = user_gates_.find(name);
        if (it == user_gates_.end())
            throw UnsupportedGate("line " + std::to_string(at.line) + ": no decomposition for gate '" + name + "'");
        const UserGate& def = it->second;
        if (def.parametric)
            throw UnsupportedGate("line " + std::to_string(at.line) + ": parametric gate definition '" + name
                                  + "' is not supported");
        if (!params.empty())
            fail("gate '" + name + "' takes no parameters", at);
        if (qs.size() != def.formals.size())
            fail("gate '" + name + "' expects " + std::to_string(def.formals.size()) + " qubits", at);

        std::unordered_map<std::string, std::size_t> binding;
        for (std::size_t i = 0; i < qs.size(); ++i)
            binding[def.formals[i]] = qs[i];

        // Expand the body with a nested token cursor.
        std::vector<Token> saved = std::move(toks_);
        const std::size_t saved_pos = pos_;
        toks_ = def.body;
        pos_ = 0;
        try
        {
            while (peek().kind != Tok::End)
                parse_application(&binding);
        }
        catch (...)
        {
            toks_ = std::move(saved);
            pos_ = saved_pos;
            throw;
        }
        toks_ = std::move(saved);
        pos_ = saved_pos;
    }

    static bool
    is_builtin(const std::string& name)
    {
        static const std::unordered_map<std::string, int> kTable = builtin_table();
        return kTable.count(name) != 0;
    }

    /// name -> number of parameters; qubit counts checked in emit_builtin.
    static std::unordered_map<std::string, int>
    builtin_table()
    {
        return {
            {"id", 0}, {"u0", 1}, {"x", 0}, {"y", 0}, {"z", 0}, {"h", 0}, {"s", 0}, {"sdg", 0},
            {"t", 0}, {"tdg", 0}, {"sx", 0}, {"sxdg", 0}, {"rx", 1}, {"ry", 1}, {"rz", 1},
            {"p", 1}, {"u1", 1}, {"u2", 2}, {"u3", 3}, {"u", 3}, {"U", 3}, {"CX", 0}, {"cx", 0},
            {"cy", 0}, {"cz", 0}, {"ch", 0}, {"swap", 0}, {"ccx", 0}, {"cswap", 0}, {"crx", 1},
            {"cry", 1}, {"crz", 1}, {"cp", 1}, {"cu1", 1}, {"cu3", 3}, {"rzz", 1}, {"rxx", 1},
        };
    }

    void
    emit_builtin(const std::string& name, const Token& at, const std::vector<double>& p,
                 const std::vector<std::size_t>& qs)
    {
        static const std::unordered_map<std::string, int> kTable = builtin_table();
        const int nparams = kTable.at(name);
        if (static_cast<int>(p.size()) != nparams)
            fail("gate '" + name + "' expects " + std::to_string(nparams) + " parameters", at);

        auto need = [&](std::size_t n) {
            if (qs.size() != n)
                fail("gate '" + name + "' expects " + std::to_string(n) + " qubits", at);
        };
        auto Q = [&](std::size_t i) { return static_cast<Qubit>(qs[i]); };

        auto g1 = [&](GateKind k, Qubit q) { gates_.push_back(Gate::single(k, q)); };
        auto g2 = [&](GateKind k, Qubit a, Qubit b) { gates_.push_back(Gate::two(k, a, b)); };
        auto rz = [&](Qubit q, double th) { gates_.push_back(Gate::rz(q, th)); };

        // Each composite below equals its OpenQASM definition up to global phase.
        auto ry = [&](Qubit q, double th) {
            g1(GateKind::Sdg, q);
            g1(GateKind::H, q);
            rz(q, th);
            g1(GateKind::H, q);
            g1(GateKind::S, q);
        };
        auto u3 = [&](Qubit q, double th, double phi, double lam) {
            rz(q, lam);
            ry(q, th);
            rz(q, phi);
        };
        auto ccx = [&](Qubit a, Qubit b, Qubit c) {
            g1(GateKind::H, c);
            g2(GateKind::CX, b, c);
            rz(c, -kPi / 4);
            g2(GateKind::CX, a, c);
            rz(c, kPi / 4);
            g2(GateKind::CX, b, c);
            rz(c, -kPi / 4);
            g2(GateKind::CX, a, c);
            rz(b, kPi / 4);
            rz(c, kPi / 4);
            g1(GateKind::H, c);
            g2(GateKind::CX, a, b);
            rz(a, kPi / 4);
            rz(b, -kPi / 4);
            g2(GateKind::CX, a, b);
        };
        auto cu3 = [&](Qubit c, Qubit t, double th, double phi, double lam) {
            rz(c, (lam + phi) / 2);
            rz(t, (lam - phi) / 2);
            g2(GateKind::CX, c, t);
            u3(t, -th / 2, 0, -(phi + lam) / 2);
            g2(GateKind::CX, c, t);
            u3(t, th / 2, phi, 0);
        };

        if (name == "id" || name == "u0")
        {
            need(1);
        }
        else if (name == "x") { need(1); g1(GateKind::X, Q(0)); }
        else if (name == "y") { need(1); g1(GateKind::Y, Q(0)); }
        else if (name == "z") { need(1); g1(GateKind::Z, Q(0)); }
        else if (name == "h") { need(1); g1(GateKind::H, Q(0)); }
        else if (name == "s") { need(1); g1(GateKind::S, Q(0)); }
        else if (name == "sdg") { need(1); g1(GateKind::Sdg, Q(0)); }
        else if (name == "t") { need(1); rz(Q(0), kPi / 4); }
        else if (name == "tdg") { need(1); rz(Q(0), -kPi / 4); }
        else if (name == "sx" || name == "sxdg")
        {
            need(1);
            g1(GateKind::H, Q(0));
            g1(name == "sx" ? GateKind::S : GateKind::Sdg, Q(0));
            g1(GateKind::H, Q(0));
        }
        else if (name == "rx")
        {
            need(1);
            g1(GateKind::H, Q(0));
            rz(Q(0), p[0]);
            g1(GateKind::H, Q(0));
        }
        else if (name == "ry") { need(1); ry(Q(0), p[0]); }
        else if (name == "rz" || name == "p" || name == "u1") { need(1); rz(Q(0), p[0]); }
        else if (name == "u2") { need(1); u3(Q(0), kPi / 2, p[0], p[1]); }
        else if (name == "u3" || name == "u" || name == "U") { need(1); u3(Q(0), p[0], p[1], p[2]); }
        else if (name == "cx" || name == "CX") { need(2); g2(GateKind::CX, Q(0), Q(1)); }
        else if (name == "cz") { need(2); g2(GateKind::CZ, Q(0), Q(1)); }
        else if (name == "swap") { need(2); g2(GateKind::SWAP, Q(0), Q(1)); }
        else if (name == "cy")
        {
            need(2);
            g1(GateKind::Sdg, Q(1));
            g2(GateKind::CX, Q(0), Q(1));
            g1(GateKind::S, Q(1));
        }
        else if (name == "ch")
        {
            need(2);
            const Qubit a = Q(0), b = Q(1);
            g1(GateKind::H, b);
            g1(GateKind::Sdg, b);
            g2(GateKind::CX, a, b);
            g1(GateKind::H, b);
            rz(b, kPi / 4);
            g2(GateKind::CX, a, b);
            rz(b, kPi / 4);
            g1(GateKind::H, b);
            g1(GateKind::S, b);
            g1(GateKind::X, b);
            g1(GateKind::S, a);
        }
        else if (name == "ccx") { need(3); ccx(Q(0), Q(1), Q(2)); }
        else if (name == "cswap")
        {
            need(3);
            g2(GateKind::CX, Q(2), Q(1));
            ccx(Q(0), Q(1), Q(2));
            g2(GateKind::CX, Q(2), Q(1));
        }
        else if (name == "crz")
        {
            need(2);
            rz(Q(1), p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
            rz(Q(1), -p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
        }
        else if (name == "cry")
        {
            need(2);
            ry(Q(1), p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
            ry(Q(1), -p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
        }
        else if (name == "crx") { need(2); cu3(Q(0), Q(1), p[0], -kPi / 2, kPi / 2); }
        else if (name == "cu3") { need(2); cu3(Q(0), Q(1), p[0], p[1], p[2]); }
        else if (name == "cp" || name == "cu1")
        {
            need(2);
            rz(Q(0), p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
            rz(Q(1), -p[0] / 2);
            g2(GateKind::CX, Q(0), Q(1));
            rz(Q(1), p[0] / 2);
        }
        else if (name == "rzz")
        {
            need(2);
            g2(GateKind::CX, Q(0), Q(1));
            rz(Q(1), p[0]);
            g2(GateKind::CX, Q(0), Q(1));
        }
        else if (name == "rxx")
        {
            need(2);
            g1(GateKind::H, Q(0));
            g1(GateKind::H, Q(1));
            g2(GateKind::CX, Q(0), Q(1));
            rz(Q(1), p[0]);
            g2(GateKind::CX, Q(0), Q(1));
            g1(GateKind::H, Q(0));
            g1(GateKind::H, Q(1));
        }
    }
};

}  // namespace

Circuit
parse_qasm(std::string_view text, std::string name)
{
    Parser parser(lex(text));
    return parser.run(std::move(name));
}

Circuit
parse_qasm_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open circuit file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str(), path.stem().string());
}

}  // namespace injeqt
