#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace kwright::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& field(const json& j, const char* name) {
    if (!j.is_object()) fail("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) fail(std::string(what) + ": expected a number");
    return j.get<double>();
}

Complex optional_complex(const json& j, const char* name, Complex fallback) {
    auto it = j.find(name);
    return it == j.end() ? fallback : complex_from_json(*it, name);
}

json pairs_to_json(const std::vector<WrightPair>& pairs) {
    json out = json::array();
    for (const auto& p : pairs) out.push_back({p.a.real(), p.a.imag(), p.step});
    return out;
}

std::vector<WrightPair> pairs_from_json(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + ": expected an array of [re, im, step]");
    std::vector<WrightPair> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) fail(std::string(what) + ": each entry must be [re, im, step]");
        out.push_back({{number(e[0], what), number(e[1], what)}, number(e[2], what)});
    }
    return out;
}

void read_side_kind(const json& j, Side& side, OpKind& kind) {
    if (auto it = j.find("side"); it != j.end()) side = side_from_string(it->get<std::string>());
    if (auto it = j.find("kind"); it != j.end()) kind = kind_from_string(it->get<std::string>());
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
    fail(std::string(what) + ": expected a number or [re, im]");
}

json to_json(const WrightParams& p) {
    return {{"k", p.k}, {"upper", pairs_to_json(p.upper)}, {"lower", pairs_to_json(p.lower)}};
}

WrightParams wright_params_from_json(const json& j) {
    WrightParams p;
    p.k = number(field(j, "k"), "k");
    p.upper = pairs_from_json(field(j, "upper"), "upper");
    p.lower = pairs_from_json(field(j, "lower"), "lower");
    try {
        p.validate();
    } catch (const DomainError& e) {
        fail(e.what());
    }
    return p;
}

json to_json(const TransformedWright& t) {
    return {{"source", t.source},
            {"prefactor_k_exp", to_json(t.prefactor_k_exp)},
            {"x_exponent", to_json(t.x_exponent)},
            {"argument_sign", t.argument_sign > 0 ? "+" : "-"},
            {"params", to_json(t.params)},
            {"a", to_json(t.a)},
            {"mu", t.mu},
            {"near_boundary", t.near_boundary}};
}

TransformedWright transformed_from_json(const json& j) {
    TransformedWright t;
    if (auto it = j.find("source"); it != j.end() && it->is_string()) t.source = it->get<std::string>();
    t.prefactor_k_exp = complex_from_json(field(j, "prefactor_k_exp"), "prefactor_k_exp");
    t.x_exponent = complex_from_json(field(j, "x_exponent"), "x_exponent");
    const json& sign = field(j, "argument_sign");
    if (sign == "+") {
        t.argument_sign = 1;
    } else if (sign == "-") {
        t.argument_sign = -1;
    } else {
        fail("argument_sign must be \"+\" or \"-\"");
    }
    t.params = wright_params_from_json(field(j, "params"));
    t.a = optional_complex(j, "a", 1.0);
    if (auto it = j.find("mu"); it != j.end()) t.mu = number(*it, "mu");
    if (auto it = j.find("near_boundary"); it != j.end() && it->is_boolean()) t.near_boundary = it->get<bool>();
    return t;
}

json to_json(const MSMParams& op) {
    return {{"alpha", to_json(op.alpha)},
            {"alpha_prime", to_json(op.alpha_prime)},
            {"beta", to_json(op.beta)},
            {"beta_prime", to_json(op.beta_prime)},
            {"gamma", to_json(op.gamma)},
            {"side", to_string(op.side)},
            {"kind", to_string(op.kind)}};
}

MSMParams msm_from_json(const json& j) {
    MSMParams op;
    op.alpha = complex_from_json(field(j, "alpha"), "alpha");
    op.alpha_prime = complex_from_json(field(j, "alpha_prime"), "alpha_prime");
    op.beta = complex_from_json(field(j, "beta"), "beta");
    op.beta_prime = complex_from_json(field(j, "beta_prime"), "beta_prime");
    op.gamma = complex_from_json(field(j, "gamma"), "gamma");
    read_side_kind(j, op.side, op.kind);
    return op;
}

SaigoParams saigo_from_json(const json& j) {
    SaigoParams op;
    op.alpha = complex_from_json(field(j, "alpha"), "alpha");
    op.beta = complex_from_json(field(j, "beta"), "beta");
    op.gamma = complex_from_json(field(j, "gamma"), "gamma");
    read_side_kind(j, op.side, op.kind);
    return op;
}

EKParams ek_from_json(const json& j) {
    EKParams op;
    op.alpha = complex_from_json(field(j, "alpha"), "alpha");
    op.gamma = complex_from_json(field(j, "gamma"), "gamma");
    read_side_kind(j, op.side, op.kind);
    return op;
}

PowerWeight weight_from_json(const json& j) {
    PowerWeight w;
    w.rho = complex_from_json(field(j, "rho"), "rho");
    if (auto it = j.find("mu"); it != j.end()) w.mu = number(*it, "mu");
    w.a = optional_complex(j, "a", 0.0);
    return w;
}

Side side_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "left") return Side::Left;
    if (v == "right") return Side::Right;
    fail("side must be \"left\" or \"right\", got \"" + s + "\"");
}

OpKind kind_from_string(const std::string& s) {
    const std::string v = lower(s);
    if (v == "integral") return OpKind::Integral;
    if (v == "derivative") return OpKind::Derivative;
    if (v == "caputo") return OpKind::Caputo;
    fail("kind must be integral, derivative or caputo, got \"" + s + "\"");
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

}  // namespace kwright::io
