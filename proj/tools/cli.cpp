#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "kwright/kwright.hpp"

namespace kwright::cli {

namespace {

using io::json;

// ---------------------------------------------------------------------------
// Output: every subcommand produces rows of named cells.

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

json real_cell(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_cell(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

std::string pretty_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

json table_json(const Table& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr;
}

void emit(const Table& t, const std::string& format, std::ostream& out, bool single) {
    if (format == "json") {
        json j = table_json(t);
        out << (single && j.size() == 1 ? j[0] : j).dump(2) << "\n";
    } else if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << "\n";
        }
    } else if (single && t.rows.size() == 1) {
        std::size_t w = 0;
        for (const auto& c : t.columns) w = std::max(w, c.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(w) + 2) << t.columns[i] << pretty_cell(t.rows[0][i]) << "\n";
        }
    } else {
        std::vector<std::size_t> w(t.columns.size());
        std::vector<std::vector<std::string>> cells;
        for (std::size_t i = 0; i < t.columns.size(); ++i) w[i] = t.columns[i].size();
        for (const auto& row : t.rows) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                line.push_back(pretty_cell(row[i]));
                w[i] = std::max(w[i], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            out << std::left << std::setw(static_cast<int>(w[i]) + 2) << t.columns[i];
        }
        out << "\n";
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                out << std::left << std::setw(static_cast<int>(w[i]) + 2) << line[i];
            }
            out << "\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Operator selection by theorem / corollary id.

using AnyOperator = std::variant<MSMParams, SaigoParams, EKParams>;

enum class Family { MSM, Saigo, EK };

struct OperatorId {
    Family family;
    Side side;
    OpKind kind;
    std::string label;
};

OpKind kind_of_section(int section) {
    switch (section) {
        case 3: return OpKind::Integral;
        case 4: return OpKind::Derivative;
        case 5: return OpKind::Caputo;
    }
    throw io::ParseError("unknown section");
}

bool split_id(const std::string& id, int& section, int& number) {
    const auto dot = id.find('.');
    if (dot == std::string::npos) return false;
    try {
        std::size_t used = 0;
        section = std::stoi(id.substr(0, dot), &used);
        if (used != dot) return false;
        number = std::stoi(id.substr(dot + 1), &used);
        return used == id.size() - dot - 1;
    } catch (const std::exception&) {
        return false;
    }
}

OperatorId parse_operator_id(const std::string& theorem, const std::string& corollary) {
    if (theorem.empty() == corollary.empty()) throw io::ParseError("give exactly one of --theorem and --corollary");
    int section = 0, number = 0;
    const std::string& id = theorem.empty() ? corollary : theorem;
    if (!split_id(id, section, number) || section < 3 || section > 5) {
        throw io::ParseError("unknown id \"" + id + "\"");
    }
    OperatorId out{Family::MSM, Side::Left, kind_of_section(section), ""};
    if (!theorem.empty()) {
        if (number != 1 && number != 2) throw io::ParseError("unknown theorem \"" + id + "\"");
        out.side = number == 1 ? Side::Left : Side::Right;
        out.label = "Theorem " + id;
        return out;
    }
    switch (number) {
        case 1: out.family = Family::Saigo; out.side = Side::Left; break;
        case 3: out.family = Family::EK; out.side = Side::Left; break;
        case 4: out.family = Family::Saigo; out.side = Side::Right; break;
        case 6: out.family = Family::EK; out.side = Side::Right; break;
        default: throw io::ParseError("unknown corollary \"" + id + "\"");
    }
    out.label = "Corollary " + id;
    return out;
}

AnyOperator operator_from_json(const OperatorId& id, const json& j) {
    switch (id.family) {
        case Family::MSM: {
            MSMParams op = io::msm_from_json(j);
            op.side = id.side;
            op.kind = id.kind;
            return op;
        }
        case Family::Saigo: {
            SaigoParams op = io::saigo_from_json(j);
            op.side = id.side;
            op.kind = id.kind;
            return op;
        }
        case Family::EK: {
            EKParams op = io::ek_from_json(j);
            op.side = id.side;
            op.kind = id.kind;
            return op;
        }
    }
    throw io::ParseError("unknown family");
}

TransformedWright apply_transform(const AnyOperator& op, const PowerWeight& w, const WrightParams& f) {
    return std::visit(
        [&](const auto& o) -> TransformedWright {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, MSMParams>) {
                return transform(o, w, f);
            } else {
                return corollary_transform(o, w, f);
            }
        },
        op);
}

std::vector<std::pair<std::string, Complex>> operator_fields(const AnyOperator& op) {
    return std::visit(
        [](const auto& o) -> std::vector<std::pair<std::string, Complex>> {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, MSMParams>) {
                return {{"alpha", o.alpha},
                        {"alpha_prime", o.alpha_prime},
                        {"beta", o.beta},
                        {"beta_prime", o.beta_prime},
                        {"gamma", o.gamma}};
            } else if constexpr (std::is_same_v<T, SaigoParams>) {
                return {{"alpha", o.alpha}, {"beta", o.beta}, {"gamma", o.gamma}};
            } else {
                return {{"alpha", o.alpha}, {"gamma", o.gamma}};
            }
        },
        op);
}

// ---------------------------------------------------------------------------
// Job input: file plus inline overrides.

struct Overrides {
    std::optional<double> alpha, alpha_prime, beta, beta_prime, gamma;
    std::optional<double> rho, mu, a, k;
    std::string params_file;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--params", params_file, "job JSON: {\"operator\", \"weight\", \"f\"}");
        cmd->add_option("--alpha", alpha, "operator alpha");
        cmd->add_option("--alpha-prime", alpha_prime, "operator alpha' (MSM)");
        cmd->add_option("--beta", beta, "operator beta");
        cmd->add_option("--beta-prime", beta_prime, "operator beta' (MSM)");
        cmd->add_option("--gamma", gamma, "operator gamma");
        cmd->add_option("--rho", rho, "weight rho");
        cmd->add_option("--mu", mu, "weight mu");
        cmd->add_option("--a", a, "series scale a");
        cmd->add_option("--k", k, "k of the input series");
    }
};

struct Job {
    AnyOperator op;
    PowerWeight weight;
    WrightParams f;
};

json member_or(const json& j, const char* name, json fallback) {
    if (j.is_object()) {
        if (auto it = j.find(name); it != j.end()) return *it;
    }
    return fallback;
}

void set_if(json& j, const char* name, const std::optional<double>& v) {
    if (v) j[name] = *v;
}

Job load_job(const OperatorId& id, const Overrides& o) {
    const json file = o.params_file.empty() ? json::object() : io::read_file(o.params_file);
    json op = member_or(file, "operator", json::object());
    for (const char* name : {"alpha", "alpha_prime", "beta", "beta_prime", "gamma"}) {
        if (!op.contains(name)) op[name] = 0.0;
    }
    set_if(op, "alpha", o.alpha);
    set_if(op, "alpha_prime", o.alpha_prime);
    set_if(op, "beta", o.beta);
    set_if(op, "beta_prime", o.beta_prime);
    set_if(op, "gamma", o.gamma);

    json w = member_or(file, "weight", json::object());
    set_if(w, "rho", o.rho);
    set_if(w, "mu", o.mu);
    set_if(w, "a", o.a);

    json f = member_or(file, "f", json{{"k", 1.0}, {"upper", json::array()}, {"lower", json::array()}});
    set_if(f, "k", o.k);
    return {operator_from_json(id, op), io::weight_from_json(w), io::wright_params_from_json(f)};
}

bool looks_transformed(const json& j) { return j.is_object() && j.contains("prefactor_k_exp"); }

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_eval(const std::string& file, double z_re, double z_im, std::optional<double> x, double tol,
             const std::string& format, std::ostream& out) {
    const json j = io::read_file(file);
    SeriesResult r;
    if (looks_transformed(j)) {
        if (!x) throw io::ParseError("a transformed series needs --x");
        r = evaluate_image_detailed(io::transformed_from_json(j), *x, tol);
    } else {
        r = eval_kwright_detailed(io::wright_params_from_json(j), {z_re, z_im}, tol);
    }
    Table t{{"re", "im", "est_error", "terms"}, {}};
    t.add({r.value.real(), r.value.imag(), r.est_error, r.terms});
    emit(t, format, out, true);
    return kOk;
}

int cmd_gammak(double z_re, double z_im, double k, const std::string& format, std::ostream& out) {
    const Complex g = gamma_k({z_re, z_im}, k);
    Table t{{"re", "im"}, {}};
    t.add({real_cell(g.real()), real_cell(g.imag())});
    emit(t, format, out, true);
    return kOk;
}

int cmd_classify(const std::string& file, double z_re, double z_im, const std::string& format, std::ostream& out) {
    const WrightParams p = io::wright_params_from_json(io::read_file(file));
    const ConvergenceData d = convergence_data(p);
    const ConvergenceClass c = classify(p, {z_re, z_im});
    Table t{{"Delta", "delta", "mu_re", "mu_im", "class", "radius", "convergent", "note"}, {}};
    t.add({d.delta_cap, real_cell(d.delta_radius), d.mu.real(), d.mu.imag(), to_string(c.kind), real_cell(c.radius),
           c.convergent, c.note});
    emit(t, format, out, true);
    return kOk;
}

int cmd_transform(const OperatorId& id, const Overrides& o, bool simplify_pairs, const std::string& format,
                  std::ostream& out) {
    const Job job = load_job(id, o);
    TransformedWright t = apply_transform(job.op, job.weight, job.f);
    if (simplify_pairs) t = simplify(std::move(t));
    if (format == "json") {
        out << io::to_json(t).dump(2) << "\n";
        return kOk;
    }
    Table tab{{"list", "index", "re", "im", "step"}, {}};
    auto add_pairs = [&](const char* name, const std::vector<WrightPair>& pairs) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            tab.add({name, i, pairs[i].a.real(), pairs[i].a.imag(), pairs[i].step});
        }
    };
    if (format == "pretty") {
        out << t.source << ": k^(" << pretty_cell(t.prefactor_k_exp.real()) << ") x^("
            << pretty_cell(t.x_exponent.real()) << ") Psi^k(a x^(" << (t.argument_sign > 0 ? "+" : "-") << "mu/k))"
            << (t.near_boundary ? "  [near a hypothesis boundary]" : "") << "\n";
    }
    add_pairs("upper", t.params.upper);
    add_pairs("lower", t.params.lower);
    emit(tab, format, out, false);
    return kOk;
}

int cmd_table(const OperatorId* id, const Overrides& o, const std::string& transformed_file, double x_min,
              double x_max, int points, bool log_spacing, double tol, const std::string& format, std::ostream& out) {
    if (points < 1) throw io::ParseError("--points must be positive");
    if (!(x_min > 0.0) || !(x_max >= x_min)) throw io::ParseError("need 0 < x-min <= x-max");
    TransformedWright t;
    if (!transformed_file.empty()) {
        t = io::transformed_from_json(io::read_file(transformed_file));
    } else {
        const Job job = load_job(*id, o);
        t = apply_transform(job.op, job.weight, job.f);
    }
    Table tab{{"x", "re", "im", "est_error"}, {}};
    for (int i = 0; i < points; ++i) {
        const double u = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const double x = log_spacing ? x_min * std::pow(x_max / x_min, u) : x_min + (x_max - x_min) * u;
        const SeriesResult r = evaluate_image_detailed(t, x, tol);
        tab.add({x, r.value.real(), r.value.imag(), r.est_error});
    }
    emit(tab, format, out, false);
    return kOk;
}

struct VerifyConfig {
    int draws = 20;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    double x = 1.0;
    unsigned order = 8;
    std::string f_file;
};

AnyOperator draw_operator(const OperatorId& id, Sampler& s) {
    switch (id.family) {
        case Family::MSM: return draw_msm(s, id.side, id.kind);
        case Family::Saigo: return draw_saigo(s, id.side, id.kind);
        case Family::EK: return draw_ek(s, id.side, id.kind);
    }
    throw io::ParseError("unknown family");
}

int cmd_verify(const OperatorId& id, const VerifyConfig& cfg, const std::string& format, std::ostream& out,
               std::ostream& err) {
    if (cfg.draws < 1) throw io::ParseError("--draws must be positive");
    if (!(cfg.tol > 0.0)) throw io::ParseError("--tol must be positive");
    std::optional<WrightParams> f_fixed;
    if (!cfg.f_file.empty()) f_fixed = io::wright_params_from_json(io::read_file(cfg.f_file));

    Sampler sampler(cfg.seed);
    Table tab{{"draw"}, {}};

    double worst = 0.0;
    bool errors = false;
    for (int d = 0; d < cfg.draws; ++d) {
        const AnyOperator op = draw_operator(id, sampler);
        const double k = f_fixed ? f_fixed->k : static_cast<double>(sampler.pick(2) + 1);
        const double bound = std::visit([](const auto& o) { return rho_lower_bound(o); }, op);
        const double rho = k * draw_above(sampler, bound);
        const double a = sampler.uniform();
        WrightParams f = f_fixed ? *f_fixed : WrightParams{k, {{1.0, 1.0}}, {{2.0, 1.0}}};
        const PowerWeight w{rho, 1.0, a};

        const auto fields = operator_fields(op);
        if (d == 0) {
            for (const auto& fld : fields) tab.columns.push_back(fld.first);
            for (const char* c : {"rho", "k", "a", "closed_re", "closed_im", "oracle_re", "oracle_im", "rel_error",
                                  "status"}) {
                tab.columns.emplace_back(c);
            }
        }
        std::vector<json> row{d};
        for (const auto& fld : fields) row.emplace_back(fld.second.real());
        row.insert(row.end(), {rho, k, a});
        try {
            const TransformedWright closed = apply_transform(op, w, f);
            const OperatorOracle oracle = std::visit([](const auto& o) { return OperatorOracle(o); }, op);
            const Comparison c = compare_series(oracle, closed, w, f, cfg.x, cfg.order);
            worst = std::max(worst, c.rel_error);
            const bool ok = c.rel_error < cfg.tol;
            row.insert(row.end(), {c.closed_form.real(), c.closed_form.imag(), c.oracle.real(), c.oracle.imag(),
                                   c.rel_error, ok ? "ok" : "above tol"});
        } catch (const NonConvergenceError& e) {
            errors = true;
            err << id.label << " draw " << d << ": " << e.what() << "\n";
            row.insert(row.end(), {"nan", "nan", "nan", "nan", "nan", std::string("error: ") + e.what()});
        }
        tab.add(std::move(row));
    }
    const bool pass = !errors && worst < cfg.tol;
    if (format == "json") {
        json j{{"source", id.label}, {"seed", cfg.seed},          {"x", cfg.x},
               {"order", cfg.order}, {"tol", cfg.tol},            {"draws", table_json(tab)},
               {"max_rel_error", worst}, {"pass", pass}};
        out << j.dump(2) << "\n";
    } else {
        emit(tab, format, out, false);
        if (format == "pretty") {
            out << id.label << ": max relative error " << pretty_cell(worst) << " over " << cfg.draws
                << " draws (tol " << pretty_cell(cfg.tol) << ") " << (pass ? "PASS" : "FAIL") << "\n";
        }
    }
    if (errors) return kNonConvergence;
    return pass ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"K-Wright functions and Marichev-Saigo-Maeda operator images", "kwright"};
    app.require_subcommand(1);
    std::string format;
    app.add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.fallthrough();

    std::string file, transformed_file, theorem, corollary;
    double z_re = 0.0, z_im = 0.0, k = 1.0, tol = 1e-12;
    std::optional<double> x;

    auto* eval = app.add_subcommand("eval", "evaluate a K-Wright series at z, or a transformed series at x");
    eval->add_option("--params", file, "WrightParams or TransformedWright JSON")->required();
    eval->add_option("--z", z_re, "real part of z");
    eval->add_option("--z-im", z_im, "imaginary part of z");
    eval->add_option("--x", x, "x for a transformed series");
    eval->add_option("--tol", tol, "series tolerance")->check(CLI::PositiveNumber);

    auto* gammak = app.add_subcommand("gammak", "k-gamma function");
    gammak->add_option("--z", z_re, "real part of z")->required();
    gammak->add_option("--z-im", z_im, "imaginary part of z");
    gammak->add_option("--k", k, "k > 0")->check(CLI::PositiveNumber);

    auto* cls = app.add_subcommand("classify", "convergence invariants and class at z");
    cls->add_option("--params", file, "WrightParams JSON")->required();
    cls->add_option("--z", z_re, "real part of z");
    cls->add_option("--z-im", z_im, "imaginary part of z");

    Overrides tr_over;
    bool simplify_pairs = false;
    auto* tr = app.add_subcommand("transform", "closed-form image of a weighted K-Wright series");
    tr->add_option("--theorem", theorem, "3.1, 3.2, 4.1, 4.2, 5.1, 5.2");
    tr->add_option("--corollary", corollary, "3.1, 3.3, 3.4, 3.6, 4.1, 4.3, 4.4, 4.6, 5.1, 5.3, 5.4, 5.6");
    tr->add_flag("--simplify", simplify_pairs, "cancel coinciding upper/lower pairs");
    tr_over.add_to(tr);

    Overrides tab_over;
    double x_min = 0.1, x_max = 2.0;
    int points = 20;
    bool log_spacing = false;
    auto* tab = app.add_subcommand("table", "CSV of the closed form over an x grid");
    tab->add_option("--theorem", theorem, "theorem id");
    tab->add_option("--corollary", corollary, "corollary id");
    tab->add_option("--transformed", transformed_file, "TransformedWright JSON instead of an id");
    tab->add_option("--x-min", x_min, "first grid point");
    tab->add_option("--x-max", x_max, "last grid point");
    tab->add_option("--points", points, "grid size");
    tab->add_flag("--log", log_spacing, "geometric spacing");
    tab->add_option("--tol", tol, "series tolerance")->check(CLI::PositiveNumber);
    tab_over.add_to(tab);

    VerifyConfig vcfg;
    auto* ver = app.add_subcommand("verify", "closed form against the quadrature oracle on random draws");
    ver->add_option("--theorem", theorem, "theorem id");
    ver->add_option("--corollary", corollary, "corollary id");
    ver->add_option("--draws", vcfg.draws, "number of parameter draws");
    ver->add_option("--seed", vcfg.seed, "random seed");
    ver->add_option("--tol", vcfg.tol, "relative tolerance");
    ver->add_option("--x", vcfg.x, "evaluation point")->check(CLI::PositiveNumber);
    ver->add_option("--order", vcfg.order, "series truncation N");
    ver->add_option("--f", vcfg.f_file, "WrightParams JSON of the input series (default 1Psi1 (1,1)/(2,1))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }

    auto fmt = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };
    try {
        if (*eval) return cmd_eval(file, z_re, z_im, x, tol, fmt("pretty"), out);
        if (*gammak) return cmd_gammak(z_re, z_im, k, fmt("pretty"), out);
        if (*cls) return cmd_classify(file, z_re, z_im, fmt("pretty"), out);
        if (*tr) return cmd_transform(parse_operator_id(theorem, corollary), tr_over, simplify_pairs, fmt("json"), out);
        if (*tab) {
            std::optional<OperatorId> id;
            if (transformed_file.empty()) id = parse_operator_id(theorem, corollary);
            return cmd_table(id ? &*id : nullptr, tab_over, transformed_file, x_min, x_max, points, log_spacing, tol,
                             fmt("csv"), out);
        }
        if (*ver) return cmd_verify(parse_operator_id(theorem, corollary), vcfg, fmt("pretty"), out, err);
    } catch (const io::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const io::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NonConvergenceError& e) {
        err << "no convergence: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const Error& e) {
        err << "invalid input: " << e.what() << "\n";
        return kPrecondition;
    }
    return kInput;
}

}  // namespace kwright::cli
