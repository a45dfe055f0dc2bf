// Command-line front end: expansions, order tables, reductions, matrices and
// the verification targets. Exit codes: 0 ok, 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cubicpart/valuation.hpp>

#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cp = cubicpart;
using json = nlohmann::json;

namespace {

enum class OutputMode { text, json };

struct RunConfig {
    std::optional<long> prec;
    OutputMode output = OutputMode::text;
    std::string fixtures = cp::default_fixture_dir();
    std::optional<long> n_count;
    std::optional<long> alpha;
    long alpha_max_matrix = 1;
    long alpha_max_series = 2;
    long lemma_i_max = 30;
    long verify_rows = 10;
};

/// Usage errors caught after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json field_object(const std::string& tag, const std::vector<std::pair<std::string, std::string>>& fields) {
    json j;
    j["tag"] = tag;
    for (const auto& [k, v] : fields)
        j[k.empty() ? "id" : k] = v;
    return j;
}

const char* outcome_name(cp::Outcome o) {
    switch (o) {
    case cp::Outcome::pass: return "pass";
    case cp::Outcome::warn: return "warn";
    case cp::Outcome::fail: return "fail";
    }
    return "fail";
}

/// Single writer for all records.
class Emitter {
public:
    explicit Emitter(OutputMode mode) : mode_(mode) {}

    void record(const std::string& tag, const std::vector<std::pair<std::string, std::string>>& fields) {
        if (mode_ == OutputMode::json) {
            std::cout << field_object(tag, fields).dump() << '\n';
            return;
        }
        std::cout << tag;
        for (const auto& [k, v] : fields) {
            std::cout << ' ';
            if (!k.empty())
                std::cout << k << '=';
            std::cout << v;
        }
        std::cout << '\n';
    }

    void check(const cp::Check& c) {
        if (mode_ == OutputMode::json) {
            json j = field_object(c.tag, c.fields);
            j["status"] = c.status;
            j["outcome"] = outcome_name(c.outcome);
            std::cout << j.dump() << '\n';
        } else {
            std::cout << c.text() << '\n';
        }
    }

    void report(const cp::Report& r) {
        for (const auto& c : r.checks())
            check(c);
    }

    void raw_json(const json& j) { std::cout << j.dump() << '\n'; }

    OutputMode mode() const { return mode_; }

private:
    OutputMode mode_;
};

cp::BasisKind parse_kind(const std::string& s) {
    if (s == "A" || s == "a")
        return cp::BasisKind::a;
    if (s == "FA" || s == "fa")
        return cp::BasisKind::fa;
    throw UsageError("kind must be A or FA, got '" + s + "'");
}

cp::Check error_check(const std::string& target, const std::exception& e) {
    return cp::Check{"ERROR", {{"target", target}, {"message", "\"" + std::string(e.what()) + "\""}}, "FAIL", cp::Outcome::fail};
}

// ---- verification targets -------------------------------------------

long default_thm11_count(long alpha) {
    switch (alpha) {
    case 1: return 10000;
    case 2: return 300;
    case 3: return 100;
    default: return 30;
    }
}

cp::Report run_thm11(const RunConfig& cfg) {
    cp::Report rep;
    std::vector<long> alphas;
    if (cfg.alpha)
        alphas.push_back(*cfg.alpha);
    else
        alphas = {1, 2, 3, 4};
    for (long a : alphas)
        rep.append(cp::verify_theorem(cp::Theorem::thm11, a, cfg.n_count.value_or(default_thm11_count(a))));
    rep.append(cp::verify_3n2_identity(50));
    return rep;
}

cp::Report run_thm12(const RunConfig& cfg) { return cp::verify_theorem(cp::Theorem::thm12, 0, cfg.n_count.value_or(2000)); }

cp::Report run_thm14(const RunConfig& cfg) {
    cp::Report rep;
    std::vector<long> alphas;
    if (cfg.alpha) {
        alphas.push_back(*cfg.alpha);
    } else {
        for (long a = 1; a <= cfg.alpha_max_series; ++a)
            alphas.push_back(a);
    }
    for (long a : alphas) {
        const long fallback = a <= 1 ? 200 : (a == 2 ? 8 : 2);
        rep.append(cp::verify_theorem(cp::Theorem::thm14, a, cfg.n_count.value_or(fallback)));
    }
    return rep;
}

struct Matrices {
    cp::Basis basis;
    cp::UMatrix a;
    cp::UMatrix b;
};

Matrices build_matrices(const cp::PublishedTables* published, long a_rows, long b_rows, long verify_rows) {
    Matrices m{cp::compute_basis(published), {}, {}};
    auto fa = std::async(std::launch::async, [&] {
        return cp::build_matrix(cp::BasisKind::fa, b_rows, verify_rows, m.basis.sigma, m.basis.fa_seeds);
    });
    m.a = cp::build_matrix(cp::BasisKind::a, a_rows, verify_rows, m.basis.sigma, m.basis.a_seeds);
    m.b = fa.get();
    return m;
}

cp::Report run_lemmas(const RunConfig& cfg) {
    const cp::PublishedTables published = cp::load_published_tables(cfg.fixtures);
    const long k_max = 2 * cfg.alpha_max_matrix + 2;
    const auto [need_a, need_b] = cp::w_row_demand(k_max);
    const Matrices m = build_matrices(&published, std::max(cfg.lemma_i_max, need_a), std::max(cfg.lemma_i_max, need_b),
                                      std::min(cfg.verify_rows, 10L));
    cp::Report rep = cp::check_lemma_4_1(m.a, cfg.lemma_i_max, &published);
    rep.append(cp::check_lemma_4_2(m.b, cfg.lemma_i_max));
    const auto ws = cp::w_iterate(m.a, m.b, k_max);
    rep.append(cp::check_lemma_4_3(ws, cfg.alpha_max_matrix));
    for (long alpha = 0; alpha <= cfg.alpha_max_matrix; ++alpha)
        rep.add(cp::cross_representation(ws[static_cast<std::size_t>(2 * alpha + 1)], alpha));
    return rep;
}

cp::Report run_appendix(const RunConfig& cfg) {
    const cp::PublishedTables published = cp::load_published_tables(cfg.fixtures);
    const long rows = std::max(5L, cfg.verify_rows);
    const Matrices m = build_matrices(&published, rows, rows, cfg.verify_rows);
    cp::Report rep;
    for (auto kind : {cp::BasisKind::a, cp::BasisKind::fa})
        rep.add(cp::Check{"ORACLE", {{"kind", cp::to_string(kind)}, {"rows", std::to_string(std::min(rows, cfg.verify_rows))}}, "OK",
                          cp::Outcome::pass});
    for (const auto& t : cp::star_terms(m.basis.sigma))
        rep.add(cp::Check{"STAR",
                          {{"k", std::to_string(t.k)}, {"l", std::to_string(t.l)}, {"coefficient", t.coefficient.get_str()},
                           {"pi", t.order.to_string()}},
                          "OK", cp::Outcome::pass});
    rep.append(cp::appendix_report(m.basis, m.a, m.b, published));
    return rep;
}

cp::Report run_pipeline(const RunConfig& cfg) { return cp::verify_u_pipeline(cfg.prec.value_or(1500)); }

const std::vector<std::pair<std::string, std::function<cp::Report(const RunConfig&)>>>& targets() {
    static const std::vector<std::pair<std::string, std::function<cp::Report(const RunConfig&)>>> t{
        {"thm11", run_thm11}, {"thm12", run_thm12},   {"thm14", run_thm14},
        {"lemmas", run_lemmas}, {"appendix", run_appendix}, {"pipeline", run_pipeline},
    };
    return t;
}

void validate(const RunConfig& cfg) {
    if (cfg.prec && *cfg.prec < 1)
        throw UsageError("--prec must be positive");
    if (cfg.n_count && *cfg.n_count < 1)
        throw UsageError("--n-count must be positive");
    if (cfg.alpha_max_matrix < 0 || cfg.alpha_max_series < 1 || cfg.lemma_i_max < 1 || cfg.verify_rows < 1)
        throw UsageError("bounds must be positive");
    if (cfg.alpha_max_matrix > cfg.alpha_max_series)
        throw UsageError("--alpha-max-matrix must not exceed --alpha-max-series");
}

int cmd_verify(const std::string& target, const RunConfig& cfg, Emitter& out) {
    validate(cfg);
    std::vector<std::pair<std::string, std::function<cp::Report(const RunConfig&)>>> chosen;
    for (const auto& t : targets())
        if (target == "all" || target == t.first)
            chosen.push_back(t);
    if (chosen.empty())
        throw UsageError("unknown verify target '" + target + "'");

    // Targets are independent; run them together and print in a fixed order.
    std::vector<std::future<cp::Report>> jobs;
    for (const auto& [name, fn] : chosen)
        jobs.push_back(std::async(std::launch::async, [&cfg, name = name, fn = fn] {
            try {
                return fn(cfg);
            } catch (const cp::Error& e) {
                if (e.kind() == cp::ErrorKind::invalid_argument || e.kind() == cp::ErrorKind::parse_error)
                    throw;
                cp::Report r;
                r.add(error_check(name, e));
                return r;
            }
        }));
    cp::Report all;
    for (auto& j : jobs)
        all.append(j.get());
    out.report(all);
    out.record("SUMMARY", {{"target", target},
                           {"checks", std::to_string(all.size())},
                           {"pass", std::to_string(all.count(cp::Outcome::pass))},
                           {"warn", std::to_string(all.count(cp::Outcome::warn))},
                           {"fail", std::to_string(all.count(cp::Outcome::fail))}});
    return all.ok() ? 0 : 1;
}

// ---- other subcommands ----------------------------------------------

int cmd_expand(const std::string& text, const std::string& ring_text, const RunConfig& cfg, Emitter& out) {
    const cp::EtaQuotient eq = cp::parse_eta_quotient(text);
    const cp::CoefficientRing ring = cp::CoefficientRing::parse(ring_text);
    const cp::QSeries f = cp::expand(eq, cfg.prec.value_or(20), ring);
    if (out.mode() == OutputMode::text) {
        cp::write_series(std::cout, f);
        return 0;
    }
    json terms = json::array();
    const auto c = f.stored();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0)
            terms.push_back({f.vmin() + static_cast<cp::Exponent>(k), c[k].get_str()});
    out.raw_json({{"vmin", f.vmin()}, {"prec", cp::prec_to_string(f.prec())}, {"ring", ring.to_string()}, {"terms", terms}});
    return 0;
}

int cmd_orders(const std::string& text, Emitter& out) {
    const cp::EtaQuotient eq = cp::parse_eta_quotient(text);
    const cp::NewmanCheck n = cp::check_newman(eq);
    out.record("QUOTIENT", {{"", "\"" + cp::format_eta_quotient(eq) + "\""}});
    out.record("NEWMAN", {{"weight", cp::to_string(n.weight)},
                          {"upper", n.cond_upper ? "yes" : "no"},
                          {"lower", n.cond_lower ? "yes" : "no"},
                          {"s", cp::to_string(n.s)},
                          {"modular_function", n.is_modular_function ? "yes" : "no"}});
    const auto cusps = cp::cusp_representatives(eq.level());
    out.record("CUSPS", {{"level", std::to_string(eq.level())}, {"count", std::to_string(cusps.size())}});
    for (const auto& [d, order] : cp::ligozat_table(eq)) {
        std::string reps;
        for (const auto& c : cusps)
            if (c.d == d)
                reps += (reps.empty() ? "" : ",") + cp::to_string(c);
        out.record("ORDER", {{"d", std::to_string(d)}, {"cusps", reps}, {"order", cp::to_string(order)}});
    }
    return 0;
}

int cmd_reduce(const std::string& text, const std::string& kind, std::optional<long> index, const RunConfig& cfg, Emitter& out) {
    cp::EtaQuotient eq;
    if (!text.empty()) {
        eq = cp::parse_eta_quotient(text);
        if (eq.level() != 50)
            eq = eq.at_level(50);
    } else if (index) {
        eq = cp::basis_quotient(parse_kind(kind), *index);
    } else {
        throw UsageError("reduce needs a quotient or --i");
    }
    std::optional<cp::Exponent> prec;
    if (cfg.prec)
        prec = *cfg.prec;
    const cp::APoly p = cp::u_image_direct(eq, cp::kGuardWindow, prec);
    if (out.mode() == OutputMode::json) {
        json coeffs = json::array();
        for (const auto& c : p.coeffs())
            coeffs.push_back(c.get_str());
        out.raw_json({{"quotient", cp::format_eta_quotient(eq)}, {"apoly", cp::to_string(p)}, {"coefficients", coeffs}});
    } else {
        std::cout << "U5(" << cp::format_eta_quotient(eq) << ") = " << cp::to_string(p) << '\n';
    }
    return 0;
}

int cmd_matrix(const std::string& kind_text, long rows, const RunConfig& cfg, Emitter& out) {
    if (rows < 1)
        throw UsageError("--rows must be positive");
    const cp::BasisKind kind = parse_kind(kind_text);
    const cp::Basis basis = cp::compute_basis();
    const cp::UMatrix m = cp::build_matrix(kind, rows, std::min(rows, cfg.verify_rows), basis.sigma,
                                           kind == cp::BasisKind::a ? basis.a_seeds : basis.fa_seeds);
    for (long i = 1; i <= m.rows(); ++i) {
        if (out.mode() == OutputMode::json) {
            json entries = json::object();
            const auto c = m.row(i).coeffs();
            for (std::size_t j = 0; j < c.size(); ++j)
                if (c[j] != 0)
                    entries[std::to_string(j)] = c[j].get_str();
            out.raw_json({{"kind", cp::to_string(kind)}, {"i", i}, {"entries", entries}});
        } else {
            std::cout << cp::format_fixture_row(cp::to_string(kind), i, m.row(i)) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-series engine for cubic partition congruences"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string output = "text";
    app.add_option("--prec", cfg.prec, "Expansion precision (per-command default when omitted)");
    app.add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--fixtures", cfg.fixtures, "Directory with published_tables.txt")->envname(cp::kFixtureEnvVar);

    std::string quotient;
    std::string ring_text = "Z";
    auto* expand = app.add_subcommand("expand", "q-expansion of an eta-quotient, e.g. \"10; 5^2*10^2*1^-2*2^-2\"");
    expand->add_option("quotient", quotient)->required();
    expand->add_option("--ring", ring_text, "Z or Zmod:m");

    auto* orders = app.add_subcommand("orders", "Ligozat orders at the cusps and Newman conditions");
    orders->add_option("quotient", quotient)->required();

    std::string kind = "A";
    std::optional<long> index;
    auto* reduce = app.add_subcommand("reduce", "U_5 image as a polynomial in A");
    reduce->add_option("quotient", quotient, "Weight-0 quotient on Gamma_0(50)");
    reduce->add_option("--kind", kind, "A or FA (with --i)");
    reduce->add_option("--i", index, "Power of A");

    long rows = 5;
    auto* matrix = app.add_subcommand("matrix", "Rows of the a (A) or b (FA) matrix in fixture format");
    matrix->add_option("--kind", kind, "A or FA");
    matrix->add_option("--rows", rows, "Number of rows");
    matrix->add_option("--verify-rows", cfg.verify_rows, "Rows re-derived by direct reduction");

    std::string target;
    auto* verify = app.add_subcommand("verify", "Run verification targets");
    verify->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"thm11", "thm12", "thm14", "lemmas", "appendix", "pipeline", "all"}));
    verify->add_option("--n-count", cfg.n_count, "Number of progression terms to check");
    verify->add_option("--alpha", cfg.alpha, "Single alpha for thm11/thm14");
    verify->add_option("--alpha-max-matrix", cfg.alpha_max_matrix, "Largest alpha for the W-iteration");
    verify->add_option("--alpha-max-series", cfg.alpha_max_series, "Largest alpha for thm14");
    verify->add_option("--lemma-i-max", cfg.lemma_i_max, "Rows checked against the lemma bounds");
    verify->add_option("--verify-rows", cfg.verify_rows, "Rows re-derived by direct reduction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.output = output == "json" ? OutputMode::json : OutputMode::text;
    Emitter out(cfg.output);

    try {
        if (*expand)
            return cmd_expand(quotient, ring_text, cfg, out);
        if (*orders)
            return cmd_orders(quotient, out);
        if (*reduce)
            return cmd_reduce(quotient, kind, index, cfg, out);
        if (*matrix)
            return cmd_matrix(kind, rows, cfg, out);
        if (*verify)
            return cmd_verify(target, cfg, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const cp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.kind() == cp::ErrorKind::parse_error || e.kind() == cp::ErrorKind::invalid_argument ||
                           e.kind() == cp::ErrorKind::non_integral_exponent;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
