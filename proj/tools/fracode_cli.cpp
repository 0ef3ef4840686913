// Batch front end: deterministic experiment runs over the fracode library,
// CSV/JSON tables with a '#' metadata preamble.
//
// Exit status: 0 success, 1 bad configuration/preconditions,
// 2 non-convergence or blow-up before t_end (partial output still written).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracode/analysis.hpp"
#include "fracode/fraccalc.hpp"
#include "fracode/solver.hpp"
#include "fracode/special.hpp"
#include "fracode/suite.hpp"

namespace {

using json = nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& k, double v) { meta.emplace_back(k, fmt17(v)); }
    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }

    void write_csv(std::ostream& os) const {
        for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << fmt17(row[i]) << (i + 1 < row.size() ? "," : "");
            os << "\n";
        }
    }

    void write_json(std::ostream& os) const {
        json j;
        j["meta"] = json::object();
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        j["columns"] = columns;
        j["rows"] = rows;
        os << j.dump(2) << "\n";
    }
};

struct CatalogEntry {
    std::string name;
    int dim;
    std::string description;
    fracode::RhsFn rhs;
    // Lipschitz data on [v0-A, v0+A]^dim x [0,T] for the existence horizon.
    std::function<fracode::BoxData(const std::vector<double>&, double, double)> box;
};

double sup_radius(const std::vector<double>& v0, double A) {
    double m = 0.0;
    for (double v : v0) m = std::max(m, std::abs(v));
    return m + A;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"zero", 1, "f = 0",
         [](double, const std::vector<double>&, std::vector<double>& o) { o[0] = 0.0; },
         [](const std::vector<double>&, double A, double T) {
             return fracode::BoxData{A, 0.0, 0.0, T};
         }},
        {"identity", 1, "f = v (L = 1, M = |v0|+A)",
         [](double, const std::vector<double>& v, std::vector<double>& o) { o[0] = v[0]; },
         [](const std::vector<double>& v0, double A, double T) {
             return fracode::BoxData{A, 1.0, sup_radius(v0, A), T};
         }},
        {"neg_identity", 1, "f = -v (L = 1, M = |v0|+A)",
         [](double, const std::vector<double>& v, std::vector<double>& o) { o[0] = -v[0]; },
         [](const std::vector<double>& v0, double A, double T) {
             return fracode::BoxData{A, 1.0, sup_radius(v0, A), T};
         }},
        {"affine_relax", 1, "f = 1 - v (L = 1, M = 1+|v0|+A)",
         [](double, const std::vector<double>& v, std::vector<double>& o) { o[0] = 1.0 - v[0]; },
         [](const std::vector<double>& v0, double A, double T) {
             return fracode::BoxData{A, 1.0, 1.0 + sup_radius(v0, A), T};
         }},
        {"quadratic", 1, "f = v^2 (L = 2(|v0|+A), M = (|v0|+A)^2)",
         [](double, const std::vector<double>& v, std::vector<double>& o) { o[0] = v[0] * v[0]; },
         [](const std::vector<double>& v0, double A, double T) {
             const double R = sup_radius(v0, A);
             return fracode::BoxData{A, 2.0 * R, R * R, T};
         }},
        {"one_plus_square", 1, "f = 1 + v^2 (L = 2(|v0|+A), M = 1+(|v0|+A)^2)",
         [](double, const std::vector<double>& v, std::vector<double>& o) {
             o[0] = 1.0 + v[0] * v[0];
         },
         [](const std::vector<double>& v0, double A, double T) {
             const double R = sup_radius(v0, A);
             return fracode::BoxData{A, 2.0 * R, 1.0 + R * R, T};
         }},
        {"oscillator", 2, "state (q,p), f = (p, -q) (L = 1, M = ||(q0,p0)||+A)",
         [](double, const std::vector<double>& v, std::vector<double>& o) {
             o[0] = v[1];
             o[1] = -v[0];
         },
         [](const std::vector<double>& v0, double A, double T) {
             return fracode::BoxData{A, 1.0, sup_radius(v0, A), T};
         }},
    };
    return entries;
}

const CatalogEntry& find_rhs(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw std::domain_error("rhs: unknown catalog entry '" + name + "'");
}

struct Options {
    std::string command;
    double gamma = 0.5;
    double h = 1.0 / 1024;
    double t_end = 1.0;
    double lambda = -1.0;
    double v0 = 1.0;
    double p0 = 0.0;
    double q0 = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double z = 0.0;
    double s = 25.0;
    double tol = 1e-10;
    int max_iter = 200;
    double b_const = 0.0;
    double growth_cap = 1e8;
    std::string rhs = "neg_identity";
    std::string phi = "e_gl";
    std::string method = "step";
    std::string out_path;
    std::string format = "csv";
    bool reproducible = false;
};

void apply_config_file(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::domain_error(std::string("config: invalid JSON: ") + e.what());
    }
    auto num = [&](const char* k, double& dst) { if (j.contains(k)) dst = j.at(k).get<double>(); };
    auto str = [&](const char* k, std::string& dst) { if (j.contains(k)) dst = j.at(k).get<std::string>(); };
    num("gamma", o.gamma); num("h", o.h); num("t_end", o.t_end); num("lambda", o.lambda);
    num("v0", o.v0); num("p0", o.p0); num("q0", o.q0); num("alpha", o.alpha);
    num("beta", o.beta); num("z", o.z); num("s", o.s); num("tol", o.tol);
    num("b_const", o.b_const); num("growth_cap", o.growth_cap);
    if (j.contains("max_iter")) o.max_iter = j.at("max_iter").get<int>();
    str("rhs", o.rhs); str("phi", o.phi); str("method", o.method);
    str("out", o.out_path); str("format", o.format);
    if (j.contains("reproducible")) o.reproducible = j.at("reproducible").get<bool>();
    if (j.contains("command")) o.command = j.at("command").get<std::string>();
}

void common_meta(Table& t, const Options& o) {
    t.add_meta("command", o.command);
    t.add_meta("version", FRACODE_VERSION);
    if (!o.reproducible) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
        t.add_meta("generated", buf);
    }
}

void validate_common(const Options& o) {
    if (o.command != "ml" && !(o.gamma > 0.0 && o.gamma < 1.0))
        throw std::domain_error("gamma: must lie in (0, 1)");
    if (!(o.h > 0.0)) throw std::domain_error("h: must be positive");
    if (!(o.t_end > 0.0)) throw std::domain_error("t_end: must be positive");
    if (o.format != "csv" && o.format != "json")
        throw std::domain_error("format: must be 'csv' or 'json'");
}

int emit(const Table& t, const Options& o) {
    if (o.out_path.empty()) {
        if (o.format == "csv") t.write_csv(std::cout);
        else t.write_json(std::cout);
        return 0;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::domain_error("out: cannot open '" + o.out_path + "' for writing");
    if (o.format == "csv") t.write_csv(f);
    else t.write_json(f);
    return 0;
}

int run_ml(const Options& o) {
    const auto r = fracode::mittag_leffler({o.alpha, o.beta, o.z});
    Table t;
    common_meta(t, o);
    t.add_meta("alpha", o.alpha);
    t.add_meta("beta", o.beta);
    t.columns = {"z", "value", "regime", "terms", "est_error"};
    t.rows.push_back({o.z, r.value,
                      r.regime.kind == fracode::MLRegime::Kind::series ? 0.0 : 1.0,
                      static_cast<double>(r.regime.terms_used), r.regime.est_error});
    return emit(t, o);
}

int run_solve(const Options& o) {
    const CatalogEntry& e = find_rhs(o.rhs);
    fracode::FodeProblem p;
    p.gamma = o.gamma;
    p.rhs = e.rhs;
    p.v0 = (e.dim == 2) ? std::vector<double>{o.q0, o.p0} : std::vector<double>{o.v0};
    p.box = e.box(p.v0, 1.0, o.t_end);

    fracode::SolveReport rep;
    if (o.method == "picard")
        rep = fracode::picard_solve(p, o.h, o.t_end, o.tol, o.max_iter);
    else if (o.method == "step")
        rep = fracode::step_solve(p, o.h, o.t_end);
    else
        throw std::domain_error("method: must be 'step' or 'picard'");

    Table t;
    common_meta(t, o);
    t.add_meta("rhs", e.name);
    t.add_meta("gamma", o.gamma);
    t.add_meta("h", o.h);
    t.add_meta("max_residual", rep.max_residual);
    t.add_meta("horizon_T1", fracode::existence_horizon(p));
    if (rep.picard_iters) t.add_meta("picard_iters", static_cast<double>(*rep.picard_iters));
    t.add_meta("converged", rep.converged ? "true" : "false");
    t.columns = {"t"};
    for (int c = 0; c < e.dim; ++c) t.columns.push_back("v" + std::to_string(c));
    const auto& sol = rep.solution;
    for (std::size_t k = 0; k < sol[0].size(); ++k) {
        std::vector<double> row{sol[0].t(k)};
        for (const auto& comp : sol) row.push_back(comp.values[k]);
        t.rows.push_back(std::move(row));
    }
    const int status = emit(t, o);
    if (status != 0) return status;
    const bool partial = rep.blowup_suspected || !rep.converged ||
                         sol[0].t_end() < o.t_end - 0.5 * o.h;
    return partial ? 2 : 0;
}

int run_linear(const Options& o) {
    const std::size_t n = static_cast<std::size_t>(std::llround(o.t_end / o.h)) + 1;
    const fracode::GridFunction b = fracode::GridFunction::constant(0.0, o.h, n, o.b_const);
    const fracode::GridFunction v = fracode::solve_linear(o.gamma, o.lambda, b, o.v0);
    Table t;
    common_meta(t, o);
    t.add_meta("gamma", o.gamma);
    t.add_meta("lambda", o.lambda);
    t.add_meta("b_const", o.b_const);
    t.columns = {"t", "v"};
    for (std::size_t k = 0; k < v.size(); ++k) t.rows.push_back({v.t(k), v.values[k]});
    return emit(t, o);
}

int run_compare(const Options& o) {
    const CatalogEntry& e = find_rhs(o.rhs);
    if (e.dim != 1) throw std::domain_error("rhs: compare needs a scalar catalog entry");
    auto scalar_rhs = [&](double tt, double vv) {
        std::vector<double> vin{vv}, vout{0.0};
        e.rhs(tt, vin, vout);
        return vout[0];
    };
    fracode::ComparisonCase cc;
    cc.gamma = o.gamma;
    cc.rhs = scalar_rhs;
    auto p1 = fracode::FodeProblem::scalar(o.gamma, scalar_rhs, o.v0);
    cc.sub_solution = fracode::step_solve(p1, o.h, o.t_end).solution[0];
    cc.sup_problem = fracode::FodeProblem::scalar(o.gamma, scalar_rhs, o.v0 + 0.5);
    const auto res = fracode::check_comparison(cc, o.t_end, o.h);
    const auto v2 = fracode::step_solve(cc.sup_problem, o.h, o.t_end).solution[0];
    Table t;
    common_meta(t, o);
    t.add_meta("rhs", e.name);
    t.add_meta("gamma", o.gamma);
    t.add_meta("holds", res.holds ? "true" : "false");
    t.add_meta("max_violation", res.max_violation);
    t.add_meta("t_checked", res.t_checked);
    t.columns = {"t", "v1", "v2", "gap"};
    const std::size_t n = std::min(cc.sub_solution.size(), v2.size());
    for (std::size_t k = 0; k < n; ++k)
        t.rows.push_back({v2.t(k), cc.sub_solution.values[k], v2.values[k],
                          cc.sub_solution.values[k] - v2.values[k]});
    const int status = emit(t, o);
    if (status != 0) return status;
    return res.t_checked < o.t_end - 0.5 * o.h ? 2 : 0;
}

int run_oscillator(const Options& o) {
    if (!(o.gamma > 0.0 && o.gamma <= 0.5))
        throw std::domain_error("gamma: oscillator closed form needs gamma in (0, 1/2]");
    const auto s = fracode::oscillator_closed_form(o.gamma, o.p0, o.q0, o.h, o.t_end);
    double slope = std::numeric_limits<double>::quiet_NaN();
    if (o.t_end >= 20.0) slope = fracode::fit_decay_exponent(s.energy, 10.0, std::min(o.t_end, 200.0));
    Table t;
    common_meta(t, o);
    t.add_meta("gamma", o.gamma);
    t.add_meta("p0", o.p0);
    t.add_meta("q0", o.q0);
    t.add_meta("fit_window", "[10, min(t_end, 200)]");
    t.columns = {"t", "q", "p", "E", "fitted_slope"};
    for (std::size_t k = 0; k < s.q.size(); ++k)
        t.rows.push_back({s.q.t(k), s.q.values[k], s.p.values[k], s.energy.values[k], slope});
    return emit(t, o);
}

int run_laplace(const Options& o) {
    const std::size_t n = static_cast<std::size_t>(std::llround(o.t_end / o.h)) + 1;
    fracode::GridFunction phi(0.0, o.h, std::vector<double>(n, 1.0));
    if (o.phi == "one") {
        // already ones
    } else if (o.phi == "t") {
        for (std::size_t k = 0; k < n; ++k) phi.values[k] = phi.t(k);
    } else if (o.phi == "e_gl") {
        for (std::size_t k = 0; k < n; ++k)
            phi.values[k] = fracode::ml_e(o.gamma, o.lambda, phi.t(k));
    } else {
        throw std::domain_error("phi: must be one of {one, t, e_gl}");
    }
    const auto lp = fracode::laplace_check(o.gamma, phi, o.s);
    Table t;
    common_meta(t, o);
    t.add_meta("gamma", o.gamma);
    t.add_meta("phi", o.phi);
    t.columns = {"s", "lhs", "rhs", "rel_gap"};
    t.rows.push_back({o.s, lp.lhs, lp.rhs,
                      std::abs(lp.lhs - lp.rhs) / (std::abs(lp.rhs) + 1e-30)});
    return emit(t, o);
}

int run_suite_cmd(const Options& o) {
    std::ostringstream report;
    const auto rep = fracode::run_suite(report);
    std::cout << report.str();
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw std::domain_error("out: cannot open '" + o.out_path + "' for writing");
        if (!o.reproducible) {
            // timestamp would break byte-identity; only stamped when allowed
            const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            char buf[64];
            std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
            f << "# generated: " << buf << "\n";
        }
        f << "# version: " << FRACODE_VERSION << "\n" << report.str();
    }
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracode: fractional-calculus and fractional-ODE experiments"};
    app.set_help_flag("--help", "print usage");  // frees -h for the step option --h
    app.require_subcommand(0, 1);

    Options o;
    std::string config_path;

    // --config is applied before flag values so explicit flags win
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    try {
        if (!config_path.empty()) apply_config_file(config_path, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--gamma", o.gamma, "fractional order in (0,1)");
    app.add_option("--h", o.h, "grid step");
    app.add_option("--t-end", o.t_end, "time horizon");
    app.add_option("--lambda", o.lambda, "linear coefficient");
    app.add_option("--v0", o.v0, "initial value");
    app.add_option("--p0", o.p0, "oscillator p(0)");
    app.add_option("--q0", o.q0, "oscillator q(0)");
    app.add_option("--alpha", o.alpha, "Mittag-Leffler alpha");
    app.add_option("--beta", o.beta, "Mittag-Leffler beta");
    app.add_option("--z", o.z, "Mittag-Leffler argument");
    app.add_option("--s", o.s, "Laplace frequency");
    app.add_option("--tol", o.tol, "Picard tolerance");
    app.add_option("--max-iter", o.max_iter, "Picard iteration cap");
    app.add_option("--b-const", o.b_const, "constant forcing for 'linear'");
    app.add_option("--rhs", o.rhs, "rhs catalog entry name");
    app.add_option("--phi", o.phi, "Laplace test function {one, t, e_gl}");
    app.add_option("--method", o.method, "solve method {step, picard}");
    app.add_option("--out", o.out_path, "output file (default stdout)");
    app.add_option("--format", o.format, "csv|json");
    app.add_flag("--reproducible", o.reproducible, "suppress the timestamp line");
    app.add_flag("--list-rhs", "list the rhs catalog and exit");

    for (const char* name : {"ml", "solve", "linear", "compare", "oscillator", "laplace", "suite"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);

    if (app.count("--list-rhs") > 0) {
        for (const auto& e : catalog())
            std::cout << e.name << " (dim " << e.dim << "): " << e.description << "\n";
        return 0;
    }

    const auto subs = app.get_subcommands();
    if (!subs.empty()) o.command = subs[0]->get_name();
    if (o.command.empty()) {
        std::cerr << "error: command: one of {ml, solve, linear, compare, oscillator, laplace, suite} required\n";
        return 1;
    }

    try {
        validate_common(o);
        if (o.command == "ml") return run_ml(o);
        if (o.command == "solve") return run_solve(o);
        if (o.command == "linear") return run_linear(o);
        if (o.command == "compare") return run_compare(o);
        if (o.command == "oscillator") return run_oscillator(o);
        if (o.command == "laplace") return run_laplace(o);
        if (o.command == "suite") return run_suite_cmd(o);
        std::cerr << "error: command: unknown '" << o.command << "'\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
