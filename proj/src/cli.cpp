#include "selberg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "selberg/assembly.hpp"
#include "selberg/errors.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/monodromy.hpp"
#include "selberg/oracle.hpp"
#include "selberg/parallel.hpp"
#include "selberg/precise.hpp"
#include "selberg/selberg_forms.hpp"
#include "selberg/verify.hpp"

namespace selberg::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long, std::string, bool>;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --help / --version: carries the text to print.
struct EarlyExit {
    std::string text;
};

struct Payload {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json diagnostics = json::object();
};

std::string shortest(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json cell_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        return std::isfinite(*d) ? json(*d) : json(nullptr);
    }
    if (const long* l = std::get_if<long>(&c)) return *l;
    if (const bool* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

std::string cell_csv(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return shortest(*d);
    if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

json params_json(const JobSpec& s) {
    const Params& p = s.params;
    json j;
    j["N"] = p.N;
    j["lambda1"] = p.lambda1;
    j["lambda2"] = p.lambda2;
    j["lambda"] = p.lambda;
    j["lambda_exact"] = p.lambda_rational ? json(p.lambda_rational->str()) : json(nullptr);
    j["alpha"] = p.alpha;
    return j;
}

json job_json(const JobSpec& s) {
    json j;
    j["command"] = s.command;
    if (s.grid) {
        j["grid"] = {{"x_min", s.grid->x_min}, {"x_max", s.grid->x_max}, {"points", s.grid->points}};
    }
    if (s.x) j["x"] = *s.x;
    if (s.q) j["q"] = *s.q;
    if (s.k) j["k"] = *s.k;
    if (s.nu) j["nu"] = *s.nu;
    if (s.mu) j["mu"] = *s.mu;
    if (s.command == "series") j["L"] = s.L;
    j["tol"] = s.tol;
    if (s.seed) j["seed"] = *s.seed;
    if (s.samples) j["samples"] = *s.samples;
    if (s.command == "verify") j["level"] = s.level;
    return j;
}

void emit(const JobSpec& s, const Payload& pl, std::ostream& out) {
    std::ostringstream os;
    if (s.format == "json") {
        json j;
        j["program"] = "selberg_fuchs";
        j["version"] = SELBERG_VERSION;
        j["params"] = params_json(s);
        j["job"] = job_json(s);
        json rows = json::array();
        for (const auto& r : pl.rows) {
            json o;
            for (std::size_t c = 0; c < pl.columns.size(); ++c) o[pl.columns[c]] = cell_json(r[c]);
            rows.push_back(std::move(o));
        }
        j["results"] = std::move(rows);
        j["diagnostics"] = pl.diagnostics;
        os << j.dump(2) << "\n";
    } else {
        os << "# program: selberg_fuchs " << SELBERG_VERSION << "\n";
        os << "# params: " << params_json(s).dump() << "\n";
        os << "# job: " << job_json(s).dump() << "\n";
        os << "# diagnostics: " << pl.diagnostics.dump() << "\n";
        for (std::size_t c = 0; c < pl.columns.size(); ++c) {
            os << (c ? "," : "") << pl.columns[c];
        }
        os << "\n";
        for (const auto& r : pl.rows) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << cell_csv(r[c]);
            os << "\n";
        }
    }
    if (s.output.empty()) {
        out << os.str();
        return;
    }
    std::ofstream f(s.output, std::ios::binary);
    if (!f) throw IoError("cannot open '" + s.output + "' for writing");
    f << os.str();
    if (!f.flush()) throw IoError("write to '" + s.output + "' failed");
}

std::vector<double> xs(const JobSpec& s) {
    if (s.grid) return s.grid->values();
    if (s.x) return {*s.x};
    throw PreconditionError("command '" + s.command + "' needs --x or --grid");
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& cmd) {
    if (!v) throw PreconditionError("command '" + cmd + "' needs " + flag);
    return *v;
}

EvaluatorOptions evaluator(const JobSpec& s) {
    EvaluatorOptions o;
    o.tol = s.tol;
    return o;
}

// Rows computed per grid point on the worker pool, kept in index order.
template <class F>
void grid_rows(Payload& pl, const std::vector<double>& x, F&& row) {
    pl.rows.resize(x.size());
    for_each_index(static_cast<int>(x.size()), [&](int i) { pl.rows[i] = row(x[i]); });
}

Payload cmd_selberg(const JobSpec& s) {
    const Params& p = s.params;
    const LogValue v = selberg({p.N, p.lambda1, p.lambda2, p.lambda});
    Payload pl;
    pl.columns = {"N", "value", "log_abs", "sign"};
    pl.rows.push_back({long(p.N), v.to_double(), v.logmag, long(v.sign)});
    return pl;
}

Payload cmd_series(const JobSpec& s) {
    const Params& p = s.params;
    const int k = s.k.value_or(p.N);
    const FrobeniusSolution f = frobenius(k, p, s.L);
    Payload pl;
    pl.columns.push_back("l");
    for (int c = 0; c <= p.N; ++c) pl.columns.push_back("c" + std::to_string(c));
    for (int l = 0; l <= s.L; ++l) {
        std::vector<Cell> r{long(l)};
        for (int c = 0; c <= p.N; ++c) r.push_back(f.coeffs(c, l));
        pl.rows.push_back(std::move(r));
    }
    pl.diagnostics["k"] = k;
    pl.diagnostics["sigma_k"] = f.sigma_k;
    pl.diagnostics["resonant"] = f.resonant;
    if (f.resonant) pl.diagnostics["eps_spread"] = f.eps_spread;
    return pl;
}

Payload cmd_eval(const JobSpec& s) {
    const Params& p = s.params;
    const SplitIntegrals si(p, evaluator(s));
    std::vector<int> qs;
    if (s.q) {
        if (*s.q < 0 || *s.q > p.N) throw PreconditionError("--q must lie in 0..N");
        qs = {*s.q};
    } else {
        for (int q = 0; q <= p.N; ++q) qs.push_back(q);
    }
    Payload pl;
    pl.columns = {"x"};
    for (int q : qs) pl.columns.push_back("I" + std::to_string(q));
    for (int q : qs) pl.columns.push_back("tail" + std::to_string(q));
    grid_rows(pl, xs(s), [&](double x) {
        const IntegralSet v = si.all(x);
        std::vector<Cell> r{x};
        for (int q : qs) r.push_back(v.value[q]);
        for (int q : qs) r.push_back(v.tail_bound[q]);
        return r;
    });
    pl.diagnostics["resonance_device"] = si.perturbed();
    return pl;
}

Payload cmd_dist(const JobSpec& s) {
    const Params p = s.params.with_alpha(1.0);
    const SplitIntegrals si(p, evaluator(s));
    Payload pl;
    pl.columns = {"x"};
    for (int n = 0; n < p.N; ++n) pl.columns.push_back("p(" + std::to_string(n) + ";x)");
    grid_rows(pl, xs(s), [&](double x) {
        std::vector<Cell> r{x};
        for (int n = 0; n < p.N; ++n) r.push_back(order_stat_density(n, x, si));
        return r;
    });
    pl.diagnostics["resonance_device"] = si.perturbed();
    pl.diagnostics["note"] = "p(n;x) is the density of the (n+1)-st smallest point";
    return pl;
}

Payload cmd_moments(const JobSpec& s) {
    const double mu = need(s.mu, "--mu", s.command);
    Payload pl;
    pl.columns = {"x", "moment", "tail"};
    grid_rows(pl, xs(s), [&](double x) {
        const SeriesEvaluation v = moment_average(x, mu, s.params);
        return std::vector<Cell>{x, v.value, v.tail_bound};
    });
    return pl;
}

Payload cmd_asymptotics(const JobSpec& s) {
    MomentAsymptotic a;
    if (s.mu) {
        a = moment_asymptotic(*s.mu, s.params);
    } else if (s.k) {
        a = moment_asymptotic_log(*s.k, s.params);
    } else {
        throw PreconditionError("asymptotics needs --mu, or --k for the logarithmic case");
    }
    Payload pl;
    pl.columns = {"l", "exponent", "log_factor", "coefficient"};
    pl.rows.push_back({long(a.l), a.exponent, a.log_factor, a.coefficient.to_double()});
    if (s.grid || s.x) {
        for (double x : xs(s)) pl.diagnostics["leading_term"].push_back({{"x", x}, {"value", a.at(x)}});
    }
    return pl;
}

Payload cmd_poly(const JobSpec& s) {
    const CharPolynomial cp = char_polynomial(need(s.nu, "--nu", s.command), s.params);
    Payload pl;
    if (s.grid || s.x) {
        pl.columns = {"x", "value"};
        grid_rows(pl, xs(s), [&](double x) { return std::vector<Cell>{x, cp(x)}; });
    } else {
        pl.columns = {"power", "coefficient"};
        for (int i = 0; i <= cp.degree(); ++i) pl.rows.push_back({long(cp.degree() - i), cp.coeffs[i]});
    }
    pl.diagnostics["degree"] = cp.degree();
    pl.diagnostics["truncation_residual"] = cp.truncation_residual;
    return pl;
}

Payload cmd_zeros(const JobSpec& s) {
    const PreciseZeros z = char_poly_zeros_precise(need(s.nu, "--nu", s.command), s.params);
    if (!(z.max_residual <= 1e-8)) {
        throw ConvergenceFailure("largest root residual " + shortest(z.max_residual) + " exceeds 1e-8");
    }
    Payload pl;
    pl.columns = {"re", "im"};
    for (auto r : z.roots) pl.rows.push_back({r.real(), r.imag()});
    pl.diagnostics["degree"] = z.roots.size();
    pl.diagnostics["digits"] = z.digits;
    pl.diagnostics["max_residual"] = z.max_residual;
    pl.diagnostics["max_backward_error"] = z.max_backward_error;
    pl.diagnostics["max_polish_shift"] = z.max_polish_shift;
    return pl;
}

Payload cmd_monodromy(const JobSpec& s) {
    const MonodromyTriple m = monodromy_triple(s.params);
    Payload pl;
    pl.columns = {"matrix", "row", "col", "re", "im"};
    auto add = [&](const char* name, const Eigen::MatrixXcd& M) {
        for (int i = 0; i < M.rows(); ++i) {
            for (int j = 0; j < M.cols(); ++j) {
                pl.rows.push_back({std::string(name), long(i), long(j), M(i, j).real(), M(i, j).imag()});
            }
        }
    };
    add("M0", m.M0);
    add("M1", m.M1);
    add("Minf", m.Minf);
    pl.diagnostics["product_defect"] = product_defect(m);
    pl.diagnostics["condition"] = m.condition;
    return pl;
}

Payload cmd_oracle(const JobSpec& s) {
    const Params& p = s.params;
    const int q = need(s.q, "--q", s.command);
    const bool mc = s.samples.has_value() || p.N > kMaxQuadratureN;
    const long samples = s.samples.value_or(1'000'000);
    const std::uint64_t seed = s.seed.value_or(1);
    QuadOptions qo;
    qo.tol = std::max(s.tol, 1e-14);
    const SplitIntegrals si(p, evaluator(s));
    Payload pl;
    pl.columns = {"x", "oracle", "error_estimate", "series", "method"};
    // Monte Carlo already spreads over the worker pool.
    for (double x : xs(s)) {
        const OracleResult r = mc ? mc_Iq(q, x, p, samples, seed) : quad_Iq(q, x, p, qo);
        pl.rows.push_back({x, r.value, r.error_estimate, si.all(x).value.at(q),
                           std::string(method_name(r.method))});
    }
    if (mc) {
        pl.diagnostics["samples"] = samples;
        pl.diagnostics["seed"] = seed;
    }
    return pl;
}

int cmd_verify(const JobSpec& s, std::ostream& out, std::ostream& err) {
    VerifyOptions vo;
    vo.level = s.level == "full" ? VerifyLevel::full : VerifyLevel::quick;
    if (s.seed) vo.seed = *s.seed;
    Payload pl;
    pl.columns = {"id", "passed", "worst", "tolerance", "title", "detail"};
    bool all = true;
    std::ostream& table = s.output.empty() ? err : out;
    for (int i = 1; i <= kCheckCount; ++i) {
        const CheckResult r = run_check(i, vo);
        table << format_check(r) << std::endl;
        all = all && r.passed;
        pl.rows.push_back({r.id, r.passed, r.worst, r.tolerance, r.title, r.detail});
    }
    pl.diagnostics["all_passed"] = all;
    emit(s, pl, out);
    return all ? kOk : kChecksFailed;
}

}  // namespace

std::vector<double> Grid::values() const {
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
        // exact endpoints; interior by index to avoid drift
        v[i] = i == points - 1 ? x_max : x_min + (x_max - x_min) * i / (points - 1);
    }
    return v;
}

Grid parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) {
        throw PreconditionError("grid must be x_min:x_max:points, got '" + text + "'");
    }
    Grid g;
    g.x_min = parse_number(text.substr(0, a)).value;
    g.x_max = parse_number(text.substr(a + 1, b - a - 1)).value;
    const ParsedNumber n = parse_number(text.substr(b + 1));
    if (!n.rational || n.rational->den != 1) throw PreconditionError("grid points must be an integer");
    if (n.rational->num < 2) throw PreconditionError("grid needs at least 2 points");
    if (!(g.x_max > g.x_min)) throw PreconditionError("grid needs x_min < x_max");
    g.points = static_cast<int>(n.rational->num);
    return g;
}

JobSpec parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Selberg-type integrals through their Fuchsian matrix ODE", "selberg_fuchs"};
    app.set_config("--config", "", "key = value file with any of the flags below");
    app.set_version_flag("--version", std::string(SELBERG_VERSION));
    std::string command, lambda = "1", l1 = "0", l2 = "0", alpha = "1", grid;
    int N = 1;
    JobSpec s;
    std::optional<double> x, mu;
    std::optional<int> q, k, nu;
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    app.add_option("command", command, "one of: selberg series eval dist moments asymptotics "
                                       "poly zeros monodromy oracle verify")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--N", N, "number of integration variables");
    app.add_option("--lambda", lambda, "pair exponent; 'p/q' selects the exact branches");
    app.add_option("--l1", l1, "exponent of t");
    app.add_option("--l2", l2, "exponent of 1 - t");
    app.add_option("--alpha", alpha, "exponent of |t - x|, plus 1");
    app.add_option("--x", x, "evaluation point");
    app.add_option("--grid", grid, "x_min:x_max:points");
    app.add_option("--q", q, "number of points below x");
    app.add_option("--k", k, "Frobenius solution index (series); window l (asymptotics)");
    app.add_option("--L", s.L, "series truncation order");
    app.add_option("--nu", nu, "power in <prod (x - t)^nu>");
    app.add_option("--mu", mu, "moment exponent in <prod |t - x|^(2 mu)>");
    app.add_option("--tol", s.tol, "relative tolerance, in (0, 1e-2]");
    app.add_option("--seed", seed, "Monte Carlo / draw seed");
    app.add_option("--samples", samples, "Monte Carlo samples (oracle)");
    app.add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", s.output, "output file (default stdout)");
    app.add_option("--level", s.level, "verify level")->check(CLI::IsMember({"quick", "full"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw EarlyExit{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw EarlyExit{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::CallForVersion&) {
        throw EarlyExit{std::string(SELBERG_VERSION) + "\n"};
    }

    s.command = command;
    s.x = x;
    s.mu = mu;
    s.q = q;
    s.k = k;
    s.nu = nu;
    s.seed = seed;
    s.samples = samples;
    s.lambda_text = lambda;
    if (!grid.empty()) s.grid = parse_grid(grid);
    if (!(s.tol > 0.0 && s.tol <= 1e-2)) throw PreconditionError("--tol must lie in (0, 1e-2]");
    if (s.L < 0) throw PreconditionError("--L must be >= 0");
    if (s.samples && *s.samples < 2) throw PreconditionError("--samples must be >= 2");
    if (s.nu && *s.nu < 1) throw PreconditionError("--nu must be >= 1");
    const ParsedNumber lam = parse_number(lambda);
    const double a = parse_number(alpha).value, v1 = parse_number(l1).value,
                 v2 = parse_number(l2).value;
    s.params = lam.rational ? Params::make(N, v1, v2, *lam.rational, a) : Params::make(N, v1, v2, lam.value, a);
    return s;
}

int run(const JobSpec& s, std::ostream& out, std::ostream& err) {
    if (s.command == "verify") return cmd_verify(s, out, err);
    Payload pl;
    if (s.command == "selberg") pl = cmd_selberg(s);
    else if (s.command == "series") pl = cmd_series(s);
    else if (s.command == "eval") pl = cmd_eval(s);
    else if (s.command == "dist") pl = cmd_dist(s);
    else if (s.command == "moments") pl = cmd_moments(s);
    else if (s.command == "asymptotics") pl = cmd_asymptotics(s);
    else if (s.command == "poly") pl = cmd_poly(s);
    else if (s.command == "zeros") pl = cmd_zeros(s);
    else if (s.command == "monodromy") pl = cmd_monodromy(s);
    else if (s.command == "oracle") pl = cmd_oracle(s);
    else throw PreconditionError("unknown command '" + s.command + "'");
    emit(s, pl, out);
    return kOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobSpec spec;
    try {
        spec = parse_args(args);
    } catch (const EarlyExit& e) {
        out << e.text;
        return kOk;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    try {
        return run(spec, out, err);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace selberg::cli
