#include "qrk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "qrk/config.hpp"
#include "qrk/error.hpp"
#include "qrk/rkhs.hpp"
#include "qrk/specfun.hpp"
#include "qrk/table.hpp"
#include "qrk/verify.hpp"

namespace qrk::cli {

namespace {

// Options shared by every subcommand; presence is checked through the CLI11 handles so that
// flags override the config file, which overrides the defaults.
struct Common {
    std::string config_path, system, format, output;
    double nu = 0, q = 0;
    int truncation = 0, quad_order = 0;
    CLI::Option *o_config{}, *o_system{}, *o_nu{}, *o_q{}, *o_trunc{}, *o_quad{}, *o_format{}, *o_output{};

    void attach(CLI::App* app) {
        o_config = app->add_option("--config", config_path, "key = value configuration file");
        o_system = app->add_option("--system", system, "classical | q");
        o_nu = app->add_option("--nu", nu, "order parameter");
        o_q = app->add_option("--q", q, "base of the q-system");
        o_trunc = app->add_option("--truncation", truncation, "kernel truncation K");
        o_quad = app->add_option("--quad-order", quad_order, "quadrature order");
        o_format = app->add_option("--format", format, "csv | json");
        o_output = app->add_option("-o,--output", output, "output path (default stdout)");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (o_config->count()) apply_config(cfg, read_config_file(config_path));
        if (o_system->count()) cfg.system = system;
        if (o_nu->count()) cfg.nu = nu;
        if (o_q->count()) {
            cfg.q = q;
            if (!o_system->count()) cfg.system = "q";
        }
        if (o_trunc->count()) cfg.truncation = truncation;
        if (o_quad->count()) cfg.quad_order = quad_order;
        if (o_format->count()) cfg.format = format;
        if (o_output->count()) cfg.output = output;
        cfg.validate();
        return cfg;
    }
};

// Polynomial or fixture test vector for transform / reconstruct.
struct Vector {
    std::string re, im;
    bool fixture = false;
    CLI::Option *o_re{}, *o_im{};

    void attach(CLI::App* app) {
        o_re = app->add_option("--u-re", re, "real polynomial coefficients c0,c1,... in x");
        o_im = app->add_option("--u-im", im, "imaginary polynomial coefficients");
        app->add_flag("--fixture", fixture, "use the shipped degree-6 test vector");
    }
    bool given() const { return fixture || o_re->count() || o_im->count(); }

    Function function() const {
        if (fixture) return sampling_fixture;
        auto a = re.empty() ? std::vector<double>{} : parse_grid(re);
        auto b = im.empty() ? std::vector<double>{} : parse_grid(im);
        return [a, b](double x) {
            double r = 0, i = 0;
            for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * x + *it;
            for (auto it = b.rbegin(); it != b.rend(); ++it) i = i * x + *it;
            return cplx(r, i);
        };
    }
};

SystemSpec build_system(const RunConfig& cfg, int node_count = 1) {
    if (cfg.system == "q") return make_q_system(cfg.nu, QBase(*cfg.q), cfg.truncation, node_count);
    return make_classical_system(cfg.nu, cfg.truncation, node_count);
}

void echo_meta(Table& t, const RunConfig& cfg, const std::string& command) {
    t.meta = {{"command", command},
              {"system", cfg.system},
              {"nu", cfg.nu},
              {"q", cfg.q ? Cell(*cfg.q) : Cell(std::string("none"))},
              {"truncation", static_cast<double>(cfg.truncation)},
              {"quad_order", static_cast<double>(cfg.quad_order)},
              {"format", cfg.format}};
}

void emit(const Table& t, const RunConfig& cfg, std::ostream& out) {
    const std::string text = cfg.format == "json" ? to_json(t) : to_csv(t);
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.output);
    f << text;
}

void push_complex(std::vector<Cell>& row, cplx v) {
    row.emplace_back(v.real());
    row.emplace_back(v.imag());
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Table read_table(const std::string& path) {
    const std::string text = read_file(path);
    const bool json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
    return json ? parse_json(text) : parse_csv(text);
}

// --- eval -------------------------------------------------------------------------------

struct EvalArgs {
    std::string function, x = "0", t = "1", s = "1";
    int n = 0;
    double t_im = 0;
};

Table cmd_eval(const EvalArgs& a, const RunConfig& cfg, std::ostream& err) {
    static const std::vector<std::string> known{"bessel_j", "gegenbauer", "lommel", "q_bessel2", "q_lommel",
                                                "q_ultraspherical", "q_exponential_curly", "kernel",
                                                "reproducing_kernel"};
    if (std::find(known.begin(), known.end(), a.function) == known.end())
        throw UsageError("unknown function " + a.function);
    Table t;
    echo_meta(t, cfg, "eval " + a.function);
    const auto xs = parse_grid(a.x), ts = parse_grid(a.t), ss = parse_grid(a.s);
    auto need_q = [&] {
        if (!cfg.q) throw UsageError(a.function + " needs --q");
        return QBase(*cfg.q);
    };
    const double nu = cfg.nu;
    auto real_rows = [&](const std::function<double(double)>& f) {
        t.columns = {"x", "value"};
        for (double x : xs) t.rows.push_back({x, f(x)});
    };
    if (a.function == "bessel_j") real_rows([&](double x) { return bessel_j(nu, x); });
    else if (a.function == "gegenbauer") real_rows([&](double x) { return gegenbauer(a.n, nu, x); });
    else if (a.function == "lommel") real_rows([&](double x) { return lommel(a.n, nu, x); });
    else if (a.function == "q_bessel2") {
        QBase q = need_q();
        real_rows([&](double x) { return q_bessel2(nu, x, q); });
    } else if (a.function == "q_lommel") {
        QBase q = need_q();
        real_rows([&](double x) { return q_lommel(a.n, nu, x, q); });
    } else if (a.function == "q_ultraspherical") {
        QBase q = need_q();
        real_rows([&](double x) { return q_ultraspherical(a.n, nu, x, q); });
    } else if (a.function == "q_exponential_curly") {
        QBase q = need_q();
        t.columns = {"x", "t_re", "t_im", "value_re", "value_im"};
        for (double x : xs)
            for (double tv : ts) {
                std::vector<Cell> row{x, tv, a.t_im};
                push_complex(row, q_exponential_curly(x, cplx(tv, a.t_im), q));
                t.rows.push_back(std::move(row));
            }
    } else if (a.function == "kernel") {
        const KernelEvaluator K(build_system(cfg));
        t.columns = {"x", "t", "value_re", "value_im", "tail_estimate"};
        for (double x : xs)
            for (double tv : ts) {
                const auto v = K(x, tv);
                if (v.tail_warning)
                    err << "warning: kernel tail " << format_double(v.tail_estimate) << " at x=" << x << " t=" << tv
                        << " exceeds 1e-10 of |K|\n";
                std::vector<Cell> row{x, tv};
                push_complex(row, v.value);
                row.emplace_back(v.tail_estimate);
                t.rows.push_back(std::move(row));
            }
    } else {
        const KernelEvaluator K(build_system(cfg));
        const QuadRule rule = gauss_legendre(cfg.quad_order);
        t.columns = {"t", "s", "value_re", "value_im"};
        for (double tv : ts)
            for (double sv : ss) {
                std::vector<Cell> row{tv, sv};
                push_complex(row, reproducing_kernel(K, tv, sv, rule));
                t.rows.push_back(std::move(row));
            }
    }
    return t;
}

// --- zeros ------------------------------------------------------------------------------

Table cmd_zeros(int count, const RunConfig& cfg, bool& failed) {
    if (count < 1) throw UsageError("count must be >= 1");
    Table t;
    echo_meta(t, cfg, "zeros");
    const bool isq = cfg.system == "q";
    t.columns = {"k", "zero", "residual", "asymptotic"};
    if (isq) t.columns.push_back("ratio");
    t.columns.push_back("status");
    const double nu = cfg.nu;
    auto table = [&](int c) {
        return isq ? QBesselZeroTable::compute(nu, QBase(*cfg.q), c).zeros : BesselZeroTable::compute(nu, c).zeros;
    };
    std::vector<double> zeros;
    std::vector<std::string> status(count, "ok");
    try {
        zeros = table(count);
    } catch (const BracketError&) {
        // fall back to one row at a time so the failing rows are listed individually
        zeros.assign(count, NAN);
        for (int k = 1; k <= count; ++k) try {
                zeros[k - 1] = table(k).back();
            } catch (const BracketError& e) {
                status[k - 1] = e.what();
                failed = true;
            }
    }
    for (int k = 1; k <= count; ++k) {
        const double j = zeros[k - 1];
        std::vector<Cell> row{static_cast<double>(k), j};
        if (isq) {
            const QBase q(*cfg.q);
            row.emplace_back(std::isnan(j) ? NAN : std::fabs(q_bessel2(nu, j, q)) / std::exp(q_bessel2_log_scale(nu, j, q)));
            row.emplace_back(hayman_guess(nu, k, q));
            row.emplace_back(j * j * std::pow(*cfg.q, 2 * k + nu - 1) / 4);
        } else {
            row.emplace_back(std::isnan(j) ? NAN : std::fabs(bessel_j(nu, j)));
            row.emplace_back(mcmahon_guess(nu, k));
        }
        row.emplace_back(status[k - 1]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- kernel -----------------------------------------------------------------------------

Table cmd_kernel(const std::string& xg, const std::string& tg, const RunConfig& cfg, std::ostream& err) {
    EvalArgs a;
    a.function = "kernel";
    a.x = xg;
    a.t = tg;
    Table t = cmd_eval(a, cfg, err);
    t.meta[0].second = std::string("kernel");
    return t;
}

// --- transform --------------------------------------------------------------------------

Table cmd_transform(const Vector& u, const std::string& tg, int samples, const RunConfig& cfg) {
    if (!u.given()) throw UsageError("transform needs --u-re/--u-im or --fixture");
    const KernelEvaluator K(build_system(cfg));
    const auto f = transform(u.function(), K, gauss_legendre(cfg.quad_order));
    Table t;
    echo_meta(t, cfg, "transform");
    if (samples > 0) {
        const auto set = sample(f, samples);
        t.columns = {"t", "re", "im"};
        for (std::size_t n = 0; n < set.nodes.size(); ++n) {
            std::vector<Cell> row{set.nodes[n]};
            push_complex(row, set.values[n]);
            t.rows.push_back(std::move(row));
        }
        return t;
    }
    t.columns = {"t", "value_re", "value_im"};
    for (double tv : parse_grid(tg)) {
        std::vector<Cell> row{tv};
        push_complex(row, f(tv));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- reconstruct ------------------------------------------------------------------------

struct NodeMismatch : Error {
    using Error::Error;
};

SampleSet load_samples(const std::string& path) {
    const Table in = read_table(path);
    const std::string re = in.column("re") >= 0 ? "re" : "value_re";
    const std::string im = in.column("im") >= 0 ? "im" : "value_im";
    SampleSet s;
    for (std::size_t r = 0; r < in.rows.size(); ++r) {
        s.nodes.push_back(in.number(r, "t"));
        s.values.emplace_back(in.number(r, re), in.number(r, im));
    }
    return s;
}

void check_nodes(const SampleSet& s, const SystemSpec& spec) {
    double tmax = 0;
    for (double t : s.nodes) tmax = std::max(tmax, std::fabs(t));
    int count = std::max<int>(1, static_cast<int>(spec.nodes.size()));
    std::vector<double> nodes = sampling_nodes(spec, count);
    while (nodes.back() > -tmax * (1 + 1e-9) && nodes[nodes.size() - 2] < tmax * (1 + 1e-9)) {
        count *= 2;
        nodes = sampling_nodes(spec, count);
    }
    for (double t : s.nodes) {
        if (t == 0) continue;
        bool hit = false;
        for (double x : nodes)
            if (std::fabs(t - x) <= 1e-9 * std::max(1.0, std::fabs(x))) hit = true;
        if (!hit) throw NodeMismatch("sample node " + format_double(t) + " is not a node of the system");
    }
}

Table cmd_reconstruct(const std::string& path, const std::string& tg, const Vector& ref, const RunConfig& cfg) {
    if (path.empty()) throw UsageError("reconstruct needs --samples");
    const SampleSet s = load_samples(path);
    const SystemSpec spec = build_system(cfg);
    check_nodes(s, spec);
    const KernelEvaluator K(spec);
    Table t;
    echo_meta(t, cfg, "reconstruct");
    t.columns = {"t", "value_re", "value_im"};
    std::optional<Transform> f;
    if (ref.given()) {
        f = transform(ref.function(), K, gauss_legendre(cfg.quad_order));
        t.columns.insert(t.columns.end(), {"reference_re", "reference_im", "error"});
    }
    for (double tv : parse_grid(tg)) {
        const cplx v = sampling_reconstruct(s, K, tv);
        std::vector<Cell> row{tv};
        push_complex(row, v);
        if (f) {
            const cplx r = (*f)(tv);
            push_complex(row, r);
            row.emplace_back(std::abs(v - r));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- verify -----------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const RunConfig& cfg, bool table_out, std::ostream& out) {
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else if (is_suite(suite)) names = {suite};
    else throw UsageError("unknown verify suite " + suite);

    VerifyOptions opt;
    opt.quad_order = cfg.quad_order;
    opt.truncation = cfg.truncation;
    Table t;
    echo_meta(t, cfg, "verify " + suite);
    t.columns = {"suite", "check", "residual", "tolerance", "pass", "note"};
    std::ostringstream text;
    bool ok = true;
    for (const auto& n : names) {
        const SuiteReport rep = run_suite(n, opt);
        ok = ok && rep.ok();
        for (const auto& c : rep.checks) {
            text << (c.pass ? "PASS  " : "FAIL  ") << n << ": " << c.name << "  residual=" << format_double(c.residual)
                 << "  tol=" << format_double(c.tolerance);
            if (!c.note.empty()) text << "  (" << c.note << ")";
            text << "\n";
            t.rows.push_back({n, c.name, c.residual, c.tolerance, std::string(c.pass ? "PASS" : "FAIL"), c.note});
        }
        for (const auto& note : rep.notes) text << "      " << n << ": " << note << "\n";
    }
    text << (ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
    if (table_out) emit(t, cfg, out);
    else if (cfg.output.empty()) out << text.str();
    else {
        std::ofstream f(cfg.output);
        f << text.str();
    }
    return ok ? kOk : kNumerical;
}

// --- table ------------------------------------------------------------------------------

struct TableArgs {
    std::string kind, x = "0.3", t = "10", s = "0.5:10:5", counts = "30,60,120";
    int count = 10;
};

Table cmd_table(const TableArgs& a, const RunConfig& cfg) {
    Table t;
    echo_meta(t, cfg, "table " + a.kind);
    const QuadRule rule = gauss_legendre(cfg.quad_order);
    if (a.kind == "term-profile") {
        const auto spec = build_system(cfg);
        t.columns = {"x", "t", "k", "magnitude"};
        std::vector<double> p(cfg.truncation), J(cfg.truncation);
        for (double x : parse_grid(a.x))
            for (double tv : parse_grid(a.t)) {
                spec.p_all(x, p);
                spec.J_all(tv, J);
                for (int k = 0; k < cfg.truncation; ++k) t.rows.push_back({x, tv, double(k), std::fabs(J[k] * p[k])});
            }
    } else if (a.kind == "sampling-decay") {
        const KernelEvaluator K(build_system(cfg));
        const auto f = transform(sampling_fixture, K, rule);
        const auto ts = parse_grid(a.t);
        t.columns = {"nodes", "max_error"};
        for (double c : parse_grid(a.counts)) {
            const auto set = sample(f, static_cast<int>(c));
            double worst = 0;
            for (double tv : ts) worst = std::max(worst, std::abs(sampling_reconstruct(set, K, tv) - f(tv)));
            t.rows.push_back({c, worst});
        }
    } else if (a.kind == "sinc-grid") {
        RunConfig c = cfg;
        c.system = "classical";
        c.nu = 0.5;
        c.q.reset();
        const KernelEvaluator K(build_system(c));
        t.columns = {"t", "s", "quadrature", "closed", "abs_error"};
        for (double tv : parse_grid(a.t))
            for (double sv : parse_grid(a.s)) {
                const double k = sinc_display_constant() * reproducing_kernel(K, tv, sv, rule).real();
                const double z = reproducing_kernel_sinc(tv, sv);
                t.rows.push_back({tv, sv, k, z, std::fabs(k - z)});
            }
    } else if (a.kind == "hayman") {
        if (!cfg.q) throw UsageError("table hayman needs --q");
        const QBase q(*cfg.q);
        const auto zeros = QBesselZeroTable::compute(cfg.nu, q, a.count).zeros;
        t.columns = {"k", "zero", "ratio"};
        for (int k = 1; k <= a.count; ++k) {
            const double j = zeros[k - 1];
            t.rows.push_back({double(k), j, j * j * std::pow(*cfg.q, 2 * k + cfg.nu - 1) / 4});
        }
    } else {
        throw UsageError("unknown table " + a.kind + " (term-profile, sampling-decay, sinc-grid, hayman)");
    }
    return t;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    auto num = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("bad number '" + s + "' in grid " + spec);
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("grid must be a:b:n, got " + spec);
        const double a = num(parts[0]), b = num(parts[1]);
        const double n = num(parts[2]);
        if (n < 1 || n != std::floor(n)) throw UsageError("grid point count must be a positive integer");
        if (n == 1) return {a};
        std::vector<double> v(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
        return v;
    }
    std::vector<double> v;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) v.push_back(num(p));
    if (v.empty()) throw UsageError("empty grid");
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reproducing kernels of Fourier and q-Fourier type"};
    app.name("qrk");
    app.require_subcommand(1);

    std::map<CLI::App*, Common> common;

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "evaluate a special function or kernel on a grid");
    eval->add_option("function", ev.function, "function name")->required();
    eval->add_option("--n", ev.n, "degree / index");
    eval->add_option("--x", ev.x, "x grid");
    eval->add_option("--t", ev.t, "t grid");
    eval->add_option("--s", ev.s, "s grid");
    eval->add_option("--t-im", ev.t_im, "imaginary part of t (q_exponential_curly)");

    int zcount = 10;
    auto* zeros = app.add_subcommand("zeros", "tabulate Bessel or q-Bessel zeros");
    zeros->add_option("--count", zcount, "number of zeros");

    std::string kx = "0", kt = "1";
    auto* kernel = app.add_subcommand("kernel", "evaluate K(x,t) on a grid");
    kernel->add_option("--x", kx, "x grid");
    kernel->add_option("--t", kt, "t grid");

    Vector tu;
    std::string tt = "0.5:10:20";
    int tsamples = 0;
    auto* trans = app.add_subcommand("transform", "evaluate (Fu)(t)");
    tu.attach(trans);
    trans->add_option("--t", tt, "t grid");
    trans->add_option("--samples", tsamples, "emit samples at 0 and the first N +- nodes instead");

    Vector ru;
    std::string rpath, rt = "0.5:10:20";
    auto* recon = app.add_subcommand("reconstruct", "sampling reconstruction from a samples file");
    ru.attach(recon);
    recon->add_option("--samples", rpath, "CSV/JSON with columns t, re, im (t = 0 is the origin sample)");
    recon->add_option("--t", rt, "t grid");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run identity residual suites");
    verify->add_option("suite", suite, "suite name or all")->required();

    TableArgs ta;
    auto* table = app.add_subcommand("table", "plot-ready tables");
    table->add_option("kind", ta.kind, "term-profile | sampling-decay | sinc-grid | hayman")->required();
    table->add_option("--x", ta.x, "x grid");
    table->add_option("--t", ta.t, "t grid");
    table->add_option("--s", ta.s, "s grid");
    table->add_option("--counts", ta.counts, "node counts");
    table->add_option("--count", ta.count, "number of zeros");

    for (auto* sub : {eval, zeros, kernel, trans, recon, verify, table}) common[sub].attach(sub);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const auto parsed = app.get_subcommands();
        const Common& flags = common.at(parsed.front());
        const RunConfig cfg = flags.resolve();
        if (eval->parsed()) emit(cmd_eval(ev, cfg, err), cfg, out);
        else if (zeros->parsed()) {
            bool failed = false;
            emit(cmd_zeros(zcount, cfg, failed), cfg, out);
            if (failed) return kNumerical;
        } else if (kernel->parsed()) emit(cmd_kernel(kx, kt, cfg, err), cfg, out);
        else if (trans->parsed()) emit(cmd_transform(tu, tt, tsamples, cfg), cfg, out);
        else if (recon->parsed()) emit(cmd_reconstruct(rpath, rt, ru, cfg), cfg, out);
        else if (verify->parsed()) return cmd_verify(suite, cfg, flags.o_format->count() > 0, out);
        else if (table->parsed()) emit(cmd_table(ta, cfg), cfg, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace qrk::cli
