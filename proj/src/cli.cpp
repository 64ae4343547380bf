#include "expbern/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "expbern/convergence.hpp"
#include "expbern/fundamental.hpp"

namespace expbern::cli {

namespace {

double parse_real_strict(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
}

}  // namespace

cplx parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    auto fail = [&]() -> cplx {
        throw UsageError("bad complex literal '" + text +
                         "'; expected re, imi, re+imi or re-imi");
    };
    if (s.empty()) return fail();
    try {
        if (s.back() != 'i') return {parse_real_strict(s), 0.0};
        std::string body = s.substr(0, s.size() - 1);
        // Split at the last top-level sign that is not an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t p = 1; p < body.size(); ++p) {
            if ((body[p] == '+' || body[p] == '-') &&
                body[p - 1] != 'e' && body[p - 1] != 'E')
                split = p;
        }
        auto imag_of = [&](const std::string& t) {
            if (t.empty() || t == "+") return 1.0;
            if (t == "-") return -1.0;
            return parse_real_strict(t);
        };
        if (split == std::string::npos) return {0.0, imag_of(body)};
        return {parse_real_strict(body.substr(0, split)),
                imag_of(body.substr(split))};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        return fail();
    }
}

std::string format_complex_literal(cplx z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(std::abs(z.imag())) + "i";
    std::string sign = std::signbit(z.imag()) ? "-" : "+";
    if (z.real() == 0.0) return (std::signbit(z.imag()) ? "-" : "") + im;
    return format_double(z.real()) + sign + im;
}

namespace {

// ---------------------------------------------------------------- emission

struct Field {
    enum class Kind { num, integer, boolean, text, list };
    std::string key;
    Kind kind;
    std::string text;          // text fields
    double num = 0.0;          // num fields
    long long integer = 0;     // integer fields
    bool flag = false;         // boolean fields
    std::vector<double> list;  // list fields
};

struct Record {
    std::vector<Field> fields;
    void num(const std::string& k, double v) {
        fields.push_back({k, Field::Kind::num, "", v});
    }
    void integer(const std::string& k, long long v) {
        fields.push_back({k, Field::Kind::integer, "", 0.0, v});
    }
    void boolean(const std::string& k, bool v) {
        fields.push_back({k, Field::Kind::boolean, "", 0.0, 0, v});
    }
    void text(const std::string& k, const std::string& v) {
        fields.push_back({k, Field::Kind::text, v});
    }
    void list(const std::string& k, const std::vector<double>& v) {
        Field f{k, Field::Kind::list};
        f.list = v;
        fields.push_back(std::move(f));
    }
};

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// JSON has no literal for non-finite numbers; emit them as strings.
std::string json_number(double v) {
    if (std::isfinite(v)) return format_double(v);
    return "\"" + format_double(v) + "\"";
}

void write_record(std::ostream& os, const Record& rec, const std::string& format) {
    if (format == "json") {
        os << "{\n";
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
            const Field& f = rec.fields[i];
            os << "  \"" << json_escape(f.key) << "\": ";
            switch (f.kind) {
                case Field::Kind::num: os << json_number(f.num); break;
                case Field::Kind::integer: os << f.integer; break;
                case Field::Kind::boolean: os << (f.flag ? "true" : "false"); break;
                case Field::Kind::text: os << '"' << json_escape(f.text) << '"'; break;
                case Field::Kind::list: {
                    os << '[';
                    for (std::size_t j = 0; j < f.list.size(); ++j)
                        os << (j ? "," : "") << json_number(f.list[j]);
                    os << ']';
                    break;
                }
            }
            os << (i + 1 < rec.fields.size() ? ",\n" : "\n");
        }
        os << "}\n";
        return;
    }
    os << "key,value\n";
    for (const Field& f : rec.fields) {
        os << f.key << ',';
        switch (f.kind) {
            case Field::Kind::num: os << format_double(f.num); break;
            case Field::Kind::integer: os << f.integer; break;
            case Field::Kind::boolean: os << (f.flag ? "true" : "false"); break;
            case Field::Kind::text: os << f.text; break;
            case Field::Kind::list: {
                for (std::size_t j = 0; j < f.list.size(); ++j)
                    os << (j ? ";" : "") << format_double(f.list[j]);
                break;
            }
        }
        os << '\n';
    }
}

void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns,
                 const std::string& format) {
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    if (format == "json") {
        os << "{\n";
        for (std::size_t c = 0; c < header.size(); ++c) {
            os << "  \"" << json_escape(header[c]) << "\": [";
            for (std::size_t r = 0; r < rows; ++r)
                os << (r ? "," : "") << json_number(columns[c][r]);
            os << ']' << (c + 1 < header.size() ? ",\n" : "\n");
        }
        os << "}\n";
        return;
    }
    for (std::size_t c = 0; c < header.size(); ++c)
        os << (c ? "," : "") << header[c];
    os << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < header.size(); ++c)
            os << (c ? "," : "") << format_double(columns[c][r]);
        os << '\n';
    }
}

// ---------------------------------------------------------------- helpers

const std::vector<std::string> kCommands = {"check",    "fundamental", "basis",
                                            "operator", "approx",      "converge",
                                            "muntz"};

EigenvalueMultiset multiset_of(const RunConfig& cfg) {
    return EigenvalueMultiset::canonicalize(cfg.eigs);
}

std::pair<double, double> require_interval(const RunConfig& cfg,
                                           bool ordered = true) {
    if (!cfg.interval)
        throw UsageError("missing --interval for command '" + cfg.command + "'");
    auto [a, b] = *cfg.interval;
    if (ordered && !(a < b))
        throw UsageError("--interval expects a < b, got " + format_double(a) +
                         " " + format_double(b));
    return *cfg.interval;
}

std::string eig_list_text(const EigenvalueMultiset& lambda) {
    std::string s;
    for (cplx v : lambda.expanded())
        s += (s.empty() ? "" : ";") + format_complex_literal(v);
    return s;
}

// Resolves the fixed pair: explicit indices, else the two smallest real
// eigenvalues counted with multiplicity. Equal values select the confluent
// construction.
std::pair<cplx, cplx> resolve_fix(const RunConfig& cfg,
                                  const EigenvalueMultiset& lambda) {
    if (cfg.fix) {
        auto [i, j] = *cfg.fix;
        int sz = static_cast<int>(cfg.eigs.size());
        if (i < 0 || j < 0 || i >= sz || j >= sz)
            throw UsageError("--fix indices out of range (list has " +
                             std::to_string(sz) + " eigenvalues)");
        cplx u = cfg.eigs[i], v = cfg.eigs[j];
        if (std::abs(u.imag()) > lambda.eps() || std::abs(v.imag()) > lambda.eps())
            throw UsageError("--fix must select real eigenvalues");
        if (u.real() > v.real()) std::swap(u, v);
        return {u, v};
    }
    std::vector<double> reals;
    for (cplx v : lambda.expanded())
        if (std::abs(v.imag()) <= lambda.eps()) reals.push_back(v.real());
    std::sort(reals.begin(), reals.end());
    if (reals.size() < 2)
        throw UsageError("operator needs two real eigenvalues; give --fix or "
                         "add real eigenvalues");
    return {reals[0], reals[1]};
}

BernsteinOperator make_operator(const RunConfig& cfg,
                                const EigenvalueMultiset& lambda, double a,
                                double b) {
    auto [f0, f1] = resolve_fix(cfg, lambda);
    if (std::abs(f0 - f1) <= lambda.eps())
        return build_operator_confluent(lambda, a, b, f0);
    return build_operator(lambda, a, b, {f0, f1});
}

void operator_record(Record& rec, const BernsteinOperator& op) {
    rec.text("fix_0", format_complex_literal(op.fixed0));
    rec.text("fix_1", format_complex_literal(op.fixed1));
    rec.boolean("confluent", op.confluent);
    rec.list("nodes", op.nodes);
    rec.list("weights", op.weights);
    rec.list("step_ratios", op.step_ratios);
    rec.boolean("nodes_ordered", op.nodes_ordered);
    rec.boolean("weights_positive", op.weights_positive);
}

// ---------------------------------------------------------------- commands

void run_check(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    EigenvalueMultiset lambda = multiset_of(cfg);
    ChebyshevDiagnosis diag = chebyshev_interval_test(lambda, a, b, cfg.samples);
    Record rec;
    rec.text("command", "check");
    rec.text("eigenvalues", eig_list_text(lambda));
    rec.num("a", a);
    rec.num("b", b);
    rec.integer("n", diag.n);
    rec.boolean("conjugate_closed", diag.conjugate_closed);
    rec.num("window_bound", diag.window_bound);
    rec.boolean("window_certificate", diag.window_certificate());
    rec.boolean("pair_ok", diag.pair_ok);
    rec.text("interval_ok",
             diag.interval_ok ? (*diag.interval_ok ? "true" : "false") : "unset");
    for (std::size_t k = 0; k < diag.hankel_values.size(); ++k)
        rec.text("hankel_" + std::to_string(k),
                 format_complex_literal(diag.hankel_values[k]));
    std::string flags;
    const std::size_t cap = 32;
    for (std::size_t i = 0; i < diag.near_zero_flags.size() && i < cap; ++i) {
        const auto& f = diag.near_zero_flags[i];
        flags += (flags.empty() ? "" : ";") + std::to_string(f.k) + "@" +
                 format_double(f.x);
    }
    if (diag.near_zero_flags.size() > cap)
        flags += ";+" + std::to_string(diag.near_zero_flags.size() - cap) +
                 " more";
    rec.text("near_zero_flags", flags);
    write_record(os, rec, cfg.format);
}

void run_fundamental(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    EigenvalueMultiset lambda = multiset_of(cfg);
    double cond = 0.0;
    ExpPoly phi = fundamental_function(lambda, &cond);
    if (cfg.format == "json") {
        Record rec;
        rec.text("command", "fundamental");
        rec.text("eigenvalues", eig_list_text(lambda));
        rec.integer("n", lambda.degree());
        rec.text("exppoly", phi.to_string());
        rec.num("condition_estimate", cond);
        write_record(os, rec, cfg.format);
        return;
    }
    std::vector<double> xs = linspace(a, b, cfg.samples);
    std::vector<std::vector<double>> cols(3);
    for (double x : xs) {
        cplx v = phi.eval(x);
        cols[0].push_back(x);
        cols[1].push_back(v.real());
        cols[2].push_back(v.imag());
    }
    write_table(os, {"x", "phi_re", "phi_im"}, cols, cfg.format);
}

void run_basis(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    EigenvalueMultiset lambda = multiset_of(cfg);
    BernsteinBasis basis = build_basis(lambda, a, b);
    const int n = basis.degree();
    if (cfg.format == "json") {
        Record rec;
        rec.text("command", "basis");
        rec.text("eigenvalues", eig_list_text(lambda));
        rec.num("a", a);
        rec.num("b", b);
        rec.integer("n", n);
        for (int k = 0; k <= n; ++k)
            rec.text("p" + std::to_string(k), basis.at(k).to_string());
        std::vector<double> ar, ai;
        for (cplx v : basis.alpha) { ar.push_back(v.real()); ai.push_back(v.imag()); }
        rec.list("recursion_alpha_re", ar);
        rec.list("recursion_alpha_im", ai);
        std::vector<double> br, bi;
        for (cplx v : basis.beta) { br.push_back(v.real()); bi.push_back(v.imag()); }
        rec.list("recursion_beta_re", br);
        rec.list("recursion_beta_im", bi);
        write_record(os, rec, cfg.format);
        return;
    }
    // Conjugate-closed spectra have real-valued bases; otherwise emit both
    // parts rather than silently dropping the imaginary one.
    const bool real_basis = lambda.is_conjugate_closed();
    std::vector<double> xs = linspace(a, b, cfg.samples);
    std::vector<std::string> header = {"x"};
    for (int k = 0; k <= n; ++k) {
        if (real_basis) {
            header.push_back("p" + std::to_string(k));
        } else {
            header.push_back("p" + std::to_string(k) + "_re");
            header.push_back("p" + std::to_string(k) + "_im");
        }
    }
    std::vector<std::vector<double>> cols(header.size());
    for (double x : xs) {
        cols[0].push_back(x);
        for (int k = 0; k <= n; ++k) {
            cplx v = basis.at(k).eval(x);
            if (real_basis) {
                cols[k + 1].push_back(v.real());
            } else {
                cols[2 * k + 1].push_back(v.real());
                cols[2 * k + 2].push_back(v.imag());
            }
        }
    }
    write_table(os, header, cols, cfg.format);
}

void run_operator(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    EigenvalueMultiset lambda = multiset_of(cfg);
    BernsteinOperator op = make_operator(cfg, lambda, a, b);
    auto [r0, r1] = fixed_point_residuals(op, cfg.samples);
    Record rec;
    rec.text("command", "operator");
    rec.text("eigenvalues", eig_list_text(lambda));
    rec.num("a", a);
    rec.num("b", b);
    rec.integer("n", op.degree());
    operator_record(rec, op);
    rec.num("residual_fixed0", r0);
    rec.num("residual_fixed1", r1);
    write_record(os, rec, cfg.format);
}

void run_approx(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    if (cfg.function.empty()) throw UsageError("missing --function for approx");
    EigenvalueMultiset lambda = multiset_of(cfg);
    std::function<double(double)> f;
    try {
        f = test_function(cfg.function, a, b);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    BernsteinOperator op = make_operator(cfg, lambda, a, b);
    std::vector<double> xs = linspace(a, b, cfg.samples);
    std::vector<std::vector<double>> cols(4);
    double sup = 0.0;
    for (double x : xs) {
        double fx = f(x), bx = op.apply(f, x);
        cols[0].push_back(x);
        cols[1].push_back(fx);
        cols[2].push_back(bx);
        cols[3].push_back(std::abs(bx - fx));
        sup = std::max(sup, std::abs(bx - fx));
    }
    if (cfg.format == "json") {
        Record rec;
        rec.text("command", "approx");
        rec.text("eigenvalues", eig_list_text(lambda));
        rec.text("function", cfg.function);
        rec.num("a", a);
        rec.num("b", b);
        rec.integer("n", op.degree());
        operator_record(rec, op);
        rec.num("sup_error", sup);
        write_record(os, rec, cfg.format);
        return;
    }
    write_table(os, {"x", "f", "Bf", "error"}, cols, cfg.format);
}

void run_converge(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    if (cfg.function.empty()) throw UsageError("missing --function for converge");
    std::function<double(double)> f;
    try {
        f = test_function(cfg.function, a, b);
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    FamilySpec family;
    if (cfg.eigs.size() == 1) {
        if (std::abs(cfg.eigs[0].imag()) > tol::merge_eps)
            throw UsageError("classical family needs a real eigenvalue");
        family = FamilySpec::classical_family(cfg.eigs[0].real(), a, b);
    } else if (cfg.eigs.size() == 2) {
        try {
            family = FamilySpec::morigi_neamtu(cfg.eigs[0], cfg.eigs[1], a, b);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(ex.what());
        }
    } else {
        throw UsageError("converge expects --eigs with one eigenvalue "
                         "(classical family {lambda0 : n+1}) or two "
                         "(Morigi-Neamtu endpoints)");
    }
    std::vector<int> ns = cfg.n_list;
    if (ns.empty()) ns = {2, 4, 8, 16, 32};
    ConvergenceReport report = convergence_study(family, f, ns, cfg.samples);
    std::vector<std::vector<double>> cols(5);
    for (const auto& e : report.entries) {
        cols[0].push_back(e.n);
        cols[1].push_back(e.sup_error);
        cols[2].push_back(e.mesh);
        cols[3].push_back(e.ratio_dev);
        cols[4].push_back(e.log_ratio_dev);
    }
    write_table(os, {"n", "sup_error", "mesh", "ratio_dev", "log_ratio_dev"},
                cols, cfg.format);
}

void run_muntz(const RunConfig& cfg, std::ostream& os) {
    auto [a, b] = require_interval(cfg);
    std::vector<double> exponents;
    for (cplx v : cfg.eigs) {
        if (std::abs(v.imag()) > tol::merge_eps)
            throw UsageError("muntz exponents must be real");
        exponents.push_back(v.real());
    }
    MuntzSystem sys = muntz_to_exponential(exponents, a, b);
    Record rec;
    rec.text("command", "muntz");
    rec.list("exponents", exponents);
    rec.text("eigenvalues", eig_list_text(sys.lambda));
    rec.num("a", sys.a);
    rec.num("b", sys.b);
    write_record(os, rec, cfg.format);
}

}  // namespace

ParseResult parse_args(int argc, const char* const* argv) {
    CLI::App app{"Bernstein bases and operators for exponential-polynomial "
                 "spaces"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");
    app.allow_config_extras(false);

    RunConfig cfg;
    std::vector<double> interval_raw;
    std::vector<int> fix_raw;
    for (const std::string& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--eigs", cfg.eig_literals,
                        "Eigenvalues (re, imi, re+imi or re-imi)")
            ->required();
        sub->add_option("--interval", interval_raw, "Interval endpoints a b")
            ->expected(2);
        sub->add_option("--fix", fix_raw,
                        "Indices of the two fixed eigenvalues (as typed)")
            ->expected(2);
        sub->add_option("--function", cfg.function,
                        "abs_mid | square | sin | runge | exp | exp:<lambda>");
        sub->add_option("--samples", cfg.samples, "Grid size")
            ->check(CLI::PositiveNumber);
        sub->add_option("--nlist", cfg.n_list, "Family indices n")
            ->delimiter(',');
        sub->add_option("--out", cfg.out, "Output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return {std::nullopt, 0};
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return {std::nullopt, 2};
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!interval_raw.empty()) cfg.interval = {interval_raw[0], interval_raw[1]};
    if (!fix_raw.empty()) cfg.fix = {fix_raw[0], fix_raw[1]};
    try {
        for (const std::string& lit : cfg.eig_literals)
            cfg.eigs.push_back(parse_complex(lit));
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return {std::nullopt, 2};
    }
    return {cfg, 0};
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[" << cfg.command << "]\n";
    os << "eigs=";
    for (std::size_t i = 0; i < cfg.eig_literals.size(); ++i)
        os << (i ? " " : "") << '"' << cfg.eig_literals[i] << '"';
    os << "\n";
    if (cfg.interval)
        os << "interval=" << format_double(cfg.interval->first) << " "
           << format_double(cfg.interval->second) << "\n";
    if (cfg.fix) os << "fix=" << cfg.fix->first << " " << cfg.fix->second << "\n";
    if (!cfg.function.empty()) os << "function=\"" << cfg.function << "\"\n";
    os << "samples=" << cfg.samples << "\n";
    if (!cfg.n_list.empty()) {
        os << "nlist=";
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
            os << (i ? "," : "") << cfg.n_list[i];
        os << "\n";
    }
    if (!cfg.out.empty()) os << "out=\"" << cfg.out << "\"\n";
    os << "format=\"" << cfg.format << "\"\n";
    return os.str();
}

void run_config(const RunConfig& cfg, std::ostream& os) {
    if (cfg.eigs.empty()) throw UsageError("eigenvalue list must be nonempty");
    if (cfg.command == "check") return run_check(cfg, os);
    if (cfg.command == "fundamental") return run_fundamental(cfg, os);
    if (cfg.command == "basis") return run_basis(cfg, os);
    if (cfg.command == "operator") return run_operator(cfg, os);
    if (cfg.command == "approx") return run_approx(cfg, os);
    if (cfg.command == "converge") return run_converge(cfg, os);
    if (cfg.command == "muntz") return run_muntz(cfg, os);
    throw UsageError("unknown command '" + cfg.command + "'");
}

int cli_main(int argc, const char* const* argv) {
    ParseResult parsed = parse_args(argc, argv);
    if (!parsed.config) return parsed.exit_code;
    const RunConfig& cfg = *parsed.config;
    try {
        if (cfg.out.empty()) {
            run_config(cfg, std::cout);
        } else {
            std::ofstream out(cfg.out);
            if (!out) throw Error("cannot open output file '" + cfg.out + "'");
            run_config(cfg, out);
            if (!out.good()) throw Error("write failed for '" + cfg.out + "'");
        }
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace expbern::cli
