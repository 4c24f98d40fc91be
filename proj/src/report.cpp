#include "qsample/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qsample/bounds.hpp"
#include "qsample/entropy.hpp"
#include "qsample/qrng.hpp"
#include "qsample/sampling.hpp"
#include "qsample/verify.hpp"

namespace qsample {

namespace {

using nlohmann::ordered_json;

double parse_double(const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + text + "'");
    }
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos != text.size()) throw UsageError("not a number: '" + text + "'");
    return v;
}

std::size_t to_count(double v, const char* what) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15)
        throw UsageError(std::string(what) + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_counts(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    for (double v : parse_grid(text)) out.push_back(to_count(v, what));
    return out;
}

std::size_t parse_single_count(const std::optional<std::string>& text, std::size_t fallback, const char* what) {
    if (!text) return fallback;
    const auto values = parse_counts(*text, what);
    if (values.size() != 1) throw UsageError(std::string(what) + " takes a single value here");
    return values.front();
}

std::int64_t flag(bool b) { return b ? 1 : 0; }
std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

CommandResult with_columns(std::vector<std::string> columns) {
    CommandResult r;
    r.table.columns = std::move(columns);
    return r;
}

// Library validation failures are parameter problems from the caller's side.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(std::round(std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)))));
    }
    return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find_first_not_of(' ') == std::string::npos) return out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw UsageError("range must be start:stop:count");
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const std::size_t count = to_count(parse_double(parts[2]), "range count");
        for (std::size_t i = 0; i < count; ++i) {
            if (count == 1) {
                out.push_back(start);
                break;
            }
            out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_double(item));
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

CommandResult cmd_bound(const RunConfig& cfg) {
    CommandResult r = with_columns({"m", "n", "epsilon", "epsilon_hat", "beta", "a", "c", "w", "delta", "smoothing",
                                    "entropy_lower_bound", "failure_prob", "vacuous"});
    BoundParams p;
    p.m = parse_single_count(cfg.m, 10000, "m");
    p.n = parse_single_count(cfg.n, 10000, "n");
    p.epsilon = cfg.epsilon.value_or(1e-36);
    p.epsilon_hat = cfg.epsilon_hat.value_or(p.epsilon);
    p.beta = cfg.beta.value_or(0.33);
    p.a = cfg.a.value_or(0);
    p.c = cfg.c.value_or(0.5);
    p.w_obs = cfg.w.value_or(0.0);
    const BoundResult b = guarded([&] { return theorem_bound(p); });
    r.table.rows.push_back({as_int(p.m), as_int(p.n), p.epsilon, p.epsilon_hat, p.beta, std::int64_t{p.a}, p.c,
                            p.w_obs, b.delta, b.smoothing, b.entropy_lower_bound, b.failure_prob,
                            flag(b.vacuous())});
    return r;
}

CommandResult cmd_rate_curve(const RunConfig& cfg) {
    CommandResult r = with_columns({"N", "n", "m", "delta", "ell", "rate", "vacuous", "asymptote", "feasible"});
    std::vector<double> grid;
    if (cfg.grid) grid = parse_grid(*cfg.grid);
    else if (cfg.N) grid = parse_grid(*cfg.N);
    else grid = log_grid(1e3, 1e6, 31);
    // Linear ranges land between integers; round them.
    std::vector<std::size_t> totals;
    for (double v : grid) totals.push_back(to_count(std::round(v), "N"));

    const double fraction = cfg.m_fraction.value_or(0.07);
    const double eps = cfg.epsilon.value_or(1e-36);
    const double beta = cfg.beta.value_or(0.33);
    const double w = cfg.w.value_or(0.2);
    const LengthFormula formula = guarded([&] { return parse_length_formula(cfg.formula); });
    if (!(fraction > 0.0)) throw UsageError("m-fraction must be > 0");
    guarded([&] {
        epsilon_pa(eps, beta);
        return asymptotic_rate(w);
    });
    if (w > 1.0) throw UsageError("w must lie in [0,1]");
    const double asymptote = asymptotic_rate(w);

    for (const RatePoint& pt : rate_curve(totals, fraction, eps, beta, w, formula)) {
        if (!pt.feasible)
            r.diagnostics.push_back("N=" + std::to_string(pt.n_total) + " infeasible: " + pt.diagnostic);
        r.table.rows.push_back({as_int(pt.n_total), as_int(pt.n), as_int(pt.m), pt.delta, pt.ell, pt.rate,
                                flag(pt.vacuous), asymptote, flag(pt.feasible)});
    }
    return r;
}

CommandResult cmd_fig1(const RunConfig& cfg) {
    CommandResult r = with_columns({"p", "shannon", "min_entropy"});
    const std::vector<double> grid = parse_grid(cfg.grid.value_or("0:1:101"));
    for (double p : grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw UsageError("p must lie in [0,1]");
        const Distribution dist({p, 1.0 - p});
        r.table.rows.push_back({p, shannon_entropy(dist), min_entropy_classical(dist)});
    }
    return r;
}

CommandResult cmd_verify(const RunConfig& cfg) {
    CommandResult r = with_columns({"suite", "instances", "violations", "worst_slack", "status"});
    std::vector<std::string> names = cfg.suites.empty() ? suite_names() : cfg.suites;
    for (const auto& name : names)
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw UsageError("unknown suite: " + name);
    if (cfg.trials == 0) r.diagnostics.push_back("warning: trials=0, no instances checked (vacuous pass)");

    SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.trials = cfg.trials;
    sc.bound_offset = cfg.inject_bound_offset;
    for (const auto& name : names) {
        const SuiteReport rep = run_suite(name, sc);
        std::string status = rep.passed() ? "pass" : "fail";
        if (rep.instances == 0) status = "vacuous";
        const double slack = rep.instances == 0 ? std::nan("") : rep.worst_slack;
        r.table.rows.push_back({rep.name, as_int(rep.instances), as_int(rep.violations), slack, status});
        if (!rep.passed()) {
            r.exit_code = kExitViolation;
            r.diagnostics.push_back("violation: " + rep.first_violation.value_or("{}"));
        }
    }
    return r;
}

CommandResult cmd_sampling(const RunConfig& cfg) {
    CommandResult r =
        with_columns({"N", "k", "delta", "exact", "mc_estimate", "mc_stderr", "bound", "bound_applies"});
    const auto totals = parse_counts(cfg.N.value_or("4,8,16,32,64"), "N");
    const auto sizes = parse_counts(cfg.m.value_or("1,2,4"), "k");
    const auto deltas = parse_grid(cfg.delta.value_or("0.1,0.25,0.5"));
    for (double d : deltas)
        if (!(d > 0.0)) throw UsageError("delta must be > 0");
    const unsigned lanes = std::max(1u, std::thread::hardware_concurrency());

    for (std::size_t total : totals)
        for (std::size_t k : sizes) {
            if (k < 1 || k >= total) {
                r.diagnostics.push_back("skipping N=" + std::to_string(total) + " k=" + std::to_string(k) +
                                        ": need 1 <= k < N");
                continue;
            }
            for (double delta : deltas) {
                double exact = std::nan("");
                if (total <= kExactMaxLength) {
                    exact = error_prob_exact(total, k, delta, 2, 0);
                } else {
                    r.diagnostics.push_back("exact path refused for N=" + std::to_string(total) +
                                            " (limit " + std::to_string(kExactMaxLength) + ")");
                }
                double mc = std::nan(""), se = std::nan("");
                if (cfg.trials > 0) {
                    const auto est = error_prob_monte_carlo(total, k, delta, 2, 0, cfg.trials, cfg.seed, lanes);
                    mc = est.estimate;
                    se = est.standard_error;
                }
                const bool applies = 2 * k <= total;
                const double bound = error_prob_bound(total, k, delta, true);
                r.table.rows.push_back(
                    {as_int(total), as_int(k), delta, exact, mc, se, bound, flag(applies)});
            }
        }
    return r;
}

CommandResult run_command(const RunConfig& cfg) {
    if (cfg.command == "bound") return cmd_bound(cfg);
    if (cfg.command == "rate-curve") return cmd_rate_curve(cfg);
    if (cfg.command == "fig1") return cmd_fig1(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "sampling") return cmd_sampling(cfg);
    throw UsageError("unknown command: " + cfg.command);
}

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    return std::get<std::string>(c);
}

ordered_json cell_json(const Cell& c) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return std::strtod(format_number(*d).c_str(), nullptr);
    }
    return std::get<std::string>(c);
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j = ordered_json::object();
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("epsilon", cfg.epsilon);
    put("epsilon_hat", cfg.epsilon_hat);
    put("beta", cfg.beta);
    put("w", cfg.w);
    put("c", cfg.c);
    put("m_fraction", cfg.m_fraction);
    put("m", cfg.m);
    put("n", cfg.n);
    put("N", cfg.N);
    put("delta", cfg.delta);
    put("grid", cfg.grid);
    put("a", cfg.a);
    if (cfg.command == "rate-curve") j["formula"] = cfg.formula;
    if (cfg.command == "verify" || cfg.command == "sampling") j["trials"] = cfg.trials;
    if (!cfg.suites.empty()) j["suites"] = cfg.suites;
    if (cfg.inject_bound_offset != 0.0) j["inject_bound_offset"] = cfg.inject_bound_offset;
    return j;
}

}  // namespace

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table, const RunConfig& cfg) {
    ordered_json doc;
    doc["metadata"] = {{"version", kVersion}, {"command", cfg.command}, {"seed", cfg.seed},
                       {"config", config_json(cfg)}};
    doc["rows"] = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::string render(const Table& table, const RunConfig& cfg) {
    return cfg.format == OutputFormat::json ? render_json(table, cfg) : render_csv(table);
}

}  // namespace qsample
