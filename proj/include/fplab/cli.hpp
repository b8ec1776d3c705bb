#pragma once

/**
 * @file cli.hpp
 * @brief The `fplab` command line: one subcommand per counted object.
 *
 *   prodset   #(HM) or #(M/H) and the coverage hypotheses
 *   energy    J, J(L), J_s, R, J_{l,s}
 *   expsum    Kloosterman-fraction sum S, or the Burgess ratio
 *   tk        T_k(lambda) and its deviation from the main term
 *   sweep     parameter grid from a config file
 *   selftest  embedded small-instance oracle checks
 *
 * Exit codes: 0 success, 1 internal failure, 2 usage or input error,
 * 3 work-budget refusal. Output is CSV (header + rows) or JSON lines.
 */

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fplab/energy.hpp"
#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/prodset.hpp"
#include "fplab/report.hpp"
#include "fplab/selftest.hpp"
#include "fplab/sets.hpp"
#include "fplab/spectra.hpp"
#include "fplab/tkcount.hpp"
#include "fplab/verify.hpp"

namespace fplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Values of the flags shared by the subcommands.
struct Invocation {
    u64 p = 0;
    u64 h_len = 0;
    i64 shift = 0;
    i64 s = 1;
    unsigned ell = 2;
    unsigned k = kDefaultTupleSize;
    double eps = kDefaultEpsilon;
    std::string set_spec;
    std::optional<u64> seed;
    std::string out = "-";
    std::string format = "csv";
    u64 budget = Budget::kDefault;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Header + one row, or one JSON object, with a fixed key order.
class RowEmitter {
public:
    void add(const std::string& key, const std::string& value) { cells_.emplace_back(key, value); json_[key] = value; }
    void add(const std::string& key, u64 value) { cells_.emplace_back(key, std::to_string(value)); json_[key] = value; }
    void add(const std::string& key, i64 value) { cells_.emplace_back(key, std::to_string(value)); json_[key] = value; }
    void add(const std::string& key, unsigned value) { add(key, static_cast<u64>(value)); }
    void add(const std::string& key, bool value) {
        cells_.emplace_back(key, value ? "true" : "false");
        json_[key] = value;
    }
    void add(const std::string& key, double value) {
        cells_.emplace_back(key, format_double(value));
        json_[key] = json_double(value);
    }
    /// Exact integers beyond 64 bits are written as decimal strings in JSON.
    void add_exact(const std::string& key, u128 value) {
        cells_.emplace_back(key, to_decimal(value));
        json_[key] = to_decimal(value);
    }

    void write(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            out << json_.dump() << '\n';
            return;
        }
        std::vector<std::string> keys, values;
        for (const auto& [k, v] : cells_) {
            keys.push_back(k);
            values.push_back(v);
        }
        out << join_csv(keys) << '\n' << join_csv(values) << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> cells_;
    nlohmann::ordered_json json_;
};

namespace detail {

inline void add_common(CLI::App& sub, Invocation& inv, bool need_h) {
    sub.add_option("--p", inv.p, "odd prime modulus")->required();
    auto* h = sub.add_option("--H", inv.h_len, "interval length H");
    if (need_h) h->required();
    sub.add_option("--L", inv.shift, "interval shift L (interval is L+1..L+H)");
    sub.add_option("--s", inv.s, "exponent s in m x^{-s}");
    sub.add_option("--ell", inv.ell, "ell (additive energy order / envelope parameter)");
    sub.add_option("--k", inv.k, "number of terms k in T_k");
    sub.add_option("--eps", inv.eps, "epsilon used by hypothesis checks");
    sub.add_option("--set", inv.set_spec, "file:PATH or random:M");
    sub.add_option("--seed", inv.seed, "seed for random sets");
    sub.add_option("--out", inv.out, "output path, '-' for stdout");
    sub.add_option("--format", inv.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--budget", inv.budget, "work budget per operation");
}

/// --set random:M needs --seed; file sets must not have one. `index`
/// selects an independent random set per factor.
inline ResidueSet load_set(const Invocation& inv, const PrimeContext& ctx, u64 index = 0) {
    const auto& spec = inv.set_spec;
    if (spec.empty()) throw UsageError("--set is required (file:PATH or random:M)");
    if (spec.rfind("random:", 0) == 0) {
        if (!inv.seed) throw UsageError("--set random:M requires --seed");
        const std::string count = spec.substr(7);
        u64 m = 0;
        auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), m);
        if (ec != std::errc() || ptr != count.data() + count.size()) {
            throw UsageError("--set: bad count in '" + spec + "'");
        }
        const u64 seed = index == 0 ? *inv.seed : make_rng({*inv.seed, index})();
        return random_subset(m, seed, ctx);
    }
    if (spec.rfind("file:", 0) == 0) {
        if (inv.seed) throw UsageError("--seed is not allowed with --set file:PATH");
        return set_from_file(spec.substr(5), ctx);
    }
    throw UsageError("--set must be file:PATH or random:M, got '" + spec + "'");
}

class Output {
public:
    explicit Output(const std::string& path, std::ostream& fallback) {
        if (path == "-" || path.empty()) {
            out_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("--out: cannot open '" + path + "' for writing");
            out_ = file_.get();
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_ = nullptr;
};

inline std::vector<u64> parse_u64_list(const std::string& text, const char* flag) {
    std::vector<u64> out;
    for (const auto& item : fplab::detail::split_list(text)) {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw UsageError(std::string(flag) + ": bad value '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline int run_prodset(const Invocation& inv, bool ratio, bool list_missing, std::ostream& stdout_) {
    const PrimeContext ctx(inv.p, false);
    const auto set = detail::load_set(inv, ctx);
    const auto iv = shifted_interval(inv.shift, inv.h_len, ctx);
    const Budget budget{inv.budget};
    const auto rep = ratio ? ratio_set(iv, set, ctx, inv.eps, budget, list_missing)
                           : product_set(iv, set, ctx, inv.eps, budget, list_missing);
    RowEmitter row;
    row.add("object", std::string(ratio ? "ratio_set" : "product_set"));
    row.add("p", inv.p);
    row.add("H", inv.h_len);
    row.add("M", static_cast<u64>(set.size()));
    row.add("L", static_cast<i64>(iv.shift()));
    row.add("size", rep.size);
    row.add("missing", rep.missing);
    row.add("eps", inv.eps);
    row.add("branch", std::string(to_string(rep.hypothesis.branch)));
    row.add("margin_A", rep.hypothesis.margin_long);
    row.add("margin_B", rep.hypothesis.margin_short);
    if (list_missing) {
        std::string joined;
        for (u64 v : rep.missing_residues) joined += (joined.empty() ? "" : ";") + std::to_string(v);
        row.add("missing_residues", joined);
    }
    detail::Output out(inv.out, stdout_);
    row.write(out.stream(), inv.format);
    return kExitOk;
}

inline int run_energy(const Invocation& inv, const std::string& quantity, u64 j_len, std::ostream& stdout_) {
    const PrimeContext ctx(inv.p, quantity == "R");
    const Budget budget{inv.budget};
    RowEmitter row;
    row.add("quantity", quantity);
    row.add("p", inv.p);
    row.add("H", inv.h_len);
    if (quantity == "Jls") {
        const auto iv = shifted_interval(inv.shift, inv.h_len, ctx, true);
        const auto rep = additive_energy_recip(iv, inv.s, inv.ell, ctx, budget);
        row.add("L", static_cast<i64>(iv.shift()));
        row.add("s", inv.s);
        row.add("ell", inv.ell);
        row.add_exact("value", rep.value);
        row.add("envelope", rep.envelope);
        row.add("ratio", static_cast<double>(rep.value) / rep.envelope);
    } else {
        const auto set = detail::load_set(inv, ctx);
        row.add("M", static_cast<u64>(set.size()));
        if (quantity == "R") {
            const auto rep = triple_R(j_len, inv.h_len, set, ctx, budget);
            row.add("J", j_len);
            row.add_exact("value", rep.value);
            row.add("main_term", static_cast<double>(rep.main_term));
            row.add("ratio", static_cast<double>(rep.value) / static_cast<double>(rep.main_term));
        } else if (quantity == "J") {
            const auto value = energy_J(initial_interval(inv.h_len, ctx), set, ctx, budget);
            const auto env = energy_envelope(inv.h_len, set.size(), inv.p);
            row.add_exact("value", value);
            row.add("envelope", env.value);
            row.add("ratio", static_cast<double>(value) / env.value);
        } else if (quantity == "JL") {
            const auto iv = shifted_interval(inv.shift, inv.h_len, ctx);
            const auto value = energy_JL(iv, set, ctx, budget);
            const auto bound = sliding_bound(energy_J(initial_interval(inv.h_len, ctx), set, ctx, budget), set.size());
            row.add("L", static_cast<i64>(iv.shift()));
            row.add_exact("value", value);
            row.add_exact("sliding_bound", bound);
            row.add("within_bound", value <= bound);
        } else if (quantity == "Js") {
            const auto iv = shifted_interval(inv.shift, inv.h_len, ctx, inv.s > 0);
            const auto value = energy_Js(iv, set, inv.s, ctx, budget);
            const auto mirrored = energy_Js(iv, set, -inv.s, ctx, budget);
            const auto env = energy_envelope(inv.h_len, set.size(), inv.p);
            row.add("L", static_cast<i64>(iv.shift()));
            row.add("s", inv.s);
            row.add_exact("value", value);
            row.add_exact("value_minus_s", mirrored);
            row.add("envelope", env.value);
            row.add("ratio", static_cast<double>(value) / env.value);
        } else {
            throw UsageError("--quantity must be one of J, JL, Js, R, Jls");
        }
    }
    detail::Output out(inv.out, stdout_);
    row.write(out.stream(), inv.format);
    return kExitOk;
}

inline int run_expsum(const Invocation& inv, std::optional<u64> a, bool burgess, std::ostream& stdout_) {
    RowEmitter row;
    if (burgess) {
        const PrimeContext ctx(inv.p, true);
        row.add("quantity", std::string("burgess_ratio"));
        row.add("p", inv.p);
        row.add("K", inv.h_len);
        row.add("ratio", burgess_ratio(inv.h_len, ctx));
    } else {
        const PrimeContext ctx(inv.p, false);
        const auto set = detail::load_set(inv, ctx);
        const auto iv = shifted_interval(inv.shift, inv.h_len, ctx, true);
        if (!a) throw UsageError("--a is required for the Kloosterman-fraction sum");
        require_budget(static_cast<long double>(inv.p) * 8, Budget{inv.budget}, "expsum");
        const auto rep = kloosterman_frac_sum(*a % inv.p, set, iv, inv.s, ctx, inv.ell);
        row.add("quantity", std::string("S"));
        row.add("p", inv.p);
        row.add("H", inv.h_len);
        row.add("M", static_cast<u64>(set.size()));
        row.add("L", static_cast<i64>(iv.shift()));
        row.add("s", inv.s);
        row.add("ell", inv.ell);
        row.add("a", *a % inv.p);
        row.add("S", rep.value);
        row.add("envelope", rep.envelope);
        row.add("ratio", rep.ratio());
        row.add("trivial_bound", rep.trivial_bound);
    }
    detail::Output out(inv.out, stdout_);
    row.write(out.stream(), inv.format);
    return kExitOk;
}

inline int run_tk(const Invocation& inv, const std::string& lambdas, std::ostream& stdout_) {
    const PrimeContext ctx(inv.p, false);
    if (inv.k < 2) throw UsageError("--k must be >= 2");
    std::vector<TkFactor> factors;
    for (unsigned i = 0; i < inv.k; ++i) factors.push_back({detail::load_set(inv, ctx, i), inv.shift});
    TkOptions opt;
    opt.epsilon = inv.eps;
    opt.budget = Budget{inv.budget};
    const auto rep = tk_experiment(inv.k, std::move(factors), inv.h_len, inv.s, ctx, opt);
    std::vector<u64> lams;
    if (!lambdas.empty()) {
        lams = detail::parse_u64_list(lambdas, "--lambdas");
    } else if (inv.p <= 64) {
        for (u64 l = 0; l < inv.p; ++l) lams.push_back(l);
    }
    std::string t_values, dev_values;
    for (u64 l : lams) {
        t_values += (t_values.empty() ? "" : ";") + to_decimal(rep.counts[l % inv.p]);
        dev_values += (dev_values.empty() ? "" : ";") + format_double(rep.dev_at(l));
    }
    RowEmitter row;
    row.add("k", rep.k);
    row.add("p", inv.p);
    row.add("H", inv.h_len);
    row.add("M", rep.m_len());
    row.add("L", inv.shift);
    row.add("s", inv.s);
    row.add_exact("mass", rep.mass);
    row.add("main_term", static_cast<double>(rep.main_term()));
    row.add("max_abs_dev", rep.max_abs_dev);
    row.add("mean_abs_dev", rep.mean_abs_dev);
    row.add("hyp_24_17", rep.hypothesis.holds_24_11());
    row.add("hyp_9_5", rep.hypothesis.holds_9_2());
    row.add("hyp_6_5", rep.hypothesis.holds_6_5());
    row.add("strategy", std::string(to_string(rep.strategy)));
    row.add("lambdas", [&] {
        std::string s;
        for (u64 l : lams) s += (s.empty() ? "" : ";") + std::to_string(l % inv.p);
        return s;
    }());
    row.add("T", t_values);
    row.add("dev", dev_values);
    detail::Output out(inv.out, stdout_);
    row.write(out.stream(), inv.format);
    return kExitOk;
}

inline int run_sweep_cmd(const std::string& config_path, const std::string& out_path, const std::string& format,
                         std::optional<unsigned> workers, std::ostream& stdout_) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config: cannot open '" + config_path + "'");
    auto cfg = parse_sweep_config(in);
    if (!format.empty()) cfg.format = format == "json" ? "jsonl" : format;
    if (!out_path.empty()) cfg.out = out_path;
    if (workers) cfg.workers = std::max(1u, *workers);
    detail::Output out(cfg.out, stdout_);
    ReportWriter writer(out.stream(), cfg.format);
    const auto rows = run_sweep(cfg, [&](const ReportRow& r) { writer.row(r); });
    writer.finish(summarize(rows));
    return kExitOk;
}

inline int run_selftest_cmd(std::ostream& stdout_) {
    bool ok = true;
    for (const auto& r : run_selftest()) {
        stdout_ << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) stdout_ << " (" << r.detail << ")";
        stdout_ << '\n';
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitFailure;
}

/// Parses `args` (without the program name) and runs the subcommand.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fplab: exact counting and exponential sums over prime fields"};
    app.require_subcommand(1);
    Invocation inv;

    auto* prodset = app.add_subcommand("prodset", "size of the product set HM (or ratio set M/H)");
    detail::add_common(*prodset, inv, true);
    bool ratio = false, list_missing = false;
    prodset->add_flag("--ratio", ratio, "count M/H instead of HM");
    prodset->add_flag("--missing-list", list_missing, "list the residues not covered (small p)");

    auto* energy = app.add_subcommand("energy", "coincidence counts J, J(L), J_s, R, J_{l,s}");
    detail::add_common(*energy, inv, true);
    std::string quantity = "J";
    u64 j_len = 1;
    energy->add_option("--quantity", quantity, "J | JL | Js | R | Jls")
        ->check(CLI::IsMember({"J", "JL", "Js", "R", "Jls"}));
    energy->add_option("--J", j_len, "length of the first interval of R");

    auto* expsum = app.add_subcommand("expsum", "sum over m of |sum over x of e_p(a m x^{-s})|");
    detail::add_common(*expsum, inv, true);
    std::optional<u64> a;
    bool burgess = false;
    expsum->add_option("--a", a, "multiplier a");
    expsum->add_flag("--burgess", burgess, "report max |S_K(chi)| / (K^{1/2} p^{3/16}) for K = {1..H}");

    auto* tk = app.add_subcommand("tk", "T_k(lambda) for k terms m_i x_i^{-s}");
    detail::add_common(*tk, inv, true);
    std::string lambdas;
    tk->add_option("--lambdas", lambdas, "comma-separated lambdas to print (default: all when p <= 64)");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid from a config file");
    std::string config_path, sweep_out, sweep_format;
    std::optional<unsigned> workers;
    sweep->add_option("--config", config_path, "sweep config file")->required();
    sweep->add_option("--out", sweep_out, "output path (overrides config)");
    sweep->add_option("--format", sweep_format, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json", "jsonl"}));
    sweep->add_option("--workers", workers, "worker threads (overrides config)");

    auto* selftest = app.add_subcommand("selftest", "run embedded oracle checks");

    std::vector<std::string> argv_storage{"fplab"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*prodset) return run_prodset(inv, ratio, list_missing, out);
        if (*energy) return run_energy(inv, quantity, j_len, out);
        if (*expsum) return run_expsum(inv, a, burgess, out);
        if (*tk) return run_tk(inv, lambdas, out);
        if (*sweep) return run_sweep_cmd(config_path, sweep_out, sweep_format, workers, out);
        if (*selftest) return run_selftest_cmd(out);
    } catch (const BudgetExceeded& e) {
        err << "budget refusal: " << e.what() << " (pass a larger --budget)\n";
        return kExitBudget;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace fplab::cli
