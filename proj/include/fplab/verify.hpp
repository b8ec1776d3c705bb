#pragma once

/**
 * @file verify.hpp
 * @brief Parameter sweeps over (p, H, M, L, s, ell, k) with CSV / JSON-lines
 *        reports and log-log exponent fits.
 *
 * Config format: one `key = value` per line, `#` starts a comment, lists are
 * comma-separated. Keys:
 *
 *   quantity  prodset | ratioset | J | JL | Js | R | Jls | S | tk | burgess
 *   primes    list of odd primes
 *   H_exp     list of exponents e, H = ceil(p^e)     (or H = explicit list)
 *   M_exp     list of exponents, M = ceil(p^e)       (or M = explicit list;
 *             omitted: M = H at every point)
 *   J_exp     exponent for the first interval of R, J = floor(p^e) (default 0.25)
 *   L         zero | random | <integer>              (default zero)
 *   s, ell, k lists of integers                      (defaults 1, 2, 6)
 *   a         random | <integer>                     (S only; default random, a != 0)
 *   eps       epsilon of the hypothesis checks      (default 0.05)
 *   seed      base seed                              (default 1)
 *   repeats   instances per grid point               (default 1)
 *   budget    per-instance work budget
 *   workers   worker threads                         (default 1)
 *   format    csv | jsonl                            (default csv)
 *   out       output path (CLI only; "-" = stdout)
 *
 * Grid order (the report order) is primes x H x M x s x ell x k x repeat.
 * Every point draws its instance from a generator seeded with
 * (seed, grid index), so any row can be reproduced in isolation.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fplab/energy.hpp"
#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/prodset.hpp"
#include "fplab/report.hpp"
#include "fplab/sets.hpp"
#include "fplab/spectra.hpp"
#include "fplab/tkcount.hpp"

namespace fplab {

enum class LPolicy { Zero, Random, Explicit };

struct SweepConfig {
    std::string quantity = "prodset";
    std::vector<u64> primes;
    std::vector<double> h_exp;
    std::vector<u64> h_abs;
    std::vector<double> m_exp;
    std::vector<u64> m_abs;
    double j_exp = 0.25;
    LPolicy l_policy = LPolicy::Zero;
    i64 l_value = 0;
    std::vector<i64> s_values{1};
    std::vector<unsigned> ell_values{2};
    std::vector<unsigned> k_values{6};
    std::optional<u64> a_value;  // empty: random nonzero
    double epsilon = 0.05;
    u64 seed = 1;
    unsigned repeats = 1;
    Budget budget{};
    unsigned workers = 1;
    std::string format = "csv";
    std::string out = "-";
};

inline const std::vector<std::string>& sweep_quantities() {
    static const std::vector<std::string> q = {"prodset", "ratioset", "J",  "JL", "Js",
                                               "R",       "Jls",      "S",  "tk", "burgess"};
    return q;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& key, std::size_t line) {
    try {
        std::size_t pos = 0;
        T v{};
        if constexpr (std::is_floating_point_v<T>) {
            v = static_cast<T>(std::stod(text, &pos));
        } else if constexpr (std::is_signed_v<T>) {
            v = static_cast<T>(std::stoll(text, &pos));
        } else {
            if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
            v = static_cast<T>(std::stoull(text, &pos));
        }
        if (pos != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("config line " + std::to_string(line) + ": key '" + key + "': bad value '" + text + "'",
                         line);
    }
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& key, std::size_t line) {
    std::vector<T> out;
    for (const auto& item : split_list(text)) out.push_back(parse_number<T>(item, key, line));
    return out;
}

}  // namespace detail

inline SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig c;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value", lineno);
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        };
        const std::string key = trim(raw.substr(0, eq));
        const std::string val = trim(raw.substr(eq + 1));
        using detail::parse_list;
        using detail::parse_number;
        if (key == "quantity") {
            const auto& qs = sweep_quantities();
            if (std::find(qs.begin(), qs.end(), val) == qs.end()) {
                throw ParseError("config line " + std::to_string(lineno) + ": unknown quantity '" + val + "'", lineno);
            }
            c.quantity = val;
        } else if (key == "primes") {
            c.primes = parse_list<u64>(val, key, lineno);
        } else if (key == "H_exp") {
            c.h_exp = parse_list<double>(val, key, lineno);
        } else if (key == "H") {
            c.h_abs = parse_list<u64>(val, key, lineno);
        } else if (key == "M_exp") {
            c.m_exp = parse_list<double>(val, key, lineno);
        } else if (key == "M") {
            c.m_abs = parse_list<u64>(val, key, lineno);
        } else if (key == "J_exp") {
            c.j_exp = parse_number<double>(val, key, lineno);
        } else if (key == "L") {
            if (val == "zero") {
                c.l_policy = LPolicy::Zero;
            } else if (val == "random") {
                c.l_policy = LPolicy::Random;
            } else {
                c.l_policy = LPolicy::Explicit;
                c.l_value = parse_number<i64>(val, key, lineno);
            }
        } else if (key == "s") {
            c.s_values = parse_list<i64>(val, key, lineno);
        } else if (key == "ell") {
            c.ell_values = parse_list<unsigned>(val, key, lineno);
        } else if (key == "k") {
            c.k_values = parse_list<unsigned>(val, key, lineno);
        } else if (key == "a") {
            if (val == "random") {
                c.a_value.reset();
            } else {
                c.a_value = parse_number<u64>(val, key, lineno);
            }
        } else if (key == "eps") {
            c.epsilon = parse_number<double>(val, key, lineno);
        } else if (key == "seed") {
            c.seed = parse_number<u64>(val, key, lineno);
        } else if (key == "repeats") {
            c.repeats = parse_number<unsigned>(val, key, lineno);
        } else if (key == "budget") {
            c.budget.max_work = parse_number<u64>(val, key, lineno);
        } else if (key == "workers") {
            c.workers = std::max(1u, parse_number<unsigned>(val, key, lineno));
        } else if (key == "format") {
            if (val != "csv" && val != "jsonl") {
                throw ParseError("config line " + std::to_string(lineno) + ": format must be csv or jsonl", lineno);
            }
            c.format = val;
        } else if (key == "out") {
            c.out = val;
        } else {
            throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
        }
    }
    if (!c.h_exp.empty() && !c.h_abs.empty()) throw ParseError("config: give either H_exp or H, not both", 0);
    if (!c.m_exp.empty() && !c.m_abs.empty()) throw ParseError("config: give either M_exp or M, not both", 0);
    return c;
}

inline SweepConfig parse_sweep_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_config(in);
}

struct ReportRow {
    std::size_t index = 0;
    std::string quantity;
    u64 p = 0;
    u64 h_len = 0;
    u64 m_len = 0;
    i64 shift = 0;
    i64 s = 0;
    unsigned ell = 0;
    unsigned k = 0;
    u64 a = 0;
    u64 seed = 0;         // instance seed; the whole instance is drawn from make_rng({seed})
    std::string measured;  // exact decimal for integer counts
    double measured_value = 0;
    double envelope = 0;
    double ratio = 0;
    std::string hypothesis;  // branch / flags, quantity specific
    bool hypothesis_ok = false;
    double margin = 0;
    std::string status = "ok";  // ok | skipped | error
    std::string reason;         // machine-readable code when not ok
};

inline const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "index", "quantity", "p",     "H",          "M",             "L",      "s",      "ell", "k",
        "a",     "seed",     "measured", "envelope", "ratio", "hypothesis", "hypothesis_ok", "margin", "status",
        "reason"};
    return cols;
}

inline std::vector<std::string> row_cells(const ReportRow& r) {
    return {std::to_string(r.index),
            r.quantity,
            std::to_string(r.p),
            std::to_string(r.h_len),
            std::to_string(r.m_len),
            std::to_string(r.shift),
            std::to_string(r.s),
            std::to_string(r.ell),
            std::to_string(r.k),
            std::to_string(r.a),
            std::to_string(r.seed),
            r.measured,
            format_double(r.envelope),
            format_double(r.ratio),
            r.hypothesis,
            r.hypothesis_ok ? "true" : "false",
            format_double(r.margin),
            r.status,
            r.reason};
}

inline std::string csv_header() { return join_csv(report_columns()); }
inline std::string to_csv(const ReportRow& r) { return join_csv(row_cells(r)); }

inline nlohmann::ordered_json to_json(const ReportRow& r) {
    nlohmann::ordered_json j;
    j["index"] = r.index;
    j["quantity"] = r.quantity;
    j["p"] = r.p;
    j["H"] = r.h_len;
    j["M"] = r.m_len;
    j["L"] = r.shift;
    j["s"] = r.s;
    j["ell"] = r.ell;
    j["k"] = r.k;
    j["a"] = r.a;
    j["seed"] = r.seed;
    j["measured"] = r.measured;
    j["envelope"] = json_double(r.envelope);
    j["ratio"] = json_double(r.ratio);
    j["hypothesis"] = r.hypothesis;
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["margin"] = json_double(r.margin);
    j["status"] = r.status;
    j["reason"] = r.reason;
    return j;
}

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t skipped = 0;
    std::size_t errors = 0;
    double max_ratio = 0;  // the sweep's fitted constant
};

inline SweepSummary summarize(const std::vector<ReportRow>& rows) {
    SweepSummary s;
    for (const auto& r : rows) {
        ++s.rows;
        if (r.status == "skipped") ++s.skipped;
        if (r.status == "error") ++s.errors;
        if (r.status == "ok" && std::isfinite(r.ratio)) s.max_ratio = std::max(s.max_ratio, r.ratio);
    }
    return s;
}

struct GridPoint {
    std::size_t index = 0;
    u64 p = 0;
    u64 h_len = 0;
    u64 m_len = 0;
    i64 s = 1;
    unsigned ell = 2;
    unsigned k = 6;
    unsigned repeat = 0;
};

inline u64 ceil_power(u64 p, double e) {
    // ceil(p^e), nudged so that exact powers are not pushed up by rounding
    const double v = std::pow(static_cast<double>(p), e);
    return static_cast<u64>(std::ceil(v * (1.0 - 1e-12)));
}

inline std::vector<GridPoint> expand_grid(const SweepConfig& c) {
    std::vector<GridPoint> grid;
    for (u64 p : c.primes) {
        std::vector<u64> hs = c.h_abs;
        for (double e : c.h_exp) hs.push_back(ceil_power(p, e));
        for (std::size_t hi = 0; hi < hs.size(); ++hi) {
            std::vector<u64> ms = c.m_abs;
            for (double e : c.m_exp) ms.push_back(ceil_power(p, e));
            if (c.m_abs.empty() && c.m_exp.empty()) ms = {hs[hi]};
            for (u64 m : ms) {
                for (i64 s : c.s_values) {
                    for (unsigned ell : c.ell_values) {
                        for (unsigned k : c.k_values) {
                            for (unsigned rep = 0; rep < c.repeats; ++rep) {
                                grid.push_back({grid.size(), p, hs[hi], m, s, ell, k, rep});
                            }
                        }
                    }
                }
            }
        }
    }
    return grid;
}

/// Seed of grid point `index`. Within a point, draws come from
/// make_rng({seed}) in this order: L (when random), then one set seed per
/// set (one for most quantities, k for tk), then a (S with random a).
inline u64 instance_seed(u64 base_seed, std::size_t index) { return make_rng({base_seed, static_cast<u64>(index)})(); }

inline std::string u128_measure(u128 v, double& as_double) {
    as_double = static_cast<double>(v);
    return to_decimal(v);
}

/// Evaluates one grid point. Invalid instances come back as skipped rows
/// with a reason code; unexpected failures as error rows.
inline ReportRow run_point(const SweepConfig& c, const GridPoint& g) {
    ReportRow r;
    r.index = g.index;
    r.quantity = c.quantity;
    r.p = g.p;
    r.h_len = g.h_len;
    r.m_len = g.m_len;
    r.s = g.s;
    r.ell = g.ell;
    r.k = g.k;
    r.seed = instance_seed(c.seed, g.index);
    auto rng = make_rng({r.seed});
    auto skip = [&](const std::string& code) {
        r.status = "skipped";
        r.reason = code;
        return r;
    };
    try {
        if (g.p < 3 || g.p >= kMaxPrime || !is_prime(g.p)) return skip("not_prime");
        if (g.h_len < 1 || g.h_len > g.p - 1) return skip("H_out_of_range");
        if (g.m_len < 1 || g.m_len > g.p - 1) return skip("M_out_of_range");
        const PrimeContext ctx(g.p, c.quantity == "R" || c.quantity == "burgess");
        switch (c.l_policy) {
            case LPolicy::Zero: r.shift = 0; break;
            case LPolicy::Random: r.shift = static_cast<i64>(uniform_below(rng, g.p)); break;
            case LPolicy::Explicit: r.shift = static_cast<i64>(ctx.reduce(c.l_value)); break;
        }
        const u64 set_seed = rng();
        const auto& q = c.quantity;
        const double eps = c.epsilon;
        if (q == "prodset" || q == "ratioset") {
            const auto set = random_subset(g.m_len, set_seed, ctx);
            const auto iv = shifted_interval(r.shift, g.h_len, ctx);
            if (q == "ratioset" && iv.contains_zero()) return skip("denominator_unsafe");
            const auto rep = q == "prodset" ? product_set(iv, set, ctx, eps, c.budget)
                                            : ratio_set(iv, set, ctx, eps, c.budget);
            r.measured = std::to_string(rep.missing);
            r.measured_value = static_cast<double>(rep.missing);
            r.envelope = static_cast<double>(g.p);
            r.ratio = r.measured_value / r.envelope;
            r.hypothesis = to_string(rep.hypothesis.branch);
            r.hypothesis_ok = rep.hypothesis.branch != CoverageBranch::Neither;
            r.margin = std::max(rep.hypothesis.margin_long, rep.hypothesis.margin_short);
        } else if (q == "J" || q == "JL" || q == "Js") {
            const auto set = random_subset(g.m_len, set_seed, ctx);
            if (q == "J") r.shift = 0;
            const auto iv = shifted_interval(r.shift, g.h_len, ctx);
            if (q == "Js" && g.s > 0 && iv.contains_zero()) return skip("denominator_unsafe");
            const u128 value = q == "Js" ? energy_Js(iv, set, g.s, ctx, c.budget) : energy_JL(iv, set, ctx, c.budget);
            r.measured = u128_measure(value, r.measured_value);
            if (q == "JL") {
                const u128 bound = sliding_bound(energy_J(initial_interval(g.h_len, ctx), set, ctx, c.budget), g.m_len);
                r.envelope = static_cast<double>(bound);
                r.hypothesis = "J(L)<=2J+M^2";
                r.hypothesis_ok = value <= bound;
            } else {
                const auto env = energy_envelope(g.h_len, g.m_len, g.p);
                r.envelope = env.value;
                r.hypothesis = "branch" + std::to_string(static_cast<int>(env.branch) + 1);
                r.hypothesis_ok = true;
                if (q == "Js") {
                    const bool sym = energy_Js(iv, set, -g.s, ctx, c.budget) == value;
                    r.hypothesis += sym ? ";Js==J-s" : ";Js!=J-s";
                    r.hypothesis_ok = sym;
                }
            }
            r.ratio = r.measured_value / r.envelope;
        } else if (q == "R") {
            const auto set = random_subset(g.m_len, set_seed, ctx);
            const auto j_len = std::max<u64>(1, static_cast<u64>(std::floor(std::pow(static_cast<double>(g.p), c.j_exp))));
            const auto rep = triple_R(j_len, g.h_len, set, ctx, c.budget);
            r.measured = u128_measure(rep.value, r.measured_value);
            r.envelope = static_cast<double>(rep.main_term);
            r.ratio = r.measured_value / r.envelope;
            r.hypothesis = "J=" + std::to_string(j_len);
            r.hypothesis_ok = true;
        } else if (q == "Jls") {
            const auto iv = shifted_interval(r.shift, g.h_len, ctx);
            if (iv.contains_zero()) return skip("denominator_unsafe");
            const auto rep = additive_energy_recip(iv, g.s, g.ell, ctx, c.budget);
            r.measured = u128_measure(rep.value, r.measured_value);
            r.envelope = rep.envelope;
            r.ratio = r.measured_value / r.envelope;
            r.hypothesis = to_string(rep.strategy);
            r.hypothesis_ok = true;
        } else if (q == "S") {
            const auto set = random_subset(g.m_len, set_seed, ctx);
            const auto iv = shifted_interval(r.shift, g.h_len, ctx);
            if (iv.contains_zero()) return skip("denominator_unsafe");
            r.a = c.a_value ? *c.a_value % g.p : 1 + uniform_below(rng, g.p - 1);
            require_budget(static_cast<long double>(g.p) * 8, c.budget, "S");
            const auto rep = kloosterman_frac_sum(r.a, set, iv, g.s, ctx, g.ell);
            r.measured = format_double(rep.value);
            r.measured_value = rep.value;
            r.envelope = rep.envelope;
            r.ratio = rep.ratio();
            r.hypothesis_ok = rep.value <= rep.trivial_bound;
            r.hypothesis = r.hypothesis_ok ? "S<=HM" : "S>HM";
        } else if (q == "tk") {
            if (g.k < 2) return skip("k_too_small");
            std::vector<TkFactor> factors;
            for (unsigned i = 0; i < g.k; ++i) {
                factors.push_back({random_subset(g.m_len, i == 0 ? set_seed : rng(), ctx), r.shift});
            }
            if (g.s > 0 && shifted_interval(r.shift, g.h_len, ctx).contains_zero()) return skip("denominator_unsafe");
            TkOptions opt;
            opt.epsilon = eps;
            opt.budget = c.budget;
            const auto rep = tk_experiment(g.k, std::move(factors), g.h_len, g.s, ctx, opt);
            r.measured = format_double(rep.max_abs_dev);
            r.measured_value = rep.max_abs_dev;
            r.envelope = 1.0;
            r.ratio = rep.max_abs_dev;
            const auto& h = rep.hypothesis;
            r.hypothesis = std::string("24/17:") + (h.holds_24_11() ? "1" : "0") + ";9/5:" + (h.holds_9_2() ? "1" : "0") +
                           ";6/5:" + (h.holds_6_5() ? "1" : "0");
            r.hypothesis_ok = h.all();
            r.margin = std::min({h.margin_24_11, h.margin_9_2, h.margin_6_5});
        } else if (q == "burgess") {
            const double ratio = burgess_ratio(g.h_len, ctx);
            r.measured = format_double(ratio);
            r.measured_value = ratio;
            r.envelope = 1.0;
            r.ratio = ratio;
            r.hypothesis = "K=" + std::to_string(g.h_len);
            r.hypothesis_ok = std::isfinite(ratio);
        } else {
            return skip("unknown_quantity");
        }
    } catch (const BudgetExceeded&) {
        return skip("budget");
    } catch (const DomainError&) {
        return skip("invalid_instance");
    } catch (const std::exception& e) {
        r.status = "error";
        r.reason = std::string("error:") + e.what();
    }
    return r;
}

/// Runs the whole grid, emitting rows through `emit` in grid order as soon
/// as every earlier row is done.
inline std::vector<ReportRow> run_sweep(const SweepConfig& c, const std::function<void(const ReportRow&)>& emit = {}) {
    const auto grid = expand_grid(c);
    std::vector<std::optional<ReportRow>> done(grid.size());
    std::vector<ReportRow> rows;
    rows.reserve(grid.size());
    std::mutex mu;
    std::size_t next_emit = 0;
    std::atomic<std::size_t> next_task{0};
    auto worker = [&] {
        for (std::size_t i = next_task++; i < grid.size(); i = next_task++) {
            auto row = run_point(c, grid[i]);
            std::lock_guard lock(mu);
            done[i] = std::move(row);
            while (next_emit < grid.size() && done[next_emit]) {
                if (emit) emit(*done[next_emit]);
                rows.push_back(*done[next_emit]);
                ++next_emit;
            }
        }
    };
    const unsigned n = std::min<unsigned>(c.workers, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return rows;
}

/// Streams rows as CSV or JSON lines. CSV ends with a `# summary` comment
/// line carrying the sweep-wide maximum ratio (the fitted constant); JSON
/// lines end with a {"summary": ...} object.
class ReportWriter {
public:
    ReportWriter(std::ostream& out, std::string format) : out_(out), format_(std::move(format)) {
        if (format_ == "csv") out_ << csv_header() << '\n';
    }

    void row(const ReportRow& r) {
        if (format_ == "csv") {
            out_ << to_csv(r) << '\n';
        } else {
            out_ << to_json(r).dump() << '\n';
        }
        out_.flush();
    }

    void finish(const SweepSummary& s) {
        if (format_ == "csv") {
            out_ << "# summary rows=" << s.rows << " skipped=" << s.skipped << " errors=" << s.errors
                 << " max_ratio=" << format_double(s.max_ratio) << '\n';
        } else {
            nlohmann::ordered_json j;
            j["summary"] = {{"rows", s.rows},
                            {"skipped", s.skipped},
                            {"errors", s.errors},
                            {"max_ratio", json_double(s.max_ratio)}};
            out_ << j.dump() << '\n';
        }
    }

private:
    std::ostream& out_;
    std::string format_;
};

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // root-mean-square residual in log space
};

inline double row_column(const ReportRow& r, const std::string& name) {
    if (name == "p") return static_cast<double>(r.p);
    if (name == "H") return static_cast<double>(r.h_len);
    if (name == "M") return static_cast<double>(r.m_len);
    if (name == "HM") return static_cast<double>(r.h_len) * static_cast<double>(r.m_len);
    if (name == "measured") return r.measured_value;
    if (name == "envelope") return r.envelope;
    if (name == "ratio") return r.ratio;
    throw DomainError("fit_exponent: unknown column '" + name + "'");
}

/// Least squares fit of log y = slope log x + intercept.
inline ExponentFit fit_exponent(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw DomainError("fit_exponent: need at least 3 points");
    double sx = 0, sy = 0;
    std::vector<std::pair<double, double>> logs;
    for (auto [x, y] : points) {
        if (!(x > 0) || !(y > 0)) throw DomainError("fit_exponent: x and y must be positive");
        logs.emplace_back(std::log(x), std::log(y));
        sx += logs.back().first;
        sy += logs.back().second;
    }
    const double n = static_cast<double>(logs.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [lx, ly] : logs) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
    }
    if (sxx <= 1e-24 * n) throw DomainError("fit_exponent: degenerate fit (x is constant)");
    ExponentFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (auto [lx, ly] : logs) {
        const double e = ly - (f.slope * lx + f.intercept);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

inline ExponentFit fit_exponent(const std::vector<ReportRow>& rows, const std::string& x_col, const std::string& y_col) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.status != "ok") continue;
        pts.emplace_back(row_column(r, x_col), row_column(r, y_col));
    }
    return fit_exponent(pts);
}

}  // namespace fplab
