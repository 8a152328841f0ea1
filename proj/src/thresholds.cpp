#include "qreduce/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qreduce/galois.hpp"
#include "qreduce/noise.hpp"

namespace qreduce {

std::string to_string(ThresholdKind kind) {
    switch (kind) {
        case ThresholdKind::classical: return "classical";
        case ThresholdKind::bw: return "bw";
        case ThresholdKind::gs: return "gs";
        case ThresholdKind::kv: return "kv";
    }
    return "?";
}

ThresholdKind parse_threshold_kind(const std::string& name) {
    if (name == "classical") return ThresholdKind::classical;
    if (name == "bw" || name == "dqi") return ThresholdKind::bw;
    if (name == "gs") return ThresholdKind::gs;
    if (name == "kv") return ThresholdKind::kv;
    throw std::invalid_argument("unknown threshold kind '" + name + "' (expected classical, bw, gs or kv)");
}

ThresholdQuery ThresholdQuery::interval(double rate, std::uint32_t q, std::uint32_t z) {
    ThresholdQuery query;
    query.kind = ThresholdKind::kv;
    query.rate = rate;
    query.rho = (2.0 * z + 1.0) / static_cast<double>(q);
    query.q = q;
    query.z = z;
    return query;
}

void ThresholdQuery::validate() const {
    if (!(rate > 0.0 && rate < 1.0)) throw std::invalid_argument("rate must lie in (0, 1)");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (q.has_value() != z.has_value()) throw std::invalid_argument("q and z must be given together");
    if (q) {
        if (kind != ThresholdKind::kv) throw std::invalid_argument("q and z apply to kv only");
        PrimeField field(*q);
        if (2ULL * *z + 1 >= *q) throw std::invalid_argument("interval size 2z+1 must be smaller than q");
        if (std::abs(rho * *q - (2.0 * *z + 1.0)) > 1e-9) throw std::invalid_argument("kv requires rho*q = 2z+1");
    }
}

double condition_rhs(const ThresholdQuery& query, double tau) {
    switch (query.kind) {
        case ThresholdKind::bw: return center_probability(tau, query.rho);
        case ThresholdKind::gs: {
            const double c = center_probability(tau, query.rho);
            return c * c;
        }
        case ThresholdKind::kv:
            return query.q ? fourth_power_bound(*query.q, *query.z, tau) : fourth_power_bound(tau, query.rho);
        case ThresholdKind::classical: break;
    }
    throw std::invalid_argument("classical baseline has no condition");
}

double condition_lhs(const ThresholdQuery& query) {
    switch (query.kind) {
        case ThresholdKind::bw: return 1.0 - query.rate / 2.0;
        case ThresholdKind::gs:
        case ThresholdKind::kv: return 1.0 - query.rate;
        case ThresholdKind::classical: break;
    }
    throw std::invalid_argument("classical baseline has no condition");
}

bool condition_holds(const ThresholdQuery& query, double tau, double slack) {
    return condition_lhs(query) <= condition_rhs(query, tau) + slack;
}

double binary_threshold(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("error fraction must lie in [0, 1]");
    return 0.5 + std::sqrt(t * (1.0 - t));
}

double tau_max(const ThresholdQuery& query, const Tolerances& tol) {
    query.validate();
    const double rho = query.rho;
    if (query.kind == ThresholdKind::classical) return rho + query.rate * (1.0 - rho);

    const auto ok = [&](double tau) { return condition_holds(query, tau, tol.condition); };
    if (!ok(rho)) throw std::domain_error("condition infeasible");
    if (ok(1.0)) return 1.0;

    constexpr int kGrid = 1000;
    bool monotone = true;
    double prev = condition_rhs(query, rho);
    for (int i = 1; i <= kGrid && monotone; ++i) {
        const double cur = condition_rhs(query, rho + (1.0 - rho) * i / kGrid);
        monotone = cur <= prev + tol.condition;
        prev = cur;
    }

    double lo = rho, hi = 1.0;
    if (!monotone) {
        // Largest feasible point of a fine scan, then bisect towards the next one.
        constexpr int kFine = 200000;
        for (int i = kFine; i-- > 0;) {
            const double t = rho + (1.0 - rho) * i / kFine;
            if (ok(t)) {
                lo = t;
                hi = rho + (1.0 - rho) * (i + 1) / kFine;
                break;
            }
        }
    }
    while (hi - lo > tol.bisection) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

double tau_max(ThresholdKind kind, double rate, double rho) {
    ThresholdQuery query;
    query.kind = kind;
    query.rate = rate;
    query.rho = rho;
    return tau_max(query);
}

std::uint32_t nearest_interval_radius(std::uint32_t q, double rho) {
    PrimeField field(q);
    if (q < 3) throw std::invalid_argument("no proper interval in F_2");
    const double exact = (rho * q - 1.0) / 2.0;
    const std::uint32_t max_z = (q - 2) / 2;  // 2z + 1 < q
    const double clamped = std::clamp(exact, 0.0, static_cast<double>(max_z));
    return static_cast<std::uint32_t>(std::lround(clamped));
}

ThresholdRow threshold_row(double rate, double rho, std::string label, std::optional<std::uint32_t> kv_prime) {
    ThresholdRow row;
    row.label = std::move(label);
    row.rate = rate;
    row.rho = rho;
    row.classical = tau_max(ThresholdKind::classical, rate, rho);
    row.bw = tau_max(ThresholdKind::bw, rate, rho);
    row.gs = tau_max(ThresholdKind::gs, rate, rho);
    if (kv_prime) {
        const auto query = ThresholdQuery::interval(rate, *kv_prime, nearest_interval_radius(*kv_prime, rho));
        row.kv = tau_max(query);
        row.kv_rho = query.rho;
    } else {
        row.kv = tau_max(ThresholdKind::kv, rate, rho);
        row.kv_rho = rho;
    }
    row.bw_saturated = row.bw >= 1.0;
    row.gs_saturated = row.gs >= 1.0;
    row.kv_saturated = row.kv >= 1.0;
    return row;
}

RhoOptimum optimize_over_rho(ThresholdKind kind, double target) {
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("classical target must lie in (0, 1)");
    const auto value = [&](double rho) {
        const double rate = (target - rho) / (1.0 - rho);
        if (!(rate > 0.0 && rate < 1.0) || !(rho > 0.0 && rho < 1.0))
            return -std::numeric_limits<double>::infinity();
        try {
            return tau_max(kind, rate, rho);
        } catch (const std::domain_error&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    constexpr double kStep = 1e-3;
    double best_rho = kStep, best = value(kStep);
    for (int i = 2; i * kStep < target; ++i) {
        const double rho = i * kStep;
        const double v = value(rho);
        if (v > best) best = v, best_rho = rho;
    }

    double a = std::max(best_rho - kStep, 1e-9);
    double b = std::min(best_rho + kStep, target - 1e-9);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = value(c), fd = value(d);
    while (b - a > 1e-8) {
        if (fc >= fd) {
            b = d, d = c, fd = fc;
            c = b - phi * (b - a), fc = value(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + phi * (b - a), fd = value(d);
        }
    }
    double rho = 0.5 * (a + b);
    double tau = value(rho);
    if (best > tau) rho = best_rho, tau = best;
    return {(target - rho) / (1.0 - rho), rho, tau};
}

std::vector<ThresholdRow> table1() {
    std::vector<ThresholdRow> rows;
    rows.push_back(threshold_row(0.1, 0.5, "P1 point"));
    rows.push_back(threshold_row(0.75, 0.5, "P2 point"));
    rows.push_back(threshold_row(2.0 / 3.0, 0.5, "P3 point"));
    for (auto kind : {ThresholdKind::bw, ThresholdKind::gs, ThresholdKind::kv}) {
        const auto opt = optimize_over_rho(kind, 0.55);
        rows.push_back(threshold_row(opt.rate, opt.rho, "optimum of " + to_string(kind) + " at classical 0.55"));
    }
    return rows;
}

const std::vector<Table1Reference>& table1_reference() {
    static const std::vector<Table1Reference> ref{
        {0.1, 0.5, 0.55, 0.718, 0.721, 0.722},         {0.75, 0.5, 0.875, 0.984, 1.0, 1.0},
        {2.0 / 3.0, 0.5, 0.833, 0.971, 0.994, 1.0},    {0.234, 0.413, 0.55, 0.749, 0.760, 0.763},
        {0.259, 0.393, 0.55, 0.748, 0.761, 0.765},     {0.267, 0.386, 0.55, 0.748, 0.761, 0.765},
    };
    return ref;
}

double table1_max_deviation(const std::vector<ThresholdRow>& rows) {
    const auto& ref = table1_reference();
    if (rows.size() != ref.size()) throw std::invalid_argument("expected six rows");
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& p = ref[i];
        for (double d : {r.rate - p.rate, r.rho - p.rho, r.classical - p.classical, r.bw - p.bw, r.gs - p.gs,
                         r.kv - p.kv})
            worst = std::max(worst, std::abs(d));
    }
    return worst;
}

std::vector<ThresholdRow> figure1_curves(double rho, const std::vector<double>& rates,
                                         std::optional<std::uint32_t> kv_prime) {
    std::vector<ThresholdRow> rows;
    rows.reserve(rates.size());
    for (double r : rates) rows.push_back(threshold_row(r, rho, {}, kv_prime));
    return rows;
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto first = spec.find(':');
    const auto second = first == std::string::npos ? std::string::npos : spec.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("grid must have the form a:b:step");
    double a = 0, b = 0, step = 0;
    try {
        std::size_t used = 0;
        a = std::stod(spec.substr(0, first), &used);
        if (used != first) throw std::invalid_argument("");
        b = std::stod(spec.substr(first + 1, second - first - 1), &used);
        if (used != second - first - 1) throw std::invalid_argument("");
        step = std::stod(spec.substr(second + 1), &used);
        if (used != spec.size() - second - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must have the form a:b:step, got '" + spec + "'");
    }
    if (!(step > 0.0) || b < a) throw std::invalid_argument("grid needs step > 0 and a <= b");
    std::vector<double> out;
    for (long i = 0;; ++i) {
        const double x = a + static_cast<double>(i) * step;
        if (x > b + step / 2) break;
        out.push_back(x);
        if (out.size() > 1000000) throw std::invalid_argument("grid too large");
    }
    return out;
}

std::string curves_csv(const std::vector<ThresholdRow>& rows) {
    std::string out = "R,rho,tau_classical,tau_bw,tau_gs,tau_kv\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.rate, r.rho, r.classical, r.bw, r.gs,
                      r.kv);
        out += buf;
    }
    return out;
}

}  // namespace qreduce
