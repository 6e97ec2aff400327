#include "ordgap/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "ordgap/approx.hpp"
#include "ordgap/quadrature.hpp"

namespace ordgap {

namespace {

std::string fmt_param(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("distribution spec: value of '" + key + "' is not a number: " + text);
    return v;
}

struct KvList {
    std::string name;
    std::map<std::string, std::string> kv;

    double num(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ParseError("distribution spec: missing parameter '" + key + "' for " + name);
        return parse_number(key, it->second);
    }
    double num_or(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : parse_number(key, it->second);
    }
    std::string str_or(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
    void expect_keys(std::initializer_list<const char*> allowed) const {
        for (const auto& [k, v] : kv) {
            bool ok = false;
            for (const char* a : allowed)
                if (k == a) ok = true;
            if (!ok) throw ParseError("distribution spec: unknown parameter '" + k + "' for " + name);
        }
    }
};

KvList parse_spec_string(const std::string& text) {
    KvList out;
    auto colon = text.find(':');
    out.name = text.substr(0, colon);
    if (out.name.empty()) throw ParseError("distribution spec: empty name");
    if (colon == std::string::npos) return out;
    std::string rest = text.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ParseError("distribution spec: empty key=value item");
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError("distribution spec: expected key=value, got '" + item + "'");
        out.kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Built-in zoo
// ---------------------------------------------------------------------------

DistributionSpec make_exponential(double lambda, double L) {
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw DomainError("exp: lambda must be positive and finite");
    if (!std::isfinite(L)) throw DomainError("exp: L must be finite");
    DistributionSpec d;
    d.cdf = [=](double x) { return x <= L ? 0.0 : -std::expm1(-lambda * (x - L)); };
    d.log_survival = [=](double x) { return x <= L ? 0.0 : lambda * (x - L); };
    d.hazard = [=](double) { return lambda; };
    d.inverse_hazard = [=](double) { return 1.0 / lambda; };
    d.inverse_hazard_slope = [](double) { return 0.0; };
    d.quantile = [=](double p) { return L - std::log1p(-p) / lambda; };
    d.bounds = {L, kInf, 0.0};
    d.name = "exp:lambda=" + fmt_param(lambda) + ",L=" + fmt_param(L);
    d.known_ihr = IhrStatus::yes;
    d.shifted_exponential = true;
    d.truncated_exponential = true;  // the M = inf member of the family
    d.mu_at_upper_minus = 1.0 / lambda;
    return d;
}

DistributionSpec make_truncated_exponential(double lambda, double L, double M) {
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw DomainError("truncexp: lambda must be positive and finite");
    if (!std::isfinite(L) || !std::isfinite(M) || !(L < M))
        throw DomainError("truncexp: requires finite L < M");
    const double cdf_at_upper = -std::expm1(-lambda * (M - L));  // F(M-)
    DistributionSpec d;
    d.cdf = [=](double x) {
        if (x <= L) return 0.0;
        if (x >= M) return 1.0;
        return -std::expm1(-lambda * (x - L));
    };
    d.log_survival = [=](double x) {
        if (x <= L) return 0.0;
        if (x >= M) return kInf;
        return lambda * (x - L);
    };
    d.hazard = [=](double) { return lambda; };
    d.inverse_hazard = [=](double) { return 1.0 / lambda; };
    d.inverse_hazard_slope = [](double) { return 0.0; };
    d.quantile = [=](double p) {
        if (p >= cdf_at_upper) return M;
        return L - std::log1p(-p) / lambda;
    };
    d.bounds = {L, M, std::exp(-lambda * (M - L))};
    d.name = "truncexp:lambda=" + fmt_param(lambda) + ",L=" + fmt_param(L) + ",M=" + fmt_param(M);
    d.known_ihr = IhrStatus::yes;
    d.truncated_exponential = true;
    d.mu_at_upper_minus = 1.0 / lambda;
    return d;
}

DistributionSpec make_uniform(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("uniform: requires finite a < b");
    const double w = b - a;
    DistributionSpec d;
    d.cdf = [=](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        return (x - a) / w;
    };
    d.log_survival = [=](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return kInf;
        return -std::log((b - x) / w);
    };
    d.hazard = [=](double x) { return x < b ? 1.0 / (b - x) : kInf; };
    d.inverse_hazard = [=](double x) { return x < b ? b - x : 0.0; };
    d.inverse_hazard_slope = [](double) { return -1.0; };
    d.quantile = [=](double p) { return a + p * w; };
    d.bounds = {a, b, 0.0};
    d.name = "uniform:a=" + fmt_param(a) + ",b=" + fmt_param(b);
    d.known_ihr = IhrStatus::yes;
    d.mu_at_upper_minus = 0.0;
    return d;
}

DistributionSpec make_weibull(double shape, double scale) {
    if (!(shape > 0) || !(scale > 0) || !std::isfinite(shape) || !std::isfinite(scale))
        throw DomainError("weibull: shape and scale must be positive and finite");
    DistributionSpec d;
    d.log_survival = [=](double x) { return x <= 0 ? 0.0 : std::pow(x / scale, shape); };
    d.cdf = [=](double x) { return x <= 0 ? 0.0 : -std::expm1(-std::pow(x / scale, shape)); };
    d.hazard = [=](double x) { return (shape / scale) * std::pow(x / scale, shape - 1.0); };
    d.inverse_hazard = [=](double x) { return (scale / shape) * std::pow(x / scale, 1.0 - shape); };
    d.inverse_hazard_slope = [=](double x) {
        return ((1.0 - shape) / shape) * std::pow(x / scale, -shape);
    };
    d.quantile = [=](double p) { return scale * std::pow(-std::log1p(-p), 1.0 / shape); };
    d.bounds = {0.0, kInf, 0.0};
    d.name = "weibull:shape=" + fmt_param(shape) + ",scale=" + fmt_param(scale);
    d.known_ihr = shape >= 1.0 ? IhrStatus::yes : IhrStatus::no;
    if (shape == 1.0) {
        d.shifted_exponential = true;
        d.truncated_exponential = true;
    }
    d.mu_at_upper_minus = shape > 1.0 ? 0.0 : (shape == 1.0 ? scale : kInf);
    return d;
}

// Hazard a * exp(b x) on (0, inf).
DistributionSpec make_gompertz(double a, double b) {
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("gompertz: a and b must be positive and finite");
    DistributionSpec d;
    d.log_survival = [=](double x) { return x <= 0 ? 0.0 : (a / b) * std::expm1(b * x); };
    d.cdf = [=](double x) { return x <= 0 ? 0.0 : -std::expm1(-(a / b) * std::expm1(b * x)); };
    d.hazard = [=](double x) { return a * std::exp(b * x); };
    d.inverse_hazard = [=](double x) { return std::exp(-b * x) / a; };
    d.inverse_hazard_slope = [=](double x) { return -(b / a) * std::exp(-b * x); };
    d.quantile = [=](double p) { return std::log1p(-b * std::log1p(-p) / a) / b; };
    d.bounds = {0.0, kInf, 0.0};
    d.name = "gompertz:a=" + fmt_param(a) + ",b=" + fmt_param(b);
    d.known_ihr = IhrStatus::yes;
    d.mu_at_upper_minus = 0.0;
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hazard-defined constructors
// ---------------------------------------------------------------------------

namespace {

struct HazardState {
    std::function<double(double)> lam;
    double L = 0.0;
    double M = kInf;
    std::vector<double> xs;    // ascending checkpoints, xs[0] = L
    std::vector<double> phis;  // phi at each checkpoint, phis[0] = 0
    double phi_at_upper = kInf;  // phi(M-); finite means an atom at M
};

double segment_phi(const std::function<double(double)>& lam, double a, double b) {
    auto q = integrate_adaptive(lam, a, b, 1e-12, 1e-16, 1500);
    return q.value;
}

double phi_lookup(const HazardState& st, double x) {
    if (x <= st.L) return 0.0;
    if (std::isfinite(st.M) && x >= st.M) return kInf;
    if (x >= st.xs.back()) {
        // Beyond the ladder only survival below exp(-phi_max) remains; extend
        // with the last hazard value.
        return st.phis.back() + (x - st.xs.back()) * st.lam(st.xs.back());
    }
    auto it = std::upper_bound(st.xs.begin(), st.xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - st.xs.begin()) - 1;
    return st.phis[i] + segment_phi(st.lam, st.xs[i], x);
}

double quantile_lookup(const HazardState& st, double p) {
    const double phi_t = -std::log1p(-p);
    if (std::isfinite(st.M) && phi_t >= st.phi_at_upper) return st.M;
    if (phi_t >= st.phis.back()) {
        double lam_end = st.lam(st.xs.back());
        return st.xs.back() + (phi_t - st.phis.back()) / lam_end;
    }
    auto it = std::upper_bound(st.phis.begin(), st.phis.end(), phi_t);
    std::size_t i = static_cast<std::size_t>(it - st.phis.begin());
    if (i > 0) --i;
    double lo = st.xs[i], hi = st.xs[i + 1];
    double phi_lo = st.phis[i], phi_hi = st.phis[i + 1];
    double x = lo + (hi - lo) * ((phi_t - phi_lo) / std::max(phi_hi - phi_lo, 1e-300));
    x = std::clamp(x, lo, hi);
    for (int iter = 0; iter < 80; ++iter) {
        double f = st.phis[i] + segment_phi(st.lam, st.xs[i], x) - phi_t;
        if (std::fabs(f) <= 1e-13 * std::max(1.0, phi_t)) break;
        (f > 0 ? hi : lo) = x;
        double step = f / std::max(st.lam(x), 1e-300);
        double next = x - step;
        x = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
        if (hi - lo <= 4e-16 * std::max(1.0, std::fabs(hi))) break;
    }
    return x;
}

DistributionSpec spec_from_state(std::shared_ptr<const HazardState> st, std::string name) {
    DistributionSpec d;
    d.log_survival = [st](double x) { return phi_lookup(*st, x); };
    d.cdf = [st](double x) {
        double phi = phi_lookup(*st, x);
        return std::isfinite(phi) ? -std::expm1(-phi) : 1.0;
    };
    d.hazard = [st](double x) { return st->lam(x); };
    d.inverse_hazard = [st](double x) { return 1.0 / st->lam(x); };
    d.quantile = [st](double p) { return quantile_lookup(*st, p); };
    d.bounds.lower = st->L;
    d.bounds.upper = st->M;
    d.bounds.survival_at_upper =
        (std::isfinite(st->M) && std::isfinite(st->phi_at_upper)) ? std::exp(-st->phi_at_upper)
                                                                  : 0.0;
    if (std::isfinite(st->M) && std::isfinite(st->phi_at_upper))
        d.mu_at_upper_minus = 1.0 / st->lam(st->xs.back());
    d.name = std::move(name);
    d.known_ihr = IhrStatus::unknown;
    return d;
}

}  // namespace

DistributionSpec from_hazard(std::function<double(double)> hazard_fn, double lower, double upper) {
    if (!std::isfinite(lower)) throw DomainError("from_hazard: lower endpoint must be finite");
    if (!(lower < upper)) throw DomainError("from_hazard: requires lower < upper");

    auto st = std::make_shared<HazardState>();
    st->lam = std::move(hazard_fn);
    st->L = lower;
    st->M = upper;

    // Probe grid: the hazard must be positive and finite where we look.
    const bool finite_m = std::isfinite(upper);
    for (int i = 0; i < 32; ++i) {
        double x = finite_m ? lower + (upper - lower) * (i + 0.5) / 32.0
                            : lower + std::ldexp(1.0, i - 5);
        double lam = st->lam(x);
        if (!(lam > 0.0) || !std::isfinite(lam))
            throw EvalError("from_hazard: hazard is nonpositive or non-finite at x=" +
                            std::to_string(x));
    }

    constexpr double kPhiMax = 60.0;  // survival below exp(-60) is ignored
    st->xs.push_back(lower);
    st->phis.push_back(0.0);
    try {
        if (finite_m) {
            const double w = upper - lower;
            // Fine dyadic resolution near L, uniform middle, dyadic toward M.
            std::vector<double> pts;
            for (int j = 30; j >= 7; --j) pts.push_back(lower + w * std::ldexp(1.0, -j));
            for (int j = 1; j < 64; ++j) pts.push_back(lower + w * j / 64.0);
            for (int j = 7; j <= 45; ++j) pts.push_back(upper - w * std::ldexp(1.0, -j));
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            for (double x : pts) {
                if (x <= st->xs.back() || x >= upper) continue;
                double dphi = segment_phi(st->lam, st->xs.back(), x);
                st->xs.push_back(x);
                st->phis.push_back(st->phis.back() + dphi);
                if (st->phis.back() >= kPhiMax) break;
            }
            if (st->phis.back() < kPhiMax) {
                // Probe the remaining sliver; divergence means no atom at M.
                double tail = kInf;
                try {
                    tail = segment_phi(st->lam, st->xs.back(), upper - (upper - lower) * 1e-15);
                } catch (const QuadratureError&) {
                    tail = kInf;
                }
                double total = st->phis.back() + tail;
                st->phi_at_upper = total >= kPhiMax ? kInf : total;
            } else {
                st->phi_at_upper = kInf;
            }
        } else {
            // Dyadic refinement near L, then doubling steps until phi saturates.
            for (int j = 30; j >= 1; --j) {
                double x = lower + std::ldexp(1.0, -j - 10);
                if (x <= st->xs.back()) continue;
                double dphi = segment_phi(st->lam, st->xs.back(), x);
                st->xs.push_back(x);
                st->phis.push_back(st->phis.back() + dphi);
            }
            double h = std::ldexp(1.0, -10);
            for (int j = 0; j < 90 && st->phis.back() < kPhiMax; ++j) {
                double x = st->xs.back() + h;
                double dphi = segment_phi(st->lam, st->xs.back(), x);
                st->xs.push_back(x);
                st->phis.push_back(st->phis.back() + dphi);
                h *= 2.0;
            }
            if (st->phis.back() < 30.0)
                throw DomainError(
                    "from_hazard: cumulative hazard grows too slowly; F does not reach 1");
        }
    } catch (const QuadratureError&) {
        throw EvalError("from_hazard: hazard is not integrable over the requested support");
    }

    return spec_from_state(std::move(st), "hazard:custom");
}

// ---------------------------------------------------------------------------
// Tabulated hazard
// ---------------------------------------------------------------------------

namespace {

struct TableState {
    std::vector<double> xs;
    std::vector<double> lam;
    std::vector<double> cum;  // phi at each breakpoint
    HazardInterp interp = HazardInterp::linear;

    double hazard_at(double x) const {
        if (x <= xs.front()) return lam.front();
        if (x >= xs.back()) return lam.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
        if (interp == HazardInterp::step) return lam[i];
        double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return lam[i] + t * (lam[i + 1] - lam[i]);
    }

    double slope_at(double x) const {
        if (interp == HazardInterp::step) return 0.0;  // lambda' = 0 within segments
        if (x < xs.front() || x >= xs.back()) return 0.0;
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
        return (lam[i + 1] - lam[i]) / (xs[i + 1] - xs[i]);
    }

    double phi_at(double x) const {
        if (x <= xs.front()) return 0.0;
        if (x >= xs.back()) return cum.back() + lam.back() * (x - xs.back());
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
        double t = x - xs[i];
        if (interp == HazardInterp::step) return cum[i] + lam[i] * t;
        double a = (lam[i + 1] - lam[i]) / (xs[i + 1] - xs[i]);
        return cum[i] + lam[i] * t + 0.5 * a * t * t;
    }

    double quantile_at(double p) const {
        const double phi_t = -std::log1p(-p);
        if (phi_t >= cum.back()) return xs.back() + (phi_t - cum.back()) / lam.back();
        auto it = std::upper_bound(cum.begin(), cum.end(), phi_t);
        std::size_t i = static_cast<std::size_t>(it - cum.begin());
        if (i > 0) --i;
        double c = phi_t - cum[i];
        if (interp == HazardInterp::step) return xs[i] + c / lam[i];
        double a = (lam[i + 1] - lam[i]) / (xs[i + 1] - xs[i]);
        double disc = lam[i] * lam[i] + 2.0 * a * c;
        double t = 2.0 * c / (lam[i] + std::sqrt(std::max(disc, 0.0)));
        return xs[i] + t;
    }
};

}  // namespace

DistributionSpec from_hazard_table(std::vector<double> xs, std::vector<double> lambdas,
                                   HazardInterp interp) {
    if (xs.size() < 2 || xs.size() != lambdas.size())
        throw ParseError("hazard table: need at least two matching (x, hazard) rows");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(lambdas[i]))
            throw ParseError("hazard table: entries must be finite");
        if (!(lambdas[i] > 0)) throw ParseError("hazard table: hazard values must be positive");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw ParseError("hazard table: x column must be strictly increasing");
    }

    auto st = std::make_shared<TableState>();
    st->xs = std::move(xs);
    st->lam = std::move(lambdas);
    st->interp = interp;
    st->cum.resize(st->xs.size());
    st->cum[0] = 0.0;
    for (std::size_t i = 1; i < st->xs.size(); ++i) {
        double dx = st->xs[i] - st->xs[i - 1];
        double inc = interp == HazardInterp::step ? st->lam[i - 1] * dx
                                                  : 0.5 * (st->lam[i - 1] + st->lam[i]) * dx;
        st->cum[i] = st->cum[i - 1] + inc;
    }

    bool nondecreasing = true;
    for (std::size_t i = 1; i < st->lam.size(); ++i)
        if (st->lam[i] < st->lam[i - 1]) nondecreasing = false;

    DistributionSpec d;
    d.log_survival = [st](double x) { return st->phi_at(x); };
    d.cdf = [st](double x) { return -std::expm1(-st->phi_at(x)); };
    d.hazard = [st](double x) { return st->hazard_at(x); };
    d.inverse_hazard = [st](double x) { return 1.0 / st->hazard_at(x); };
    d.inverse_hazard_slope = [st](double x) {
        double lam = st->hazard_at(x);
        return -st->slope_at(x) / (lam * lam);
    };
    d.quantile = [st](double p) { return st->quantile_at(p); };
    d.bounds = {st->xs.front(), kInf, 0.0};
    d.known_ihr = nondecreasing ? IhrStatus::yes : IhrStatus::no;
    d.name = interp == HazardInterp::step ? "hazardfile:interp=step" : "hazardfile:interp=linear";
    if (interp == HazardInterp::step) {
        // Each jump of the step hazard is a kink of phi and an atom of d(-mu).
        for (std::size_t i = 1; i < st->lam.size(); ++i) {
            if (st->lam[i] != st->lam[i - 1])
                d.interior_atoms.push_back({st->xs[i], 1.0 / st->lam[i - 1] - 1.0 / st->lam[i]});
        }
    }
    return d;
}

DistributionSpec load_hazard_csv(const std::string& path, HazardInterp interp) {
    std::ifstream in(path);
    if (!in) throw ParseError("hazardfile: cannot open " + path);
    std::vector<double> xs, lams;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("hazardfile: expected two comma-separated columns: " + line);
        std::string c0 = line.substr(0, comma);
        std::string c1 = line.substr(comma + 1);
        char* end = nullptr;
        double x = std::strtod(c0.c_str(), &end);
        bool numeric = end != c0.c_str() && *end == '\0';
        if (!numeric && first) {
            first = false;  // header row
            continue;
        }
        if (!numeric) throw ParseError("hazardfile: non-numeric x value: " + c0);
        double lam = std::strtod(c1.c_str(), &end);
        if (end == c1.c_str() || *end != '\0')
            throw ParseError("hazardfile: non-numeric hazard value: " + c1);
        xs.push_back(x);
        lams.push_back(lam);
        first = false;
    }
    return from_hazard_table(std::move(xs), std::move(lams), interp);
}

// ---------------------------------------------------------------------------
// Mini-language dispatch
// ---------------------------------------------------------------------------

DistributionSpec make_builtin(const std::string& spec_string) {
    KvList spec = parse_spec_string(spec_string);
    if (spec.name == "exp") {
        spec.expect_keys({"lambda", "L"});
        return make_exponential(spec.num("lambda"), spec.num_or("L", 0.0));
    }
    if (spec.name == "truncexp") {
        spec.expect_keys({"lambda", "L", "M"});
        return make_truncated_exponential(spec.num("lambda"), spec.num_or("L", 0.0),
                                          spec.num("M"));
    }
    if (spec.name == "uniform") {
        spec.expect_keys({"a", "b"});
        return make_uniform(spec.num("a"), spec.num("b"));
    }
    if (spec.name == "weibull") {
        spec.expect_keys({"shape", "scale"});
        return make_weibull(spec.num("shape"), spec.num_or("scale", 1.0));
    }
    if (spec.name == "gompertz") {
        spec.expect_keys({"a", "b"});
        return make_gompertz(spec.num_or("a", 1.0), spec.num_or("b", 1.0));
    }
    if (spec.name == "oscexp") {
        spec.expect_keys({"eps", "base"});
        return oscillating_hazard_dist(spec.num("eps"), spec.num_or("base", 2.0));
    }
    if (spec.name == "hazardfile") {
        spec.expect_keys({"path", "interp"});
        auto it = spec.kv.find("path");
        if (it == spec.kv.end()) throw ParseError("hazardfile: missing parameter 'path'");
        std::string mode = spec.str_or("interp", "linear");
        if (mode != "linear" && mode != "step")
            throw ParseError("hazardfile: interp must be 'linear' or 'step'");
        return load_hazard_csv(it->second,
                               mode == "step" ? HazardInterp::step : HazardInterp::linear);
    }
    throw ParseError("unknown distribution '" + spec.name + "'");
}

const std::vector<std::string>& builtin_distributions() {
    static const std::vector<std::string> docs = {
        "exp:lambda=<rate>,L=<shift>            constant hazard on [L, inf), L defaults to 0",
        "truncexp:lambda=<rate>,L=<lo>,M=<hi>   constant hazard on [L, M) with an atom at M",
        "uniform:a=<lo>,b=<hi>                  uniform on [a, b]",
        "weibull:shape=<k>,scale=<s>            hazard (k/s)(x/s)^(k-1) on (0, inf); scale defaults to 1",
        "gompertz:a=<scale>,b=<growth>          hazard a*exp(b*x) on (0, inf); both default to 1",
        "oscexp:eps=<eps>,base=<level>          inverse hazard base+cos(eps*log(1-F)); base defaults to 2",
        "hazardfile:path=<csv>,interp=<linear|step>  tabulated hazard x,lambda(x)",
    };
    return docs;
}

// ---------------------------------------------------------------------------
// Black-box cdf constructors
// ---------------------------------------------------------------------------

namespace {

constexpr double kLowerCross = 1e-14;
constexpr double kUpperCross = 1.0 - 1e-14;

double eval_cdf(const std::function<double(double)>& cdf, double x) {
    double f = cdf(x);
    if (!std::isfinite(f) || f < 0.0 || f > 1.0)
        throw EvalError("cdf returned a value outside [0,1] at x=" + std::to_string(x));
    return f;
}

// Bisection for the crossing of `level` inside [lo, hi] with F(lo) < level <= F(hi).
double bisect_crossing(const std::function<double(double)>& cdf, double lo, double hi,
                       double level) {
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        if (eval_cdf(cdf, mid) >= level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

SupportBounds detect_support(const std::function<double(double)>& cdf) {
    // Find a point with nonzero mass on each side to anchor the brackets.
    double probe = 0.0;
    bool found = false;
    for (double step : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0, 256.0, -256.0, 65536.0,
                        -65536.0}) {
        if (eval_cdf(cdf, step) > kLowerCross) {
            probe = step;
            found = true;
            break;
        }
    }
    if (!found) throw DomainError("detect_support: cdf stays at 0 over the probe grid");

    double lo = probe;
    for (double step = 1.0; eval_cdf(cdf, lo) > kLowerCross; step *= 2.0) {
        lo -= step;
        if (step > 1e120) throw DomainError("detect_support: no lower crossing found");
    }
    double hi = probe;
    for (double step = 1.0; eval_cdf(cdf, hi) < kUpperCross; step *= 2.0) {
        hi += step;
        if (step > 1e120) throw DomainError("detect_support: cdf never approaches 1");
    }

    SupportBounds b;
    b.lower = bisect_crossing(cdf, lo, probe, kLowerCross);
    // lo sits below both crossings, so it anchors the upper bisection even
    // when F(probe) = 1 already.
    b.upper = bisect_crossing(cdf, lo, hi, kUpperCross);

    // Atom test at two step scales: an atom keeps its survival as the step
    // shrinks; a continuous F loses it linearly.
    double h = std::max(1e-9 * std::max(1.0, std::fabs(b.upper)), 1e-9 * (b.upper - b.lower));
    double s1 = 1.0 - eval_cdf(cdf, b.upper - h);
    double s2 = 1.0 - eval_cdf(cdf, b.upper - h / 256.0);
    b.survival_at_upper = (s2 > 1e-12 && s2 > 0.9 * s1) ? s2 : 0.0;
    return b;
}

DistributionSpec from_cdf(std::function<double(double)> cdf,
                          std::function<double(double)> log_survival) {
    DistributionSpec d;
    d.bounds = detect_support(cdf);
    const double lower = d.bounds.lower;
    const double upper = d.bounds.upper;
    const double width = upper - lower;

    std::function<double(double)> phi_fn;
    if (log_survival) {
        phi_fn = std::move(log_survival);
    } else {
        phi_fn = [cdf](double x) {
            double f = cdf(x);
            if (f >= 1.0) return kInf;
            if (f <= 0.0) return 0.0;
            return -std::log1p(-f);
        };
    }

    auto quantile_fn = [cdf, lower, upper](double p) {
        double lo = lower, hi = upper;
        for (int i = 0; i < 120 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++i) {
            double mid = 0.5 * (lo + hi);
            if (cdf(mid) >= p)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };

    auto hazard_fn = [phi_fn, lower, upper, width](double x) {
        double h = 6.06e-6 * std::max(1.0, std::fabs(x));
        h = std::min(h, 0.45 * width);
        // Stay strictly inside (L, M): phi is infinite at an atom-bearing M.
        if (x - h < lower) h = std::max(0.45 * (x - lower), 1e-300);
        if (x + h > upper) h = std::max(0.45 * (upper - x), 1e-300);
        return (phi_fn(x + h) - phi_fn(x - h)) / (2.0 * h);
    };

    // Interior jumps of F break convexity of phi; reject them up front.
    {
        const int scan = 64;
        double prev_x = lower;
        for (int i = 1; i < scan; ++i) {
            double x = quantile_fn(static_cast<double>(i) / scan);
            if (i > 1 && x - prev_x <= 1e-11 * std::max(1.0, std::fabs(x)) &&
                x < upper - 1e-9 * width)
                throw DomainError("from_cdf: interior jump of F detected near x=" +
                                  std::to_string(x));
            prev_x = x;
        }
    }

    d.cdf = std::move(cdf);
    d.log_survival = phi_fn;
    d.hazard = hazard_fn;
    d.inverse_hazard = [hazard_fn](double x) { return 1.0 / hazard_fn(x); };
    d.quantile = quantile_fn;
    d.name = "cdf:custom";
    d.known_ihr = IhrStatus::unknown;
    if (d.bounds.survival_at_upper > 0)
        d.mu_at_upper_minus = 1.0 / hazard_fn(upper - 1e-6 * width);
    return d;
}

// ---------------------------------------------------------------------------
// probe / check_ihr
// ---------------------------------------------------------------------------

ProbeResult probe(const DistributionSpec& d, double x) {
    if (!std::isfinite(x)) throw DomainError("probe: x must be finite");
    ProbeResult r;
    if (x < d.bounds.lower) {
        r = {0.0, 1.0, 0.0, kNaN, kNaN, false};
        return r;
    }
    if (x >= d.bounds.upper) {
        r = {1.0, 0.0, kInf, kNaN, kNaN, false};
        return r;
    }
    r.in_support = true;
    r.F = d.cdf(x);
    r.phi = d.log_survival(x);
    r.survival = std::exp(-r.phi);
    r.hazard = d.hazard(x);
    r.inverse_hazard = d.inverse_hazard(x);
    return r;
}

IhrVerdict check_ihr(const DistributionSpec& d, int grid_size, double tol) {
    if (grid_size < 8) throw DomainError("check_ihr: grid_size must be at least 8");
    if (!(tol > 0)) throw DomainError("check_ihr: tolerance must be positive");

    // Quantile-spaced abscissae, clamped inside the continuous part of F.
    const double p_lo = 1e-9;
    double p_hi = 1.0 - 1e-9;
    if (d.bounds.survival_at_upper > 0)
        p_hi = std::min(p_hi, (1.0 - d.bounds.survival_at_upper) * (1.0 - 1e-9));

    std::vector<double> x(grid_size), phi(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        double p = p_lo + (p_hi - p_lo) * i / (grid_size - 1);
        x[i] = d.quantile(p);
        phi[i] = d.log_survival(x[i]);
        if (!std::isfinite(phi[i]))
            throw EvalError("check_ihr: phi evaluation failed at x=" + std::to_string(x[i]));
    }

    IhrVerdict v;
    v.grid_size = grid_size;
    v.tolerance = tol;
    v.worst_violation = -kInf;
    IhrWitness worst{};
    for (int s = 1; 2 * s <= grid_size - 1; s *= 2) {
        for (int i = 0; i + 2 * s < grid_size; ++i) {
            double a = x[i], b = x[i + 2 * s];
            if (!(a < b)) continue;
            double mid = 0.5 * (a + b);
            double phi_mid = d.log_survival(mid);
            if (!std::isfinite(phi_mid))
                throw EvalError("check_ihr: phi evaluation failed at the pair midpoint");
            double violation = phi_mid - 0.5 * (phi[i] + phi[i + 2 * s]);
            double scale = std::max({1.0, std::fabs(phi[i]), std::fabs(phi[i + 2 * s])});
            double rel = violation / scale;
            if (rel > v.worst_violation) {
                v.worst_violation = rel;
                worst = {a, b, violation};
            }
        }
    }
    v.is_ihr = v.worst_violation <= tol;
    if (!v.is_ihr) v.witness = worst;
    return v;
}

}  // namespace ordgap
