#include "kokotsakis/screening.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <thread>

#include "kokotsakis/error.hpp"

namespace kokotsakis::screening {

namespace {

constexpr double kPi = std::numbers::pi;

// Everything that depends only on the point, reused across the tau scan.
class PointEvaluator {
public:
    explicit PointEvaluator(const planar::BaseAngles& b)
        : base_(b), solver_(b), sigmas_(planar::admissible_sigmas()) {
        for (int i = 0; i < 4; ++i) {
            const double t = std::tan(b.delta[i]);
            tan2_[i] = t * t;
            cos2_[i] = std::cos(b.delta[i]) * std::cos(b.delta[i]);
        }
    }

    FailureStage stage(double tau) const {
        const auto v = solver_.at(tau);
        if (!v) return FailureStage::RcRange;
        if (!beta_defined(*v)) return FailureStage::Beta;
        for (const auto& sg : sigmas_) {
            std::array<sphquad::SphericalQuad, 4> quads;
            try {
                quads = planar::recover_angles(base_, *v, sg);
            } catch (const Error&) {
                return FailureStage::Beta;
            }
            bool ok = true;
            for (const auto& q : quads) ok = ok && sphquad::is_elliptic(q);
            if (ok) return FailureStage::None;
        }
        return FailureStage::Elliptic;
    }

    // Full pipeline at tau; true when construct succeeds.
    bool validates(double tau) const {
        try {
            planar::construct(base_, tau);
            return true;
        } catch (const Error&) {
            return false;
        }
    }

private:
    // cos^2(alpha) = 1 / (1 + tan^2(alpha)) with tan^2(alpha) = (1 - r)/(1 + r) tan^2(delta);
    // beta exists iff cos^2(alpha) cos^2(gamma) < cos^2(delta).
    bool beta_defined(const planar::VertexRC& v) const {
        for (int i = 0; i < 4; ++i) {
            auto cos2 = [&](double r) {
                if (1.0 + r <= 0.0) return 0.0;
                return 1.0 / (1.0 + (1.0 - r) / (1.0 + r) * tan2_[i]);
            };
            if (!(cos2(v.r[i]) * cos2(v.c[i]) < cos2_[i])) return false;
        }
        return true;
    }

    planar::BaseAngles base_;
    planar::RCSolver solver_;
    std::vector<planar::SigmaSigns> sigmas_;
    std::array<double, 4> tan2_{};
    std::array<double, 4> cos2_{};
};

std::optional<planar::BaseAngles> base_of(const planar::XYSParams& p) {
    try {
        return planar::make_base_angles(planar::xys_to_deltas(p));
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool passes(const PointEvaluator& ev, double tau) { return ev.stage(tau) == FailureStage::None; }

// Bisection between a passing and a failing tau; returns the passing end.
double refine(const PointEvaluator& ev, double good, double bad) {
    for (int k = 0; k < kBisectionSteps; ++k) {
        const double mid = 0.5 * (good + bad);
        (passes(ev, mid) ? good : bad) = mid;
    }
    return good;
}

struct SearchResult {
    std::optional<double> tau;
    FailureStage furthest = FailureStage::Base;
};

SearchResult search(const PointEvaluator& ev, int grid) {
    SearchResult res;
    grid = std::max(grid, 1);
    const double h = 2.0 * kPi / grid;
    std::vector<char> ok(grid, 0);
    res.furthest = FailureStage::RcRange;
    for (int i = 0; i < grid; ++i) {
        const FailureStage st = ev.stage(i * h);
        res.furthest = std::max(res.furthest, st);
        ok[i] = st == FailureStage::None;
    }
    if (res.furthest != FailureStage::None) return res;

    // Passing runs, treated cyclically; the run containing 0 is handled as
    // the first run when it wraps around.
    for (int i = 0; i < grid; ++i) {
        if (!ok[i]) continue;
        const int prev = (i + grid - 1) % grid;
        if (ok[prev] && grid > 1 && !(i == 0 && std::all_of(ok.begin(), ok.end(), [](char c) { return c; })))
            continue;
        int len = 1;
        while (len < grid && ok[(i + len) % grid]) ++len;
        double lo = i * h, hi = (i + len - 1) * h;
        if (len < grid) {
            lo = refine(ev, lo, lo - h);
            hi = refine(ev, hi, hi + h);
        }
        std::vector<double> candidates{0.5 * (lo + hi)};
        for (int k = 0; k < len; ++k) candidates.push_back((i + k) * h);
        for (double t : candidates) {
            t = std::remainder(t, 2.0 * kPi);
            if (passes(ev, t) && ev.validates(t)) {
                res.tau = t;
                return res;
            }
        }
    }
    // Every passing tau failed later in the pipeline (normalization or zeta1 <= 1).
    res.furthest = FailureStage::Elliptic;
    return res;
}

bool is_convex(const planar::XYSParams& p) {
    for (double d : planar::xys_to_deltas(p))
        if (!(d > 0.0 && d < kPi)) return false;
    return true;
}

std::string fmt(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace

const char* to_string(FailureStage s) {
    switch (s) {
        case FailureStage::Base: return "BASE";
        case FailureStage::RcRange: return "RC_RANGE";
        case FailureStage::Beta: return "BETA";
        case FailureStage::Elliptic: return "ELLIPTIC";
        case FailureStage::None: return "NONE";
    }
    return "?";
}

Bounds default_bounds() { return Bounds{{-kPi / 2, -kPi / 2, -kPi / 2}, {kPi / 2, kPi / 2, kPi / 2}}; }

FailureStage evaluate_tau(const planar::XYSParams& p, double tau) {
    const auto b = base_of(p);
    if (!b) return FailureStage::Base;
    return PointEvaluator(*b).stage(tau);
}

std::optional<double> admissible_tau(const planar::XYSParams& p, int grid) {
    const auto b = base_of(p);
    if (!b) return std::nullopt;
    return search(PointEvaluator(*b), grid).tau;
}

ScreenPoint screen_point(const planar::XYSParams& p, int grid) {
    ScreenPoint out;
    out.x = p.x;
    out.y = p.y;
    out.s = p.s;
    out.convex = is_convex(p);
    const auto b = base_of(p);
    if (!b) return out;
    const SearchResult r = search(PointEvaluator(*b), grid);
    out.tau_witness = r.tau;
    out.admissible = r.tau.has_value();
    out.failure_stage = r.tau ? FailureStage::None : r.furthest;
    return out;
}

std::vector<ScreenPoint> screen_grid(int resolution, const Bounds& bounds, int workers, int tau_grid) {
    if (resolution < 2) throw Error(ErrorKind::InvalidInput, "screening resolution must be at least 2");
    const int n = resolution;
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    auto coord = [&](int axis, int i) {
        return bounds.lo[axis] + (i + 0.5) * (bounds.hi[axis] - bounds.lo[axis]) / n;
    };

    std::vector<ScreenPoint> out(total);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < total;) {
            const int ix = static_cast<int>(k / (n * n));
            const int iy = static_cast<int>((k / n) % n);
            const int is = static_cast<int>(k % n);
            out[k] = screen_point({coord(0, ix), coord(1, iy), coord(2, is)}, tau_grid);
        }
    };
    workers = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

void write_csv(std::ostream& out, const std::vector<ScreenPoint>& points) {
    out << "x,y,s,admissible,tau,failure_stage,convex\n";
    for (const auto& p : points) {
        out << fmt(p.x, 10) << ',' << fmt(p.y, 10) << ',' << fmt(p.s, 10) << ',' << (p.admissible ? 1 : 0) << ','
            << (p.tau_witness ? fmt(*p.tau_witness, 10) : std::string()) << ',' << to_string(p.failure_stage) << ','
            << (p.convex ? 1 : 0) << '\n';
    }
}

void write_delta_triples(std::ostream& out, const std::vector<ScreenPoint>& points) {
    out << "delta1,delta2,delta3,convex\n";
    for (const auto& p : points) {
        if (!p.admissible) continue;
        const auto d = planar::xys_to_deltas({p.x, p.y, p.s});
        out << fmt(d[0], 10) << ',' << fmt(d[1], 10) << ',' << fmt(d[2], 10) << ',' << (p.convex ? 1 : 0) << '\n';
    }
}

planar::XYSParams central_image(const planar::XYSParams& p) {
    return {kPi / 2 - p.x, kPi / 2 - p.y, kPi / 2 - p.s};
}

planar::XYSParams mirror_image(const planar::XYSParams& p) { return {p.y, p.x, p.s}; }

planar::XYSParams origin_image(const planar::XYSParams& p) { return {-p.x, -p.y, -p.s}; }

}  // namespace kokotsakis::screening
