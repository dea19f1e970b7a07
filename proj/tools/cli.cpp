#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "kokotsakis/elliptic.hpp"
#include "kokotsakis/embed.hpp"
#include "kokotsakis/error.hpp"
#include "kokotsakis/flexion.hpp"
#include "kokotsakis/resultant.hpp"
#include "kokotsakis/screening.hpp"
#include "kokotsakis/spec_io.hpp"

namespace kokotsakis::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v, int digits = 12) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

int code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::RightAngle: return kRightAngle;
        case ErrorKind::NegativeDiscriminant:
        case ErrorKind::ZeroDenominator:
        case ErrorKind::OutOfRange: return kTauNotFound;
        case ErrorKind::BetaUndefined: return kBetaUndefined;
        case ErrorKind::NotElliptic:
        case ErrorKind::DegenerateQuad: return kNotElliptic;
        case ErrorKind::NotFlexible:
        case ErrorKind::NoValidPattern: return kNotFlexible;
        case ErrorKind::Io: return kIo;
        case ErrorKind::NoClosure:
        case ErrorKind::ClosureFailure: return kClosure;
        case ErrorKind::PoleEncountered:
        case ErrorKind::DegenerateLeading: return kVerifyFailed;
        default: return kUsage;
    }
}

int code_for(screening::FailureStage s) {
    switch (s) {
        case screening::FailureStage::Base: return kRightAngle;
        case screening::FailureStage::RcRange: return kTauNotFound;
        case screening::FailureStage::Beta: return kBetaUndefined;
        case screening::FailureStage::Elliptic: return kNotElliptic;
        case screening::FailureStage::None: return kOk;
    }
    return kUsage;
}

const char* stage_message(screening::FailureStage s) {
    switch (s) {
        case screening::FailureStage::Base: return "geometric assumption 1 violated: invalid base angles";
        case screening::FailureStage::RcRange:
            return "geometric assumption 2 violated: no tau puts every r_i, c_i in [-1, 1)";
        case screening::FailureStage::Beta:
            return "geometric assumption 3 violated: some beta_i is undefined for every tau in range";
        case screening::FailureStage::Elliptic:
            return "geometric assumption 4 violated: no tau gives four elliptic quadrilaterals";
        case screening::FailureStage::None: return "ok";
    }
    return "";
}

flexion::Branch parse_branch(const std::string& text) {
    auto sign = [&](const std::string& s) {
        if (s == "+" || s == "1" || s == "+1") return 1;
        if (s == "-" || s == "-1") return -1;
        throw Error(ErrorKind::InvalidInput, "branch must look like '+,+' or '-,+', got '" + text + "'");
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorKind::InvalidInput, "branch must look like '+,+' or '-,+', got '" + text + "'");
    return {sign(text.substr(0, comma)), sign(text.substr(comma + 1))};
}

// Loads a spec and brings it into the normal sign pattern if needed.
planar::PolyhedronSpec load_normalized(const std::string& path, bool* renormalized = nullptr) {
    planar::PolyhedronSpec spec = spec_io::load(path);
    const bool normal = planar::has_normal_pattern(spec.factors);
    if (!normal) spec = planar::normalize_enumeration(spec);
    if (renormalized) *renormalized = !normal;
    return spec;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

int default_workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double max_abs(const std::array<double, 4>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double flat_distance(double angle) { return std::abs(std::remainder(angle, kPi)); }

void print_spec_summary(std::ostream& out, const planar::PolyhedronSpec& spec) {
    out << "tau " << fmt(spec.tau) << "\n";
    out << "vertex input alpha beta gamma delta lambda mu nu\n";
    for (int i = 0; i < 4; ++i) {
        const auto& q = spec.quads[i];
        const auto& f = spec.factors[i];
        out << (i + 1) << ' ' << (spec.enumeration[i] + 1) << ' ' << fmt(q.alpha, 9) << ' ' << fmt(q.beta, 9) << ' '
            << fmt(q.gamma, 9) << ' ' << fmt(q.delta, 9) << ' ' << fmt(f.lambda, 9) << ' ' << fmt(f.mu, 9) << ' '
            << fmt(f.nu, 9) << "\n";
    }
    out << "zetas";
    for (double z : spec.zetas) out << ' ' << fmt(z, 9);
    out << "\nk " << fmt(elliptic::modulus_from_zeta(spec.zetas[0]).k, 9) << "\n";
}

// ---------------------------------------------------------------- construct

int cmd_construct(const std::vector<double>& deltas, const CLI::Option* tau_opt, double tau, bool scan, int tau_grid,
                  const std::vector<int>& sigma, const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (deltas.size() != 4) {
        err << "error: --deltas needs exactly four comma-separated values\n";
        return kUsage;
    }
    if (tau_opt->count() == 0 && !scan) {
        err << "error: one of --tau or --scan-tau is required\n";
        return kUsage;
    }
    std::optional<planar::SigmaSigns> sg;
    if (!sigma.empty()) {
        if (sigma.size() != 8) {
            err << "error: --sigma needs eight signs (alpha1..alpha4, gamma1..gamma4)\n";
            return kUsage;
        }
        planar::SigmaSigns s;
        for (int i = 0; i < 4; ++i) {
            s.alpha[i] = sigma[i] >= 0 ? 1 : -1;
            s.gamma[i] = sigma[4 + i] >= 0 ? 1 : -1;
        }
        sg = s;
    }

    const planar::BaseAngles base = planar::make_base_angles({deltas[0], deltas[1], deltas[2], deltas[3]});
    if (scan) {
        const auto pt = screening::screen_point(planar::deltas_to_xys(base), tau_grid);
        if (!pt.admissible) {
            err << "error: " << stage_message(pt.failure_stage) << "\n";
            return code_for(pt.failure_stage);
        }
        tau = *pt.tau_witness;
    }
    const planar::PolyhedronSpec spec = planar::construct(base, tau, sg);
    if (out_path.empty()) {
        out << spec_io::to_json(spec);
    } else {
        spec_io::save(spec, out_path);
        print_spec_summary(out, spec);
    }
    return kOk;
}

// --------------------------------------------------------------------- flex

int cmd_flex(const std::string& spec_path, const std::string& branch_text, int samples, bool with_elliptic,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (samples < 1) {
        err << "error: --samples must be positive\n";
        return kUsage;
    }
    const flexion::Branch branch = parse_branch(branch_text);
    const planar::PolyhedronSpec spec = load_normalized(spec_path);
    const flexion::ReducedCoeffs rc = flexion::reduce(spec);

    std::optional<elliptic::EllipticModulus> mod;
    elliptic::Alignment al;
    if (with_elliptic) {
        mod = elliptic::modulus_from_zeta(rc.zeta[0]);
        al = elliptic::fit_alignment(rc, *mod, branch);
    }

    std::ostringstream csv;
    csv << "t,phi,psi1,theta,psi2,branch_sigma,branch_rho";
    if (with_elliptic) csv << ",t_elliptic,phi_elliptic,psi1_elliptic,theta_elliptic,psi2_elliptic,max_abs_diff";
    csv << "\n";

    double worst = 0.0, worst_elliptic = 0.0, worst_diff = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = 2.0 * kPi * i / samples;
        const auto s = flexion::flexion_elementary(rc, branch, t);
        worst = std::max(worst, max_abs(flexion::residual_main(spec, s)));
        csv << fmt(t) << ',' << fmt(s.phi) << ',' << fmt(s.psi1) << ',' << fmt(s.theta) << ',' << fmt(s.psi2) << ','
            << branch.sigma << ',' << branch.rho;
        if (with_elliptic) {
            const double te = al.scale * t + al.shift;
            const auto e = elliptic::flexion_elliptic(rc, *mod, {al.elliptic_sigma, branch.rho}, te);
            worst_elliptic = std::max(worst_elliptic, max_abs(flexion::residual_main(spec, e)));
            double diff = 0.0;
            for (auto edge : {flexion::Edge::Phi, flexion::Edge::Psi1, flexion::Edge::Theta, flexion::Edge::Psi2})
                diff = std::max(diff, std::abs(elliptic::angle_difference(s.angle(edge), e.angle(edge))));
            worst_diff = std::max(worst_diff, diff);
            csv << ',' << fmt(te) << ',' << fmt(e.phi) << ',' << fmt(e.psi1) << ',' << fmt(e.theta) << ','
                << fmt(e.psi2) << ',' << fmt(diff);
        }
        csv << '\n';
    }

    std::ostream& log = out_path.empty() ? err : out;
    if (out_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + out_path + " for writing");
        f << csv.str();
    }
    log << "samples " << samples << " max residual " << fmt(worst, 3) << "\n";
    bool ok = worst <= 1e-9;
    if (with_elliptic) {
        log << "elliptic max residual " << fmt(worst_elliptic, 3) << " alignment scale " << fmt(al.scale, 9)
            << " shift " << fmt(al.shift, 9) << " max angle difference " << fmt(worst_diff, 4) << "\n";
        ok = ok && worst_elliptic <= 1e-8;
    }
    if (!ok) {
        err << "error: flexion residuals exceed tolerance\n";
        return kVerifyFailed;
    }
    return kOk;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const std::string& spec_path, std::ostream& out) {
    const planar::PolyhedronSpec spec = spec_io::load(spec_path);
    const VerifyReport rep = verify_spec(spec);
    if (rep.renormalized) out << "note: vertices re-enumerated into the normal sign pattern\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %-12s %-10s %s\n", "check", "value", "tolerance", "result");
    out << buf;
    for (const auto& c : rep.checks) {
        std::snprintf(buf, sizeof buf, "%-28s %-12.3g %-10.0e %s\n", c.name.c_str(), c.value, c.tolerance,
                      c.pass ? "PASS" : "FAIL");
        out << buf;
    }
    out << (rep.pass() ? "all checks passed\n" : "verification FAILED\n");
    return rep.pass() ? kOk : kVerifyFailed;
}

// --------------------------------------------------------------------- mesh

int cmd_mesh(const std::string& spec_path, const CLI::Option* t_opt, double t_value, int animate,
             const std::string& branch_text, const std::string& outdir, int workers, std::ostream& out,
             std::ostream& err) {
    if (t_opt->count() == 0 && animate <= 0) {
        err << "error: one of --t or --animate N is required\n";
        return kUsage;
    }
    const flexion::Branch branch = parse_branch(branch_text);
    const planar::PolyhedronSpec spec = load_normalized(spec_path);
    const flexion::ReducedCoeffs rc = flexion::reduce(spec);
    const embed::BaseRealization base = embed::realize_base(spec);

    std::vector<double> ts;
    if (animate > 0)
        for (int i = 0; i < animate; ++i) ts.push_back(2.0 * kPi * i / animate);
    else
        ts.push_back(t_value);

    std::vector<embed::MeshFrame> frames(ts.size());
    std::vector<std::string> failures(ts.size());
    parallel_for(static_cast<int>(ts.size()), workers, [&](int i) {
        try {
            frames[i] = embed::build_frame(spec, base, flexion::flexion_elementary(rc, branch, ts[i]));
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!failures[i].empty()) {
            err << "error: frame " << (i + 1) << ": " << failures[i] << "\n";
            return kClosure;
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + outdir + ": " + ec.message());
    const std::filesystem::path dir(outdir);
    std::ostringstream manifest;
    manifest << "frame,t,branch,phi,psi1,theta,psi2\n";
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.obj", i + 1);
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
        embed::write_obj(f, frames[i]);
        const auto& s = frames[i].sample;
        manifest << (i + 1) << ',' << fmt(s.t) << ',' << embed::branch_label(branch) << ',' << fmt(s.phi) << ','
                 << fmt(s.psi1) << ',' << fmt(s.theta) << ',' << fmt(s.psi2) << '\n';
    }
    {
        std::ofstream f(dir / "manifest.csv", std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, "cannot write manifest.csv");
        f << manifest.str();
    }
    out << "wrote " << frames.size() << " frame(s) to " << outdir << "\n";

    if (frames.size() == 1) {
        const auto& fr = frames.front();
        const auto dihedrals = embed::measured_base_dihedrals(fr);
        out << "base edge dihedrals";
        for (double d : dihedrals) out << ' ' << fmt(d, 9);
        out << "\nwing edge dihedrals";
        for (const auto& w : embed::wing_edge_angles(fr))
            out << " A" << (w.vertex + 1) << (w.side == embed::WingSide::Incoming ? "in" : "out") << '='
                << fmt(w.angle, 9);
        out << "\n";
    } else {
        const auto rep = embed::verify_isometry(frames);
        std::ostringstream text;
        text << "max edge length deviation " << fmt(rep.max_length_deviation, 3) << "\n"
             << "max face angle deviation " << fmt(rep.max_angle_deviation, 3) << "\n"
             << "max face planarity error " << fmt(rep.max_planarity_error, 3) << "\n"
             << "isometry " << (rep.pass ? "PASS" : "FAIL") << "\n";
        std::ofstream f(dir / "isometry.txt", std::ios::binary);
        f << text.str();
        out << text.str();
        if (!rep.pass) return kVerifyFailed;
    }
    return kOk;
}

// ------------------------------------------------------------------- screen

int cmd_screen(int resolution, const std::string& out_path, int workers, int tau_grid, const std::string& triples,
               std::ostream& out, std::ostream& err) {
    if (resolution < 2) {
        err << "error: --resolution must be at least 2\n";
        return kUsage;
    }
    const auto points = screening::screen_grid(resolution, screening::default_bounds(), workers, tau_grid);
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + out_path + " for writing");
        screening::write_csv(f, points);
    }
    if (!triples.empty()) {
        std::ofstream f(triples, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + triples + " for writing");
        screening::write_delta_triples(f, points);
    }
    std::array<int, 5> stages{};
    for (const auto& p : points) ++stages[static_cast<int>(p.failure_stage)];
    out << "points " << points.size() << " admissible " << stages[4] << "\n";
    for (auto s : {screening::FailureStage::Base, screening::FailureStage::RcRange, screening::FailureStage::Beta,
                   screening::FailureStage::Elliptic})
        out << "failed at " << screening::to_string(s) << ' ' << stages[static_cast<int>(s)] << "\n";
    return kOk;
}

// ---------------------------------------------------------------- resultant

int cmd_resultant(const std::string& spec_path, std::ostream& out) {
    const planar::PolyhedronSpec spec = load_normalized(spec_path);
    const auto rep = resultant::stachel_check(spec);
    const auto& fz = rep.factorization;
    out << "zeta1 " << fmt(spec.zetas[0], 12) << " zeta2 " << fmt(spec.zetas[1], 12) << "\n";
    out << "reduced resultant / 4 = (g1^2 g3^2 + c1 (g1^2 - g3^2) - 1)(g1^2 g3^2 + c2 (g1^2 - g3^2) - 1)\n";
    out << "  c1 = (zeta1 + zeta2)^2 = " << fmt(fz.first.c) << "\n";
    out << "  c2 = (zeta1 - zeta2)^2 = " << fmt(fz.second.c) << "\n";
    out << "factorization residual " << fmt(fz.product_residual, 3) << (fz.irreducible ? " (irreducible)" : "")
        << "\n";
    out << "branch set distance " << fmt(rep.branch_set_distance, 3) << "\n";
    out << "R12 / R34 proportionality deviation " << fmt(rep.proportionality, 3) << "\n";
    out << "Stachel check " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kOk : kStachelFailed;
}

}  // namespace

bool VerifyReport::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport verify_spec(const planar::PolyhedronSpec& input) {
    VerifyReport rep;
    auto add = [&](const std::string& name, double value, double tol) {
        rep.checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
    };
    auto fail = [&](const std::string& name, double tol) {
        rep.checks.push_back({name, std::numeric_limits<double>::infinity(), tol, false});
    };

    planar::PolyhedronSpec spec = input;
    if (!planar::has_normal_pattern(spec.factors)) {
        try {
            spec = planar::normalize_enumeration(spec);
            rep.renormalized = true;
        } catch (const Error&) {
            fail("sign pattern", 0.0);
            return rep;
        }
    }
    add("sign pattern", 0.0, 0.0);

    double ortho = 0.0, consistency = 0.0;
    bool elliptic_ok = true;
    for (int i = 0; i < 4; ++i) {
        const auto& q = spec.quads[i];
        ortho = std::max(ortho, std::abs(std::cos(q.alpha) * std::cos(q.gamma) - std::cos(q.beta) * std::cos(q.delta)));
        elliptic_ok = elliptic_ok && sphquad::is_elliptic(q);
        try {
            const auto f = sphquad::involution_factors(q);
            const auto& g = spec.factors[i];
            auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
            consistency = std::max({consistency, rel(g.lambda, f.lambda), rel(g.mu, f.mu), rel(g.nu, f.nu)});
        } catch (const Error&) {
            consistency = std::numeric_limits<double>::infinity();
        }
    }
    add("orthodiagonality", ortho, 1e-9);
    add("ellipticity", elliptic_ok ? 0.0 : 1.0, 0.0);
    add("factors match angles", consistency, 1e-9);
    add("anti-involutive relations", max_abs(planar::opposite_factor_residuals(spec.factors)), 1e-9);

    const auto Z = planar::z_values(spec.factors);
    auto zrel = [](double d, double scale) { return std::abs(d) / std::max(1.0, std::abs(scale)); };
    add("Z-system", std::max({zrel(Z[0] - Z[2], Z[0]), zrel(Z[1] - Z[3], Z[1]), zrel(Z[0] + Z[1] - 4.0, Z[0])}),
        1e-9);

    const auto zetas = planar::compute_zetas(spec.factors);
    double zeta_dev = 0.0;
    for (int i = 0; i < 4; ++i) zeta_dev = std::max(zeta_dev, std::abs(zetas[i] - spec.zetas[i]));
    add("stored zetas", zeta_dev, 1e-9);

    flexion::ReducedCoeffs rc;
    try {
        rc = flexion::reduce(spec);
    } catch (const Error&) {
        fail("zeta1 > 1", 0.0);
        return rep;
    }
    add("zeta1 > 1", 0.0, 0.0);
    const auto zr = flexion::zeta_system_residuals(rc);
    add("zeta system", std::max({std::abs(zr[0]), std::abs(zr[1]), std::abs(zr[2])}), 1e-9);

    double main_res = 0.0, reduced_res = 0.0, log_excess = -1.0;
    const double log_bound = std::acosh(2.0 * rc.zeta[0] - 1.0);
    for (const auto& b : flexion::all_branches()) {
        for (double t : flexion::verification_grid(720)) {
            const auto s = flexion::flexion_elementary(rc, b, t);
            main_res = std::max(main_res, max_abs(flexion::residual_main(spec, s)));
            const auto p = flexion::to_reduced(rc, s);
            reduced_res = std::max(reduced_res, max_abs(flexion::residual_reduced(rc, p)));
            for (const auto& v : {p.f1, p.g1}) {
                const double lv = std::abs(std::log(std::abs(v.num)) - std::log(std::abs(v.den)));
                log_excess = std::max(log_excess, std::isfinite(lv) ? lv - log_bound : 1.0);
            }
        }
    }
    add("flexion residuals", main_res, 1e-9);
    add("reduced residuals", reduced_res, 1e-9);
    add("f1, g1 log bound", std::max(0.0, log_excess), 1e-12);

    double flat = 0.0;
    for (const auto& b : flexion::all_branches())
        for (const auto& ev : flexion::flattening_parameters(rc))
            flat = std::max(flat, flat_distance(flexion::flexion_elementary(rc, b, ev.t).angle(ev.edge)));
    add("flattening", flat, 1e-9);

    const auto st = resultant::stachel_check(spec);
    add("branch sets coincide", st.branch_set_distance, 1e-9);
    add("resultant factorization", st.factorization.irreducible ? 1.0 : st.factorization.product_residual, 1e-12);
    add("R12 ~ R34", st.proportionality, 1e-8);

    try {
        const auto base = embed::realize_base(spec);
        double closure = 0.0, bold = 0.0;
        embed::IsometryReport iso;
        iso.pass = true;
        for (const auto& b : flexion::all_branches()) {
            std::vector<embed::MeshFrame> frames;
            for (int i = 0; i < 120; ++i) {
                frames.push_back(embed::build_frame(spec, base, flexion::flexion_elementary(rc, b, 2.0 * kPi * i / 120)));
                closure = std::max(closure, frames.back().closure_error);
            }
            const auto r = embed::verify_isometry(frames);
            iso.max_length_deviation = std::max(iso.max_length_deviation, r.max_length_deviation);
            iso.max_angle_deviation = std::max(iso.max_angle_deviation, r.max_angle_deviation);
            iso.max_planarity_error = std::max(iso.max_planarity_error, r.max_planarity_error);

            for (const auto& ev : flexion::flattening_parameters(rc)) {
                const auto fr = embed::build_frame(spec, base, flexion::flexion_elementary(rc, b, ev.t));
                const auto wings = embed::wing_edge_angles(fr);
                const auto dihedrals = embed::measured_base_dihedrals(fr);
                for (int e = 0; e < 4; ++e)
                    if (embed::edge_dihedral(e) == ev.edge) bold = std::max(bold, flat_distance(dihedrals[e]));
                for (const auto& [vertex, side] : embed::bold_wing_edges(ev))
                    for (const auto& w : wings)
                        if (w.vertex == vertex && w.side == side) bold = std::max(bold, flat_distance(w.angle));
            }
        }
        add("cone closure", closure, 1e-8);
        add("isometry", std::max({iso.max_length_deviation, iso.max_angle_deviation, iso.max_planarity_error}), 1e-8);
        add("simultaneous flattening", bold, 1e-7);
    } catch (const Error&) {
        fail("cone closure", 1e-8);
    }
    return rep;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flexible Kokotsakis polyhedra of orthodiagonal anti-involutive type"};
    app.require_subcommand(1);

    std::vector<double> deltas;
    double tau = 0.0;
    bool scan = false;
    int tau_grid = screening::kDefaultTauGrid;
    std::vector<int> sigma;
    std::string out_path, spec_path, branch = "+,+", outdir, triples;
    int samples = 720, animate = 0, resolution = 24, workers = default_workers();
    bool with_elliptic = false;
    double t_value = 0.0;

    auto* construct = app.add_subcommand("construct", "Build a spec from base angles");
    construct->add_option("--deltas", deltas, "Base angles delta1..delta4 in radians")->delimiter(',')->required();
    auto* tau_opt = construct->add_option("--tau", tau, "Parameter tau in radians");
    auto* scan_opt = construct->add_flag("--scan-tau", scan, "Search for an admissible tau");
    tau_opt->excludes(scan_opt);
    construct->add_option("--tau-grid", tau_grid, "Scan resolution for --scan-tau")->check(CLI::PositiveNumber);
    construct->add_option("--sigma", sigma, "Eight signs alpha1..alpha4,gamma1..gamma4")->delimiter(',');
    construct->add_option("--out", out_path, "Spec JSON output (stdout if omitted)");

    auto* flex = app.add_subcommand("flex", "Sample the flexion");
    flex->add_option("--spec", spec_path, "Spec JSON")->required();
    flex->add_option("--branch", branch, "Branch as sigma,rho, e.g. +,+ or -,+");
    flex->add_option("--samples", samples, "Number of samples over one period");
    flex->add_flag("--elliptic", with_elliptic, "Add aligned elliptic columns");
    flex->add_option("--out", out_path, "CSV output (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "Run all invariant checks on a spec");
    verify->add_option("--spec", spec_path, "Spec JSON")->required();

    auto* mesh = app.add_subcommand("mesh", "Export OBJ frames of the flexing surface");
    mesh->add_option("--spec", spec_path, "Spec JSON")->required();
    auto* t_opt = mesh->add_option("--t", t_value, "Single parameter value");
    auto* anim_opt = mesh->add_option("--animate", animate, "Number of frames over one period")->check(CLI::PositiveNumber);
    t_opt->excludes(anim_opt);
    mesh->add_option("--branch", branch, "Branch as sigma,rho");
    mesh->add_option("--outdir", outdir, "Output directory")->required();
    mesh->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* screen = app.add_subcommand("screen", "Screen the (x, y, s) parameter box");
    screen->add_option("--resolution", resolution, "Grid points per axis");
    screen->add_option("--out", out_path, "CSV output")->required();
    screen->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    screen->add_option("--tau-grid", tau_grid, "Tau scan resolution")->check(CLI::PositiveNumber);
    screen->add_option("--triples", triples, "Also write delta triples of admissible points");

    auto* res = app.add_subcommand("resultant", "Resultant factorization and Stachel check");
    res->add_option("--spec", spec_path, "Spec JSON")->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kUsage;
    }

    try {
        if (*construct)
            return cmd_construct(deltas, tau_opt, tau, scan, tau_grid, sigma, out_path, out, err);
        if (*flex) return cmd_flex(spec_path, branch, samples, with_elliptic, out_path, out, err);
        if (*verify) return cmd_verify(spec_path, out);
        if (*mesh) return cmd_mesh(spec_path, t_opt, t_value, animate, branch, outdir, workers, out, err);
        if (*screen) return cmd_screen(resolution, out_path, workers, tau_grid, triples, out, err);
        if (*res) return cmd_resultant(spec_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e.kind());
    }
    return kUsage;
}

}  // namespace kokotsakis::cli
