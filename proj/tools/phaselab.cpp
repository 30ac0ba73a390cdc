#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "phaselab/examples.hpp"
#include "phaselab/falsify.hpp"
#include "phaselab/frames.hpp"
#include "phaselab/io.hpp"
#include "phaselab/poly.hpp"
#include "phaselab/reconstruct.hpp"
#include "phaselab/report.hpp"
#include "phaselab/subspaces.hpp"

namespace pl = phaselab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// JSON line on stdout (stable across reruns); summary with wall time on stderr.
void emit(const pl::Report& r, const Timer& t) {
    std::cout << r.line() << "\n";
    std::fprintf(stderr, "%s: %s [%s, %s] (%.1f ms)\n", r.check.c_str(), r.verdict.c_str(),
                 r.tag.c_str(), r.backend.c_str(), t.ms());
}

nlohmann::json load_json(const std::string& path) {
    try {
        if (path == "-") return nlohmann::json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw pl::IoError("cannot open '" + path + "'");
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw pl::IoError(std::string("JSON parse error: ") + e.what());
    }
}

ordered_json subset_1based(const std::vector<std::size_t>& idx) {
    auto a = ordered_json::array();
    for (std::size_t i : idx) a.push_back(i + 1);
    return a;
}

ordered_json rat_vec_json(const pl::Vec<pl::Rational>& v) {
    auto a = ordered_json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(pl::rational_str(v[i]));
    return a;
}

ordered_json float_vec_json(const pl::Vec<double>& v) {
    auto a = ordered_json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

pl::Vec<pl::Rational> parse_rat_vec(const std::vector<std::string>& entries) {
    pl::Vec<pl::Rational> v(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) v[i] = pl::parse_rational(entries[i]);
    return v;
}

pl::Frame<double> demote(const pl::Frame<pl::Rational>& f) {
    std::vector<pl::Vec<double>> vecs;
    vecs.reserve(f.size());
    for (const auto& v : f.vectors()) {
        pl::Vec<double> w(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) w[i] = v[i].get_d();
        vecs.push_back(std::move(w));
    }
    return pl::Frame<double>(f.dim(), std::move(vecs));
}

pl::Arrangement<double> demote(const pl::Arrangement<pl::Rational>& a) {
    std::vector<pl::Subspace<double>> subs;
    for (const auto& w : a.subs) {
        if (w.normal()) {
            const auto& n = *w.normal();
            pl::Vec<double> nd(n.dim());
            for (std::size_t i = 0; i < n.dim(); ++i) nd[i] = n[i].get_d();
            subs.push_back(pl::Subspace<double>::hyperplane(std::move(nd)));
        } else {
            const auto& b = w.basis();
            pl::Mat<double> bd(b.rows(), b.cols());
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) bd(i, j) = b(i, j).get_d();
            subs.push_back(pl::Subspace<double>::from_basis(std::move(bd)));
        }
    }
    return pl::Arrangement<double>(a.d, std::move(subs));
}

// --backend override applied to a parsed variant; "exact" on float input is
// an error (floats cannot be promoted faithfully).
template <class Var>
Var apply_backend(Var v, const std::string& backend) {
    if (backend.empty()) return v;
    if (backend == "float") {
        if (auto* r = std::get_if<0>(&v)) return Var(demote(*r));
        return v;
    }
    if (std::holds_alternative<std::variant_alternative_t<1, Var>>(v))
        throw pl::IoError("--backend exact: input has float scalars");
    return v;
}

struct CheckFrameOpts {
    std::string file = "-";
    std::string backend;
    bool full_spark = false, cp = false, pr = false, tight = false, scalable = false;
    bool any() const { return full_spark || cp || pr || tight || scalable; }
};

template <class S>
void run_frame_checks(const pl::Frame<S>& f, const CheckFrameOpts& o) {
    const char* be = pl::backend_traits<S>::name;
    const char* tag = pl::backend_traits<S>::exact ? "PROOF" : "EVIDENCE";
    const bool all = !o.any();

    if (all || o.full_spark) {
        Timer t;
        auto rep = pl::full_spark(f);
        pl::Report r{"full_spark", rep.full_spark ? "true" : "false", tag, be, {}, {}};
        if (rep.dependent_subset) r.witness["dependent_subset"] = subset_1based(*rep.dependent_subset);
        emit(r, t);
    }
    if (all || o.cp) {
        Timer t;
        auto rep = pl::complement_property(f);
        pl::Report r{"complement_property", rep.holds ? "true" : "false", tag, be, {}, {}};
        if (rep.witness) r.witness["failing_subset"] = subset_1based(*rep.witness);
        emit(r, t);
    }
    if (all || o.pr) {
        Timer t;
        auto rep = pl::does_phase_retrieval(f);
        pl::Report r{"phase_retrieval", rep.holds ? "true" : "false", tag, be, {}, {}};
        if (!rep.holds && !rep.witness) r.witness["reason"] = "n < 2d-1";
        if (rep.witness) r.witness["failing_subset"] = subset_1based(*rep.witness);
        emit(r, t);
    }
    if (all || o.tight) {
        Timer t;
        auto a = pl::is_tight(f);
        pl::Report r{"tight", a ? "true" : "false", tag, be, {}, {}};
        if (a) {
            if constexpr (pl::backend_traits<S>::exact)
                r.witness["constant"] = pl::rational_str(*a);
            else
                r.witness["constant"] = *a;
        }
        emit(r, t);
    }
    if (all || o.scalable) {
        if constexpr (pl::backend_traits<S>::exact) {
            Timer t;
            auto cert = pl::scalability(f);
            pl::Report r{"scalable", cert ? "true" : "false", "PROOF", be, {}, {}};
            if (cert) {
                auto ws = ordered_json::array();
                for (const auto& c : cert->weights) ws.push_back(pl::rational_str(c));
                r.witness["weights"] = std::move(ws);
                r.witness["target"] = pl::rational_str(cert->target);
            }
            emit(r, t);
        } else if (o.scalable) {
            throw pl::IoError("--scalable requires the exact backend");
        }
    }
}

struct CheckArrOpts {
    std::string file = "-";
    std::string backend;
    std::vector<std::string> witness_vec;
    bool edidin_search = false;
    int restarts = 200;
    std::uint64_t seed = 7;
    bool weighted_tight = false;
    std::vector<std::string> weights;
    bool fusion_scalable = false;
    bool min_count = false;
};

template <class S>
void run_edidin_witness(const pl::Arrangement<S>& arr, const pl::Vec<S>& x) {
    Timer t;
    auto w = pl::edidin_verify_witness(arr, x);
    pl::Report r{"edidin_witness", w.spans ? "spans" : "deficient",
                 pl::backend_traits<S>::exact ? "PROOF" : "EVIDENCE",
                 pl::backend_traits<S>::name, {}, {}};
    r.witness["achieved_rank"] = w.achieved_rank;
    r.witness["ambient_dim"] = arr.d;
    emit(r, t);
}

template <class S>
void run_min_count(const pl::Arrangement<S>& arr) {
    const std::size_t d = arr.d, n = arr.size();
    const char* be = pl::backend_traits<S>::name;
    const char* tag = pl::backend_traits<S>::exact ? "PROOF" : "EVIDENCE";
    Timer t;
    if (n + 3 <= 2 * d) {
        auto w = pl::edidin_small_n_witness(arr);
        pl::Report r{"min_count", "below minimum (n <= 2d-3): fails phase retrieval", tag, be, {}, {}};
        r.witness["deficient_x"] = [&] {
            if constexpr (pl::backend_traits<S>::exact) return rat_vec_json(w.x);
            else return float_vec_json(w.x);
        }();
        r.witness["achieved_rank"] = w.achieved_rank;
        emit(r, t);
    } else if (n == 2 * d - 2) {
        auto w = pl::minimal_fullspark_necessity(arr);
        pl::Report r{"min_count",
                     w ? "n = 2d-2 with dependent normals: fails phase retrieval"
                       : "n = 2d-2 and perp normals full spark",
                     tag, be, {}, {}};
        if (w) {
            r.witness["deficient_x"] = [&] {
                if constexpr (pl::backend_traits<S>::exact) return rat_vec_json(w->x);
                else return float_vec_json(w->x);
            }();
            r.witness["achieved_rank"] = w->achieved_rank;
        }
        emit(r, t);
    } else {
        pl::Report r{"min_count", "n >= 2d-1: count necessary condition met", tag, be, {}, {}};
        r.params["n"] = n;
        r.params["d"] = d;
        emit(r, t);
    }
}

template <class S>
void run_weighted_tight(const pl::Arrangement<S>& arr, const std::vector<std::string>& weights) {
    Timer t;
    std::vector<S> a;
    if (weights.empty()) {
        a.assign(arr.size(), S(1));
    } else {
        for (const auto& w : weights) {
            pl::Rational q = pl::parse_rational(w);
            if constexpr (pl::backend_traits<S>::exact)
                a.push_back(q);
            else
                a.push_back(q.get_d());
        }
    }
    auto c = pl::weighted_tight_check(arr, a);
    pl::Report r{"weighted_tight", c ? "true" : "false",
                 pl::backend_traits<S>::exact ? "PROOF" : "EVIDENCE",
                 pl::backend_traits<S>::name, {}, {}};
    if (c) {
        if constexpr (pl::backend_traits<S>::exact)
            r.witness["constant"] = pl::rational_str(*c);
        else
            r.witness["constant"] = *c;
    }
    emit(r, t);
}

void run_edidin_search_report(const pl::FalsifyReport& rep, const char* be, const Timer& t) {
    pl::Report r{"edidin_search", rep.witness_found ? "witness found" : "no witness",
                 rep.witness_found && rep.exact_verified ? "PROOF" : "EVIDENCE", be, {}, {}};
    r.witness["min_sigma"] = rep.min_sigma;
    if (rep.witness_x) r.witness["witness_x"] = rat_vec_json(pl::Vec<pl::Rational>(*rep.witness_x));
    if (rep.witness_rank) r.witness["witness_rank"] = *rep.witness_rank;
    r.params["restarts"] = rep.restarts;
    r.params["seed"] = rep.seed;
    r.params["tau"] = pl::kFalsifyTau;
    emit(r, t);
}

template <class S>
void run_arrangement_checks(const pl::Arrangement<S>& arr, const CheckArrOpts& o) {
    bool acted = false;
    if (!o.witness_vec.empty()) {
        acted = true;
        pl::Vec<pl::Rational> xq = parse_rat_vec(o.witness_vec);
        if constexpr (pl::backend_traits<S>::exact) {
            run_edidin_witness(arr, xq);
        } else {
            pl::Vec<double> x(xq.dim());
            for (std::size_t i = 0; i < x.dim(); ++i) x[i] = xq[i].get_d();
            run_edidin_witness(arr, x);
        }
    }
    if (o.edidin_search) {
        acted = true;
        Timer t;
        auto rep = pl::edidin_numeric_falsify(arr, o.restarts, o.seed);
        run_edidin_search_report(rep, pl::backend_traits<S>::name, t);
    }
    if (o.weighted_tight) {
        acted = true;
        run_weighted_tight(arr, o.weights);
    }
    if (o.fusion_scalable) {
        acted = true;
        if constexpr (pl::backend_traits<S>::exact) {
            Timer t;
            auto c = pl::fusion_scalability(arr);
            pl::Report r{"fusion_scalable", c ? "true" : "false", "PROOF", "exact", {}, {}};
            if (c) {
                auto ws = ordered_json::array();
                for (const auto& w : *c) ws.push_back(pl::rational_str(w));
                r.witness["weights"] = std::move(ws);
            }
            emit(r, t);
        } else {
            throw pl::IoError("--fusion-scalable requires the exact backend");
        }
    }
    if (o.min_count || !acted) run_min_count(arr);
}

template <class S>
void print_bundle_outcomes(const pl::ExampleBundle<S>& b) {
    for (const auto& out : pl::evaluate_bundle(b))
        std::fprintf(stderr, "  %s: expected %s, got %s%s\n", out.name.c_str(),
                     out.expected ? "true" : "false", out.actual ? "true" : "false",
                     out.ok() ? "" : "  <-- MISMATCH");
}

int run_app(int argc, char** argv) {
    CLI::App app{"Exact and numeric certificates for phase retrieval by frames and "
                 "hyperplane arrangements"};
    app.require_subcommand(1);

    // check frame / check arrangement
    auto* check = app.add_subcommand("check", "Run property checks on a frame or arrangement");
    check->require_subcommand(1);

    CheckFrameOpts fo;
    auto* cf = check->add_subcommand("frame", "Frame checks (JSON file or stdin)");
    cf->add_option("file", fo.file, "Frame JSON file ('-' = stdin)");
    cf->add_option("--backend", fo.backend, "Override scalars: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    cf->add_flag("--full-spark", fo.full_spark, "Full spark test");
    cf->add_flag("--cp", fo.cp, "Complement property");
    cf->add_flag("--pr", fo.pr, "Phase retrieval");
    cf->add_flag("--tight", fo.tight, "Tightness");
    cf->add_flag("--scalable", fo.scalable, "Scalability LP (exact only)");

    CheckArrOpts ao;
    auto* ca = check->add_subcommand("arrangement", "Arrangement checks (JSON file or stdin)");
    ca->add_option("file", ao.file, "Arrangement JSON file ('-' = stdin)");
    ca->add_option("--backend", ao.backend, "Override scalars: exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    ca->add_option("--edidin-witness", ao.witness_vec, "Verify a candidate witness vector")
        ->expected(-1);
    ca->add_flag("--edidin-search", ao.edidin_search, "Numeric deficient-witness search");
    ca->add_option("--restarts", ao.restarts, "Search restarts");
    ca->add_option("--seed", ao.seed, "Search RNG seed");
    ca->add_flag("--weighted-tight", ao.weighted_tight, "Weighted tightness check");
    ca->add_option("--weights", ao.weights, "Weights a_i for --weighted-tight")->expected(-1);
    ca->add_flag("--fusion-scalable", ao.fusion_scalable, "Fusion scalability LP (exact only)");
    ca->add_flag("--min-count", ao.min_count, "Subspace-count necessary conditions");

    // perp
    std::string perp_file = "-";
    auto* pp = app.add_subcommand("perp", "Orthogonal complements (frame -> perp hyperplanes, "
                                          "arrangement -> perp subspaces)");
    pp->add_option("file", perp_file, "Frame or arrangement JSON file ('-' = stdin)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a worked example as JSON on stdout");
    gen->require_subcommand(1);
    auto* g1 = gen->add_subcommand("r3-quintet", "Five-vector frame in R^3 (float)");
    std::size_t gd = 3;
    std::vector<std::string> gxs;
    auto* g2 = gen->add_subcommand("rd-family", "2d-1 rational vectors in R^d");
    g2->add_option("--d", gd, "Ambient dimension (>= 3)");
    g2->add_option("--xs", gxs, "Generator points (d-1 rationals)")->expected(-1);
    auto* g3 = gen->add_subcommand("r3-hyperplanes", "Five 2D subspaces of R^3");
    auto* g4 = gen->add_subcommand("r4-six", "Six hyperplanes of R^4");

    // sturm
    std::string poly_file;
    bool use_f0 = false;
    std::vector<std::string> interval;
    auto* st = app.add_subcommand("sturm", "Real-root count via Sturm chains");
    st->add_option("file", poly_file, "Polynomial text file (e34 e44 coefficient per line)");
    st->add_flag("--f0", use_f0, "Use the embedded degree-10 certificate polynomial");
    st->add_option("--interval", interval, "Count roots in (a, b) instead of all of R")
        ->expected(2);

    // reconstruct
    std::string rec_file = "-";
    std::vector<std::string> signal;
    auto* rc = app.add_subcommand("reconstruct", "Brute-force phaseless reconstruction");
    rc->add_option("file", rec_file, "Frame JSON file ('-' = stdin)");
    rc->add_option("--signal", signal, "Hidden signal x (rationals)")->required()->expected(-1);

    // zprobe
    std::string zp_file = "-";
    int zp_trials = 100;
    std::uint64_t zp_seed = 7;
    auto* zp = app.add_subcommand("zprobe", "Randomized search for nonzero Z-set members");
    zp->add_option("file", zp_file, "Arrangement JSON file ('-' = stdin)");
    zp->add_option("--trials", zp_trials, "Number of random trials");
    zp->add_option("--seed", zp_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help text or the parse error
        return code == 0 ? kExitOk : kExitInput;
    }

    if (*cf) {
        auto var = apply_backend(pl::parse_frame_json(load_json(fo.file)), fo.backend);
        std::visit([&](const auto& f) { run_frame_checks(f, fo); }, var);
        return kExitOk;
    }
    if (*ca) {
        auto var = apply_backend(pl::parse_arrangement_json(load_json(ao.file)), ao.backend);
        std::visit([&](const auto& a) { run_arrangement_checks(a, ao); }, var);
        return kExitOk;
    }
    if (*pp) {
        nlohmann::json j = load_json(perp_file);
        if (j.is_object() && j.contains("vectors")) {
            std::visit(
                [&](const auto& f) {
                    std::cout << pl::arrangement_to_json(pl::arrangement_from_perps(f)).dump(2)
                              << "\n";
                },
                pl::parse_frame_json(j));
        } else {
            std::visit(
                [&](const auto& a) {
                    using Sub = std::decay_t<decltype(a.subs[0])>;
                    std::vector<Sub> perps;
                    for (const auto& w : a.subs) perps.push_back(pl::perp(w));
                    std::cout << pl::arrangement_to_json({a.d, std::move(perps)}).dump(2) << "\n";
                },
                pl::parse_arrangement_json(j));
        }
        std::fprintf(stderr, "perp: wrote arrangement JSON\n");
        return kExitOk;
    }
    if (*gen) {
        if (*g1) {
            auto b = pl::gen_r3_quintet();
            std::cout << pl::frame_to_json(*b.frame).dump(2) << "\n";
            print_bundle_outcomes(b);
        } else if (*g2) {
            std::vector<pl::Rational> xs;
            for (const auto& s : gxs) xs.push_back(pl::parse_rational(s));
            auto b = pl::gen_rd_family(gd, std::move(xs));
            std::cout << pl::frame_to_json(*b.frame).dump(2) << "\n";
            std::string used;
            for (const auto& x : b.xs_used) used += " " + pl::rational_str(x);
            std::fprintf(stderr, "rd-family: d=%zu, xs =%s\n", gd, used.c_str());
        } else if (*g3) {
            std::cout << pl::arrangement_to_json(*pl::gen_r3_hyperplane_quintet().arrangement)
                             .dump(2)
                      << "\n";
        } else if (*g4) {
            std::cout << pl::arrangement_to_json(*pl::gen_r4_six_hyperplanes().arrangement).dump(2)
                      << "\n";
        }
        return kExitOk;
    }
    if (*st) {
        if (poly_file.empty() && !use_f0) throw pl::IoError("sturm: give a file or --f0");
        pl::BivariatePoly f;
        if (!poly_file.empty()) {
            std::ifstream in(poly_file);
            if (!in) throw pl::IoError("cannot open '" + poly_file + "'");
            f = pl::parse_poly_text(in);
            if (use_f0 && pl::poly_to_text(f) != pl::poly_to_text(pl::f0_dataset()))
                throw pl::IoError("sturm: file does not match the embedded f0 polynomial");
        } else {
            f = pl::f0_dataset();
        }
        Timer t;
        pl::RootInterval iv;
        if (!interval.empty()) {
            iv.whole_line = false;
            iv.a = pl::parse_rational(interval[0]);
            iv.b = pl::parse_rational(interval[1]);
        }
        int roots = pl::count_real_roots(pl::specialize_x34(f), iv);
        pl::Report r{"sturm", "real roots: " + std::to_string(roots), "PROOF", "exact", {}, {}};
        r.params["specialization"] = "x34=1";
        r.params["interval"] =
            iv.whole_line ? "(-inf, inf)"
                          : "(" + pl::rational_str(iv.a) + ", " + pl::rational_str(iv.b) + ")";
        emit(r, t);
        return kExitOk;
    }
    if (*rc) {
        auto var = pl::parse_frame_json(load_json(rec_file));
        auto* fr = std::get_if<pl::Frame<pl::Rational>>(&var);
        if (!fr) throw pl::IoError("reconstruct: requires an exact (rational) frame");
        pl::Vec<pl::Rational> x = parse_rat_vec(signal);
        Timer t;
        auto classes = pl::reconstruct_brute(*fr, pl::measure(*fr, x));
        pl::Report r{"reconstruct",
                     classes.size() == 1 ? "unique up to sign"
                                         : "ambiguous (" + std::to_string(classes.size()) +
                                               " classes)",
                     "PROOF", "exact", {}, {}};
        auto cs = ordered_json::array();
        for (const auto& c : classes) cs.push_back(rat_vec_json(c));
        r.witness["classes"] = std::move(cs);
        emit(r, t);
        return kExitOk;
    }
    if (*zp) {
        auto var = pl::parse_arrangement_json(load_json(zp_file));
        auto* arr = std::get_if<pl::Arrangement<pl::Rational>>(&var);
        if (!arr) throw pl::IoError("zprobe: requires an exact (rational) arrangement");
        Timer t;
        auto rep = pl::z_random_probe(*arr, zp_trials, zp_seed);
        pl::Report r{"zprobe",
                     rep.exact_members == 0 ? "no nonzero exact member found"
                                            : "exact member found",
                     "EVIDENCE", "exact", {}, {}};
        r.witness["near_members"] = rep.near_members;
        r.witness["exact_members"] = rep.exact_members;
        r.witness["min_near_residual"] = rep.min_near_residual;
        r.params["trials"] = rep.trials;
        r.params["seed"] = rep.seed;
        emit(r, t);
        return kExitOk;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const pl::GuardExceeded& e) {
        std::fprintf(stderr, "guard exceeded: %s\n", e.what());
        return kExitGuard;
    } catch (const pl::IoError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
