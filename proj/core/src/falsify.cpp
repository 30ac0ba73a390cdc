#include "phaselab/falsify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <thread>

namespace phaselab {
namespace {

std::size_t thread_cap() {
    if (const char* env = std::getenv("PHASELAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min<std::size_t>(hw, 8) : 1;
}

// Runs fn(i) for i in [0, count); results must be written to per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t threads = std::min(thread_cap(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; avoids std::normal_distribution for cross-platform determinism.
double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng), u2 = uniform01(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// Cyclic Jacobi eigensolver for small symmetric matrices.
// Eigenvalues ascending; eigenvectors as columns of v.
void jacobi_eigh(Mat<double> a, std::vector<double>& w, Mat<double>& v) {
    const std::size_t n = a.rows();
    v = Mat<double>::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    w.resize(n);
    Mat<double> vs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
    }
    v = vs;
}

// Gaussian elimination with partial pivoting for small dense systems.
bool gauss_solve(Mat<double> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (std::fabs(a(p, k)) < 1e-300) return false;
        if (p != k) {
            a.swap_rows(p, k);
            std::swap(b[p], b[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return true;
}

std::vector<double> mat_vec(const Mat<double>& m, const std::vector<double>& x) {
    std::vector<double> r(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * x[j];
    return r;
}

double vec_norm(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void normalize(std::vector<double>& x) {
    double n = vec_norm(x);
    if (n > 0)
        for (double& v : x) v /= n;
}

// A(x) = sum_i P_i x x^T P_i; its smallest eigenvalue is sigma_min(M(x))^2.
Mat<double> gram_at(const std::vector<Mat<double>>& ps, const std::vector<double>& x) {
    const std::size_t d = x.size();
    Mat<double> a(d, d);
    for (const auto& p : ps) {
        std::vector<double> px = mat_vec(p, x);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) += px[i] * px[j];
    }
    return a;
}

double sigma_min_at(const std::vector<Mat<double>>& ps, const std::vector<double>& x) {
    std::vector<double> w;
    Mat<double> v;
    jacobi_eigh(gram_at(ps, x), w, v);
    return std::sqrt(std::max(w.front(), 0.0));
}

struct RestartResult {
    double sigma = std::numeric_limits<double>::infinity();
    std::vector<double> x;
};

RestartResult run_restart(const std::vector<Mat<double>>& ps, std::uint64_t seed,
                          std::uint64_t index) {
    const std::size_t d = ps.front().rows();
    auto rng = restart_rng(seed, index);
    std::vector<double> x(d);
    for (double& e : x) e = gaussian(rng);
    normalize(x);

    // Alternating eigen-iteration on g(x, v) = sum_i (x^T P_i v)^2.
    std::vector<double> w;
    Mat<double> evecs;
    std::vector<double> v(d, 0);
    for (int it = 0; it < 80; ++it) {
        jacobi_eigh(gram_at(ps, x), w, evecs);
        for (std::size_t i = 0; i < d; ++i) v[i] = evecs(i, 0);
        jacobi_eigh(gram_at(ps, v), w, evecs);
        for (std::size_t i = 0; i < d; ++i) x[i] = evecs(i, 0);
    }

    // Gauss-Newton polish of M(x) v = 0, ||x|| = ||v|| = 1 (quadratic
    // convergence at genuine rank-drop points, where alternation crawls).
    const std::size_t ne = ps.size() + 2, nu = 2 * d;
    std::vector<double> gx = x, gv = v;
    for (int it = 0; it < 50; ++it) {
        std::vector<double> f(ne);
        Mat<double> jac(ne, nu);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::vector<double> px = mat_vec(ps[i], gx), pv = mat_vec(ps[i], gv);
            double s = 0;
            for (std::size_t k = 0; k < d; ++k) s += px[k] * gv[k];
            f[i] = s;
            for (std::size_t k = 0; k < d; ++k) {
                jac(i, k) = pv[k];
                jac(i, d + k) = px[k];
            }
        }
        double nx = 0, nv = 0;
        for (std::size_t k = 0; k < d; ++k) {
            nx += gx[k] * gx[k];
            nv += gv[k] * gv[k];
        }
        f[ps.size()] = (nx - 1) / 2;
        f[ps.size() + 1] = (nv - 1) / 2;
        for (std::size_t k = 0; k < d; ++k) {
            jac(ps.size(), k) = gx[k];
            jac(ps.size() + 1, d + k) = gv[k];
        }
        if (vec_norm(f) < 1e-14) break;

        Mat<double> h(nu, nu);
        std::vector<double> g(nu, 0);
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t a = 0; a < nu; ++a) {
                g[a] += jac(i, a) * f[i];
                for (std::size_t b = 0; b < nu; ++b) h(a, b) += jac(i, a) * jac(i, b);
            }
        for (std::size_t a = 0; a < nu; ++a) {
            h(a, a) += 1e-12;
            g[a] = -g[a];
        }
        std::vector<double> delta;
        if (!gauss_solve(h, g, delta)) break;
        bool finite = true;
        for (std::size_t k = 0; k < d; ++k) {
            gx[k] += delta[k];
            gv[k] += delta[d + k];
            finite = finite && std::isfinite(gx[k]) && std::isfinite(gv[k]);
        }
        if (!finite) {
            gx = x;
            break;
        }
    }
    normalize(gx);

    RestartResult best;
    double s_alt = sigma_min_at(ps, x);
    double s_gn = vec_norm(gx) > 0 ? sigma_min_at(ps, gx) : s_alt;
    if (s_gn <= s_alt) {
        best.sigma = s_gn;
        best.x = gx;
    } else {
        best.sigma = s_alt;
        best.x = x;
    }
    return best;
}

std::vector<Mat<double>> to_double_projectors(const Arrangement<Rational>& arr) {
    std::vector<Mat<double>> ps;
    for (const auto& w : arr.subs) {
        const auto& p = w.projector();
        Mat<double> pd(p.rows(), p.cols());
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) pd(i, j) = p(i, j).get_d();
        ps.push_back(std::move(pd));
    }
    return ps;
}

std::vector<Mat<double>> collect_projectors(const Arrangement<double>& arr) {
    std::vector<Mat<double>> ps;
    for (const auto& w : arr.subs) ps.push_back(w.projector());
    return ps;
}

// Scales so the largest-magnitude coordinate is exactly 1, then rounds
// coordinatewise with denominators up to 64.
std::optional<Vec<Rational>> round_candidate(const std::vector<double>& x) {
    double top = 0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::fabs(x[i]) > top) {
            top = std::fabs(x[i]);
            arg = i;
        }
    if (top == 0) return std::nullopt;
    Vec<Rational> r(x.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] = round_to_rational(x[i] / x[arg], 64);
        nonzero = nonzero || sgn(r[i]) != 0;
    }
    if (!nonzero) return std::nullopt;
    return r;
}

FalsifyReport falsify_common(const std::vector<Mat<double>>& ps, int restarts,
                             std::uint64_t seed) {
    FalsifyReport rep;
    rep.seed = seed;
    rep.restarts = restarts;
    std::vector<RestartResult> results(static_cast<std::size_t>(std::max(restarts, 0)));
    parallel_for(results.size(),
                 [&](std::size_t i) { results[i] = run_restart(ps, seed, i); });
    rep.min_sigma = std::numeric_limits<double>::infinity();
    for (const auto& r : results)
        if (r.sigma < rep.min_sigma) {  // lowest sigma, then lowest restart index
            rep.min_sigma = r.sigma;
            rep.best_x = r.x;
        }
    return rep;
}

}  // namespace

Rational round_to_rational(double x, long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("round_to_rational: non-finite");
    bool neg = x < 0;
    double a = std::fabs(x);
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = a;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 1e17) break;
        long ai = static_cast<long>(fl);
        if (q0 + ai * q1 > max_den && q1 > 0) break;
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (q1 > max_den) break;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 < 1 || q1 > max_den) {
        // Fall back to the best bounded-denominator convergent seen.
        if (q0 >= 1 && q0 <= max_den) {
            p1 = p0;
            q1 = q0;
        } else {
            p1 = static_cast<long>(std::llround(a));
            q1 = 1;
        }
    }
    return make_rat(neg ? -p1 : p1, q1);
}

FalsifyReport edidin_numeric_falsify(const Arrangement<Rational>& arr, int restarts,
                                     std::uint64_t seed) {
    FalsifyReport rep = falsify_common(to_double_projectors(arr), restarts, seed);
    if (rep.min_sigma < kFalsifyTau) {
        if (auto cand = round_candidate(rep.best_x)) {
            auto w = edidin_verify_witness(arr, *cand);
            if (!w.spans) {
                rep.witness_found = true;
                rep.exact_verified = true;
                rep.witness_x = cand->entries();
                rep.witness_rank = w.achieved_rank;
            }
        }
    }
    return rep;
}

FalsifyReport edidin_numeric_falsify(const Arrangement<double>& arr, int restarts,
                                     std::uint64_t seed) {
    FalsifyReport rep = falsify_common(collect_projectors(arr), restarts, seed);
    if (rep.min_sigma < kFalsifyTau) {
        if (auto cand = round_candidate(rep.best_x)) {
            Vec<double> xd(cand->dim());
            for (std::size_t i = 0; i < cand->dim(); ++i) xd[i] = (*cand)[i].get_d();
            auto w = edidin_verify_witness(arr, xd);
            if (!w.spans) {
                rep.witness_found = true;
                rep.exact_verified = false;  // float backend: evidence only
                rep.witness_x = cand->entries();
                rep.witness_rank = w.achieved_rank;
            }
        }
    }
    return rep;
}

ZProbeReport z_random_probe(const Arrangement<Rational>& arr, int trials,
                            std::uint64_t seed) {
    if (!arr.all_hyperplanes())
        throw std::invalid_argument("z_random_probe: hyperplanes only");
    const std::size_t d = arr.d, n = arr.size();
    std::vector<Mat<double>> ps = to_double_projectors(arr);

    // Gram matrix of the trace functionals Q -> <P_j, Q>_F.
    Mat<double> gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) s += ps[i](a, b) * ps[j](a, b);
            gram(i, j) = s;
        }
    for (std::size_t i = 0; i < n; ++i) gram(i, i) += 1e-12;

    auto frob = [&](const Mat<double>& q) {
        double s = 0;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) s += q(a, b) * q(a, b);
        return std::sqrt(s);
    };
    auto constraint_vals = [&](const Mat<double>& q) {
        std::vector<double> t(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) t[j] += ps[j](a, b) * q(a, b);
        return t;
    };

    ZProbeReport rep;
    rep.seed = seed;
    rep.trials = trials;
    rep.min_near_residual = std::numeric_limits<double>::infinity();

    for (int trial = 0; trial < trials; ++trial) {
        auto rng = restart_rng(seed, static_cast<std::uint64_t>(trial));
        std::vector<double> xs(d), ys(d);
        for (double& e : xs) e = gaussian(rng);
        for (double& e : ys) e = gaussian(rng);
        Mat<double> q(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) q(a, b) = xs[a] * xs[b] - ys[a] * ys[b];

        double c_res = 0, r_res = 0;
        for (int it = 0; it < 200; ++it) {
            // Project onto the affine constraint subspace <P_j, Q> = 0.
            std::vector<double> t = constraint_vals(q), lam;
            if (!gauss_solve(gram, t, lam)) break;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) q(a, b) -= lam[j] * ps[j](a, b);

            // Project onto the rank-<=2 cone (keep the two extreme eigenvalues).
            std::vector<double> w;
            Mat<double> v;
            jacobi_eigh(q, w, v);
            std::vector<std::size_t> keep(d);
            for (std::size_t i = 0; i < d; ++i) keep[i] = i;
            std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
                return std::fabs(w[a]) > std::fabs(w[b]);
            });
            r_res = 0;
            for (std::size_t i = 2; i < d; ++i) r_res += w[keep[i]] * w[keep[i]];
            r_res = std::sqrt(r_res);
            Mat<double> q2(d, d);
            for (std::size_t k = 0; k < 2 && k < d; ++k) {
                std::size_t e = keep[k];
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) q2(a, b) += w[e] * v(a, e) * v(b, e);
            }
            q = q2;
            double nq = frob(q);
            if (nq < 1e-12) break;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) q(a, b) /= nq;
            std::vector<double> tc = constraint_vals(q);
            c_res = vec_norm(tc);
        }
        double combined = std::max(c_res, r_res);
        if (frob(q) < 0.5) continue;  // collapsed toward zero
        rep.min_near_residual = std::min(rep.min_near_residual, combined);
        if (combined < 1e-10) {
            ++rep.near_members;
            // Exact re-verification after rational rounding.
            double top = 0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) top = std::max(top, std::fabs(q(a, b)));
            if (top == 0) continue;
            Mat<Rational> qr(d, d);
            bool nonzero = false;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b) {
                    Rational v = round_to_rational(q(a, b) / top, 64);
                    qr(a, b) = v;
                    qr(b, a) = v;
                    nonzero = nonzero || sgn(v) != 0;
                }
            if (!nonzero) continue;
            auto zm = z_membership(arr, qr);
            if (zm.member) ++rep.exact_members;
        }
    }
    return rep;
}

}  // namespace phaselab
