#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "annulus_lab/numerics.hpp"

namespace annulus_lab::numerics {

void ToleranceConfig::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"quad_abs_tol", quad_abs_tol}, {"ode_rel_tol", ode_rel_tol}, {"root_tol", root_tol},
        {"eig_tol", eig_tol},           {"cluster_rel_tol", cluster_rel_tol},
    };
    for (const auto& [name, value] : fields) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigurationError(std::string("tolerance ") + name + " must be positive");
        }
    }
}

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    int max_depth;
};

double checked(const SimpsonState& st, double x) {
    const double v = st.f(x);
    if (!std::isfinite(v)) {
        throw NumericError("adaptive_simpson: integrand not finite at x = " + std::to_string(x));
    }
    return v;
}

double simpson_step(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked(st, lm);
    const double frm = checked(st, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.max_depth) {
        throw NumericError("adaptive_simpson: recursion depth exceeded near x = " + std::to_string(m));
    }
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) {
        return 0.0;
    }
    if (!(tol > 0.0)) {
        throw NumericError("adaptive_simpson: tolerance must be positive");
    }
    const SimpsonState st{f, max_depth};
    const double fa = checked(st, a);
    const double fb = checked(st, b);
    const double fm = checked(st, 0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(st, a, b, fa, fm, fb, whole, tol, 0);
}

double brent_root(const std::function<double(double)>& f, double a, double b, double tol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb) || fa * fb > 0.0) {
        throw NumericError("brent_root: invalid bracket [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
        if (!std::isfinite(fb)) {
            throw NumericError("brent_root: function not finite at x = " + std::to_string(b));
        }
    }
    throw NumericError("brent_root: no convergence");
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_size_(n, 1), components_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

void DisjointSet::check(std::size_t i) const {
    if (i >= parent_.size()) {
        throw std::out_of_range("DisjointSet: index " + std::to_string(i) + " out of range");
    }
}

std::size_t DisjointSet::find(std::size_t i) {
    check(i);
    std::size_t root = i;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[i] != root) {
        const std::size_t next = parent_[i];
        parent_[i] = root;
        i = next;
    }
    return root;
}

bool DisjointSet::unite(std::size_t i, std::size_t j) {
    std::size_t ri = find(i);
    std::size_t rj = find(j);
    if (ri == rj) return false;
    if (rank_size_[ri] < rank_size_[rj]) std::swap(ri, rj);
    parent_[rj] = ri;
    rank_size_[ri] += rank_size_[rj];
    --components_;
    return true;
}

} // namespace annulus_lab::numerics
