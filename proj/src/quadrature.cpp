#include "gncert/quadrature.hpp"

#include <cmath>
#include <cstdint>

namespace gncert {

namespace {

constexpr std::uint64_t kIntervalCap = std::uint64_t(1) << 20;
constexpr int kDepthCap = 64;

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_adapt(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth, std::uint64_t& used) {
    if (++used > kIntervalCap)
        throw QuadratureFailure("adaptive quadrature exceeded its subdivision cap");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= kDepthCap) {
        // allow rounding-level residuals at the bottom of the recursion
        if (std::abs(delta) <= 15.0 * (tol + 1e-16 * std::abs(left + right)))
            return left + right + delta / 15.0;
        throw QuadratureFailure("integrand refused to converge at the depth cap");
    }
    return simpson_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, used) +
           simpson_adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, used);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    std::uint64_t used = 0;
    return simpson_adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0, used);
}

} // namespace gncert
