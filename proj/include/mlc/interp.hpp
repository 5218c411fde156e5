// Monotone piecewise-cubic interpolation (Fritsch-Carlson).
#ifndef MLC_INTERP_HPP
#define MLC_INTERP_HPP

#include <optional>
#include <vector>

namespace mlc {

/// Shape-preserving cubic through strictly-increasing abscissae. For
/// monotone data the interpolant is monotone, which keeps chord tests and
/// rate inversions free of interpolation ripple.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    double y_min() const { return y_.front(); }
    double y_max() const { return y_.back(); }

    /// Inverse for non-decreasing data: smallest x with f(x) = y, found by
    /// bisection to `tol`. Empty when y lies outside [y_min, y_max].
    std::optional<double> invert(double y, double tol = 1e-9) const;

private:
    std::vector<double> x_, y_, slope_;
};

}  // namespace mlc

#endif
