#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "sentcause/errors.hpp"
#include "sentcause/stats.hpp"

namespace sentcause {

double f_cdf(double x, double d1, double d2) {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    // F = (X1/d1)/(X2/d2) ~ d1 x / (d1 x + d2) is Beta(d1/2, d2/2).
    const double z = d1 * x / (d1 * x + d2);
    return boost::math::ibeta(0.5 * d1, 0.5 * d2, z);
}

double f_sf(double x, double d1, double d2) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    // Complement via the mirrored beta argument keeps precision in the far tail.
    const double w = d2 / (d1 * x + d2);
    return boost::math::ibeta(0.5 * d2, 0.5 * d1, w);
}

double t_two_sided_p(double t, double df) {
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return 0.0;
    return boost::math::ibeta(0.5 * df, 0.5, df / (df + t * t));
}

double aic_var(double log_det_sigma, std::size_t t_eff, std::size_t k, std::size_t p) {
    if (t_eff <= k * p + k) {
        throw InsufficientDataError("AIC needs T_eff > k*p + k (T_eff=" + std::to_string(t_eff) + ")");
    }
    const double params = static_cast<double>(k * k * p + k);
    return log_det_sigma + 2.0 * params / static_cast<double>(t_eff);
}

}  // namespace sentcause
