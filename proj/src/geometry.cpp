#include "sot/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sot {

void MagnetGeometry::validate() const {
    if (!(semi_axis_a > 0.0) || !(semi_axis_b > 0.0) || !(thickness > 0.0))
        throw std::invalid_argument("magnet geometry: all dimensions must be positive");
}

void MaterialParams::validate() const {
    if (!(ms > 0.0)) throw std::invalid_argument("material: Ms must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("material: alpha must be in (0, 1)");
    if (!(ku2 >= 0.0)) throw std::invalid_argument("material: Ku2 must be non-negative");
    if (!(temperature >= 0.0)) throw std::invalid_argument("material: temperature must be non-negative");
}

namespace {

using std::numbers::pi;

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;

    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 64; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            x[i] = -xi;
            x[n - 1 - i] = xi;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

const GaussRule& rule8() {
    static const GaussRule r(8);
    return r;
}
const GaussRule& rule16() {
    static const GaussRule r(16);
    return r;
}
const GaussRule& rule32() {
    static const GaussRule r(32);
    return r;
}

// G(s) = int_0^inf J1(x)^2 (1 - exp(-s x)) / x^2 dx.
// Composite Gauss-Legendre on [0, xmax] plus an asymptotic tail using
// J1(x)^2 ~ (1/(pi x)) (1 - sin 2x): the mean part integrates via the
// substitution u = 1/x, the oscillatory part by two integrations by parts.
// Residual error ~ 3/(pi*xmax^4).
double g_kernel(double s, const GaussRule& rule, double panel_width, double xmax) {
    double acc = 0.0;
    const int panels = static_cast<int>(std::ceil(xmax / panel_width));
    const double h = xmax / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double x = mid + 0.5 * h * rule.x[i];
            const double j1 = std::cyl_bessel_j(1.0, x);
            sum += rule.w[i] * j1 * j1 * (1.0 - std::exp(-s * x)) / (x * x);
        }
        acc += 0.5 * h * sum;
    }

    // Mean tail: (1/pi) [1/(2 xmax^2) - int_xmax^inf exp(-s x)/x^3 dx],
    // the remaining integral via u = 1/x on (0, 1/xmax].
    const GaussRule& tr = rule32();
    double e3 = 0.0;
    const double ulim = 1.0 / xmax;
    for (std::size_t i = 0; i < tr.x.size(); ++i) {
        const double u = 0.5 * ulim * (1.0 + tr.x[i]);
        e3 += tr.w[i] * u * std::exp(-s / u);
    }
    e3 *= 0.5 * ulim;
    const double mean = (0.5 / (xmax * xmax) - e3) / pi;

    // Oscillatory tail of -(1/pi) int sin(2x) g(x) dx, g = (1-exp(-sx))/x^3.
    const double ex = std::exp(-s * xmax);
    const double g = (1.0 - ex) / (xmax * xmax * xmax);
    const double gp = s * ex / (xmax * xmax * xmax) - 3.0 * (1.0 - ex) / (xmax * xmax * xmax * xmax);
    const double osc = -(g * std::cos(2.0 * xmax) / 2.0 - gp * std::sin(2.0 * xmax) / 4.0) / pi;

    return acc + mean + osc;
}

struct QuadSpec {
    const GaussRule* radial;
    double panel_width;
    double xmax;
    const GaussRule* angular;
    int angular_panels;  // on [0, pi/2]
};

QuadSpec quad_spec(DemagAccuracy acc) {
    if (acc == DemagAccuracy::High) return {&rule16(), pi / 2.0, 300.0, &rule16(), 8};
    return {&rule8(), pi, 80.0, &rule16(), 2};
}

}  // namespace

// Magnetometric factors of the elliptic cylinder, from the Fourier-space
// form of the magnetostatic self-energy. With the angular kernel
// wh(phi) = a b / sqrt(b^2 cos^2 + a^2 sin^2):
//   Nzz = (1/(pi t)) int_0^{2pi} wh G(t/wh) dphi
//   Nxx = (1/(pi t)) int_0^{2pi} (cos^2 phi wh^2/a^2) (t/2 - wh G(t/wh)) dphi
//   Nyy = same with sin^2 phi wh^2/b^2.
// The trace identity Nxx+Nyy+Nzz = 1 cancels G pointwise, so it survives
// quadrature error exactly.
DemagTensor demag_factors(const MagnetGeometry& geom, DemagAccuracy acc) {
    geom.validate();
    const double a = geom.semi_axis_a;
    const double b = geom.semi_axis_b;
    const double t = geom.thickness;
    const QuadSpec q = quad_spec(acc);

    if (std::abs(a - b) <= 1e-12 * (a + b)) {
        const double g = g_kernel(t / a, *q.radial, q.panel_width, q.xmax);
        const double nzz = 2.0 * a / t * g;
        const double nxx = 0.5 - a / t * g;
        return {nxx, nxx, nzz};
    }

    double xx = 0.0, yy = 0.0, zz = 0.0;
    const double h = (pi / 2.0) / q.angular_panels;
    for (int p = 0; p < q.angular_panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t i = 0; i < q.angular->x.size(); ++i) {
            const double phi = mid + 0.5 * h * q.angular->x[i];
            const double wq = q.angular->w[i] * 0.5 * h;
            const double c = std::cos(phi), s = std::sin(phi);
            const double wh = a * b / std::sqrt(b * b * c * c + a * a * s * s);
            const double g = g_kernel(t / wh, *q.radial, q.panel_width, q.xmax);
            const double common = 0.5 * t - wh * g;
            xx += wq * (c * c * wh * wh / (a * a)) * common;
            yy += wq * (s * s * wh * wh / (b * b)) * common;
            zz += wq * wh * g;
        }
    }
    // Symmetry extends [0, pi/2] to the full period.
    const double scale = 4.0 / (pi * t);
    return {scale * xx, scale * yy, scale * zz};
}

}  // namespace sot
