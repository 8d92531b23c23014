#include "cvq/teleport.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cvq/quadrature.hpp"

namespace cvq {

namespace {

const GaussHermiteRule& cached_rule(int order) {
    thread_local std::map<int, GaussHermiteRule> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_hermite(order)).first;
    return it->second;
}

// (1/π) ∫ d²λ f(λ) e^{-|λ|²} with λ = x + iy on a product Gauss-Hermite grid.
double gaussian_plane_integral(const std::function<std::complex<double>(std::complex<double>)>& f,
                               int order) {
    const GaussHermiteRule& rule = cached_rule(order);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            std::complex<double> lambda(rule.nodes[i], rule.nodes[j]);
            sum += rule.weights[i] * rule.weights[j] * f(lambda).real();
        }
    }
    return sum / M_PI;
}

FidelityResult refine_fidelity(
    const std::function<std::complex<double>(std::complex<double>)>& integrand, int order,
    double s, double r) {
    double coarse = gaussian_plane_integral(integrand, order);
    double fine = gaussian_plane_integral(integrand, 2 * order);
    double est_error = std::abs(fine - coarse);
    if (est_error > 1e-9) {
        throw NumericalError("average_fidelity: quadrature not converged, order " +
                             std::to_string(order) + " -> " + std::to_string(coarse) +
                             ", order " + std::to_string(2 * order) + " -> " +
                             std::to_string(fine));
    }
    if (fine < -1e-9 || fine > 1.0 + 1e-9) {
        throw NumericalError("average_fidelity: value " + std::to_string(fine) +
                             " outside [0,1]");
    }
    FidelityResult result;
    result.fidelity = std::min(std::max(fine, 0.0), 1.0);
    result.s = s;
    result.r = r;
    result.quadrature_order = 2 * order;
    result.est_error = est_error;
    return result;
}

std::vector<double> log_factorials(int count) {
    std::vector<double> lg(count);
    for (int i = 0; i < count; ++i) lg[i] = std::lgamma(double(i) + 1.0);
    return lg;
}

} // namespace

CharFnPoint make_char_point(const SqueezeParam& sq, std::complex<double> lambda2,
                            std::complex<double> lambda3) {
    double ch = std::cosh(sq.s);
    double sh = std::sinh(sq.s);
    CharFnPoint p;
    p.lambda2 = lambda2;
    p.lambda3 = lambda3;
    p.alpha = lambda2 * ch - std::conj(lambda3) * sh;
    p.beta = lambda3 * ch - std::conj(lambda2) * sh;
    return p;
}

std::complex<double> char_fn_tmss(const SqueezeParam& sq, const CharFnPoint& p) {
    (void)sq;
    return std::exp(-(std::norm(p.alpha) + std::norm(p.beta)) / 2.0);
}

std::complex<double> char_fn_closed(const SqueezeParam& sq, SuperpositionOp op_a,
                                    SuperpositionOp op_b, const CharFnPoint& p) {
    double ch = std::cosh(sq.s);
    double sh = std::sinh(sq.s);
    double A = op_a.t * op_b.t * sh * sh + op_a.r * op_b.r * ch * ch;
    double B = (op_a.t * op_b.t + op_a.r * op_b.r) * ch * sh;
    double C = std::sqrt(2.0) * op_a.t * op_b.r * ch * sh;
    double D = std::sqrt(2.0) * op_a.r * op_b.t * ch * sh;
    double M = A * A + B * B + C * C + D * D;

    const std::complex<double> al = p.alpha;
    const std::complex<double> be = p.beta;
    const double aa = std::norm(al);
    const double bb = std::norm(be);
    const std::complex<double> al_c = std::conj(al);
    const std::complex<double> be_c = std::conj(be);

    std::complex<double> val =
        A * A * (1.0 - aa) * (1.0 - bb) + B * B +
        C * C * (1.0 - 2.0 * bb + bb * bb / 2.0) + D * D * (1.0 - 2.0 * aa + aa * aa / 2.0) +
        A * B * (al * be + al_c * be_c) +
        (A / std::sqrt(2.0)) * (al * be_c + al_c * be) * (C * (bb - 2.0) + D * (aa - 2.0)) +
        (B * C / std::sqrt(2.0)) * (be * be + be_c * be_c) +
        (B * D / std::sqrt(2.0)) * (al * al + al_c * al_c) +
        (C * D / 2.0) * (al * al * be_c * be_c + al_c * al_c * be * be);
    return std::exp(-(aa + bb) / 2.0) / M * val;
}

namespace {

// Rectangular slice of the displacement matrix: entries <n'|D(ξ)|n> for
// n' < rows, n < cols. Filled by diagonals of fixed offset k = |n' - n| so the
// generalized Laguerre three-term recurrence runs once per diagonal.
Eigen::MatrixXcd displacement_block(std::complex<double> xi, int rows, int cols) {
    const double x = std::norm(xi);
    const int diag_max = std::max(rows, cols);
    const std::vector<double> lg = log_factorials(diag_max + 1);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rows, cols);

    for (int k = 0; k < diag_max; ++k) {
        double l_prev = 1.0;           // L_0^{(k)}
        double l_curr = 1.0 + k - x;   // L_1^{(k)}
        const std::complex<double> up_phase = std::pow(xi, k);
        const std::complex<double> down_phase = std::pow(-std::conj(xi), k);
        for (int n = 0; n + k < diag_max; ++n) {
            if (n + k >= rows && n + k >= cols) break;
            if (n >= rows && n >= cols) break;
            double laguerre;
            if (n == 0) {
                laguerre = l_prev;
            } else if (n == 1) {
                laguerre = l_curr;
            } else {
                double l_next = ((2.0 * (n - 1) + 1.0 + k - x) * l_curr -
                                 (double(n - 1) + k) * l_prev) /
                                double(n);
                l_prev = l_curr;
                l_curr = l_next;
                laguerre = l_next;
            }
            double magnitude = std::exp(0.5 * (lg[n] - lg[n + k]) - x / 2.0);
            if (n + k < rows && n < cols) d(n + k, n) = up_phase * magnitude * laguerre;
            if (n < rows && n + k < cols) d(n, n + k) = down_phase * magnitude * laguerre;
        }
    }
    return d;
}

} // namespace

Eigen::MatrixXcd displacement_matrix(std::complex<double> xi, int dims) {
    return displacement_block(xi, dims, dims);
}

std::complex<double> char_fn_numeric(const TwoModeState& state, const CharFnPoint& p) {
    if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("char_fn_numeric expects a normalized state");
    }
    const Eigen::Index rows = state.coeffs.rows();
    const Eigen::Index cols = state.coeffs.cols();
    const double reach = std::max(std::abs(p.lambda2), std::abs(p.lambda3));
    int dims = static_cast<int>(std::max(rows, cols)) +
               static_cast<int>(std::ceil(8.0 * reach + 6.0 * reach * reach)) + 20;

    for (int attempt = 0; attempt < 2; ++attempt) {
        // only the columns over the state's support enter the expectation; the
        // extra rows exist to certify that those columns carry full weight
        Eigen::MatrixXcd d_a = displacement_block(p.lambda2, dims, static_cast<int>(rows));
        Eigen::MatrixXcd d_b = displacement_block(p.lambda3, dims, static_cast<int>(cols));

        double deficiency = 0.0;
        for (Eigen::Index n = 0; n < rows; ++n) {
            deficiency = std::max(deficiency, std::abs(1.0 - d_a.col(n).squaredNorm()));
        }
        for (Eigen::Index n = 0; n < cols; ++n) {
            deficiency = std::max(deficiency, std::abs(1.0 - d_b.col(n).squaredNorm()));
        }
        if (deficiency > 1e-10) {
            if (attempt == 0) {
                dims *= 2;
                continue;
            }
            throw TruncationError("char_fn_numeric: displacement truncation deficiency " +
                                  std::to_string(deficiency));
        }

        // value = Σ conj(c(n',m')) D_a(n',n) D_b(m',m) c(n,m)
        const Eigen::MatrixXcd a_sq = d_a.topRows(rows);
        const Eigen::MatrixXcd b_sq = d_b.topRows(cols);
        return (a_sq.transpose() * state.coeffs.conjugate() * b_sq * state.coeffs.transpose())
            .trace();
    }
    throw NumericalError("char_fn_numeric: unreachable");
}

FidelityResult average_fidelity(const SqueezeParam& sq, SuperpositionOp op_a,
                                SuperpositionOp op_b, int order) {
    auto integrand = [&](std::complex<double> lambda) {
        CharFnPoint p = make_char_point(sq, std::conj(lambda), lambda);
        return char_fn_closed(sq, op_a, op_b, p);
    };
    return refine_fidelity(integrand, order, sq.s, op_a.r);
}

FidelityResult average_fidelity_tmss(const SqueezeParam& sq, int order) {
    auto integrand = [&](std::complex<double> lambda) {
        CharFnPoint p = make_char_point(sq, std::conj(lambda), lambda);
        return char_fn_tmss(sq, p);
    };
    return refine_fidelity(integrand, order, sq.s, 0.0);
}

FidelityResult average_fidelity_numeric(const TwoModeState& state, std::complex<double> gamma,
                                        int order) {
    // |<D⊗D>| <= 1, so under the native Gaussian weight everything beyond
    // |λ|² = 40 contributes less than e^{-40}; skipping those nodes keeps the
    // displacement dimension needed at the outermost node bounded
    constexpr double kRadiusSqCut = 40.0;
    auto integrand = [&](std::complex<double> lambda) -> std::complex<double> {
        if (std::norm(lambda) > kRadiusSqCut) return {};
        // C_in(λ) C_in(-λ) = e^{-|λ|²} e^{iφ} e^{-iφ}; the Gaussian factor is the
        // quadrature weight, the phases are kept explicit for the amplitude check
        std::complex<double> phase = lambda * std::conj(gamma) - std::conj(lambda) * gamma;
        CharFnPoint p;
        p.lambda2 = std::conj(lambda);
        p.lambda3 = lambda;
        std::complex<double> resource = char_fn_numeric(state, p);
        return std::exp(phase) * std::exp(-phase) * resource;
    };
    return refine_fidelity(integrand, order, 0.0, 0.0);
}

double fidelity_fock(const TwoModeState& state) {
    if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("fidelity_fock expects a normalized state");
    }
    const Eigen::MatrixXcd& c = state.coeffs;
    const int rows = static_cast<int>(c.rows());
    const int cols = static_cast<int>(c.cols());
    const std::vector<double> lg = log_factorials(rows + cols + 2);
    const double ln2 = std::log(2.0);

    double fidelity = 0.0;
    for (int k = -(rows - 1); k <= rows - 1; ++k) {
        const int n1_lo = std::max(0, -k);
        const int n1_hi = rows - std::max(0, k); // exclusive
        const int m1_lo = std::max(0, -k);
        const int m1_hi = cols - std::max(0, k); // exclusive
        for (int n1 = n1_lo; n1 < n1_hi; ++n1) {
            const int n = n1 + k;
            for (int m1 = m1_lo; m1 < m1_hi; ++m1) {
                const int m = m1 + k;
                const int s_idx = n + m1;
                double w = std::exp(lg[s_idx] - (s_idx + 1) * ln2 -
                                    0.5 * (lg[n] + lg[n1] + lg[m] + lg[m1]));
                fidelity += (std::conj(c(n1, m1)) * c(n, m)).real() * w;
            }
        }
    }
    return fidelity;
}

double tmss_fidelity_closed_form(double s) { return 1.0 / (1.0 + std::exp(-2.0 * s)); }

} // namespace cvq
