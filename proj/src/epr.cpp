#include "cvq/epr.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace cvq {

namespace {

void require_normalized(const TwoModeState& state, const char* who) {
    if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument(std::string(who) + " expects a normalized state");
    }
}

// Downhill simplex minimizer; returns the best vertex.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x0, double scale, int max_iter,
                            double f_tol) {
    const int dim = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> xs(dim + 1, x0);
    std::vector<double> fs(dim + 1);
    for (int i = 0; i < dim; ++i) xs[i + 1][i] += scale;
    for (int i = 0; i <= dim; ++i) fs[i] = f(xs[i]);

    auto order = [&] {
        std::vector<int> idx(dim + 1);
        for (int i = 0; i <= dim; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<Eigen::VectorXd> xs2(dim + 1);
        std::vector<double> fs2(dim + 1);
        for (int i = 0; i <= dim; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        order();
        if (fs[dim] - fs[0] < f_tol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < dim; ++i) centroid += xs[i];
        centroid /= dim;

        Eigen::VectorXd reflected = centroid + (centroid - xs[dim]);
        double f_reflected = f(reflected);
        if (f_reflected < fs[0]) {
            Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[dim]);
            double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                xs[dim] = expanded;
                fs[dim] = f_expanded;
            } else {
                xs[dim] = reflected;
                fs[dim] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fs[dim - 1]) {
            xs[dim] = reflected;
            fs[dim] = f_reflected;
            continue;
        }
        Eigen::VectorXd contracted = centroid + 0.5 * (xs[dim] - centroid);
        double f_contracted = f(contracted);
        if (f_contracted < fs[dim]) {
            xs[dim] = contracted;
            fs[dim] = f_contracted;
            continue;
        }
        for (int i = 1; i <= dim; ++i) {
            xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
            fs[i] = f(xs[i]);
        }
    }
    order();
    return xs[0];
}

} // namespace

QuadratureMoments quadrature_moments(const TwoModeState& state) {
    require_normalized(state, "quadrature_moments");
    const Eigen::MatrixXcd& c = state.coeffs;
    const Eigen::Index rows = c.rows();
    const Eigen::Index cols = c.cols();

    QuadratureMoments m;
    for (Eigen::Index n = 0; n < rows; ++n) {
        for (Eigen::Index mm = 0; mm < cols; ++mm) {
            double p = std::norm(c(n, mm));
            m.n_a += double(n) * p;
            m.n_b += double(mm) * p;
        }
    }
    for (Eigen::Index n = 0; n + 1 < rows; ++n) {
        for (Eigen::Index mm = 0; mm < cols; ++mm) {
            m.mean_a += std::conj(c(n, mm)) * std::sqrt(double(n + 1)) * c(n + 1, mm);
        }
    }
    for (Eigen::Index n = 0; n < rows; ++n) {
        for (Eigen::Index mm = 0; mm + 1 < cols; ++mm) {
            m.mean_b += std::conj(c(n, mm)) * std::sqrt(double(mm + 1)) * c(n, mm + 1);
        }
    }
    for (Eigen::Index n = 0; n + 2 < rows; ++n) {
        for (Eigen::Index mm = 0; mm < cols; ++mm) {
            m.aa += std::conj(c(n, mm)) * std::sqrt(double((n + 1) * (n + 2))) * c(n + 2, mm);
        }
    }
    for (Eigen::Index n = 0; n < rows; ++n) {
        for (Eigen::Index mm = 0; mm + 2 < cols; ++mm) {
            m.bb += std::conj(c(n, mm)) * std::sqrt(double((mm + 1) * (mm + 2))) * c(n, mm + 2);
        }
    }
    for (Eigen::Index n = 0; n + 1 < rows; ++n) {
        for (Eigen::Index mm = 0; mm + 1 < cols; ++mm) {
            m.ab += std::conj(c(n, mm)) * std::sqrt(double((n + 1) * (mm + 1))) *
                    c(n + 1, mm + 1);
        }
    }
    for (Eigen::Index n = 0; n + 1 < rows; ++n) {
        for (Eigen::Index mm = 1; mm < cols; ++mm) {
            m.ab_dag += std::conj(c(n, mm)) * std::sqrt(double((n + 1) * mm)) * c(n + 1, mm - 1);
        }
    }
    return m;
}

double epr_total_variance(const QuadratureMoments& m) {
    double mean_x = m.mean_a.real() - m.mean_b.real(); // <x_A - x_B> / sqrt(2)
    double mean_p = m.mean_a.imag() + m.mean_b.imag(); // <p_A + p_B> / sqrt(2)
    return 2.0 + 2.0 * m.n_a + 2.0 * m.n_b - 4.0 * m.ab.real() - 2.0 * mean_x * mean_x -
           2.0 * mean_p * mean_p;
}

EprClosedFormTerms epr_closed_terms(const SqueezeParam& sq, SuperpositionOp op_a,
                                    SuperpositionOp op_b) {
    double ch = std::cosh(sq.s);
    double sh = std::sinh(sq.s);
    EprClosedFormTerms t;
    t.A = op_a.t * op_b.t * sh * sh + op_a.r * op_b.r * ch * ch;
    t.B = (op_a.t * op_b.t + op_a.r * op_b.r) * ch * sh;
    t.C = std::sqrt(2.0) * op_a.t * op_b.r * ch * sh;
    t.D = std::sqrt(2.0) * op_a.r * op_b.t * ch * sh;
    t.M = t.A * t.A + t.B * t.B + t.C * t.C + t.D * t.D;
    return t;
}

double epr_closed_form(const SqueezeParam& sq, SuperpositionOp op_a, SuperpositionOp op_b) {
    EprClosedFormTerms t = epr_closed_terms(sq, op_a, op_b);
    double ch = std::cosh(sq.s);
    double sh = std::sinh(sq.s);
    double shrink = ch - sh; // e^{-s}
    return 2.0 + (4.0 / t.M) *
                     (t.M * shrink * (ch - 2.0 * sh) - (t.A * t.B + t.B * t.B) * shrink * shrink);
}

double pnes_epr_value(const PnesSpec& spec) {
    if (spec.kind != PnesKind::diagonal) {
        throw std::invalid_argument("pnes_epr_value applies to the diagonal class");
    }
    const Eigen::VectorXd& d = spec.coeffs;
    double total = d.squaredNorm();
    if (total <= 0.0) throw std::invalid_argument("pnes coefficients are all zero");
    double sum = 0.0;
    for (Eigen::Index n = 1; n < d.size(); ++n) {
        sum += double(n) * (d[n - 1] - d[n]) * d[n];
    }
    return 2.0 - 4.0 * sum / total;
}

TwoModeState pnes_state(const PnesSpec& spec) {
    const int n_coeffs = static_cast<int>(spec.coeffs.size());
    if (n_coeffs != spec.truncation + 1) {
        throw std::invalid_argument("pnes coefficient count must equal truncation + 1");
    }
    TwoModeState st;
    int rows = spec.truncation + 3;
    int cols = spec.truncation + 3 + (spec.kind == PnesKind::ladder ? 1 : 0);
    st.coeffs = Eigen::MatrixXcd::Zero(rows, cols);
    st.trunc_a = rows - 1;
    st.trunc_b = cols - 1;
    for (int n = 0; n <= spec.truncation; ++n) {
        if (spec.kind == PnesKind::diagonal) {
            st.coeffs(n, n) = spec.coeffs[n];
        } else {
            st.coeffs(n, n + 1) = spec.coeffs[n];
        }
    }
    return normalize(st).first;
}

std::pair<PnesSpec, double> pnes_optimize(PnesKind kind, int truncation) {
    if (truncation < 0) throw std::invalid_argument("pnes truncation must be >= 0");

    if (kind == PnesKind::diagonal) {
        PnesSpec spec{PnesKind::diagonal, Eigen::VectorXd::Ones(truncation + 1), truncation};
        if (truncation == 0) return {spec, 2.0};

        Eigen::MatrixXd k_matrix = Eigen::MatrixXd::Zero(truncation + 1, truncation + 1);
        for (int n = 1; n <= truncation; ++n) {
            k_matrix(n, n) = -double(n);
            k_matrix(n - 1, n) = n / 2.0;
            k_matrix(n, n - 1) = n / 2.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k_matrix);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("pnes_optimize: eigen decomposition failed");
        }
        double lambda_max = solver.eigenvalues()(truncation);
        Eigen::VectorXd vec = solver.eigenvectors().col(truncation);
        if (vec[0] < 0.0) vec = -vec;
        spec.coeffs = vec;
        return {spec, 2.0 - 4.0 * lambda_max};
    }

    // Ladder class: scale-invariant objective, pin e_0 = 1 and search the rest.
    if (truncation == 0) {
        PnesSpec spec{PnesKind::ladder, Eigen::VectorXd::Ones(1), 0};
        return {spec, epr_total_variance(quadrature_moments(pnes_state(spec)))};
    }

    auto objective = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd e(truncation + 1);
        e[0] = 1.0;
        e.tail(truncation) = x;
        PnesSpec spec{PnesKind::ladder, e, truncation};
        return epr_total_variance(quadrature_moments(pnes_state(spec)));
    };

    Eigen::VectorXd best_x;
    double best_value = std::numeric_limits<double>::infinity();
    for (double g : {0.0, 0.25, 0.5, 0.75}) {
        Eigen::VectorXd x0(truncation);
        double w = g;
        for (int i = 0; i < truncation; ++i) {
            x0[i] = w;
            w *= g;
        }
        Eigen::VectorXd x = nelder_mead(objective, x0, 0.2, 4000, 1e-13);
        x = nelder_mead(objective, x, 0.02, 4000, 1e-14);
        double value = objective(x);
        if (value < best_value) {
            best_value = value;
            best_x = x;
        }
    }

    Eigen::VectorXd e(truncation + 1);
    e[0] = 1.0;
    e.tail(truncation) = best_x;
    e /= e.norm();
    return {PnesSpec{PnesKind::ladder, e, truncation}, best_value};
}

} // namespace cvq
