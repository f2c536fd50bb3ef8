#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace murm::complexfn {

using cplx = std::complex<double>;

// Smoothing and rebalancing parameters of the approximate functional equation.
struct AfeParameters {
    double A = 2.0;
    int B = 16;
    double alpha = 0.0;
    double beta = 0.0;
    cplx s0 = -1.0;
    double cV = 2.0;
    double D_ref = 1.0;

    void validate() const;
};

// Riemann-sum recipe for the right-hand-side integrals.
struct QuadratureSpec {
    double t_max = 1000.0;
    long nodes = 200001;
    long prime_cutoff = 30000;
    double abscissa = 0.75;

    void validate() const;
};

cplx log_gamma(cplx s);
// Gamma((1 - s + conj(kappa))/2) / Gamma((s + kappa)/2)
cplx gamma_ratio_half(cplx s, cplx kappa);

cplx xi_eval(const AfeParameters& p, cplx s);
// log of xi: 2 alpha log D_ref + beta Log((s - s0)^2)
cplx log_xi(const AfeParameters& p, cplx s);

// V_s(y) (conjugate = false) or V*_{1-s}(y) (conjugate = true) for y > 0.
cplx weight_V(const AfeParameters& p, cplx s, cplx kappa, double y, bool conjugate);
// Same with y = exp(log_y), log_y complex (rotated arguments arising from complex xi).
cplx weight_V_log(const AfeParameters& p, cplx s, cplx kappa, cplx log_y, bool conjugate);

// Raw trapezoid value of the defining integral on the line Re w = c (no residue added).
struct LineResult {
    cplx value;
    double step;
    std::size_t nodes;
};
LineResult weight_V_line(const AfeParameters& p, cplx s, cplx kappa, cplx log_y, bool conjugate,
                         double c, double step = 0.0);

// Same in binary128 arithmetic; the result is rounded to double.
LineResult weight_V_line_quad(const AfeParameters& p, cplx s, cplx kappa, cplx log_y,
                              bool conjugate, double c, double step = 0.0);

// Tabulated V on a uniform grid in Re(log y) with fixed Im(log y), read by 8-point Lagrange
// interpolation. Arguments outside the table fall back to direct quadrature.
class WeightTable {
public:
    WeightTable(const AfeParameters& p, cplx s, cplx kappa, bool conjugate, double im_log_y,
                double u_lo, double u_hi, double step = 0.02);

    cplx operator()(double re_log_y) const;
    double u_lo() const { return u_lo_; }
    double u_hi() const { return u_lo_ + step_ * double(vals_.size() - 1); }

private:
    AfeParameters p_;
    cplx s_, kappa_;
    bool conj_;
    double im_;
    double u_lo_, step_, inv_step_;
    std::vector<cplx> vals_;
};

double gaussian_weight(double u);
double reduced_conductor(double q, cplx s, cplx kappa);

}  // namespace murm::complexfn
