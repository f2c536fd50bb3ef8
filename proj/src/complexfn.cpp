#include "murm/complexfn.hpp"
#include "murm/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace murm::complexfn {

namespace {

using boost::multiprecision::float128;

// B_{2k} as exact fractions, k = 1..15.
constexpr double bern_num[15] = {1,        -1,          1,      -1,         5,
                                 -691,     7,           -3617,  43867,      -174611,
                                 854513,   -236364091,  8553103, -23749461029., 8615841276005.};
constexpr double bern_den[15] = {6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730, 6, 870, 14322};

template <class Real>
Real pi_v()
{
    if constexpr (std::is_same_v<Real, double>)
        return M_PI;
    else
        return boost::math::constants::pi<Real>();
}

template <class Real>
std::complex<Real> log_gamma_t(std::complex<Real> z)
{
    using C = std::complex<Real>;
    using std::abs;
    using std::floor;
    using std::log;
    constexpr bool wide = std::numeric_limits<Real>::digits > 64;
    const Real R = wide ? 30 : 10;
    const int K = wide ? 15 : 8;
    if (z.imag() == 0 && z.real() <= 0 && z.real() == floor(z.real()))
        throw PoleError("log_gamma: pole at non-positive integer");
    C acc(0);
    while (z.real() < R && !(abs(z.imag()) >= 2 * R && z.real() >= 0)) {
        acc += log(z);
        z += Real(1);
    }
    C lz = log(z);
    C r = (z - Real(0.5)) * lz - z + Real(0.5) * log(2 * pi_v<Real>());
    C zinv = Real(1) / z, z2 = zinv * zinv, zp = zinv;
    for (int k = 1; k <= K; ++k) {
        Real c = Real(bern_num[k - 1]) / (Real(bern_den[k - 1]) * Real(2 * k) * Real(2 * k - 1));
        r += c * zp;
        zp *= z2;
    }
    return r - acc;
}

template <class Real>
struct Line {
    std::vector<std::complex<Real>> w;    // nodes c + i t_k
    std::vector<std::complex<Real>> f;    // K(w)/w * h/(2 pi)
    double c;
    double h;
    bool left;
};

// Step for a trapezoid rule on Re w = c, from the distance to the singularities.
double choose_step(double c, double gamma_shift, double A, int B, double log_target)
{
    double a_simple = std::min(std::abs(c), gamma_shift + c);
    double a_psi = M_PI * A / 3.0 - std::abs(c);
    if (!(a_simple > 0) || !(a_psi > 0))
        throw QuadratureSpecInvalid("weight_V: contour meets a singularity");
    double need = log_target + 5.0;
    double x = std::max(need / a_simple, 2.0 * M_PI / 0.05);
    double lgB = std::lgamma(double(B));
    while (x * a_psi - (B - 1) * std::log(x) + lgB < need)
        x *= 1.05;
    return 2.0 * M_PI / x;
}

template <class Real>
Line<Real> build_line(const AfeParameters& p, cplx s, cplx kappa, double theta, double c,
                      double h, double tail_rel)
{
    using C = std::complex<Real>;
    using std::abs;
    using std::exp;
    using std::log;
    const Real A = p.A;
    const int B = p.B;
    const C sk = C(Real(s.real() + kappa.real()), Real(s.imag() + kappa.imag()));
    const C lg0 = log_gamma_t<Real>(sk / Real(2));
    const C I(0, 1);
    const Real scale = Real(h) / (2 * pi_v<Real>());
    auto node = [&](long k, C& w) {
        w = C(Real(c), Real(h) * Real(k));
        C e = exp(I * w / A);
        C z = e + Real(1) / e - Real(1);
        C lk = log_gamma_t<Real>((sk + w) / Real(2)) - lg0 - Real(B) * log(z);
        return exp(lk) / w * scale;
    };
    auto mag = [&](long k, const C& f) {
        return double(abs(f)) * std::exp(double(k) * h * theta);
    };
    Line<Real> L;
    L.c = c;
    L.h = h;
    L.left = c < 0;
    std::vector<C> wp, fp, wn, fn;
    C w;
    C f0 = node(0, w);
    double peak = mag(0, f0);
    const long kmax = static_cast<long>(400.0 / h);
    for (int dir = -1; dir <= 1; dir += 2) {
        auto& ws = dir > 0 ? wp : wn;
        auto& fs = dir > 0 ? fp : fn;
        int quiet = 0;
        for (long k = dir; std::abs(k) <= kmax; k += dir) {
            C f = node(k, w);
            ws.push_back(w);
            fs.push_back(f);
            double m = mag(k, f);
            peak = std::max(peak, m);
            quiet = (m < tail_rel * peak) ? quiet + 1 : 0;
            if (quiet >= 8 && std::abs(double(k) * h) > 1.0)
                break;
            if (std::abs(k) == kmax)
                throw QuadratureNonConvergence("weight_V: integrand tail never fell below threshold");
        }
    }
    for (std::size_t i = wn.size(); i-- > 0;) {
        L.w.push_back(wn[i]);
        L.f.push_back(fn[i]);
    }
    L.w.push_back(C(Real(c), Real(0)));
    L.f.push_back(f0);
    for (std::size_t i = 0; i < wp.size(); ++i) {
        L.w.push_back(wp[i]);
        L.f.push_back(fp[i]);
    }
    return L;
}

template <class Real>
std::complex<Real> eval_line(const Line<Real>& L, cplx u)
{
    using C = std::complex<Real>;
    using std::exp;
    const C uu(Real(u.real()), Real(u.imag()));
    C acc(0);
    for (std::size_t k = 0; k < L.w.size(); ++k)
        acc += L.f[k] * exp(-L.w[k] * uu);
    return acc;
}

struct Resolved {
    cplx s, kappa;
};

Resolved resolve(cplx s, cplx kappa, bool conjugate)
{
    if (conjugate)
        return {1.0 - s, std::conj(kappa)};
    return {s, kappa};
}

double right_abscissa(const AfeParameters& p)
{
    return std::min({0.5, p.cV, 0.45 * M_PI * p.A / 3.0});
}

double left_abscissa(const AfeParameters& p, cplx sk)
{
    return -std::min(0.5 * sk.real(), 0.45 * M_PI * p.A / 3.0);
}

template <class Real>
LineResult line_result(const AfeParameters& p, cplx s, cplx kappa, cplx log_y, bool conjugate,
                       double c, double step, double log_target, double tail_rel)
{
    p.validate();
    auto r = resolve(s, kappa, conjugate);
    cplx sk = r.s + r.kappa;
    if (!(sk.real() > 0))
        throw DomainError("weight_V: need Re(s + kappa) > 0");
    double h = step > 0 ? step : choose_step(c, sk.real(), p.A, p.B, log_target);
    auto L = build_line<Real>(p, r.s, r.kappa, log_y.imag(), c, h, tail_rel);
    auto v = eval_line<Real>(L, log_y);
    return {cplx(double(v.real()), double(v.imag())), h, L.w.size()};
}

}  // namespace

void AfeParameters::validate() const
{
    if (!(A > 0))
        throw DomainError("AfeParameters: A must be positive");
    if (B < 1)
        throw DomainError("AfeParameters: B must be a positive integer");
    if (!(std::abs(beta) < 1))
        throw DomainError("AfeParameters: |beta| must be < 1");
    if (!(s0.real() < 0))
        throw DomainError("AfeParameters: Re(s0) must be negative");
    if (!(cV > 0 && cV < M_PI * A / 3.0))
        throw DomainError("AfeParameters: need 0 < cV < pi A / 3");
    if (!(D_ref > 0))
        throw DomainError("AfeParameters: D_ref must be positive");
}

void QuadratureSpec::validate() const
{
    if (!(t_max > 0))
        throw QuadratureSpecInvalid("QuadratureSpec: t_max must be positive");
    if (nodes < 3 || nodes % 2 == 0)
        throw QuadratureSpecInvalid("QuadratureSpec: nodes must be odd and >= 3");
    if (prime_cutoff < 2)
        throw QuadratureSpecInvalid("QuadratureSpec: prime_cutoff must be >= 2");
    if (!std::isfinite(abscissa))
        throw QuadratureSpecInvalid("QuadratureSpec: abscissa must be finite");
}

cplx log_gamma(cplx s)
{
    return log_gamma_t<double>(s);
}

cplx gamma_ratio_half(cplx s, cplx kappa)
{
    return std::exp(log_gamma((1.0 - s + std::conj(kappa)) / 2.0) - log_gamma((s + kappa) / 2.0));
}

cplx log_xi(const AfeParameters& p, cplx s)
{
    cplx z = (s - p.s0) * (s - p.s0);
    if (z.imag() == 0 && z.real() <= 0)
        throw BranchError("xi: (s - s0)^2 lies on the branch cut");
    return 2.0 * p.alpha * std::log(p.D_ref) + p.beta * std::log(z);
}

cplx xi_eval(const AfeParameters& p, cplx s)
{
    return std::exp(log_xi(p, s));
}

LineResult weight_V_line(const AfeParameters& p, cplx s, cplx kappa, cplx log_y, bool conjugate,
                         double c, double step)
{
    return line_result<double>(p, s, kappa, log_y, conjugate, c, step, 37.0, 1e-16);
}

LineResult weight_V_line_quad(const AfeParameters& p, cplx s, cplx kappa, cplx log_y,
                              bool conjugate, double c, double step)
{
    return line_result<float128>(p, s, kappa, log_y, conjugate, c, step, 78.0, 1e-34);
}

cplx weight_V_log(const AfeParameters& p, cplx s, cplx kappa, cplx log_y, bool conjugate)
{
    auto r = resolve(s, kappa, conjugate);
    if (log_y.real() >= 0)
        return weight_V_line(p, s, kappa, log_y, conjugate, right_abscissa(p)).value;
    return 1.0 + weight_V_line(p, s, kappa, log_y, conjugate, left_abscissa(p, r.s + r.kappa)).value;
}

cplx weight_V(const AfeParameters& p, cplx s, cplx kappa, double y, bool conjugate)
{
    if (!(y > 0))
        throw DomainError("weight_V: y must be positive");
    return weight_V_log(p, s, kappa, cplx(std::log(y), 0.0), conjugate);
}

WeightTable::WeightTable(const AfeParameters& p, cplx s, cplx kappa, bool conjugate,
                         double im_log_y, double u_lo, double u_hi, double step)
    : p_(p), s_(s), kappa_(kappa), conj_(conjugate), im_(im_log_y), step_(step),
      inv_step_(1.0 / step)
{
    p.validate();
    if (!(u_hi > u_lo) || !(step > 0))
        throw DomainError("WeightTable: bad range");
    u_lo_ = u_lo - 4 * step;
    std::size_t n = static_cast<std::size_t>(std::ceil((u_hi - u_lo) / step)) + 9;
    vals_.resize(n);
    auto r = resolve(s, kappa, conjugate);
    cplx sk = r.s + r.kappa;
    if (!(sk.real() > 0))
        throw DomainError("weight_V: need Re(s + kappa) > 0");
    double cr = right_abscissa(p), cl = left_abscissa(p, sk);
    std::optional<Line<double>> right, left;
    for (std::size_t i = 0; i < n; ++i) {
        double u = u_lo_ + step * double(i);
        if (u >= 0) {
            if (!right)
                right = build_line<double>(p, r.s, r.kappa, im_log_y, cr,
                                           choose_step(cr, sk.real(), p.A, p.B, 37.0), 1e-16);
            vals_[i] = eval_line(*right, cplx(u, im_log_y));
        } else {
            if (!left)
                left = build_line<double>(p, r.s, r.kappa, im_log_y, cl,
                                          choose_step(cl, sk.real(), p.A, p.B, 37.0), 1e-16);
            vals_[i] = 1.0 + eval_line(*left, cplx(u, im_log_y));
        }
    }
}

cplx WeightTable::operator()(double re_log_y) const
{
    double x = (re_log_y - u_lo_) * inv_step_;
    long i = static_cast<long>(std::floor(x));
    if (i < 3 || i + 4 >= long(vals_.size()))
        return weight_V_log(p_, s_, kappa_, cplx(re_log_y, im_), conj_);
    double f = x - double(i);
    // Lagrange basis on nodes -3..4
    static constexpr double inv_den[8] = {-1.0 / 5040, 1.0 / 720, -1.0 / 240, 1.0 / 144,
                                          -1.0 / 144,  1.0 / 240, -1.0 / 720, 1.0 / 5040};
    double d[8];
    for (int j = 0; j < 8; ++j)
        d[j] = f - double(j - 3);
    double pre[9], suf[9];
    pre[0] = 1.0;
    for (int j = 0; j < 8; ++j)
        pre[j + 1] = pre[j] * d[j];
    suf[8] = 1.0;
    for (int j = 7; j >= 0; --j)
        suf[j] = suf[j + 1] * d[j];
    cplx acc(0.0);
    for (int j = 0; j < 8; ++j)
        acc += vals_[std::size_t(i - 3 + j)] * (pre[j] * suf[j + 1] * inv_den[j]);
    return acc;
}

double gaussian_weight(double u)
{
    return std::exp(-u * u);
}

double reduced_conductor(double q, cplx s, cplx kappa)
{
    return q / (2.0 * M_PI * M_E) * std::abs(s + kappa);
}

}  // namespace murm::complexfn
