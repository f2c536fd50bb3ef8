#include "murm/lfunc.hpp"
#include "murm/arith.hpp"
#include "murm/error.hpp"
#include "murm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace murm::lfunc {

using complexfn::WeightTable;

namespace {

const cplx I(0.0, 1.0);

// B_{2j}/(2j)! for j = 1..6
constexpr double bern_fact[6] = {1.0 / 12.0,          -1.0 / 720.0,         1.0 / 30240.0,
                                 -1.0 / 1209600.0,    1.0 / 47900160.0,     -691.0 / 1307674368000.0};

cplx pow_real(double x, cplx e)
{
    return std::exp(e * std::log(x));
}

// Iterated partial sums S_1..S_4 of a mean-zero periodic sequence, each normalized to mean zero.
struct AbelTails {
    std::size_t m = 0;
    std::vector<cplx> S[3];
    double M4 = 0;
};

AbelTails make_tails(const std::vector<cplx>& c)
{
    AbelTails T;
    const std::size_t m = c.size();
    T.m = m;
    std::vector<cplx> prev(m);
    for (std::size_t n = 0; n < m; ++n)
        prev[n] = c[n];
    for (int level = 0; level < 4; ++level) {
        // P(n) = sum_{k=1}^{n} prev(k), n = 0..m-1, indices taken mod m
        std::vector<cplx> P(m);
        cplx run = 0;
        P[0] = 0;
        for (std::size_t n = 1; n < m; ++n) {
            run += prev[n];
            P[n] = run;
        }
        cplx mean = arith::pairwise_sum(P) / double(m);
        for (auto& v : P)
            v -= mean;
        if (level < 3)
            T.S[level] = P;
        else
            for (const auto& v : P)
                T.M4 = std::max(T.M4, std::abs(v));
        prev = std::move(P);
    }
    return T;
}

struct SumSpec {
    cplx expo;              // g(x) = x^expo V(log x + shift)
    const WeightTable* V;
    double shift;

    cplx g(double n) const
    {
        double ln = std::log(n);
        return std::exp(expo * ln) * (*V)(ln + shift);
    }
};

struct SumOut {
    cplx value;
    std::uint64_t terms;
    double tail;
};

// sum_{n>=1} c(n mod m) g(n) with Abel-summation tail corrections of order three.
SumOut periodic_sum(const std::vector<cplx>& c, const AbelTails& T, const SumSpec& S, double tol,
                    std::uint64_t max_terms)
{
    const std::uint64_t m = c.size();
    std::uint64_t N = std::max<std::uint64_t>(256, 16 * m);
    std::uint64_t n = 1;
    cplx acc = 0;
    for (;;) {
        for (; n <= N; ++n) {
            const cplx& cn = c[n % m];
            if (cn != 0.0)
                acc += cn * S.g(double(n));
        }
        cplx g1 = S.g(double(N + 1)), g2 = S.g(double(N + 2)), g3 = S.g(double(N + 3)),
             g4 = S.g(double(N + 4));
        cplx d1 = g2 - g1, d2 = g3 - 2.0 * g2 + g1, d3 = g4 - 3.0 * g3 + 3.0 * g2 - g1;
        std::size_t r = N % m;
        cplx tail = -T.S[0][r] * g1 + T.S[1][r] * d1 - T.S[2][r] * d2;
        double E = T.M4 * std::abs(d3);
        if (E < tol)
            return {acc + tail, N, E};
        if (N >= max_terms)
            throw QuadratureNonConvergence("AFE sum: tail tolerance not reached within max_terms");
        N = std::min<std::uint64_t>(2 * N, max_terms);
    }
}

// Smallest N on a geometric ladder with min(sqrt N, pv) |g(N)| < tol.
std::uint64_t plain_cutoff(const SumSpec& S, double pv, double tol, std::uint64_t max_terms)
{
    double N = 512;
    for (;;) {
        double E = std::min(std::sqrt(N), pv) * std::abs(S.g(N));
        if (E < tol)
            return static_cast<std::uint64_t>(N);
        if (N >= double(max_terms))
            throw QuadratureNonConvergence("AFE sum: tail tolerance not reached within max_terms");
        N = std::min(std::ceil(N * 1.25), double(max_terms));
    }
}

cplx omega_twist(const GL1Representation& rep, std::int64_t d)
{
    return rep.chi()(d) * pow_real(double(d), cplx(0, rep.tau())) *
           double(arith::kronecker(d, rep.conductor())) * rep.omega();
}

}  // namespace

GL1Representation::GL1Representation(DirichletCharacter chi, double tau)
    : chi_(std::move(chi)), tau_(tau)
{
    if (!chi_.is_primitive())
        throw DomainError("GL1Representation: character must be primitive");
    auto rd = characters::root_data(chi_);
    gauss_ = rd.gauss_sum;
    omega_ = rd.omega_chi * pow_real(double(chi_.modulus()) / M_PI, cplx(0, tau_));
}

cplx GL1Representation::a(std::int64_t n) const
{
    if (n < 1)
        throw DomainError("a(n): n must be >= 1");
    return chi_(n) * pow_real(double(n), cplx(0, tau_));
}

LSeriesBatch::LSeriesBatch(const DirichletCharacter& chi, double im_max)
    : q_(chi.modulus()), principal_(chi.is_principal()), vals_(chi.values())
{
    std::int64_t N = std::max<std::int64_t>(30, static_cast<std::int64_t>(std::ceil(2.0 * im_max)));
    Nmax_ = N;
    for (std::int64_t n = 1; n <= q_ * N; ++n) {
        const cplx& c = vals_[std::size_t(n % q_)];
        if (c != 0.0) {
            n_.push_back(n);
            log_.push_back(std::log(double(n)));
            c_.push_back(c);
        }
    }
}

cplx LSeriesBatch::operator()(cplx s) const
{
    if (principal_ && s == cplx(1.0, 0.0))
        throw PoleError("L_reference: pole at s = 1");
    const std::int64_t q = q_;
    const std::int64_t N = std::max<std::int64_t>(30, static_cast<std::int64_t>(std::ceil(2.0 * std::abs(s.imag()))));
    if (N > Nmax_)
        throw DomainError("LSeriesBatch: |Im s| exceeds the precomputed range");
    const double sr = s.real(), si = s.imag();
    double re = 0, im = 0;
    for (std::size_t k = 0; k < n_.size() && n_[k] <= q * N; ++k) {
        double mag = std::exp(-sr * log_[k]);
        double sn, cs;
        sincos(-si * log_[k], &sn, &cs);
        double tr = mag * cs, ti = mag * sn;
        re += c_[k].real() * tr - c_[k].imag() * ti;
        im += c_[k].real() * ti + c_[k].imag() * tr;
    }
    cplx tail = 0;
    for (std::int64_t a = 1; a <= q; ++a) {
        const cplx& c = vals_[std::size_t(a % q)];
        if (c == 0.0)
            continue;
        double M = double(q * N + a);
        double lM = std::log(M);
        cplx Ms = std::exp(-s * lM);
        cplx t;
        if (principal_) {
            t = M * Ms / (double(q) * (s - 1.0)) + 0.5 * Ms;
        } else {
            // the 1/(s-1) parts cancel over a; keep (M^{1-s} - 1)/(s-1)
            cplx f = (1.0 - s) * lM, g;
            if (std::abs(f) < 1e-3)
                g = -lM * (1.0 + f / 2.0 + f * f / 6.0 + f * f * f / 24.0);
            else
                g = (std::exp(f) - 1.0) / (s - 1.0);
            t = g / double(q) + 0.5 * Ms;
        }
        cplx rising = s;            // (s)_{2j-1}
        cplx pw = Ms / M;           // M^{-s-1}
        double qp = double(q);      // q^{2j-1}
        for (int j = 1; j <= 6; ++j) {
            t += bern_fact[j - 1] * rising * pw * qp;
            rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
            pw /= M * M;
            qp *= double(q) * double(q);
        }
        tail += c * t;
    }
    return cplx(re, im) + tail;
}

cplx L_reference(const DirichletCharacter& chi, cplx s)
{
    return LSeriesBatch(chi, std::abs(s.imag()))(s);
}

cplx L_removed(const DirichletCharacter& chi, cplx s, std::int64_t m)
{
    if (!(s.real() > 1))
        throw DomainError("L_removed: need Re s > 1");
    if (m < 1)
        throw DomainError("L_removed: m must be positive");
    cplx v = L_reference(chi, s);
    for (std::int64_t p : arith::prime_divisors(m))
        v *= 1.0 - chi(p) * pow_real(double(p), -s);
    return v;
}

cplx Lambda_reference(const DirichletCharacter& chi, cplx s)
{
    double q = double(chi.modulus());
    return std::exp(0.5 * s * std::log(q / M_PI) +
                    complexfn::log_gamma((s + double(chi.kappa())) / 2.0)) *
           L_reference(chi, s);
}

AfeResult L_afe_detail(const GL1Representation& rep, cplx s, const AfeParameters& p,
                       const AfeOptions& opt)
{
    p.validate();
    if (rep.chi().is_principal())
        throw NotEntire("L_afe: Lambda is not entire for the trivial character");
    if (!(s.real() > 0 && s.real() < 1))
        throw DomainError("L_afe: need 0 < Re s < 1");
    const auto& chi = rep.chi();
    const double q = double(rep.conductor());
    const cplx kappa = rep.kappa();
    const cplx lxi = complexfn::log_xi(p, s);
    const double h = 0.5 * std::log(M_PI / q);
    const cplx l1 = h - lxi, l2 = h + lxi;
    const double span = std::log(double(opt.max_terms)) + 2.0;
    WeightTable V1(p, s, kappa, false, l1.imag(), l1.real() - 1.0, l1.real() + span);
    WeightTable V2(p, s, kappa, true, l2.imag(), l2.real() - 1.0, l2.real() + span);

    std::vector<cplx> c1(chi.values()), c2(c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i)
        c2[i] = std::conj(c1[i]);
    const cplx itau(0, rep.tau());
    const cplx pref = rep.omega() * std::exp((s - 0.5) * std::log(M_PI / q)) *
                      complexfn::gamma_ratio_half(s, kappa);

    auto T1 = make_tails(c1), T2 = make_tails(c2);
    SumSpec S1{itau - s, &V1, l1.real()};
    SumSpec S2{s - 1.0 - itau, &V2, l2.real()};
    auto r1 = periodic_sum(c1, T1, S1, 0.5 * opt.tail_tol, opt.max_terms);
    auto r2 = periodic_sum(c2, T2, S2, 0.5 * opt.tail_tol / std::max(std::abs(pref), 1e-300),
                           opt.max_terms);
    AfeResult res;
    res.value = r1.value + pref * r2.value;
    res.terms_first = r1.terms;
    res.terms_second = r2.terms;
    res.tail_estimate = r1.tail + std::abs(pref) * r2.tail;
    return res;
}

cplx L_afe(const GL1Representation& rep, cplx s, const AfeParameters& p)
{
    return L_afe_detail(rep, s, p).value;
}

cplx L_afe(const DirichletCharacter& chi, cplx s, const AfeParameters& p)
{
    if (chi.is_principal())
        throw NotEntire("L_afe: Lambda is not entire for the trivial character");
    return L_afe(GL1Representation(chi, 0.0), s, p);
}

ProductResult local_murmur_product(const DirichletCharacter& chi, double tau, cplx s,
                                   long prime_cutoff)
{
    if (prime_cutoff < 2)
        throw DomainError("local_murmur_product: prime_cutoff must be >= 2");
    const std::int64_t q = chi.modulus();
    const cplx w = 3.0 - 2.0 * s + cplx(0, 2.0 * tau);
    arith::PrimeTable pt(static_cast<std::uint32_t>(prime_cutoff));
    cplx prod = 1.0;
    for (std::uint32_t p : pt.primes()) {
        if (p == 2 || q % p == 0)
            continue;
        cplx chi2 = chi(p) * chi(p);
        prod *= 1.0 - 1.0 / (double(p + 1) * (1.0 - chi2 * pow_real(double(p), w)));
    }
    double P = double(prime_cutoff);
    ProductResult r;
    r.value = prod;
    r.tail_estimate = std::abs(prod) * std::pow(P, -w.real()) / (w.real() * std::log(P));
    return r;
}

namespace {

// L(2s, phi^(2)) / L^(2q)(2s+1, phi^(2)) * prod_{p !| 2q, p <= P}(...)
cplx square_dirichlet_rhs(const GL1Representation& rep, cplx s, std::int64_t P)
{
    const auto& chi = rep.chi();
    const std::int64_t q = chi.modulus();
    const double tau = rep.tau();
    auto chi2 = chi.pow(2);
    const cplx shift(0, 2.0 * tau);
    cplx num = L_reference(chi2, 2.0 * s - shift);
    cplx den = L_removed(chi2, 2.0 * s + 1.0 - shift, 2 * q);
    arith::PrimeTable pt(static_cast<std::uint32_t>(std::max<std::int64_t>(P, 2)));
    cplx prod = 1.0;
    for (std::uint32_t p : pt.primes()) {
        if (p == 2 || q % p == 0)
            continue;
        // alpha(p)^{-2} = conj(chi(p))^2 p^{-2 i tau}
        cplx a2inv = std::conj(chi(p) * chi(p)) * pow_real(double(p), -shift);
        prod *= 1.0 - 1.0 / (double(p + 1) * (1.0 - a2inv * pow_real(double(p), 2.0 * s + 1.0)));
    }
    return num / den * prod;
}

}  // namespace

std::pair<cplx, cplx> euler_identity_check(const GL1Representation& rep, cplx s, std::int64_t N,
                                           std::int64_t P)
{
    if (!(s.real() > 0.5))
        throw DomainError("euler_identity_check: need Re s > 1/2");
    if (N < 1 || P < 2)
        throw DomainError("euler_identity_check: bad truncation");
    const auto& chi = rep.chi();
    const std::int64_t q = chi.modulus();
    arith::PrimeTable pt(static_cast<std::uint32_t>(std::max<std::int64_t>(N, 2)));
    const cplx e = cplx(0, 2.0 * rep.tau()) - 2.0 * s;
    std::vector<cplx> terms;
    terms.reserve(std::size_t(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        cplx c = chi(n);
        if (c == 0.0)
            continue;
        // primes dividing 2q contribute no weight, at any power
        std::int64_t m = n;
        double w = 1.0;
        while (m > 1) {
            std::uint32_t p = pt.least_factor(static_cast<std::uint32_t>(m));
            if ((2 * q) % p != 0)
                w *= double(p) / double(p + 1);
            while (m % p == 0)
                m /= p;
        }
        terms.push_back(c * c * std::exp(e * std::log(double(n))) * w);
    }
    cplx lhs = arith::pairwise_sum(terms);
    return {lhs, square_dirichlet_rhs(rep, s, P)};
}

cplx mean_value_main(const GL1Representation& rep, cplx s, std::int64_t P)
{
    if (!(s.real() > 0.5 && s.real() < 1))
        throw DomainError("mean_value_main: need 1/2 < Re s < 1");
    return square_dirichlet_rhs(rep, s, P);
}

cplx twisted_root_number(const GL1Representation& rep, std::int64_t d)
{
    return omega_twist(rep, d);
}

cplx omega_family(const GL1Representation& rep, const DiscriminantFamily& fam, OmegaMode mode)
{
    if (fam.members.empty())
        throw EmptyFamily("omega_family: empty family");
    if (mode == OmegaMode::exact) {
        std::vector<cplx> w;
        for (std::int64_t d : fam.members)
            w.push_back(omega_twist(rep, d));
        return arith::pairwise_sum(w) / double(fam.size());
    }
    const auto& chi = rep.chi();
    const double q = double(chi.modulus());
    cplx ipow = chi.kappa() ? cplx(0, -1) : cplx(1, 0);
    return ipow * (rep.gauss_sum() / std::sqrt(q)) * pow_real(q * fam.d1 / M_PI, cplx(0, rep.tau())) *
           double(arith::kronecker(fam.residue, chi.modulus())) * chi(fam.residue);
}

cplx residue_term(const GL1Representation& rep, const DiscriminantFamily& fam, double x,
                  long prime_cutoff, double sign)
{
    const auto& chi = rep.chi();
    if (!chi.square_is_trivial())
        return 0.0;
    const std::int64_t q = chi.modulus();
    const double tau = rep.tau();
    cplx wF = omega_family(rep, fam, OmegaMode::leading);
    double c = 6.0 / (M_PI * M_PI) * (1.0 + (q % 2 != 0 ? 0.2 : 0.0));
    double prod = 1.0;
    for (std::int64_t p : arith::prime_divisors(q))
        prod *= double(p) / double(p + 1);
    arith::PrimeTable pt(static_cast<std::uint32_t>(std::max<long>(prime_cutoff, 2)));
    for (std::uint32_t p : pt.primes()) {
        if (q % p == 0)
            continue;
        double pp = double(p);
        prod *= 1.0 + 1.0 / ((pp + 1.0) * (pp * pp - 1.0));
    }
    return sign * wF * c / (1.0 + 2.0 * I * tau) *
           pow_real(M_PI * x / (double(q) * fam.d1), cplx(0, tau)) * prod;
}

MeanValueResult mean_value_empirical(const GL1Representation& rep, const DiscriminantFamily& fam,
                                     cplx s, const AfeParameters& p, const AfeOptions& opt,
                                     unsigned workers)
{
    p.validate();
    if (fam.members.empty())
        throw EmptyFamily("mean_value_empirical: empty family");
    if (!(s.real() > 0.5 && s.real() < 1))
        throw DomainError("mean_value_empirical: need 1/2 < Re s < 1");
    const auto& chi = rep.chi();
    const std::int64_t q = chi.modulus();
    const cplx kappa = rep.kappa();
    const cplx lxi = complexfn::log_xi(p, s);
    const cplx itau(0, rep.tau());
    const cplx gr = complexfn::gamma_ratio_half(s, kappa);
    const std::size_t nF = fam.size();

    double hmin = 0.5 * std::log(M_PI / (double(q) * double(fam.members.back())));
    double hmax = 0.5 * std::log(M_PI / (double(q) * double(fam.members.front())));
    const double span = std::log(double(opt.max_terms)) + 2.0;
    WeightTable V1(p, s, kappa, false, -lxi.imag(), hmin - lxi.real() - 1.0, hmax - lxi.real() + span);
    WeightTable V2(p, s, kappa, true, lxi.imag(), hmin + lxi.real() - 1.0, hmax + lxi.real() + span);

    struct Plan {
        double h;
        cplx pref;
        std::uint64_t N1, N2;
    };
    std::vector<Plan> plan(nF);
    std::uint64_t Ncap = 1;
    for (std::size_t i = 0; i < nF; ++i) {
        double m = double(q) * double(fam.members[i]);
        double h = 0.5 * std::log(M_PI / m);
        cplx pref = omega_twist(rep, fam.members[i]) * std::exp((s - 0.5) * std::log(M_PI / m)) * gr;
        double pv = std::sqrt(m) * (1.0 + std::log(m));
        SumSpec S1{itau - s, &V1, h - lxi.real()};
        SumSpec S2{s - 1.0 - itau, &V2, h + lxi.real()};
        std::uint64_t N1 = plain_cutoff(S1, pv, 0.5 * opt.tail_tol, opt.max_terms);
        std::uint64_t N2 = plain_cutoff(S2, pv, 0.5 * opt.tail_tol / std::abs(pref), opt.max_terms);
        plan[i] = {h, pref, N1, N2};
        Ncap = std::max({Ncap, N1, N2});
    }

    arith::PrimeTable pt(static_cast<std::uint32_t>(std::max<std::uint64_t>(Ncap, 2)));
    std::vector<double> logn(Ncap + 1, 0.0);
    std::vector<cplx> pw1(Ncap + 1), pw2(Ncap + 1);
    for (std::uint64_t n = 1; n <= Ncap; ++n) {
        logn[n] = std::log(double(n));
        pw1[n] = std::exp((itau - s) * logn[n]);
        pw2[n] = std::exp((s - 1.0 - itau) * logn[n]);
    }
    const auto& cv = chi.values();
    std::vector<cplx> slot(nF);
    parallel_for(nF, workers, [&](std::size_t i) {
        const Plan& P = plan[i];
        auto kd = arith::kronecker_table(fam.members[i], std::max(P.N1, P.N2), pt);
        const double sh1 = P.h - lxi.real(), sh2 = P.h + lxi.real();
        cplx a1 = 0, a2 = 0;
        for (std::uint64_t n = 1; n <= P.N1; ++n) {
            int k = kd[n];
            const cplx& c = cv[n % std::uint64_t(q)];
            if (k == 0 || c == 0.0)
                continue;
            a1 += double(k) * c * pw1[n] * V1(logn[n] + sh1);
        }
        for (std::uint64_t n = 1; n <= P.N2; ++n) {
            int k = kd[n];
            const cplx& c = cv[n % std::uint64_t(q)];
            if (k == 0 || c == 0.0)
                continue;
            a2 += double(k) * std::conj(c) * pw2[n] * V2(logn[n] + sh2);
        }
        slot[i] = a1 + P.pref * a2;
    });
    MeanValueResult r;
    r.value = arith::pairwise_sum(slot) / double(nF);
    r.max_terms_used = Ncap;
    return r;
}

}  // namespace murm::lfunc
