#include "murm/discriminants.hpp"
#include "murm/arith.hpp"
#include "murm/error.hpp"

#include <cmath>
#include <numeric>

namespace murm::discriminants {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Fundamental test given a squarefree oracle.
template <class SF>
bool fundamental_with(std::int64_t d, SF&& sf)
{
    if (d < 1)
        return false;
    if (d % 4 == 1)
        return sf(d);
    if (d % 16 == 8)
        return sf(d / 8);
    if (d % 16 == 12)
        return sf(d / 4);
    return false;
}

// Fundamental discriminants in [lo, hi] via a segmented squarefree sieve.
std::vector<std::int64_t> fundamentals_in(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    if (hi < lo)
        return out;
    auto sf = arith::squarefree_segment(lo, hi);
    auto is_sf = [&](std::int64_t n) { return sf[std::size_t(n - lo)] != 0; };
    for (std::int64_t d = lo; d <= hi; ++d) {
        bool ok;
        if (d % 4 == 1)
            ok = is_sf(d);
        else if (d % 16 == 8 || d % 16 == 12)
            ok = arith::is_squarefree(d % 16 == 8 ? d / 8 : d / 4);
        else
            ok = false;
        if (ok)
            out.push_back(d);
    }
    return out;
}

double prod_p_over_p1(std::int64_t n)
{
    double r = 1.0;
    for (std::int64_t p : arith::prime_divisors(n))
        r *= double(p) / double(p + 1);
    return r;
}

}  // namespace

std::int64_t q_star(std::int64_t q)
{
    if (q < 1)
        throw DomainError("q must be >= 1");
    return (q % 2 == 0 && q % 4 != 0) ? 4 * q : q;
}

bool is_fundamental(std::int64_t d)
{
    return fundamental_with(d, [](std::int64_t n) { return arith::is_squarefree(n); });
}

DiscriminantFamily enumerate_family(double d0, double d1, std::int64_t q, std::int64_t ell)
{
    if (!(d0 < d1) || d0 < 0)
        throw DomainError("enumerate_family: need 0 <= d0 < d1");
    DiscriminantFamily f;
    f.d0 = d0;
    f.d1 = d1;
    f.base_modulus = q;
    f.q_star = q_star(q);
    f.residue = mod(ell, f.q_star);
    if (std::gcd(f.residue, f.q_star) != 1)
        throw InvalidResidue("gcd(l, q*) != 1 for l=" + std::to_string(ell) +
                             ", q*=" + std::to_string(f.q_star));
    std::int64_t lo = static_cast<std::int64_t>(std::floor(d0)) + 1;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(d1)) - 1;
    lo = std::max<std::int64_t>(lo, 1);
    for (std::int64_t d : fundamentals_in(lo, hi))
        if (mod(d, f.q_star) == f.residue)
            f.members.push_back(d);
    return f;
}

Rational eta_coefficient(std::int64_t m, std::int64_t f, std::int64_t ell)
{
    if (m < 1 || f < 1)
        throw DomainError("eta_coefficient: m, f must be positive");
    if (std::gcd(mod(ell, f), f) != 1)
        throw InvalidResidue("eta_coefficient: gcd(l, f) != 1");
    Rational eta(0);
    if (f % 4 != 0)
        eta += Rational(1, 2);
    if (f % 4 == 0 && mod(ell, 4) == 1)
        eta += 1;
    if (std::gcd(m * f, std::int64_t(2)) == 1)
        eta += Rational(1, 4);
    return eta;
}

PowerSumResult disc_power_sum(double d_max, std::int64_t q, std::int64_t ell, std::int64_t m,
                              std::complex<double> z)
{
    if (!(z.real() > -0.5))
        throw DomainError("disc_power_sum: Re z must exceed -1/2");
    if (q < 1 || m < 1)
        throw DomainError("disc_power_sum: q, m must be positive");
    if (std::gcd(mod(ell, q), q) != 1)
        throw InvalidResidue("disc_power_sum: gcd(l, q) != 1");
    PowerSumResult r;
    std::int64_t hi = static_cast<std::int64_t>(std::ceil(d_max)) - 1;
    std::vector<std::complex<double>> terms;
    for (std::int64_t d : fundamentals_in(1, hi))
        if (mod(d - ell, q) == 0 && std::gcd(d, m) == 1)
            terms.push_back(std::exp(z * std::log(double(d))));
    r.brute = arith::pairwise_sum(terms);
    r.eta = eta_coefficient(m, q, ell);
    double eta = double(r.eta.numerator()) / double(r.eta.denominator());
    std::complex<double> Dz1 = std::exp((z + 1.0) * std::log(d_max));
    r.main = eta * Dz1 / (z + 1.0) * (6.0 / (M_PI * M_PI * double(arith::totient(q)))) *
             prod_p_over_p1(4 * q * m);
    r.error_scale = std::pow(d_max, z.real() + 0.5);
    return r;
}

double family_size_main(const DiscriminantFamily& fam)
{
    std::int64_t q = fam.base_modulus;
    Rational e = eta_coefficient(q, q, fam.residue);
    double eta = double(e.numerator()) / double(e.denominator());
    return fam.delta_D() * 6.0 * eta / (M_PI * M_PI * double(arith::totient(q))) *
           prod_p_over_p1(2 * q);
}

SecondMomentResult second_moment_probe(double N, double d_max, std::int64_t f, std::int64_t ell)
{
    if (!(N > 4) || !(d_max > 3) || N == std::floor(N) || d_max == std::floor(d_max))
        throw DomainError("second_moment_probe: need non-integers N > 4, d_max > 3");
    if (f < 1 || std::gcd(mod(ell, f), f) != 1)
        throw InvalidResidue("second_moment_probe: gcd(l, f) != 1");
    std::vector<std::int64_t> ds;
    for (std::int64_t d : fundamentals_in(1, static_cast<std::int64_t>(std::floor(d_max))))
        if (mod(d - ell, f) == 0)
            ds.push_back(d);
    std::vector<double> terms;
    for (std::int64_t n = 1; double(n) < N; ++n) {
        std::int64_t r = static_cast<std::int64_t>(std::llround(std::sqrt(double(n))));
        if (r * r == n || std::gcd(n, f) != 1)
            continue;
        std::int64_t s = 0;
        for (std::int64_t d : ds)
            s += arith::kronecker(d, n);
        terms.push_back(double(s) * double(s));
    }
    SecondMomentResult res;
    res.lhs = arith::pairwise_sum(terms);
    double L = std::log(d_max);
    res.bound_terms.first = double(f) * N * d_max * std::pow(L, 4) * std::log(N);
    res.bound_terms.second = std::cbrt(double(f)) * std::sqrt(N) * d_max *
                             std::min(std::pow(d_max, 1.0 / 7.0), std::pow(double(f), 2.0 / 3.0));
    return res;
}

ClassCounts class_counts(std::int64_t D)
{
    ClassCounts c;
    for (std::int64_t d : fundamentals_in(1, D)) {
        if (d % 4 == 1)
            ++c.odd;
        else if (d % 16 == 8)
            ++c.eight;
        else
            ++c.twelve;
    }
    return c;
}

}  // namespace murm::discriminants
