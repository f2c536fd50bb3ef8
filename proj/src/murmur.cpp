#include "murm/murmur.hpp"
#include "murm/arith.hpp"
#include "murm/error.hpp"
#include "murm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace murm::murmur {

namespace {

const cplx I(0.0, 1.0);

// sum_d (d/n) for n = 0..N over the family members; integer, so independent of grouping.
std::vector<std::int32_t> family_counts(const DiscriminantFamily& fam, std::uint64_t N,
                                        unsigned workers)
{
    arith::PrimeTable pt(static_cast<std::uint32_t>(std::max<std::uint64_t>(N, 2)));
    const std::size_t nF = fam.size();
    unsigned G = workers == 0 ? default_workers() : workers;
    G = static_cast<unsigned>(std::min<std::size_t>({G, 4, std::max<std::size_t>(nF, 1)}));
    std::vector<std::vector<std::int32_t>> part(G, std::vector<std::int32_t>(N + 1, 0));
    parallel_for(G, G, [&](std::size_t g) {
        auto& acc = part[g];
        for (std::size_t i = g; i < nF; i += G) {
            auto kd = arith::kronecker_table(fam.members[i], N, pt);
            for (std::uint64_t n = 0; n <= N; ++n)
                acc[n] += kd[n];
        }
    });
    for (unsigned g = 1; g < G; ++g)
        for (std::uint64_t n = 0; n <= N; ++n)
            part[0][n] += part[g][n];
    return std::move(part[0]);
}

// Sum in blocks of 1024, then pairwise over the block sums.
template <class F>
cplx blocked_sum(std::uint64_t lo, std::uint64_t hi, F&& term)
{
    std::vector<cplx> blocks;
    for (std::uint64_t a = lo; a <= hi; a += 1024) {
        std::uint64_t b = std::min<std::uint64_t>(hi, a + 1023);
        cplx s = 0;
        for (std::uint64_t n = a; n <= b; ++n)
            s += term(n);
        blocks.push_back(s);
    }
    return arith::pairwise_sum(blocks);
}

void require_family(const DiscriminantFamily& fam)
{
    if (fam.members.empty())
        throw EmptyFamily("empty discriminant family");
}

}  // namespace

std::vector<cplx> lhs_sharp_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                                 const std::vector<double>& xs, unsigned workers)
{
    require_family(fam);
    if (xs.empty())
        return {};
    for (double x : xs)
        if (!(x > 1) || x == std::floor(x))
            throw DomainError("lhs_sharp: x must be a non-integer > 1");
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
    const std::uint64_t N = static_cast<std::uint64_t>(std::floor(xs[order.back()]));
    auto cnt = family_counts(fam, N, workers);
    const auto& chi = rep.chi();
    const double tau = rep.tau();
    auto term = [&](std::uint64_t n) -> cplx {
        if (cnt[n] == 0)
            return 0.0;
        cplx c = chi(std::int64_t(n));
        if (c == 0.0)
            return 0.0;
        return double(cnt[n]) * c * std::exp(I * (tau * std::log(double(n))));
    };
    std::vector<cplx> out(xs.size());
    cplx run = 0;
    std::uint64_t next = 1;
    for (std::size_t idx : order) {
        std::uint64_t top = static_cast<std::uint64_t>(std::floor(xs[idx]));
        if (top >= next) {
            run += blocked_sum(next, top, term);
            next = top + 1;
        }
        out[idx] = run / (double(fam.size()) * std::sqrt(xs[idx]));
    }
    return out;
}

cplx lhs_sharp(const GL1Representation& rep, const DiscriminantFamily& fam, double x)
{
    return lhs_sharp_grid(rep, fam, {x}, 1)[0];
}

std::vector<cplx> lhs_smoothed_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                                    const std::vector<double>& xs, unsigned workers)
{
    require_family(fam);
    if (xs.empty())
        return {};
    const double cut = std::sqrt(40.0 * std::log(10.0));
    double xmax = 0;
    for (double x : xs) {
        if (!(x > 0))
            throw DomainError("lhs_smoothed: x must be positive");
        xmax = std::max(xmax, x);
    }
    const std::uint64_t N = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(xmax * cut)));
    auto cnt = family_counts(fam, N, workers);
    const auto& chi = rep.chi();
    const double tau = rep.tau();
    std::vector<cplx> base(N + 1, 0.0);
    for (std::uint64_t n = 1; n <= N; ++n) {
        if (cnt[n] == 0)
            continue;
        cplx c = chi(std::int64_t(n));
        if (c != 0.0)
            base[n] = double(cnt[n]) * c * std::exp(I * (tau * std::log(double(n))));
    }
    std::vector<cplx> out(xs.size());
    parallel_for(xs.size(), workers, [&](std::size_t i) {
        const double x = xs[i];
        const std::uint64_t Nx = std::min<std::uint64_t>(N, static_cast<std::uint64_t>(std::ceil(x * cut)));
        const double inv = 1.0 / x;
        cplx s = Nx >= 1 ? blocked_sum(1, Nx, [&](std::uint64_t n) -> cplx {
            if (base[n] == 0.0)
                return 0.0;
            return complexfn::gaussian_weight(double(n) * inv) * base[n];
        })
                         : cplx(0.0);
        out[i] = s / (double(fam.size()) * std::sqrt(x));
    });
    return out;
}

cplx lhs_smoothed(const GL1Representation& rep, const DiscriminantFamily& fam, double x)
{
    return lhs_smoothed_grid(rep, fam, {x}, 1)[0];
}

std::vector<cplx> rhs_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                           const std::vector<double>& xs, const QuadratureSpec& spec, RhsMode mode,
                           const RhsOptions& opt)
{
    spec.validate();
    require_family(fam);
    const double sigma = mode == RhsMode::sharp ? spec.abscissa : opt.smoothed_abscissa;
    if (mode == RhsMode::sharp && !(sigma > 0.5 && sigma < 1))
        throw QuadratureSpecInvalid("rhs_integral: sharp abscissa must lie in (1/2, 1)");
    if (mode == RhsMode::smoothed && !(sigma > 0 && sigma < 0.5))
        throw QuadratureSpecInvalid("rhs_integral: smoothed abscissa must lie in (0, 1/2)");
    for (double x : xs)
        if (!(x > 0))
            throw DomainError("rhs_integral: x must be positive");

    const auto& chi = rep.chi();
    const std::int64_t q = chi.modulus();
    const double tau = rep.tau();
    const cplx kappa = rep.kappa();
    const auto chi2bar = chi.conj().pow(2);
    const lfunc::LSeriesBatch Lser(chi2bar, 2.0 * spec.t_max + 2.0 * std::abs(tau) + 1.0);
    const auto removed = arith::prime_divisors(2 * q);

    arith::PrimeTable pt(static_cast<std::uint32_t>(spec.prime_cutoff));
    std::vector<double> lp;
    std::vector<cplx> c2;
    std::vector<double> pp1;
    for (std::uint32_t p : pt.primes()) {
        if (p == 2 || q % p == 0)
            continue;
        lp.push_back(std::log(double(p)));
        c2.push_back(chi(p) * chi(p));
        pp1.push_back(double(p) + 1.0);
    }

    const long M = spec.nodes;
    const double dt = 2.0 * spec.t_max / double(M - 1);
    std::vector<cplx> base(static_cast<std::size_t>(M)), svals(static_cast<std::size_t>(M));
    const std::size_t block = 256;
    const std::size_t nblocks = (std::size_t(M) + block - 1) / block;
    parallel_for(nblocks, opt.workers, [&](std::size_t b) {
        for (std::size_t k = b * block; k < std::min<std::size_t>(M, (b + 1) * block); ++k) {
            const double t = -spec.t_max + dt * double(k);
            const cplx s(sigma, t);
            const cplx w1 = 2.0 - 2.0 * s + cplx(0, 2.0 * tau);
            const cplx w2 = w1 + 1.0;
            cplx den = Lser(w2);
            for (std::int64_t p : removed)
                den *= 1.0 - chi2bar(p) * std::exp(-w2 * std::log(double(p)));
            cplx prod = 1.0;
            for (std::size_t j = 0; j < lp.size(); ++j)
                prod *= 1.0 - 1.0 / (pp1[j] * (1.0 - c2[j] * std::exp(w2 * lp[j])));
            cplx meas = mode == RhsMode::sharp ? 1.0 / s
                                               : 0.5 * std::exp(complexfn::log_gamma(s / 2.0));
            double wt = (k == 0 || k == std::size_t(M - 1)) ? 0.5 * dt : dt;
            base[k] = wt * complexfn::gamma_ratio_half(s, kappa) * Lser(w1) / den * prod * meas;
            svals[k] = s;
        }
    });

    const cplx wF = omega_family(rep, fam, opt.omega);
    const bool residue = mode == RhsMode::sharp && chi.square_is_trivial();
    std::vector<cplx> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(M_PI * xs[i] / (double(q) * fam.d1));
        std::vector<cplx> terms(static_cast<std::size_t>(M));
        for (std::size_t k = 0; k < std::size_t(M); ++k)
            terms[k] = base[k] * std::exp((svals[k] - 0.5) * lx);
        out[i] = wF / (2.0 * M_PI) * arith::pairwise_sum(terms);
        if (residue)
            out[i] += lfunc::residue_term(rep, fam, xs[i], 100000, opt.residue_sign);
    }
    return out;
}

cplx rhs_integral(const GL1Representation& rep, const DiscriminantFamily& fam, double x,
                  const QuadratureSpec& spec, RhsMode mode, const RhsOptions& opt)
{
    return rhs_grid(rep, fam, {x}, spec, mode, opt)[0];
}

SweepResult compare_sweep(const GL1Representation& rep, const DiscriminantFamily& fam,
                          const std::vector<double>& xs, const QuadratureSpec& spec, RhsMode mode,
                          const RhsOptions& opt)
{
    if (xs.empty())
        throw DomainError("compare_sweep: empty grid");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw DomainError("compare_sweep: grid must be strictly ascending");
    auto lhs = mode == RhsMode::sharp ? lhs_sharp_grid(rep, fam, xs, opt.workers)
                                      : lhs_smoothed_grid(rep, fam, xs, opt.workers);
    auto rhs = rhs_grid(rep, fam, xs, spec, mode, opt);
    SweepResult r;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        r.rows.push_back({xs[i], lhs[i], rhs[i], lhs[i] - rhs[i]});
        num += std::norm(lhs[i] - rhs[i]);
        den += std::norm(rhs[i]);
    }
    r.l2_residual_ratio = den > 0 ? std::sqrt(num / den) : INFINITY;
    return r;
}

std::vector<double> x_grid(const GL1Representation& rep, const DiscriminantFamily& fam, int points,
                           double lo, double hi)
{
    if (points < 1 || !(lo > 0) || !(hi >= lo))
        throw DomainError("x_grid: bad window");
    const double c = double(rep.conductor()) * fam.d1 / M_PI;
    std::vector<double> xs;
    for (int i = 0; i < points; ++i) {
        double f = points == 1 ? lo : lo + (hi - lo) * double(i) / double(points - 1);
        xs.push_back(f * c);
    }
    return xs;
}

ExponentSchedule exponent_schedule(Rational delta)
{
    const Rational three_quarters(3, 4), one(1);
    if (!(delta > three_quarters && delta < one))
        throw DomainError("exponent_schedule: delta must lie in (3/4, 1)");
    ExponentSchedule e;
    e.delta = delta;
    e.rho_hat_f = std::max(three_quarters - delta, delta - one);
    const Rational five_sixths(5, 6), thirteen_14(13, 14);
    if (delta > five_sixths) {
        Rational u = delta - five_sixths;
        e.beta_hat = (Rational(2) - 3 * u) / (Rational(24) + 36 * u);
        e.gamma_hat = Rational(1, 2) + Rational(3, 4) * u;
        e.rho_hat = std::max(-Rational(3, 4) * u, delta - one);
        Rational v = delta - thirteen_14;
        Rational av = v < 0 ? -v : v;
        e.rho = Rational(-1, 14) + Rational(1, 8) * v + Rational(7, 8) * av;
    }
    return e;
}

}  // namespace murm::murmur
