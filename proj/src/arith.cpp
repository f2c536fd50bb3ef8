#include "murm/arith.hpp"
#include "murm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace murm::arith {

namespace {

constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (2/a) for odd a, indexed by a & 7

}  // namespace

// Cohen, Algorithm 1.4.10.
int kronecker(std::int64_t a, std::int64_t b)
{
    if (b < 0)
        throw DomainError("kronecker: n must be >= 0");
    if (b == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0)
        return 0;
    int v = __builtin_ctzll(static_cast<std::uint64_t>(b));
    b >>= v;
    int k = (v & 1) ? tab2[a & 7] : 1;
    for (;;) {
        if (a == 0)
            return b == 1 ? k : 0;
        v = __builtin_ctzll(static_cast<std::uint64_t>(a));
        a >>= v;
        if (v & 1)
            k *= tab2[b & 7];
        if (a & b & 2)
            k = -k;
        std::int64_t r = std::llabs(a);
        a = b % r;
        b = r;
    }
}

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    return std::gcd(a, b);
}

std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    if (n < 1)
        throw DomainError("prime_divisors: n must be >= 1");
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

int moebius(std::int64_t n)
{
    if (n < 1)
        throw DomainError("moebius: n must be >= 1");
    int mu = 1;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return 0;
            mu = -mu;
        }
    }
    if (n > 1)
        mu = -mu;
    return mu;
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    return moebius(std::llabs(n)) != 0;
}

std::int64_t totient(std::int64_t n)
{
    if (n < 1)
        throw DomainError("totient: n must be >= 1");
    std::int64_t r = n;
    for (std::int64_t p : prime_divisors(n))
        r = r / p * (p - 1);
    return r;
}

PrimeTable::PrimeTable(std::uint32_t limit) : limit_(limit), lpf_(std::size_t(limit) + 1, 0)
{
    if (limit < 2)
        throw DomainError("PrimeTable: limit must be >= 2");
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (lpf_[i] == 0) {
            lpf_[i] = i;
            primes_.push_back(i);
        }
        for (std::uint32_t p : primes_) {
            std::uint64_t m = std::uint64_t(p) * i;
            if (p > lpf_[i] || m > limit)
                break;
            lpf_[m] = p;
        }
    }
    lpf_[1] = 1;
}

bool PrimeTable::is_prime(std::uint64_t n) const
{
    if (n < 2)
        return false;
    if (n <= limit_)
        return lpf_[n] == n;
    for (std::uint64_t p : primes_) {
        if (p * p > n)
            return true;
        if (n % p == 0)
            return false;
    }
    for (std::uint64_t d = primes_.back() + 2; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::uint32_t> PrimeTable::primes_up_to(std::uint32_t bound) const
{
    if (bound > limit_)
        throw DomainError("primes_up_to: bound exceeds sieve limit");
    auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.begin(), it};
}

int PrimeTable::moebius(std::uint32_t n) const
{
    int mu = 1;
    while (n > 1) {
        std::uint32_t p = lpf_[n];
        n /= p;
        if (n % p == 0)
            return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<std::int8_t> kronecker_table(std::int64_t d, std::uint64_t N, const PrimeTable& pt)
{
    if (N > pt.limit())
        throw DomainError("kronecker_table: N exceeds sieve limit");
    std::vector<std::int8_t> k(N + 1, 0);
    k[0] = static_cast<std::int8_t>(kronecker(d, 0));
    if (N >= 1)
        k[1] = 1;
    for (std::uint64_t n = 2; n <= N; ++n) {
        std::uint32_t p = pt.least_factor(static_cast<std::uint32_t>(n));
        if (p == n)
            k[n] = static_cast<std::int8_t>(kronecker(d, std::int64_t(n)));
        else
            k[n] = static_cast<std::int8_t>(k[p] * k[n / p]);
    }
    return k;
}

std::vector<std::uint8_t> squarefree_segment(std::int64_t lo, std::int64_t hi)
{
    if (lo < 1 || hi < lo)
        throw DomainError("squarefree_segment: need 1 <= lo <= hi");
    std::vector<std::uint8_t> sf(std::size_t(hi - lo + 1), 1);
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(double(hi))) + 1;
    while (r * r > hi)
        --r;
    // sieve primes up to r, then strike multiples of p^2
    std::vector<std::uint8_t> comp(std::size_t(r) + 1, 0);
    for (std::int64_t p = 2; p <= r; ++p) {
        if (comp[p])
            continue;
        for (std::int64_t m = p * p; m <= r; m += p)
            comp[m] = 1;
        std::int64_t q = p * p;
        for (std::int64_t m = (lo + q - 1) / q * q; m <= hi; m += q)
            sf[std::size_t(m - lo)] = 0;
    }
    return sf;
}

}  // namespace murm::arith
