#pragma once

#include <cstdint>
#include <vector>

namespace murm::arith {

// Kronecker symbol (d/n) for any integer d and n >= 0.
int kronecker(std::int64_t d, std::int64_t n);

int moebius(std::int64_t n);
bool is_squarefree(std::int64_t n);
std::int64_t totient(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);

// Distinct prime divisors in increasing order.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

// Least-prime-factor sieve. least_factor(n) == n exactly when n is prime.
class PrimeTable {
public:
    static constexpr std::uint32_t default_limit = 2'000'000;

    explicit PrimeTable(std::uint32_t limit = default_limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t least_factor(std::uint32_t n) const { return lpf_[n]; }
    bool is_prime(std::uint64_t n) const;
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    // Primes p <= bound (bound must not exceed limit()).
    std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) const;

    int moebius(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> lpf_;
    std::vector<std::uint32_t> primes_;
};

// (d/n) for n = 0..N, filled multiplicatively from the prime values; needs N <= pt.limit().
std::vector<std::int8_t> kronecker_table(std::int64_t d, std::uint64_t N, const PrimeTable& pt);

// Squarefree indicator for the integers in [lo, hi].
std::vector<std::uint8_t> squarefree_segment(std::int64_t lo, std::int64_t hi);

// Pairwise (cascade) summation of a contiguous range.
template <class T>
T pairwise_sum(const T* x, std::size_t n)
{
    if (n <= 16) {
        T s{};
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

template <class V>
auto pairwise_sum(const V& v)
{
    return pairwise_sum(v.data(), v.size());
}

}  // namespace murm::arith
