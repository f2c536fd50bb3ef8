#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace murm::discriminants {

using Rational = boost::rational<std::int64_t>;

struct DiscriminantFamily {
    double d0 = 0;
    double d1 = 0;
    std::int64_t base_modulus = 1;  // q
    std::int64_t residue = 0;       // l, reduced mod q_star
    std::int64_t q_star = 1;
    std::vector<std::int64_t> members;

    std::size_t size() const { return members.size(); }
    double delta_D() const { return d1 - d0; }
};

struct PowerSumResult {
    std::complex<double> brute;
    std::complex<double> main;
    Rational eta;
    double error_scale;
};

struct SecondMomentResult {
    double lhs;
    std::pair<double, double> bound_terms;
};

std::int64_t q_star(std::int64_t q);
bool is_fundamental(std::int64_t d);
DiscriminantFamily enumerate_family(double d0, double d1, std::int64_t q, std::int64_t ell);
Rational eta_coefficient(std::int64_t m, std::int64_t f, std::int64_t ell);
PowerSumResult disc_power_sum(double d_max, std::int64_t q, std::int64_t ell, std::int64_t m,
                              std::complex<double> z);
double family_size_main(const DiscriminantFamily& fam);
SecondMomentResult second_moment_probe(double N, double d_max, std::int64_t f, std::int64_t ell);

// Counts of fundamental d <= D in the classes d = 1 mod 4, d = 8 mod 16, d = 12 mod 16.
struct ClassCounts {
    std::int64_t odd = 0;
    std::int64_t eight = 0;
    std::int64_t twelve = 0;
};
ClassCounts class_counts(std::int64_t D);

}  // namespace murm::discriminants
