#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace murm::characters {

// Generator assignment g -> exp(2 pi i num/den).
struct GeneratorImage {
    std::int64_t g;
    std::int64_t num;
    std::int64_t den;
};

// A Dirichlet character mod q stored as exact exponents k(n), chi(n) = e(k(n)/den),
// with a complex snapshot of the values.
class DirichletCharacter {
public:
    static DirichletCharacter trivial();
    static DirichletCharacter principal(std::int64_t q);
    // (d/.) as a character mod |d|; d must be a fundamental discriminant.
    static DirichletCharacter kronecker(std::int64_t d);
    // Build directly from an exponent table (entries -1 mark residues not coprime to q).
    static DirichletCharacter from_exponents(std::int64_t q, std::int64_t den,
                                             std::vector<std::int64_t> exps);

    std::int64_t modulus() const { return q_; }
    std::int64_t denominator() const { return den_; }
    // Exponent k with chi(n) = e(k/den), or -1 when gcd(n, q) > 1.
    std::int64_t exponent(std::int64_t n) const { return exps_[reduce(n)]; }
    std::complex<double> operator()(std::int64_t n) const { return vals_[reduce(n)]; }
    const std::vector<std::complex<double>>& values() const { return vals_; }

    int parity() const;               // chi(-1) as +1 / -1
    int kappa() const { return parity() == 1 ? 0 : 1; }
    bool is_primitive() const { return conductor() == q_; }
    std::int64_t conductor() const;
    bool is_principal() const;
    bool square_is_trivial() const;
    std::int64_t order() const;

    DirichletCharacter conj() const;
    DirichletCharacter pow(std::int64_t k) const;
    // Product as a character mod lcm of the moduli.
    DirichletCharacter operator*(const DirichletCharacter& o) const;

    bool operator==(const DirichletCharacter& o) const;

    // Generators of (Z/q)^x with their exponents; a valid input for char_from_generator_map.
    std::vector<GeneratorImage> generator_images() const;

private:
    std::int64_t reduce(std::int64_t n) const
    {
        std::int64_t r = n % q_;
        return r < 0 ? r + q_ : r;
    }
    void normalize();

    std::int64_t q_ = 1;
    std::int64_t den_ = 1;
    std::vector<std::int64_t> exps_;
    std::vector<std::complex<double>> vals_;
};

struct CharacterRootData {
    std::complex<double> gauss_sum;
    int kappa_chi;
    std::complex<double> omega_chi;
};

DirichletCharacter char_from_generator_map(std::int64_t q, const std::vector<GeneratorImage>& gens);
std::complex<double> gauss_sum(const DirichletCharacter& chi);
bool char_square_is_trivial(const DirichletCharacter& chi);
CharacterRootData root_data(const DirichletCharacter& chi);

// e(num/den) with exact values at multiples of 1/4.
std::complex<double> root_of_unity(std::int64_t num, std::int64_t den);

// All characters mod q, in a fixed order.
std::vector<DirichletCharacter> all_characters(std::int64_t q);

nlohmann::json to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const nlohmann::json& j);

}  // namespace murm::characters
