#include "murm/characters.hpp"
#include "murm/arith.hpp"
#include "murm/error.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace murm::characters {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>((__int128)a * b % m);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m)
{
    std::int64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::int64_t mult_order(std::int64_t g, std::int64_t q)
{
    std::int64_t phi = arith::totient(q);
    std::int64_t ord = phi;
    for (std::int64_t p : arith::prime_divisors(phi))
        while (ord % p == 0 && powmod(g, ord / p, q) == 1)
            ord /= p;
    return ord;
}

std::int64_t primitive_root_prime_power(std::int64_t p, std::int64_t pe)
{
    auto fs = arith::prime_divisors(p - 1);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (std::int64_t r : fs)
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok)
            break;
    }
    if (pe != p && powmod(g, p - 1, p * p) == 1)
        g += p;
    return g;
}

// x = a mod m1, x = 1 mod m2, m1 and m2 coprime.
std::int64_t crt_lift(std::int64_t a, std::int64_t m1, std::int64_t m2)
{
    if (m2 == 1)
        return a % m1;
    // x = 1 + m2*t, m2*t = a-1 mod m1
    std::int64_t inv = 1;
    {
        std::int64_t g0 = m1, g1 = m2 % m1, x0 = 0, x1 = 1;
        while (g1 != 0) {
            std::int64_t qt = g0 / g1;
            std::int64_t t = g0 - qt * g1;
            g0 = g1;
            g1 = t;
            t = x0 - qt * x1;
            x0 = x1;
            x1 = t;
        }
        inv = ((x0 % m1) + m1) % m1;
    }
    std::int64_t t = mulmod(((a - 1) % m1 + m1) % m1, inv, m1);
    return 1 + m2 * t;
}

struct Gen {
    std::int64_t g;
    std::int64_t order;
};

// Independent generators of (Z/q)^x: the group is the direct product of the cyclic groups <g_i>.
std::vector<Gen> group_generators(std::int64_t q)
{
    std::vector<Gen> out;
    std::int64_t n = q;
    for (std::int64_t p : arith::prime_divisors(q)) {
        std::int64_t pe = 1;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            pe *= p;
            ++e;
        }
        std::int64_t rest = q / pe;
        if (p == 2) {
            if (e == 2)
                out.push_back({crt_lift(3, pe, rest), 2});
            if (e >= 3) {
                out.push_back({crt_lift(pe - 1, pe, rest), 2});
                out.push_back({crt_lift(5, pe, rest), pe / 4});
            }
        } else {
            std::int64_t g = primitive_root_prime_power(p, pe);
            out.push_back({crt_lift(g, pe, rest), pe / p * (p - 1)});
        }
    }
    return out;
}

}  // namespace

std::complex<double> root_of_unity(std::int64_t num, std::int64_t den)
{
    std::int64_t k = ((num % den) + den) % den;
    if ((4 * k) % den == 0) {
        switch (4 * k / den) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    double a = 2.0 * M_PI * double(k) / double(den);
    return {std::cos(a), std::sin(a)};
}

void DirichletCharacter::normalize()
{
    std::int64_t g = 0;
    for (std::int64_t k : exps_)
        if (k >= 0)
            g = std::gcd(g, k);
    g = std::gcd(g, den_);
    if (g > 1) {
        den_ /= g;
        for (auto& k : exps_)
            if (k >= 0)
                k /= g;
    }
    vals_.assign(std::size_t(q_), {0.0, 0.0});
    for (std::int64_t n = 0; n < q_; ++n)
        if (exps_[n] >= 0)
            vals_[n] = root_of_unity(exps_[n], den_);
}

DirichletCharacter DirichletCharacter::from_exponents(std::int64_t q, std::int64_t den,
                                                      std::vector<std::int64_t> exps)
{
    if (q < 1 || den < 1 || std::int64_t(exps.size()) != q)
        throw DomainError("from_exponents: bad table");
    DirichletCharacter c;
    c.q_ = q;
    c.den_ = den;
    c.exps_ = std::move(exps);
    for (auto& k : c.exps_)
        if (k >= 0)
            k %= den;
    c.normalize();
    return c;
}

DirichletCharacter DirichletCharacter::trivial()
{
    return principal(1);
}

DirichletCharacter DirichletCharacter::principal(std::int64_t q)
{
    if (q < 1)
        throw DomainError("principal: q must be >= 1");
    std::vector<std::int64_t> e(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n)
        e[n] = std::gcd(n, q) == 1 ? 0 : -1;
    return from_exponents(q, 1, std::move(e));
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t d)
{
    if (d == 0)
        throw DomainError("kronecker character: d must be nonzero");
    std::int64_t q = d < 0 ? -d : d;
    std::vector<std::int64_t> e(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) {
        int k = arith::kronecker(d, n);
        e[n] = k == 0 ? -1 : (k == 1 ? 0 : 1);
    }
    auto c = from_exponents(q, 2, std::move(e));
    // verify periodicity mod |d| (fails for non-discriminants)
    for (std::int64_t n = 1; n <= q; ++n)
        if (arith::kronecker(d, n + q) != arith::kronecker(d, n))
            throw DomainError("kronecker character: (d/.) is not periodic mod |d|");
    return c;
}

int DirichletCharacter::parity() const
{
    if (q_ <= 2)
        return 1;
    return exps_[q_ - 1] == 0 ? 1 : -1;
}

bool DirichletCharacter::is_principal() const
{
    for (std::int64_t k : exps_)
        if (k > 0)
            return false;
    return true;
}

bool DirichletCharacter::square_is_trivial() const
{
    for (std::int64_t k : exps_)
        if (k > 0 && (2 * k) % den_ != 0)
            return false;
    return true;
}

std::int64_t DirichletCharacter::order() const
{
    return den_;
}

std::int64_t DirichletCharacter::conductor() const
{
    for (std::int64_t f = 1; f < q_; ++f) {
        if (q_ % f != 0)
            continue;
        bool induced = true;
        for (std::int64_t n = 1; n < q_ && induced; n += f)
            if (exps_[n] > 0)
                induced = false;
        if (induced)
            return f;
    }
    return q_;
}

DirichletCharacter DirichletCharacter::conj() const
{
    return pow(-1);
}

DirichletCharacter DirichletCharacter::pow(std::int64_t k) const
{
    std::vector<std::int64_t> e(exps_);
    for (auto& x : e)
        if (x >= 0)
            x = ((k % den_) * x % den_ + den_) % den_;
    return from_exponents(q_, den_, std::move(e));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const
{
    std::int64_t q = std::lcm(q_, o.q_);
    std::int64_t den = std::lcm(den_, o.den_);
    std::vector<std::int64_t> e(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) {
        std::int64_t a = exps_[n % q_], b = o.exps_[n % o.q_];
        e[n] = (a < 0 || b < 0) ? -1 : (a * (den / den_) + b * (den / o.den_)) % den;
    }
    return from_exponents(q, den, std::move(e));
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const
{
    return q_ == o.q_ && den_ == o.den_ && exps_ == o.exps_;
}

std::vector<GeneratorImage> DirichletCharacter::generator_images() const
{
    std::vector<GeneratorImage> out;
    for (const Gen& g : group_generators(q_)) {
        std::int64_t k = exps_[g.g % q_];
        std::int64_t gg = std::gcd(k, den_);
        out.push_back({g.g, k / gg, den_ / gg});
    }
    return out;
}

DirichletCharacter char_from_generator_map(std::int64_t q, const std::vector<GeneratorImage>& gens)
{
    if (q < 1)
        throw DomainError("char_from_generator_map: q must be >= 1");
    std::int64_t den = 1;
    for (const auto& g : gens) {
        if (g.den < 1)
            throw DomainError("char_from_generator_map: den must be >= 1");
        if (std::gcd(((g.g % q) + q) % q, q) != 1)
            throw NotAGeneratingSet("generator " + std::to_string(g.g) + " is not a unit mod " +
                                    std::to_string(q));
        std::int64_t ord = mult_order(((g.g % q) + q) % q, q);
        std::int64_t num = ((g.num % g.den) + g.den) % g.den;
        std::int64_t rd = g.den / std::gcd(num, g.den);
        if (ord % rd != 0)
            throw OrderMismatch("root of unity of order " + std::to_string(rd) +
                                " assigned to generator " + std::to_string(g.g) + " of order " +
                                std::to_string(ord));
        den = std::lcm(den, g.den);
    }
    std::vector<std::int64_t> e(std::size_t(q), -1);
    std::int64_t one = 1 % q;
    e[one] = 0;
    std::deque<std::int64_t> todo{one};
    std::int64_t reached = 1;
    while (!todo.empty()) {
        std::int64_t x = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            std::int64_t y = mulmod(x, ((g.g % q) + q) % q, q);
            std::int64_t k = (e[x] + ((g.num % g.den) + g.den) % g.den * (den / g.den)) % den;
            if (e[y] < 0) {
                e[y] = k;
                ++reached;
                todo.push_back(y);
            } else if (e[y] != k) {
                throw OrderMismatch("generator assignments are inconsistent mod " +
                                    std::to_string(q));
            }
        }
    }
    if (reached != arith::totient(q))
        throw NotAGeneratingSet("listed residues do not generate (Z/" + std::to_string(q) + ")^x");
    return DirichletCharacter::from_exponents(q, den, std::move(e));
}

std::complex<double> gauss_sum(const DirichletCharacter& chi)
{
    std::int64_t q = chi.modulus();
    std::vector<std::complex<double>> t(static_cast<std::size_t>(q));
    for (std::int64_t a = 0; a < q; ++a)
        t[a] = chi(a) * root_of_unity(a, q);
    return arith::pairwise_sum(t);
}

bool char_square_is_trivial(const DirichletCharacter& chi)
{
    return chi.square_is_trivial();
}

CharacterRootData root_data(const DirichletCharacter& chi)
{
    CharacterRootData r;
    r.gauss_sum = gauss_sum(chi);
    r.kappa_chi = chi.kappa();
    std::complex<double> i_pow = r.kappa_chi ? std::complex<double>(0, -1) : 1.0;
    r.omega_chi = i_pow * r.gauss_sum / std::sqrt(double(chi.modulus()));
    return r;
}

std::vector<DirichletCharacter> all_characters(std::int64_t q)
{
    auto gens = group_generators(q);
    std::vector<DirichletCharacter> out;
    std::vector<std::int64_t> a(gens.size(), 0);
    for (;;) {
        std::vector<GeneratorImage> imgs;
        for (std::size_t i = 0; i < gens.size(); ++i)
            imgs.push_back({gens[i].g, a[i], gens[i].order});
        out.push_back(char_from_generator_map(q, imgs));
        std::size_t i = 0;
        while (i < gens.size() && ++a[i] == gens[i].order)
            a[i++] = 0;
        if (i == gens.size())
            break;
    }
    return out;
}

nlohmann::json to_json(const DirichletCharacter& chi)
{
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : chi.generator_images())
        gens.push_back({{"g", g.g}, {"num", g.num}, {"den", g.den}});
    return {{"modulus", chi.modulus()}, {"generators", gens}};
}

DirichletCharacter character_from_json(const nlohmann::json& j)
{
    try {
        std::int64_t q = j.at("modulus").get<std::int64_t>();
        std::vector<GeneratorImage> gens;
        for (const auto& g : j.at("generators"))
            gens.push_back({g.at("g").get<std::int64_t>(), g.at("num").get<std::int64_t>(),
                            g.at("den").get<std::int64_t>()});
        return char_from_generator_map(q, gens);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("character: ") + e.what());
    }
}

}  // namespace murm::characters
