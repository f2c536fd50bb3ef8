#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "murm/characters.hpp"
#include "murm/complexfn.hpp"
#include "murm/discriminants.hpp"

namespace murm::lfunc {

using cplx = std::complex<double>;
using characters::DirichletCharacter;
using complexfn::AfeParameters;
using discriminants::DiscriminantFamily;

// phi = |.|^{i tau} chi with chi primitive.
class GL1Representation {
public:
    GL1Representation(DirichletCharacter chi, double tau);

    const DirichletCharacter& chi() const { return chi_; }
    double tau() const { return tau_; }
    std::int64_t conductor() const { return chi_.modulus(); }
    cplx kappa() const { return {double(chi_.kappa()), -tau_}; }
    cplx omega() const { return omega_; }
    cplx gauss_sum() const { return gauss_; }
    cplx a(std::int64_t n) const;
    static constexpr double theta = 0.0;

private:
    DirichletCharacter chi_;
    double tau_;
    cplx gauss_;
    cplx omega_;
};

// Truncation control for the approximate functional equation sums.
struct AfeOptions {
    double tail_tol = 1e-11;
    std::uint64_t max_terms = 50'000'000;
};

struct AfeResult {
    cplx value;
    std::uint64_t terms_first = 0;
    std::uint64_t terms_second = 0;
    double tail_estimate = 0;
};

// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), Hurwitz zeta by Euler-Maclaurin with
// N = max(30, ceil(2|Im s|)) terms and Bernoulli corrections through B_12.
cplx L_reference(const DirichletCharacter& chi, cplx s);

// The same evaluator with the Dirichlet-series part precomputed for all |Im s| <= im_max.
class LSeriesBatch {
public:
    LSeriesBatch(const DirichletCharacter& chi, double im_max);
    cplx operator()(cplx s) const;

private:
    std::int64_t q_;
    std::int64_t Nmax_;
    bool principal_;
    std::vector<cplx> vals_;
    std::vector<std::int64_t> n_;
    std::vector<double> log_;
    std::vector<cplx> c_;
};

cplx L_removed(const DirichletCharacter& chi, cplx s, std::int64_t m);
// Completed Lambda(s, chi) = (q/pi)^{s/2} Gamma((s + kappa)/2) L(s, chi).
cplx Lambda_reference(const DirichletCharacter& chi, cplx s);

AfeResult L_afe_detail(const GL1Representation& rep, cplx s, const AfeParameters& p,
                       const AfeOptions& opt = {});
cplx L_afe(const GL1Representation& rep, cplx s, const AfeParameters& p);
cplx L_afe(const DirichletCharacter& chi, cplx s, const AfeParameters& p);

struct ProductResult {
    cplx value;
    double tail_estimate;
};
ProductResult local_murmur_product(const DirichletCharacter& chi, double tau, cplx s,
                                   long prime_cutoff);

std::pair<cplx, cplx> euler_identity_check(const GL1Representation& rep, cplx s, std::int64_t N,
                                           std::int64_t P);

enum class OmegaMode { exact, leading };
// Family root number: average of twisted root numbers, or the closed-form leading term.
cplx omega_family(const GL1Representation& rep, const DiscriminantFamily& fam,
                  OmegaMode mode = OmegaMode::leading);

// Root number of phi (x) chi_d.
cplx twisted_root_number(const GL1Representation& rep, std::int64_t d);

cplx residue_term(const GL1Representation& rep, const DiscriminantFamily& fam, double x,
                  long prime_cutoff = 100000, double sign = 1.0);
cplx mean_value_main(const GL1Representation& rep, cplx s, std::int64_t P);

struct MeanValueResult {
    cplx value;
    std::uint64_t max_terms_used = 0;
};
MeanValueResult mean_value_empirical(const GL1Representation& rep, const DiscriminantFamily& fam,
                                     cplx s, const AfeParameters& p, const AfeOptions& opt = {},
                                     unsigned workers = 0);

}  // namespace murm::lfunc
