#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "murm/complexfn.hpp"
#include "murm/discriminants.hpp"
#include "murm/lfunc.hpp"

namespace murm::murmur {

using cplx = std::complex<double>;
using Rational = boost::rational<std::int64_t>;
using complexfn::QuadratureSpec;
using discriminants::DiscriminantFamily;
using lfunc::GL1Representation;
using lfunc::OmegaMode;
using lfunc::omega_family;

struct ComparisonRow {
    double x;
    cplx lhs;
    cplx rhs;
    cplx residual;
};

struct ExponentSchedule {
    Rational delta;
    Rational alpha_hat{0};
    std::optional<Rational> beta_hat;
    std::optional<Rational> gamma_hat;
    std::optional<Rational> rho_hat;
    std::optional<Rational> rho;
    Rational rho_hat_f;
    Rational lambda{1, 6};
};

enum class RhsMode { sharp, smoothed };

struct RhsOptions {
    double residue_sign = 1.0;
    double smoothed_abscissa = 0.1;
    OmegaMode omega = OmegaMode::leading;
    unsigned workers = 0;
};

cplx lhs_sharp(const GL1Representation& rep, const DiscriminantFamily& fam, double x);
std::vector<cplx> lhs_sharp_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                                 const std::vector<double>& xs, unsigned workers = 0);

cplx lhs_smoothed(const GL1Representation& rep, const DiscriminantFamily& fam, double x);
std::vector<cplx> lhs_smoothed_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                                    const std::vector<double>& xs, unsigned workers = 0);

cplx rhs_integral(const GL1Representation& rep, const DiscriminantFamily& fam, double x,
                  const QuadratureSpec& spec, RhsMode mode, const RhsOptions& opt = {});
std::vector<cplx> rhs_grid(const GL1Representation& rep, const DiscriminantFamily& fam,
                           const std::vector<double>& xs, const QuadratureSpec& spec, RhsMode mode,
                           const RhsOptions& opt = {});

struct SweepResult {
    std::vector<ComparisonRow> rows;
    double l2_residual_ratio = 0;
};
SweepResult compare_sweep(const GL1Representation& rep, const DiscriminantFamily& fam,
                          const std::vector<double>& xs, const QuadratureSpec& spec, RhsMode mode,
                          const RhsOptions& opt = {});

// points values evenly spaced on [lo, hi] * qD/pi, endpoints included.
std::vector<double> x_grid(const GL1Representation& rep, const DiscriminantFamily& fam, int points,
                           double lo = 0.3, double hi = 2.2);

ExponentSchedule exponent_schedule(Rational delta);

}  // namespace murm::murmur
