// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "json.hpp"

#include "murm/arith.hpp"
#include "murm/characters.hpp"
#include "murm/complexfn.hpp"
#include "murm/discriminants.hpp"
#include "murm/lfunc.hpp"
#include "murm/murmur.hpp"

using namespace murm;
using characters::DirichletCharacter;
using cplx = std::complex<double>;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = budget_s <= 0 || secs < budget_s;
    bool ok = o.pass && in_time;
    if (!ok)
        ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                in_time ? "" : ", over time budget");
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...)
{
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool sqfree_brute(std::int64_t n)
{
    for (std::int64_t k = 2; k * k <= n; ++k)
        if (n % (k * k) == 0)
            return false;
    return true;
}

bool fundamental_brute(std::int64_t d)
{
    if (d % 4 == 1)
        return sqfree_brute(d);
    if (d % 4 != 0)
        return false;
    std::int64_t l = d / 4;
    if (l % 4 == 3)
        return sqfree_brute(l);
    if (l % 4 == 2)
        return sqfree_brute(l / 2) && (l / 2) % 2 == 1;
    return false;
}

DirichletCharacter fig1_character() { return characters::char_from_generator_map(7, {{3, 1, 6}}); }

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(MURM_CLI_PATH) + " " + args;
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

int main()
{
    const fs::path work = fs::temp_directory_path() / ("murm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(work);

    criterion(1, "family count", 1.0, [] {
        auto fam = discriminants::enumerate_family(99000, 101000, 7, 1);
        std::size_t brute = 0;
        for (std::int64_t d = 99001; d < 101000; ++d)
            brute += d % 7 == 1 && fundamental_brute(d);
        return Outcome{fam.size() == 89 && brute == 89, fmt("#F = %zu, brute scan = %zu, expected 89", fam.size(), brute)};
    });

    criterion(2, "class densities at D = 1e6", 10.0, [] {
        auto c = discriminants::class_counts(1000000);
        const double pi2 = M_PI * M_PI;
        double r1 = c.odd / (2e6 / pi2) - 1, r2 = c.eight / (1e6 / (2 * pi2)) - 1, r3 = c.twelve / (1e6 / (2 * pi2)) - 1;
        bool ok = std::abs(r1) < 0.01 && std::abs(r2) < 0.01 && std::abs(r3) < 0.01;
        return Outcome{ok, fmt("relative deviations %.2e %.2e %.2e (tol 1e-2)", r1, r2, r3)};
    });

    criterion(3, "power-sum asymptotics at d_max = 1e5", 30.0, [] {
        struct Case {
            std::int64_t q, l, m;
            cplx z;
        };
        const Case cases[] = {{7, 1, 1, 0.0}, {5, 2, 3, 0.5}, {7, 1, 1, cplx(-0.25, 2)}};
        bool ok = true;
        std::string d;
        for (auto c : cases) {
            auto r = discriminants::disc_power_sum(1e5, c.q, c.l, c.m, c.z);
            double e = std::abs(r.brute - r.main) / std::pow(1e5, c.z.real() + 1);
            ok = ok && e < 0.02;
            d += fmt("%.2e ", e);
        }
        return Outcome{ok, "scaled gaps " + d + "(tol 2e-2)"};
    });

    criterion(4, "family-size formula", 0, [] {
        auto fam = discriminants::enumerate_family(99000, 101000, 7, 1);
        double m = discriminants::family_size_main(fam);
        return Outcome{std::abs(m - double(fam.size())) <= 3, fmt("main %.4f vs #F %zu (tol 3)", m, fam.size())};
    });

    criterion(5, "L-function cross-validation", 120.0, [] {
        complexfn::AfeParameters p;
        double worst = 0;
        int points = 0;
        for (auto chi : {DirichletCharacter::kronecker(-4), DirichletCharacter::kronecker(5), fig1_character()})
            for (double a : {0.3, 0.4, 0.5, 0.6, 0.7})
                for (double t : {-50.0, -7.3, 13.1, 50.0}) {
                    cplx s(a, t);
                    worst = std::max(worst, std::abs(lfunc::L_afe(chi, s, p) - lfunc::L_reference(chi, s)));
                    ++points;
                }
        double cat = std::abs(lfunc::L_reference(DirichletCharacter::kronecker(-4), 2.0) - 0.915965594177219015054603514932);
        double l3 = std::abs(lfunc::L_reference(DirichletCharacter::kronecker(-3), 1.0) - M_PI / (3 * std::sqrt(3.0)));
        bool ok = worst < 1e-8 && cat < 1e-10 && l3 < 1e-10;
        return Outcome{ok, fmt("max |afe - ref| %.2e over %d points (tol 1e-8); Catalan %.1e, pi/(3 sqrt 3) %.1e (tol 1e-10)",
                               worst, points, cat, l3)};
    });

    criterion(6, "functional equation and Gauss sums", 0, [] {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> sig(0.05, 0.95), tt(-40, 40);
        double worst = 0;
        for (auto chi : {DirichletCharacter::kronecker(-4), DirichletCharacter::kronecker(5),
                         characters::char_from_generator_map(5, {{2, 1, 4}}), fig1_character()}) {
            auto rd = characters::root_data(chi);
            for (int i = 0; i < 10; ++i) {
                cplx s(sig(rng), tt(rng));
                cplx a = lfunc::Lambda_reference(chi, s);
                cplx b = rd.omega_chi * lfunc::Lambda_reference(chi.conj(), 1.0 - s);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
        }
        double gworst = 0;
        int prim = 0;
        for (std::int64_t q = 1; q <= 50; ++q)
            for (const auto& chi : characters::all_characters(q))
                if (chi.is_primitive()) {
                    gworst = std::max(gworst, std::abs(std::abs(characters::gauss_sum(chi)) - std::sqrt(double(q))));
                    ++prim;
                }
        return Outcome{worst < 1e-8 && gworst < 1e-12,
                       fmt("FE residual %.2e (tol 1e-8); Gauss law %.2e over %d primitive characters (tol 1e-12)", worst,
                           gworst, prim)};
    });

    criterion(7, "Euler-product identity", 120.0, [] {
        lfunc::GL1Representation rep(fig1_character(), 2.0);
        auto [l1, r1] = lfunc::euler_identity_check(rep, 1.2, 100000, 100000);
        auto [l2, r2] = lfunc::euler_identity_check(rep, 0.9, 1000000, 1000000);
        double g1 = std::abs(l1 - r1) / std::abs(r1), g2 = std::abs(l2 - r2) / std::abs(r2);
        return Outcome{g1 < 1e-8 && g2 < 1e-4, fmt("s=1.2 gap %.2e (tol 1e-8); s=0.9 gap %.2e (tol 1e-4)", g1, g2)};
    });

    criterion(8, "V-weight behaviour", 0, [] {
        complexfn::AfeParameters p;
        const double scale = 1.0;
        double small = complexfn::weight_V(p, 0.5, 0.0, 1e-3 * scale, false).real();
        double large = std::abs(complexfn::weight_V(p, 0.5, 0.0, 1e3 * scale, false));
        cplx hi = complexfn::weight_V_line_quad(p, 0.6, 0.0, 0.0, false, 2.0).value;
        cplx lo = complexfn::weight_V_line(p, 0.6, 0.0, 0.0, false, 0.5).value;
        double shift = std::abs(hi - lo);
        double res = 0;
        for (double y : {0.1, 1.0, 30.0}) {
            cplx right = complexfn::weight_V_line(p, 0.5, 0.0, std::log(y), false, 0.5).value;
            cplx left = complexfn::weight_V_line(p, 0.5, 0.0, std::log(y), false, -0.2).value;
            res = std::max(res, std::abs(right - left - 1.0));
        }
        bool ok = small >= 0.99 && small <= 1.01 && large < 1e-3 && shift < 1e-8 && res < 1e-6;
        return Outcome{ok, fmt("V(1e-3) = %.6f (want [0.99,1.01]); |V(1e3)| = %.3e (want < 1e-3); "
                               "contour shift %.1e (tol 1e-8); residue %.1e (tol 1e-6)",
                               small, large, shift, res)};
    });

    criterion(9, "exponent schedule", 1.0, [] {
        using R = murmur::Rational;
        auto e = murmur::exponent_schedule(R(13, 14));
        auto f = murmur::exponent_schedule(R(7, 8));
        bool ok = *e.beta_hat == R(1, 16) && *e.gamma_hat == R(4, 7) && *e.rho_hat == R(-1, 14) &&
                  f.rho_hat_f == R(-1, 8);
        auto s = [](R r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); };
        return Outcome{ok, "beta " + s(*e.beta_hat) + ", gamma " + s(*e.gamma_hat) + ", rho " + s(*e.rho_hat) +
                               ", rho_f(7/8) " + s(f.rho_hat_f)};
    });

    // Criteria 10 and 12 share the desk-preset runs of the command-line tool.
    const fs::path sharp1 = work / "sharp_w1.csv", sharp4 = work / "sharp_w4.csv", smooth = work / "smoothed.csv";
    criterion(10, "murmuration reproduction (desk preset)", 1800.0, [&] {
        if (run_cli("compare --preset fig1-desk --mode sharp --workers 1 --out " + sharp1.string()) != 0 ||
            run_cli("compare --preset fig1-desk --mode smoothed --out " + smooth.string()) != 0)
            return Outcome{false, "compare run failed"};
        auto a = nlohmann::json::parse(slurp(work / "sharp_w1.summary.json"));
        auto b = nlohmann::json::parse(slurp(work / "smoothed.summary.json"));
        double rs = a["l2_residual_ratio"], rm = b["l2_residual_ratio"];
        return Outcome{rs < 0.25 && rm < rs, fmt("sharp ratio %.4f (tol 0.25); smoothed ratio %.4f (must be < sharp)", rs, rm)};
    });

    criterion(11, "mean values over growing families", 900.0, [] {
        lfunc::GL1Representation rep(DirichletCharacter::kronecker(5), 0.0);
        const cplx s = 0.75;
        cplx main = lfunc::mean_value_main(rep, s, 1000000);
        lfunc::AfeOptions opt;
        opt.tail_tol = 1e-3;
        std::vector<double> gaps;
        std::string d;
        for (double D : {2e4, 8e4, 3.2e5}) {
            auto fam = discriminants::enumerate_family(D / 2, D, 5, 1);
            complexfn::AfeParameters p;
            p.alpha = 0.1;
            p.D_ref = D;
            auto mv = lfunc::mean_value_empirical(rep, fam, s, p, opt);
            gaps.push_back(std::abs(mv.value - main));
            d += fmt("D=%.0e #F=%zu gap %.4f; ", D, fam.size(), gaps.back());
        }
        bool ok = gaps[1] <= gaps[0] && gaps[2] <= gaps[1] && gaps[2] < 0.05;
        return Outcome{ok, d + fmt("main %.6f (need non-increasing, last < 0.05)", main.real())};
    });

    criterion(12, "determinism across worker counts", 0, [&] {
        if (run_cli("compare --preset fig1-desk --mode sharp --workers 4 --out " + sharp4.string()) != 0)
            return Outcome{false, "compare run failed"};
        std::string a = slurp(sharp1), b = slurp(sharp4);
        return Outcome{!a.empty() && a == b, fmt("CSV sizes %zu / %zu bytes, %s", a.size(), b.size(),
                                                 a == b ? "identical" : "different")};
    });

    std::error_code ec;
    fs::remove_all(work, ec);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
