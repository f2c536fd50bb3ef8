// murm: command-line front end for the murmuration toolkit.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "murm/arith.hpp"
#include "murm/characters.hpp"
#include "murm/config.hpp"
#include "murm/discriminants.hpp"
#include "murm/error.hpp"
#include "murm/lfunc.hpp"
#include "murm/murmur.hpp"

using namespace murm;
using nlohmann::json;
using cplx = std::complex<double>;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

std::string rat_str(const discriminants::Rational& r)
{
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1)
        os << '/' << r.denominator();
    return os.str();
}

discriminants::Rational parse_rational(const std::string& s)
{
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return {std::stoll(s), 1};
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 0)
            throw ConfigError("delta: zero denominator");
        return {std::stoll(s.substr(0, slash)), den};
    } catch (const std::logic_error&) {
        throw ConfigError("delta: expected a rational a/b, got \"" + s + "\"");
    }
}

// "re" or "re,im"
cplx parse_complex(const std::string& s, const std::string& field)
{
    try {
        auto comma = s.find(',');
        if (comma == std::string::npos)
            return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw ConfigError(field + ": expected \"re\" or \"re,im\", got \"" + s + "\"");
    }
}

struct Flags {
    std::string config_file, preset, out, character, mode, s0;
    std::optional<double> tau, d0, d1, t_max, abscissa, x_min, x_max, A, alpha, beta, cV, D_ref;
    std::optional<std::int64_t> q, ell;
    std::optional<long> nodes, prime_cutoff;
    std::optional<int> points, B;
    unsigned workers = 0;
    // command-specific
    std::string s = "0.5", z = "0", delta;
    double dmax = 1e5, N = 1e5;
    std::int64_t m = 1, f = 1, N_int = 100000, P = 100000;
    double tail_tol = 1e-11;
    double max_terms = 5e7;
};

config::RunConfig resolve(const Flags& fl)
{
    config::RunConfig c;
    if (!fl.preset.empty())
        c = config::preset(fl.preset);
    if (!fl.config_file.empty())
        c = config::load_file(fl.config_file, c);
    if (!fl.character.empty()) {
        try {
            c.representation.character = json::parse(fl.character);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("representation.character: ") + e.what());
        }
    }
    if (fl.tau) c.representation.tau = *fl.tau;
    if (fl.d0) c.family.d0 = *fl.d0;
    if (fl.d1) c.family.d1 = *fl.d1;
    if (fl.q) c.family.q = *fl.q;
    if (fl.ell) c.family.ell = *fl.ell;
    if (fl.t_max) c.quadrature.t_max = *fl.t_max;
    if (fl.nodes) c.quadrature.nodes = *fl.nodes;
    if (fl.prime_cutoff) c.quadrature.prime_cutoff = *fl.prime_cutoff;
    if (fl.abscissa) c.quadrature.abscissa = *fl.abscissa;
    if (fl.x_min) c.sweep.x_min_factor = *fl.x_min;
    if (fl.x_max) c.sweep.x_max_factor = *fl.x_max;
    if (fl.points) c.sweep.points = *fl.points;
    if (!fl.mode.empty()) c.sweep.mode = config::parse_mode(fl.mode);
    if (fl.A) c.afe.A = *fl.A;
    if (fl.B) c.afe.B = *fl.B;
    if (fl.alpha) c.afe.alpha = *fl.alpha;
    if (fl.beta) c.afe.beta = *fl.beta;
    if (fl.cV) c.afe.cV = *fl.cV;
    if (fl.D_ref) c.afe.D_ref = *fl.D_ref;
    if (!fl.s0.empty()) c.afe.s0 = parse_complex(fl.s0, "afe.s0");
    if (!fl.out.empty()) c.output = fl.out;
    return c;
}

void emit(const json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw ConfigError("output: cannot open " + out);
    f << j.dump(2) << '\n';
}

json record(json inputs, cplx brute, cplx main)
{
    json j;
    j["inputs"] = std::move(inputs);
    j["brute"] = cj(brute);
    j["main"] = cj(main);
    j["ratio"] = main == 0.0 ? json(nullptr) : cj(brute / main);
    return j;
}

lfunc::GL1Representation representation(const config::RunConfig& c)
{
    return {characters::character_from_json(c.representation.character), c.representation.tau};
}

std::string sidecar_path(const std::string& csv)
{
    std::string base = csv;
    if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0)
        base.resize(base.size() - 4);
    return base + ".summary.json";
}

int run_compare(const config::RunConfig& c, unsigned workers)
{
    config::validate(c);
    if (c.output.empty())
        throw ConfigError("output: compare needs --out");
    auto t0 = std::chrono::steady_clock::now();
    auto rep = representation(c);
    auto fam = discriminants::enumerate_family(c.family.d0, c.family.d1, c.family.q, c.family.ell);
    auto xs = murmur::x_grid(rep, fam, c.sweep.points, c.sweep.x_min_factor, c.sweep.x_max_factor);
    murmur::RhsOptions opt;
    opt.workers = workers;
    auto res = murmur::compare_sweep(rep, fam, xs, c.quadrature, c.sweep.mode, opt);

    std::FILE* f = std::fopen(c.output.c_str(), "w");
    if (!f)
        throw ConfigError("output: cannot open " + c.output);
    std::fprintf(f, "x,lhs_re,lhs_im,rhs_re,rhs_im,res_re,res_im\n");
    for (const auto& r : res.rows)
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x, r.lhs.real(), r.lhs.imag(),
                     r.rhs.real(), r.rhs.imag(), r.residual.real(), r.residual.imag());
    std::fclose(f);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json s;
    s["config"] = config::to_json(c);
    s["l2_residual_ratio"] = res.l2_residual_ratio;
    s["runtime_seconds"] = secs;
    s["qD_over_pi"] = double(rep.conductor()) * fam.d1 / M_PI;
    s["family_size"] = fam.size();
    emit(s, sidecar_path(c.output));
    return 0;
}

void add_common(CLI::App* sc, Flags& fl)
{
    sc->add_option("--config", fl.config_file, "JSON config file");
    sc->add_option("--preset", fl.preset, "fig1-full or fig1-desk");
    sc->add_option("--out", fl.out, "output path");
    sc->add_option("--workers", fl.workers, "worker threads (0 = all cores)");
}

void add_rep(CLI::App* sc, Flags& fl)
{
    sc->add_option("--character", fl.character, "character JSON {modulus, generators:[{g,num,den}]}");
    sc->add_option("--tau", fl.tau);
}

void add_family(CLI::App* sc, Flags& fl)
{
    sc->add_option("--d0", fl.d0);
    sc->add_option("--d1", fl.d1);
    sc->add_option("--q", fl.q);
    sc->add_option("--ell", fl.ell);
}

void add_afe(CLI::App* sc, Flags& fl)
{
    sc->add_option("--A", fl.A);
    sc->add_option("--B", fl.B);
    sc->add_option("--alpha", fl.alpha);
    sc->add_option("--beta", fl.beta);
    sc->add_option("--cV", fl.cV);
    sc->add_option("--D-ref", fl.D_ref);
    sc->add_option("--s0", fl.s0, "re or re,im");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"murm: murmurations for quadratic twists of Dirichlet characters"};
    app.require_subcommand(1);
    Flags fl;

    auto* fam_cmd = app.add_subcommand("family", "enumerate a discriminant family");
    add_common(fam_cmd, fl);
    add_family(fam_cmd, fl);
    fam_cmd->add_flag("--members", "list the members");

    auto* ps = app.add_subcommand("powersum", "discriminant power sum vs main term");
    add_common(ps, fl);
    ps->add_option("--dmax", fl.dmax);
    ps->add_option("--q", fl.q);
    ps->add_option("--ell", fl.ell);
    ps->add_option("--m", fl.m);
    ps->add_option("--z", fl.z, "re or re,im");

    auto* mom = app.add_subcommand("moment", "second-moment probe");
    add_common(mom, fl);
    mom->add_option("--N", fl.N);
    mom->add_option("--dmax", fl.dmax);
    mom->add_option("--f", fl.f);
    mom->add_option("--ell", fl.ell);

    auto* lc = app.add_subcommand("lcheck", "L-value by AFE vs reference");
    add_common(lc, fl);
    add_rep(lc, fl);
    add_afe(lc, fl);
    lc->add_option("--s", fl.s, "re or re,im");

    auto* eu = app.add_subcommand("euler", "Euler identity check");
    add_common(eu, fl);
    add_rep(eu, fl);
    eu->add_option("--s", fl.s, "re or re,im");
    eu->add_option("--N", fl.N_int);
    eu->add_option("--P", fl.P);

    auto* mv = app.add_subcommand("meanvalue", "family mean of L-values vs main term");
    add_common(mv, fl);
    add_rep(mv, fl);
    add_family(mv, fl);
    add_afe(mv, fl);
    mv->add_option("--s", fl.s, "re or re,im");
    mv->add_option("--P", fl.P, "prime cutoff for the main term");
    mv->add_option("--tail-tol", fl.tail_tol);
    mv->add_option("--max-terms", fl.max_terms);

    auto* cmp = app.add_subcommand("compare", "murmuration sweep: CSV plus summary JSON");
    add_common(cmp, fl);
    add_rep(cmp, fl);
    add_family(cmp, fl);
    cmp->add_option("--t-max", fl.t_max);
    cmp->add_option("--nodes", fl.nodes);
    cmp->add_option("--prime-cutoff", fl.prime_cutoff);
    cmp->add_option("--abscissa", fl.abscissa);
    cmp->add_option("--x-min", fl.x_min);
    cmp->add_option("--x-max", fl.x_max);
    cmp->add_option("--points", fl.points);
    cmp->add_option("--mode", fl.mode, "sharp or smoothed");

    auto* sch = app.add_subcommand("schedule", "exponent schedule for #F = D^delta");
    add_common(sch, fl);
    sch->add_option("--delta", fl.delta, "rational a/b")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*fam_cmd) {
            auto c = resolve(fl);
            auto fam = discriminants::enumerate_family(c.family.d0, c.family.d1, c.family.q, c.family.ell);
            double main = discriminants::family_size_main(fam);
            json j = record({{"d0", c.family.d0}, {"d1", c.family.d1}, {"q", c.family.q}, {"ell", c.family.ell}},
                            double(fam.size()), main);
            j["count"] = fam.size();
            j["q_star"] = fam.q_star;
            if (fam_cmd->count("--members"))
                j["members"] = fam.members;
            emit(j, fl.out);
        } else if (*ps) {
            std::int64_t q = fl.q.value_or(1), ell = fl.ell.value_or(1);
            cplx z = parse_complex(fl.z, "z");
            auto r = discriminants::disc_power_sum(fl.dmax, q, ell, fl.m, z);
            json j = record({{"dmax", fl.dmax}, {"q", q}, {"ell", ell}, {"m", fl.m}, {"z", cj(z)}}, r.brute, r.main);
            j["eta"] = rat_str(r.eta);
            j["error_scale"] = r.error_scale;
            emit(j, fl.out);
        } else if (*mom) {
            std::int64_t ell = fl.ell.value_or(1);
            auto r = discriminants::second_moment_probe(fl.N, fl.dmax, fl.f, ell);
            double bound = r.bound_terms.first + r.bound_terms.second;
            json j = record({{"N", fl.N}, {"dmax", fl.dmax}, {"f", fl.f}, {"ell", ell}}, r.lhs, bound);
            j["bound_terms"] = {r.bound_terms.first, r.bound_terms.second};
            emit(j, fl.out);
        } else if (*lc) {
            auto c = resolve(fl);
            auto chi = characters::character_from_json(c.representation.character);
            cplx s = parse_complex(fl.s, "s");
            cplx ref = lfunc::L_reference(chi, s);
            cplx afe = lfunc::L_afe(chi, s, c.afe);
            emit(record({{"character", c.representation.character}, {"s", cj(s)}}, afe, ref), fl.out);
        } else if (*eu) {
            auto c = resolve(fl);
            auto rep = representation(c);
            cplx s = parse_complex(fl.s, "s");
            auto [lhs, rhs] = lfunc::euler_identity_check(rep, s, fl.N_int, fl.P);
            emit(record({{"character", c.representation.character}, {"tau", c.representation.tau},
                         {"s", cj(s)}, {"N", fl.N_int}, {"P", fl.P}},
                        lhs, rhs),
                 fl.out);
        } else if (*mv) {
            auto c = resolve(fl);
            c.afe.validate();
            auto rep = representation(c);
            auto fam = discriminants::enumerate_family(c.family.d0, c.family.d1, c.family.q, c.family.ell);
            cplx s = parse_complex(fl.s, "s");
            lfunc::AfeOptions opt;
            opt.tail_tol = fl.tail_tol;
            opt.max_terms = static_cast<std::uint64_t>(fl.max_terms);
            auto emp = lfunc::mean_value_empirical(rep, fam, s, c.afe, opt, fl.workers);
            cplx main = lfunc::mean_value_main(rep, s, fl.P);
            json j = record({{"character", c.representation.character}, {"tau", c.representation.tau},
                             {"family", config::to_json(c)["family"]}, {"s", cj(s)}, {"P", fl.P}},
                            emp.value, main);
            j["family_size"] = fam.size();
            j["max_terms_used"] = emp.max_terms_used;
            emit(j, fl.out);
        } else if (*cmp) {
            return run_compare(resolve(fl), fl.workers);
        } else if (*sch) {
            auto e = murmur::exponent_schedule(parse_rational(fl.delta));
            json j;
            j["inputs"] = {{"delta", rat_str(e.delta)}};
            j["delta"] = rat_str(e.delta);
            j["alpha_hat"] = rat_str(e.alpha_hat);
            auto opt = [](const std::optional<discriminants::Rational>& r) {
                return r ? json(rat_str(*r)) : json(nullptr);
            };
            j["beta_hat"] = opt(e.beta_hat);
            j["gamma_hat"] = opt(e.gamma_hat);
            j["rho_hat"] = opt(e.rho_hat);
            j["rho"] = opt(e.rho);
            j["rho_hat_f"] = rat_str(e.rho_hat_f);
            j["lambda"] = rat_str(e.lambda);
            emit(j, fl.out);
        }
    } catch (const QuadratureNonConvergence& e) {
        std::cerr << "murm: non-convergence: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "murm: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "murm: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
