#include "murm/config.hpp"

#include <fstream>

#include "murm/characters.hpp"
#include "murm/error.hpp"

namespace murm::config {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError(path + ": " + what);
}

template <class T>
void read_num(const json& j, const char* key, const std::string& path, T& out)
{
    if (!j.contains(key))
        return;
    const json& v = j.at(key);
    if (!v.is_number())
        fail(path + "." + key, "expected a number");
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer())
            fail(path + "." + key, "expected an integer");
        out = v.get<T>();
    } else {
        out = v.get<T>();
    }
}

const json& block(const json& j, const char* key, const std::string& path)
{
    const json& b = j.at(key);
    if (!b.is_object())
        fail(path + "." + key, "expected an object");
    return b;
}

}  // namespace

std::string mode_name(murmur::RhsMode m)
{
    return m == murmur::RhsMode::sharp ? "sharp" : "smoothed";
}

murmur::RhsMode parse_mode(const std::string& s)
{
    if (s == "sharp")
        return murmur::RhsMode::sharp;
    if (s == "smoothed")
        return murmur::RhsMode::smoothed;
    throw ConfigError("sweep.mode: expected \"sharp\" or \"smoothed\", got \"" + s + "\"");
}

RunConfig preset(const std::string& name)
{
    if (name != "fig1-full" && name != "fig1-desk")
        throw ConfigError("preset: unknown preset \"" + name + "\"");
    RunConfig c;
    c.preset = name;
    c.representation.character = {{"modulus", 7}, {"generators", json::array({{{"g", 3}, {"num", 1}, {"den", 6}}})}};
    c.representation.tau = 2.0;
    c.family = {99000, 101000, 7, 1};
    if (name == "fig1-full") {
        c.quadrature = {1000.0, 200001, 30000, 0.75};
    } else {
        c.quadrature = {300.0, 60001, 10000, 0.75};
    }
    c.sweep = {0.3, 2.2, 32, murmur::RhsMode::sharp};
    return c;
}

RunConfig apply_json(RunConfig c, const json& j)
{
    if (!j.is_object())
        fail("config", "expected an object");
    if (j.contains("preset")) {
        if (!j["preset"].is_string())
            fail("preset", "expected a string");
        c = preset(j["preset"].get<std::string>());
    }
    if (j.contains("representation")) {
        const json& r = block(j, "representation", "config");
        if (r.contains("character")) {
            try {
                characters::character_from_json(r["character"]);
            } catch (const Error& e) {
                fail("representation.character", e.what());
            }
            c.representation.character = r["character"];
        }
        read_num(r, "tau", "representation", c.representation.tau);
    }
    if (j.contains("family")) {
        const json& f = block(j, "family", "config");
        read_num(f, "d0", "family", c.family.d0);
        read_num(f, "d1", "family", c.family.d1);
        read_num(f, "q", "family", c.family.q);
        read_num(f, "ell", "family", c.family.ell);
    }
    if (j.contains("quadrature")) {
        const json& q = block(j, "quadrature", "config");
        read_num(q, "t_max", "quadrature", c.quadrature.t_max);
        read_num(q, "nodes", "quadrature", c.quadrature.nodes);
        read_num(q, "prime_cutoff", "quadrature", c.quadrature.prime_cutoff);
        read_num(q, "abscissa", "quadrature", c.quadrature.abscissa);
    }
    if (j.contains("sweep")) {
        const json& s = block(j, "sweep", "config");
        read_num(s, "x_min_factor", "sweep", c.sweep.x_min_factor);
        read_num(s, "x_max_factor", "sweep", c.sweep.x_max_factor);
        read_num(s, "points", "sweep", c.sweep.points);
        if (s.contains("mode")) {
            if (!s["mode"].is_string())
                fail("sweep.mode", "expected a string");
            c.sweep.mode = parse_mode(s["mode"].get<std::string>());
        }
    }
    if (j.contains("afe")) {
        const json& a = block(j, "afe", "config");
        read_num(a, "A", "afe", c.afe.A);
        read_num(a, "B", "afe", c.afe.B);
        read_num(a, "alpha", "afe", c.afe.alpha);
        read_num(a, "beta", "afe", c.afe.beta);
        read_num(a, "cV", "afe", c.afe.cV);
        read_num(a, "D_ref", "afe", c.afe.D_ref);
        if (a.contains("s0")) {
            const json& v = a["s0"];
            if (v.is_number())
                c.afe.s0 = v.get<double>();
            else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                c.afe.s0 = {v[0].get<double>(), v[1].get<double>()};
            else
                fail("afe.s0", "expected a number or [re, im]");
        }
    }
    if (j.contains("output")) {
        if (!j["output"].is_string())
            fail("output", "expected a string");
        c.output = j["output"].get<std::string>();
    }
    return c;
}

RunConfig load_file(const std::string& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    return apply_json(std::move(base), j);
}

json to_json(const RunConfig& c)
{
    json j;
    if (!c.preset.empty())
        j["preset"] = c.preset;
    j["representation"] = {{"character", c.representation.character}, {"tau", c.representation.tau}};
    j["family"] = {{"d0", c.family.d0}, {"d1", c.family.d1}, {"q", c.family.q}, {"ell", c.family.ell}};
    j["quadrature"] = {{"t_max", c.quadrature.t_max},
                       {"nodes", c.quadrature.nodes},
                       {"prime_cutoff", c.quadrature.prime_cutoff},
                       {"abscissa", c.quadrature.abscissa}};
    j["sweep"] = {{"x_min_factor", c.sweep.x_min_factor},
                  {"x_max_factor", c.sweep.x_max_factor},
                  {"points", c.sweep.points},
                  {"mode", mode_name(c.sweep.mode)}};
    j["afe"] = {{"A", c.afe.A},         {"B", c.afe.B},       {"alpha", c.afe.alpha},
                {"beta", c.afe.beta},   {"cV", c.afe.cV},     {"D_ref", c.afe.D_ref},
                {"s0", {c.afe.s0.real(), c.afe.s0.imag()}}};
    j["output"] = c.output;
    return j;
}

void validate(const RunConfig& c)
{
    try {
        characters::character_from_json(c.representation.character);
    } catch (const Error& e) {
        fail("representation.character", e.what());
    }
    if (!(c.family.d1 > c.family.d0) || c.family.d0 < 0)
        fail("family", "need 0 <= d0 < d1");
    if (c.family.q < 1)
        fail("family.q", "must be positive");
    try {
        c.quadrature.validate();
    } catch (const Error& e) {
        fail("quadrature", e.what());
    }
    if (c.sweep.points < 1)
        fail("sweep.points", "must be positive");
    if (!(c.sweep.x_min_factor > 0) || !(c.sweep.x_max_factor >= c.sweep.x_min_factor))
        fail("sweep", "need 0 < x_min_factor <= x_max_factor");
    try {
        c.afe.validate();
    } catch (const Error& e) {
        fail("afe", e.what());
    }
}

}  // namespace murm::config
