#pragma once

#include <string>

#include "json.hpp"

#include "murm/complexfn.hpp"
#include "murm/murmur.hpp"

namespace murm::config {

struct RepresentationBlock {
    nlohmann::json character;
    double tau = 0;
};

struct FamilyBlock {
    double d0 = 0;
    double d1 = 0;
    std::int64_t q = 1;
    std::int64_t ell = 1;
};

struct SweepBlock {
    double x_min_factor = 0.3;
    double x_max_factor = 2.2;
    int points = 32;
    murmur::RhsMode mode = murmur::RhsMode::sharp;
};

struct RunConfig {
    std::string preset;
    RepresentationBlock representation;
    FamilyBlock family;
    complexfn::QuadratureSpec quadrature;
    SweepBlock sweep;
    complexfn::AfeParameters afe;
    std::string output;
};

// Named presets: "fig1-full", "fig1-desk". Throws ConfigError for other names.
RunConfig preset(const std::string& name);

// Overlay the fields present in j onto base; errors name the offending field path.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);
RunConfig load_file(const std::string& path, RunConfig base = {});

nlohmann::json to_json(const RunConfig& c);
void validate(const RunConfig& c);

std::string mode_name(murmur::RhsMode m);
murmur::RhsMode parse_mode(const std::string& s);

}  // namespace murm::config
