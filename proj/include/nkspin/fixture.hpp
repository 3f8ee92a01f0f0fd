#pragma once
#include <map>
#include <string>

#include "nkspin/level_structure.hpp"

namespace nkspin {

struct SpinSystem {
    int n = 3;
    TensorParams ground;
    TensorParams excited;
    // Named field directions as (theta, phi) in radians.
    std::map<std::string, std::pair<double, double>> directions;
    std::string name;
    std::string hash;  // FNV-1a of the fixture text

    FieldVector field(const std::string& direction, double B) const;
};

// Key=value text with [spin], [ground], [excited] and [directions] sections.
SpinSystem parse_fixture(const std::string& text, const std::string& name = "inline");
SpinSystem load_fixture(const std::string& path);

// Resolves a fixture name or path: a bare name is looked up as <name>.cfg in
// NKSPIN_FIXTURE_PATH (colon separated) and then in the built-in fixture directory.
std::string resolve_fixture(const std::string& name_or_path);

std::string fnv1a_hex(const std::string& data);

}  // namespace nkspin
