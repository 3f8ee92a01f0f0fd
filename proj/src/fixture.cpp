#include "nkspin/fixture.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "nkspin/errors.hpp"

#ifndef NKSPIN_FIXTURE_DIR
#define NKSPIN_FIXTURE_DIR ""
#endif

namespace nkspin {

namespace pt = boost::property_tree;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FieldVector SpinSystem::field(const std::string& direction, double B) const {
    const auto it = directions.find(direction);
    if (it == directions.end()) throw ConfigParse("unknown field direction '" + direction + "'");
    return {B, it->second.first, it->second.second};
}

namespace {

std::vector<double> numbers(const pt::ptree& t, const std::string& key, std::size_t count) {
    const auto v = t.get_optional<std::string>(key);
    if (!v) throw ConfigParse("fixture key '" + key + "' missing");
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigParse("fixture key '" + key + "': bad number '" + item + "'");
        }
    }
    if (out.size() != count)
        throw ConfigParse("fixture key '" + key + "' expects " + std::to_string(count) + " values");
    return out;
}

TensorParams tensors(const pt::ptree& root, const std::string& section) {
    const auto sec = root.get_child_optional(section);
    if (!sec) throw ConfigParse("fixture section [" + section + "] missing");
    TensorParams p;
    p.E = numbers(*sec, "E", 1)[0];
    p.D = numbers(*sec, "D", 1)[0];
    const auto e = numbers(*sec, "euler_zyz_deg", 3);
    constexpr double deg = pi / 180.0;
    p.R_Q = euler_zyz(e[0] * deg, e[1] * deg, e[2] * deg);
    // xx, yy, zz, xy, xz, yz
    const auto m = numbers(*sec, "M", 6);
    p.M << m[0], m[3], m[4], m[3], m[1], m[5], m[4], m[5], m[2];
    return p;
}

}  // namespace

SpinSystem parse_fixture(const std::string& text, const std::string& name) {
    pt::ptree root;
    std::istringstream in(text);
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigParse("fixture '" + name + "': " + e.message() + " at line " +
                          std::to_string(e.line()));
    }
    SpinSystem s;
    s.name = name;
    s.hash = fnv1a_hex(text);
    s.n = root.get<int>("spin.n", 3);
    if (s.n < 1) throw ConfigParse("spin.n must be >= 1");
    s.ground = tensors(root, "ground");
    s.excited = tensors(root, "excited");
    if (const auto dirs = root.get_child_optional("directions")) {
        for (const auto& [key, _] : *dirs) {
            const auto v = numbers(*dirs, key, 2);
            s.directions[key] = {v[0] * pi / 180.0, v[1] * pi / 180.0};
        }
    }
    return s;
}

std::string resolve_fixture(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (fs::exists(name_or_path)) return name_or_path;
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("NKSPIN_FIXTURE_PATH")) {
        std::stringstream ss(env);
        std::string d;
        while (std::getline(ss, d, ':'))
            if (!d.empty()) dirs.push_back(d);
    }
    if (*NKSPIN_FIXTURE_DIR) dirs.emplace_back(NKSPIN_FIXTURE_DIR);
    for (const auto& d : dirs) {
        for (const auto& candidate : {fs::path(d) / name_or_path, fs::path(d) / (name_or_path + ".cfg")})
            if (fs::exists(candidate)) return candidate.string();
    }
    throw FixtureMissing("fixture '" + name_or_path + "' not found");
}

SpinSystem load_fixture(const std::string& path) {
    const std::string resolved = resolve_fixture(path);
    std::ifstream f(resolved, std::ios::binary);
    if (!f) throw FixtureMissing("cannot open fixture '" + resolved + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_fixture(ss.str(), std::filesystem::path(resolved).stem().string());
}

}  // namespace nkspin
