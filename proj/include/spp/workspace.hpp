#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spp/errors.hpp"
#include "spp/geometry.hpp"
#include "spp/rng.hpp"

namespace spp {

// One curve the tour must traverse: two distinct endpoints plus the length of
// the curve between them. The curve's actual shape never matters, only its
// arc length, which must be at least the straight-line endpoint distance.
struct Subpath {
    Point start;
    Point end;
    double arc_length = 0.0;

    friend bool operator==(const Subpath& a, const Subpath& b) {
        return a.start == b.start && a.end == b.end && a.arc_length == b.arc_length;
    }
};

// A problem instance: an ordered list of subpaths. The position in the list is
// the canonical index used by every downstream stage, so ordering is part of
// the instance identity.
class Workspace {
public:
    Workspace() = default;

    explicit Workspace(std::vector<Subpath> subpaths) : subpaths_(std::move(subpaths)) {
        validate();
    }

    int size() const { return static_cast<int>(subpaths_.size()); }
    const Subpath& subpath(int i) const { return subpaths_.at(static_cast<std::size_t>(i)); }
    const std::vector<Subpath>& subpaths() const { return subpaths_; }

    friend bool operator==(const Workspace& a, const Workspace& b) {
        return a.subpaths_ == b.subpaths_;
    }

private:
    void validate() const {
        if (subpaths_.empty()) throw validation_error("workspace: needs at least one subpath");
        for (std::size_t i = 0; i < subpaths_.size(); ++i) {
            const Subpath& s = subpaths_[i];
            const std::string where = "subpath " + std::to_string(i + 1);
            if (!point_is_finite(s.start) || !point_is_finite(s.end))
                throw validation_error(where + ": coordinates must be finite");
            if (s.start == s.end)
                throw validation_error(where + ": start and end must be distinct");
            if (!std::isfinite(s.arc_length))
                throw validation_error(where + ": arc length must be finite");
            const double d = euclidean_distance(s.start, s.end);
            if (s.arc_length < d)
                throw validation_error(where + ": arc length " + std::to_string(s.arc_length) +
                                       " is shorter than the endpoint distance " + std::to_string(d));
        }
    }

    std::vector<Subpath> subpaths_;
};

// File format: {"subpaths": [{"start": [x, y], "end": [x, y], "length": l}, ...]}
// with "length" optional (omitted means a straight segment).

inline Workspace workspace_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("subpaths") || !j["subpaths"].is_array())
        throw parse_error("workspace: expected top-level object with a \"subpaths\" array");
    auto read_point = [](const nlohmann::json& p, const std::string& where) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw parse_error(where + ": expected [x, y]");
        return Point{p[0].get<double>(), p[1].get<double>()};
    };
    std::vector<Subpath> subs;
    int idx = 0;
    for (const auto& e : j["subpaths"]) {
        ++idx;
        const std::string where = "subpath " + std::to_string(idx);
        if (!e.is_object() || !e.contains("start") || !e.contains("end"))
            throw parse_error(where + ": expected object with \"start\" and \"end\"");
        Subpath s;
        s.start = read_point(e["start"], where + " start");
        s.end = read_point(e["end"], where + " end");
        if (e.contains("length")) {
            if (!e["length"].is_number()) throw parse_error(where + ": \"length\" must be a number");
            s.arc_length = e["length"].get<double>();
        } else {
            s.arc_length = euclidean_distance(s.start, s.end);
        }
        subs.push_back(s);
    }
    return Workspace(std::move(subs));
}

inline nlohmann::ordered_json workspace_to_json(const Workspace& ws) {
    nlohmann::ordered_json j;
    j["subpaths"] = nlohmann::ordered_json::array();
    for (const Subpath& s : ws.subpaths()) {
        nlohmann::ordered_json e;
        e["start"] = {s.start.x, s.start.y};
        e["end"] = {s.end.x, s.end.y};
        e["length"] = s.arc_length;
        j["subpaths"].push_back(std::move(e));
    }
    return j;
}

inline Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open workspace file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("cannot parse " + path + ": " + e.what());
    }
    return workspace_from_json(j);
}

inline void save_workspace(const Workspace& ws, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    // nlohmann serializes doubles with enough digits to round-trip exactly, so
    // save followed by load reproduces the workspace bit for bit.
    out << workspace_to_json(ws).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Random instance in the style of the benchmark setup: endpoints uniform in
// [0, extent]^2, arc length equal to the endpoint distance scaled by a uniform
// factor in [1, curvature_max]. Deterministic for a fixed seed.
inline Workspace generate_random_workspace(int n, double extent, double curvature_max,
                                           std::uint64_t seed) {
    if (n < 1) throw validation_error("generate: n must be >= 1");
    if (!(extent > 0.0)) throw validation_error("generate: extent must be positive");
    if (!(curvature_max >= 1.0)) throw validation_error("generate: curvature_max must be >= 1");
    Rng rng(seed);
    std::vector<Subpath> subs;
    subs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Subpath s;
        do {
            s.start = {rng.uniform(0.0, extent), rng.uniform(0.0, extent)};
            s.end = {rng.uniform(0.0, extent), rng.uniform(0.0, extent)};
        } while (s.start == s.end);
        const double factor = curvature_max == 1.0 ? 1.0 : rng.uniform(1.0, curvature_max);
        s.arc_length = euclidean_distance(s.start, s.end) * factor;
        subs.push_back(s);
    }
    return Workspace(std::move(subs));
}

}  // namespace spp
