#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qna/errors.hpp"
#include "qna/netmodel.hpp"

namespace qna {

using Json = nlohmann::json;

// Network document: {"nodes": int, "edges": [[src,dst,weight],...],
// "threshold": float, "range": [min,max]}. Field names are normative.
inline Json network_to_json(const Network& net) {
    Json edges = Json::array();
    for (const auto& e : net.edges) edges.push_back(Json::array({e.source, e.target, e.weight}));
    return Json{{"nodes", net.node_count},
                {"edges", std::move(edges)},
                {"threshold", net.threshold},
                {"range", Json::array({net.range_min, net.range_max})}};
}

inline Network network_from_json(const Json& doc) {
    Network net;
    try {
        net.node_count = doc.at("nodes").get<int>();
        net.threshold = doc.at("threshold").get<double>();
        const Json& range = doc.at("range");
        if (!range.is_array() || range.size() != 2) {
            throw ValidationError("network 'range' must be [min, max]");
        }
        net.range_min = range[0].get<double>();
        net.range_max = range[1].get<double>();
        for (const Json& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 3) {
                throw ValidationError("network edge must be [source, target, weight]");
            }
            net.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed network document: ") + e.what());
    }
    net.validate();
    return net;
}

// Snapshot document: {"time": int, "scale": int, "bits": int,
// "codes": [int,...]}. The document carries no value range; loaded
// snapshots are interpreted on the normalized unit range.
inline Json snapshot_to_json(const Snapshot& snap) {
    return Json{{"time", snap.time},
                {"scale", snap.encoding.scale()},
                {"bits", snap.encoding.bit_width()},
                {"codes", snap.codes}};
}

inline Snapshot snapshot_from_json(const Json& doc) {
    int time = 0;
    int scale = 0;
    int bits = 0;
    std::vector<Code> codes;
    try {
        time = doc.at("time").get<int>();
        scale = doc.at("scale").get<int>();
        bits = doc.at("bits").get<int>();
        for (const Json& c : doc.at("codes")) {
            const std::int64_t v = c.get<std::int64_t>();
            if (v < 0) throw ValidationError("snapshot codes must be nonnegative");
            codes.push_back(static_cast<Code>(v));
        }
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed snapshot document: ") + e.what());
    }
    Snapshot snap;
    snap.time = time;
    snap.encoding = Encoding(0.0, 1.0, scale);
    snap.codes = std::move(codes);
    if (snap.encoding.bit_width() != bits) {
        throw ValidationError("snapshot 'bits' is " + std::to_string(bits) + " but scale " +
                              std::to_string(scale) + " requires " +
                              std::to_string(snap.encoding.bit_width()));
    }
    snap.validate();
    return snap;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Json load_json_file(const std::string& path) {
    return parse_json_text(read_file(path), path);
}

// FNV-1a over raw bytes; used to fingerprint input files in reports.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    out[16] = '\0';
    return std::string(out);
}

} // namespace qna
