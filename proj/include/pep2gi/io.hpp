#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pep2gi/census.hpp"
#include "pep2gi/code.hpp"
#include "pep2gi/graph.hpp"
#include "pep2gi/pep.hpp"
#include "pep2gi/projector.hpp"

namespace pep2gi {

/// Key order is preserved so identical inputs always serialise to
/// identical bytes.
using Json = nlohmann::ordered_json;

/// Counts are emitted as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that.
inline Json big_to_json(const BigCount& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
        return static_cast<std::uint64_t>(v);
    return v.str();
}

inline Json field_to_json(const Field& f) {
    return Json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("m"))
        throw Error("parse: field must be an object with p and m");
    std::vector<std::uint32_t> mod;
    if (j.contains("modulus")) mod = j.at("modulus").get<std::vector<std::uint32_t>>();
    return Field::make(j.at("p").get<std::uint32_t>(), j.at("m").get<std::uint32_t>(), mod);
}

inline Json matrix_entries(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json matrix_to_json(const Matrix& m) {
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", matrix_entries(m)}};
}

inline Matrix matrix_from_json(const Field& f, const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error("parse: matrix needs rows, cols and entries");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != rows) throw Error("parse: entry row count mismatch");
    std::vector<std::vector<FElem>> grid;
    for (const auto& row : e) {
        if (!row.is_array() || row.size() != cols) throw Error("parse: entry column count mismatch");
        grid.push_back(row.get<std::vector<FElem>>());
    }
    return Matrix::from_rows(f, grid, cols);
}

/// Code file layout: {"field": {p, m, modulus}, "n": ..., "k": ...,
/// "gen": [[...], ...]} with entries in the canonical 0..q-1 encoding.
inline Json code_to_json(const LinearCode& c) {
    Json j;
    j["field"] = field_to_json(c.field());
    j["n"] = c.length();
    j["k"] = c.dim();
    j["gen"] = matrix_entries(c.gen());
    return j;
}

inline LinearCode code_from_json(const Json& j) {
    if (!j.contains("field") || !j.contains("n") || !j.contains("gen"))
        throw Error("parse: code needs field, n and gen");
    const Field f = field_from_json(j.at("field"));
    const auto n = j.at("n").get<std::size_t>();
    const auto& gen = j.at("gen");
    if (!gen.is_array() || gen.empty()) throw Error("parse: gen must be a non-empty array of rows");
    std::vector<std::vector<FElem>> grid;
    for (const auto& row : gen) {
        if (!row.is_array() || row.size() != n)
            throw Error("parse: gen row length does not match n");
        grid.push_back(row.get<std::vector<FElem>>());
    }
    LinearCode c(f, Matrix::from_rows(f, grid, n));
    if (j.contains("k")) {
        const auto k = j.at("k").get<std::size_t>();
        if (k != c.dim())
            throw Error("parse: declared k=" + std::to_string(k) + " but generator has rank " +
                        std::to_string(c.dim()));
    }
    return c;
}

/// Digraph file layout: {"field": ..., "n": ..., "adj": [[...], ...]}.
inline Json digraph_to_json(const WeightedDigraph& g) {
    Json j;
    j["field"] = field_to_json(g.field());
    j["n"] = g.size();
    j["adj"] = matrix_entries(g.adjacency());
    return j;
}

inline WeightedDigraph digraph_from_json(const Json& j) {
    if (!j.contains("field") || !j.contains("n") || !j.contains("adj"))
        throw Error("parse: digraph needs field, n and adj");
    const Field f = field_from_json(j.at("field"));
    const auto n = j.at("n").get<std::size_t>();
    const auto& adj = j.at("adj");
    if (!adj.is_array() || adj.size() != n) throw Error("parse: adj must be n rows");
    std::vector<std::vector<FElem>> grid;
    for (const auto& row : adj) {
        if (!row.is_array() || row.size() != n) throw Error("parse: adj must be n x n");
        grid.push_back(row.get<std::vector<FElem>>());
    }
    return WeightedDigraph::from_matrix(Matrix::from_rows(f, grid, n));
}

inline Json permutation_to_json(const Permutation& p) {
    return Json{{"n", p.size()}, {"image", p.image()}};
}

inline Permutation permutation_from_json(const Json& j) {
    if (!j.contains("image")) throw Error("parse: permutation needs an image array");
    return Permutation(j.at("image").get<std::vector<std::uint32_t>>());
}

inline Json projector_to_json(const Projector& p) {
    Json j;
    j["field"] = field_to_json(p.mat.field());
    if (p.params)
        j["params"] = Json{{"a", p.params->a}, {"b", p.params->b}};
    else
        j["params"] = Json{{"a", 1}, {"b", 0}};
    j["rows"] = p.mat.rows();
    j["cols"] = p.mat.cols();
    j["entries"] = matrix_entries(p.mat);
    return j;
}

inline Json classify_to_json(const ReducibilityVerdict& v) {
    Json j;
    j["tag"] = to_string(v.tag);
    j["hull_dim"] = v.hull_dimension;
    j["hull_vector"] = v.hull_vector ? Json(*v.hull_vector) : Json(nullptr);
    j["witness_b"] = v.witness_b ? Json(*v.witness_b) : Json(nullptr);
    return j;
}

inline Json pep_verdict_to_json(const PepVerdict& v) {
    Json j;
    j["tag"] = to_string(v.tag);
    j["reason"] = to_string(v.reason);
    j["permutation"] = v.permutation ? Json(v.permutation->image()) : Json(nullptr);
    j["used_b"] = v.used_b ? Json(*v.used_b) : Json(nullptr);
    j["small_n_caveat"] = v.small_n_caveat;
    return j;
}

inline Json census_to_json(const CensusReport& r, const Field& f) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["field"] = field_to_json(f);
    j["total_subspaces"] = big_to_json(r.total_subspaces);
    j["lcd_count"] = big_to_json(r.lcd_count);
    if (r.gi_reducible_count) j["gi_reducible_count"] = big_to_json(*r.gi_reducible_count);
    Json hist = Json::array();
    for (const auto& h : r.hull_dim_histogram) hist.push_back(big_to_json(h));
    j["hull_dim_histogram"] = std::move(hist);
    Json lines = Json::array();
    for (const auto& [line, cnt] : r.hull_line_counts) {
        const Field& lf = f;
        FElem sum = 0;
        for (const auto v : line) sum = lf.add(sum, v);
        lines.push_back(Json{{"line", line}, {"sum_nonzero", sum != 0}, {"count", big_to_json(cnt)}});
    }
    j["hull_line_counts"] = std::move(lines);
    return j;
}

/// Plain-text export format: "n m" header then one "u v" line per edge,
/// vertices 0-based.
inline std::string to_edge_list(const UnweightedGraph& g) {
    std::ostringstream os;
    os << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
    return os.str();
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + ": " + e.what());
    }
    return j;
}

}  // namespace pep2gi
