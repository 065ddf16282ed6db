// Copyright 2026 The qmg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmg/channel.hpp"
#include "qmg/classical.hpp"
#include "qmg/multirelation.hpp"

namespace qmg {

// ---------------------------------------------------------------------------
// Deterministic JSON emission. Floating-point values are serialized with 17
// significant digits so a parse round trip is lossless and repeated runs are
// byte-identical.
// ---------------------------------------------------------------------------

inline std::string jnum(double v) {
  if (v == 0.0) v = 0.0;  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string jint(std::size_t v) { return std::to_string(v); }

inline std::string jbool(bool b) { return b ? "true" : "false"; }

inline std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

inline std::string jcomplex(const Complex& z) {
  return "[" + jnum(z.real()) + "," + jnum(z.imag()) + "]";
}

inline std::string jmatrix(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += jcomplex(m(r, c));
    }
    out += "]";
  }
  out += "]";
  return out;
}

inline std::string jarray(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ",";
    out += items[k];
  }
  out += "]";
  return out;
}

inline std::string jdims(const std::vector<std::size_t>& dims) {
  std::vector<std::string> items;
  items.reserve(dims.size());
  for (auto d : dims) items.push_back(jint(d));
  return jarray(items);
}

inline std::string jtriples(const ClassicalMultiRelation& r) {
  std::vector<std::string> items;
  items.reserve(r.triples.size());
  for (const auto& t : r.triples)
    items.push_back("[" + jint(t[0]) + "," + jint(t[1]) + "," + jint(t[2]) +
                    "]");
  return jarray(items);
}

// ---------------------------------------------------------------------------
// Input parsing (nlohmann::json).
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::size_t> parse_dims(const nlohmann::json& j,
                                           const std::string& field) {
  if (!j.contains(field) || !j[field].is_array() || j[field].empty())
    throw ArgumentError("channel schema: missing block list \"" + field +
                        "\"");
  std::vector<std::size_t> dims;
  for (const auto& d : j[field]) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ArgumentError("channel schema: block dimensions must be >= 1");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

inline ComplexMatrix parse_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ArgumentError("matrix: expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ArgumentError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw ArgumentError("matrix: entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace detail

/// A parsed channel-like input: always carries the unit images; carries the
/// Kraus form when the schema provides one (kraus or classical).
struct ChannelInput {
  std::optional<ChannelMap> channel;
  UnitImageMap images;
  std::optional<std::vector<std::vector<double>>> classical_p;
};

/// Accepts the three channel schemas:
///   {"input_blocks":[..],"output_blocks":[..],"kraus":[{"out_block":b,"matrix":[..]},..]}
///   {"input_blocks":[..],"output_blocks":[..],"unit_images":[matrix,..]}
///   {"inputs":n,"outputs":m,"p":[[..]],"allow_substochastic":bool?}
inline ChannelInput parse_channel_json(const nlohmann::json& j,
                                       const Tolerances& tol = {}) {
  if (!j.is_object()) throw ArgumentError("channel schema: expected an object");
  ChannelInput in;
  if (j.contains("p")) {
    if (!j.contains("inputs") || !j.contains("outputs"))
      throw ArgumentError("classical schema: needs \"inputs\" and \"outputs\"");
    const auto n_x = j["inputs"].get<std::size_t>();
    const auto n_y = j["outputs"].get<std::size_t>();
    if (!j["p"].is_array() || j["p"].size() != n_y)
      throw ArgumentError("classical schema: p must have \"outputs\" rows");
    std::vector<std::vector<double>> p;
    for (const auto& row : j["p"]) {
      if (!row.is_array() || row.size() != n_x)
        throw ArgumentError("classical schema: p rows must have \"inputs\" entries");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw ArgumentError("classical schema: p entries must be numbers");
        r.push_back(v.get<double>());
      }
      p.push_back(std::move(r));
    }
    const bool allow = j.value("allow_substochastic", false);
    in.channel = classical_channel(p, allow, tol);
    in.images = in.channel->unit_images();
    in.classical_p = std::move(p);
    return in;
  }

  const BlockAlgebra in_alg(detail::parse_dims(j, "input_blocks"));
  const BlockAlgebra out_alg(detail::parse_dims(j, "output_blocks"));
  if (j.contains("kraus")) {
    if (!j["kraus"].is_array())
      throw ArgumentError("channel schema: \"kraus\" must be an array");
    std::vector<KrausOperator> kraus;
    for (const auto& item : j["kraus"]) {
      if (!item.is_object() || !item.contains("out_block") ||
          !item.contains("matrix"))
        throw ArgumentError(
            "channel schema: each kraus entry needs out_block and matrix");
      KrausOperator op;
      op.out_block = item["out_block"].get<std::size_t>();
      op.matrix = detail::parse_matrix(item["matrix"]);
      kraus.push_back(std::move(op));
    }
    in.channel = make_channel(in_alg, out_alg, std::move(kraus), tol);
    in.images = in.channel->unit_images();
    return in;
  }
  if (j.contains("unit_images")) {
    if (!j["unit_images"].is_array() ||
        j["unit_images"].size() != in_alg.unit_count())
      throw ArgumentError(
          "channel schema: unit_images must list one matrix per input matrix "
          "unit, ordered by (block, i, j)");
    in.images.in_alg = in_alg;
    in.images.out_alg = out_alg;
    for (const auto& m : j["unit_images"]) {
      auto img = detail::parse_matrix(m);
      if (img.rows() != out_alg.total_dim() || img.cols() != out_alg.total_dim())
        throw ArgumentError("channel schema: unit image has the wrong shape");
      in.images.images.push_back(std::move(img));
    }
    return in;
  }
  throw ArgumentError(
      "channel schema: expected one of \"kraus\", \"unit_images\" or \"p\"");
}

struct RelationInput {
  BlockAlgebra m_alg;
  BlockAlgebra n_alg;
  OperatorSubspace subspace;

  QuantumMultiRelation as_relation() const {
    return QuantumMultiRelation{m_alg, n_alg, subspace};
  }
};

/// Schema: {"m_blocks":[..],"n_blocks":[..],"basis":[matrix,..]} with
/// matrices on H kron K. The subspace is re-orthonormalized; axioms are NOT
/// verified here so that verification failures can be reported structurally.
inline RelationInput parse_relation_json(const nlohmann::json& j,
                                         const Tolerances& tol = {}) {
  if (!j.is_object()) throw ArgumentError("relation schema: expected an object");
  const BlockAlgebra m_alg(detail::parse_dims(j, "m_blocks"));
  const BlockAlgebra n_alg(detail::parse_dims(j, "n_blocks"));
  if (!j.contains("basis") || !j["basis"].is_array())
    throw ArgumentError("relation schema: missing \"basis\" array");
  const std::size_t d = m_alg.total_dim() * n_alg.total_dim();
  std::vector<ComplexMatrix> mats;
  for (const auto& m : j["basis"]) {
    auto mm = detail::parse_matrix(m);
    if (mm.rows() != d || mm.cols() != d)
      throw ArgumentError("relation schema: basis matrices must act on H kron K");
    mats.push_back(std::move(mm));
  }
  return RelationInput{m_alg, n_alg,
                       OperatorSubspace::from_spanning(d, d, mats, tol)};
}

// ---------------------------------------------------------------------------
// Channel and DOT emission.
// ---------------------------------------------------------------------------

inline std::string channel_to_json(const ChannelMap& phi) {
  std::string out = "{\"input_blocks\":" + jdims(phi.in_alg().block_dims()) +
                    ",\"output_blocks\":" + jdims(phi.out_alg().block_dims()) +
                    ",\"kraus\":[";
  for (std::size_t k = 0; k < phi.kraus().size(); ++k) {
    if (k) out += ",";
    out += "{\"out_block\":" + jint(phi.kraus()[k].out_block) +
           ",\"matrix\":" + jmatrix(phi.kraus()[k].matrix) + "}";
  }
  out += "]}";
  return out;
}

/// Deterministic DOT rendering: one node per input, one directed edge per
/// triple in lexicographic (x1, x2, y) order, loops included, labels carry
/// the output symbol.
inline std::string classical_to_dot(const ClassicalMultiRelation& r) {
  std::string out = "digraph confusability_multigraph {\n";
  for (std::size_t x = 0; x < r.x_size; ++x)
    out += "  x" + std::to_string(x + 1) + ";\n";
  for (const auto& t : r.triples)
    out += "  x" + std::to_string(t[0] + 1) + " -> x" +
           std::to_string(t[1] + 1) + " [label=\"y=" +
           std::to_string(t[2] + 1) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace qmg
