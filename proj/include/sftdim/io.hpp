#pragma once

#include "sftdim/adjacency.hpp"
#include "sftdim/cylinder.hpp"
#include "sftdim/duality.hpp"
#include "sftdim/shift_equivalence.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

namespace sftdim::io {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "@path" reads the file, anything else is the literal itself.
inline std::string resolve_argument(const std::string& arg) {
  return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
}

// ---------------------------------------------------------------------------
// Integers

inline Json to_json(const Integer& x) {
  if (fits_int64(x)) return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>())
                                                           : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const bool ok = !s.empty() &&
                    std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                [](unsigned char c) { return std::isdigit(c); }) &&
                    s != "-";
    if (ok) return Integer(s);
  }
  throw Error(ErrorCode::parse, "expected an integer, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Matrices

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Entries of a vector payload as a flat list.
inline Json vector_to_json(const IntMatrix& v) {
  Json out = Json::array();
  for (const auto& x : v.entries()) out.push_back(to_json(x));
  return out;
}

inline IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse, "matrix must be a list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array())
      throw Error(ErrorCode::parse, "row " + std::to_string(i) + " is not a list", i);
    if (j[i].size() != cols)
      throw Error(ErrorCode::parse,
                  "row " + std::to_string(i) + " has " + std::to_string(j[i].size()) +
                      " entries, expected " + std::to_string(cols),
                  i);
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m(i, c) = integer_from_json(j[i][c]);
      } catch (const Error& e) {
        throw Error(ErrorCode::parse,
                    "entry (" + std::to_string(i) + "," + std::to_string(c) + "): " + e.what(), i,
                    c);
      }
    }
  }
  return m;
}

inline IntMatrix vector_from_json(const Json& j, bool column) {
  if (!j.is_array()) throw Error(ErrorCode::parse, "vector must be a list");
  std::vector<Integer> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    // Accept [[a],[b]] for columns and [[a,b]] for rows as well.
    if (j[i].is_array()) {
      for (const auto& x : j[i]) v.push_back(integer_from_json(x));
    } else {
      v.push_back(integer_from_json(j[i]));
    }
  }
  return column ? IntMatrix::column_vector(std::move(v)) : IntMatrix::row_vector(std::move(v));
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::parse,
                "invalid JSON at line " + std::to_string(line) + ", column " +
                    std::to_string(col),
                line, col);
  }
}

// Whitespace-separated rows; blank lines and '#' comments are skipped.
// Errors report the 1-based line and entry.
inline IntMatrix parse_text_rows(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t first_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Integer> row;
    std::string tok;
    while (ls >> tok) {
      const std::size_t entry = row.size() + 1;
      const bool ok = std::all_of(tok.begin() + (tok[0] == '-' ? 1 : 0), tok.end(),
                                  [](unsigned char c) { return std::isdigit(c); }) &&
                      tok != "-";
      if (!ok)
        throw Error(ErrorCode::parse,
                    "line " + std::to_string(line_no) + ", entry " + std::to_string(entry) +
                        ": not an integer: '" + tok + "'",
                    line_no, entry);
      row.emplace_back(tok);
    }
    if (row.empty()) continue;
    if (rows.empty()) first_line = line_no;
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorCode::parse,
                  "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                      " entries, line " + std::to_string(first_line) + " has " +
                      std::to_string(rows.front().size()),
                  line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::parse, "no matrix rows found");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace detail

struct MatrixInput {
  IntMatrix matrix;
  std::string label;
};

/// JSON when the first non-blank byte is '[' or '{' (a bare list of rows, or
/// {"matrix": rows, "label": ...}); whitespace rows otherwise.
inline MatrixInput parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorCode::parse, "empty input");
  if (text[first] != '[' && text[first] != '{') return {detail::parse_text_rows(text), ""};
  const Json j = detail::parse_json(text);
  if (j.is_object()) {
    if (!j.contains("matrix")) throw Error(ErrorCode::parse, "object without a \"matrix\" key");
    MatrixInput in{matrix_from_json(j["matrix"]), ""};
    if (j.contains("label") && j["label"].is_string()) in.label = j["label"].get<std::string>();
    return in;
  }
  return {matrix_from_json(j), ""};
}

inline AdjacencyMatrix parse_adjacency(std::string_view text) {
  return validate(parse_matrix(text).matrix);
}

/// FNV-1a over the shape and decimal entries.
inline std::string matrix_hash(const IntMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    h ^= ';';
    h *= 0x100000001b3ull;
  };
  feed(m.shape());
  for (const auto& x : m.entries()) feed(x.str());
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Element literals

namespace detail {

// "I", "0", "A", "A^n" (also "A**n").
inline std::optional<IntMatrix> symbolic_square(const std::string& s, const Ambient& amb) {
  if (s == "I") return IntMatrix::identity(amb.size());
  if (s == "0") return IntMatrix(amb.size(), amb.size());
  if (s == "A") return amb.matrix();
  for (const char* sep : {"A^", "A**"}) {
    const std::string p(sep);
    if (s.rfind(p, 0) == 0 && s.size() > p.size() &&
        std::all_of(s.begin() + static_cast<long>(p.size()), s.end(),
                    [](unsigned char c) { return std::isdigit(c); }))
      return amb.power(std::stoul(s.substr(p.size())));
  }
  return std::nullopt;
}

inline std::pair<Json, std::size_t> split_literal(const Json& j) {
  if (j.is_object()) {
    const char* key = j.contains("payload") ? "payload" : j.contains("z") ? "z" : nullptr;
    if (!key) throw Error(ErrorCode::parse, "element object needs \"payload\"");
    const std::size_t level = j.contains("level") ? j["level"].get<std::size_t>() : 0;
    return {j[key], level};
  }
  // [payload, level]; the payload must itself be a list or a symbol, so a
  // flat two-entry vector is never mistaken for a pair.
  if (j.is_array() && j.size() == 2 && (j[0].is_array() || j[0].is_string()) &&
      j[1].is_number_integer()) {
    if (!j[1].is_number_unsigned()) throw Error(ErrorCode::parse, "levels are non-negative");
    return {j[0], j[1].get<std::size_t>()};
  }
  return {j, 0};
}

inline Json parse_literal_json(const std::string& arg) {
  const std::string text = resolve_argument(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] != '[' && text[first] != '{' && text[first] != '"')
    return Json(text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1));
  return parse_json(text);
}

}  // namespace detail

/// Payload literal for a flavor: a JSON list (flat for vectors, rows for
/// matrices) or, for square flavors, "I", "0", "A", "A^n".
template <Flavor F>
IntMatrix payload_from_json(const Json& j, const Ambient& amb) {
  if (j.is_string()) {
    if constexpr (F == Flavor::homoclinic || F == Flavor::cylinder) {
      if (auto m = detail::symbolic_square(j.get<std::string>(), amb)) return *m;
    } else {
      if (j.get<std::string>() == "0")
        return F == Flavor::stable ? IntMatrix(1, amb.size()) : IntMatrix(amb.size(), 1);
    }
    throw Error(ErrorCode::parse, "unknown symbolic payload " + j.dump());
  }
  if constexpr (F == Flavor::stable) return vector_from_json(j, false);
  else if constexpr (F == Flavor::unstable) return vector_from_json(j, true);
  else return matrix_from_json(j);
}

/// Literal forms: {"payload": P, "level": N}, [P, N], or a bare payload P at level 0.
template <Flavor F>
LimitElement<F> element_from_json(const Json& j, const AmbientPtr& amb) {
  auto [payload, level] = detail::split_literal(j);
  return LimitElement<F>(amb, payload_from_json<F>(payload, *amb), level);
}

template <Flavor F>
LimitElement<F> parse_element(const std::string& arg, const AmbientPtr& amb) {
  return element_from_json<F>(detail::parse_literal_json(arg), amb);
}

inline CylinderK1Element parse_k1_element(const std::string& arg, const AmbientPtr& amb) {
  auto [payload, level] = detail::split_literal(detail::parse_literal_json(arg));
  return CylinderK1Element(amb, payload_from_json<Flavor::homoclinic>(payload, *amb), level);
}

inline StableHom parse_hom(const std::string& arg, const AmbientPtr& amb) {
  auto [payload, level] = detail::split_literal(detail::parse_literal_json(arg));
  return StableHom(amb, payload_from_json<Flavor::unstable>(payload, *amb), level);
}

/// A polynomial literal is a list of coefficients, lowest degree first.
inline Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse, "polynomial must be a coefficient list");
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(integer_from_json(x));
  return Polynomial(std::move(c));
}

inline ShiftEquivalenceWitness witness_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("R") || !j.contains("S") || !j.contains("k"))
    throw Error(ErrorCode::parse, "witness needs \"R\", \"S\" and \"k\"");
  const auto k = integer_from_json(j["k"]);
  if (k < 0) throw Error(ErrorCode::parse, "lag must be non-negative");
  return {matrix_from_json(j["R"]), matrix_from_json(j["S"]), static_cast<std::size_t>(k)};
}

inline ShiftEquivalenceWitness parse_witness(const std::string& arg) {
  return witness_from_json(detail::parse_json(resolve_argument(arg)));
}

// ---------------------------------------------------------------------------
// Serialization

template <Flavor F>
Json to_json(const LimitElement<F>& e) {
  Json j;
  j["flavor"] = flavor_tag(F);
  j["payload"] = F == Flavor::stable || F == Flavor::unstable ? vector_to_json(e.payload())
                                                              : to_json(e.payload());
  j["level"] = e.level();
  return j;
}

inline Json to_json(const CylinderK1Element& e) {
  Json j;
  j["flavor"] = "k1";
  j["payload"] = to_json(e.representative());
  j["level"] = e.level();
  return j;
}

inline Json to_json(const StableHom& h) {
  Json j;
  j["z"] = vector_to_json(h.z());
  j["level"] = h.level();
  return j;
}

inline Json to_json(const Polynomial& p) {
  Json c = Json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_json(x));
  return c;
}

inline Json to_json(const RAElement& r) {
  Json j;
  j["flavor"] = "ra";
  j["coeffs"] = to_json(r.polynomial());
  j["polynomial"] = r.polynomial().to_string("A");
  j["level"] = r.level();
  return j;
}

inline Json to_json(const ShiftEquivalenceWitness& w) {
  Json j;
  j["R"] = to_json(w.R);
  j["S"] = to_json(w.S);
  j["k"] = w.k;
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["valid"] = r.valid();
  j["R_nonnegative"] = r.r_nonnegative;
  j["S_nonnegative"] = r.s_nonnegative;
  j["lag_positive"] = r.lag_positive;
  Json eqs = Json::array();
  for (const auto& e : r.equations) {
    Json q;
    q["equation"] = e.name;
    q["holds"] = e.holds;
    q["residual"] = to_json(e.residual);
    eqs.push_back(std::move(q));
  }
  j["equations"] = std::move(eqs);
  return j;
}

inline Json to_json(const PerronData& p) {
  Json j;
  j["lambda"] = p.lambda;
  j["left"] = p.left;
  j["right"] = p.right;
  j["residual"] = p.residual;
  j["iterations"] = p.iterations;
  return j;
}

inline Json to_json(const std::vector<IntMatrix>& basis) {
  Json out = Json::array();
  for (const auto& m : basis) out.push_back(to_json(m));
  return out;
}

}  // namespace sftdim::io
