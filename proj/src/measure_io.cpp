#include "weylscope/measure_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace weylscope {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Byte offset of text[...] addressed by a top-level key and an optional
// array index. nlohmann::json keeps no source positions, so walk the raw
// text with a depth counter that skips string literals.
std::size_t locate(const std::string& text, const std::string& key, int index) {
  int depth = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_string = [&](std::size_t start) {
    std::size_t j = start + 1;
    while (j < n && text[j] != '"') j += text[j] == '\\' ? 2 : 1;
    return j;  // index of the closing quote
  };
  auto skip_ws = [&](std::size_t j) {
    while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  while (i < n) {
    const char ch = text[i];
    if (ch == '"') {
      const std::size_t close = skip_string(i);
      if (depth == 1 && text.compare(i + 1, close - i - 1, key) == 0) {
        std::size_t j = skip_ws(close + 1);
        if (j < n && text[j] == ':') {
          j = skip_ws(j + 1);
          if (index < 0 || j >= n || text[j] != '[') return j;
          // Walk the array elements.
          int inner = 0;
          int element = 0;
          std::size_t k = skip_ws(j + 1);
          if (element == index) return k;
          for (; k < n; ++k) {
            const char c = text[k];
            if (c == '"') {
              k = skip_string(k);
            } else if (c == '[' || c == '{') {
              ++inner;
            } else if (c == ']' || c == '}') {
              if (inner == 0) return k;
              --inner;
            } else if (c == ',' && inner == 0) {
              ++element;
              if (element == index) return skip_ws(k + 1);
            }
          }
          return j;
        }
      }
      i = close + 1;
      continue;
    }
    if (ch == '{' || ch == '[') ++depth;
    if (ch == '}' || ch == ']') --depth;
    ++i;
  }
  return 0;
}

[[noreturn]] void fail(const std::string& text, const std::string& key, int index, const std::string& what) {
  throw ParseError(what, line_of_offset(text, locate(text, key, index)));
}

double number_or_inf(const json& v, const std::string& text, const std::string& key, int index,
                     const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
  fail(text, key, index, what + " must be a number or \"inf\"");
}

}  // namespace

SignedMeasure parse_measure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ParseError("measure description must be a JSON object", 1);
  for (const auto& item : doc.items()) {
    if (item.key() != "atoms" && item.key() != "density" && item.key() != "domain_end") {
      fail(text, item.key(), -1, "unknown key \"" + item.key() + "\"");
    }
  }

  double domain_end = kInfinity;
  if (doc.contains("domain_end")) {
    domain_end = number_or_inf(doc["domain_end"], text, "domain_end", -1, "domain_end");
    if (!(domain_end > 0.0)) fail(text, "domain_end", -1, "domain_end must be positive");
  }

  std::vector<Atom> atoms;
  if (doc.contains("atoms")) {
    const json& list = doc["atoms"];
    if (!list.is_array()) fail(text, "atoms", -1, "atoms must be an array");
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
      const json& a = list[i];
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        fail(text, "atoms", i, "atom must be [position, weight]");
      }
      const Atom atom{a[0].get<double>(), a[1].get<double>()};
      if (atom.position < 0.0 || atom.position >= domain_end) fail(text, "atoms", i, "atom position outside [0, b)");
      if (atom.weight == 0.0) fail(text, "atoms", i, "atom weight must be nonzero");
      if (!atoms.empty() && !(atoms.back().position < atom.position)) {
        fail(text, "atoms", i, "atom positions must be strictly increasing");
      }
      atoms.push_back(atom);
    }
  }

  std::vector<DensityPiece> pieces;
  if (doc.contains("density")) {
    const json& list = doc["density"];
    if (!list.is_array()) fail(text, "density", -1, "density must be an array");
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
      const json& d = list[i];
      if (!d.is_object() || !d.contains("from") || !d.contains("to") || !d.contains("coeffs")) {
        fail(text, "density", i, "density piece needs from, to and coeffs");
      }
      DensityPiece piece;
      if (!d["from"].is_number()) fail(text, "density", i, "from must be a number");
      piece.from = d["from"].get<double>();
      piece.to = number_or_inf(d["to"], text, "density", i, "to");
      const json& c = d["coeffs"];
      if (!c.is_array() || c.empty() || c.size() > 4) fail(text, "density", i, "coeffs must hold 1 to 4 numbers");
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (!c[j].is_number()) fail(text, "density", i, "coeffs must be numbers");
        piece.coeffs[j] = c[j].get<double>();
      }
      if (!(piece.from >= 0.0) || !(piece.from < piece.to) || piece.to > domain_end) {
        fail(text, "density", i, "density piece must satisfy 0 <= from < to <= b");
      }
      if (!pieces.empty() && pieces.back().to > piece.from) {
        fail(text, "density", i, "density pieces must be ordered and non-overlapping");
      }
      pieces.push_back(piece);
    }
  }

  try {
    return SignedMeasure(std::move(atoms), std::move(pieces), domain_end);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), 1);
  }
}

SignedMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open measure file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

std::string measure_to_json(const SignedMeasure& m) {
  json doc;
  doc["atoms"] = json::array();
  for (const Atom& a : m.atoms()) doc["atoms"].push_back({a.position, a.weight});
  doc["density"] = json::array();
  for (const DensityPiece& p : m.density()) {
    json piece;
    piece["from"] = p.from;
    piece["to"] = std::isfinite(p.to) ? json(p.to) : json("inf");
    piece["coeffs"] = {p.coeffs[0], p.coeffs[1], p.coeffs[2], p.coeffs[3]};
    doc["density"].push_back(piece);
  }
  doc["domain_end"] = std::isfinite(m.domain_end()) ? json(m.domain_end()) : json("inf");
  return doc.dump(2) + "\n";
}

}  // namespace weylscope
