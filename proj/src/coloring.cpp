#include "ramsey0/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "ramsey0/errors.hpp"

namespace ramsey0 {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::proper:
      return "proper";
    case Variant::bounded:
      return "bounded";
    case Variant::color:
      return "color";
  }
  return "?";
}

bool Coloring::total() const {
  return std::none_of(color.begin(), color.end(), [](Color x) { return x == kUncolored; });
}

bool verify(const Hypergraph& g, const Coloring& c) {
  if (c.color.size() != g.num_edges()) throw InputError("coloring size does not match the edge count");
  if (!c.total()) throw InputError("coloring is partial");
  switch (c.variant) {
    case Variant::bounded: {
      if (c.r < 1) return false;
      const Color top = c.color.empty() ? 0 : *std::max_element(c.color.begin(), c.color.end());
      if (top <= 4 * c.color.size() + 16) {
        std::vector<std::uint32_t> uses(static_cast<std::size_t>(top) + 1, 0);
        for (auto x : c.color) {
          if (++uses[x] > static_cast<std::uint32_t>(c.r)) return false;
        }
        return true;
      }
      std::unordered_map<Color, int> uses;
      for (auto x : c.color) {
        if (++uses[x] > c.r) return false;
      }
      return true;
    }
    case Variant::color:
      return std::all_of(c.color.begin(), c.color.end(), [&](Color x) { return c.r > 0 && x < static_cast<Color>(c.r); });
    case Variant::proper: {
      // Color classes must be matchings: no vertex sees a color twice.
      std::vector<std::pair<Color, Vertex>> seen;
      seen.reserve(g.flat().size());
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        for (auto v : g.edge(e)) seen.emplace_back(c.color[e], v);
      }
      std::sort(seen.begin(), seen.end());
      return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    }
  }
  return false;
}

std::optional<CopyId> find_rainbow_copy(const Coloring& c, const CopyIndex& idx) {
  std::vector<Color> colors;
  for (CopyId k = 0; k < idx.num_copies(); ++k) {
    colors.clear();
    for (auto e : idx.copy(k)) colors.push_back(c.color.at(e));
    std::sort(colors.begin(), colors.end());
    if (std::adjacent_find(colors.begin(), colors.end()) == colors.end()) return k;
  }
  return std::nullopt;
}

std::optional<CopyId> find_monochromatic_copy(const Coloring& c, const CopyIndex& idx) {
  for (CopyId k = 0; k < idx.num_copies(); ++k) {
    auto edges = idx.copy(k);
    const Color first = c.color.at(edges[0]);
    if (std::all_of(edges.begin(), edges.end(), [&](EdgeId e) { return c.color.at(e) == first; })) return k;
  }
  return std::nullopt;
}

void normalize_colors(Coloring& c) {
  std::unordered_map<Color, Color> rename;
  for (auto& x : c.color) {
    if (x == kUncolored) continue;
    auto [it, fresh] = rename.emplace(x, static_cast<Color>(rename.size()));
    x = it->second;
  }
}

std::uint64_t coloring_hash(const Coloring& c) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(static_cast<std::uint64_t>(c.variant) * 131 + static_cast<std::uint64_t>(c.r));
  for (std::size_t e = 0; e < c.color.size(); ++e) h += mix((static_cast<std::uint64_t>(e) << 32) ^ c.color[e]);
  return h;
}

namespace {

bool content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Coloring parse_coloring(std::istream& in, std::size_t num_edges) {
  std::string line;
  if (!content_line(in, line)) throw InputError("empty coloring file");
  std::istringstream head(line);
  std::string word, kind;
  head >> word >> kind;
  if (word != "coloring") throw InputError("coloring file must start with 'coloring'");
  Coloring c;
  if (kind == "proper") {
    c.variant = Variant::proper;
    c.r = 0;
  } else if (kind == "bounded" || kind == "color") {
    c.variant = kind == "bounded" ? Variant::bounded : Variant::color;
    if (!(head >> c.r) || c.r < 1) throw InputError("coloring header needs a positive r");
  } else {
    throw InputError("unknown coloring variant '" + kind + "'");
  }
  if (head >> word) throw InputError("trailing text in coloring header");
  c.color.assign(num_edges, kUncolored);
  while (content_line(in, line)) {
    std::istringstream row(line);
    long long e = -1, x = -1;
    std::string extra;
    if (!(row >> e >> x) || (row >> extra)) throw InputError("bad coloring line: " + line);
    if (e < 0 || static_cast<std::size_t>(e) >= num_edges) throw InputError("edge index out of range: " + line);
    if (x < 0 || x >= static_cast<long long>(kUncolored)) throw InputError("color out of range: " + line);
    if (c.color[static_cast<std::size_t>(e)] != kUncolored) throw InputError("edge colored twice: " + line);
    c.color[static_cast<std::size_t>(e)] = static_cast<Color>(x);
  }
  return c;
}

Coloring parse_coloring(const std::string& text, std::size_t num_edges) {
  std::istringstream in(text);
  return parse_coloring(in, num_edges);
}

std::string serialize(const Coloring& c) {
  std::ostringstream out;
  out << "coloring " << to_string(c.variant);
  if (c.variant != Variant::proper) out << ' ' << c.r;
  out << '\n';
  for (std::size_t e = 0; e < c.color.size(); ++e) {
    if (c.color[e] != kUncolored) out << e << ' ' << c.color[e] << '\n';
  }
  return out.str();
}

}  // namespace ramsey0
