#include "stunted/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stunted {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw FormatError(msg); }

// Splits "s2s0" into {2, 0}.
std::vector<int> parse_word(std::string_view w) {
  std::vector<int> ops;
  std::size_t pos = 0;
  while (pos < w.size()) {
    if (w[pos] != 's') fail("bad degeneracy word '" + std::string(w) + "'");
    ++pos;
    int j = 0;
    auto [ptr, ec] = std::from_chars(w.data() + pos, w.data() + w.size(), j);
    if (ec != std::errc() || ptr == w.data() + pos) fail("bad degeneracy word '" + std::string(w) + "'");
    pos = static_cast<std::size_t>(ptr - w.data());
    ops.push_back(j);
  }
  return ops;
}

}  // namespace

SimplexRef parse_ref(const FiniteSimplicialSet& set, std::string_view text, Dim ambient) {
  const auto at = text.find('@');
  const std::string_view label = at == std::string_view::npos ? text : text.substr(at + 1);
  auto base = set.find(label);
  if (!base) fail("unknown simplex label '" + std::string(label) + "'");
  if (at == std::string_view::npos) {
    if (base->dim != ambient) fail("'" + std::string(text) + "' has the wrong dimension");
    return *base;
  }
  std::vector<int> ops = parse_word(text.substr(0, at));
  std::reverse(ops.begin(), ops.end());
  const DegeneracyWord w = word::normalize(ops.data(), static_cast<int>(ops.size()), base->dim);
  SimplexRef r = *base;
  r.dim = static_cast<std::uint8_t>(base->dim + ops.size());
  r.word = w;
  if (r.dim != ambient) fail("'" + std::string(text) + "' has the wrong dimension");
  return r;
}

SimplicialSetFile parse_simplicial_set(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) fail("document must be an object");
  try {
    const Dim truncation = doc.at("truncation").get<Dim>();
    const std::string name = doc.value("name", std::string());
    const auto& simplices = doc.at("simplices");
    if (!simplices.is_array() || simplices.empty()) fail("`simplices` must be a nonempty list");
    if (static_cast<Dim>(simplices.size()) - 1 > truncation) fail("simplices given beyond the truncation");

    FiniteSimplicialSet::Builder b(truncation, name);
    std::unordered_map<std::string, SimplexRef> labels;
    for (std::size_t n = 0; n < simplices.size(); ++n) {
      for (const auto& l : simplices[n]) {
        const auto label = l.get<std::string>();
        if (label.empty() || label.find('@') != std::string::npos) fail("invalid label '" + label + "'");
        const SimplexId id = b.add(static_cast<Dim>(n), label);
        if (!labels.emplace(label, nondegenerate_ref(id, static_cast<Dim>(n))).second) {
          fail("duplicate label '" + label + "'");
        }
      }
    }
    if (b.count(0) == 0) fail("no vertices");
    if (doc.contains("basepoint")) {
      const auto bp = doc["basepoint"].get<std::string>();
      auto it = labels.find(bp);
      if (it == labels.end() || it->second.dim != 0) fail("basepoint '" + bp + "' is not a vertex");
      b.set_basepoint(it->second.base);
    }

    const auto faces = doc.value("faces", Json::object());
    std::size_t seen = 0;
    for (auto it = faces.begin(); it != faces.end(); ++it) {
      auto found = labels.find(it.key());
      if (found == labels.end()) fail("faces given for unknown simplex '" + it.key() + "'");
      const Dim n = found->second.dim;
      if (n == 0) fail("vertex '" + it.key() + "' cannot have faces");
      if (it.value().size() != static_cast<std::size_t>(n + 1)) {
        fail("simplex '" + it.key() + "' needs " + std::to_string(n + 1) + " faces");
      }
      std::vector<SimplexRef> refs;
      for (const auto& f : it.value()) {
        const auto s = f.get<std::string>();
        const auto at = s.find('@');
        const std::string label = at == std::string::npos ? s : s.substr(at + 1);
        auto base = labels.find(label);
        if (base == labels.end()) fail("unknown simplex label '" + label + "'");
        SimplexRef r = base->second;
        if (at != std::string::npos) {
          std::vector<int> ops = parse_word(std::string_view(s).substr(0, at));
          std::reverse(ops.begin(), ops.end());
          r.word = word::normalize(ops.data(), static_cast<int>(ops.size()), r.base_dim);
          r.dim = static_cast<std::uint8_t>(r.base_dim + ops.size());
        }
        if (r.dim != n - 1) fail("face '" + s + "' of '" + it.key() + "' has the wrong dimension");
        refs.push_back(r);
      }
      b.set_faces(n, found->second.base, refs);
      ++seen;
    }
    std::size_t positive = 0;
    for (std::size_t n = 1; n < simplices.size(); ++n) positive += simplices[n].size();
    if (seen != positive) fail("every simplex of positive dimension needs its faces");

    SimplicialSetFile out;
    out.set = b.build();
    if (doc.contains("involution")) {
      Involution t(out.set);
      for (auto it = doc["involution"].begin(); it != doc["involution"].end(); ++it) {
        auto from = out.set->find(it.key());
        auto to = out.set->find(it.value().get<std::string>());
        if (!from || !to) fail("involution refers to an unknown simplex");
        if (from->dim != to->dim) fail("involution must preserve dimension");
        t.assign(from->dim, from->base, to->base);
      }
      t.validate(false);
      out.involution = std::move(t);
    }
    if (doc.contains("subset")) {
      PointedSubset s(out.set);
      for (const auto& l : doc["subset"]) {
        auto r = out.set->find(l.get<std::string>());
        if (!r) fail("subset refers to an unknown simplex");
        s.insert(r->dim, r->base);
      }
      s.validate();
      out.subset = std::move(s);
    }
    return out;
  } catch (const Json::exception& e) {
    fail(std::string("malformed document: ") + e.what());
  }
}

SimplicialSetFile load_simplicial_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_simplicial_set(buf.str());
}

std::string serialize_simplicial_set(const SimplicialSetFile& file) {
  const auto& x = *file.set;
  if (!x.has_labels()) fail("only labelled sets can be serialized");
  Json doc;
  doc["name"] = x.name();
  doc["truncation"] = x.truncation();
  doc["basepoint"] = x.label(0, x.basepoint());
  Json simplices = Json::array();
  for (Dim n = 0; n <= std::max<Dim>(x.top_dim(), 0); ++n) {
    Json level = Json::array();
    for (SimplexId id = 0; id < x.count(n); ++id) level.push_back(x.label(n, id));
    simplices.push_back(std::move(level));
  }
  doc["simplices"] = std::move(simplices);
  Json faces = Json::object();
  for (Dim n = 1; n <= x.top_dim(); ++n) {
    for (SimplexId id = 0; id < x.count(n); ++id) {
      Json list = Json::array();
      for (const auto& f : x.stored_faces(n, id)) list.push_back(x.ref_label(f));
      faces[x.label(n, id)] = std::move(list);
    }
  }
  doc["faces"] = std::move(faces);
  if (file.involution) {
    Json t = Json::object();
    for (Dim n = 0; n <= x.top_dim(); ++n) {
      for (SimplexId id = 0; id < x.count(n); ++id) t[x.label(n, id)] = x.label(n, (*file.involution)(n, id));
    }
    doc["involution"] = std::move(t);
  }
  if (file.subset) {
    Json s = Json::array();
    for (Dim n = 0; n <= x.top_dim(); ++n) {
      for (SimplexId id = 0; id < x.count(n); ++id) {
        if (file.subset->contains(n, id)) s.push_back(x.label(n, id));
      }
    }
    doc["subset"] = std::move(s);
  }
  return doc.dump(2) + "\n";
}

}  // namespace stunted
