#include "morita/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "morita/error.hpp"

namespace morita {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

// Objects at depth 0 and 1 are expanded one member per line; everything
// deeper is written compactly.
void emit(std::ostringstream& os, const json& j, int depth) {
  if (!j.is_object() || depth > 1 || j.empty()) {
    os << j.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  os << "{\n";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (!first) os << ",\n";
    first = false;
    os << pad << json(key).dump() << ": ";
    emit(os, value, depth + 1);
  }
  os << "\n" << std::string(static_cast<std::size_t>(2 * depth), ' ') << "}";
}

std::string render(const json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  os << "\n";
  return os.str();
}

json triples(const Multiplicities& m) {
  json out = json::array();
  for (int i = 0; i < m.extent(0); ++i)
    for (int j = 0; j < m.extent(1); ++j)
      for (int k = 0; k < m.extent(2); ++k)
        if (int n = m(i, j, k); n != 0) out.push_back({i, j, k, n});
  return out;
}

json category_json(const FusionCategory& cat) {
  json out;
  out["rank"] = cat.rank;
  out["labels"] = cat.labels;
  out["dual"] = cat.dual.empty() ? duals_from_fusion(cat.fusion) : cat.dual;
  out["fusion"] = triples(cat.fusion);
  return out;
}

json tensor_json(const FTensor& t) {
  json out = json::object();
  for (const auto& [key, value] : t) out[format_key(key)] = {value.real(), value.imag()};
  return out;
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& what) {
  if (!j.is_number()) schema(what + " must be a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) schema(what + " must be a [re, im] pair");
  return {as_double(j[0], what), as_double(j[1], what)};
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema("unknown key \"" + key + "\" in " + where);
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema(where + " lacks \"" + key + "\"");
  return j.at(key);
}

Multiplicities load_triples(const json& j, int n0, int n1, int n2, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array of [i, j, k, n]");
  Multiplicities m(n0, n1, n2);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) schema(what + " entries must be [i, j, k, n]");
    const int i = as_int(e[0], what), k1 = as_int(e[1], what), k2 = as_int(e[2], what), n = as_int(e[3], what);
    if (i < 0 || i >= n0 || k1 < 0 || k1 >= n1 || k2 < 0 || k2 >= n2) schema(what + " entry " + e.dump() + " is out of range");
    if (n < 0) schema(what + " entry " + e.dump() + " has a negative multiplicity");
    if (m(i, k1, k2) != 0) schema(what + " entry " + e.dump() + " is repeated");
    m.set(i, k1, k2, n);
  }
  return m;
}

std::vector<std::string> load_labels(const json& parent, int rank, const std::string& where) {
  std::vector<std::string> labels;
  if (!parent.contains("labels")) {
    for (int i = 0; i < rank; ++i) labels.push_back(std::to_string(i));
    return labels;
  }
  const json& j = parent.at("labels");
  if (!j.is_array() || static_cast<int>(j.size()) != rank) schema(where + ".labels must list rank strings");
  for (const auto& s : j) {
    if (!s.is_string()) schema(where + ".labels must be strings");
    labels.push_back(s.get<std::string>());
  }
  return labels;
}

FusionCategory load_category(const json& j, const std::string& where) {
  only_keys(j, {"rank", "labels", "dual", "fusion"}, where);
  FusionCategory cat;
  cat.rank = as_int(require(j, "rank", where), where + ".rank");
  if (cat.rank <= 0) schema(where + ".rank must be positive");
  cat.labels = load_labels(j, cat.rank, where);
  cat.fusion = load_triples(require(j, "fusion", where), cat.rank, cat.rank, cat.rank, where + ".fusion");
  if (j.contains("dual")) {
    const json& d = j.at("dual");
    if (!d.is_array() || static_cast<int>(d.size()) != cat.rank) schema(where + ".dual must have rank entries");
    for (const auto& x : d) {
      const int v = as_int(x, where + ".dual");
      if (v < 0 || v >= cat.rank) schema(where + ".dual entry out of range");
      cat.dual.push_back(v);
    }
  }
  return cat;
}

FTensor load_tensor(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  FTensor t;
  for (const auto& [key, value] : j.items()) {
    const FKey k = parse_key(key);
    if (t.contains(k)) schema(where + " repeats key " + key);
    t.set(k, as_complex(value, where + "[" + key + "]"));
  }
  return t;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

}  // namespace

std::string format_key(const FKey& k) {
  std::ostringstream os;
  os << k.a << ',' << k.b << ',' << k.c << ',' << k.d << '|' << k.alpha + 1 << ',' << k.e << ',' << k.beta + 1 << '|'
     << k.mu + 1 << ',' << k.f << ',' << k.nu + 1;
  return os.str();
}

FKey parse_key(const std::string& text) {
  std::vector<int> v;
  std::size_t pos = 0;
  int bars = 0;
  for (int field = 0; field < 10; ++field) {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw Error(ErrorKind::ParseError, "malformed F key \"" + text + "\"");
    int x = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      x = 10 * x + (text[pos] - '0');
      if (x > 1000000) throw Error(ErrorKind::ParseError, "index too large in F key \"" + text + "\"");
      ++pos;
    }
    v.push_back(x);
    if (field == 9) break;
    const char want = (field == 3 || field == 6) ? '|' : ',';
    if (pos >= text.size() || text[pos] != want) throw Error(ErrorKind::ParseError, "malformed F key \"" + text + "\"");
    if (want == '|') ++bars;
    ++pos;
  }
  if (pos != text.size() || bars != 2) throw Error(ErrorKind::ParseError, "malformed F key \"" + text + "\"");
  for (int i : {4, 6, 7, 9})
    if (v[static_cast<std::size_t>(i)] == 0)
      throw Error(ErrorKind::ParseError, "multiplicity indices are 1-based in F key \"" + text + "\"");
  return FKey{v[0], v[1], v[2], v[3], v[4] - 1, v[5], v[6] - 1, v[7] - 1, v[8], v[9] - 1};
}

std::string save_skeletal(const BimoduleData& data) {
  json j;
  j["format_version"] = kFormatVersion;
  j["category_c"] = category_json(data.left());
  if (data.right) j["category_d"] = category_json(*data.right);
  json mod;
  mod["rank"] = data.module.rank;
  mod["labels"] = data.module.labels;
  mod["left_action"] = triples(data.module.action);
  if (data.right) mod["right_action"] = triples(data.right_action);
  j["module"] = mod;
  j["f0"] = tensor_json(data.left().fsym);
  j["f1"] = tensor_json(data.module.f1);
  if (data.right) {
    j["f2"] = tensor_json(data.f2);
    j["f3"] = tensor_json(data.f3);
    j["f4"] = tensor_json(data.right->fsym);
  }
  j["tolerance"] = data.tolerance;
  return render(j);
}

std::string save_skeletal(const ModuleData& mod) {
  BimoduleData data;
  data.module = mod;
  return save_skeletal(data);
}

BimoduleData load_skeletal(const std::string& text) {
  const json j = parse_json(text);
  only_keys(j, {"format_version", "category_c", "category_d", "module", "f0", "f1", "f2", "f3", "f4", "tolerance"}, "document");
  const int version = as_int(require(j, "format_version", "document"), "format_version");
  if (version != kFormatVersion) schema("unsupported format_version " + std::to_string(version));

  BimoduleData data;
  ModuleData& mod = data.module;
  mod.base = load_category(require(j, "category_c", "document"), "category_c");
  const int nc = mod.base.rank;
  const json& m = require(j, "module", "document");
  only_keys(m, {"rank", "labels", "left_action", "right_action"}, "module");
  mod.rank = as_int(require(m, "rank", "module"), "module.rank");
  if (mod.rank <= 0) schema("module.rank must be positive");
  mod.labels = load_labels(m, mod.rank, "module");
  mod.action = load_triples(require(m, "left_action", "module"), nc, mod.rank, mod.rank, "module.left_action");
  mod.base.fsym = load_tensor(require(j, "f0", "document"), "f0");
  mod.f1 = load_tensor(require(j, "f1", "document"), "f1");

  if (j.contains("category_d")) {
    data.right = load_category(j.at("category_d"), "category_d");
    data.right_action = load_triples(require(m, "right_action", "module"), mod.rank, data.right->rank, mod.rank,
                                     "module.right_action");
    if (j.contains("f2")) data.f2 = load_tensor(j.at("f2"), "f2");
    if (j.contains("f3")) data.f3 = load_tensor(j.at("f3"), "f3");
    if (j.contains("f4")) data.right->fsym = load_tensor(j.at("f4"), "f4");
  } else {
    for (const char* k : {"f2", "f3", "f4"})
      if (j.contains(k)) schema(std::string(k) + " requires category_d");
    if (m.contains("right_action")) schema("module.right_action requires category_d");
  }
  if (j.contains("tolerance")) {
    data.tolerance = as_double(j.at("tolerance"), "tolerance");
    if (!(data.tolerance > 0.0)) schema("tolerance must be positive");
  }
  finalize(data);
  check_structure(data);
  return data;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidInput, "write failed for " + path);
}

BimoduleData load_skeletal_file(const std::string& path) { return load_skeletal(read_text_file(path)); }

FiniteGroup load_group(const std::string& text) {
  const json j = parse_json(text);
  only_keys(j, {"format_version", "group", "cocycle"}, "group file");
  if (j.contains("format_version") && as_int(j.at("format_version"), "format_version") != kFormatVersion)
    schema("unsupported format_version");
  const json& g = require(j, "group", "group file");
  only_keys(g, {"name", "table"}, "group");
  std::string name = g.contains("name") && g.at("name").is_string() ? g.at("name").get<std::string>() : "G";
  const json& t = require(g, "table", "group");
  if (!t.is_array()) schema("group.table must be an array of rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array()) schema("group.table rows must be arrays");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(as_int(x, "group.table entry"));
    table.push_back(std::move(r));
  }
  return from_table(std::move(name), std::move(table));
}

Cocycle load_cocycle(const FiniteGroup& g, const std::string& text) {
  const json j = parse_json(text);
  only_keys(j, {"format_version", "group", "cocycle"}, "cocycle file");
  const json& c = require(j, "cocycle", "cocycle file");
  if (!c.is_array() || static_cast<int>(c.size()) != g.order) schema("cocycle must be an order x order table");
  Cocycle phi;
  for (const auto& row : c) {
    if (!row.is_array() || static_cast<int>(row.size()) != g.order) schema("cocycle must be an order x order table");
    std::vector<Complex> r;
    for (const auto& x : row) r.push_back(as_complex(x, "cocycle entry"));
    phi.values.push_back(std::move(r));
  }
  validate_cocycle(g, phi);
  return phi;
}

std::string save_group(const FiniteGroup& g) {
  json j;
  j["format_version"] = kFormatVersion;
  json grp;
  grp["name"] = g.name;
  grp["table"] = g.table;
  j["group"] = grp;
  return render(j);
}

}  // namespace morita
