#include "hetnet/spec_io.hpp"

#include "hetnet/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hetnet {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ":" << line << ":" << col << ": JSON syntax error: " << e.what();
    throw InputError(os.str());
  }
}

[[noreturn]] void fail(const std::string& origin, const std::string& path, const std::string& msg) {
  throw InputError(origin + ": " + (path.empty() ? "/" : path) + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& origin, const std::string& path) {
  if (!obj.is_object()) fail(origin, path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(origin, path, std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_number()) fail(origin, path, "expected a number");
  return v.get<double>();
}

std::string text_of(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_string()) fail(origin, path, "expected a string");
  return v.get<std::string>();
}

Vec4 vec4(const json& v, const std::string& origin, const std::string& path) {
  if (!v.is_array() || v.size() != 4) fail(origin, path, "expected an array of 4 numbers");
  Vec4 out;
  for (int k = 0; k < 4; ++k) out[k] = number(v[static_cast<std::size_t>(k)], origin, path + "/" + std::to_string(k));
  return out;
}

Quaternion quat(const json& v, const std::string& origin, const std::string& path) {
  const Vec4 x = vec4(v, origin, path);
  return Quaternion{x[0], x[1], x[2], x[3]};
}

QuatGroupLabel label(const json& obj, const char* key, const std::string& origin) {
  const std::string path = std::string("/") + key;
  const std::string s = text_of(require(obj, key, origin, ""), origin, path);
  try {
    return QuatGroupLabel::parse(s);
  } catch (const InputError& e) {
    fail(origin, path, e.what());
  }
}

json quat_json(const Quaternion& q) { return json::array({q.c[0], q.c[1], q.c[2], q.c[3]}); }
json vec_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& origin,
                const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(origin, path, "unknown key '" + k + "'");
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Presentation parse_group_spec(const std::string& text, const std::string& origin) {
  const json j = parse_json(text, origin);
  if (!j.is_object()) fail(origin, "", "expected an object");
  check_keys(j, {"name", "L", "LK", "R", "RK", "s", "s_index", "sigma"}, origin, "");
  Presentation p;
  if (j.contains("name")) p.name = text_of(j["name"], origin, "/name");
  p.L = label(j, "L", origin);
  p.LK = label(j, "LK", origin);
  p.R = label(j, "R", origin);
  p.RK = label(j, "RK", origin);
  if (j.contains("s")) {
    const json& s = j["s"];
    if (s.is_string()) {
      const auto mode = s.get<std::string>();
      if (mode == "automatic") p.s = CosetPairing::automatic();
      else if (mode == "identity") p.s = CosetPairing::identity();
      else fail(origin, "/s", "expected \"automatic\", \"identity\" or a table");
    } else if (s.is_array()) {
      p.s.mode = CosetPairing::Mode::Table;
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::string path = "/s/" + std::to_string(k);
        if (!s[k].is_object()) fail(origin, path, "expected an object with keys l and r");
        check_keys(s[k], {"l", "r"}, origin, path);
        p.s.table.emplace_back(quat(require(s[k], "l", origin, path), origin, path + "/l"),
                               quat(require(s[k], "r", origin, path), origin, path + "/r"));
      }
      if (p.s.table.empty()) fail(origin, "/s", "empty s-table");
    } else {
      fail(origin, "/s", "expected a string or an array");
    }
  }
  if (j.contains("s_index")) {
    if (!j["s_index"].is_number_integer()) fail(origin, "/s_index", "expected an integer");
    p.s_index = j["s_index"].get<int>();
  }
  if (j.contains("sigma")) {
    const json& sg = j["sigma"];
    check_keys(sg, {"a", "b"}, origin, "/sigma");
    const Quaternion a = quat(require(sg, "a", origin, "/sigma"), origin, "/sigma/a");
    const Quaternion b = quat(require(sg, "b", origin, "/sigma"), origin, "/sigma/b");
    try {
      p.sigma = GroupElement4::reflection(a, b);
    } catch (const InputError& e) {
      fail(origin, "/sigma", e.what());
    }
  }
  return p;
}

Presentation load_group_spec(const std::filesystem::path& path) {
  return parse_group_spec(read_text_file(path), path.string());
}

std::string write_group_spec(const Presentation& p) {
  json j;
  if (!p.name.empty()) j["name"] = p.name;
  j["L"] = p.L.str();
  j["LK"] = p.LK.str();
  j["R"] = p.R.str();
  j["RK"] = p.RK.str();
  switch (p.s.mode) {
    case CosetPairing::Mode::Automatic: j["s"] = "automatic"; break;
    case CosetPairing::Mode::Identity: j["s"] = "identity"; break;
    case CosetPairing::Mode::Table: {
      json t = json::array();
      for (const auto& [l, r] : p.s.table) t.push_back({{"l", quat_json(l)}, {"r", quat_json(r)}});
      j["s"] = t;
      break;
    }
  }
  if (p.s_index) j["s_index"] = *p.s_index;
  if (p.sigma) j["sigma"] = {{"a", quat_json(p.sigma->a)}, {"b", quat_json(p.sigma->b)}};
  return j.dump(2) + "\n";
}

FieldSpec parse_field_spec(const std::string& text, const std::string& origin) {
  const json j = parse_json(text, origin);
  if (!j.is_object()) fail(origin, "", "expected an object");
  check_keys(j, {"name", "group", "B", "angular_scale", "planes"}, origin, "");
  FieldSpec f;
  if (j.contains("name")) f.name = text_of(j["name"], origin, "/name");
  if (j.contains("B")) f.B = number(j["B"], origin, "/B");
  if (!(f.B >= 0)) fail(origin, "/B", "B must be non-negative");
  if (j.contains("angular_scale")) {
    try {
      f.scale = parse_angular_scale(text_of(j["angular_scale"], origin, "/angular_scale"));
    } catch (const InputError& e) {
      fail(origin, "/angular_scale", e.what());
    }
  }
  const json& planes = require(j, "planes", origin, "");
  if (!planes.is_array() || planes.empty()) fail(origin, "/planes", "expected a non-empty array");
  for (std::size_t k = 0; k < planes.size(); ++k) {
    const std::string path = "/planes/" + std::to_string(k);
    const json& e = planes[k];
    if (!e.is_object()) fail(origin, path, "expected an object");
    check_keys(e, {"name", "span", "source", "offset", "K", "A1", "A2"}, origin, path);
    FieldEntry fe;
    if (e.contains("name")) fe.name = text_of(e["name"], origin, path + "/name");
    const json& span = require(e, "span", origin, path);
    if (!span.is_array() || span.size() != 2) fail(origin, path + "/span", "expected two 4-vectors");
    fe.span = {vec4(span[0], origin, path + "/span/0"), vec4(span[1], origin, path + "/span/1")};
    if (e.contains("source")) fe.source = vec4(e["source"], origin, path + "/source");
    if (e.contains("offset")) fe.offset = number(e["offset"], origin, path + "/offset");
    if (e.contains("K")) {
      if (!e["K"].is_number_integer() || e["K"].get<int>() < 1) fail(origin, path + "/K", "expected a positive integer");
      fe.K = e["K"].get<int>();
    }
    fe.A1 = number(require(e, "A1", origin, path), origin, path + "/A1");
    fe.A2 = number(require(e, "A2", origin, path), origin, path + "/A2");
    if (!(fe.A1 + fe.A2 > 0) || !(-fe.A1 + fe.A2 < 0))
      fail(origin, path, "sign of A1+A2 must be positive and sign of -A1+A2 negative");
    f.entries.push_back(std::move(fe));
  }
  return f;
}

FieldSpec load_field_spec(const std::filesystem::path& path) {
  return parse_field_spec(read_text_file(path), path.string());
}

std::string write_field_spec(const FieldSpec& f) {
  json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["B"] = f.B;
  j["angular_scale"] = to_string(f.scale);
  json planes = json::array();
  for (const auto& e : f.entries) {
    json p;
    if (!e.name.empty()) p["name"] = e.name;
    p["span"] = json::array({vec_json(e.span[0]), vec_json(e.span[1])});
    if (e.source) p["source"] = vec_json(*e.source);
    if (e.offset) p["offset"] = *e.offset;
    if (e.K) p["K"] = *e.K;
    p["A1"] = e.A1;
    p["A2"] = e.A2;
    planes.push_back(p);
  }
  j["planes"] = planes;
  return j.dump(2) + "\n";
}

}  // namespace hetnet
