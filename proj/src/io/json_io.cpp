#include <cmath>
#include <fstream>
#include <sstream>

#include "isoclus/errors.hpp"
#include "isoclus/io.hpp"
#include "json.hpp"

namespace isoclus {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& ptr, const std::string& what) {
  throw ParseError("field " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("column "); p != std::string::npos) {
      if (auto q = msg.find(": ", p); q != std::string::npos) msg = msg.substr(q + 2);
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

const json& member(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) field_error(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(ptr + "/" + key, "missing");
  return *it;
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) field_error(ptr, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) field_error(ptr, "not finite");
  return v;
}

int integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) field_error(ptr, "expected an integer");
  return j.get<int>();
}

Point2 point(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2) field_error(ptr, "expected [x, y]");
  return {number(j[0], ptr + "/0"), number(j[1], ptr + "/1")};
}

std::vector<Point2> points(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() < 3) field_error(ptr, "expected an array of at least 3 points");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], ptr + "/" + std::to_string(i)));
  return out;
}

template <class F>
auto validated(const std::string& ptr, F f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    field_error(ptr, e.what());
  } catch (const DomainError& e) {
    field_error(ptr, e.what());
  }
}

Loop loop_from(const json& j, const std::string& ptr) {
  if (!j.is_object()) field_error(ptr, "expected an object");
  if (j.contains("vertices")) {
    // Orientation is kept as given: clockwise loops are holes.
    auto v = points(j["vertices"], ptr + "/vertices");
    Loop l;
    for (std::size_t i = 0; i < v.size(); ++i) l.edges.push_back(Edge::segment(v[i], v[(i + 1) % v.size()]));
    validated(ptr, [&] { validate_loop(l); return 0; });
    return l;
  }
  const json& edges = member(j, ptr, "edges");
  if (!edges.is_array() || edges.empty()) field_error(ptr + "/edges", "expected a non-empty array");
  Loop l;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string ep = ptr + "/edges/" + std::to_string(i);
    const json& e = edges[i];
    Point2 from = point(member(e, ep, "from"), ep + "/from");
    Point2 to = point(member(e, ep, "to"), ep + "/to");
    if (e.contains("center")) {
      Point2 c = point(e["center"], ep + "/center");
      double sweep = number(member(e, ep, "sweep"), ep + "/sweep");
      l.edges.push_back(validated(ep, [&] { return Edge::arc(from, to, c, sweep); }));
    } else {
      l.edges.push_back(Edge::segment(from, to));
    }
  }
  return l;
}

Region region_from(const json& j, const std::string& ptr) {
  if (!j.is_object()) field_error(ptr, "expected a region object");
  if (j.contains("polygon")) {
    auto v = points(j["polygon"], ptr + "/polygon");
    return validated(ptr + "/polygon", [&] { return Region::polygon(v); });
  }
  if (j.contains("square")) {
    std::string p = ptr + "/square";
    const json& s = j["square"];
    Point2 c = point(member(s, p, "center"), p + "/center");
    double side = number(member(s, p, "side"), p + "/side");
    if (!(side > 0)) field_error(p + "/side", "must be positive");
    return Region::square(c, side);
  }
  if (j.contains("rectangle")) {
    std::string p = ptr + "/rectangle";
    const json& s = j["rectangle"];
    Point2 lo = point(member(s, p, "lo"), p + "/lo");
    Point2 hi = point(member(s, p, "hi"), p + "/hi");
    if (!(hi.x > lo.x && hi.y > lo.y)) field_error(p, "hi must exceed lo in both coordinates");
    return Region::rectangle(lo, hi);
  }
  if (j.contains("loops")) {
    const json& ls = j["loops"];
    if (!ls.is_array() || ls.empty()) field_error(ptr + "/loops", "expected a non-empty array");
    std::vector<Loop> loops;
    for (std::size_t i = 0; i < ls.size(); ++i) loops.push_back(loop_from(ls[i], ptr + "/loops/" + std::to_string(i)));
    return validated(ptr + "/loops", [&] { return Region(std::move(loops)); });
  }
  field_error(ptr, "expected one of polygon, square, rectangle, loops");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json region_json(const Region& r) {
  json loops = json::array();
  for (const auto& l : r.loops()) {
    json edges = json::array();
    for (const auto& e : l.edges) {
      json je = {{"from", point_json(e.from)}, {"to", point_json(e.to)}};
      if (e.is_arc()) {
        je["center"] = point_json(e.center);
        je["sweep"] = e.sweep;
      }
      edges.push_back(std::move(je));
    }
    loops.push_back({{"edges", std::move(edges)}});
  }
  return {{"loops", std::move(loops)}};
}

}  // namespace

Region parse_region(std::string_view text) { return region_from(parse_text(text), ""); }

Cluster parse_cluster(std::string_view text) {
  json j = parse_text(text);
  const json& ch = member(j, "", "chambers");
  if (!ch.is_array()) field_error("/chambers", "expected an array");
  std::vector<Region> chambers;
  for (std::size_t i = 0; i < ch.size(); ++i) chambers.push_back(region_from(ch[i], "/chambers/" + std::to_string(i)));
  if (j.contains("torus")) {
    if (j.contains("ambient")) field_error("/ambient", "a torus cluster has no ambient region");
    const json& t = j["torus"];
    int a = integer(member(t, "/torus", "alpha"), "/torus/alpha");
    int b = integer(member(t, "/torus", "beta"), "/torus/beta");
    TorusSpec spec = validated("/torus", [&] { return TorusSpec::make(a, b); });
    return Cluster::on_torus(std::move(chambers), spec);
  }
  if (j.contains("ambient")) return Cluster::in_region(std::move(chambers), region_from(j["ambient"], "/ambient"));
  return Cluster::in_plane(std::move(chambers));
}

Region load_region(const std::filesystem::path& path) {
  try {
    return parse_region(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Cluster load_cluster(const std::filesystem::path& path) {
  try {
    return parse_cluster(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string region_to_json(const Region& r) { return region_json(r).dump(); }

std::string cluster_to_json(const Cluster& c) {
  json chambers = json::array();
  for (const auto& ch : c.chambers()) chambers.push_back(region_json(ch));
  json j = {{"chambers", std::move(chambers)}};
  if (c.ambient()) j["ambient"] = region_json(*c.ambient());
  if (c.torus()) j["torus"] = {{"alpha", c.torus()->alpha}, {"beta", c.torus()->beta}};
  return j.dump();
}

}  // namespace isoclus
