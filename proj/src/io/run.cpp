#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "isoclus/bounds.hpp"
#include "isoclus/cheeger.hpp"
#include "isoclus/errors.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/io.hpp"
#include "isoclus/partition.hpp"
#include "isoclus/stability.hpp"

namespace isoclus {

namespace {

using Clock = std::chrono::steady_clock;
using Cells = std::vector<std::pair<std::string, std::string>>;

std::string yes_no(bool b) { return b ? "1" : "0"; }

std::string opt_number(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Cells report_cells(const std::string& prefix, const BoundReport& r) {
  return {{prefix + "lhs", csv_number(r.lhs)},
          {prefix + "rhs", csv_number(r.rhs)},
          {prefix + "slack", csv_number(r.slack)},
          {prefix + "satisfied", yes_no(r.satisfied)},
          {prefix + "fitted_constant", opt_number(r.fitted_constant)}};
}

Cells operator+(Cells a, const Cells& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next++;
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

class Runner {
 public:
  explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {
    name_ = cfg.command.size() >= 1 ? cfg.command[0] : "";
    if (cfg.command.size() >= 2) name_ += "_" + cfg.command[1];
    for (const auto& [key, path] : cfg.inputs)
      if (!std::filesystem::is_regular_file(path))
        throw DomainError("input --" + key + ": no such file " + path.string());
    out_.csv_path = cfg.csv ? *cfg.csv : cfg.out_dir / (name_ + ".csv");
  }

  RunOutput finish() {
    for (const auto& [key, value] : cfg_.params)
      if (!used_.count(key)) throw DomainError("unknown parameter --" + key + " for " + name_);
    for (const auto& [key, value] : cfg_.inputs)
      if (!used_.count(key)) throw DomainError("unknown input --" + key + " for " + name_);
    append_csv(out_.csv_path, out_.table);
    return std::move(out_);
  }

  double real(const std::string& key, double def) {
    used_.insert(key);
    auto it = cfg_.params.find(key);
    if (it == cfg_.params.end()) return def;
    return parse_real(key, it->second);
  }

  int integer(const std::string& key, int def) {
    double v = real(key, def);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("--" + key + " must be an integer");
    return static_cast<int>(v);
  }

  std::vector<double> list(const std::string& key, const std::string& def) {
    used_.insert(key);
    auto it = cfg_.params.find(key);
    std::string text = it == cfg_.params.end() ? def : it->second;
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw DomainError("--" + key + " needs at least one value");
    return out;
  }

  TorusSpec torus(const std::string& def) {
    used_.insert("torus");
    auto it = cfg_.params.find("torus");
    std::string text = it == cfg_.params.end() ? def : it->second;
    auto x = text.find('x');
    if (x == std::string::npos) throw DomainError("--torus must look like 4x4");
    return TorusSpec::make(static_cast<int>(parse_real("torus", text.substr(0, x))),
                           static_cast<int>(parse_real("torus", text.substr(x + 1))));
  }

  bool has_input(const std::string& key) {
    used_.insert(key);
    return cfg_.inputs.count(key) > 0;
  }
  const std::filesystem::path& input(const std::string& key) {
    if (!has_input(key)) throw DomainError(name_ + " needs --" + key);
    return cfg_.inputs.at(key);
  }
  Region region_or(const std::string& key, const Region& def) {
    return has_input(key) ? load_region(cfg_.inputs.at(key)) : def;
  }

  void row(const Cells& cells, double wall) {
    Cells all = Cells{{"experiment", name_}, {"seed", std::to_string(cfg_.seed)}} + cells;
    all.push_back({"wall_time_s", csv_number(wall)});
    std::vector<std::string> header, values;
    for (auto& [k, v] : all) {
      header.push_back(k);
      values.push_back(v);
    }
    if (out_.table.header.empty()) out_.table.header = header;
    if (out_.table.header != header) throw std::logic_error("inconsistent CSV schema for " + name_);
    out_.table.rows.push_back(values);
  }

  void artifact(const Cluster& c, const std::string& stem) {
    std::filesystem::create_directories(cfg_.out_dir);
    auto json_path = cfg_.out_dir / (stem + ".json");
    write(json_path, cluster_to_json(c));
    if (cfg_.emit_svg) write(cfg_.out_dir / (stem + ".svg"), render_svg(c));
  }

  void write(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + p.string());
    out_.artifacts.push_back(p);
  }

  const ExperimentConfig& cfg() const { return cfg_; }
  unsigned threads() const { return worker_count(cfg_.threads); }

 private:
  double parse_real(const std::string& key, const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw DomainError("--" + key + ": not a number: '" + s + "'");
    }
  }

  const ExperimentConfig& cfg_;
  std::string name_;
  std::set<std::string> used_;
  RunOutput out_;
};

Region centered_square(const Region& omega, double side) { return Region::square(omega.bbox().center(), side); }

std::vector<Point2> hexagon_vertices() { return regular_unit_ngon(6).loops()[0].vertices(); }

std::vector<double> six_areas(std::vector<double> a) {
  if (a.size() > 6) throw DomainError("--areas takes at most 6 values");
  a.resize(6, 0.0);
  return a;
}

void construct_surgery(Runner& r) {
  double s0 = r.real("q0", 1), s1 = r.real("q1", 3);
  int m = r.integer("m", 100);
  if (!(s0 > 0 && s1 > s0)) throw DomainError("--q0 and --q1 are square sides with 0 < q0 < q1");
  Region q0 = Region::square({0, 0}, s0), q1 = Region::square({0, 0}, s1);
  Region a = r.has_input("a") ? load_region(r.input("a")) : boolean(q1, q0, BoolOp::difference);
  auto t0 = Clock::now();
  SurgeryResult s = surgery_partition(q0, q1, a, m);
  double wall = seconds_since(t0);
  r.row(Cells{{"q0", csv_number(s0)},
              {"q1", csv_number(s1)},
              {"m", std::to_string(m)},
              {"chambers", std::to_string(s.cluster.size())},
              {"s", std::to_string(s.plan.s)},
              {"k", std::to_string(s.plan.k)},
              {"r", std::to_string(s.plan.r)}} +
            report_cells("", s.report) + Cells{{"max_arc_excess", csv_number(s.max_arc_excess)}},
        wall);
  r.artifact(s.cluster, "surgery");
}

void construct_reassembly(Runner& r) {
  Region omega = r.region_or("omega", Region::rectangle({0, 0}, {1, 1}));
  int n = r.integer("n", 64);
  Point2 off{r.real("offset_x", 0), r.real("offset_y", 0)};
  auto t0 = Clock::now();
  ReassemblyResult s = boundary_reassembly_partition(omega, n, off);
  double wall = seconds_since(t0);
  r.row(Cells{{"n", std::to_string(n)},
              {"omega_area", csv_number(area(omega))},
              {"chambers", std::to_string(s.cluster.size())},
              {"interior", std::to_string(s.ledger.interior_count)},
              {"boundary", std::to_string(s.ledger.boundary_count)},
              {"exterior_area", csv_number(s.cluster.exterior_area())}} +
            report_cells("lower_", s.lower) + report_cells("upper_", s.upper),
        wall);
  r.artifact(s.cluster, "reassembly");
}

void construct_competitor(Runner& r) {
  Region omega = r.region_or("omega", Region::rectangle({0, 0}, {3, 3}));
  int n = r.integer("n", 576);
  double mu = r.real("mu", 2 * kHexSide);
  Region ql = r.has_input("ql") ? load_region(r.input("ql")) : centered_square(omega, r.real("ql_side", 1));
  auto t0 = Clock::now();
  ReassemblyResult e = boundary_reassembly_partition(omega, n);
  CompetitorResult f = competitor_build(omega, e.cluster, ql, n, mu);
  double wall = seconds_since(t0);
  r.row(Cells{{"n", std::to_string(n)},
              {"mu", csv_number(mu)},
              {"dropped", std::to_string(f.dropped)},
              {"hexagons", std::to_string(f.hexagons)},
              {"surgery_chambers", std::to_string(f.surgery_chambers)},
              {"kept", std::to_string(f.kept.size())}} +
            report_cells("", f.report),
        wall);
  r.artifact(f.cluster, "competitor");
}

void bounds_hales(Runner& r) {
  Cluster c;
  std::string source;
  if (r.has_input("cluster")) {
    c = load_cluster(r.input("cluster"));
    source = r.input("cluster").filename().string();
  } else {
    TorusSpec t = r.torus("4x4");
    c = torus_honeycomb(t);
    source = "honeycomb " + std::to_string(t.alpha) + "x" + std::to_string(t.beta);
  }
  auto t0 = Clock::now();
  BoundReport b = c.on_torus() ? hales_torus(c) : hales_plane(c);
  double wall = seconds_since(t0);
  r.row(Cells{{"source", source}, {"chambers", std::to_string(c.size())}, {"form", c.on_torus() ? "torus" : "plane"}} +
            report_cells("", b) + Cells{{"equality", yes_no(is_equality(b))}},
        wall);
}

void bounds_local(Runner& r) {
  Cluster c = load_cluster(r.input("cluster"));
  Region o = load_region(r.input("window"));
  auto t0 = Clock::now();
  BoundReport b = local_lower_bound(c, o);
  r.row(Cells{{"chambers", std::to_string(c.size())}, {"window_area", csv_number(area(o))}} + report_cells("", b),
        seconds_since(t0));
}

void bounds_equi(Runner& r) {
  Region omega = r.region_or("omega", Region::rectangle({0, 0}, {1, 1}));
  int n = r.integer("n", 256);
  Region ql = r.has_input("ql") ? load_region(r.input("ql")) : centered_square(omega, r.real("ql_side", 0.5));
  auto t0 = Clock::now();
  ReassemblyResult e = boundary_reassembly_partition(omega, n);
  EquiResult q = equidistribution_residual(e.cluster, ql, n, omega);
  r.row(Cells{{"n", std::to_string(n)}, {"ql_area", csv_number(area(ql))}, {"residual", csv_number(q.residual)}} +
            report_cells("dia_", q.dia) + report_cells("indeco_", q.indeco),
        seconds_since(t0));
}

void stability_arc(Runner& r) {
  auto as = r.list("a", "0,0.001,0.01,0.1,0.392699081698724");
  double amax = r.real("eta_max", 0.05);
  double eta = fit_arc_eta(amax);
  for (double a : as) {
    auto t0 = Clock::now();
    double len = arc(a), phi = arc_half_angle(a);
    r.row({{"a", csv_number(a)},
           {"arc", csv_number(len)},
           {"half_angle", csv_number(phi)},
           {"eta_max", csv_number(amax)},
           {"eta", csv_number(eta)}},
          seconds_since(t0));
  }
}

std::string joined(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_number(v[i]);
  return s;
}

void stability_chordal(Runner& r) {
  auto areas = six_areas(r.list("areas", "0.01"));
  auto t0 = Clock::now();
  Region pi = regular_unit_ngon(6);
  Region e = bulged_polygon(hexagon_vertices(), areas);
  ChordalResult c = chordal_check(e, pi);
  r.row(Cells{{"areas", joined(areas)}, {"perimeter_e", csv_number(perimeter(e))}, {"perimeter_pi", csv_number(perimeter(pi))}} +
            report_cells("dido_", c.dido) + report_cells("chordal_", c.chordal),
        seconds_since(t0));
}

void stability_ngon(Runner& r) {
  int n = r.integer("n", 6);
  int samples = r.integer("samples", 100);
  double dmax = r.real("deficit_max", 1e-2);
  auto corpus = random_ngon_corpus(n, samples, dmax, r.cfg().seed);
  std::vector<NgonFit> fits(corpus.size());
  std::vector<BoundReport> var(corpus.size());
  std::vector<double> walls(corpus.size());
  parallel_for(corpus.size(), r.threads(), [&](std::size_t i) {
    auto t0 = Clock::now();
    fits[i] = fit_regular_ngon(corpus[i], n);
    var[i] = ngon_variance_bound(corpus[i]);
    walls[i] = seconds_since(t0);
  });
  for (std::size_t i = 0; i < corpus.size(); ++i)
    r.row(Cells{{"n", std::to_string(n)},
                {"sample", std::to_string(i)},
                {"deficit", csv_number(fits[i].deficit)},
                {"hd", csv_number(fits[i].hd)},
                {"ratio", opt_number(fits[i].ratio)}} +
              report_cells("variance_", var[i]),
          walls[i]);
}

void stability_hexagon(Runner& r) {
  auto areas = six_areas(r.list("areas", "0.01"));
  auto t0 = Clock::now();
  Region e = bulged_polygon(hexagon_vertices(), areas);
  HexagonInequality h = hexagon_unit_inequality(e, regular_unit_ngon(6));
  r.row(Cells{{"areas", joined(areas)}, {"sym_diff", csv_number(h.sym_diff)}, {"hd", csv_number(h.hd)}} +
            report_cells("", h.report),
        seconds_since(t0));
}

std::string torus_name(const TorusSpec& t) { return std::to_string(t.alpha) + "x" + std::to_string(t.beta); }

void stability_alpha(Runner& r) {
  TorusSpec t = r.torus("2x2");
  for (double eps : r.list("eps", "0")) {
    auto t0 = Clock::now();
    Cluster c = eps == 0 ? torus_honeycomb(t) : three_edge_perturbation(t, eps);
    AsymmetryResult a = alpha_asymmetry(c);
    r.row({{"torus", torus_name(t)},
           {"eps", csv_number(eps)},
           {"alpha", csv_number(a.alpha)},
           {"t", csv_number(a.t)},
           {"s", csv_number(a.s)}},
          seconds_since(t0));
    if (eps != 0) r.artifact(c, "perturbation");
  }
}

void stability_kappa(Runner& r) {
  TorusSpec t = r.torus("2x2");
  auto eps = r.list("eps", "0.001,0.01,0.05");
  auto t0 = Clock::now();
  std::vector<Cluster> family;
  for (double e : eps) family.push_back(three_edge_perturbation(t, e));
  KappaEstimate k = kappa_estimate(family);
  double wall = seconds_since(t0);
  for (std::size_t i = 0; i < eps.size(); ++i)
    r.row({{"torus", torus_name(t)},
           {"eps", csv_number(eps[i])},
           {"alpha", csv_number(k.alphas[i])},
           {"ratio", csv_number(k.ratios[i])},
           {"kappa", csv_number(k.kappa)}},
          wall);
}

void cheeger_convex_cmd(Runner& r) {
  Region k = load_region(r.input("k"));
  auto t0 = Clock::now();
  CheegerResult c = cheeger_convex(k);
  double wall = seconds_since(t0);
  r.row({{"area", csv_number(area(k))},
         {"perimeter", csv_number(perimeter(k))},
         {"h", csv_number(c.h)},
         {"r", csv_number(c.r)},
         {"set_area", csv_number(area(c.set))},
         {"set_perimeter", csv_number(perimeter(c.set))},
         {"set_ratio", csv_number(h_ratio(c.set))}},
        wall);
  r.artifact(Cluster::in_region({c.set}, k), "cheeger");
}

void cheeger_hn_sweep(Runner& r) {
  Region omega = r.region_or("omega", Region::rectangle({0, 0}, {1, 1}));
  int nmin = r.integer("nmin", 1), nmax = r.integer("nmax", 64);
  double eps = r.real("eps", 0.01);
  if (nmin < 1 || nmax < nmin) throw DomainError("hn-sweep needs 1 <= nmin <= nmax");
  std::size_t count = static_cast<std::size_t>(nmax - nmin + 1);
  std::vector<HNSandwich> curve(count);
  std::vector<double> walls(count);
  parallel_for(count, r.threads(), [&](std::size_t i) {
    auto t0 = Clock::now();
    curve[i] = hn_sandwich(omega, nmin + static_cast<int>(i), eps);
    walls[i] = seconds_since(t0);
  });
  auto mono = hn_monotonicity(curve, area(omega));
  std::vector<std::string> violation(count, "");
  for (std::size_t i = 1; i < count; ++i) violation[i] = "0";
  // Map reports back to N + 1: each step yields the lower report and, when feasible, the upper one.
  std::size_t step = 0;
  for (const auto& m : mono) {
    if (m.name == "hn_monotone_lower") ++step;
    if (!m.satisfied) violation[step] = "1";
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = curve[i];
    r.row({{"N", std::to_string(s.n)},
           {"lower", csv_number(s.lower)},
           {"upper", opt_number(s.upper)},
           {"delta_N", s.feasible ? csv_number(s.delta) : ""},
           {"k_N", s.feasible ? std::to_string(s.k) : ""},
           {"feasible", yes_no(s.feasible)},
           {"alpha", s.feasible ? csv_number(s.alpha) : ""},
           {"raw_sum", opt_number(s.raw_sum)},
           {"monotonicity_violation", violation[i]}},
          walls[i]);
  }
}

void render_cmd(Runner& r) {
  const auto& in = r.input("cluster");
  Cluster c = load_cluster(in);
  auto t0 = Clock::now();
  std::string svg = render_svg(c);
  auto path = r.cfg().out_dir / (in.stem().string() + ".svg");
  r.write(path, svg);
  r.row({{"input", in.filename().string()}, {"chambers", std::to_string(c.size())}, {"svg", path.filename().string()}},
        seconds_since(t0));
}

const std::map<std::vector<std::string>, void (*)(Runner&)>& commands() {
  static const std::map<std::vector<std::string>, void (*)(Runner&)> table{
      {{"construct", "surgery"}, construct_surgery},
      {{"construct", "reassembly"}, construct_reassembly},
      {{"construct", "competitor"}, construct_competitor},
      {{"bounds", "hales"}, bounds_hales},
      {{"bounds", "local"}, bounds_local},
      {{"bounds", "equi"}, bounds_equi},
      {{"stability", "arc"}, stability_arc},
      {{"stability", "chordal"}, stability_chordal},
      {{"stability", "ngon"}, stability_ngon},
      {{"stability", "hexagon"}, stability_hexagon},
      {{"stability", "alpha"}, stability_alpha},
      {{"stability", "kappa"}, stability_kappa},
      {{"cheeger", "convex"}, cheeger_convex_cmd},
      {{"cheeger", "hn-sweep"}, cheeger_hn_sweep},
      {{"render"}, render_cmd},
  };
  return table;
}

}  // namespace

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ISOCLUS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunOutput run(const ExperimentConfig& config) {
  auto it = commands().find(config.command);
  if (it == commands().end()) {
    std::string c;
    for (const auto& p : config.command) c += (c.empty() ? "" : " ") + p;
    throw DomainError("unknown command '" + c + "'");
  }
  Runner r(config);
  it->second(r);
  return r.finish();
}

}  // namespace isoclus
