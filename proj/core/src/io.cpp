#include "slok/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "slok/errors.hpp"
#include "slok/version.hpp"

namespace slok {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad field '") + key + "': " + e.what());
  }
}

UnitVector unit(const std::vector<double>& c, int n) {
  if (static_cast<int>(c.size()) != n) throw InvalidInput("coordinate count does not match n");
  return UnitVector::from(std::span<const double>(c.data(), c.size()));
}

json dump_doubles(const std::vector<double>& v) { return json(v); }

}  // namespace

Measure parse_measure(const std::string& text) {
  const json j = parse(text);
  const int n = get<int>(j, "n");
  if (n != 2 && n != 3) throw InvalidInput("n must be 2 or 3");
  if (j.contains("atoms")) {
    const auto rows = get<std::vector<std::vector<double>>>(j, "atoms");
    std::vector<UnitVector> pts;
    std::vector<double> w;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != n + 1) throw InvalidInput("atom rows need n coordinates and a weight");
      pts.push_back(unit(std::vector<double>(r.begin(), r.begin() + n), n));
      w.push_back(r[n]);
    }
    return make_atomic(n, std::move(pts), std::move(w));
  }
  if (j.contains("grid_M")) {
    if (n != 2) throw InvalidInput("grid densities live on the circle");
    const int M = get<int>(j, "grid_M");
    return make_grid_density(make_circle_grid(M), get<std::vector<double>>(j, "rho"));
  }
  throw InvalidInput("measure needs 'atoms' or 'grid_M'");
}

Measure read_measure(const std::string& path) { return parse_measure(read_file(path)); }

std::string to_json(const AtomicMeasure& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.n; ++k) r.push_back(m.points[i][k]);
    r.push_back(m.weights[i]);
    rows.push_back(r);
  }
  return json{{"n", m.n}, {"atoms", rows}}.dump();
}

std::string to_json(const GridDensity& g) {
  return json{{"n", 2}, {"grid_M", g.size()}, {"rho", dump_doubles(g.rho)}}.dump();
}

DiscreteMeasure discrete(const Measure& m) {
  return std::visit([](const auto& x) { return slok::discrete(x); }, m);
}

SupportFn parse_body(const std::string& text) {
  const json j = parse(text);
  const auto regime = get<std::string>(j, "regime");
  const auto h = get<std::vector<double>>(j, "h");
  if (regime == "smooth") return SupportFn::smooth(make_circle_grid(get<int>(j, "grid_M")), h);
  if (regime == "polytope") {
    const auto rows = get<std::vector<std::vector<double>>>(j, "normals");
    if (rows.empty()) throw InvalidInput("no normals");
    const int n = static_cast<int>(rows.front().size());
    std::vector<UnitVector> normals;
    for (const auto& r : rows) normals.push_back(unit(r, n));
    return SupportFn::polytope(normals, h);
  }
  throw InvalidInput("unknown regime '" + regime + "'");
}

std::string to_json(const SupportFn& h) {
  if (h.regime() == Regime::smooth_circle)
    return json{{"regime", "smooth"}, {"grid_M", h.size()}, {"h", dump_doubles(h.values())}}.dump();
  json normals = json::array();
  for (const auto& u : h.directions()) {
    json r = json::array();
    for (int k = 0; k < h.dim(); ++k) r.push_back(u[k]);
    normals.push_back(r);
  }
  return json{{"regime", "polytope"}, {"normals", normals}, {"h", dump_doubles(h.values())}}.dump();
}

std::string to_json(const DualPair& d) {
  return json{{"phi", dump_doubles(d.phi)},
              {"psi", dump_doubles(d.psi)},
              {"gauge", gauge_name(d.gauge)},
              {"K", d.K}}
      .dump();
}

DualPair parse_duals(const std::string& text) {
  const json j = parse(text);
  DualPair d;
  d.phi = get<std::vector<double>>(j, "phi");
  d.psi = get<std::vector<double>>(j, "psi");
  const auto g = get<std::string>(j, "gauge");
  if (g == "unit_volume")
    d.gauge = Gauge::unit_volume;
  else if (g == "h0_equals_1")
    d.gauge = Gauge::h0_equals_1;
  else
    throw InvalidInput("unknown gauge '" + g + "'");
  d.K = get<double>(j, "K");
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << content;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& comment,
                     const std::vector<std::string>& columns)
    : out_(out) {
  out_ << comment << '\n';
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> s;
  for (double x : cells) s.push_back(format_double(x));
  row(s);
}

std::string csv_comment(int M, unsigned long long seed) {
  return std::string("# slok ") + kVersion + " grid_M=" + std::to_string(M) + " seed=" + std::to_string(seed);
}

void write_plan_csv(std::ostream& out, const TransportPlan& plan, const std::string& comment) {
  CsvWriter w(out, comment, {"i", "j", "mass"});
  for (const auto& e : plan.entries) w.row({std::to_string(e.i), std::to_string(e.j), format_double(e.mass)});
}

}  // namespace slok
