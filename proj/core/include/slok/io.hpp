#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"
#include "slok/transport.hpp"

namespace slok {

using Measure = std::variant<AtomicMeasure, GridDensity>;

// {"n":2,"atoms":[[x,y,w],...]} or {"n":2,"grid_M":M,"rho":[...]}
Measure parse_measure(const std::string& json);
Measure read_measure(const std::string& path);
std::string to_json(const AtomicMeasure& m);
std::string to_json(const GridDensity& g);
DiscreteMeasure discrete(const Measure& m);

// {"regime":"smooth","grid_M":M,"h":[...]} or {"regime":"polytope","normals":[[...]],"h":[...]}
SupportFn parse_body(const std::string& json);
std::string to_json(const SupportFn& h);

// {"phi":[...],"psi":[...],"gauge":"...","K":value}
std::string to_json(const DualPair& d);
DualPair parse_duals(const std::string& json);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// %.17g
std::string format_double(double x);

// comma separated rows under a '#' header line
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& comment, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& cells);

 private:
  std::ostream& out_;
};

// "# slok <version> grid_M=<M> seed=<seed>"
std::string csv_comment(int M, unsigned long long seed);

void write_plan_csv(std::ostream& out, const TransportPlan& plan, const std::string& comment);

}  // namespace slok
