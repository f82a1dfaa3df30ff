#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slok {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// h + h'' <= 0 somewhere
class NonConvex : public Error {
 public:
  NonConvex(const std::string& what, int node = -1) : Error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

class EmptyInterior : public Error {
 public:
  using Error::Error;
};

class DegenerateBody : public Error {
 public:
  using Error::Error;
};

class FanMismatch : public Error {
 public:
  using Error::Error;
};

class NonPositiveDensity : public Error {
 public:
  using Error::Error;
};

// Hall-type cut: sources in `rows` can only reach targets in `cols`,
// and mu(rows) > nu(cols).
struct InfeasibleWitness {
  std::vector<int> rows;
  std::vector<int> cols;
  double source_mass = 0.0;
  double target_mass = 0.0;
};

class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, InfeasibleWitness w)
      : Error(what), witness_(std::move(w)) {}
  const InfeasibleWitness& witness() const { return witness_; }

 private:
  InfeasibleWitness witness_;
};

}  // namespace slok
