#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kinser/mask.hpp"

namespace kinser {

/// A failed axiom instance: which axiom (R1, CL4, C3, I3, ...) and the sets witnessing it.
struct Violation {
  std::string axiom;
  std::vector<SubsetMask> witness;
  std::string detail;

  std::string describe() const {
    std::string out = axiom + " violated";
    if (!witness.empty()) {
      out += " by";
      for (SubsetMask w : witness) out += " {" + format_mask(w) + "}";
    }
    if (!detail.empty()) out += ": " + detail;
    return out;
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSubset : public Error {
 public:
  InvalidSubset(SubsetMask mask, int m)
      : Error("subset {" + format_mask(mask) + "} has elements outside a ground set of size " +
              std::to_string(m)) {}
};

class InvalidElement : public Error {
 public:
  InvalidElement(ElementId e, int m)
      : Error("element " + std::to_string(e) + " outside a ground set of size " + std::to_string(m)) {}
};

class NotAMatroid : public Error {
 public:
  explicit NotAMatroid(Violation v) : Error("not a matroid: " + v.describe()), violation_(std::move(v)) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotTightenable : public Error {
 public:
  NotTightenable(SubsetMask h, Violation v)
      : Error("{" + format_mask(h) + "} cannot be tightened: " + v.describe()), violation_(std::move(v)) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

class SizeCapError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class StaleCertificate : public Error {
 public:
  using Error::Error;
};

}  // namespace kinser
